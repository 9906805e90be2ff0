//! Closed-form hitting times `h_N(0, l)` on C²_N and the quantities derived
//! from them.
//!
//! Every function takes `l` modulo N and returns `0` for `l ≡ 0` before
//! touching any formula.

use num_traits::Zero;

use crate::error::Result;
use crate::exact::{fib, frac, rat, sign_pow, Integer, Rational, Surd5};
use crate::graph::check_n;

/// Representative of `l` in `0..n`.
pub fn normalize_vertex(n: usize, l: i64) -> usize {
    l.rem_euclid(n as i64) as usize
}

fn fr(num: Integer, den: Integer) -> Rational {
    Rational::new(num, den)
}

fn int(v: impl Into<Integer>) -> Rational {
    Rational::from_integer(v.into())
}

/// `h_N(0,l) = (2/5) (l(N-l) + 2N F_l F_{N-l} / F_N)`.
pub fn hitting_time(n: usize, l: i64) -> Result<Rational> {
    check_n(n)?;
    let l = normalize_vertex(n, l);
    if l == 0 {
        return Ok(Rational::zero());
    }
    let (ni, li) = (n as i64, l as i64);
    let fib_term = fr(fib(li) * fib(ni - li) * (2 * ni), fib(ni));
    Ok(frac(2, 5) * (int(li * (ni - li)) + fib_term))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HitResult {
    pub n: usize,
    pub l: usize,
    pub value: Rational,
}

impl HitResult {
    pub fn compute(n: usize, l: i64) -> Result<Self> {
        let value = hitting_time(n, l)?;
        Ok(Self {
            n,
            l: normalize_vertex(n, l),
            value,
        })
    }
}

/// `(h_N(0,1), ..., h_N(0,⌊N/2⌋))`, the solution of the halved system.
pub fn hitting_vector(n: usize) -> Result<Vec<Rational>> {
    check_n(n)?;
    (1..=(n / 2) as i64).map(|l| hitting_time(n, l)).collect()
}

/// The two-branch expression in powers of `(3-√5)/2`, evaluated in Q(√5).
/// The √5 part has to cancel; a leftover surfaces as `IrrationalResult`.
pub fn chair_hitting_time(n: usize, l: i64) -> Result<Rational> {
    check_n(n)?;
    let l = normalize_vertex(n, l);
    if l == 0 {
        return Ok(Rational::zero());
    }
    let (ni, li) = (n as i64, l as i64);
    let q = Surd5::new(frac(3, 2), frac(-1, 2)).pow(n as u32);
    let one = Surd5::from_rational(rat(1));
    let ratio = if n.is_multiple_of(2) {
        (&one + &q) / (&one - &q)
    } else {
        (&one - &q) / (&one + &q)
    };
    // 1/√5 = √5/5
    let inv_sqrt5 = Surd5::new(rat(0), frac(1, 5));
    let fl = fib(li);
    let coeff = Surd5::from_rational(int(fl.clone() * fl * (2 * ni * sign_pow(li + 1))));
    let middle = coeff * inv_sqrt5 * ratio;
    let outer =
        frac(2, 5) * int(li * (ni - li)) + frac(2 * ni * sign_pow(li), 5) * int(fib(2 * li));
    (middle + Surd5::from_rational(outer)).to_rational()
}

/// The vector `z = ᵗW y`, entry by entry from its closed form.
pub fn z_vector(n: usize) -> Result<Vec<Rational>> {
    check_n(n)?;
    let ni = n as i64;
    let m = (n / 2) as i64;
    let mut z = Vec::with_capacity(m as usize);
    for l in 1..m {
        let inner = fr(
            fib(2 * l - 1) * (ni - 2 * l - 1) + Integer::from(2 * ni * sign_pow(l - 1)),
            fib(2 * l + 1),
        );
        z.push(frac(2, 5) * (int(ni - 2 * l + 1) + inner));
    }
    let last = (fib(2 * m + 1) + fib(2 * m - 1)) * (ni - 2 * m)
        + fib(2 * m)
        + Integer::from(2 * ni * sign_pow(m - 1));
    z.push(fr(last * 2u32, fib(ni) * 5u32));
    Ok(z)
}

/// First differences `y_l = h_N(0,l) - h_N(0,l-1)`, from their closed form.
pub fn y_vector(n: usize) -> Result<Vec<Rational>> {
    check_n(n)?;
    let ni = n as i64;
    Ok((1..=(n / 2) as i64)
        .map(|l| {
            let t = fr(fib(ni - 2 * l + 1) * (2 * ni * sign_pow(l - 1)), fib(ni));
            frac(2, 5) * (int(ni - 2 * l + 1) + t)
        })
        .collect())
}

/// `h_N(0,1)` through the convolution `(2/F_N) Σ_{i=0}^{N} F_i F_{N-i}`.
pub fn hitting_first(n: usize) -> Result<Rational> {
    check_n(n)?;
    let ni = n as i64;
    let conv: Integer = (0..=ni).map(|i| fib(i) * fib(ni - i)).sum();
    Ok(fr(conv * 2u32, fib(ni)))
}

/// `(h_N(0,l) - (2/5) l (N-l)) / N`, which equals `(4/5) F_l F_{N-l} / F_N`.
pub fn normalized_excess(n: usize, l: i64) -> Result<Rational> {
    let h = hitting_time(n, l)?;
    let l = normalize_vertex(n, l) as i64;
    let ni = n as i64;
    Ok((h - frac(2, 5) * int(l * (ni - l))) / int(ni))
}

/// `h_N(0,l) / N²`.
pub fn scaled_hitting(n: usize, l: i64) -> Result<Rational> {
    let h = hitting_time(n, l)?;
    Ok(h / int((n * n) as i64))
}

/// `4/(5√5)`, the large-N value of the normalized excess around `l ≈ N/2`.
pub fn excess_limit() -> Surd5 {
    Surd5::new(rat(0), frac(4, 25))
}

/// Limit of the normalized excess as N grows with `l` held fixed:
/// `(4/5) F_l φ^{-l}`.
pub fn fixed_l_excess_limit(l: u32) -> Surd5 {
    let phi_inv = Surd5::phi().inv().expect("phi is nonzero");
    Surd5::from_rational(frac(4, 5) * int(fib(l as i64))) * phi_inv.pow(l)
}

/// `(2/5) x (1-x)`, the limit of `h_N(0,l)/N²` along `l/N → x`.
pub fn scaled_limit(x: &Rational) -> Rational {
    frac(2, 5) * x * (rat(1) - x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::exact::{rational_from_decimal_str, to_decimal};
    use crate::graph::CycleSquare;
    use crate::oracle;
    use num_traits::Signed;

    #[test]
    fn hitting_examples() {
        assert_eq!(hitting_time(5, 1).unwrap(), rat(4));
        assert_eq!(hitting_time(5, 0).unwrap(), rat(0));
        assert_eq!(hitting_time(6, 3).unwrap(), rat(6));
        assert_eq!(hitting_time(10, 5).unwrap(), frac(150, 11));
        assert_eq!(hitting_time(10, -5).unwrap(), frac(150, 11));
        assert_eq!(hitting_time(10, 15).unwrap(), frac(150, 11));
        assert_eq!(hitting_time(4, 1), Err(Error::UnsupportedN(4)));
        let r = HitResult::compute(7, 9).unwrap();
        assert_eq!((r.l, r.value), (2, hitting_time(7, 2).unwrap()));
    }

    #[test]
    fn chair_examples() {
        assert_eq!(chair_hitting_time(6, 1).unwrap(), rat(5));
        assert_eq!(chair_hitting_time(5, 2).unwrap(), rat(4));
        assert_eq!(chair_hitting_time(10, 5).unwrap(), frac(150, 11));
        assert_eq!(chair_hitting_time(10, 0).unwrap(), rat(0));
    }

    #[test]
    fn chair_agrees_small_sweep() {
        for n in 5..=30 {
            for l in 0..n as i64 {
                assert_eq!(
                    chair_hitting_time(n, l).unwrap(),
                    hitting_time(n, l).unwrap(),
                    "n {n} l {l}"
                );
            }
        }
    }

    #[test]
    fn matches_oracle_small_sweep() {
        for n in 5..=40 {
            let lp = CycleSquare::new(n).unwrap().reduced_laplacian();
            let x = oracle::solve(&lp, &vec![rat(4); n - 1]).unwrap();
            for l in 1..n {
                assert_eq!(hitting_time(n, l as i64).unwrap(), x[l - 1], "n {n} l {l}");
            }
        }
    }

    #[test]
    fn symmetric_and_positive() {
        for n in 5..=60 {
            for l in 1..n as i64 {
                let h = hitting_time(n, l).unwrap();
                assert!(h > rat(0));
                assert_eq!(h, hitting_time(n, n as i64 - l).unwrap());
            }
        }
    }

    #[test]
    fn walk_recurrence() {
        for n in 5..=100usize {
            let h = |l: i64| hitting_time(n, l).unwrap();
            for l in 1..n as i64 {
                let lhs = h(l) * rat(4) - h(l - 1) - h(l - 2) - h(l + 1) - h(l + 2);
                assert_eq!(lhs, rat(4), "n {n} l {l}");
            }
        }
    }

    #[test]
    fn z_and_y_examples() {
        assert_eq!(z_vector(5).unwrap(), vec![rat(4), rat(0)]);
        assert_eq!(z_vector(6).unwrap()[0], rat(5));
        assert_eq!(y_vector(5).unwrap(), vec![rat(4), rat(0)]);
        assert_eq!(y_vector(6).unwrap()[0], rat(5));
        for n in 5..=60 {
            assert_eq!(y_vector(n).unwrap()[0], hitting_time(n, 1).unwrap());
            assert_eq!(z_vector(n).unwrap().len(), n / 2);
        }
    }

    #[test]
    fn prefix_sums_of_y() {
        for n in 5..=60 {
            let mut acc = rat(0);
            for (y, x) in y_vector(n)
                .unwrap()
                .into_iter()
                .zip(hitting_vector(n).unwrap())
            {
                acc += y;
                assert_eq!(acc, x);
            }
        }
    }

    #[test]
    fn convolution_route() {
        assert_eq!(hitting_first(5).unwrap(), rat(4));
        assert_eq!(hitting_first(6).unwrap(), rat(5));
        for n in 5..=100usize {
            let ni = n as i64;
            let alt = frac(2, 5) * (rat(ni - 1) + fr(fib(ni - 1) * (2 * ni), fib(ni)));
            assert_eq!(hitting_first(n).unwrap(), alt);
            assert_eq!(hitting_first(n).unwrap(), hitting_time(n, 1).unwrap());
        }
    }

    #[test]
    fn excess_values() {
        let v = normalized_excess(50, 25).unwrap();
        assert_eq!(
            v,
            frac(4, 5)
                * fr(
                    Integer::from(5_628_750_625u64),
                    Integer::from(12_586_269_025u64)
                )
        );
        assert_eq!(to_decimal(&v, 7), "0.3577709");
        assert_eq!(
            to_decimal(&normalized_excess(50, 1).unwrap(), 6),
            "0.494427"
        );
        assert_eq!(normalized_excess(50, 0).unwrap(), rat(0));
        for n in 5..=40usize {
            for l in 0..n as i64 {
                let e = frac(4, 5) * fr(fib(l) * fib(n as i64 - l), fib(n as i64));
                assert_eq!(normalized_excess(n, l).unwrap(), e);
            }
        }
    }

    #[test]
    fn scaled_values() {
        let v = scaled_hitting(1000, 300).unwrap();
        assert_eq!(to_decimal(&v, 7), "0.0843578");
        let w = scaled_hitting(100, 50).unwrap();
        assert_eq!(to_decimal(&w, 6), "0.103578");
        assert_eq!(scaled_hitting(100, 0).unwrap(), rat(0));
        assert_eq!(
            scaled_limit(&frac(3, 10)),
            rational_from_decimal_str("0.084").unwrap()
        );
    }

    #[test]
    fn limits() {
        assert_eq!(to_decimal(&excess_limit().approx(30), 12), "0.357770876400");
        assert!(fixed_l_excess_limit(0).is_zero());
        // (4/5) φ^-1 = (4/5)(√5-1)/2
        assert_eq!(fixed_l_excess_limit(1), Surd5::new(frac(-2, 5), frac(2, 5)));
        let close = fixed_l_excess_limit(40).approx(20) - excess_limit().approx(20);
        assert!(close.abs() < frac(1, 1_000_000_000));
    }
}
