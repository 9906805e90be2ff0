//! The Fibonacci factorization `H_N = U⁻¹ W D ᵗW ᵗU⁻¹` of the halved matrix,
//! the entry table of its right-hand side, and the closed-form inverse.
//!
//! Indices in the public functions are 1-based (`1..=⌊N/2⌋`), matching the
//! usual way the matrices are written down; storage is 0-based.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{fib, rat, sign_pow, Integer, Rational};
use crate::graph::{build_h, check_n};
use crate::matrix::ExactMatrix;

fn ratio(num: Integer, den: Integer) -> Rational {
    Rational::new(num, den)
}

/// `F_a / F_b`.
fn fr(a: i64, b: i64) -> Rational {
    ratio(fib(a), fib(b))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionBundle {
    /// `⌊N/2⌋`, the dimension of every matrix here.
    pub m: usize,
    /// Upper triangular matrix of ones.
    pub u: ExactMatrix,
    /// Its inverse: 1 on the diagonal, -1 just above.
    pub u_inv: ExactMatrix,
    /// Unit lower bidiagonal, subdiagonal `F_{2k-1}/F_{2k+1}`.
    pub w: ExactMatrix,
    /// `(-1)^{i-j} F_{2j-1}/F_{2i-1}` below the diagonal.
    pub w_inv: ExactMatrix,
    /// `F_{2k+1}/F_{2k-1}`, except the last entry `F_N/F_{2m-1}`.
    pub d: ExactMatrix,
}

pub fn build_bundle(n: usize) -> Result<DecompositionBundle> {
    check_n(n)?;
    let m = n / 2;
    let u = ExactMatrix::from_fn(m, m, |i, j| if j >= i { rat(1) } else { rat(0) });
    let u_inv = ExactMatrix::from_fn(m, m, |i, j| {
        if i == j {
            rat(1)
        } else if j == i + 1 {
            rat(-1)
        } else {
            rat(0)
        }
    });
    // 0-based row r is the 1-based row k = r + 1.
    let w = ExactMatrix::from_fn(m, m, |r, c| {
        if r == c {
            rat(1)
        } else if r == c + 1 {
            let k = c as i64 + 1;
            fr(2 * k - 1, 2 * k + 1)
        } else {
            rat(0)
        }
    });
    let w_inv = ExactMatrix::from_fn(m, m, |r, c| {
        if r == c {
            rat(1)
        } else if r > c {
            let (i, j) = (r as i64 + 1, c as i64 + 1);
            fr(2 * j - 1, 2 * i - 1) * rat(sign_pow(i - j))
        } else {
            rat(0)
        }
    });
    let d = ExactMatrix::from_fn(m, m, |r, c| {
        if r != c {
            return rat(0);
        }
        let k = r as i64 + 1;
        if r + 1 == m {
            fr(n as i64, 2 * k - 1)
        } else {
            fr(2 * k + 1, 2 * k - 1)
        }
    });
    Ok(DecompositionBundle {
        m,
        u,
        u_inv,
        w,
        w_inv,
        d,
    })
}

impl DecompositionBundle {
    /// `U⁻¹ W D ᵗW ᵗU⁻¹`.
    pub fn product(&self) -> ExactMatrix {
        let wdw = &(&self.w * &self.d) * &self.w.transpose();
        &(&self.u_inv * &wdw) * &self.u_inv.transpose()
    }

    pub fn d_is_positive_diagonal(&self) -> bool {
        let d = &self.d;
        (0..self.m).all(|i| {
            (0..self.m).all(|j| {
                if i == j {
                    d[(i, j)] > Rational::zero()
                } else {
                    d[(i, j)].is_zero()
                }
            })
        })
    }

    /// `ᵗU ᵗW⁻¹ D⁻¹ W⁻¹ U`, the inverse implied by the factorization.
    pub fn inverse_product(&self) -> ExactMatrix {
        let d_inv = ExactMatrix::from_fn(self.m, self.m, |i, j| {
            if i == j {
                self.d[(i, i)].recip()
            } else {
                rat(0)
            }
        });
        let core = &(&self.w_inv.transpose() * &d_inv) * &self.w_inv;
        &(&self.u.transpose() * &core) * &self.u
    }
}

pub fn verify_factorization(n: usize) -> Result<bool> {
    let bundle = build_bundle(n)?;
    Ok(bundle.product() == build_h(n)?.matrix)
}

fn check_index(n: usize, i: usize, j: usize) -> Result<()> {
    let m = n / 2;
    if (1..=m).contains(&i) && (1..=m).contains(&j) {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange { i, j, max: m })
    }
}

/// Entry `(i, j)` of `U⁻¹ W D ᵗW ᵗU⁻¹` from its unsimplified case table.
///
/// Cases are tried in table order and the first match wins, so for N = 5
/// the `(1,1)` branch takes precedence over the `(m-1, m-1)` branch. The
/// entry `(m, m-1)` uses the `(m-1, m)` branch: the product is symmetric and
/// the generic `i - j = 1` branch does not account for `D_m = F_N/F_{2m-1}`.
pub fn s_entry_case(n: usize, i: usize, j: usize) -> Result<Rational> {
    check_n(n)?;
    check_index(n, i, j)?;
    let m = (n / 2) as i64;
    let ni = n as i64;
    let (i, j) = (i as i64, j as i64);
    let gap = (i - j).abs();
    let last_pair = || rat(1) - ratio(fib(2 * m - 3) + fib(ni), fib(2 * m - 1));
    let v = if gap >= 3 {
        rat(0)
    } else if gap == 2 {
        rat(-1)
    } else if i - j == 1 && i == m {
        last_pair()
    } else if i - j == 1 {
        rat(2) - ratio(fib(2 * i - 3) + fib(2 * i + 1), fib(2 * i - 1))
    } else if j - i == 1 && j != m {
        rat(2) - ratio(fib(2 * j - 3) + fib(2 * j + 1), fib(2 * j - 1))
    } else if j - i == 1 {
        last_pair()
    } else if i == 1 {
        fr(3, 1) + ratio(fib(1) + fib(5), fib(3)) - rat(2)
    } else if i == m - 1 {
        ratio(fib(2 * m - 1) + fib(2 * m - 5), fib(2 * m - 3))
            + ratio(fib(2 * m - 3) + fib(ni), fib(2 * m - 1))
            - rat(2)
    } else if i == m {
        ratio(fib(2 * m - 3) + fib(ni), fib(2 * m - 1))
    } else {
        ratio(fib(2 * i - 3) + fib(2 * i + 1), fib(2 * i - 1))
            + ratio(fib(2 * i - 1) + fib(2 * i + 3), fib(2 * i + 1))
            - rat(2)
    };
    Ok(v)
}

/// Closed-form entry `(i, j)` of `H_N⁻¹`.
pub fn h_inverse_entry(n: usize, i: usize, j: usize) -> Result<Rational> {
    check_n(n)?;
    check_index(n, i, j)?;
    let ni = n as i64;
    let (i, j) = (i as i64, j as i64);
    let term = |a: i64, b: i64, k: i64| fib(a - k) * fib(b - k) * fib(ni - a - k) * fib(ni - b - k);
    let mut v = ratio(term(i, j, 0), fib(ni) * fib(ni - 1));
    for k in 1..i.min(j) {
        v += ratio(term(i, j, k), fib(ni - 2 * k + 1) * fib(ni - 2 * k - 1));
    }
    Ok(v)
}

pub fn h_inverse_matrix(n: usize) -> Result<ExactMatrix> {
    check_n(n)?;
    let m = n / 2;
    let mut out = ExactMatrix::zeros(m, m);
    for i in 0..m {
        for j in 0..=i {
            let v = h_inverse_entry(n, i + 1, j + 1)?;
            out[(j, i)] = v.clone();
            out[(i, j)] = v;
        }
    }
    Ok(out)
}

/// Determinant of the diagonal factor, which telescopes to `F_N`.
pub fn d_determinant(bundle: &DecompositionBundle) -> Rational {
    (0..bundle.m).fold(Rational::one(), |acc, k| acc * &bundle.d[(k, k)])
}

/// Sanity check that `W W⁻¹ = I` and `U U⁻¹ = I`.
pub fn inverse_factors_consistent(bundle: &DecompositionBundle) -> bool {
    crate::oracle::is_inverse_pair(&bundle.w, &bundle.w_inv)
        && crate::oracle::is_inverse_pair(&bundle.u, &bundle.u_inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::frac;
    use crate::oracle;

    fn diag(m: &ExactMatrix) -> Vec<Rational> {
        (0..m.rows()).map(|i| m[(i, i)].clone()).collect()
    }

    fn subdiag(m: &ExactMatrix) -> Vec<Rational> {
        (1..m.rows()).map(|i| m[(i, i - 1)].clone()).collect()
    }

    #[test]
    fn bundle_examples() {
        let b5 = build_bundle(5).unwrap();
        assert_eq!(subdiag(&b5.w), vec![frac(1, 2)]);
        assert_eq!(diag(&b5.d), vec![rat(2), frac(5, 2)]);
        let b6 = build_bundle(6).unwrap();
        assert_eq!(diag(&b6.d), vec![rat(2), frac(5, 2), frac(8, 5)]);
        let b7 = build_bundle(7).unwrap();
        assert_eq!(subdiag(&b7.w), vec![frac(1, 2), frac(2, 5)]);
        assert_eq!(diag(&b7.d), vec![rat(2), frac(5, 2), frac(13, 5)]);
        assert_eq!(build_bundle(4), Err(Error::UnsupportedN(4)));
    }

    #[test]
    fn n5_intermediate_product() {
        let b = build_bundle(5).unwrap();
        let wdw = &(&b.w * &b.d) * &b.w.transpose();
        assert_eq!(wdw, ExactMatrix::from_i64_rows(&[&[2, 1], &[1, 3]]));
        assert!(verify_factorization(5).unwrap());
        assert!(verify_factorization(6).unwrap());
    }

    #[test]
    fn factorization_sweep() {
        for n in 5..=60 {
            assert!(verify_factorization(n).unwrap(), "n {n}");
        }
    }

    #[test]
    fn displayed_inverses_are_inverses() {
        for n in 5..=60 {
            let b = build_bundle(n).unwrap();
            assert!(inverse_factors_consistent(&b));
            assert_eq!(oracle::inverse(&b.w).unwrap(), b.w_inv);
            assert!(b.d_is_positive_diagonal());
            assert_eq!(d_determinant(&b), Rational::from_integer(fib(n as i64)));
        }
    }

    #[test]
    fn case_table_examples() {
        assert_eq!(s_entry_case(7, 2, 2).unwrap(), rat(4));
        assert_eq!(s_entry_case(6, 2, 3).unwrap(), rat(-1));
        assert_eq!(s_entry_case(9, 1, 4).unwrap(), rat(0));
        assert_eq!(s_entry_case(5, 2, 1).unwrap(), rat(-2));
        assert!(matches!(
            s_entry_case(7, 0, 1),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            s_entry_case(7, 1, 4),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn case_table_matches_h() {
        for n in 5..=60 {
            let h = build_h(n).unwrap().matrix;
            for i in 1..=n / 2 {
                for j in 1..=n / 2 {
                    assert_eq!(
                        s_entry_case(n, i, j).unwrap(),
                        h[(i - 1, j - 1)],
                        "n {n} ({i},{j})"
                    );
                }
            }
        }
    }

    #[test]
    fn inverse_entry_examples() {
        assert_eq!(h_inverse_entry(5, 1, 1).unwrap(), frac(3, 5));
        assert_eq!(h_inverse_entry(5, 1, 2).unwrap(), frac(2, 5));
        assert_eq!(h_inverse_entry(5, 2, 2).unwrap(), frac(3, 5));
        assert!(matches!(
            h_inverse_entry(5, 3, 1),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn inverse_matches_oracle() {
        for n in 5..=40 {
            let h = build_h(n).unwrap().matrix;
            let closed = h_inverse_matrix(n).unwrap();
            assert!(closed.is_symmetric());
            assert_eq!(closed, oracle::inverse(&h).unwrap(), "n {n}");
            assert_eq!(build_bundle(n).unwrap().inverse_product(), closed);
        }
    }

    #[test]
    fn z_and_y_by_matrices() {
        for n in 5..=40 {
            let b = build_bundle(n).unwrap();
            let ni = n as i64;
            let rhs: Vec<Rational> = (1..=b.m as i64).map(|k| rat(ni - 2 * k + 1)).collect();
            let d_inv = oracle::inverse(&b.d).unwrap();
            let w_rhs = b.w_inv.mul_vec(&rhs).unwrap();
            let z: Vec<Rational> = d_inv
                .mul_vec(&w_rhs)
                .unwrap()
                .into_iter()
                .map(|v| v * rat(2))
                .collect();
            assert_eq!(z, crate::closed_form::z_vector(n).unwrap(), "n {n}");
            let y = b.w_inv.transpose().mul_vec(&z).unwrap();
            assert_eq!(y, crate::closed_form::y_vector(n).unwrap(), "n {n}");
        }
    }
}
