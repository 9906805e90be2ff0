//! Exact Gaussian elimination over the rationals: linear solves,
//! determinants and inverses. These are the reference routes every closed
//! form is checked against, so they know nothing about Fibonacci numbers.
//!
//! Pivoting takes the first nonzero entry in the column. Zero entries are
//! skipped during row updates, which keeps banded matrices such as L′ close
//! to linear cost per pivot.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::matrix::ExactMatrix;

fn require_square(a: &ExactMatrix) -> Result<()> {
    if a.is_square() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(format!(
            "expected square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )))
    }
}

/// Reduces `a` to upper-triangular form in place, applying the same row
/// operations to every matrix in `sides`. Returns the number of row swaps, or
/// `None` if a column has no pivot.
fn forward_eliminate(a: &mut ExactMatrix, sides: &mut [&mut ExactMatrix]) -> Option<usize> {
    let n = a.rows();
    let mut swaps = 0;
    for k in 0..n {
        let p = (k..n).find(|&r| !a[(r, k)].is_zero())?;
        if p != k {
            a.swap_rows(p, k);
            for s in sides.iter_mut() {
                s.swap_rows(p, k);
            }
            swaps += 1;
        }
        let pivot = a[(k, k)].clone();
        for r in k + 1..n {
            if a[(r, k)].is_zero() {
                continue;
            }
            let factor = &a[(r, k)] / &pivot;
            for c in k..n {
                if !a[(k, c)].is_zero() {
                    let d = &factor * &a[(k, c)];
                    a[(r, c)] -= d;
                }
            }
            for s in sides.iter_mut() {
                for c in 0..s.cols() {
                    if !s[(k, c)].is_zero() {
                        let d = &factor * &s[(k, c)];
                        s[(r, c)] -= d;
                    }
                }
            }
        }
    }
    Some(swaps)
}

/// Solves `U x = B` column by column for upper-triangular `U`.
fn back_substitute(u: &ExactMatrix, b: &ExactMatrix) -> ExactMatrix {
    let n = u.rows();
    let mut x = ExactMatrix::zeros(n, b.cols());
    for c in 0..b.cols() {
        for i in (0..n).rev() {
            let mut acc = b[(i, c)].clone();
            for j in i + 1..n {
                if !u[(i, j)].is_zero() && !x[(j, c)].is_zero() {
                    acc -= &u[(i, j)] * &x[(j, c)];
                }
            }
            x[(i, c)] = acc / &u[(i, i)];
        }
    }
    x
}

/// Exact solution of `a x = b`.
pub fn solve(a: &ExactMatrix, b: &[Rational]) -> Result<Vec<Rational>> {
    require_square(a)?;
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} system with rhs of length {}",
            a.rows(),
            a.cols(),
            b.len()
        )));
    }
    let mut u = a.clone();
    let mut rhs = ExactMatrix::from_fn(b.len(), 1, |i, _| b[i].clone());
    forward_eliminate(&mut u, &mut [&mut rhs]).ok_or(Error::SingularMatrix)?;
    let x = back_substitute(&u, &rhs);
    Ok((0..x.rows()).map(|i| x[(i, 0)].clone()).collect())
}

pub fn determinant(a: &ExactMatrix) -> Result<Rational> {
    require_square(a)?;
    let mut u = a.clone();
    let Some(swaps) = forward_eliminate(&mut u, &mut []) else {
        return Ok(Rational::zero());
    };
    let mut det: Rational = (0..u.rows()).map(|i| u[(i, i)].clone()).product();
    if swaps % 2 == 1 {
        det = -det;
    }
    Ok(det)
}

pub fn inverse(a: &ExactMatrix) -> Result<ExactMatrix> {
    require_square(a)?;
    let mut u = a.clone();
    let mut id = ExactMatrix::identity(a.rows());
    forward_eliminate(&mut u, &mut [&mut id]).ok_or(Error::SingularMatrix)?;
    Ok(back_substitute(&u, &id))
}

/// `true` iff `a * b` is the identity.
pub fn is_inverse_pair(a: &ExactMatrix, b: &ExactMatrix) -> bool {
    match a.checked_mul(b) {
        Ok(p) if p.is_square() => (0..p.rows()).all(|i| {
            (0..p.cols()).all(|j| {
                if i == j {
                    p[(i, j)].is_one()
                } else {
                    p[(i, j)].is_zero()
                }
            })
        }),
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, rat};
    use crate::graph::{build_h, CycleSquare};
    use proptest::prelude::*;

    #[test]
    fn k5_hitting_times() {
        let lp = CycleSquare::new(5).unwrap().reduced_laplacian();
        assert_eq!(solve(&lp, &vec![rat(4); 4]).unwrap(), vec![rat(4); 4]);
    }

    #[test]
    fn halved_n6() {
        let h = build_h(6).unwrap();
        assert_eq!(
            solve(&h.matrix, &h.rhs).unwrap(),
            vec![rat(5), rat(5), rat(6)]
        );
    }

    #[test]
    fn identity_solve() {
        let b = vec![frac(1, 3), rat(-2), rat(7)];
        assert_eq!(solve(&ExactMatrix::identity(3), &b).unwrap(), b);
        assert_eq!(
            inverse(&ExactMatrix::identity(4)).unwrap(),
            ExactMatrix::identity(4)
        );
    }

    #[test]
    fn determinants() {
        let lp = CycleSquare::new(5).unwrap().reduced_laplacian();
        assert_eq!(determinant(&lp).unwrap(), rat(125));
        assert_eq!(determinant(&build_h(5).unwrap().matrix).unwrap(), rat(5));
        assert_eq!(
            determinant(&ExactMatrix::from_i64_rows(&[&[7]])).unwrap(),
            rat(7)
        );
        // Needs a row swap.
        let p = ExactMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(determinant(&p).unwrap(), rat(-1));
        let s = ExactMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(determinant(&s).unwrap(), rat(0));
    }

    #[test]
    fn inverses() {
        let inv = inverse(&build_h(5).unwrap().matrix).unwrap();
        let expected =
            ExactMatrix::from_fn(2, 2, |i, j| if i == j { frac(3, 5) } else { frac(2, 5) });
        assert_eq!(inv, expected);
        let mut w = ExactMatrix::identity(2);
        w[(1, 0)] = frac(1, 2);
        let mut w_inv = ExactMatrix::identity(2);
        w_inv[(1, 0)] = frac(-1, 2);
        assert_eq!(inverse(&w).unwrap(), w_inv);
    }

    #[test]
    fn singular_errors() {
        let s = ExactMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(inverse(&s), Err(Error::SingularMatrix));
        assert_eq!(solve(&s, &[rat(1), rat(1)]), Err(Error::SingularMatrix));
        assert!(matches!(
            determinant(&ExactMatrix::zeros(2, 3)),
            Err(Error::DimensionMismatch(_))
        ));
    }

    fn small_matrix(n: usize) -> impl Strategy<Value = ExactMatrix> {
        proptest::collection::vec((-6i64..6, 1i64..4), n * n).prop_map(move |v| {
            ExactMatrix::from_fn(n, n, |i, j| frac(v[i * n + j].0, v[i * n + j].1))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn solve_then_substitute(a in small_matrix(4), b in proptest::collection::vec(-9i64..9, 4)) {
            let b: Vec<Rational> = b.into_iter().map(rat).collect();
            match solve(&a, &b) {
                Ok(x) => prop_assert_eq!(a.mul_vec(&x).unwrap(), b),
                Err(e) => {
                    prop_assert_eq!(e, Error::SingularMatrix);
                    prop_assert!(determinant(&a).unwrap().is_zero());
                }
            }
        }

        #[test]
        fn determinant_is_multiplicative(a in small_matrix(3), b in small_matrix(3)) {
            prop_assert_eq!(determinant(&(&a * &b)).unwrap(), determinant(&a).unwrap() * determinant(&b).unwrap());
        }

        #[test]
        fn inverse_is_involutive(a in small_matrix(3)) {
            prop_assume!(!determinant(&a).unwrap().is_zero());
            let inv = inverse(&a).unwrap();
            prop_assert!(is_inverse_pair(&a, &inv));
            prop_assert_eq!(inverse(&inv).unwrap(), a);
        }
    }
}
