//! The seven classical Fibonacci identities the hitting-time derivation leans
//! on, each checked exactly at caller-chosen indices.
//!
//! | id | identity |
//! |----|----------|
//! | 1 | `F_{n+1} F_{n-1} - F_n^2 = (-1)^n` |
//! | 2 | `F_{2n} - 3 F_{2n-2} + F_{2n-4} = 0` |
//! | 3 | `F_{2n+1} = F_{n+1}^2 + F_n^2` |
//! | 4 | `F_{m-n} = (-1)^{n+1} F_{m-1} F_n + (-1)^n F_m F_{n-1}` |
//! | 5 | `1 / (F_{2n-1} F_{2n+1}) = F_{2n+2}/F_{2n+1} - F_{2n}/F_{2n-1}` |
//! | 6 | `sum_{k=1}^{l} (-1)^{l-k} F_{2k-1} = F_l^2` |
//! | 7 | `F_l^2 = (F_{2l-1} + F_{2l+1})/5 + (2/5)(-1)^{l-1}` |

use num_traits::Zero;

use super::{fib, sign_pow, Integer, Rational};
use crate::error::{Error, Result};

pub const IDENTITY_IDS: [u8; 7] = [1, 2, 3, 4, 5, 6, 7];

/// Checks identity `id` at the given indices. Identity 4 takes `[m, n]`,
/// every other identity takes a single index.
///
/// Identity 6 is a finite sum and is only meaningful for `l >= 0`; a negative
/// `l` gives the empty sum.
pub fn identity_check(id: u8, indices: &[i64]) -> Result<bool> {
    let arity = if id == 4 { 2 } else { 1 };
    if !(1..=7).contains(&id) {
        return Err(Error::UnknownIdentity(id));
    }
    if indices.len() != arity {
        return Err(Error::DimensionMismatch(format!(
            "identity {id} takes {arity} index(es), got {}",
            indices.len()
        )));
    }
    let n = indices[0];
    let holds = match id {
        1 => fib(n + 1) * fib(n - 1) - fib(n) * fib(n) == Integer::from(sign_pow(n)),
        2 => (fib(2 * n) - fib(2 * (n - 1)) * 3u32 + fib(2 * (n - 2))).is_zero(),
        3 => fib(2 * n + 1) == fib(n + 1) * fib(n + 1) + fib(n) * fib(n),
        4 => {
            let (m, n) = (indices[0], indices[1]);
            let rhs = fib(m - 1) * fib(n) * sign_pow(n + 1) + fib(m) * fib(n - 1) * sign_pow(n);
            fib(m - n) == rhs
        }
        5 => {
            let (a, b) = (fib(2 * n - 1), fib(2 * n + 1));
            let lhs = Rational::new(Integer::from(1), &a * &b);
            let rhs = Rational::new(fib(2 * n + 2), b) - Rational::new(fib(2 * n), a);
            lhs == rhs
        }
        6 => {
            let sum: Integer = (1..=n).map(|k| fib(2 * k - 1) * sign_pow(n - k)).sum();
            sum == fib(n) * fib(n)
        }
        7 => {
            // Multiplied through by 5.
            let sq = fib(n) * fib(n) * 5u32;
            sq == fib(2 * n - 1) + fib(2 * n + 1) + Integer::from(2 * sign_pow(n - 1))
        }
        _ => unreachable!(),
    };
    Ok(holds)
}
