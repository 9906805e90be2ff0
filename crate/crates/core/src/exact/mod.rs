//! Exact arithmetic: big integers, reduced rationals, the field Q(√5), and
//! Fibonacci numbers.
//!
//! [`Integer`] and [`Rational`] are the `num` big-number types. `BigRational`
//! reduces after every operation, so equality of two values is structural
//! equality of their canonical forms.

mod decimal;
mod fib;
mod identities;
mod surd;

pub use decimal::{rational_from_decimal_str, to_decimal};
pub use fib::{fib, fib_pair};
pub use identities::{identity_check, IDENTITY_IDS};
pub use surd::Surd5;

use num_bigint::BigInt;
use num_rational::BigRational;

pub type Integer = BigInt;
pub type Rational = BigRational;

/// Shorthand for an integral rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(Integer::from(n))
}

/// Shorthand for `num / den`; panics on a zero denominator.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(Integer::from(num), Integer::from(den))
}

/// `(-1)^k` for any integer `k`.
pub(crate) fn sign_pow(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}
