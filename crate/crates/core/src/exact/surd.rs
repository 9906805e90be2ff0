use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{Integer, Rational};
use crate::error::{Error, Result};

/// An element `a + b√5` of Q(√5), with `a` and `b` in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Surd5 {
    a: Rational,
    b: Rational,
}

impl Surd5 {
    pub fn new(a: Rational, b: Rational) -> Self {
        Self { a, b }
    }

    pub fn from_rational(a: Rational) -> Self {
        Self {
            a,
            b: Rational::zero(),
        }
    }

    pub fn sqrt5() -> Self {
        Self {
            a: Rational::zero(),
            b: Rational::one(),
        }
    }

    /// The golden ratio `(1 + √5)/2`.
    pub fn phi() -> Self {
        let half = Rational::new(1.into(), 2.into());
        Self {
            a: half.clone(),
            b: half,
        }
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn surd_part(&self) -> &Rational {
        &self.b
    }

    pub fn conjugate(&self) -> Self {
        Self {
            a: self.a.clone(),
            b: -&self.b,
        }
    }

    /// Field norm `a^2 - 5 b^2`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * Rational::from_integer(5.into())
    }

    pub fn inv(&self) -> Option<Self> {
        // √5 is irrational, so the norm vanishes only at zero.
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        Some(Self {
            a: &self.a / &n,
            b: -&self.b / &n,
        })
    }

    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self * &r)
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::from_rational(Rational::one());
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Collapses to a rational; fails if the √5 part is nonzero.
    pub fn to_rational(&self) -> Result<Rational> {
        if self.b.is_zero() {
            Ok(self.a.clone())
        } else {
            Err(Error::IrrationalResult(self.to_string()))
        }
    }

    /// A rational within `10^-digits` of the real value.
    pub fn approx(&self, digits: u32) -> Rational {
        // floor(√5 · 10^k) with k large enough that |b| · 10^-k stays small.
        let guard = self.b.abs().ceil().to_integer().bits() as u32 / 3 + 2;
        let k = digits + guard;
        let ten_k = Integer::from(10u32).pow(k);
        let root = (Integer::from(5u32) * &ten_k * &ten_k).sqrt();
        &self.a + &self.b * Rational::new(root, ten_k)
    }
}

impl fmt::Display for Surd5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + ({})√5", self.a, self.b)
    }
}

impl From<Rational> for Surd5 {
    fn from(a: Rational) -> Self {
        Self::from_rational(a)
    }
}

impl Zero for Surd5 {
    fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for Surd5 {
    fn one() -> Self {
        Self::from_rational(Rational::one())
    }
}

impl Add<&Surd5> for &Surd5 {
    type Output = Surd5;
    fn add(self, rhs: &Surd5) -> Surd5 {
        Surd5 {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
        }
    }
}

impl Sub<&Surd5> for &Surd5 {
    type Output = Surd5;
    fn sub(self, rhs: &Surd5) -> Surd5 {
        Surd5 {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
        }
    }
}

impl Mul<&Surd5> for &Surd5 {
    type Output = Surd5;
    fn mul(self, rhs: &Surd5) -> Surd5 {
        let five = Rational::from_integer(5.into());
        Surd5 {
            a: &self.a * &rhs.a + &self.b * &rhs.b * five,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
        }
    }
}

impl Div<&Surd5> for &Surd5 {
    type Output = Surd5;
    fn div(self, rhs: &Surd5) -> Surd5 {
        self.checked_div(rhs)
            .expect("division by zero in Q(sqrt 5)")
    }
}

impl Neg for &Surd5 {
    type Output = Surd5;
    fn neg(self) -> Surd5 {
        Surd5 {
            a: -&self.a,
            b: -&self.b,
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Surd5> for Surd5 {
            type Output = Surd5;
            fn $m(self, rhs: Surd5) -> Surd5 { (&self).$m(&rhs) }
        }
        impl $tr<&Surd5> for Surd5 {
            type Output = Surd5;
            fn $m(self, rhs: &Surd5) -> Surd5 { (&self).$m(rhs) }
        }
        impl $tr<Surd5> for &Surd5 {
            type Output = Surd5;
            fn $m(self, rhs: Surd5) -> Surd5 { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for Surd5 {
    type Output = Surd5;
    fn neg(self) -> Surd5 {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::frac;
    use proptest::prelude::*;

    fn s(a: (i64, i64), b: (i64, i64)) -> Surd5 {
        Surd5::new(frac(a.0, a.1), frac(b.0, b.1))
    }

    #[test]
    fn powers() {
        let t = s((3, 2), (-1, 2));
        assert_eq!(t.pow(1), t);
        assert_eq!(t.pow(2), s((7, 2), (-3, 2)));
        assert_eq!(Surd5::phi().pow(2), s((3, 2), (1, 2)));
        assert_eq!(t.pow(0), Surd5::one());
        // (3-√5)/2 = φ^-2
        assert_eq!(t * Surd5::phi().pow(2), Surd5::one());
    }

    #[test]
    fn collapse_to_rational() {
        assert_eq!(s((4, 1), (0, 1)).to_rational().unwrap(), frac(4, 1));
        assert_eq!(s((150, 11), (0, 1)).to_rational().unwrap(), frac(150, 11));
        assert!(matches!(
            s((1, 1), (1, 2)).to_rational(),
            Err(Error::IrrationalResult(_))
        ));
    }

    #[test]
    fn sqrt5_squares_to_five() {
        assert_eq!(Surd5::sqrt5() * Surd5::sqrt5(), s((5, 1), (0, 1)));
        assert!(Surd5::zero().inv().is_none());
    }

    #[test]
    fn approx_is_close() {
        let x = Surd5::new(frac(0, 1), frac(4, 25));
        let v = x.approx(20);
        // 4/(5√5) = 0.35777087639996635...
        let lo = crate::exact::rational_from_decimal_str("0.357770876399966351").unwrap();
        let hi = crate::exact::rational_from_decimal_str("0.357770876399966352").unwrap();
        assert!(lo < v && v < hi, "{v}");
    }

    fn small() -> impl Strategy<Value = Surd5> {
        (-50i64..50, 1i64..20, -50i64..50, 1i64..20).prop_map(|(a, b, c, d)| s((a, b), (c, d)))
    }

    proptest! {
        #[test]
        fn norm_is_multiplicative(x in small(), y in small()) {
            prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
        }

        #[test]
        fn inverse_roundtrip(x in small()) {
            prop_assume!(!x.is_zero());
            prop_assert_eq!(&x * &x.inv().unwrap(), Surd5::one());
        }

        #[test]
        fn pow_matches_repeated_product(x in small(), k in 0u32..6) {
            let mut acc = Surd5::one();
            for _ in 0..k { acc = &acc * &x; }
            prop_assert_eq!(x.pow(k), acc);
        }
    }
}
