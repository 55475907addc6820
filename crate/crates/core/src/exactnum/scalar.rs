//! The exact base field: rational functions in one formal transcendental `p`
//! over the rationals.

use super::poly::Poly;
use crate::error::{Error, Result};
use num::{BigInt, BigRational, One};
use std::ops::{Add, Div, Mul, Neg, Sub};

/// An element of the field Q(p).
///
/// Invariants: `gcd(num, den) = 1`, `den` is monic and nonzero. A `Scalar` is
/// zero iff its numerator is the zero polynomial, so equality is decidable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Scalar {
    fn reduced(num: Poly, den: Poly) -> Scalar {
        assert!(!den.is_zero(), "scalar denominator must be nonzero");
        if num.is_zero() {
            return Scalar {
                num: Poly::zero(),
                den: Poly::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, r1) = num.div_rem(&g);
        debug_assert!(r1.is_zero());
        let (den, r2) = den.div_rem(&g);
        debug_assert!(r2.is_zero());
        // normalize so the denominator is monic
        let lc = den.leading().unwrap().clone();
        Scalar {
            num: num.scale(&lc.recip()),
            den: den.scale(&lc.recip()),
        }
    }

    pub fn zero() -> Scalar {
        Scalar {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Scalar {
        Scalar {
            num: Poly::one(),
            den: Poly::one(),
        }
    }

    /// The formal transcendental `p`.
    pub fn p() -> Scalar {
        Scalar {
            num: Poly::var(),
            den: Poly::one(),
        }
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(r: BigRational) -> Scalar {
        Scalar {
            num: Poly::constant(r),
            den: Poly::one(),
        }
    }

    /// `a/b` as an exact rational scalar; `b` must be nonzero.
    pub fn rational(a: i64, b: i64) -> Scalar {
        assert!(b != 0);
        Scalar::from_rational(BigRational::new(BigInt::from(a), BigInt::from(b)))
    }

    pub fn from_polys(num: Poly, den: Poly) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::Dimension("zero denominator".into()));
        }
        Ok(Scalar::reduced(num, den))
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Returns the value as a plain rational if no `p` is involved.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::Dimension("inverse of zero scalar".into()));
        }
        Ok(Scalar::reduced(self.den.clone(), self.num.clone()))
    }

    /// Integer power, with negative exponents through the exact inverse.
    pub fn powi(&self, e: i64) -> Result<Scalar> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Scalar::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Exact power of a nonzero rational, `b^e` with `e` possibly negative.
    pub fn rational_pow(b: &BigRational, e: i64) -> BigRational {
        let mut acc = BigRational::one();
        let pos = if e < 0 { b.recip() } else { b.clone() };
        for _ in 0..e.unsigned_abs() {
            acc *= &pos;
        }
        acc
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        Scalar::reduced(num, &self.den * &rhs.den)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        // cross-reduce before multiplying to keep degrees down
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let (n1, _) = self.num.div_rem(&g1);
        let (d2, _) = rhs.den.div_rem(&g1);
        let (n2, _) = rhs.num.div_rem(&g2);
        let (d1, _) = self.den.div_rem(&g2);
        Scalar::reduced(&n1 * &n2, &d1 * &d2)
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv().expect("division by zero scalar")
    }
}

impl std::fmt::Display for Scalar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_identities() {
        let a = Scalar::rational(1, 2);
        let b = &Scalar::p() + &Scalar::from_int(3);
        let c = &a * &b;
        assert_eq!(&c / &b, a);
        assert_eq!(&b - &b, Scalar::zero());
        assert!((&b * &b.inv().unwrap()).is_one());
    }

    #[test]
    fn reduction_cancels_common_factor() {
        // (p^2 - 1)/(p - 1) = p + 1
        let num = &(&Scalar::p() * &Scalar::p()) - &Scalar::one();
        let den = &Scalar::p() - &Scalar::one();
        let q = &num / &den;
        assert_eq!(q, &Scalar::p() + &Scalar::one());
    }

    #[test]
    fn zero_test_is_numerator_zero() {
        let x = &Scalar::p() - &Scalar::p();
        assert!(x.is_zero());
        assert!(!Scalar::p().is_zero());
    }

    #[test]
    fn negative_powers_exact() {
        let two = Scalar::from_int(2);
        assert_eq!(two.powi(-1).unwrap(), Scalar::rational(1, 2));
        assert_eq!(Scalar::p().powi(0).unwrap(), Scalar::one());
    }

    #[test]
    fn display_matches_text_form() {
        let x = &Scalar::rational(1, 2) + &(&Scalar::rational(7, 3) * &Scalar::p());
        assert_eq!(x.to_string(), "1/2 + 7/3*p");
    }
}
