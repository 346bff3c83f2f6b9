//! Exact Gaussian-rational scalars: pairs of arbitrary-precision rationals.
//!
//! This is the ground field for the whole crate. The representation theory is
//! stated over the complex numbers, but every formula involved is rational in
//! the parameters, so `Q(i)` suffices and keeps all comparisons exact.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// A Gaussian rational `re + im*i`, kept canonical by `BigRational`
/// (coprime numerator/denominator, positive denominator).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar {
    pub re: BigRational,
    pub im: BigRational,
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Scalar { re, im }
    }

    pub fn zero() -> Self {
        Scalar::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::new(BigRational::one(), BigRational::zero())
    }

    pub fn i() -> Self {
        Scalar::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::new(
            BigRational::from_integer(BigInt::from(n)),
            BigRational::zero(),
        )
    }

    /// The rational `num/den`. Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Multiplicative inverse; defined iff the scalar is nonzero.
    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        Ok(Scalar::new(&self.re / &norm, -&self.im / &norm))
    }

    /// Integer power, with exact inversion for negative exponents.
    pub fn pow(&self, e: i64) -> Result<Scalar> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Scalar::one();
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            k >>= 1;
        }
        Ok(acc)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: Self) -> Scalar {
        Scalar::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Self) -> Scalar {
        Scalar::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Self) -> Scalar {
        Scalar::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    #[allow(clippy::suspicious_arithmetic_impl)] // division is inverse multiplication
    fn div(self, rhs: Self) -> Scalar {
        self * &rhs.inv().expect("division by zero scalar")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::new(-&self.re, -&self.im)
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            return write!(f, "{}*i", self.im);
        }
        if self.im.is_negative() {
            write!(f, "({}{}*i)", self.re, self.im)
        } else {
            write!(f, "({}+{}*i)", self.re, self.im)
        }
    }
}

/// Formats a rational as a decimal-free `"p/q"` string.
pub fn rational_to_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `"p/q"` (or a bare integer `"p"`) into a rational.
pub fn rational_from_str(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n =
        BigInt::from_str(num).map_err(|e| Error::Parse(format!("bad numerator {num:?}: {e}")))?;
    let d =
        BigInt::from_str(den).map_err(|e| Error::Parse(format!("bad denominator {den:?}: {e}")))?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(n, d))
}

#[derive(Serialize, Deserialize)]
struct ScalarWire {
    re: String,
    im: String,
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ScalarWire {
            re: rational_to_string(&self.re),
            im: rational_to_string(&self.im),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let w = ScalarWire::deserialize(de)?;
        let re = rational_from_str(&w.re).map_err(D::Error::custom)?;
        let im = rational_from_str(&w.im).map_err(D::Error::custom)?;
        Ok(Scalar::new(re, im))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_basics() {
        let a = Scalar::ratio(3, 4);
        let b = Scalar::new(BigRational::from_integer(2.into()), BigRational::one());
        assert_eq!(&a + &b, &b + &a);
        assert_eq!(&(&a * &b) * &a, &a * &(&b * &a));
        let prod = &b * &b.inv().unwrap();
        assert!(prod.is_one());
    }

    #[test]
    fn inversion_of_zero_fails() {
        assert_eq!(Scalar::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn complex_multiplication() {
        // (1+i)(1-i) = 2
        let a = Scalar::new(BigRational::one(), BigRational::one());
        let b = Scalar::new(BigRational::one(), -BigRational::one());
        assert_eq!(&a * &b, Scalar::from_int(2));
        // i^2 = -1
        assert_eq!(&Scalar::i() * &Scalar::i(), Scalar::from_int(-1));
    }

    #[test]
    fn negative_powers_are_exact_inverses() {
        let a = Scalar::ratio(2, 3);
        let p = a.pow(-3).unwrap();
        assert_eq!(p, Scalar::ratio(27, 8));
        assert!(Scalar::zero().pow(-1).is_err());
        assert_eq!(Scalar::zero().pow(0).unwrap(), Scalar::one());
    }

    #[test]
    fn wire_format_round_trips() {
        let a = Scalar::new(
            BigRational::new(BigInt::from(-7), BigInt::from(3)),
            BigRational::new(BigInt::from(1), BigInt::from(2)),
        );
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(json, r#"{"re":"-7/3","im":"1/2"}"#);
        let back: Scalar = serde_json::from_str(&json).unwrap();
        assert_eq!(back, a);
        // bare integers are accepted on input
        let c: Scalar = serde_json::from_str(r#"{"re":"5","im":"0"}"#).unwrap();
        assert_eq!(c, Scalar::from_int(5));
    }
}
