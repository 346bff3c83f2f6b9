//! Sparse multivariate polynomials over the Gaussian rationals.
//!
//! Two flavours share one term representation: [`Poly`] with ordinary
//! (non-negative) exponents carries the module elements, and [`LaurentPoly`]
//! with integer exponents is the coefficient ring of vector fields. Both keep
//! a canonical sparse form: no stored zero coefficients, terms ordered by
//! exponent.
//!
//! The shift automorphism `sigma_i` (substitute `x_i -> x_i - 1`) and its
//! powers drive every twisted module action in the crate; `translate` applies
//! all axes at once.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::scalar::Scalar;
use crate::{Error, Result};

/// An exponent vector in `Z^n`. Ordinary polynomials require all entries
/// non-negative; the Laurent ring allows any integers.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exponent(pub Vec<i64>);

impl Exponent {
    pub fn zero(n: usize) -> Self {
        Exponent(vec![0; n])
    }

    /// The i-th standard unit vector (1-based axis).
    pub fn unit(n: usize, axis: usize) -> Self {
        let mut v = vec![0; n];
        v[axis - 1] = 1;
        Exponent(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn is_nonneg(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }

    /// Entrywise sum, with overflow checks.
    pub fn add(&self, other: &Exponent) -> Exponent {
        assert_eq!(self.dim(), other.dim(), "exponent dimension mismatch");
        Exponent(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    /// Number of nonzero entries.
    pub fn length(&self) -> usize {
        self.0.iter().filter(|&&e| e != 0).count()
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, e) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

fn binomial(n: i64, k: i64) -> BigInt {
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

/// Shared sparse-term arithmetic for both polynomial flavours.
fn merge_add(into: &mut BTreeMap<Exponent, Scalar>, exp: Exponent, coeff: Scalar) {
    if coeff.is_zero() {
        return;
    }
    match into.get_mut(&exp) {
        Some(c) => {
            *c += &coeff;
            if c.is_zero() {
                into.remove(&exp);
            }
        }
        None => {
            into.insert(exp, coeff);
        }
    }
}

macro_rules! poly_common {
    ($ty:ident) => {
        impl $ty {
            pub fn zero(n: usize) -> Self {
                $ty {
                    n,
                    terms: BTreeMap::new(),
                }
            }

            pub fn constant(n: usize, c: Scalar) -> Self {
                let mut p = Self::zero(n);
                merge_add(&mut p.terms, Exponent::zero(n), c);
                p
            }

            pub fn one(n: usize) -> Self {
                Self::constant(n, Scalar::one())
            }

            /// The monomial `c * x^exp` (checked against the exponent domain).
            pub fn monomial(n: usize, exp: Exponent, c: Scalar) -> Result<Self> {
                if exp.dim() != n {
                    return Err(Error::DimensionMismatch(exp.dim(), n));
                }
                Self::check_exponent(&exp)?;
                let mut p = Self::zero(n);
                merge_add(&mut p.terms, exp, c);
                Ok(p)
            }

            pub fn dim(&self) -> usize {
                self.n
            }

            pub fn is_zero(&self) -> bool {
                self.terms.is_empty()
            }

            pub fn num_terms(&self) -> usize {
                self.terms.len()
            }

            pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Scalar)> {
                self.terms.iter()
            }

            pub fn coeff(&self, exp: &Exponent) -> Scalar {
                self.terms.get(exp).cloned().unwrap_or_else(Scalar::zero)
            }

            pub fn add_term(&mut self, exp: Exponent, c: Scalar) {
                merge_add(&mut self.terms, exp, c);
            }

            pub fn add(&self, other: &Self) -> Result<Self> {
                if self.n != other.n {
                    return Err(Error::DimensionMismatch(self.n, other.n));
                }
                let mut out = self.clone();
                for (e, c) in &other.terms {
                    merge_add(&mut out.terms, e.clone(), c.clone());
                }
                Ok(out)
            }

            pub fn sub(&self, other: &Self) -> Result<Self> {
                self.add(&other.neg())
            }

            pub fn neg(&self) -> Self {
                $ty {
                    n: self.n,
                    terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
                }
            }

            pub fn scale(&self, c: &Scalar) -> Self {
                if c.is_zero() {
                    return Self::zero(self.n);
                }
                $ty {
                    n: self.n,
                    terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
                }
            }

            pub fn mul(&self, other: &Self) -> Result<Self> {
                if self.n != other.n {
                    return Err(Error::DimensionMismatch(self.n, other.n));
                }
                let mut out = Self::zero(self.n);
                for (ea, ca) in &self.terms {
                    for (eb, cb) in &other.terms {
                        merge_add(&mut out.terms, ea.add(eb), ca * cb);
                    }
                }
                Ok(out)
            }

            pub fn pow(&self, e: u32) -> Self {
                let mut acc = Self::one(self.n);
                for _ in 0..e {
                    acc = acc.mul(self).expect("same dimension");
                }
                acc
            }

            /// Largest i-th exponent over all terms; -1 for the zero polynomial.
            pub fn partial_degree(&self, axis: usize) -> Result<i64> {
                if axis == 0 || axis > self.n {
                    return Err(Error::AxisOutOfRange { axis, n: self.n });
                }
                Ok(self.terms.keys().map(|e| e.0[axis - 1]).max().unwrap_or(-1))
            }

            /// Exact evaluation at a point.
            pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar> {
                if point.len() != self.n {
                    return Err(Error::DimensionMismatch(point.len(), self.n));
                }
                let mut acc = Scalar::zero();
                for (e, c) in &self.terms {
                    let mut term = c.clone();
                    for (k, &exp) in e.0.iter().enumerate() {
                        term *= &point[k].pow(exp)?;
                    }
                    acc += &term;
                }
                Ok(acc)
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                if self.is_zero() {
                    return write!(f, "0");
                }
                let mut first = true;
                for (e, c) in &self.terms {
                    if !first {
                        write!(f, " + ")?;
                    }
                    first = false;
                    if e.is_zero() {
                        write!(f, "{c}")?;
                        continue;
                    }
                    if !c.is_one() {
                        write!(f, "{c}*")?;
                    }
                    let mut started = false;
                    for (k, &exp) in e.0.iter().enumerate() {
                        if exp == 0 {
                            continue;
                        }
                        if started {
                            write!(f, "*")?;
                        }
                        started = true;
                        if exp == 1 {
                            write!(f, "x{}", k + 1)?;
                        } else {
                            write!(f, "x{}^{}", k + 1, exp)?;
                        }
                    }
                }
                Ok(())
            }
        }
    };
}

/// An ordinary polynomial in `C[x_1..x_n]`: all exponents non-negative.
///
/// This is the carrier of every rank-1 module in the crate (the paper-level
/// `x`, `h` and `partial` alphabets all land here).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    n: usize,
    terms: BTreeMap<Exponent, Scalar>,
}

/// A Laurent polynomial in `C[t_1^{+-1}..t_n^{+-1}]`: integer exponents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    n: usize,
    terms: BTreeMap<Exponent, Scalar>,
}

poly_common!(Poly);
poly_common!(LaurentPoly);

impl Poly {
    fn check_exponent(exp: &Exponent) -> Result<()> {
        if !exp.is_nonneg() {
            return Err(Error::ExcludedExponent(exp.0.clone()));
        }
        Ok(())
    }

    /// The variable `x_axis` (1-based).
    pub fn var(n: usize, axis: usize) -> Result<Self> {
        if axis == 0 || axis > n {
            return Err(Error::AxisOutOfRange { axis, n });
        }
        Self::monomial(n, Exponent::unit(n, axis), Scalar::one())
    }

    /// `x_axis + shift` as a polynomial, a convenience for ideal generators.
    pub fn linear(n: usize, axis: usize, shift: &Scalar) -> Result<Self> {
        let mut p = Self::var(n, axis)?;
        p.add_term(Exponent::zero(n), shift.clone());
        Ok(p)
    }

    /// Applies the e-th power of the shift automorphism on one axis:
    /// substitutes `x_i -> x_i - e`, expanded exactly.
    pub fn sigma_shift(&self, axis: usize, e: i64) -> Result<Poly> {
        if axis == 0 || axis > self.n {
            return Err(Error::AxisOutOfRange { axis, n: self.n });
        }
        if e == 0 {
            return Ok(self.clone());
        }
        let mut out = Poly::zero(self.n);
        let shift = Scalar::from_int(-e);
        for (exp, c) in &self.terms {
            let k = exp.0[axis - 1];
            // (x - e)^k = sum_j C(k,j) x^j (-e)^(k-j)
            for j in 0..=k {
                let bin = binomial(k, k - j);
                let mut coeff = c * &shift.pow(k - j).expect("nonneg power");
                coeff *= &Scalar::new(BigRational::from_integer(bin), BigRational::zero());
                let mut new_exp = exp.clone();
                new_exp.0[axis - 1] = j;
                merge_add(&mut out.terms, new_exp, coeff);
            }
        }
        Ok(out)
    }

    /// Simultaneous substitution `x_i -> x_i - k_i` on every axis; equal to
    /// the composition of `sigma_shift` over all axes.
    pub fn translate(&self, k: &Exponent) -> Result<Poly> {
        if k.dim() != self.n {
            return Err(Error::DimensionMismatch(k.dim(), self.n));
        }
        let mut out = self.clone();
        for axis in 1..=self.n {
            let e = k.0[axis - 1];
            if e != 0 {
                out = out.sigma_shift(axis, e)?;
            }
        }
        Ok(out)
    }

    /// Total degree; -1 for the zero polynomial.
    pub fn total_degree(&self) -> i64 {
        self.terms
            .keys()
            .map(|e| e.0.iter().sum::<i64>())
            .max()
            .unwrap_or(-1)
    }
}

impl LaurentPoly {
    fn check_exponent(_exp: &Exponent) -> Result<()> {
        Ok(())
    }

    /// The Laurent monomial `t^exp` with coefficient 1.
    pub fn t_pow(n: usize, exp: Exponent) -> Result<Self> {
        Self::monomial(n, exp, Scalar::one())
    }
}

#[derive(Serialize, Deserialize)]
struct TermWire {
    exp: Vec<i64>,
    coeff: Scalar,
}

#[derive(Serialize, Deserialize)]
struct PolyWire {
    n: usize,
    terms: Vec<TermWire>,
}

fn poly_to_wire(n: usize, terms: &BTreeMap<Exponent, Scalar>) -> PolyWire {
    PolyWire {
        n,
        terms: terms
            .iter()
            .map(|(e, c)| TermWire {
                exp: e.0.clone(),
                coeff: c.clone(),
            })
            .collect(),
    }
}

macro_rules! poly_serde {
    ($ty:ident) => {
        impl Serialize for $ty {
            fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
                poly_to_wire(self.n, &self.terms).serialize(ser)
            }
        }

        impl<'de> Deserialize<'de> for $ty {
            fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
                let w = PolyWire::deserialize(de)?;
                let mut p = $ty::zero(w.n);
                for t in w.terms {
                    if t.exp.len() != w.n {
                        return Err(D::Error::custom(format!(
                            "exponent {:?} has wrong dimension (n = {})",
                            t.exp, w.n
                        )));
                    }
                    let exp = Exponent(t.exp);
                    $ty::check_exponent(&exp).map_err(D::Error::custom)?;
                    merge_add(&mut p.terms, exp, t.coeff);
                }
                Ok(p)
            }
        }
    };
}

poly_serde!(Poly);
poly_serde!(LaurentPoly);

#[cfg(test)]
mod tests {
    use super::*;

    fn x(axis: usize) -> Poly {
        Poly::var(2, axis).unwrap()
    }

    #[test]
    fn sigma_shift_on_own_axis() {
        // h1 under sigma_1 becomes h1 - 1
        let shifted = x(1).sigma_shift(1, 1).unwrap();
        let mut expect = x(1);
        expect.add_term(Exponent::zero(2), Scalar::from_int(-1));
        assert_eq!(shifted, expect);
    }

    #[test]
    fn sigma_shift_other_axis_is_identity() {
        assert_eq!(x(2).sigma_shift(1, 1).unwrap(), x(2));
    }

    #[test]
    fn opposite_shifts_preserve_symmetric_polynomials() {
        // (h1 + h2)^2 is invariant under sigma_1 followed by sigma_2^{-1}
        let s = x(1).add(&x(2)).unwrap().pow(2);
        let moved = s.sigma_shift(1, 1).unwrap().sigma_shift(2, -1).unwrap();
        assert_eq!(moved, s);
    }

    #[test]
    fn sigma_shift_composes_additively() {
        let f = x(1).pow(3).mul(&x(2)).unwrap();
        let a = f.sigma_shift(1, 2).unwrap().sigma_shift(1, 3).unwrap();
        let b = f.sigma_shift(1, 5).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn partial_degrees() {
        let f = x(1).pow(3).mul(&x(2)).unwrap();
        assert_eq!(f.partial_degree(1).unwrap(), 3);
        assert_eq!(f.partial_degree(2).unwrap(), 1);
        assert_eq!(Poly::zero(2).partial_degree(2).unwrap(), -1);
        assert_eq!(x(2).pow(5).partial_degree(1).unwrap(), 0);
        assert!(f.partial_degree(3).is_err());
    }

    #[test]
    fn translate_expands_exactly() {
        // x1*x2 shifted by (1,1) -> (x1-1)(x2-1) = x1*x2 - x1 - x2 + 1
        let f = x(1).mul(&x(2)).unwrap();
        let g = f.translate(&Exponent(vec![1, 1])).unwrap();
        let mut expect = f.clone();
        expect = expect.add(&x(1).neg()).unwrap();
        expect = expect.add(&x(2).neg()).unwrap();
        expect.add_term(Exponent::zero(2), Scalar::one());
        assert_eq!(g, expect);

        // identity translation
        assert_eq!(f.translate(&Exponent::zero(2)).unwrap(), f);

        // x1^2 shifted by (-2,0) -> (x1+2)^2
        let h = x(1).pow(2).translate(&Exponent(vec![-2, 0])).unwrap();
        let mut expect = x(1).pow(2);
        expect.add_term(Exponent::unit(2, 1), Scalar::from_int(4));
        expect.add_term(Exponent::zero(2), Scalar::from_int(4));
        assert_eq!(h, expect);
    }

    #[test]
    fn evaluation() {
        // x1 + a vanishes at x1 = -a
        let a = Scalar::ratio(5, 3);
        let f = Poly::linear(2, 1, &a).unwrap();
        let at = f.evaluate(&[-&a, Scalar::from_int(7)]).unwrap();
        assert!(at.is_zero());
        assert_eq!(
            Poly::one(2).evaluate(&[a.clone(), a.clone()]).unwrap(),
            Scalar::one()
        );
        // (x1-k)(x2-k) vanishes at (k,k)
        let k = Scalar::ratio(-2, 7);
        let g = Poly::linear(2, 1, &(-&k))
            .unwrap()
            .mul(&Poly::linear(2, 2, &(-&k)).unwrap())
            .unwrap();
        assert!(g.evaluate(&[k.clone(), k.clone()]).unwrap().is_zero());
    }

    #[test]
    fn laurent_negative_exponents() {
        let t = LaurentPoly::t_pow(2, Exponent(vec![-1, 2])).unwrap();
        let u = LaurentPoly::t_pow(2, Exponent(vec![1, -2])).unwrap();
        assert_eq!(t.mul(&u).unwrap(), LaurentPoly::one(2));
        assert!(Poly::monomial(2, Exponent(vec![-1, 0]), Scalar::one()).is_err());
    }

    #[test]
    fn poly_json_schema() {
        let mut f = x(1).mul(&x(2)).unwrap();
        f.add_term(Exponent::zero(2), Scalar::ratio(1, 2));
        let json = serde_json::to_value(&f).unwrap();
        assert_eq!(
            json,
            serde_json::json!({
                "n": 2,
                "terms": [
                    {"exp": [0,0], "coeff": {"re": "1/2", "im": "0/1"}},
                    {"exp": [1,1], "coeff": {"re": "1/1", "im": "0/1"}},
                ]
            })
        );
        let back: Poly = serde_json::from_value(json).unwrap();
        assert_eq!(back, f);
    }
}
