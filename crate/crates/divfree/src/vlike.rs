//! The Virasoro-like algebra in its abstract basis `{d_{i,j}, h_1, h_2}` with
//! `[d_{i,j}, d_{k,l}] = (jk - il) d_{i+k, j+l}` and `[h_1, d_{i,j}] = i d_{i,j}`,
//! `[h_2, d_{i,j}] = j d_{i,j}`, together with the realization `phi` inside
//! the rank-two Witt algebra and its inverses `phi_ij` on lattice-plane
//! slices.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::poly::Exponent;
use crate::scalar::Scalar;
use crate::vfield::{AlgebraTag, VectorField};
use crate::{Error, Result};

/// A formal element `sum c_{i,j} d_{i,j} + a h_1 + b h_2`; the index `(0,0)`
/// is never stored (`d_{0,0} = 0` by convention).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VLElement {
    d: BTreeMap<(i64, i64), Scalar>,
    h: [Scalar; 2],
}

impl VLElement {
    pub fn zero() -> Self {
        VLElement {
            d: BTreeMap::new(),
            h: [Scalar::zero(), Scalar::zero()],
        }
    }

    /// The basis vector `d_{i,j}`; `(0,0)` yields the zero element.
    pub fn d(i: i64, j: i64) -> Self {
        let mut e = Self::zero();
        e.add_d(i, j, Scalar::one());
        e
    }

    /// The Cartan vector `h_k`, k = 1 or 2.
    pub fn h(k: usize) -> Self {
        assert!(k == 1 || k == 2, "h index must be 1 or 2");
        let mut e = Self::zero();
        e.h[k - 1] = Scalar::one();
        e
    }

    pub fn is_zero(&self) -> bool {
        self.d.is_empty() && self.h.iter().all(Scalar::is_zero)
    }

    pub fn add_d(&mut self, i: i64, j: i64, c: Scalar) {
        if c.is_zero() || (i == 0 && j == 0) {
            return;
        }
        match self.d.get_mut(&(i, j)) {
            Some(old) => {
                *old += &c;
                if old.is_zero() {
                    self.d.remove(&(i, j));
                }
            }
            None => {
                self.d.insert((i, j), c);
            }
        }
    }

    pub fn add_h(&mut self, k: usize, c: Scalar) {
        self.h[k - 1] += &c;
    }

    pub fn d_terms(&self) -> impl Iterator<Item = (&(i64, i64), &Scalar)> {
        self.d.iter()
    }

    pub fn h_coeffs(&self) -> &[Scalar; 2] {
        &self.h
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(i, j), c) in &other.d {
            out.add_d(i, j, c.clone());
        }
        out.h[0] += &other.h[0];
        out.h[1] += &other.h[1];
        out
    }

    pub fn neg(&self) -> Self {
        VLElement {
            d: self.d.iter().map(|(k, c)| (*k, -c)).collect(),
            h: [-&self.h[0], -&self.h[1]],
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        VLElement {
            d: self.d.iter().map(|(k, a)| (*k, a * c)).collect(),
            h: [&self.h[0] * c, &self.h[1] * c],
        }
    }
}

/// Structure constant of `[d_a, d_b]` on `d_{a+b}`.
pub fn d_bracket_constant(a: (i64, i64), b: (i64, i64)) -> i64 {
    a.1 * b.0 - a.0 * b.1
}

/// The bracket, extended bilinearly from the structure constants.
pub fn vl_bracket(a: &VLElement, b: &VLElement) -> VLElement {
    let mut out = VLElement::zero();
    for (&(i, j), ca) in &a.d {
        for (&(k, l), cb) in &b.d {
            let s = d_bracket_constant((i, j), (k, l));
            if s != 0 {
                out.add_d(i + k, j + l, &(ca * cb) * &Scalar::from_int(s));
            }
        }
    }
    // [h_1, d_{k,l}] = k d_{k,l}, [h_2, d_{k,l}] = l d_{k,l}
    for (&(k, l), cb) in &b.d {
        let w = &(&a.h[0] * &Scalar::from_int(k)) + &(&a.h[1] * &Scalar::from_int(l));
        out.add_d(k, l, &w * cb);
    }
    for (&(i, j), ca) in &a.d {
        let w = &(&b.h[0] * &Scalar::from_int(i)) + &(&b.h[1] * &Scalar::from_int(j));
        out.add_d(i, j, -&(&w * ca));
    }
    out
}

fn parity_sign(k: i64) -> Scalar {
    if k.rem_euclid(2) == 0 {
        Scalar::one()
    } else {
        Scalar::from_int(-1)
    }
}

/// The embedding into the rank-two Witt algebra:
/// `h_k -> D_k` and `d_{i,j} -> (-1)^i (j t^(i,j) D_1 - i t^(i,j) D_2)`.
pub fn phi(a: &VLElement) -> VectorField {
    phi_plane(a, 2, 1, 2).expect("axes 1,2 are valid in rank 2")
}

/// Embedding into the `(i, j)` lattice plane of the rank-`n` Witt algebra:
/// `h_1 -> D_i`, `h_2 -> D_j`,
/// `d_{a,b} -> (-1)^a (b t_i^a t_j^b D_i - a t_i^a t_j^b D_j)`.
/// With `n = 2, (i, j) = (1, 2)` this is [`phi`].
pub fn phi_plane(a: &VLElement, n: usize, i: usize, j: usize) -> Result<VectorField> {
    if i == 0 || i > n {
        return Err(Error::AxisOutOfRange { axis: i, n });
    }
    if j == 0 || j > n {
        return Err(Error::AxisOutOfRange { axis: j, n });
    }
    if i == j {
        return Err(Error::AxesNotDistinct(vec![i, j]));
    }
    let mut out = VectorField::zero(n);
    for (&(p, q), c) in &a.d {
        let sign = parity_sign(p);
        let mut exp = vec![0i64; n];
        exp[i - 1] = p;
        exp[j - 1] = q;
        let exp = Exponent(exp);
        out.add_term(exp.clone(), i, &(c * &sign) * &Scalar::from_int(q));
        out.add_term(exp, j, &(c * &sign) * &Scalar::from_int(-p));
    }
    out.add_term(Exponent::zero(n), i, a.h[0].clone());
    out.add_term(Exponent::zero(n), j, a.h[1].clone());
    Ok(out)
}

/// Inverse of the embedding on a lattice-plane slice: maps a field supported
/// on exponents with nonzero entries only at axes `(i, j)` (and directions in
/// `{i, j}`) back to the abstract basis, termwise:
///
/// - `D_i -> h_1`, `D_j -> h_2`;
/// - `t_i^{a} D_j -> ((-1)^{a+1}/a) d_{a,0}` and `t_j^{b} D_i -> (1/b) d_{0,b}`;
/// - `b t^{(a,b)} D_i - a t^{(a,b)} D_j -> (-1)^a d_{a,b}`.
///
/// Inputs outside the plane, or violating the gradewise divergence-zero
/// condition, are errors rather than being silently projected.
pub fn phi_ij(u: &VectorField, i: usize, j: usize) -> Result<VLElement> {
    let n = u.dim();
    if i == 0 || i > n {
        return Err(Error::AxisOutOfRange { axis: i, n });
    }
    if j == 0 || j > n {
        return Err(Error::AxisOutOfRange { axis: j, n });
    }
    if i == j {
        return Err(Error::AxesNotDistinct(vec![i, j]));
    }
    let mut out = VLElement::zero();
    for comp in u.graded_decompose() {
        for (k, c) in comp.coeffs.iter().enumerate() {
            if !c.is_zero() && k + 1 != i && k + 1 != j {
                return Err(Error::OffPlane { i, j });
            }
        }
        for (k, &e) in comp.r.0.iter().enumerate() {
            if e != 0 && k + 1 != i && k + 1 != j {
                return Err(Error::OffPlane { i, j });
            }
        }
        let a = comp.r.0[i - 1];
        let b = comp.r.0[j - 1];
        let ci = comp.coeffs[i - 1].clone();
        let cj = comp.coeffs[j - 1].clone();
        match (a == 0, b == 0) {
            (true, true) => {
                out.add_h(1, ci);
                out.add_h(2, cj);
            }
            (false, true) => {
                // pure t_i^a D_j; a D_i component would break divergence zero
                if !ci.is_zero() {
                    return Err(Error::NotAMember {
                        tag: AlgebraTag::Stilde,
                        reason: format!("grade {} carries Euler divergence", comp.r),
                    });
                }
                let w = &(&cj * &parity_sign(a + 1)) / &Scalar::from_int(a);
                out.add_d(a, 0, w);
            }
            (true, false) => {
                if !cj.is_zero() {
                    return Err(Error::NotAMember {
                        tag: AlgebraTag::Stilde,
                        reason: format!("grade {} carries Euler divergence", comp.r),
                    });
                }
                let w = &ci / &Scalar::from_int(b);
                out.add_d(0, b, w);
            }
            (false, false) => {
                // component must be proportional to b D_i - a D_j
                let gamma = &ci / &Scalar::from_int(b);
                let expect_cj = -&(&gamma * &Scalar::from_int(a));
                if cj != expect_cj {
                    return Err(Error::NotAMember {
                        tag: AlgebraTag::Stilde,
                        reason: format!("grade {} carries Euler divergence", comp.r),
                    });
                }
                out.add_d(a, b, &gamma * &parity_sign(a));
            }
        }
    }
    Ok(out)
}

/// Breadth-first closure of the index set reachable from the four standard
/// generators `d_{+-1,0}, d_{0,+-1}` using brackets with nonzero structure
/// constants, keeping indices within `|i|,|j| <= cap`.
pub fn generated_indices(cap: i64, rounds: usize) -> BTreeSet<(i64, i64)> {
    let mut reached: BTreeSet<(i64, i64)> =
        [(1, 0), (-1, 0), (0, 1), (0, -1)].into_iter().collect();
    for _ in 0..rounds {
        let snapshot: Vec<(i64, i64)> = reached.iter().copied().collect();
        let mut grew = false;
        for &a in &snapshot {
            for &b in &snapshot {
                let t = (a.0 + b.0, a.1 + b.1);
                if t == (0, 0) || t.0.abs() > cap || t.1.abs() > cap {
                    continue;
                }
                if d_bracket_constant(a, b) != 0 && reached.insert(t) {
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    reached
}

impl fmt::Display for VLElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(i, j), c) in &self.d {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c.is_one() {
                write!(f, "d[{i},{j}]")?;
            } else {
                write!(f, "{c}*d[{i},{j}]")?;
            }
        }
        for (k, c) in self.h.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c.is_one() {
                write!(f, "h{}", k + 1)?;
            } else {
                write!(f, "{c}*h{}", k + 1)?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct DTermWire {
    i: i64,
    j: i64,
    coeff: Scalar,
}

#[derive(Serialize, Deserialize)]
struct VLWire {
    d: Vec<DTermWire>,
    h: [Scalar; 2],
}

impl Serialize for VLElement {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        VLWire {
            d: self
                .d
                .iter()
                .map(|(&(i, j), c)| DTermWire {
                    i,
                    j,
                    coeff: c.clone(),
                })
                .collect(),
            h: self.h.clone(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for VLElement {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let w = VLWire::deserialize(de)?;
        let mut e = VLElement::zero();
        for t in w.d {
            e.add_d(t.i, t.j, t.coeff);
        }
        e.h = w.h;
        Ok(e)
    }
}
