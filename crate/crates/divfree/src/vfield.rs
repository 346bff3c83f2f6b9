//! Witt-algebra vector fields and the divergence-zero subalgebras.
//!
//! Elements are sparse combinations `sum c_{r,i} t^r D_i` where `D_i` is the
//! Euler derivation `t_i d/dt_i`. The bracket follows
//! `[t^r D_i, t^s D_j] = s_i t^{r+s} D_j - r_j t^{r+s} D_i`.
//!
//! Two divergences cut out the subalgebras: `div(t^r D_i) = r_i t^r` (Euler)
//! and `Div(t^r D_i) = (r_i + 1) t^r` (classical partials, expressed on the
//! Euler basis). Membership in every tagged subalgebra is decided gradewise
//! from these linear conditions, with the handful of excluded grades handled
//! explicitly.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::poly::{Exponent, LaurentPoly};
use crate::scalar::Scalar;
use crate::{Error, Result};

/// Tags for the algebras in the containment lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AlgebraTag {
    /// The full Witt algebra.
    W,
    /// Kernel of the Euler divergence.
    Stilde,
    /// Derived subalgebra of `Stilde`: no Cartan (grade-zero) part.
    StildePrime,
    /// Kernel of the classical divergence, `t^{-1} Stilde`.
    Scl,
    /// `t^{-1} StildePrime`: no grade at `r = -1`.
    SclPrime,
    /// Cartan subalgebra adjoined to the simple core of `Scl`.
    Sbar,
    /// The simple core itself; for n = 2 the grade `(-2,-2)` is also excluded.
    SbarPrime,
    /// The Cartan subalgebra spanned by the Euler derivations.
    CartanH,
}

/// A vector field `sum c_{r,i} t^r D_i`, canonical sparse form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorField {
    n: usize,
    terms: BTreeMap<(Exponent, usize), Scalar>,
}

/// All terms of one exponent `r`, as the coefficient vector of `(D_1..D_n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedComponent {
    pub r: Exponent,
    pub coeffs: Vec<Scalar>,
}

impl GradedComponent {
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }
}

/// Outcome of a membership test; on failure the offending graded component
/// is returned as a certificate.
#[derive(Debug, Clone)]
pub struct Membership {
    pub ok: bool,
    pub offending: Option<GradedComponent>,
    pub reason: String,
}

impl Membership {
    fn yes() -> Self {
        Membership {
            ok: true,
            offending: None,
            reason: String::new(),
        }
    }

    fn no(component: GradedComponent, reason: impl Into<String>) -> Self {
        Membership {
            ok: false,
            offending: Some(component),
            reason: reason.into(),
        }
    }
}

impl VectorField {
    pub fn zero(n: usize) -> Self {
        VectorField {
            n,
            terms: BTreeMap::new(),
        }
    }

    /// The single term `c * t^exp D_dir` (1-based direction).
    pub fn term(n: usize, exp: Exponent, dir: usize, c: Scalar) -> Result<Self> {
        if exp.dim() != n {
            return Err(Error::DimensionMismatch(exp.dim(), n));
        }
        if dir == 0 || dir > n {
            return Err(Error::AxisOutOfRange { axis: dir, n });
        }
        let mut v = Self::zero(n);
        v.add_term(exp, dir, c);
        Ok(v)
    }

    /// The Euler derivation `D_axis`.
    pub fn d(n: usize, axis: usize) -> Result<Self> {
        Self::term(n, Exponent::zero(n), axis, Scalar::one())
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

    pub fn terms(&self) -> impl Iterator<Item = (&(Exponent, usize), &Scalar)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, exp: Exponent, dir: usize, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let key = (exp, dir);
        match self.terms.get_mut(&key) {
            Some(old) => {
                *old += &c;
                if old.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        let mut out = self.clone();
        for ((e, d), c) in &other.terms {
            out.add_term(e.clone(), *d, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        VectorField {
            n: self.n,
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        VectorField {
            n: self.n,
            terms: self.terms.iter().map(|(k, a)| (k.clone(), a * c)).collect(),
        }
    }

    /// The Lie bracket, extended bilinearly from
    /// `[t^r D_i, t^s D_j] = s_i t^{r+s} D_j - r_j t^{r+s} D_i`.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        let mut out = Self::zero(self.n);
        for ((r, i), a) in &self.terms {
            for ((s, j), b) in &other.terms {
                let c = a * b;
                let sum = r.add(s);
                let si = s.0[*i - 1];
                if si != 0 {
                    out.add_term(sum.clone(), *j, &c * &Scalar::from_int(si));
                }
                let rj = r.0[*j - 1];
                if rj != 0 {
                    out.add_term(sum, *i, &c * &Scalar::from_int(-rj));
                }
            }
        }
        Ok(out)
    }

    /// Euler divergence: `div(t^r D_i) = r_i t^r`, extended linearly.
    pub fn div(&self) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.n);
        for ((r, i), c) in &self.terms {
            let ri = r.0[*i - 1];
            if ri != 0 {
                out.add_term(r.clone(), c * &Scalar::from_int(ri));
            }
        }
        out
    }

    /// Classical divergence on the Euler basis: `Div(t^r D_i) = (r_i+1) t^r`.
    pub fn div_classical(&self) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.n);
        for ((r, i), c) in &self.terms {
            let ri = r.0[*i - 1] + 1;
            if ri != 0 {
                out.add_term(r.clone(), c * &Scalar::from_int(ri));
            }
        }
        out
    }

    /// The natural derivation action on the Laurent ring:
    /// `(t^r D_i) . t^s = s_i t^{r+s}`.
    pub fn apply(&self, f: &LaurentPoly) -> Result<LaurentPoly> {
        if self.n != f.dim() {
            return Err(Error::DimensionMismatch(self.n, f.dim()));
        }
        let mut out = LaurentPoly::zero(self.n);
        for ((r, i), c) in &self.terms {
            for (s, b) in f.terms() {
                let si = s.0[*i - 1];
                if si != 0 {
                    out.add_term(r.add(s), &(c * b) * &Scalar::from_int(si));
                }
            }
        }
        Ok(out)
    }

    /// Lossless partition of the terms by exponent.
    pub fn graded_decompose(&self) -> Vec<GradedComponent> {
        let mut map: BTreeMap<Exponent, Vec<Scalar>> = BTreeMap::new();
        for ((r, i), c) in &self.terms {
            let entry = map
                .entry(r.clone())
                .or_insert_with(|| vec![Scalar::zero(); self.n]);
            entry[*i - 1] = c.clone();
        }
        map.into_iter()
            .map(|(r, coeffs)| GradedComponent { r, coeffs })
            .collect()
    }

    /// Reassembles a field from graded components (inverse of decomposition).
    pub fn from_components(n: usize, comps: &[GradedComponent]) -> Result<Self> {
        let mut out = Self::zero(n);
        for comp in comps {
            if comp.r.dim() != n || comp.coeffs.len() != n {
                return Err(Error::DimensionMismatch(comp.r.dim(), n));
            }
            for (k, c) in comp.coeffs.iter().enumerate() {
                out.add_term(comp.r.clone(), k + 1, c.clone());
            }
        }
        Ok(out)
    }

    /// Splits off the grade-zero (Cartan) part: returns `(rest, cartan)`.
    /// For a divergence-zero field this realizes the direct-sum decomposition
    /// of `Stilde` into `StildePrime` and the Cartan subalgebra.
    pub fn split_cartan(&self) -> (VectorField, VectorField) {
        let mut rest = VectorField::zero(self.n);
        let mut cartan = VectorField::zero(self.n);
        for ((r, i), c) in &self.terms {
            if r.is_zero() {
                cartan.add_term(r.clone(), *i, c.clone());
            } else {
                rest.add_term(r.clone(), *i, c.clone());
            }
        }
        (rest, cartan)
    }

    /// Exact membership test, decided gradewise; on failure returns the
    /// offending graded component.
    pub fn is_member(&self, tag: AlgebraTag) -> Membership {
        for comp in self.graded_decompose() {
            if comp.is_zero() {
                continue;
            }
            let r = &comp.r;
            let minus_one = r.0.iter().all(|&e| e == -1);
            let corner_two = self.n == 2 && r.0.iter().all(|&e| e == -2);
            let euler: Scalar = comp
                .coeffs
                .iter()
                .zip(&r.0)
                .fold(Scalar::zero(), |acc, (c, &e)| {
                    acc + c * &Scalar::from_int(e)
                });
            let classical: Scalar = comp
                .coeffs
                .iter()
                .zip(&r.0)
                .fold(Scalar::zero(), |acc, (c, &e)| {
                    acc + c * &Scalar::from_int(e + 1)
                });
            let fail = |reason: &str| Membership::no(comp.clone(), reason);
            match tag {
                AlgebraTag::W => {}
                AlgebraTag::CartanH => {
                    if !r.is_zero() {
                        return fail("Cartan subalgebra has only grade-zero terms");
                    }
                }
                AlgebraTag::Stilde => {
                    if !euler.is_zero() {
                        return fail("Euler divergence is nonzero on this grade");
                    }
                }
                AlgebraTag::StildePrime => {
                    if r.is_zero() {
                        return fail("derived subalgebra has no grade-zero part");
                    }
                    if !euler.is_zero() {
                        return fail("Euler divergence is nonzero on this grade");
                    }
                }
                AlgebraTag::Scl => {
                    if !classical.is_zero() {
                        return fail("classical divergence is nonzero on this grade");
                    }
                }
                AlgebraTag::SclPrime => {
                    if minus_one {
                        return fail("grade (-1,..,-1) is excluded");
                    }
                    if !classical.is_zero() {
                        return fail("classical divergence is nonzero on this grade");
                    }
                }
                AlgebraTag::Sbar => {
                    if minus_one {
                        return fail("grade (-1,..,-1) is excluded");
                    }
                    if corner_two {
                        return fail("grade (-2,-2) is excluded for n = 2");
                    }
                    if !r.is_zero() && !classical.is_zero() {
                        return fail("classical divergence is nonzero on this grade");
                    }
                }
                AlgebraTag::SbarPrime => {
                    if minus_one {
                        return fail("grade (-1,..,-1) is excluded");
                    }
                    if corner_two {
                        return fail("grade (-2,-2) is excluded for n = 2");
                    }
                    if !classical.is_zero() {
                        return fail("classical divergence is nonzero on this grade");
                    }
                }
            }
        }
        Membership::yes()
    }
}

/// The named spanning element of a tagged family at grade `r` and axes
/// `(i, j)`:
///
/// - divergence-zero family: `r_j t^r D_i - r_i t^r D_j`;
/// - classical family: `(r_j+1) t^r D_i - (r_i+1) t^r D_j`, with the zero
///   element at `r_i = r_j = -1` and (n = 2) the grade `(-2,-2)` rejected.
pub fn basis_element(
    tag: AlgebraTag,
    n: usize,
    r: &Exponent,
    i: usize,
    j: usize,
) -> Result<VectorField> {
    if r.dim() != n {
        return Err(Error::DimensionMismatch(r.dim(), n));
    }
    if i == 0 || i > n {
        return Err(Error::AxisOutOfRange { axis: i, n });
    }
    if j == 0 || j > n {
        return Err(Error::AxisOutOfRange { axis: j, n });
    }
    if i == j {
        return Err(Error::AxesNotDistinct(vec![i, j]));
    }
    let ri = r.0[i - 1];
    let rj = r.0[j - 1];
    match tag {
        AlgebraTag::W => VectorField::term(n, r.clone(), i, Scalar::one()),
        AlgebraTag::CartanH => {
            if !r.is_zero() {
                return Err(Error::ExcludedExponent(r.0.clone()));
            }
            VectorField::d(n, i)
        }
        AlgebraTag::Stilde | AlgebraTag::StildePrime => {
            let mut v = VectorField::zero(n);
            v.add_term(r.clone(), i, Scalar::from_int(rj));
            v.add_term(r.clone(), j, Scalar::from_int(-ri));
            Ok(v)
        }
        AlgebraTag::Scl | AlgebraTag::SclPrime | AlgebraTag::Sbar | AlgebraTag::SbarPrime => {
            if ri == -1 && rj == -1 {
                // the spanning element vanishes identically here
                return Err(Error::ExcludedExponent(r.0.clone()));
            }
            if n == 2 && r.0 == [-2, -2] && tag != AlgebraTag::Scl && tag != AlgebraTag::SclPrime {
                return Err(Error::ExcludedExponent(r.0.clone()));
            }
            let mut v = VectorField::zero(n);
            v.add_term(r.clone(), i, Scalar::from_int(rj + 1));
            v.add_term(r.clone(), j, Scalar::from_int(-(ri + 1)));
            Ok(v)
        }
    }
}

/// Independent bracket oracle: composes the two fields as derivations of the
/// Laurent ring and reads the commutator off its action on the generators
/// `t_k`. Used to cross-check the structure-constant bracket.
pub fn leibniz_bracket(u: &VectorField, v: &VectorField) -> Result<VectorField> {
    let n = u.dim();
    if n != v.dim() {
        return Err(Error::DimensionMismatch(n, v.dim()));
    }
    let mut out = VectorField::zero(n);
    for k in 1..=n {
        let tk = LaurentPoly::t_pow(n, Exponent::unit(n, k))?;
        let uv = u.apply(&v.apply(&tk)?)?;
        let vu = v.apply(&u.apply(&tk)?)?;
        let g = uv.sub(&vu)?;
        // D = sum f_k D_k with f_k = D(t_k) / t_k
        let mut minus_ek = vec![0i64; n];
        minus_ek[k - 1] = -1;
        let shift = Exponent(minus_ek);
        for (s, c) in g.terms() {
            out.add_term(s.add(&shift), k, c.clone());
        }
    }
    Ok(out)
}

/// Status of a single generation identity check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum IdentityStatus {
    Holds,
    NotApplicable { reason: String },
    Fails,
}

/// Report of the bracket identities behind the generation of the classical
/// family from its rank-two slices.
#[derive(Debug, Clone, Serialize)]
pub struct GenerationReport {
    /// Appending one more axis: bracketing against `(r_l+1) t_l^{r_l} D_i -
    /// t_l^{r_l} D_l` scales the target by `-(r_l+1) r_i`.
    pub append_axis: IdentityStatus,
    /// Raising `t_l^{-2}` to `t_l^{-1}` via `2 t_l D_i - t_l D_l`, with
    /// scale `-2 (r_i+1)`.
    pub raise_exponent: IdentityStatus,
    /// The corner grade: `[t_i^{-1}t_j^{-1} D_i, t_i^{-1}t_j^{-1} D_j]
    /// = t_i^{-2}t_j^{-2} D_i - t_i^{-2}t_j^{-2} D_j`.
    pub corner: IdentityStatus,
}

impl GenerationReport {
    pub fn all_hold(&self) -> bool {
        !matches!(self.append_axis, IdentityStatus::Fails)
            && !matches!(self.raise_exponent, IdentityStatus::Fails)
            && !matches!(self.corner, IdentityStatus::Fails)
    }
}

fn classical_pair(n: usize, r: &Exponent, i: usize, j: usize) -> VectorField {
    let mut v = VectorField::zero(n);
    v.add_term(r.clone(), i, Scalar::from_int(r.0[j - 1] + 1));
    v.add_term(r.clone(), j, Scalar::from_int(-(r.0[i - 1] + 1)));
    v
}

/// Evaluates the bracket identities that generate the classical family from
/// rank-two slices, at the full target grade `r` with helper axis `l`.
pub fn check_generation_identities(
    n: usize,
    r: &Exponent,
    i: usize,
    j: usize,
    l: usize,
) -> Result<GenerationReport> {
    if r.dim() != n {
        return Err(Error::DimensionMismatch(r.dim(), n));
    }
    for &axis in &[i, j, l] {
        if axis == 0 || axis > n {
            return Err(Error::AxisOutOfRange { axis, n });
        }
    }
    if i == j || j == l || i == l {
        return Err(Error::AxesNotDistinct(vec![i, j, l]));
    }
    let ri = r.0[i - 1];
    let rl = r.0[l - 1];

    let append_axis = {
        let prefactor = -(rl + 1) * ri;
        if prefactor == 0 {
            IdentityStatus::NotApplicable {
                reason: format!("prefactor -(r_l+1)*r_i = 0 at r = {r}"),
            }
        } else {
            let mut base = r.clone();
            base.0[l - 1] = 0;
            let u = classical_pair(n, &base, i, j);
            let mut vr = vec![0i64; n];
            vr[l - 1] = rl;
            let vr = Exponent(vr);
            let mut v = VectorField::zero(n);
            v.add_term(vr.clone(), i, Scalar::from_int(rl + 1));
            v.add_term(vr, l, Scalar::from_int(-1));
            let lhs = u.bracket(&v)?;
            let rhs = classical_pair(n, r, i, j).scale(&Scalar::from_int(prefactor));
            if lhs == rhs {
                IdentityStatus::Holds
            } else {
                IdentityStatus::Fails
            }
        }
    };

    let raise_exponent = {
        let prefactor = -2 * (ri + 1);
        if prefactor == 0 {
            IdentityStatus::NotApplicable {
                reason: format!("prefactor -2*(r_i+1) = 0 at r = {r}"),
            }
        } else {
            let mut low = r.clone();
            low.0[l - 1] = -2;
            let mut high = r.clone();
            high.0[l - 1] = -1;
            let u = classical_pair(n, &low, i, j);
            let el = Exponent::unit(n, l);
            let mut v = VectorField::zero(n);
            v.add_term(el.clone(), i, Scalar::from_int(2));
            v.add_term(el, l, Scalar::from_int(-1));
            let lhs = u.bracket(&v)?;
            let rhs = classical_pair(n, &high, i, j).scale(&Scalar::from_int(prefactor));
            if lhs == rhs {
                IdentityStatus::Holds
            } else {
                IdentityStatus::Fails
            }
        }
    };

    let corner = {
        let mut e = vec![0i64; n];
        e[i - 1] = -1;
        e[j - 1] = -1;
        let e = Exponent(e);
        let u = VectorField::term(n, e.clone(), i, Scalar::one())?;
        let v = VectorField::term(n, e, j, Scalar::one())?;
        let lhs = u.bracket(&v)?;
        let mut e2 = vec![0i64; n];
        e2[i - 1] = -2;
        e2[j - 1] = -2;
        let e2 = Exponent(e2);
        let mut rhs = VectorField::zero(n);
        rhs.add_term(e2.clone(), i, Scalar::one());
        rhs.add_term(e2, j, Scalar::from_int(-1));
        if lhs == rhs {
            IdentityStatus::Holds
        } else {
            IdentityStatus::Fails
        }
    };

    Ok(GenerationReport {
        append_axis,
        raise_exponent,
        corner,
    })
}

/// Both candidate cocycle identities for the Euler divergence, evaluated
/// exactly. `minus_form` is `u.div(v) - v.div(u)`, `plus_form` the sum.
#[derive(Debug, Clone, Serialize)]
pub struct CocycleProbe {
    pub div_bracket: LaurentPoly,
    pub plus_form: LaurentPoly,
    pub minus_form: LaurentPoly,
    pub matches_plus: bool,
    pub matches_minus: bool,
}

/// Computes `div [u,v]` and compares it against both signs of the candidate
/// derivation identity.
pub fn divergence_cocycle_probe(u: &VectorField, v: &VectorField) -> Result<CocycleProbe> {
    let div_bracket = u.bracket(v)?.div();
    let u_dv = u.apply(&v.div())?;
    let v_du = v.apply(&u.div())?;
    let plus_form = u_dv.add(&v_du)?;
    let minus_form = u_dv.sub(&v_du)?;
    Ok(CocycleProbe {
        matches_plus: div_bracket == plus_form,
        matches_minus: div_bracket == minus_form,
        div_bracket,
        plus_form,
        minus_form,
    })
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((r, i), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if !c.is_one() {
                write!(f, "{c}*")?;
            }
            if !r.is_zero() {
                write!(f, "t^{r}*")?;
            }
            write!(f, "D{i}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct VfTermWire {
    exp: Vec<i64>,
    dir: usize,
    coeff: Scalar,
}

#[derive(Serialize, Deserialize)]
struct VfWire {
    n: usize,
    terms: Vec<VfTermWire>,
}

impl Serialize for VectorField {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        VfWire {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|((e, d), c)| VfTermWire {
                    exp: e.0.clone(),
                    dir: *d,
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for VectorField {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let w = VfWire::deserialize(de)?;
        let mut v = VectorField::zero(w.n);
        for t in w.terms {
            if t.exp.len() != w.n {
                return Err(D::Error::custom(format!(
                    "exponent {:?} has wrong dimension (n = {})",
                    t.exp, w.n
                )));
            }
            if t.dir == 0 || t.dir > w.n {
                return Err(D::Error::custom(format!(
                    "dir {} out of range (1..={})",
                    t.dir, w.n
                )));
            }
            v.add_term(Exponent(t.exp), t.dir, t.coeff);
        }
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(v: &[i64]) -> Exponent {
        Exponent(v.to_vec())
    }

    fn tf(exp: &[i64], dir: usize) -> VectorField {
        VectorField::term(exp.len(), e(exp), dir, Scalar::one()).unwrap()
    }

    #[test]
    fn cartan_is_abelian() {
        let d1 = VectorField::d(2, 1).unwrap();
        let d2 = VectorField::d(2, 2).unwrap();
        assert!(d1.bracket(&d2).unwrap().is_zero());
    }

    #[test]
    fn bracket_matches_leibniz_oracle_on_crossed_pair() {
        // [t1 D2, t2 D1] = t1 t2 D1 - t1 t2 D2
        let u = tf(&[1, 0], 2);
        let v = tf(&[0, 1], 1);
        let b = u.bracket(&v).unwrap();
        let mut expect = VectorField::zero(2);
        expect.add_term(e(&[1, 1]), 1, Scalar::one());
        expect.add_term(e(&[1, 1]), 2, Scalar::from_int(-1));
        assert_eq!(b, expect);
        assert_eq!(leibniz_bracket(&u, &v).unwrap(), expect);
    }

    #[test]
    fn cartan_weight_under_bracket() {
        // [D1, t^(2,3) D2] = 2 t^(2,3) D2
        let d1 = VectorField::d(2, 1).unwrap();
        let u = tf(&[2, 3], 2);
        assert_eq!(d1.bracket(&u).unwrap(), u.scale(&Scalar::from_int(2)));
        assert_eq!(
            leibniz_bracket(&d1, &u).unwrap(),
            u.scale(&Scalar::from_int(2))
        );
    }

    #[test]
    fn euler_divergence() {
        assert!(VectorField::d(2, 1).unwrap().div().is_zero());
        let u = tf(&[2, 3], 1);
        let mut expect = LaurentPoly::zero(2);
        expect.add_term(e(&[2, 3]), Scalar::from_int(2));
        assert_eq!(u.div(), expect);
        // 3 t^(2,3) D1 - 2 t^(2,3) D2 is divergence-free
        let v = tf(&[2, 3], 1)
            .scale(&Scalar::from_int(3))
            .add(&tf(&[2, 3], 2).scale(&Scalar::from_int(-2)))
            .unwrap();
        assert!(v.div().is_zero());
        assert!(v.is_member(AlgebraTag::Stilde).ok);
    }

    #[test]
    fn classical_divergence() {
        assert!(tf(&[-1, -1], 1).div_classical().is_zero());
        assert_eq!(
            VectorField::d(2, 1).unwrap().div_classical(),
            LaurentPoly::one(2)
        );
        let b = basis_element(AlgebraTag::Sbar, 2, &e(&[2, 3]), 1, 2).unwrap();
        assert!(b.div_classical().is_zero());
    }

    #[test]
    fn graded_decomposition_is_lossless() {
        let u = VectorField::d(2, 1).unwrap().add(&tf(&[1, 0], 2)).unwrap();
        let comps = u.graded_decompose();
        assert_eq!(comps.len(), 2);
        assert_eq!(VectorField::from_components(2, &comps).unwrap(), u);
        assert!(VectorField::zero(2).graded_decompose().is_empty());
        // classical pair at r=(1,1) has coefficient vector (2,-2)
        let b = basis_element(AlgebraTag::Sbar, 2, &e(&[1, 1]), 1, 2).unwrap();
        let comps = b.graded_decompose();
        assert_eq!(comps.len(), 1);
        assert_eq!(
            comps[0].coeffs,
            vec![Scalar::from_int(2), Scalar::from_int(-2)]
        );
    }

    #[test]
    fn membership_certificates() {
        assert!(
            VectorField::d(2, 1)
                .unwrap()
                .is_member(AlgebraTag::Stilde)
                .ok
        );
        // the corner grade is outside the n=2 simple core
        let corner = tf(&[-2, -2], 1).sub(&tf(&[-2, -2], 2)).unwrap();
        let m = corner.is_member(AlgebraTag::SbarPrime);
        assert!(!m.ok);
        assert_eq!(m.offending.unwrap().r, e(&[-2, -2]));
        // Div = 0 at r = (-1,-1) but that grade is excluded from the prime
        let t = tf(&[-1, -1], 1);
        assert!(t.div_classical().is_zero());
        let m = t.is_member(AlgebraTag::SclPrime);
        assert!(!m.ok);
        assert_eq!(m.offending.unwrap().r, e(&[-1, -1]));
        // ... but it is in Scl itself
        assert!(t.is_member(AlgebraTag::Scl).ok);
    }

    #[test]
    fn basis_elements() {
        let b = basis_element(AlgebraTag::Stilde, 2, &e(&[1, -1]), 1, 2).unwrap();
        let mut expect = VectorField::zero(2);
        expect.add_term(e(&[1, -1]), 1, Scalar::from_int(-1));
        expect.add_term(e(&[1, -1]), 2, Scalar::from_int(-1));
        assert_eq!(b, expect);
        assert!(b.is_member(AlgebraTag::Stilde).ok);

        let b = basis_element(AlgebraTag::Sbar, 2, &e(&[0, 0]), 1, 2).unwrap();
        let expect = VectorField::d(2, 1)
            .unwrap()
            .sub(&VectorField::d(2, 2).unwrap())
            .unwrap();
        assert_eq!(b, expect);

        assert!(matches!(
            basis_element(AlgebraTag::Sbar, 2, &e(&[-1, -1]), 1, 2),
            Err(Error::ExcludedExponent(_))
        ));
        assert!(matches!(
            basis_element(AlgebraTag::Sbar, 2, &e(&[-2, -2]), 1, 2),
            Err(Error::ExcludedExponent(_))
        ));
        assert!(basis_element(AlgebraTag::Sbar, 2, &e(&[1, 1]), 1, 1).is_err());
    }

    #[test]
    fn exponent_length() {
        assert_eq!(e(&[0, 0, 0]).length(), 0);
        assert_eq!(e(&[2, 0, -3]).length(), 2);
        assert_eq!(e(&[-1, -1, -1]).length(), 3);
    }

    #[test]
    fn generation_identities() {
        // full target (2,3,1): helper axis 3 carries exponent 1,
        // prefactor -(1+1)*2 = -4
        let rep = check_generation_identities(3, &e(&[2, 3, 1]), 1, 2, 3).unwrap();
        assert_eq!(rep.append_axis, IdentityStatus::Holds);
        assert_eq!(rep.raise_exponent, IdentityStatus::Holds);
        assert_eq!(rep.corner, IdentityStatus::Holds);

        // r_i = 0 kills the first prefactor
        let rep = check_generation_identities(3, &e(&[0, 3, 1]), 1, 2, 3).unwrap();
        assert!(matches!(
            rep.append_axis,
            IdentityStatus::NotApplicable { .. }
        ));

        check_generation_identities(3, &e(&[1, 2, 3]), 1, 2, 2).unwrap_err();
    }

    #[test]
    fn cocycle_probe_decides_the_sign() {
        // on this pair the plus form is nonzero while div[u,v] = 0
        let u = tf(&[1, 1], 1);
        let v = tf(&[1, 1], 2);
        let probe = divergence_cocycle_probe(&u, &v).unwrap();
        assert!(probe.div_bracket.is_zero());
        assert!(probe.matches_minus);
        assert!(!probe.matches_plus);
        // trivial cases
        let probe = divergence_cocycle_probe(
            &VectorField::d(2, 1).unwrap(),
            &VectorField::d(2, 2).unwrap(),
        )
        .unwrap();
        assert!(probe.div_bracket.is_zero());
        assert!(probe.matches_minus && probe.matches_plus);
        // [u,u] = 0 and the minus form vanishes
        let probe = divergence_cocycle_probe(&u, &u).unwrap();
        assert!(probe.div_bracket.is_zero());
        assert!(probe.minus_form.is_zero());
    }

    #[test]
    fn split_cartan_realizes_direct_sum() {
        let u = basis_element(AlgebraTag::Stilde, 3, &e(&[1, -1, 0]), 1, 2)
            .unwrap()
            .add(&VectorField::d(3, 2).unwrap())
            .unwrap();
        let (prime, cartan) = u.split_cartan();
        assert!(prime.is_member(AlgebraTag::StildePrime).ok);
        assert!(cartan.is_member(AlgebraTag::CartanH).ok);
        assert_eq!(prime.add(&cartan).unwrap(), u);
    }

    #[test]
    fn vector_field_json_schema() {
        let u = tf(&[1, -2], 2).scale(&Scalar::ratio(3, 4));
        let json = serde_json::to_value(&u).unwrap();
        assert_eq!(
            json,
            serde_json::json!({
                "n": 2,
                "terms": [{"exp": [1, -2], "dir": 2, "coeff": {"re": "3/4", "im": "0/1"}}]
            })
        );
        let back: VectorField = serde_json::from_value(json).unwrap();
        assert_eq!(back, u);
    }
}
