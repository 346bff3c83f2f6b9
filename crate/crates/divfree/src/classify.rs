//! Classification machinery for the rank-1 module families: the
//! shift-invariant equation solver, bounded rank-1 consistency checking,
//! parameter extraction and isomorphism testing, and the constructive
//! simple-submodule reductions with replayable traces.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::linalg::Matrix;
use crate::omega::{
    self, act_general, bracket_value, generator_seed_values, Family, IndexRules, ModuleSpec,
};
use crate::poly::{Exponent, Poly};
use crate::scalar::Scalar;
use crate::vfield::{basis_element, AlgebraTag, VectorField};
use crate::{Error, Result};

/// Solves `g(h_1 - 1, h_2 + 1) = g(h_1, h_2)` on the space of polynomials of
/// total degree at most `max_degree` and returns a basis of the solution
/// space. The solutions are exactly the polynomials in `h_1 + h_2`, so the
/// space has dimension `max_degree + 1`.
pub fn solve_sigma_invariant(max_degree: i64) -> Result<Vec<Poly>> {
    let monomials = omega::monomials_up_to(2, max_degree);
    let index: BTreeMap<Exponent, usize> = monomials
        .iter()
        .enumerate()
        .map(|(k, m)| (m.terms().next().expect("monomial").0.clone(), k))
        .collect();
    // matrix of g |-> sigma_2^{-1} sigma_1 (g) - g on the monomial basis
    let mut mat = Matrix::new(monomials.len(), monomials.len());
    for (col, m) in monomials.iter().enumerate() {
        let shifted = m.sigma_shift(1, 1)?.sigma_shift(2, -1)?;
        let diff = shifted.sub(m)?;
        for (e, c) in diff.terms() {
            let row = *index.get(e).expect("shift preserves total degree bound");
            mat.data[row][col] = c.clone();
        }
    }
    let basis = mat
        .nullspace()
        .into_iter()
        .map(|v| {
            let mut p = Poly::zero(2);
            for (coeff, m) in v.into_iter().zip(&monomials) {
                p = p.add(&m.scale(&coeff)).expect("dimension 2");
            }
            p
        })
        .collect();
    Ok(basis)
}

/// True iff the two polynomial families span the same subspace of the
/// coefficient space of total degree at most `max_degree`.
pub fn spans_match(a: &[Poly], b: &[Poly], max_degree: i64) -> Result<bool> {
    let monomials = omega::monomials_up_to(2, max_degree);
    let index: BTreeMap<Exponent, usize> = monomials
        .iter()
        .enumerate()
        .map(|(k, m)| (m.terms().next().expect("monomial").0.clone(), k))
        .collect();
    let to_row = |p: &Poly| -> Result<Vec<Scalar>> {
        let mut row = vec![Scalar::zero(); monomials.len()];
        for (e, c) in p.terms() {
            let Some(&k) = index.get(e) else {
                return Err(Error::InvalidConfig(format!(
                    "polynomial exceeds degree bound {max_degree}"
                )));
            };
            row[k] = c.clone();
        }
        Ok(row)
    };
    let rows_a: Vec<Vec<Scalar>> = a.iter().map(&to_row).collect::<Result<_>>()?;
    let rows_b: Vec<Vec<Scalar>> = b.iter().map(&to_row).collect::<Result<_>>()?;
    let rank_a = Matrix::from_rows(rows_a.clone()).rank();
    let rank_b = Matrix::from_rows(rows_b.clone()).rank();
    let mut all = rows_a;
    all.extend(rows_b);
    let rank_union = Matrix::from_rows(all).rank();
    Ok(rank_a == rank_b && rank_b == rank_union)
}

/// A candidate family of generator values `x_idx . 1`, the data the rank-1
/// classification pins down.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GeneratorAssignment {
    pub family: Family,
    pub values: BTreeMap<(i64, i64), Poly>,
}

impl GeneratorAssignment {
    /// The assignment realized by a concrete module spec.
    pub fn from_spec(spec: &ModuleSpec) -> Result<Self> {
        let rules = IndexRules::for_family(spec.family())?;
        let mut values = generator_seed_values(spec)?;
        values.retain(|idx, _| rules.generators().contains(idx));
        Ok(GeneratorAssignment {
            family: spec.family(),
            values,
        })
    }
}

/// A violated bracket relation `[x_a, x_b] . 1 = c * x_{a+b} . 1`.
#[derive(Debug, Clone, Serialize)]
pub struct RelationViolation {
    pub a: (i64, i64),
    pub b: (i64, i64),
    pub target: (i64, i64),
    pub lhs: Poly,
    pub rhs: Poly,
}

/// Why a generator assignment is inconsistent.
#[derive(Debug, Clone, Serialize)]
pub enum Inconsistency {
    ZeroGeneratorValue((i64, i64)),
    Relation(RelationViolation),
}

#[derive(Debug, Clone, Serialize)]
pub struct ConsistencyReport {
    pub consistent: bool,
    pub relations_checked: usize,
    pub problem: Option<Inconsistency>,
}

/// Extends a generator assignment to every basis element reachable by
/// bracket words within `word_bound` rounds (indices capped at the same
/// bound), then checks every bracket relation among the reached elements.
/// Reports the first violated relation, scanning pairs in index order.
pub fn check_rank1_consistency(
    assign: &GeneratorAssignment,
    word_bound: usize,
) -> Result<ConsistencyReport> {
    let rules = IndexRules::for_family(assign.family)?;
    for (idx, val) in &assign.values {
        if val.is_zero() {
            return Ok(ConsistencyReport {
                consistent: false,
                relations_checked: 0,
                problem: Some(Inconsistency::ZeroGeneratorValue(*idx)),
            });
        }
    }
    let mut seeds = assign.values.clone();
    if let IndexRules::LBasis = rules {
        // l_{0,0} = h_1 - h_2 acts by multiplication, independent of the data
        seeds
            .entry((0, 0))
            .or_insert(Poly::var(2, 1)?.sub(&Poly::var(2, 2)?)?);
    }
    let cap = word_bound as i64;
    let values = omega::extend_by_brackets(rules, &seeds, cap, word_bound)?;

    let indices: Vec<(i64, i64)> = values.keys().copied().collect();
    let mut checked = 0usize;
    for (pos, &a) in indices.iter().enumerate() {
        for &b in &indices[pos + 1..] {
            let target = (a.0 + b.0, a.1 + b.1);
            let c = rules.constant(a, b);
            let lhs = if rules.is_zero_index(target) {
                Poly::zero(2)
            } else if rules.is_excluded(target) || !values.contains_key(&target) {
                if c != 0 {
                    continue; // target value unknown, nothing to compare
                }
                Poly::zero(2)
            } else {
                values[&target].scale(&Scalar::from_int(c))
            };
            let rhs = bracket_value(a, &values[&a], b, &values[&b])?;
            checked += 1;
            if lhs != rhs {
                return Ok(ConsistencyReport {
                    consistent: false,
                    relations_checked: checked,
                    problem: Some(Inconsistency::Relation(RelationViolation {
                        a,
                        b,
                        target,
                        lhs,
                        rhs,
                    })),
                });
            }
        }
    }
    Ok(ConsistencyReport {
        consistent: true,
        relations_checked: checked,
        problem: None,
    })
}

/// The family-specific shift parameters of an invariant tuple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ShiftParams {
    A(Scalar),
    Alpha(Vec<Scalar>),
    Kappa(Scalar),
}

/// The complete isomorphism invariant of a rank-1 module: the family, the
/// nonzero multipliers, and the shift block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantTuple {
    pub family: Family,
    pub lambda: Vec<Scalar>,
    pub shift: ShiftParams,
}

impl InvariantTuple {
    /// The tuple a spec was constructed with, read off its fields directly
    /// (no action queries). Extraction must round-trip to this.
    pub fn of_spec(spec: &ModuleSpec) -> Self {
        let shift = match spec.params() {
            omega::FamilyParams::W { a } => ShiftParams::A(a.clone()),
            omega::FamilyParams::Stilde { alpha } => ShiftParams::Alpha(alpha.to_vec()),
            omega::FamilyParams::Sbar { kappa } => ShiftParams::Kappa(kappa.clone()),
        };
        InvariantTuple {
            family: spec.family(),
            lambda: spec.lambda().to_vec(),
            shift,
        }
    }
}

fn linear_shape(value: &Poly, n: usize, axes: &[usize]) -> Result<()> {
    for axis in 1..=n {
        let d = value.partial_degree(axis)?;
        let want = if axes.contains(&axis) { 1 } else { 0 };
        if d > want || (want == 1 && d < 1) {
            return Err(Error::NotRankOne(format!(
                "generator value {value} is not linear in the expected axes"
            )));
        }
    }
    if value.total_degree() > 1 {
        return Err(Error::NotRankOne(format!(
            "generator value {value} has total degree above 1"
        )));
    }
    Ok(())
}

/// Reads the invariant tuple off generator-on-1 queries answered by an
/// arbitrary action oracle. Fails with `NotRankOne` when a query returns a
/// value outside the classified linear shape.
pub fn extract_parameters_with<F>(family: Family, n: usize, mut oracle: F) -> Result<InvariantTuple>
where
    F: FnMut(&VectorField) -> Result<Poly>,
{
    let mut lambda = vec![Scalar::zero(); n];
    match family {
        Family::Stilde => {
            let mut alpha = vec![Scalar::zero(); n];
            for j in 1..=n {
                let i = j % n + 1;
                // t_j D_i . 1 = lambda_j (x_i + alpha_i)
                let q = basis_element(AlgebraTag::Stilde, n, &Exponent::unit(n, j), i, j)?;
                let value = oracle(&q)?;
                linear_shape(&value, n, &[i])?;
                let lead = value.coeff(&Exponent::unit(n, i));
                if lead.is_zero() {
                    return Err(Error::NotRankOne(format!(
                        "query t_{j} D_{i} returned {value}, expected degree 1 in x_{i}"
                    )));
                }
                let konst = value.coeff(&Exponent::zero(n));
                lambda[j - 1] = lead.clone();
                alpha[i - 1] = &konst / &lead;
            }
            Ok(InvariantTuple {
                family,
                lambda,
                shift: ShiftParams::Alpha(alpha),
            })
        }
        Family::Sbar => {
            let mut kappa: Option<Scalar> = None;
            for i in 1..=n {
                let j = i % n + 1;
                // l^{(i,j)} at r = e_i: value = lambda_i (x_i - 2 x_j + kappa)
                let q = basis_element(AlgebraTag::Sbar, n, &Exponent::unit(n, i), i, j)?;
                let value = oracle(&q)?;
                linear_shape(&value, n, &[i, j])?;
                let lead = value.coeff(&Exponent::unit(n, i));
                if lead.is_zero() {
                    return Err(Error::NotRankOne(format!(
                        "query at r = e_{i} returned {value}, expected degree 1 in x_{i}"
                    )));
                }
                let cross = value.coeff(&Exponent::unit(n, j));
                if cross != &lead * &Scalar::from_int(-2) {
                    return Err(Error::NotRankOne(format!(
                        "query at r = e_{i} returned {value}, expected x_{j} coefficient -2*lambda"
                    )));
                }
                let k = &value.coeff(&Exponent::zero(n)) / &lead;
                match &kappa {
                    None => kappa = Some(k),
                    Some(prev) if *prev != k => {
                        return Err(Error::NotRankOne("inconsistent kappa across axes".into()))
                    }
                    _ => {}
                }
                lambda[i - 1] = lead;
            }
            Ok(InvariantTuple {
                family,
                lambda,
                shift: ShiftParams::Kappa(kappa.expect("n >= 2")),
            })
        }
        Family::W => {
            let mut a: Option<Scalar> = None;
            for i in 1..=n {
                // t^{e_i} D_i . 1 = lambda_i (x_i - (a+1))
                let q = VectorField::term(n, Exponent::unit(n, i), i, Scalar::one())?;
                let value = oracle(&q)?;
                linear_shape(&value, n, &[i])?;
                let lead = value.coeff(&Exponent::unit(n, i));
                if lead.is_zero() {
                    return Err(Error::NotRankOne(format!(
                        "query t^e_{i} D_{i} returned {value}, expected degree 1 in x_{i}"
                    )));
                }
                let shift = &(-&(&value.coeff(&Exponent::zero(n)) / &lead)) - &Scalar::one();
                match &a {
                    None => a = Some(shift),
                    Some(prev) if *prev != shift => {
                        return Err(Error::NotRankOne("inconsistent a across axes".into()))
                    }
                    _ => {}
                }
                lambda[i - 1] = lead;
            }
            Ok(InvariantTuple {
                family,
                lambda,
                shift: ShiftParams::A(a.expect("n >= 2")),
            })
        }
    }
}

/// Reads the invariant tuple from a concrete module spec's own action.
pub fn extract_parameters(spec: &ModuleSpec) -> Result<InvariantTuple> {
    let one = Poly::one(spec.n());
    extract_parameters_with(spec.family(), spec.n(), |u| act_general(spec, u, &one))
}

/// Two modules of the same family and dimension are isomorphic iff their
/// invariant tuples coincide.
pub fn isomorphic(m1: &ModuleSpec, m2: &ModuleSpec) -> Result<bool> {
    if m1.family() != m2.family() {
        return Err(Error::FamilyMismatch(m1.family(), m2.family()));
    }
    if m1.n() != m2.n() {
        return Err(Error::DimensionMismatch(m1.n(), m2.n()));
    }
    Ok(extract_parameters(m1)? == extract_parameters(m2)?)
}

/// One replayable step of a reduction trace. Steps reference earlier states
/// by index; state 0 is the starting element, step k produces state k+1.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum TraceStep {
    /// Apply an algebra element to a previous state.
    Act {
        element: VectorField,
        input: usize,
        expect: Poly,
    },
    /// Scalar linear combination of previous states.
    Combine {
        terms: Vec<(Scalar, usize)>,
        expect: Poly,
    },
    /// Multiply a previous state by a polynomial (the enveloping algebra of
    /// the Cartan subalgebra acts by multiplication, so submodules are
    /// closed under this).
    MulPoly {
        input: usize,
        factor: Poly,
        expect: Poly,
    },
}

impl TraceStep {
    pub fn expect(&self) -> &Poly {
        match self {
            TraceStep::Act { expect, .. } => expect,
            TraceStep::Combine { expect, .. } => expect,
            TraceStep::MulPoly { expect, .. } => expect,
        }
    }
}

/// An explicit, replayable reduction of a nonzero module element to the two
/// ideal generators of the distinguished submodule.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub start: Poly,
    pub steps: Vec<TraceStep>,
    /// State indices holding the two reached ideal generators.
    pub targets: (usize, usize),
}

/// Re-runs every step of a trace through the module action and checks each
/// expected intermediate exactly; finally checks that the target states are
/// the ideal generators of the spec's distinguished submodule.
pub fn replay_trace(spec: &ModuleSpec, trace: &ReductionTrace) -> Result<bool> {
    let mut states = vec![trace.start.clone()];
    for step in &trace.steps {
        let got = match step {
            TraceStep::Act { element, input, .. } => act_general(spec, element, &states[*input])?,
            TraceStep::Combine { terms, .. } => {
                let mut acc = Poly::zero(spec.n());
                for (c, idx) in terms {
                    acc = acc.add(&states[*idx].scale(c))?;
                }
                acc
            }
            TraceStep::MulPoly { input, factor, .. } => factor.mul(&states[*input])?,
        };
        if &got != step.expect() {
            return Ok(false);
        }
        states.push(got);
    }
    let gens = spec.ideal_generators();
    Ok(states[trace.targets.0] == gens[0] && states[trace.targets.1] == gens[1])
}

/// Shared sweep: act with `elements[k]` (k = 1..=deg+1) on the state, then
/// solve an exact linear system for a combination killing every monomial
/// that still involves `kill_axis`. Appends the steps and returns the index
/// and value of the combined state.
fn sweep_and_combine(
    spec: &ModuleSpec,
    states: &mut Vec<Poly>,
    steps: &mut Vec<TraceStep>,
    input: usize,
    elements: &[VectorField],
    kill_axis: usize,
) -> Result<(usize, Poly)> {
    let mut acted = Vec::new();
    for el in elements {
        let value = act_general(spec, el, &states[input])?;
        steps.push(TraceStep::Act {
            element: el.clone(),
            input,
            expect: value.clone(),
        });
        states.push(value.clone());
        acted.push((states.len() - 1, value));
    }
    // coefficient matrix of the monomials that still involve the kill axis
    let mut monomials: Vec<Exponent> = Vec::new();
    for (_, g) in &acted {
        for (e, _) in g.terms() {
            if e.0[kill_axis - 1] > 0 && !monomials.contains(e) {
                monomials.push(e.clone());
            }
        }
    }
    monomials.sort();
    let mut mat = Matrix::new(monomials.len(), acted.len());
    for (col, (_, g)) in acted.iter().enumerate() {
        for (row, m) in monomials.iter().enumerate() {
            mat.data[row][col] = g.coeff(m);
        }
    }
    for v in mat.nullspace() {
        let mut combo = Poly::zero(spec.n());
        for (c, (_, g)) in v.iter().zip(&acted) {
            combo = combo.add(&g.scale(c))?;
        }
        if combo.is_zero() {
            continue;
        }
        let terms: Vec<(Scalar, usize)> = v
            .into_iter()
            .zip(&acted)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, (idx, _))| (c, *idx))
            .collect();
        steps.push(TraceStep::Combine {
            terms,
            expect: combo.clone(),
        });
        states.push(combo.clone());
        return Ok((states.len() - 1, combo));
    }
    Err(Error::InvalidConfig(
        "no nonzero axis-free combination exists; the acted values were dependent".into(),
    ))
}

/// Normalizes a state known to be `c * generator` down to the generator.
fn normalize_to_generator(
    spec: &ModuleSpec,
    states: &mut Vec<Poly>,
    steps: &mut Vec<TraceStep>,
    input: usize,
    axis: usize,
) -> Result<usize> {
    let gens = spec.ideal_generators();
    let gen = &gens[axis - 1];
    let lead = states[input].coeff(&Exponent::unit(spec.n(), axis));
    if lead.is_zero() {
        return Err(Error::InvalidConfig(
            "combined state lost its leading term".into(),
        ));
    }
    let inv = lead.inv()?;
    let scaled = states[input].scale(&inv);
    if &scaled != gen {
        return Err(Error::InvalidConfig(format!(
            "normalized state {scaled} is not the ideal generator {gen}"
        )));
    }
    steps.push(TraceStep::Combine {
        terms: vec![(inv, input)],
        expect: scaled.clone(),
    });
    states.push(scaled);
    Ok(states.len() - 1)
}

/// Constructive reduction in the rank-two divergence-zero module: carries any
/// nonzero element to both ideal generators `x_1 + alpha_1` and
/// `x_2 + alpha_2`.
///
/// Stage A acts with the fields realizing `d_{i,0}` for `i = 1..deg_1+1` and
/// combines the results into a nonzero polynomial in `x_2` alone; stage B
/// acts with `d_{0,j}` to reach a multiple of `x_1 + alpha_1`; stage C
/// repeats stage A starting from `x_1 + alpha_1` to reach `x_2 + alpha_2`.
pub fn simple_reduce_stilde(spec: &ModuleSpec, start: &Poly) -> Result<ReductionTrace> {
    if spec.family() != Family::Stilde {
        return Err(Error::UnsupportedFamily(spec.family()));
    }
    if spec.n() != 2 {
        return Err(Error::DimensionMismatch(spec.n(), 2));
    }
    if start.is_zero() {
        return Err(Error::ZeroInput);
    }
    // d_{i,0} embeds as (-1)^{i+1} i t^{(i,0)} D_2
    let d_i0 = |i: i64| -> Result<VectorField> {
        let sign = if i.rem_euclid(2) == 1 { 1 } else { -1 };
        VectorField::term(2, Exponent(vec![i, 0]), 2, Scalar::from_int(sign * i))
    };
    // d_{0,j} embeds as j t^{(0,j)} D_1
    let d_0j = |j: i64| -> Result<VectorField> {
        VectorField::term(2, Exponent(vec![0, j]), 1, Scalar::from_int(j))
    };

    let mut states = vec![start.clone()];
    let mut steps = Vec::new();

    // stage A: kill x_1, reaching a nonzero polynomial in x_2
    let d1 = start.partial_degree(1)?.max(0);
    let row: Vec<VectorField> = (1..=d1 + 1).map(d_i0).collect::<Result<_>>()?;
    let (g_idx, g) = sweep_and_combine(spec, &mut states, &mut steps, 0, &row, 1)?;

    // stage B: kill x_2, reaching a multiple of x_1 + alpha_1
    let d2 = g.partial_degree(2)?.max(0);
    let col: Vec<VectorField> = (1..=d2 + 1).map(d_0j).collect::<Result<_>>()?;
    let (c_idx, _) = sweep_and_combine(spec, &mut states, &mut steps, g_idx, &col, 2)?;
    let first = normalize_to_generator(spec, &mut states, &mut steps, c_idx, 1)?;

    // stage C: rerun stage A from x_1 + alpha_1 to reach x_2 + alpha_2
    let row: Vec<VectorField> = (1..=2).map(d_i0).collect::<Result<_>>()?;
    let (c2_idx, _) = sweep_and_combine(spec, &mut states, &mut steps, first, &row, 1)?;
    let second = normalize_to_generator(spec, &mut states, &mut steps, c2_idx, 2)?;

    Ok(ReductionTrace {
        start: start.clone(),
        steps,
        targets: (first, second),
    })
}

/// Constructive reduction in the rank-two classical module: carries any
/// nonzero element to both ideal generators `x_1 - kappa` and `x_2 - kappa`.
///
/// Stage A acts with the fields realizing `l_{i,-1}`, stage B with
/// `l_{-1,j}`, reaching `x_1 - kappa`; the closing stage combines
/// `l_{1,-1} . (x_1 - kappa)` with the product `(x_2 - kappa)(x_1 - kappa)`
/// taken inside the polynomial ring.
pub fn simple_reduce_sbar(spec: &ModuleSpec, start: &Poly) -> Result<ReductionTrace> {
    if spec.family() != Family::Sbar {
        return Err(Error::UnsupportedFamily(spec.family()));
    }
    if spec.n() != 2 {
        return Err(Error::DimensionMismatch(spec.n(), 2));
    }
    if start.is_zero() {
        return Err(Error::ZeroInput);
    }
    let kappa = spec.kappa().expect("family checked").clone();
    // l_{i,-1} = -(i+1) t^{(i,-1)} D_2
    let l_im1 = |i: i64| -> Result<VectorField> {
        VectorField::term(2, Exponent(vec![i, -1]), 2, Scalar::from_int(-(i + 1)))
    };
    // l_{-1,j} = (j+1) t^{(-1,j)} D_1
    let l_m1j = |j: i64| -> Result<VectorField> {
        VectorField::term(2, Exponent(vec![-1, j]), 1, Scalar::from_int(j + 1))
    };

    let mut states = vec![start.clone()];
    let mut steps = Vec::new();

    // stage A: kill x_1
    let d1 = start.partial_degree(1)?.max(0);
    let row: Vec<VectorField> = (1..=d1 + 1).map(l_im1).collect::<Result<_>>()?;
    let (g_idx, g) = sweep_and_combine(spec, &mut states, &mut steps, 0, &row, 1)?;

    // stage B: kill x_2, reaching a multiple of x_1 - kappa
    let d2 = g.partial_degree(2)?.max(0);
    let col: Vec<VectorField> = (1..=d2 + 1).map(l_m1j).collect::<Result<_>>()?;
    let (c_idx, _) = sweep_and_combine(spec, &mut states, &mut steps, g_idx, &col, 2)?;
    let first = normalize_to_generator(spec, &mut states, &mut steps, c_idx, 1)?;

    // closing identity:
    // x_2 - kappa = (1/2) lambda_1^{-1} lambda_2 * l_{1,-1}.(x_1 - kappa)
    //             + (x_2 - kappa)(x_1 - kappa)
    let l1m1 = l_im1(1)?;
    let acted = act_general(spec, &l1m1, &states[first])?;
    steps.push(TraceStep::Act {
        element: l1m1,
        input: first,
        expect: acted.clone(),
    });
    states.push(acted);
    let acted_idx = states.len() - 1;

    let factor = Poly::linear(2, 2, &-&kappa)?;
    let product = factor.mul(&states[first])?;
    steps.push(TraceStep::MulPoly {
        input: first,
        factor,
        expect: product.clone(),
    });
    states.push(product);
    let prod_idx = states.len() - 1;

    let half = Scalar::ratio(1, 2);
    let weight = &(&half * &spec.lambda()[0].inv()?) * &spec.lambda()[1];
    let combo = states[acted_idx].scale(&weight).add(&states[prod_idx])?;
    let second_gen = spec.ideal_generators()[1].clone();
    if combo != second_gen {
        return Err(Error::InvalidConfig(format!(
            "closing identity produced {combo}, expected {second_gen}"
        )));
    }
    steps.push(TraceStep::Combine {
        terms: vec![(weight, acted_idx), (Scalar::one(), prod_idx)],
        expect: combo,
    });
    states.push(second_gen);
    let second = states.len() - 1;

    Ok(ReductionTrace {
        start: start.clone(),
        steps,
        targets: (first, second),
    })
}

/// Dispatches to the family-specific reduction.
pub fn simple_reduce(spec: &ModuleSpec, start: &Poly) -> Result<ReductionTrace> {
    match spec.family() {
        Family::Stilde => simple_reduce_stilde(spec, start),
        Family::Sbar => simple_reduce_sbar(spec, start),
        Family::W => Err(Error::UnsupportedFamily(Family::W)),
    }
}

/// Membership in the distinguished submodule: the ideal is the maximal ideal
/// of a point, so membership is exact evaluation at that point.
pub fn submodule_membership(spec: &ModuleSpec, f: &Poly) -> Result<bool> {
    Ok(f.evaluate(&spec.submodule_point())?.is_zero())
}

/// A witnessed escape from a candidate submodule ideal.
#[derive(Debug, Clone, Serialize)]
pub struct ClosureEscape {
    pub element: VectorField,
    pub input: Poly,
    pub output: Poly,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClosureReport {
    pub checked: usize,
    pub escape: Option<ClosureEscape>,
}

impl ClosureReport {
    pub fn closed(&self) -> bool {
        self.escape.is_none()
    }
}

fn family_box_elements(spec: &ModuleSpec, box_bound: i64) -> Result<Vec<VectorField>> {
    let n = spec.n();
    let mut out = Vec::new();
    for i in 1..=n {
        out.push(VectorField::d(n, i)?);
    }
    let mut boxes: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for v in &boxes {
            for e in -box_bound..=box_bound {
                let mut w = v.clone();
                w.push(e);
                next.push(w);
            }
        }
        boxes = next;
    }
    let tag = spec.algebra_tag();
    for raw in boxes {
        let r = Exponent(raw);
        match spec.family() {
            Family::W => {
                for i in 1..=n {
                    out.push(VectorField::term(n, r.clone(), i, Scalar::one())?);
                }
            }
            Family::Stilde | Family::Sbar => {
                for i in 1..=n {
                    for j in (i + 1)..=n {
                        match basis_element(tag, n, &r, i, j) {
                            Ok(v) if !v.is_zero() => out.push(v),
                            _ => {}
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Checks that the maximal ideal of `point` is stable under every family
/// basis element in the box, applied to every `generator * monomial` of
/// total degree at most `degree_bound`. Stops at the first escape.
pub fn submodule_closure_check(
    spec: &ModuleSpec,
    point: &[Scalar],
    degree_bound: i64,
    box_bound: i64,
) -> Result<ClosureReport> {
    let n = spec.n();
    if point.len() != n {
        return Err(Error::DimensionMismatch(point.len(), n));
    }
    let generators: Vec<Poly> = point
        .iter()
        .enumerate()
        .map(|(k, p)| Poly::linear(n, k + 1, &-p).expect("axis in range"))
        .collect();
    let monomials = omega::monomials_up_to(n, degree_bound);
    let elements = family_box_elements(spec, box_bound)?;
    let mut checked = 0usize;
    for g in &generators {
        for m in &monomials {
            let input = g.mul(m)?;
            for u in &elements {
                let output = act_general(spec, u, &input)?;
                checked += 1;
                if !output.evaluate(point)?.is_zero() {
                    return Ok(ClosureReport {
                        checked,
                        escape: Some(ClosureEscape {
                            element: u.clone(),
                            input,
                            output,
                        }),
                    });
                }
            }
        }
    }
    Ok(ClosureReport {
        checked,
        escape: None,
    })
}

/// Closure check at the spec's own distinguished point.
pub fn submodule_closure_check_canonical(
    spec: &ModuleSpec,
    degree_bound: i64,
    box_bound: i64,
) -> Result<ClosureReport> {
    submodule_closure_check(spec, &spec.submodule_point(), degree_bound, box_bound)
}

impl fmt::Display for InvariantTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lambdas: Vec<String> = self.lambda.iter().map(|l| l.to_string()).collect();
        match &self.shift {
            ShiftParams::A(a) => write!(f, "({}; a={})", lambdas.join(","), a),
            ShiftParams::Alpha(al) => {
                let alphas: Vec<String> = al.iter().map(|x| x.to_string()).collect();
                write!(f, "({}; alpha=({}))", lambdas.join(","), alphas.join(","))
            }
            ShiftParams::Kappa(k) => write!(f, "({}; kappa={})", lambdas.join(","), k),
        }
    }
}
