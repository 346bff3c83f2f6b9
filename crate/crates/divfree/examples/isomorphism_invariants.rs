//! Parameter extraction, isomorphism testing, and rank-1 consistency
//! checking with a deliberately broken candidate.
//!
//! ```bash
//! cargo run -p divfree --example isomorphism_invariants
//! ```

use divfree::classify::{
    check_rank1_consistency, extract_parameters, isomorphic, GeneratorAssignment, Inconsistency,
};
use divfree::omega::ModuleSpec;
use divfree::poly::{Exponent, Poly};
use divfree::scalar::Scalar;

fn main() -> divfree::Result<()> {
    let spec = ModuleSpec::stilde(
        vec![Scalar::from_int(2), Scalar::from_int(3)],
        vec![Scalar::ratio(1, 2), Scalar::from_int(-1)],
    )?;

    // the invariant tuple is read back off generator actions alone
    let tuple = extract_parameters(&spec)?;
    println!("extracted invariants: {tuple}");

    // isomorphism is exactly tuple equality; a single flipped parameter
    // separates the modules
    let same = ModuleSpec::stilde(
        vec![Scalar::from_int(2), Scalar::from_int(3)],
        vec![Scalar::ratio(1, 2), Scalar::from_int(-1)],
    )?;
    let flipped = ModuleSpec::stilde(
        vec![Scalar::from_int(2), Scalar::from_int(3)],
        vec![Scalar::ratio(1, 2), Scalar::from_int(0)],
    )?;
    println!(
        "same parameters isomorphic:    {}",
        isomorphic(&spec, &same)?
    );
    println!(
        "one alpha flipped isomorphic:  {}",
        isomorphic(&spec, &flipped)?
    );

    // the generator values of a genuine module pass the bounded bracket
    // relation sweep
    let assign = GeneratorAssignment::from_spec(&spec)?;
    let report = check_rank1_consistency(&assign, 4)?;
    println!(
        "true assignment consistent: {} ({} relations checked)",
        report.consistent, report.relations_checked
    );
    assert!(report.consistent);

    // perturbing one generator value by a stray monomial is detected
    let mut broken = assign;
    let bump = Poly::monomial(2, Exponent(vec![0, 2]), Scalar::one())?;
    let old = broken.values[&(1, 0)].clone();
    broken.values.insert((1, 0), old.add(&bump)?);
    let report = check_rank1_consistency(&broken, 4)?;
    println!("perturbed assignment consistent: {}", report.consistent);
    match report.problem {
        Some(Inconsistency::Relation(v)) => {
            println!(
                "violated relation: [x{:?}, x{:?}] on target {:?}",
                v.a, v.b, v.target
            );
            println!("  lhs: {}", v.lhs);
            println!("  rhs: {}", v.rhs);
        }
        other => println!("problem: {other:?}"),
    }

    Ok(())
}
