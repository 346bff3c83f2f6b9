//! Constructive simplicity: reduce an arbitrary nonzero module element to
//! the ideal generators of the distinguished submodule, then replay the
//! trace step by step through the module action.
//!
//! ```bash
//! cargo run -p divfree --example submodule_reduction
//! ```

use divfree::classify::{replay_trace, simple_reduce, submodule_membership, TraceStep};
use divfree::omega::ModuleSpec;
use divfree::poly::{Exponent, Poly};
use divfree::scalar::Scalar;

fn main() -> divfree::Result<()> {
    let spec = ModuleSpec::sbar(
        vec![Scalar::from_int(5), Scalar::from_int(7)],
        Scalar::from_int(2),
    )?;

    // start from a degree-3 element with no special structure
    let mut start = Poly::zero(2);
    start.add_term(Exponent(vec![2, 1]), Scalar::from_int(1));
    start.add_term(Exponent(vec![0, 1]), Scalar::ratio(-3, 2));
    start.add_term(Exponent(vec![0, 0]), Scalar::from_int(4));
    println!("start element: {start}");

    let trace = simple_reduce(&spec, &start)?;
    println!("trace with {} steps:", trace.steps.len());
    for (k, step) in trace.steps.iter().enumerate() {
        match step {
            TraceStep::Act {
                element,
                input,
                expect,
            } => {
                println!("  {k}: act {element} on state {input} -> {expect}");
            }
            TraceStep::Combine { terms, expect } => {
                let desc: Vec<String> = terms
                    .iter()
                    .map(|(c, idx)| format!("{c} * state {idx}"))
                    .collect();
                println!("  {k}: combine {} -> {expect}", desc.join(" + "));
            }
            TraceStep::MulPoly {
                input,
                factor,
                expect,
            } => {
                println!("  {k}: multiply state {input} by {factor} -> {expect}");
            }
        }
    }

    // replay re-executes every step through the action and compares exactly
    assert!(replay_trace(&spec, &trace)?);
    println!("replay: every step reproduces its expected value");
    let gens = spec.ideal_generators();
    println!("reached generators: {} and {}", gens[0], gens[1]);

    // membership in the submodule is evaluation at the distinguished point
    assert!(submodule_membership(&spec, &gens[0])?);
    assert!(!submodule_membership(&spec, &Poly::one(2))?);
    let combo = gens[0]
        .mul(&Poly::var(2, 2)?)?
        .add(&gens[1].scale(&Scalar::from_int(5)))?;
    println!(
        "membership: generators yes, 1 no, (x1-k)x2 + 5(x2-k) {}",
        if submodule_membership(&spec, &combo)? {
            "yes"
        } else {
            "no"
        }
    );

    Ok(())
}
