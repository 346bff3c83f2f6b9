//! Which sign does the divergence cocycle identity carry? The probe
//! computes div[u,v] and both candidate right-hand sides exactly and lets
//! the arithmetic decide.
//!
//! ```bash
//! cargo run -p divfree --example divergence_probe
//! ```

use divfree::poly::Exponent;
use divfree::scalar::Scalar;
use divfree::vfield::{divergence_cocycle_probe, VectorField};

fn main() -> divfree::Result<()> {
    // a witness pair on which the two signs differ
    let u = VectorField::term(2, Exponent(vec![1, 1]), 1, Scalar::one())?;
    let v = VectorField::term(2, Exponent(vec![1, 1]), 2, Scalar::one())?;
    let probe = divergence_cocycle_probe(&u, &v)?;
    println!("u = {u}");
    println!("v = {v}");
    println!("div [u,v]             = {}", probe.div_bracket);
    println!("u.div(v) + v.div(u)   = {}", probe.plus_form);
    println!("u.div(v) - v.div(u)   = {}", probe.minus_form);
    println!("plus form matches:  {}", probe.matches_plus);
    println!("minus form matches: {}", probe.matches_minus);
    assert!(probe.matches_minus && !probe.matches_plus);

    // the minus form is the derivation-valued cocycle identity; it holds on
    // degenerate pairs too, where both sides vanish
    let d1 = VectorField::d(2, 1)?;
    let d2 = VectorField::d(2, 2)?;
    let trivial = divergence_cocycle_probe(&d1, &d2)?;
    assert!(trivial.matches_minus && trivial.div_bracket.is_zero());
    println!("\nCartan pair: all three quantities vanish");

    println!("\nconclusion: div[u,v] = u.div(v) - v.div(u) exactly");
    Ok(())
}
