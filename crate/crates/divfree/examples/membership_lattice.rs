//! Exact membership tests for the tagged subalgebras, with certificates.
//!
//! ```bash
//! cargo run -p divfree --example membership_lattice
//! ```

use divfree::poly::Exponent;
use divfree::scalar::Scalar;
use divfree::vfield::{AlgebraTag, VectorField};

fn main() -> divfree::Result<()> {
    let n = 2;
    let tags = [
        AlgebraTag::W,
        AlgebraTag::Stilde,
        AlgebraTag::StildePrime,
        AlgebraTag::Scl,
        AlgebraTag::SclPrime,
        AlgebraTag::Sbar,
        AlgebraTag::SbarPrime,
        AlgebraTag::CartanH,
    ];

    let show = |label: &str, v: &VectorField| {
        let verdicts: Vec<String> = tags
            .iter()
            .map(|&t| {
                let m = v.is_member(t);
                format!("{t:?}={}", if m.ok { "yes" } else { "no" })
            })
            .collect();
        println!("{label}: {}", verdicts.join(" "));
    };

    show("D1", &VectorField::d(n, 1)?);
    show(
        "t^(-1,-1) D1",
        &VectorField::term(n, Exponent(vec![-1, -1]), 1, Scalar::one())?,
    );
    // the corner grade of the rank-two classical family
    let corner = VectorField::term(n, Exponent(vec![-2, -2]), 1, Scalar::one())?.sub(
        &VectorField::term(n, Exponent(vec![-2, -2]), 2, Scalar::one())?,
    )?;
    show("t^(-2,-2)(D1 - D2)", &corner);

    // failed memberships return the offending graded component
    let m = corner.is_member(AlgebraTag::SbarPrime);
    let offending = m.offending.expect("certificate on failure");
    println!(
        "certificate: grade {} with coefficients {:?} ({})",
        offending.r,
        offending
            .coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>(),
        m.reason
    );

    // any divergence-zero field splits uniquely into a derived part and a
    // Cartan part
    let mixed =
        VectorField::d(n, 2)?.add(
            &VectorField::term(n, Exponent(vec![1, -1]), 1, Scalar::one())?.add(
                &VectorField::term(n, Exponent(vec![1, -1]), 2, Scalar::one())?,
            )?,
        )?;
    let (prime, cartan) = mixed.split_cartan();
    println!("split of {mixed}:");
    println!("  derived part: {prime}");
    println!("  Cartan part:  {cartan}");
    assert!(prime.is_member(AlgebraTag::StildePrime).ok);
    assert!(cartan.is_member(AlgebraTag::CartanH).ok);
    assert_eq!(prime.add(&cartan)?, mixed);

    Ok(())
}
