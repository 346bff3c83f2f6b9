//! Restricting the Witt-family module to the two subalgebra families:
//! the divergence-zero restriction forgets `a` entirely (alpha = 0), the
//! classical restriction remembers it as kappa = -(a+1).
//!
//! ```bash
//! cargo run -p divfree --example restriction_theorems
//! ```

use divfree::omega::{act_sbar, act_stilde, act_w, restriction_compare, ModuleSpec};
use divfree::poly::{Exponent, Poly};
use divfree::scalar::Scalar;

fn main() -> divfree::Result<()> {
    let lambda = vec![Scalar::from_int(2), Scalar::from_int(3)];
    let a = Scalar::ratio(5, 4);
    let w = ModuleSpec::w(lambda.clone(), a.clone())?;

    // restrict along the divergence-zero pair at r = (2,-1)
    let r = Exponent(vec![2, -1]);
    let f = Poly::var(2, 1)?;
    let via_w = act_w(&w, &r, 1, &f)?
        .scale(&Scalar::from_int(-1))
        .sub(&act_w(&w, &r, 2, &f)?.scale(&Scalar::from_int(2)))?;
    let s = ModuleSpec::stilde(lambda.clone(), vec![Scalar::zero(), Scalar::zero()])?;
    let intrinsic = act_stilde(&s, &r, 1, 2, &f)?;
    assert_eq!(via_w, intrinsic);
    println!("divergence-zero restriction at r = (2,-1) matches alpha = 0:");
    println!("  both sides: {via_w}");

    // restrict along the classical pair; kappa must be -(a+1)
    let kappa = -&(&a + &Scalar::one());
    let b = ModuleSpec::sbar(lambda.clone(), kappa.clone())?;
    let via_w = act_w(&w, &r, 1, &f)?
        .scale(&Scalar::from_int(0))
        .sub(&act_w(&w, &r, 2, &f)?.scale(&Scalar::from_int(3)))?;
    let intrinsic = act_sbar(&b, &r, 1, 2, &f)?;
    assert_eq!(via_w, intrinsic);
    println!("classical restriction matches kappa = -(a+1) = {kappa}:");
    println!("  both sides: {via_w}");

    // and exhaustively over a box of grades and test monomials
    let report = restriction_compare(&w, 3, 2)?;
    println!(
        "box sweep: {} comparisons, {} mismatches",
        report.checked,
        report.mismatches.len()
    );
    assert!(report.ok());
    Ok(())
}
