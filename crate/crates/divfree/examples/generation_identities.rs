//! The bracket identities that generate the classical family from its
//! rank-two slices: appending an axis, raising a `t_l^{-2}` exponent, and
//! the corner-grade bracket.
//!
//! ```bash
//! cargo run -p divfree --example generation_identities
//! ```

use divfree::poly::Exponent;
use divfree::vfield::{check_generation_identities, IdentityStatus};

fn main() -> divfree::Result<()> {
    // full target grade (2,3,1) at axes (1,2), helper axis 3:
    // prefactors -(r_l+1) r_i = -4 and -2 (r_i+1) = -6, both usable
    let report = check_generation_identities(3, &Exponent(vec![2, 3, 1]), 1, 2, 3)?;
    println!("target (2,3,1), axes (1,2,3):");
    println!("  append-axis identity:    {:?}", report.append_axis);
    println!("  raise-exponent identity: {:?}", report.raise_exponent);
    println!("  corner identity:         {:?}", report.corner);
    assert!(report.all_hold());

    // a degenerate prefactor is reported as not applicable, never as failure
    let report = check_generation_identities(3, &Exponent(vec![0, 3, 1]), 1, 2, 3)?;
    println!("\ntarget (0,3,1) (r_i = 0):");
    println!("  append-axis identity:    {:?}", report.append_axis);
    assert!(matches!(
        report.append_axis,
        IdentityStatus::NotApplicable { .. }
    ));

    // sweep a box and count
    let mut held = 0;
    let mut degenerate = 0;
    for a in -2..=2i64 {
        for b in -2..=2i64 {
            for c in -2..=2i64 {
                let r = Exponent(vec![a, b, c]);
                let rep = check_generation_identities(3, &r, 1, 2, 3)?;
                assert!(rep.all_hold(), "failure at {r}");
                for status in [&rep.append_axis, &rep.raise_exponent, &rep.corner] {
                    match status {
                        IdentityStatus::Holds => held += 1,
                        IdentityStatus::NotApplicable { .. } => degenerate += 1,
                        IdentityStatus::Fails => unreachable!(),
                    }
                }
            }
        }
    }
    println!("\nbox [-2,2]^3 sweep: {held} identities hold, {degenerate} degenerate prefactors");
    Ok(())
}
