//! The shift-invariant equation `g(x_1 - 1, x_2 + 1) = g(x_1, x_2)`: exact
//! solution spaces over bounded degree.
//!
//! ```bash
//! cargo run -p divfree --example sigma_invariants
//! ```

use divfree::classify::{solve_sigma_invariant, spans_match};
use divfree::poly::Poly;

fn main() -> divfree::Result<()> {
    let sum = Poly::var(2, 1)?.add(&Poly::var(2, 2)?)?;
    for degree in 0..=4 {
        let basis = solve_sigma_invariant(degree)?;
        println!(
            "degree <= {degree}: solution space has dimension {}",
            basis.len()
        );
        for g in &basis {
            // every solution is literally invariant
            let shifted = g.sigma_shift(1, 1)?.sigma_shift(2, -1)?;
            assert_eq!(&shifted, g);
        }
        // and the space is exactly the span of powers of x_1 + x_2
        let powers: Vec<Poly> = (0..=degree).map(|k| sum.pow(k as u32)).collect();
        assert!(spans_match(&basis, &powers, degree)?);
    }
    println!("each space equals span{{(x1+x2)^k}}, dimension degree+1");

    // degree 2 basis, explicitly
    println!("\ndegree-2 basis:");
    for g in solve_sigma_invariant(2)? {
        println!("  {g}");
    }
    Ok(())
}
