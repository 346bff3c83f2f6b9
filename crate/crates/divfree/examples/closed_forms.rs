//! Closed forms for the generator values and their reproduction by bracket
//! recursion from the family generators alone.
//!
//! ```bash
//! cargo run -p divfree --example closed_forms
//! ```

use divfree::omega::{
    closed_form_dij, closed_form_lr, generator_recursion, generator_seed_values, ModuleSpec,
};
use divfree::scalar::Scalar;

fn main() -> divfree::Result<()> {
    // d_{i,j} . 1 = (-1)^{i+1} lambda_1^i lambda_2^j (i(x_2+alpha_2) - j(x_1+alpha_1))
    let s = ModuleSpec::stilde(
        vec![Scalar::from_int(2), Scalar::from_int(3)],
        vec![Scalar::ratio(1, 2), Scalar::from_int(-1)],
    )?;
    for (i, j) in [(1, 0), (0, -1), (1, 1), (-2, 3)] {
        println!("d({i},{j}) . 1 = {}", closed_form_dij(&s, i, j)?);
    }

    // the same values fall out of iterated brackets seeded only with the
    // four generator values
    for (i, j) in [(1, 1), (-2, 3), (4, -4), (5, 5)] {
        let via_recursion = generator_recursion(&s, (i, j))?;
        let closed = closed_form_dij(&s, i, j)?;
        assert_eq!(via_recursion, closed, "disagreement at ({i},{j})");
    }
    println!("bracket recursion reproduces the closed form (spot checks pass)");

    // l_{r1,r2} . 1 = lambda^r ((r2+1)(x_1-kappa) - (r1+1)(x_2-kappa))
    let b = ModuleSpec::sbar(
        vec![Scalar::from_int(5), Scalar::from_int(7)],
        Scalar::from_int(2),
    )?;
    println!("\nclassical family generator values:");
    for (idx, value) in generator_seed_values(&b)? {
        println!("l({},{}) . 1 = {}", idx.0, idx.1, value);
    }
    for target in [(1, 1), (-1, 1), (3, -2), (-3, -3)] {
        let via_recursion = generator_recursion(&b, target)?;
        let closed = closed_form_lr(&b, target.0, target.1)?;
        assert_eq!(via_recursion, closed, "disagreement at {target:?}");
    }
    println!("classical recursion matches the closed form (spot checks pass)");

    // excluded grades are rejected
    assert!(closed_form_lr(&b, -1, -1).is_err());
    assert!(closed_form_lr(&b, -2, -2).is_err());
    println!("excluded grades (-1,-1) and (-2,-2) are refused");

    Ok(())
}
