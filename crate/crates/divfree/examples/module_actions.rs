//! The three rank-1 module families and their twisted actions on the
//! polynomial carrier, with an exact module-axiom check.
//!
//! ```bash
//! cargo run -p divfree --example module_actions
//! ```

use divfree::omega::{act_general, act_sbar, act_stilde, act_w, check_module_axiom, ModuleSpec};
use divfree::poly::{Exponent, Poly};
use divfree::scalar::Scalar;
use divfree::vfield::{basis_element, AlgebraTag, VectorField};

fn main() -> divfree::Result<()> {
    let one = Poly::one(2);

    // Witt family: t^k D_i . f = Lambda^k (x_i - k_i(a+1)) f(x - k)
    let w = ModuleSpec::w(
        vec![Scalar::from_int(2), Scalar::from_int(3)],
        Scalar::zero(),
    )?;
    println!(
        "Witt family, t^(1,1) D_1 . 1    = {}",
        act_w(&w, &Exponent(vec![1, 1]), 1, &one)?
    );

    // divergence-zero family: the pair r_j t^r D_i - r_i t^r D_j acts by
    // Lambda^r (r_j(x_i+alpha_i) - r_i(x_j+alpha_j)) f(x - r)
    let s = ModuleSpec::stilde(
        vec![Scalar::from_int(2), Scalar::from_int(3)],
        vec![Scalar::ratio(1, 2), Scalar::from_int(-1)],
    )?;
    println!(
        "divergence-zero, pair at (1,-1) . 1 = {}",
        act_stilde(&s, &Exponent(vec![1, -1]), 1, 2, &one)?
    );

    // classical family: (r_j+1) t^r D_i - (r_i+1) t^r D_j acts by
    // Lambda^r ((r_j+1)x_i - (r_i+1)x_j + (r_i-r_j)kappa) f(x - r)
    let b = ModuleSpec::sbar(
        vec![Scalar::from_int(5), Scalar::from_int(7)],
        Scalar::from_int(2),
    )?;
    println!(
        "classical, pair at (1,0) . 1    = {}",
        act_sbar(&b, &Exponent(vec![1, 0]), 1, 2, &one)?
    );

    // arbitrary members act through the gradewise linear extension, behind a
    // membership check
    let u = basis_element(AlgebraTag::Sbar, 2, &Exponent(vec![2, -1]), 1, 2)?
        .add(&VectorField::d(2, 1)?.scale(&Scalar::ratio(1, 3)))?;
    let f = Poly::linear(2, 2, &Scalar::from_int(1))?.pow(2);
    println!(
        "mixed member on (x2+1)^2        = {}",
        act_general(&b, &u, &f)?
    );

    // the module axiom holds exactly: [u,v].f = u.(v.f) - v.(u.f)
    let v = basis_element(AlgebraTag::Sbar, 2, &Exponent(vec![-1, 2]), 1, 2)?;
    let axiom = check_module_axiom(&b, &u, &v, &f)?;
    println!("module axiom holds: {}", axiom.holds);
    assert!(axiom.holds);

    // elements outside the algebra are refused with a certificate
    let outside = VectorField::term(2, Exponent(vec![1, 0]), 1, Scalar::one())?;
    match act_general(&b, &outside, &f) {
        Err(e) => println!("t_1 D_1 rejected: {e}"),
        Ok(_) => unreachable!("t_1 D_1 has nonzero classical divergence"),
    }

    Ok(())
}
