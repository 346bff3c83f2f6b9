//! Vector fields, the Lie bracket, and the two divergences.
//!
//! ```bash
//! cargo run -p divfree --example witt_brackets
//! ```

use divfree::poly::Exponent;
use divfree::scalar::Scalar;
use divfree::vfield::{basis_element, leibniz_bracket, AlgebraTag, VectorField};

fn main() -> divfree::Result<()> {
    // Elements of the rank-2 Witt algebra are sums c * t^r D_i where D_i is
    // the Euler derivation t_i d/dt_i.
    let d1 = VectorField::d(2, 1)?;
    let t1_d2 = VectorField::term(2, Exponent(vec![1, 0]), 2, Scalar::one())?;
    let t2_d1 = VectorField::term(2, Exponent(vec![0, 1]), 1, Scalar::one())?;

    println!("[t1 D2, t2 D1] = {}", t1_d2.bracket(&t2_d1)?);
    println!("[D1, t1 D2]    = {}", d1.bracket(&t1_d2)?);

    // The structure-constant bracket agrees with composing the fields as
    // derivations of the Laurent ring.
    let via_oracle = leibniz_bracket(&t1_d2, &t2_d1)?;
    assert_eq!(t1_d2.bracket(&t2_d1)?, via_oracle);
    println!("structure constants agree with the derivation oracle");

    // Euler divergence: div(t^r D_i) = r_i t^r. Its kernel is spanned by
    // the pairs r_j t^r D_i - r_i t^r D_j together with the Cartan fields.
    let u = VectorField::term(2, Exponent(vec![2, 3]), 1, Scalar::from_int(3))?.add(
        &VectorField::term(2, Exponent(vec![2, 3]), 2, Scalar::from_int(-2))?,
    )?;
    println!("div(3 t^(2,3) D1 - 2 t^(2,3) D2) = {}", u.div());

    // Classical divergence on the same basis: Div(t^r D_i) = (r_i + 1) t^r.
    println!("Div(D1)            = {}", d1.div_classical());
    println!(
        "Div(t^(-1,-1) D1)  = {}",
        VectorField::term(2, Exponent(vec![-1, -1]), 1, Scalar::one())?.div_classical()
    );

    // Spanning elements of the two families at a grade.
    let s_pair = basis_element(AlgebraTag::Stilde, 2, &Exponent(vec![1, -1]), 1, 2)?;
    let l_pair = basis_element(AlgebraTag::Sbar, 2, &Exponent(vec![1, -1]), 1, 2)?;
    println!("divergence-zero pair at (1,-1): {s_pair}");
    println!("classical pair at (1,-1):       {l_pair}");
    assert!(s_pair.div().is_zero());
    assert!(l_pair.div_classical().is_zero());

    Ok(())
}
