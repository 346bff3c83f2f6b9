//! The abstract rank-two algebra in the `d_{i,j}` basis, its embedding into
//! vector fields, and the inverse maps on lattice-plane slices.
//!
//! ```bash
//! cargo run -p divfree --example virasoro_like
//! ```

use divfree::scalar::Scalar;
use divfree::vfield::AlgebraTag;
use divfree::vlike::{generated_indices, phi, phi_ij, phi_plane, vl_bracket, VLElement};

fn main() -> divfree::Result<()> {
    // [d_{i,j}, d_{k,l}] = (jk - il) d_{i+k, j+l}
    let a = VLElement::d(1, 0);
    let b = VLElement::d(0, 1);
    println!("[d(1,0), d(0,1)] = {}", vl_bracket(&a, &b));
    println!(
        "[h1, d(3,5)]     = {}",
        vl_bracket(&VLElement::h(1), &VLElement::d(3, 5))
    );

    // the embedding into rank-two vector fields is a Lie homomorphism
    println!("phi(d(1,0))  = {}", phi(&a));
    println!("phi(d(0,-1)) = {}", phi(&VLElement::d(0, -1)));
    let lhs = phi(&vl_bracket(&a, &b));
    let rhs = phi(&a).bracket(&phi(&b))?;
    assert_eq!(lhs, rhs);
    println!("phi respects brackets: phi([a,b]) = {lhs}");

    // images land in the divergence-zero algebra
    let mut combo = VLElement::d(2, -3);
    combo.add_d(-1, 4, Scalar::ratio(2, 5));
    assert!(phi(&combo).is_member(AlgebraTag::Stilde).ok);

    // the slice maps invert the embedding plane by plane, at any rank
    let u = phi_plane(&combo, 3, 1, 3)?;
    let back = phi_ij(&u, 1, 3)?;
    assert_eq!(back, combo);
    println!("slice (1,3) of rank 3 round-trips: {back}");

    // four generators reach every index in a box under iterated brackets
    let reached = generated_indices(4, 10);
    let box3 = (-3..=3)
        .flat_map(|i| (-3..=3).map(move |j| (i, j)))
        .filter(|&p| p != (0, 0))
        .all(|p| reached.contains(&p));
    println!("d(+-1,0), d(0,+-1) generate the full [-3,3] box: {box3}");
    assert!(box3);

    Ok(())
}
