//! Property-based tests for the exact algebraic structures: ring laws,
//! shift-automorphism behaviour, Lie algebra axioms, and the graded
//! decomposition, all as exact equalities on generated inputs.

use divfree::poly::{Exponent, LaurentPoly, Poly};
use divfree::scalar::Scalar;
use divfree::vfield::{leibniz_bracket, AlgebraTag, VectorField};
use divfree::vlike::{vl_bracket, VLElement};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn scalar_strategy() -> impl Strategy<Value = Scalar> {
    (-12i64..=12, 1i64..=6, -4i64..=4).prop_map(|(num, den, im)| {
        Scalar::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::from_integer(BigInt::from(im)),
        )
    })
}

fn poly_strategy(n: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(
        (prop::collection::vec(0i64..=3, n), scalar_strategy()),
        0..4,
    )
    .prop_map(move |terms| {
        let mut p = Poly::zero(n);
        for (exp, c) in terms {
            p.add_term(Exponent(exp), c);
        }
        p
    })
}

fn laurent_strategy(n: usize) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec(
        (prop::collection::vec(-3i64..=3, n), scalar_strategy()),
        0..4,
    )
    .prop_map(move |terms| {
        let mut p = LaurentPoly::zero(n);
        for (exp, c) in terms {
            p.add_term(Exponent(exp), c);
        }
        p
    })
}

fn field_strategy(n: usize) -> impl Strategy<Value = VectorField> {
    prop::collection::vec(
        (
            prop::collection::vec(-3i64..=3, n),
            1usize..=n,
            scalar_strategy(),
        ),
        0..3,
    )
    .prop_map(move |terms| {
        let mut v = VectorField::zero(n);
        for (exp, dir, c) in terms {
            v.add_term(Exponent(exp), dir, c);
        }
        v
    })
}

fn vl_strategy() -> impl Strategy<Value = VLElement> {
    prop::collection::vec(((-3i64..=3, -3i64..=3), scalar_strategy()), 0..3).prop_map(|terms| {
        let mut e = VLElement::zero();
        for ((i, j), c) in terms {
            e.add_d(i, j, c);
        }
        e
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn scalar_field_laws(a in scalar_strategy(), b in scalar_strategy(), c in scalar_strategy()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn poly_ring_laws(f in poly_strategy(2), g in poly_strategy(2), h in poly_strategy(2)) {
        prop_assert_eq!(f.add(&g).unwrap(), g.add(&f).unwrap());
        prop_assert_eq!(f.mul(&g).unwrap(), g.mul(&f).unwrap());
        prop_assert_eq!(
            f.mul(&g).unwrap().mul(&h).unwrap(),
            f.mul(&g.mul(&h).unwrap()).unwrap()
        );
        prop_assert_eq!(
            f.mul(&g.add(&h).unwrap()).unwrap(),
            f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap()
        );
    }

    #[test]
    fn laurent_ring_laws(f in laurent_strategy(2), g in laurent_strategy(2), h in laurent_strategy(2)) {
        prop_assert_eq!(f.mul(&g).unwrap(), g.mul(&f).unwrap());
        prop_assert_eq!(
            f.mul(&g).unwrap().mul(&h).unwrap(),
            f.mul(&g.mul(&h).unwrap()).unwrap()
        );
        prop_assert_eq!(
            f.mul(&g.add(&h).unwrap()).unwrap(),
            f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap()
        );
    }

    #[test]
    fn shift_is_an_automorphism(f in poly_strategy(2), g in poly_strategy(2), e in -3i64..=3) {
        let lhs = f.mul(&g).unwrap().sigma_shift(1, e).unwrap();
        let rhs = f.sigma_shift(1, e).unwrap().mul(&g.sigma_shift(1, e).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn shift_difference_drops_degree(f in poly_strategy(2)) {
        prop_assume!(!f.is_zero());
        let d = f.partial_degree(1).unwrap();
        let diff = f.sigma_shift(1, 1).unwrap().sub(&f).unwrap();
        prop_assert_eq!(diff.partial_degree(1).unwrap(), d - 1);
    }

    #[test]
    fn translation_composes(f in poly_strategy(3),
                            k1 in prop::collection::vec(-3i64..=3, 3),
                            k2 in prop::collection::vec(-3i64..=3, 3)) {
        let k1 = Exponent(k1);
        let k2 = Exponent(k2);
        let lhs = f.translate(&k1.add(&k2)).unwrap();
        let rhs = f.translate(&k1).unwrap().translate(&k2).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(f in poly_strategy(2), g in poly_strategy(2),
                                          a in scalar_strategy(), b in scalar_strategy()) {
        let point = [a, b];
        let lhs = f.mul(&g).unwrap().evaluate(&point).unwrap();
        let rhs = &f.evaluate(&point).unwrap() * &g.evaluate(&point).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_is_antisymmetric_and_matches_oracle(u in field_strategy(2), v in field_strategy(2)) {
        let b = u.bracket(&v).unwrap();
        prop_assert_eq!(b.clone(), v.bracket(&u).unwrap().neg());
        prop_assert_eq!(b, leibniz_bracket(&u, &v).unwrap());
    }

    #[test]
    fn jacobi_identity(u in field_strategy(2), v in field_strategy(2), w in field_strategy(2)) {
        let total = u.bracket(&v).unwrap().bracket(&w).unwrap()
            .add(&v.bracket(&w).unwrap().bracket(&u).unwrap()).unwrap()
            .add(&w.bracket(&u).unwrap().bracket(&v).unwrap()).unwrap();
        prop_assert!(total.is_zero());
    }

    #[test]
    fn graded_decomposition_round_trips(u in field_strategy(3)) {
        let comps = u.graded_decompose();
        prop_assert_eq!(VectorField::from_components(3, &comps).unwrap(), u);
    }

    #[test]
    fn divergence_cocycle_minus_form(u in field_strategy(2), v in field_strategy(2)) {
        // div[u,v] = u.div(v) - v.div(u), the sign the exact oracle decides
        let lhs = u.bracket(&v).unwrap().div();
        let rhs = u.apply(&v.div()).unwrap().sub(&v.apply(&u.div()).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn divergence_kernels_are_subalgebras(u in field_strategy(3), v in field_strategy(3)) {
        prop_assume!(u.div().is_zero() && v.div().is_zero());
        prop_assert!(u.bracket(&v).unwrap().div().is_zero());
    }

    #[test]
    fn vl_bracket_antisymmetry_and_jacobi(a in vl_strategy(), b in vl_strategy(), c in vl_strategy()) {
        prop_assert_eq!(vl_bracket(&a, &b), vl_bracket(&b, &a).neg());
        let total = vl_bracket(&vl_bracket(&a, &b), &c)
            .add(&vl_bracket(&vl_bracket(&b, &c), &a))
            .add(&vl_bracket(&vl_bracket(&c, &a), &b));
        prop_assert!(total.is_zero());
    }

    #[test]
    fn embedding_respects_brackets(a in vl_strategy(), b in vl_strategy()) {
        let lhs = divfree::vlike::phi(&vl_bracket(&a, &b));
        let rhs = divfree::vlike::phi(&a).bracket(&divfree::vlike::phi(&b)).unwrap();
        prop_assert_eq!(lhs.clone(), rhs);
        prop_assert!(lhs.is_member(AlgebraTag::Stilde).ok);
    }
}
