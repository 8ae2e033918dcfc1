mod common;

use common::{poly, q, rational};
use proptest::prelude::*;
use weiljets::exact_linear::binomial;
use weiljets::jet_spectrum::jet_from_ideal;
use weiljets::{QAlgebra, QPoly};

/// A quotient of `R_2^3` by random relations without linear terms, so the
/// result never collapses to the zero ring.
fn algebra() -> impl Strategy<Value = QAlgebra> {
    proptest::collection::vec(poly(2, 2, 3), 0..3).prop_map(|gens| QAlgebra::quotient(2, &gens, 3).unwrap())
}

fn element(dim: usize) -> impl Strategy<Value = Vec<weiljets::Rational>> {
    proptest::collection::vec(rational(), dim)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn multiplication_is_commutative_and_associative(
        (a, x, y, z) in algebra().prop_flat_map(|a| {
            let d = a.dim();
            (Just(a), element(d), element(d), element(d))
        })
    ) {
        prop_assert_eq!(a.mul(&x, &y), a.mul(&y, &x));
        prop_assert_eq!(a.mul(&a.mul(&x, &y), &z), a.mul(&x, &a.mul(&y, &z)));
        prop_assert_eq!(a.mul(&a.one(), &x), x.clone());
        prop_assert_eq!(a.mul(&x, &a.add(&y, &z)), a.add(&a.mul(&x, &y), &a.mul(&x, &z)));
    }

    #[test]
    fn classes_are_multiplicative(a in algebra(), f in poly(2, 0, 4), g in poly(2, 0, 4)) {
        prop_assert_eq!(a.class_of(&(&f * &g)), a.mul(&a.class_of(&f), &a.class_of(&g)));
        prop_assert!(a.kills(&(&f - &a.lift(&a.class_of(&f)))));
    }

    #[test]
    fn derivations_obey_leibniz(
        (a, x, y) in algebra().prop_flat_map(|a| {
            let d = a.dim();
            (Just(a), element(d), element(d))
        })
    ) {
        let der = a.derivations();
        for delta in der.basis() {
            let lhs = der.apply(delta, &a.mul(&x, &y));
            let rhs = a.add(&a.mul(&der.apply(delta, &x), &y), &a.mul(&x, &der.apply(delta, &y)));
            prop_assert_eq!(lhs, rhs);
        }
        for u in der.basis() {
            for v in der.basis() {
                prop_assert!(der.contains(&der.commutator(u, v)));
            }
        }
    }

}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn tensor_dimensions_multiply(a in algebra(), b in algebra()) {
        let t = a.tensor(&b);
        prop_assert_eq!(t.dim(), a.dim() * b.dim());
        prop_assert_eq!(t.order(), a.order() + b.order());
        prop_assert_eq!(t.width(), a.width() + b.width());
    }

    #[test]
    fn reingesting_generators_is_idempotent(gens in proptest::collection::vec(poly(3, 1, 3), 0..3)) {
        let origin = vec![q(0); 3];
        let p = jet_from_ideal(3, &origin, &gens, 2).unwrap();
        let again = jet_from_ideal(3, &origin, &p.generators(), p.order()).unwrap();
        prop_assert_eq!(again.ideal(), p.ideal());
        prop_assert_eq!(again, p);
    }
}

#[test]
fn classical_invariants_match_binomials() {
    for m in 0..=3usize {
        for l in 0..=4u32 {
            let a = QAlgebra::quotient(m, &[], l).unwrap();
            let expected_width = if l == 0 { 0 } else { m };
            assert_eq!(a.dim() as u64, binomial(m as u64 + l as u64, l as u64));
            assert_eq!(a.order(), if m == 0 { 0 } else { l });
            assert_eq!(a.width(), expected_width);
        }
    }
}

#[test]
fn relations_without_bound() {
    let gens: Vec<QPoly> =
        ["x^2 - y^3", "x y"].iter().map(|t| weiljets::exact_linear::parse_polynomial(t, 2).unwrap()).collect();
    let a = QAlgebra::from_relations(2, &gens).unwrap();
    assert_eq!((a.dim(), a.order(), a.width()), (5, 3, 2));
}
