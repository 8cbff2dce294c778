use num_bigint::BigInt;
use parchern_core::chow_model::{mono, ChowDescription, Variety};
use parchern_core::rational::rat;
use parchern_core::{
    character_from_chern, chern_from_character, Generator, GradedRing, Monomial, RewriteRule,
    RingElement,
};
use proptest::prelude::*;

fn ring() -> GradedRing {
    let gens = vec![
        Generator::new("A", 1),
        Generator::new("B", 1),
        Generator::new("H", 2),
    ];
    // B^2 = H, A*B = 0, A*H = 0: all overlaps resolve, so the rules are confluent.
    let rules = vec![
        RewriteRule::new(
            Monomial::from_exponents(vec![0, 2, 0]),
            [(Monomial::from_exponents(vec![0, 0, 1]), rat(1, 1))],
        ),
        RewriteRule::vanishing(Monomial::from_exponents(vec![1, 1, 0])),
        RewriteRule::vanishing(Monomial::from_exponents(vec![1, 0, 1])),
    ];
    GradedRing::new(gens, 4, rules).unwrap()
}

fn element(ring: GradedRing) -> impl Strategy<Value = RingElement> {
    prop::collection::vec(((0u32..3, 0u32..3, 0u32..2), -4i64..=4, 1i64..=3), 0..6).prop_map(
        move |terms| {
            ring.from_terms(
                terms
                    .into_iter()
                    .map(|((a, b, h), n, d)| (Monomial::from_exponents(vec![a, b, h]), rat(n, d))),
            )
        },
    )
}

fn nilpotent(ring: GradedRing) -> impl Strategy<Value = RingElement> {
    element(ring).prop_map(|e| e.sub(&e.ring().constant(e.constant_term())).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in element(ring()), b in element(ring()), c in element(ring())) {
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(
            a.mul(&b).unwrap().mul(&c).unwrap(),
            a.mul(&b.mul(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
        prop_assert!(a.add(&a.neg()).unwrap().is_zero());
        prop_assert_eq!(a.mul(&a.ring().one()).unwrap(), a.clone());
    }

    #[test]
    fn elements_are_normalized(a in element(ring())) {
        for (m, c) in a.terms() {
            prop_assert!(a.ring().is_normal(m));
            prop_assert!(a.ring().degree(m) <= 4);
            prop_assert!(*c != rat(0, 1));
        }
        let again = a.ring().from_terms(a.terms().iter().map(|(m, c)| (m.clone(), c.clone())));
        prop_assert_eq!(again, a);
    }

    #[test]
    fn exp_is_a_homomorphism(a in nilpotent(ring()), b in nilpotent(ring())) {
        let lhs = a.add(&b).unwrap().exp_nilpotent().unwrap();
        let rhs = a.exp_nilpotent().unwrap().mul(&b.exp_nilpotent().unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(a.exp_nilpotent().unwrap().log_unipotent().unwrap(), a);
    }

    #[test]
    fn newton_identities_are_inverse(a in nilpotent(ring()), rank in 1u32..6) {
        let c: Vec<RingElement> = std::iter::once(a.ring().one())
            .chain((1..=rank).map(|k| if k <= 4 { a.graded_part(k).unwrap() } else { a.ring().zero() }))
            .collect();
        let ch = character_from_chern(&c, rank).unwrap();
        prop_assert_eq!(chern_from_character(&ch, rank).unwrap(), c);
    }

    #[test]
    fn graded_parts_sum_back(a in element(ring())) {
        let total = a.graded_parts().iter().fold(a.ring().zero(), |acc, p| acc.add(p).unwrap());
        prop_assert_eq!(total, a);
    }
}

fn surface() -> Variety {
    Variety::new(
        ChowDescription::new("S", 2)
            .divisor("D1")
            .divisor("D2")
            .class("H", 1)
            .relation(mono(&[("D1", 1), ("D2", 1)]), vec![])
            .relation(
                mono(&[("D2", 2)]),
                vec![(rat(1, 2), mono(&[("D1", 1), ("H", 1)]))],
            ),
    )
    .unwrap()
}

fn surface_element() -> impl Strategy<Value = RingElement> {
    let ring = surface().ring().clone();
    prop::collection::vec(((0u32..3, 0u32..3, 0u32..3), -5i64..=5, 1i64..=4), 0..6).prop_map(
        move |terms| {
            ring.from_terms(
                terms
                    .into_iter()
                    .map(|((a, b, h), n, d)| (Monomial::from_exponents(vec![a, b, h]), rat(n, d))),
            )
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cover_maps_are_inverse_homomorphisms(
        a in surface_element(),
        b in surface_element(),
        n in 1i64..=12,
    ) {
        let v = surface();
        let a = v.ring().from_terms(a.terms().iter().map(|(m, c)| (m.clone(), c.clone())));
        let b = v.ring().from_terms(b.terms().iter().map(|(m, c)| (m.clone(), c.clone())));
        let cm = v.cover(&BigInt::from(n)).unwrap();
        let pa = cm.pullback(&a).unwrap();
        let pb = cm.pullback(&b).unwrap();
        prop_assert_eq!(cm.pullback(&a.mul(&b).unwrap()).unwrap(), pa.mul(&pb).unwrap());
        prop_assert_eq!(cm.pullback(&a.add(&b).unwrap()).unwrap(), pa.add(&pb).unwrap());
        prop_assert_eq!(cm.pushdown(&pa).unwrap(), a);
    }
}
