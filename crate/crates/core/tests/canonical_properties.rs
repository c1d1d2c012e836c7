mod common;

use common::{all_classes, twice_relabeled_class};
use gk_core::canon::automorphisms;
use gk_core::canonicalize;
use proptest::prelude::*;

#[test]
fn canonical_forms_are_fixed_points() {
    for class in all_classes() {
        let (again, sign) = canonicalize(class.form());
        assert_eq!(&again, class);
        assert_eq!(again.form(), class.form());
        if !class.as_zero() {
            assert_eq!(sign, 1);
        }
    }
}

#[test]
fn loops_always_vanish() {
    for class in all_classes().iter().filter(|c| c.has_tadpole()) {
        assert!(class.as_zero(), "{:?}", class.form());
        assert!(automorphisms(class.form()).has_odd());
    }
}

#[test]
fn as_zero_matches_odd_automorphisms() {
    for class in all_classes() {
        assert_eq!(class.as_zero(), automorphisms(class.form()).has_odd(), "{:?}", class.form());
    }
}

#[test]
fn automorphism_orders_divide_labelled_count() {
    for class in all_classes() {
        let n = class.form().vertex_count() as u64;
        let info = automorphisms(class.form());
        let labelled: u64 = (1..=n).product::<u64>() * 6u64.pow(n as u32);
        assert_eq!(labelled % info.aut_order, 0);
        assert_eq!(info.aut_order, info.edge_fixing_order * info.vertex_action_order);
        assert_eq!(6u64.pow(n as u32) % info.edge_fixing_order, 0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1200))]

    #[test]
    fn relabeling_preserves_class_and_composes_signs((i, rho, pi) in twice_relabeled_class()) {
        let base = all_classes()[i].form();
        let (d1, r1) = rho.apply(base);
        let (d2, r2) = pi.apply(&d1);
        let (c0, s0) = canonicalize(base);
        let (c1, s1) = canonicalize(&d1);
        let (c2, s2) = canonicalize(&d2);
        prop_assert_eq!(&c0, &c1);
        prop_assert_eq!(&c0, &c2);
        prop_assert_eq!(c0.as_zero(), c1.as_zero());
        if !c0.as_zero() {
            prop_assert_eq!(s1, r1 * s0);
            prop_assert_eq!(s2, r2 * r1 * s0);
        }
    }
}
