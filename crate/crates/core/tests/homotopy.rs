//! Homotopy-category dimensions: shift invariance, additivity, and the
//! agreement of both scalar backends.

mod common;

use std::sync::Arc;

use proptest::prelude::*;

use dglift::dgmod::SemifreeModule;
use dglift::exactlin::Field;
use dglift::homotopy::{hom_k_dim, is_null_homotopic};

const MODULES: [&str; 7] = [
    "I2.dg",
    "I5.dg",
    "cone_id.dg",
    "ext_B2.dg",
    "I3.dg",
    "I4.dg",
    "koszul_B.dg",
];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn suspending_both_sides_preserves_hom(which in 0usize..MODULES.len(), s in -2i64..=2, k in 1i64..=2) {
        let inst = common::load(MODULES[which]);
        let n = inst.primary().unwrap().1.clone();
        let sn = Arc::new(n.shift(k));
        let lhs = hom_k_dim(&n, n.as_ref(), s).unwrap();
        let rhs = hom_k_dim(&sn, sn.as_ref(), s).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn hom_is_additive_in_the_source(which in 0usize..MODULES.len(), s in -1i64..=2) {
        let inst = common::load(MODULES[which]);
        let n = inst.primary().unwrap().1.clone();
        let b = Arc::new(SemifreeModule::free(inst.algebra.clone(), &[0]));
        let sum = Arc::new(n.sum(&b).unwrap());
        let whole = hom_k_dim(&sum, n.as_ref(), s).unwrap();
        let parts = hom_k_dim(&n, n.as_ref(), s).unwrap() + hom_k_dim(&b, n.as_ref(), s).unwrap();
        prop_assert_eq!(whole, parts);
    }
}

#[test]
fn backends_agree_on_hom_dims() {
    for name in MODULES {
        let q = common::load_with(name, Field::Rational);
        let p = common::load_with(name, common::fp());
        let (nq, np) = (q.primary().unwrap().1, p.primary().unwrap().1);
        for s in -2..=2 {
            assert_eq!(
                hom_k_dim(nq, nq.as_ref(), s).unwrap(),
                hom_k_dim(np, np.as_ref(), s).unwrap(),
                "{name} shift {s}"
            );
        }
    }
}

#[test]
fn appendix_map_is_essential() {
    let inst = common::load("I3.dg");
    assert!(is_null_homotopic(inst.map("f").unwrap()).unwrap().is_none());
}
