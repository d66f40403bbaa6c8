//! The obstruction map on the corpus: chain-map property, the two
//! constructions of `χ`, powers, and random changes of basis.

mod common;

use std::sync::Arc;

use proptest::prelude::*;

use dglift::diagonal::Diagonal;
use dglift::obstruction::Obstruction;

const MODULES: [&str; 6] = [
    "I2.dg",
    "I5.dg",
    "cone_id.dg",
    "B_plus_cone.dg",
    "I4.dg",
    "tate.dg",
];

fn obstruction(name: &str) -> Obstruction {
    let inst = common::load(name);
    let n = inst.primary().unwrap().1.clone();
    Obstruction::new(n, Arc::new(Diagonal::new(inst.algebra.clone()))).unwrap()
}

#[test]
fn w_is_a_chain_map_and_chi_constructions_agree() {
    for name in MODULES {
        let ob = obstruction(name);
        for k in 0..3 {
            for d in 0..6 {
                assert!(ob.w_is_chain_map(k, d).unwrap(), "{name} k={k} d={d}");
            }
        }
        assert_eq!(
            ob.w_plus_via_sigma_rho().unwrap(),
            ob.chi().unwrap(),
            "{name}"
        );
        for l in 0..=3 {
            assert_eq!(
                ob.chi_power(l).unwrap(),
                ob.chi_power_iterated(l).unwrap(),
                "{name} ℓ={l}"
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn random_basis_changes_commute_with_w(which in 0usize..4, coeffs in proptest::collection::vec(-3i64..=3, 32)) {
        let ob = obstruction(MODULES[which]);
        let mut it = coeffs.into_iter().cycle();
        let r = ob.basis_change_check(&mut || it.next().unwrap(), 2, 5).unwrap();
        prop_assert!(r.holds(), "{:?}", r);
    }
}

#[test]
fn i2_square_vanishes_up_to_homotopy() {
    let ob = obstruction("I2.dg");
    assert!(ob.omega_is_zero().unwrap().is_none());
    assert!(ob.chi_power_null(2).unwrap().is_some());
}
