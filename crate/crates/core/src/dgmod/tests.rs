use std::sync::Arc;

use super::*;
use crate::testing::load;

#[test]
fn i2_is_valid_and_has_expected_dims() {
    let inst = load("I2.dg");
    let n = inst.module("N").unwrap();
    assert_eq!(n.degrees(), &[0, 2]);
    assert_eq!(
        (0..4).map(|d| n.dim(d).unwrap()).collect::<Vec<_>>(),
        vec![1, 1, 1, 1]
    );
    for d in 0..5 {
        assert!(n
            .diff_matrix(d)
            .unwrap()
            .mul(&n.diff_matrix(d + 1).unwrap())
            .unwrap()
            .is_zero());
    }
}

#[test]
fn koszul_complex_has_first_homology() {
    let inst = load("I3.dg");
    let n = inst.module("N").unwrap();
    assert_eq!(homology_dim(n.as_ref(), 1).unwrap(), 1);
    assert_eq!(homology_dim(n.as_ref(), 0).unwrap(), 1);
}

#[test]
fn d_squared_and_triangularity_are_enforced() {
    let inst = load("poly_koszul.dg");
    let alg = inst.algebra.clone();
    let x = alg.var(0);
    let basis = vec![("e0".into(), 0), ("e1".into(), 3), ("e2".into(), 6)];
    let err = SemifreeModule::new(
        alg.clone(),
        basis.clone(),
        vec![(0, 1, x.clone()), (1, 2, x.clone())],
    )
    .unwrap_err();
    assert_eq!(
        err,
        ModuleError::DSquaredNonzero {
            column: "e2".into()
        }
    );
    let err = SemifreeModule::new(alg.clone(), basis.clone(), vec![(1, 0, x.clone())]).unwrap_err();
    assert!(matches!(err, ModuleError::NotTriangular { .. }));
    let err = SemifreeModule::new(alg.clone(), basis, vec![(0, 1, alg.one())]).unwrap_err();
    assert!(matches!(err, ModuleError::DegreeMismatch { .. }));
    // Reordering repairs a triangular differential given out of order.
    let m = SemifreeModule::from_unordered(
        alg,
        vec![("e1".into(), 3), ("e0".into(), 0)],
        vec![(1, 0, x)],
    )
    .unwrap();
    assert_eq!(m.names(), &["e0".to_string(), "e1".to_string()]);
}

#[test]
fn shift_negates_differential_and_preserves_homology() {
    let inst = load("I3.dg");
    let n = inst.module("N").unwrap();
    let s = n.shift(3);
    assert_eq!(s.degrees(), &[3, 4]);
    let b = s.entry(0, 1).unwrap();
    assert_eq!(b, &n.entry(0, 1).unwrap().negated());
    assert_eq!(
        homology_dim(&s, 4).unwrap(),
        homology_dim(n.as_ref(), 1).unwrap()
    );
}

#[test]
fn cone_of_identity_is_acyclic() {
    let inst = load("cone_id.dg");
    let c = inst.module("N").unwrap();
    assert_eq!(c.rank(), 2);
    for d in 0..6 {
        assert_eq!(homology_dim(c.as_ref(), d).unwrap(), 0, "d={d}");
    }
}

#[test]
fn chain_maps_are_validated() {
    let inst = load("I2.dg");
    let n = inst.module("N").unwrap().clone();
    let alg = inst.algebra.clone();
    // e1 ↦ e1 alone is fine; e0 ↦ e0·y without touching e1 breaks commutation.
    let ok = ChainMap::new(
        n.clone(),
        n.clone(),
        0,
        vec![
            FreeElem::from([(0, alg.one())]),
            FreeElem::from([(1, alg.one())]),
        ],
    );
    assert!(ok.is_ok());
    let bad = ChainMap::new(
        n.clone(),
        n.clone(),
        0,
        vec![FreeElem::from([(0, alg.one())]), FreeElem::new()],
    );
    assert!(matches!(bad, Err(ModuleError::InvalidChainMap { .. })));
    let id = ChainMap::identity(n.clone());
    assert_eq!(
        id.matrix(2).unwrap(),
        crate::exactlin::SparseMatrix::identity(alg.field(), n.dim(2).unwrap())
    );
}

#[test]
fn base_change_over_exterior() {
    let inst = load("I2.dg");
    let n = inst.module("N").unwrap();
    let bc = base_change(n).unwrap();
    // Generators e_λ w ⊗ 1 with w ∈ {1, y}.
    assert_eq!(bc.module.rank(), 4);
    let mut degs = bc.module.degrees().to_vec();
    degs.sort();
    assert_eq!(degs, vec![0, 1, 2, 3]);
    for d in 0..5 {
        let pi = bc.pi.matrix(d).unwrap();
        assert_eq!(
            crate::exactlin::rank(&pi),
            n.dim(d).unwrap(),
            "π onto in degree {d}"
        );
    }
}

#[test]
fn base_change_of_free_over_field_base_is_free() {
    let inst = load("ext_B.dg");
    let bc = base_change(inst.module("N").unwrap()).unwrap();
    assert_eq!(bc.module.rank(), 2);
    assert!((0..2).all(|l| bc.module.column(l).is_empty()));
    let bad = base_change(load("poly_koszul.dg").module("N").unwrap());
    assert!(matches!(bad, Err(ModuleError::CapExceeded { .. })));
}

#[test]
fn sum_keeps_names_distinct() {
    let inst = load("ext_B.dg");
    let b = inst.module("N").unwrap();
    let s = b.sum(b).unwrap();
    assert_eq!(s.names(), &["e0".to_string(), "e0'".to_string()]);
    let other = Arc::new(SemifreeModule::zero(load("ext_B.dg").algebra.clone()));
    assert!(matches!(b.sum(&other), Err(ModuleError::AlgebraMismatch)));
}
