//! DG algebra axioms on random homogeneous elements of the corpus algebras.

mod common;

use proptest::prelude::*;

use dglift::dgalg::{check_identities, Algebra, Element};

const ALGEBRAS: [&str; 5] = [
    "ext_B.dg",
    "I3.dg",
    "koszul_B.dg",
    "tate.dg",
    "poly_koszul.dg",
];

fn element(alg: &Algebra, d: i64, coeffs: &[i64]) -> Element {
    let len = alg.dim(d).unwrap();
    alg.element_from_coeffs(d, &coeffs[..len.min(coeffs.len())])
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn axioms_hold_on_random_elements(
        which in 0usize..ALGEBRAS.len(),
        dx in 0i64..5,
        dy in 0i64..4,
        cx in proptest::collection::vec(-4i64..=4, 16),
        cy in proptest::collection::vec(-4i64..=4, 16),
    ) {
        for field in [dglift::exactlin::Field::Rational, common::fp()] {
            let alg = common::load_with(ALGEBRAS[which], field).algebra;
            let x = element(&alg, dx, &cx);
            let y = element(&alg, dy, &cy);
            let r = check_identities(&alg, &[x.clone(), y.clone()], &[(x, y)]).unwrap();
            prop_assert!(r.holds(), "{:?}", r.failures);
        }
    }
}

#[test]
fn differential_lowers_degree() {
    for name in ALGEBRAS {
        let alg = common::load(name).algebra;
        for d in 1..=alg.cap() {
            for m in alg.basis(d).unwrap() {
                let dm = alg.diff_monomial(m);
                if let Some(e) = alg.degree(&dm).unwrap() {
                    assert_eq!(e, d - 1, "{name}");
                }
            }
        }
    }
}
