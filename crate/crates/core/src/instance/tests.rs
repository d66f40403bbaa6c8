use super::*;
use crate::testing::{instance_path, load};

#[test]
fn parses_the_appendix_instance() {
    let inst = load("I3.dg");
    assert_eq!(inst.algebra.base().order(), 2);
    let n = inst.module("N").unwrap();
    assert_eq!(n.rank(), 2);
    assert_eq!(n.degrees(), &[0, 1]);
    assert_eq!(n.format_free(n.column(1)), "e0*a");
    let f = inst.map("f").unwrap();
    assert_eq!(f.shift(), -1);
    assert!(f.column(1).is_empty());
}

#[test]
fn every_corpus_file_parses() {
    let dir = instance_path("");
    let mut count = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "dg") {
            parse_instance_file(&path, &ParseOptions::default())
                .unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            count += 1;
        }
    }
    assert!(count >= 10);
}

#[test]
fn constructions_and_maps() {
    let inst = load("B_plus_cone.dg");
    let (name, n) = inst.primary().unwrap();
    assert_eq!(name, "N");
    assert_eq!(n.rank(), 3);
    let cut = load("idempotent_cut.dg");
    let p = cut
        .map("proj")
        .unwrap()
        .then(cut.map("incl").unwrap())
        .unwrap();
    let pp = p.then(&p).unwrap();
    assert_eq!(p.columns(), pp.columns());
}

#[test]
fn rejects_nonzero_d_squared() {
    let src = "[base]\nring = k\n[algebra]\nvar x 2\n[module N]\ngen e0 0\ngen e1 3\ngen e2 6\nd e1 = e0*x\nd e2 = e1*x\n";
    let err = parse_instance(src, &ParseOptions::default()).unwrap_err();
    match err {
        InstanceError::Semantic { message, .. } => assert!(message.contains("`e2`"), "{message}"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn rejects_wrong_degree_differential() {
    let src = "[base]\nring = k\n[algebra]\nvar x 2\nvar z 2 = x\n";
    let err = parse_instance(src, &ParseOptions::default()).unwrap_err();
    match err {
        InstanceError::Semantic { message, .. } => assert!(message.contains("`z`"), "{message}"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn syntax_errors_carry_positions() {
    let src =
        "[base]\nring = k\n[algebra]\nvar y 1\n[module N]\ngen e0 0\ngen e1 2\nd e1 = e0*y +\n";
    let err = parse_instance(src, &ParseOptions::default()).unwrap_err();
    assert!(
        matches!(
            err,
            InstanceError::Syntax {
                line: 8,
                column: 14,
                ..
            }
        ),
        "{err:?}"
    );
    let err = parse_instance("ring = k\n", &ParseOptions::default()).unwrap_err();
    assert!(matches!(
        err,
        InstanceError::Syntax {
            line: 1,
            column: 1,
            ..
        }
    ));
    let err = parse_instance(
        "[base]\nring = k\n[algebra]\n[module N]\ngen e0 0\nd e0 = q\n",
        &ParseOptions::default(),
    )
    .unwrap_err();
    assert!(
        matches!(
            err,
            InstanceError::Syntax {
                line: 6,
                column: 8,
                ..
            }
        ),
        "{err:?}"
    );
}

#[test]
fn left_multiplication_uses_koszul_sign() {
    let src = "[base]\nring = k\n[algebra]\nvar y 1\nvar z 1\n[module N]\ngen e0 1\ngen e1 4\nd e1 = y*z*e0\n";
    let inst = parse_instance(src, &ParseOptions::default()).unwrap();
    let n = inst.module("N").unwrap();
    // y·z·e0 = (−1)^{2·1} e0·(y z)
    assert_eq!(n.format_free(n.column(1)), "e0*y*z");
    let src = src.replace("y*z*e0", "y*e0*z");
    let n2 = parse_instance(&src, &ParseOptions::default()).unwrap();
    let n2 = n2.module("N").unwrap();
    // y·e0·z = −e0·y·z
    assert_eq!(n2.format_free(n2.column(1)), "-e0*y*z");
}

#[test]
fn field_option_overrides_file() {
    let opts = ParseOptions {
        field: Some(Field::Prime(7)),
        max_degree: Some(5),
        ..Default::default()
    };
    let inst = parse_instance_file(&instance_path("I2.dg"), &opts).unwrap();
    assert_eq!(inst.field, Field::Prime(7));
    assert_eq!(inst.algebra.cap(), 5);
    assert_eq!(parse_field("Fp:5"), Ok(Field::Prime(5)));
    assert!(parse_field("Fp:4").is_err());
    assert!(parse_field("R").is_err());
}
