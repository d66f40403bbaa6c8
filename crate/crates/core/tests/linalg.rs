//! Exact linear algebra against a dense fraction-free oracle.

mod common;

use num_bigint::BigInt;
use proptest::prelude::*;

use dglift::exactlin::{kernel_basis, rank, solve_sparse, Field, SparseMatrix, SparseVec};

/// Rank over ℚ by Bareiss elimination on big integers.
fn oracle_rank_q(data: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = data
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let (rows, cols) = (a.len(), a.first().map_or(0, Vec::len));
    let mut prev = BigInt::from(1);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| a[i][c] != BigInt::from(0)) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = (&a[r][c] * &a[i][j] - &a[i][c] * &a[r][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::from(0);
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// Rank modulo `p` by plain Gaussian elimination.
fn oracle_rank_p(data: &[Vec<i64>], p: u64) -> usize {
    let m = |x: i64| x.rem_euclid(p as i64) as u128;
    let mut a: Vec<Vec<u128>> = data
        .iter()
        .map(|r| r.iter().map(|&x| m(x)).collect())
        .collect();
    let (rows, cols) = (a.len(), a.first().map_or(0, Vec::len));
    let p = p as u128;
    let inv = |x: u128| {
        let (mut acc, mut b, mut e) = (1u128, x, p - 2);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        acc
    };
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let iv = inv(a[r][c]);
        for i in r + 1..rows {
            let f = a[i][c] * iv % p;
            for j in c..cols {
                a[i][j] = (a[i][j] + p * p - f * a[r][j] % p) % p;
            }
        }
        r += 1;
    }
    r
}

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=40, 1usize..=40).prop_flat_map(|(r, c)| {
        proptest::collection::vec(
            proptest::collection::vec(prop_oneof![3 => Just(0i64), 2 => -3i64..=3], c),
            r,
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn rank_matches_dense_oracle(data in matrix()) {
        let q = SparseMatrix::from_dense(Field::Rational, &data);
        prop_assert_eq!(rank(&q), oracle_rank_q(&data));
        let f = common::fp();
        let Field::Prime(p) = f else { unreachable!() };
        prop_assert_eq!(rank(&SparseMatrix::from_dense(f, &data)), oracle_rank_p(&data, p));
    }

    #[test]
    fn kernel_is_annihilated_and_has_full_size(data in matrix()) {
        for field in [Field::Rational, common::fp()] {
            let m = SparseMatrix::from_dense(field, &data);
            let k = kernel_basis(&m);
            prop_assert_eq!(k.len(), m.ncols() - rank(&m));
            for v in &k {
                prop_assert!(m.mul_vec(v).is_zero());
            }
        }
    }

    #[test]
    fn consistent_systems_are_solved(data in matrix(), seed in proptest::collection::vec(-2i64..=2, 40)) {
        let m = SparseMatrix::from_dense(Field::Rational, &data);
        let x: SparseVec = (0..m.ncols())
            .filter(|&i| seed[i] != 0)
            .map(|i| (i, Field::Rational.from_i64(seed[i])))
            .collect();
        let b = m.mul_vec(&x);
        let y = solve_sparse(&m, &b).unwrap().expect("b lies in the image");
        prop_assert_eq!(m.mul_vec(&y), b);
    }
}

#[test]
fn inconsistent_system_is_reported() {
    let m = SparseMatrix::from_dense(Field::Rational, &[vec![1, 1], vec![2, 2]]);
    let b: SparseVec = [
        (0, Field::Rational.from_i64(1)),
        (1, Field::Rational.from_i64(3)),
    ]
    .into_iter()
    .collect();
    assert!(solve_sparse(&m, &b).unwrap().is_none());
}
