use hopf_core::group::catalog::{abelian, cyclic, dihedral, klein_four, quaternion, symmetric};
use hopf_core::group::{abelian_invariants, lower_central, quotient};
use hopf_core::homology::{bar_h1, bar_h2, bar_homology, smith_normal_form, sparse_invariant_factors, IntMatrix, SparseRow};
use num_bigint::BigInt;
use num_traits::One;
use proptest::prelude::*;

fn diag(m: &[Vec<i64>]) -> Vec<i64> {
    let f = smith_normal_form(&IntMatrix::from_rows(m));
    assert!(f.verify(&IntMatrix::from_rows(m)));
    f.diagonal.iter().map(|d| i64::try_from(d).unwrap()).collect()
}

#[test]
fn smith_examples() {
    assert_eq!(diag(&[vec![2, 4], vec![6, 8]]), vec![2, 4]);
    assert_eq!(diag(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]), vec![1, 1, 1]);
    assert_eq!(diag(&[vec![0, 0], vec![0, 0], vec![0, 0]]), vec![0, 0]);
    assert_eq!(diag(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
}

#[test]
fn bar_h2_of_small_cyclic_groups_is_trivial() {
    for n in 1..=8 {
        assert!(bar_h2(&cyclic(n)).unwrap().is_trivial(), "Z/{n}");
    }
}

#[test]
fn bar_h2_values() {
    assert_eq!(bar_h2(&klein_four()).unwrap().factors(), &[2]);
    assert!(bar_h2(&quaternion()).unwrap().is_trivial());
    assert_eq!(bar_h2(&dihedral(4)).unwrap().factors(), &[2]);
    assert!(bar_h2(&symmetric(3)).unwrap().is_trivial());
    assert_eq!(bar_h2(&abelian(&[2, 4])).unwrap().factors(), &[2]);
    assert_eq!(bar_h2(&abelian(&[3, 3])).unwrap().factors(), &[3]);
}

#[test]
fn bar_h1_is_abelianization() {
    for g in [cyclic(6), klein_four(), quaternion(), dihedral(4), symmetric(3), symmetric(4), abelian(&[2, 6])] {
        let ab = quotient(&g, &lower_central(&g, 2).unwrap()).unwrap().group;
        assert_eq!(bar_h1(&g).unwrap(), abelian_invariants(&ab).unwrap(), "{g:?}");
    }
}

#[test]
fn oversized_groups_are_refused() {
    assert!(matches!(bar_h2(&symmetric(5)), Err(hopf_core::Error::CapExceeded { .. })));
}

fn dense_from_sparse(rows: &[SparseRow], cols: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(rows.len(), cols);
    for (i, r) in rows.iter().enumerate() {
        for &(c, v) in r {
            m.set(i, c, BigInt::from(v));
        }
    }
    m
}

proptest! {
    #[test]
    fn smith_certificates_remultiply(rows in 1usize..6, cols in 1usize..6, data in proptest::collection::vec(-20i64..20, 36)) {
        let m: Vec<Vec<i64>> = (0..rows).map(|r| (0..cols).map(|c| data[r * 6 + c]).collect()).collect();
        let input = IntMatrix::from_rows(&m);
        let f = smith_normal_form(&input);
        prop_assert!(f.verify(&input));
        for w in f.diagonal.windows(2) {
            if w[1] != BigInt::from(0) {
                prop_assert!((&w[1] % &w[0]) == BigInt::from(0));
            }
        }
    }

    #[test]
    fn sparse_and_dense_agree(rows in 1usize..8, cols in 1usize..8, data in proptest::collection::vec(-3i64..4, 64)) {
        let sparse: Vec<SparseRow> = (0..rows)
            .map(|r| (0..cols).filter_map(|c| { let v = data[r * 8 + c]; (v != 0).then_some((c, v)) }).collect())
            .collect();
        let dense = smith_normal_form(&dense_from_sparse(&sparse, cols));
        let mut expect: Vec<BigInt> = dense.diagonal.into_iter().filter(|d| *d != BigInt::from(0)).collect();
        expect.sort();
        prop_assert_eq!(sparse_invariant_factors(&sparse, cols), expect);
    }
}

#[test]
fn unit_rows_reduce_to_ones() {
    let rows: Vec<SparseRow> = vec![vec![(0, 1), (1, 1)], vec![(1, 1), (2, -1)], vec![(0, 2)]];
    let f = sparse_invariant_factors(&rows, 3);
    assert_eq!(f, vec![BigInt::one(), BigInt::one(), BigInt::from(2)]);
}

#[test]
fn general_degree_agrees_with_the_low_degree_routines() {
    for g in [klein_four(), quaternion(), symmetric(3), cyclic(6), dihedral(4)] {
        assert_eq!(bar_homology(&g, 1).unwrap(), bar_h1(&g).unwrap(), "{g:?}");
        assert_eq!(bar_homology(&g, 2).unwrap(), bar_h2(&g).unwrap(), "{g:?}");
    }
}

#[test]
fn third_homology() {
    // Odd-degree homology of Z/n is Z/n; Künneth gives (Z/2)^3 for Z/2 × Z/2.
    for n in [2u32, 3, 4, 5] {
        assert_eq!(bar_homology(&cyclic(n), 3).unwrap().factors(), &[n as u64]);
    }
    assert_eq!(bar_homology(&klein_four(), 3).unwrap().factors(), &[2, 2, 2]);
    assert!(bar_homology(&hopf_core::group::catalog::trivial(), 3).unwrap().is_trivial());
    assert!(bar_homology(&cyclic(3), 0).is_err());
}
