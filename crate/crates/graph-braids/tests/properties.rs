//! Randomized invariants. Trees are drawn as parent-pointer vectors, so
//! every case is connected and acyclic by construction; matrices are small
//! and dense enough to exercise both elimination paths.

mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use graph_braids::algebra::snf::smith_normal_form_sparse;
use graph_braids::algebra::{
    smith_normal_form, IntegerMatrix, QPolynomial, RationalGF, SparseIntMatrix,
};
use graph_braids::complex::{chain_complex, enumerate_cells};
use graph_braids::formulas::betti_polynomial;
use graph_braids::graph::Graph;
use graph_braids::layout::{build_layout, build_layout_for};
use graph_braids::morse::{classify, critical_cells, morse_differential, Classification};

/// Parent pointers: vertex v+1 attaches to some earlier vertex.
fn tree_strategy(max_extra: usize) -> impl Strategy<Value = Graph> {
    prop::collection::vec(0..100usize, 1..=max_extra).prop_map(|choices| {
        let mut adj: Vec<Vec<usize>> = vec![Vec::new()];
        for (k, c) in choices.iter().enumerate() {
            let v = k + 1;
            let parent = c % adj.len();
            adj.push(vec![parent]);
            adj[parent].push(v);
        }
        Graph::from_rotation_lists(&adj, None).expect("parent pointers form a tree")
    })
}

fn small_matrix() -> impl Strategy<Value = IntegerMatrix> {
    (1..=5usize, 1..=5usize).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-6i64..=6, c..=c), r..=r)
            .prop_map(|rows| IntegerMatrix::from_rows(&rows))
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn snf_factors_form_a_divisibility_chain(m in small_matrix()) {
        let snf = smith_normal_form(&m);
        prop_assert_eq!(snf.factors.len(), snf.rank);
        for w in snf.factors.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero(), "{} does not divide {}", w[0], w[1]);
        }
        for f in &snf.factors {
            prop_assert!(f > &BigInt::zero());
        }
    }

    #[test]
    fn sparse_and_dense_elimination_agree(m in small_matrix()) {
        let dense = smith_normal_form(&m);
        let sparse = smith_normal_form_sparse(&SparseIntMatrix::from_dense(&m));
        prop_assert_eq!(dense.rank, sparse.rank);
        prop_assert_eq!(dense.factors, sparse.factors);
    }

    #[test]
    fn series_coefficients_match_the_settled_polynomial(
        coeffs in prop::collection::vec(-9i64..=9, 0..5),
        k in 0..4usize,
    ) {
        let num = QPolynomial::from_coeffs(
            coeffs.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect(),
        );
        let gf = RationalGF::new(num, k);
        if let Ok((poly, start)) = gf.to_polynomial() {
            for n in start..start + 8 {
                prop_assert_eq!(
                    poly.eval_usize(n),
                    gf.coefficient(n),
                    "disagree at n = {}", n
                );
            }
        }
    }

    #[test]
    fn binomial_basis_polynomials_take_binomial_values(offset in -4i64..=4, k in 0..5usize) {
        let p = QPolynomial::binomial_in(offset, k);
        for n in 0..8i64 {
            // C(x, k) via the falling factorial, valid for negative x too
            let x = n + offset;
            let mut expected = BigRational::one();
            for j in 0..k as i64 {
                expected *= BigRational::from_integer(BigInt::from(x - j));
                expected /= BigRational::from_integer(BigInt::from(j + 1));
            }
            prop_assert_eq!(p.eval(&BigInt::from(n)), expected);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    #[test]
    fn cubical_boundaries_square_to_zero(g in tree_strategy(6), n in 2..=3usize) {
        let t = build_layout_for(&g, n).unwrap();
        let cc = chain_complex(&t, n).unwrap();
        for k in 0..cc.boundaries.len().saturating_sub(1) {
            prop_assert!(cc.boundaries[k].mul(&cc.boundaries[k + 1]).is_zero());
        }
    }

    #[test]
    fn tree_polynomials_count_cells_on_random_trees(g in tree_strategy(6)) {
        let t = build_layout(&g).unwrap();
        let t4 = build_layout_for(&g, 4).unwrap();
        for i in 0..=2usize {
            let b = betti_polynomial(&t, i).unwrap();
            for n in 0..=4usize {
                let count = critical_cells(&t4, n, i).unwrap().len();
                prop_assert_eq!(
                    b.poly.eval_usize(n),
                    BigRational::from_integer(BigInt::from(count)),
                    "i = {}, n = {}", i, n
                );
            }
        }
    }

    #[test]
    fn classification_partitions_random_complexes(g in tree_strategy(5)) {
        let n = 2usize;
        let t = build_layout_for(&g, n).unwrap();
        let mut counts = vec![(0usize, 0usize, 0usize, 0usize); n + 2];
        for (i, slot) in counts.iter_mut().enumerate().take(n + 1) {
            for c in enumerate_cells(&t, n, i).unwrap() {
                slot.0 += 1;
                match classify(&t, &c) {
                    Classification::Critical => slot.1 += 1,
                    Classification::Redundant { .. } => slot.2 += 1,
                    Classification::Collapsible { .. } => slot.3 += 1,
                }
            }
        }
        for (i, &(total, crit, red, coll)) in counts.iter().enumerate() {
            prop_assert_eq!(crit + red + coll, total);
            if i == 0 {
                prop_assert_eq!(coll, 0);
            }
            if i + 1 < counts.len() {
                prop_assert_eq!(red, counts[i + 1].3, "i = {}", i);
            }
        }
    }

    #[test]
    fn random_tree_differentials_vanish(g in tree_strategy(6), n in 2..=3usize) {
        let t = build_layout_for(&g, n).unwrap();
        let rep = morse_differential(&t, n).unwrap();
        for b in &rep.boundaries {
            prop_assert!(b.is_zero());
        }
    }
}
