//! Closed-form counts for strand spaces on trees, plus the Euler
//! characteristic generating function for arbitrary graphs. Everything here
//! counts the same critical cells the gradient field produces, without ever
//! enumerating them, so the two pipelines check each other.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::{QPolynomial, RationalGF};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::layout::LabeledTree;

/// One summand of the critical-cell module of a tree: an ascending tuple of
/// essential vertex labels `vbar` and a branch weight `1 <= l_k <=
/// deg(v_k) - 2` for each entry. A critical cell belongs to the summand
/// whose vertices carry its edges and whose weights are the edge directions
/// minus one.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SummandDescriptor {
    pub vbar: Vec<usize>,
    pub lbar: Vec<usize>,
    /// Component count of the graph minus the points of vbar.
    pub mu_vbar: usize,
}

impl SummandDescriptor {
    pub fn weight(&self) -> usize {
        self.lbar.iter().sum()
    }
}

/// Advance an odometer with per-position caps and minimum 1, last position
/// fastest. Returns false once the tuple has wrapped past its maximum.
fn next_weights(tuple: &mut [usize], caps: &[usize]) -> bool {
    for pos in (0..tuple.len()).rev() {
        if tuple[pos] < caps[pos] {
            tuple[pos] += 1;
            for later in tuple.iter_mut().skip(pos + 1) {
                *later = 1;
            }
            return true;
        }
    }
    false
}

/// Next i-subset of 0..n in lexicographic order, or false when done.
fn next_subset(idx: &mut [usize], n: usize) -> bool {
    let i = idx.len();
    for pos in (0..i).rev() {
        if idx[pos] < n - (i - pos) {
            idx[pos] += 1;
            for j in pos + 1..i {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// All degree-i summand descriptors of a tree, ordered by (vbar, lbar).
/// Degree zero has the single empty descriptor; a degree above the essential
/// vertex count has none.
pub fn summands(t: &LabeledTree, i: usize) -> Result<Vec<SummandDescriptor>> {
    if !t.graph().is_tree() {
        return Err(Error::RequiresTree);
    }
    if i == 0 {
        return Ok(vec![SummandDescriptor {
            vbar: Vec::new(),
            lbar: Vec::new(),
            mu_vbar: 1,
        }]);
    }
    let ess = t.essential_labels();
    if i > ess.len() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..i).collect();
    loop {
        let vbar: Vec<usize> = idx.iter().map(|&k| ess[k]).collect();
        let removed: Vec<usize> = vbar.iter().map(|&l| t.vertex_of(l)).collect();
        let mu = t.graph().components_removed(&removed);
        let caps: Vec<usize> = vbar.iter().map(|&l| t.degree_of_label(l) - 2).collect();
        let mut lbar = vec![1usize; i];
        loop {
            out.push(SummandDescriptor {
                vbar: vbar.clone(),
                lbar: lbar.clone(),
                mu_vbar: mu,
            });
            if !next_weights(&mut lbar, &caps) {
                break;
            }
        }
        if !next_subset(&mut idx, ess.len()) {
            break;
        }
    }
    Ok(out)
}

/// Hilbert series of one summand: t^i prod_k (1 - (1-t)^{l_k}) over
/// (1-t)^{mu_vbar}. Its coefficient at t^n is the number of n-strand
/// critical i-cells in the summand: i strands sit on the edges, each edge
/// needs at least one strand among its l_k witness branches, and the rest
/// fall freely into the mu_vbar components left after the removal.
pub fn hilbert_series(d: &SummandDescriptor, i: usize) -> RationalGF {
    debug_assert_eq!(d.vbar.len(), i);
    let one = QPolynomial::one();
    let one_minus_t =
        QPolynomial::from_coeffs(vec![BigRational::one(), -BigRational::one()]);
    let mut num = QPolynomial::monomial(BigRational::one(), i);
    for &l in &d.lbar {
        num = num.mul(&one.sub(&one_minus_t.pow(l)));
    }
    RationalGF::new(num, d.mu_vbar)
}

pub(crate) fn binom_int(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut out = BigInt::one();
    for j in 0..k {
        out = out * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    out
}

/// Signed weight of r in the numerator expansion of a summand:
/// (-1)^{r+i} sum over r = d_1 + .. + d_i, d_j >= 1, of prod_j C(l_j, d_j).
fn alternating_weight(lbar: &[usize], r: usize) -> BigInt {
    fn rec(lbar: &[usize], left: usize) -> BigInt {
        let Some((&l, rest)) = lbar.split_first() else {
            return if left == 0 { BigInt::one() } else { BigInt::zero() };
        };
        let mut acc = BigInt::zero();
        for d in 1..=left.min(l) {
            let tail = rec(rest, left - d);
            if !tail.is_zero() {
                acc += binom_int(l, d) * tail;
            }
        }
        acc
    }
    let raw = rec(lbar, r);
    if (r + lbar.len()).is_multiple_of(2) {
        raw
    } else {
        -raw
    }
}

/// Critical i-cell count of a tree as a polynomial in the strand count,
/// exact for every n >= 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiPolynomial {
    pub i: usize,
    pub poly: QPolynomial,
    /// First strand count the polynomial is valid from. Always 0: the
    /// weight bound i + |lbar| < mu_vbar keeps every falling factorial
    /// truthful on small arguments.
    pub valid_from: usize,
    /// Maximum component count over removals of i essential vertices.
    /// The polynomial has degree delta - 1, or is zero when delta is 0.
    pub delta: usize,
}

pub fn betti_polynomial(t: &LabeledTree, i: usize) -> Result<BettiPolynomial> {
    let list = summands(t, i)?;
    let delta = t.graph().delta(i);
    let mut poly = QPolynomial::zero();
    for d in &list {
        let mu = d.mu_vbar;
        for r in i..=d.weight() {
            let a = alternating_weight(&d.lbar, r);
            if a.is_zero() {
                continue;
            }
            // C(n - r - i + mu - 1, mu - 1) in n
            let base =
                QPolynomial::binomial_in(mu as i64 - 1 - (i + r) as i64, mu - 1);
            poly = poly.add(&base.scale(&BigRational::from_integer(a)));
        }
    }
    if delta == 0 {
        debug_assert!(poly.is_zero());
    } else {
        debug_assert_eq!(poly.degree(), Some(delta - 1));
    }
    Ok(BettiPolynomial { i, poly, valid_from: 0, delta })
}

/// Degree-one count straight from the branch data of each essential vertex,
/// bypassing the summand expansion: the sum over vertices v and weights
/// l in 1..=deg(v)-2 of C(deg(v)-2+n, deg(v)-1) - C(deg(v)-2+n-l, deg(v)-1-l).
/// Agrees with betti_polynomial at i = 1 as a polynomial identity.
pub fn betti_polynomial_h1(t: &LabeledTree) -> Result<BettiPolynomial> {
    if !t.graph().is_tree() {
        return Err(Error::RequiresTree);
    }
    let mut poly = QPolynomial::zero();
    for label in t.essential_labels() {
        let mu = t.degree_of_label(label);
        for l in 1..=mu - 2 {
            let full = QPolynomial::binomial_in(mu as i64 - 2, mu - 1);
            let cut =
                QPolynomial::binomial_in(mu as i64 - 2 - l as i64, mu - 1 - l);
            poly = poly.add(&full.sub(&cut));
        }
    }
    Ok(BettiPolynomial { i: 1, poly, valid_from: 0, delta: t.graph().delta(1) })
}

/// Generating function over n of the Euler characteristic of the n-strand
/// space. Degree-two vertices are smoothed away first, so a circle (which
/// has no smoothing base) is rejected. Over the smoothed graph the series
/// is prod_v (1 - (deg(v) - 1) t) over (1-t)^{edges}. The minus sign in
/// each vertex factor is load-bearing: with a plus sign the product already
/// fails the two-strand cross-check on a tripod. Callers that print this
/// should flag the sign choice.
pub fn euler_gf(g: &Graph) -> Result<RationalGF> {
    let sm = g.smooth_degree_two()?;
    let mut num = QPolynomial::one();
    for v in 0..sm.n_vertices() {
        let c = BigRational::from_integer(BigInt::from(sm.degree(v) as i64 - 1));
        num = num.mul(&QPolynomial::from_coeffs(vec![BigRational::one(), -c]));
    }
    Ok(RationalGF::new(num, sm.n_edges()))
}

/// Euler characteristic as a polynomial in n, exact from n = 0 for every
/// graph with an essential vertex. Its degree is one less than the smoothed
/// edge count. Graphs without an essential vertex are rejected: their
/// characteristic is the constant 1 and carries no shape information.
pub fn euler_polynomial(g: &Graph) -> Result<QPolynomial> {
    if g.essential_structure().essential_vertices.is_empty() {
        return Err(Error::NoEssentialVertex);
    }
    let gf = euler_gf(g)?;
    let (poly, _) = gf.to_polynomial()?;
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::layout::{build_layout, build_layout_for};
    use crate::morse::critical_cells;

    fn fig1() -> Graph {
        let adj: Vec<Vec<usize>> = vec![
            vec![1],
            vec![0, 2],
            vec![1, 3, 9],
            vec![2, 4],
            vec![3, 5, 7],
            vec![4, 6],
            vec![5],
            vec![4, 8],
            vec![7],
            vec![2, 10],
            vec![9],
        ];
        Graph::from_rotation_lists(&adj, None).unwrap()
    }

    fn tripod() -> Graph {
        let adj: Vec<Vec<usize>> = vec![
            vec![1, 3, 5],
            vec![0, 2],
            vec![1],
            vec![0, 4],
            vec![3],
            vec![0, 6],
            vec![5],
        ];
        Graph::from_rotation_lists(&adj, None).unwrap()
    }

    /// k legs of two edges each around a central vertex.
    fn star(k: usize) -> Graph {
        let mut adj: Vec<Vec<usize>> = vec![(0..k).map(|j| 2 * j + 1).collect()];
        for j in 0..k {
            adj.push(vec![0, 2 * j + 2]);
            adj.push(vec![2 * j + 1]);
        }
        Graph::from_rotation_lists(&adj, None).unwrap()
    }

    fn path(len: usize) -> Graph {
        let adj: Vec<Vec<usize>> = (0..=len)
            .map(|v| match v {
                0 => vec![1],
                v if v == len => vec![len - 1],
                v => vec![v - 1, v + 1],
            })
            .collect();
        Graph::from_rotation_lists(&adj, None).unwrap()
    }

    fn circle(k: usize) -> Graph {
        let adj: Vec<Vec<usize>> = (0..k)
            .map(|v| vec![(v + k - 1) % k, (v + 1) % k])
            .collect();
        Graph::from_rotation_lists(&adj, None).unwrap()
    }

    fn k5() -> Graph {
        let adj: Vec<Vec<usize>> = (0..5)
            .map(|v| (0..5).filter(|&w| w != v).collect())
            .collect();
        Graph::from_rotation_lists(&adj, None).unwrap()
    }

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn qpoly(coeffs: &[i64]) -> QPolynomial {
        QPolynomial::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    #[test]
    fn summand_lists() {
        let t = build_layout(&tripod()).unwrap();
        assert_eq!(
            summands(&t, 0).unwrap(),
            vec![SummandDescriptor { vbar: vec![], lbar: vec![], mu_vbar: 1 }]
        );
        let ess = t.essential_labels();
        assert_eq!(
            summands(&t, 1).unwrap(),
            vec![SummandDescriptor { vbar: ess.clone(), lbar: vec![1], mu_vbar: 3 }]
        );
        assert!(summands(&t, 2).unwrap().is_empty());

        let t = build_layout(&fig1()).unwrap();
        let ess = t.essential_labels();
        assert_eq!(ess.len(), 2);
        let one = summands(&t, 1).unwrap();
        assert_eq!(one.len(), 2);
        assert_eq!(one[0].vbar, vec![ess[0]]);
        assert_eq!(one[1].vbar, vec![ess[1]]);
        assert!(one.iter().all(|d| d.lbar == vec![1] && d.mu_vbar == 3));
        let two = summands(&t, 2).unwrap();
        assert_eq!(
            two,
            vec![SummandDescriptor { vbar: ess, lbar: vec![1, 1], mu_vbar: 5 }]
        );

        let t = build_layout(&star(5)).unwrap();
        let one = summands(&t, 1).unwrap();
        let weights: Vec<Vec<usize>> = one.iter().map(|d| d.lbar.clone()).collect();
        assert_eq!(weights, vec![vec![1], vec![2], vec![3]]);
        assert!(one.iter().all(|d| d.mu_vbar == 5));

        let t = build_layout(&path(4)).unwrap();
        assert!(summands(&t, 1).unwrap().is_empty());
    }

    #[test]
    fn hilbert_series_of_the_tripod_summand_counts_pairs() {
        let t = build_layout(&tripod()).unwrap();
        let d = &summands(&t, 1).unwrap()[0];
        let gf = hilbert_series(d, 1);
        // t (1 - (1-t)) / (1-t)^3 = t^2 / (1-t)^3
        assert_eq!(gf, RationalGF::new(qpoly(&[0, 0, 1]), 3));
        for n in 0..=8usize {
            let pairs = n * n.saturating_sub(1) / 2;
            assert_eq!(gf.coefficient(n), rat(pairs as i64));
        }
    }

    #[test]
    fn heavier_branch_weights_widen_the_numerator() {
        // weight 2 at a degree-4 vertex: t (2t - t^2) / (1-t)^4
        let t = build_layout(&star(4)).unwrap();
        let list = summands(&t, 1).unwrap();
        assert_eq!(list.len(), 2);
        let gf = hilbert_series(&list[1], 1);
        assert_eq!(gf, RationalGF::new(qpoly(&[0, 0, 2, -1]), 4));
    }

    #[test]
    fn summand_coefficients_match_counted_cells_by_direction() {
        // Split the one-cells of the degree-4 star by the direction of their
        // edge; each class is one summand of the series.
        let g = star(4);
        let t0 = build_layout(&g).unwrap();
        let list = summands(&t0, 1).unwrap();
        for n in 0..=8usize {
            let t = build_layout_for(&g, n).unwrap();
            let cells = critical_cells(&t, n, 1).unwrap();
            for d in &list {
                let l = d.lbar[0];
                let counted = cells
                    .iter()
                    .filter(|c| c.edges[0].direction == l + 1)
                    .count();
                assert_eq!(hilbert_series(d, 1).coefficient(n), rat(counted as i64));
            }
        }
    }

    #[test]
    fn alternating_weights_expand_the_numerator() {
        assert_eq!(alternating_weight(&[2], 1), BigInt::from(2));
        assert_eq!(alternating_weight(&[2], 2), BigInt::from(-1));
        assert_eq!(alternating_weight(&[], 0), BigInt::one());
        // (1-(1-t)^2)(1-(1-t)) = (2t - t^2) t = 2t^2 - t^3
        assert_eq!(alternating_weight(&[2, 1], 2), BigInt::from(2));
        assert_eq!(alternating_weight(&[2, 1], 3), BigInt::from(-1));
    }

    #[test]
    fn tripod_betti_polynomial_is_the_pair_count() {
        let t = build_layout(&tripod()).unwrap();
        let b = betti_polynomial(&t, 1).unwrap();
        assert_eq!(b.poly, QPolynomial::binomial_in(0, 2));
        assert_eq!(b.poly.eval_usize(4), rat(6));
        assert_eq!(b.delta, 3);
        assert_eq!(b.poly.degree(), Some(2));
        assert_eq!(b.valid_from, 0);
    }

    #[test]
    fn two_vertex_tree_betti_polynomials_are_products_of_binomials() {
        let t = build_layout(&fig1()).unwrap();
        for i in 0..=2usize {
            let b = betti_polynomial(&t, i).unwrap();
            let choose2 = [1, 2, 1][i];
            assert_eq!(b.poly, QPolynomial::binomial_in(0, 2 * i).scale(&rat(choose2)));
        }
        assert_eq!(betti_polynomial(&t, 1).unwrap().delta, 3);
        assert_eq!(betti_polynomial(&t, 2).unwrap().delta, 5);
        let empty = betti_polynomial(&t, 3).unwrap();
        assert!(empty.poly.is_zero());
        assert_eq!(empty.delta, 0);
    }

    #[test]
    fn betti_polynomials_count_critical_cells_even_below_the_cell_dimension() {
        for g in [star(4), fig1()] {
            let t0 = build_layout(&g).unwrap();
            for i in 0..=2usize {
                let b = betti_polynomial(&t0, i).unwrap();
                for n in 0..=5usize {
                    let t = build_layout_for(&g, n).unwrap();
                    let count = critical_cells(&t, n, i).unwrap().len();
                    assert_eq!(b.poly.eval_usize(n), rat(count as i64), "i={i} n={n}");
                }
            }
        }
    }

    #[test]
    fn summand_polynomials_add_up_to_the_betti_polynomial() {
        for (g, i) in [(star(5), 1), (fig1(), 2), (fig1(), 1)] {
            let t = build_layout(&g).unwrap();
            let mut total = QPolynomial::zero();
            for d in &summands(&t, i).unwrap() {
                let (p, start) = hilbert_series(d, i).to_polynomial().unwrap();
                assert_eq!(start, 0);
                total = total.add(&p);
            }
            assert_eq!(total, betti_polynomial(&t, i).unwrap().poly);
        }
    }

    #[test]
    fn branch_sum_matches_the_general_formula_in_degree_one() {
        for g in [tripod(), star(4), star(5), fig1(), path(6)] {
            let t = build_layout(&g).unwrap();
            let direct = betti_polynomial_h1(&t).unwrap();
            let general = betti_polynomial(&t, 1).unwrap();
            assert_eq!(direct.poly, general.poly);
            assert_eq!(direct.delta, general.delta);
        }
        let t = build_layout(&path(6)).unwrap();
        assert!(betti_polynomial_h1(&t).unwrap().poly.is_zero());
    }

    #[test]
    fn euler_series_on_worked_graphs() {
        let gf = euler_gf(&tripod()).unwrap();
        assert_eq!(gf, RationalGF::new(qpoly(&[1, -2]), 3));
        assert_eq!(gf.coefficient(0), rat(1));
        assert_eq!(gf.coefficient(2), rat(0));

        let gf = euler_gf(&k5()).unwrap();
        assert_eq!(gf.coefficient(2), rat(-5));

        assert!(matches!(
            euler_gf(&circle(6)),
            Err(Error::CircleHasNoSmoothingBase)
        ));
    }

    #[test]
    fn euler_polynomial_degree_tracks_the_smoothed_edge_count() {
        let p = euler_polynomial(&fig1()).unwrap();
        assert_eq!(p.degree(), Some(4));
        assert_eq!(p.eval_usize(2), rat(-1));

        assert_eq!(euler_polynomial(&tripod()).unwrap().degree(), Some(2));
        assert_eq!(euler_polynomial(&star(5)).unwrap().degree(), Some(4));

        assert!(matches!(
            euler_polynomial(&path(5)),
            Err(Error::NoEssentialVertex)
        ));
    }

    #[test]
    fn alternating_betti_sum_is_the_euler_characteristic() {
        let g = fig1();
        let t = build_layout(&g).unwrap();
        let gf = euler_gf(&g).unwrap();
        for n in 0..=6usize {
            let mut chi = BigRational::zero();
            for i in 0..=2usize {
                let b = betti_polynomial(&t, i).unwrap().poly.eval_usize(n);
                chi = if i % 2 == 0 { chi + b } else { chi - b };
            }
            assert_eq!(chi, gf.coefficient(n), "n={n}");
        }
    }
}
