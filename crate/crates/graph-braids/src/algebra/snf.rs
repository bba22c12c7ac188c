use super::matrix::{IntegerMatrix, SparseIntMatrix};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Snf {
    /// Nonzero diagonal entries, each dividing the next.
    pub factors: Vec<BigInt>,
    pub rank: usize,
}

/// Classical Smith normal form by Euclidean elimination. Pivot is the entry
/// of smallest nonzero absolute value, first in row-major order on ties.
pub fn smith_normal_form(m: &IntegerMatrix) -> Snf {
    let mut a = m.clone();
    let (r, c) = (a.rows, a.cols);
    let lim = r.min(c);
    let mut t = 0;
    'position: while t < lim {
        let Some((pi, pj)) = pivot_position(&a, t) else { break };
        swap_rows(&mut a, t, pi);
        swap_cols(&mut a, t, pj);
        // Clear column t, then row t. A nonzero remainder is strictly
        // smaller than the pivot, so restarting always terminates.
        for i in t + 1..r {
            if a.get(i, t).is_zero() {
                continue;
            }
            let q = rounded_div(a.get(i, t), a.get(t, t));
            row_op(&mut a, i, t, &q, t);
            if !a.get(i, t).is_zero() {
                continue 'position;
            }
        }
        for j in t + 1..c {
            if a.get(t, j).is_zero() {
                continue;
            }
            let q = rounded_div(a.get(t, j), a.get(t, t));
            col_op(&mut a, j, t, &q, t);
            if !a.get(t, j).is_zero() {
                continue 'position;
            }
        }
        // Fold any entry the pivot misses back into its row so the final
        // diagonal divides in order.
        for i in t + 1..r {
            for j in t + 1..c {
                if !(a.get(i, j) % a.get(t, t)).is_zero() {
                    let one = BigInt::from(-1);
                    row_op(&mut a, t, i, &one, t);
                    continue 'position;
                }
            }
        }
        if a.get(t, t).is_negative() {
            let v = -a.get(t, t).clone();
            a.set(t, t, v);
        }
        t += 1;
    }
    let factors: Vec<BigInt> = (0..t).map(|k| a.get(k, k).clone()).collect();
    Snf { rank: factors.len(), factors }
}

fn pivot_position(a: &IntegerMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for i in t..a.rows {
        for j in t..a.cols {
            let v = a.get(i, j);
            if v.is_zero() {
                continue;
            }
            let abs = v.abs();
            match &best {
                Some((b, _, _)) if *b <= abs => {}
                _ => best = Some((abs, i, j)),
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Quotient with remainder of minimal absolute value.
fn rounded_div(x: &BigInt, p: &BigInt) -> BigInt {
    let (mut q, r) = num_integer::Integer::div_rem(x, p);
    if r.abs() * 2 > p.abs() {
        if (r.is_negative()) == (p.is_negative()) {
            q += 1;
        } else {
            q -= 1;
        }
    }
    q
}

fn swap_rows(a: &mut IntegerMatrix, i: usize, k: usize) {
    if i == k {
        return;
    }
    for j in 0..a.cols {
        let (x, y) = (a.get(i, j).clone(), a.get(k, j).clone());
        a.set(i, j, y);
        a.set(k, j, x);
    }
}

fn swap_cols(a: &mut IntegerMatrix, j: usize, k: usize) {
    if j == k {
        return;
    }
    for i in 0..a.rows {
        let (x, y) = (a.get(i, j).clone(), a.get(i, k).clone());
        a.set(i, j, y);
        a.set(i, k, x);
    }
}

/// row_i -= q * row_k, from column `from` on.
fn row_op(a: &mut IntegerMatrix, i: usize, k: usize, q: &BigInt, from: usize) {
    if q.is_zero() {
        return;
    }
    for j in from..a.cols {
        let v = a.get(i, j) - q * a.get(k, j);
        a.set(i, j, v);
    }
}

/// col_j -= q * col_k, from row `from` on.
fn col_op(a: &mut IntegerMatrix, j: usize, k: usize, q: &BigInt, from: usize) {
    if q.is_zero() {
        return;
    }
    for i in from..a.rows {
        let v = a.get(i, j) - q * a.get(i, k);
        a.set(i, j, v);
    }
}

/// Smith normal form for large sparse matrices: split off +-1 pivots with
/// integer row operations (each contributes an invariant factor 1), then
/// finish the small residue with the dense routine. Pivot choice follows the
/// least (row fill - 1)(column fill - 1), smallest position on ties.
pub fn smith_normal_form_sparse(m: &SparseIntMatrix) -> Snf {
    let mut rows: Vec<BTreeMap<usize, BigInt>> = m.row_data.clone();
    let mut cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.cols];
    for (i, row) in rows.iter().enumerate() {
        for &j in row.keys() {
            cols[j].insert(i);
        }
    }
    let mut row_alive = vec![true; m.rows];
    let mut col_alive = vec![true; m.cols];
    let mut ones = 0usize;
    loop {
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, row) in rows.iter().enumerate() {
            if !row_alive[i] {
                continue;
            }
            for (&j, v) in row {
                if !v.abs().is_one() {
                    continue;
                }
                let score = (row.len() - 1) * (cols[j].len() - 1);
                if best.is_none_or(|(s, _, _)| score < s) {
                    best = Some((score, i, j));
                    if score == 0 {
                        break;
                    }
                }
            }
            if matches!(best, Some((0, _, _))) {
                break;
            }
        }
        let Some((_, pi, pj)) = best else { break };
        let pivot_row = rows[pi].clone();
        let sign = pivot_row[&pj].clone();
        let users: Vec<usize> = cols[pj].iter().copied().filter(|&i| i != pi).collect();
        for i in users {
            let coef = &rows[i][&pj] * &sign;
            for (&j, w) in &pivot_row {
                let delta = &coef * w;
                let entry = rows[i].entry(j).or_insert_with(BigInt::zero);
                *entry -= delta;
                if entry.is_zero() {
                    rows[i].remove(&j);
                    cols[j].remove(&i);
                } else {
                    cols[j].insert(i);
                }
            }
        }
        for &j in pivot_row.keys() {
            cols[j].remove(&pi);
        }
        rows[pi].clear();
        row_alive[pi] = false;
        col_alive[pj] = false;
        ones += 1;
    }

    let live_rows: Vec<usize> = (0..m.rows).filter(|&i| row_alive[i] && !rows[i].is_empty()).collect();
    let mut live_cols: BTreeSet<usize> = BTreeSet::new();
    for &i in &live_rows {
        for &j in rows[i].keys() {
            debug_assert!(col_alive[j]);
            live_cols.insert(j);
        }
    }
    let col_index: BTreeMap<usize, usize> =
        live_cols.iter().enumerate().map(|(k, &j)| (j, k)).collect();
    let mut residue = IntegerMatrix::zero(live_rows.len(), live_cols.len());
    for (ri, &i) in live_rows.iter().enumerate() {
        for (&j, v) in &rows[i] {
            residue.set(ri, col_index[&j], v.clone());
        }
    }
    let rest = smith_normal_form(&residue);
    let mut factors = vec![BigInt::one(); ones];
    factors.extend(rest.factors);
    Snf { rank: ones + rest.rank, factors }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyGroup {
    pub free_rank: usize,
    /// Invariant factors > 1, each dividing the next.
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn trivial() -> Self {
        HomologyGroup { free_rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        HomologyGroup { free_rank: rank, torsion: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

/// Equality of graded homology up to trailing trivial groups; complexes of
/// different lengths can still present the same homology.
pub fn same_homology(a: &[HomologyGroup], b: &[HomologyGroup]) -> bool {
    (0..a.len().max(b.len())).all(|i| match (a.get(i), b.get(i)) {
        (Some(x), Some(y)) => x == y,
        (Some(x), None) => x.is_trivial(),
        (None, Some(y)) => y.is_trivial(),
        (None, None) => true,
    })
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Homology of a chain complex given cell counts per dimension and the
/// boundary matrices: boundaries[i] maps dimension i+1 to dimension i.
pub fn homology_of(dims: &[usize], boundaries: &[SparseIntMatrix]) -> Result<Vec<HomologyGroup>> {
    if dims.is_empty() {
        return Ok(Vec::new());
    }
    if boundaries.len() + 1 != dims.len() {
        return Err(Error::Internal(format!(
            "{} dimensions need {} boundary maps, got {}",
            dims.len(),
            dims.len() - 1,
            boundaries.len()
        )));
    }
    for (i, b) in boundaries.iter().enumerate() {
        if b.rows != dims[i] || b.cols != dims[i + 1] {
            return Err(Error::Internal(format!(
                "boundary {} has shape {}x{}, expected {}x{}",
                i + 1,
                b.rows,
                b.cols,
                dims[i],
                dims[i + 1]
            )));
        }
    }
    for i in 0..boundaries.len().saturating_sub(1) {
        if !boundaries[i].mul(&boundaries[i + 1]).is_zero() {
            return Err(Error::NotAChainComplex(format!(
                "composite from dimension {} to {} is nonzero",
                i + 2,
                i
            )));
        }
    }
    let snfs: Vec<Snf> = boundaries.iter().map(smith_normal_form_sparse).collect();
    let mut out = Vec::with_capacity(dims.len());
    for i in 0..dims.len() {
        let rank_in = if i < snfs.len() { snfs[i].rank } else { 0 };
        let rank_out = if i > 0 { snfs[i - 1].rank } else { 0 };
        let free_rank = dims[i] - rank_out - rank_in;
        let torsion: Vec<BigInt> = if i < snfs.len() {
            snfs[i].factors.iter().filter(|d| !d.is_one()).cloned().collect()
        } else {
            Vec::new()
        };
        out.push(HomologyGroup { free_rank, torsion });
    }
    Ok(out)
}
