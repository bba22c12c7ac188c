//! Discrete gradient vector field on the cube complex and everything built
//! on top of it: cell classification, critical-cell enumeration (generic
//! pruned search plus a direct generator for trees), the reduced Morse
//! differential, the strand-adding action indexed by essential edges, and
//! the experimental commutation probe for that action.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::algebra::{homology_of, HomologyGroup, SparseIntMatrix};
use crate::complex::{boundary_faces, Cell};
use crate::error::{Error, Result};
use crate::layout::LabeledTree;

/// Integer chain, canonically ordered by cell. Zero coefficients are never
/// stored.
pub type Chain = BTreeMap<Cell, BigInt>;

pub fn add_term(chain: &mut Chain, cell: Cell, coef: BigInt) {
    use std::collections::btree_map::Entry;
    if coef.is_zero() {
        return;
    }
    match chain.entry(cell) {
        Entry::Vacant(e) => {
            e.insert(coef);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += coef;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// Labels covered by the closed cell: its vertices plus both endpoints of
/// each of its edges. Blocking is evaluated against this set.
fn occupancy(t: &LabeledTree, c: &Cell) -> Vec<bool> {
    let mut occ = vec![false; t.n_vertices()];
    for &v in &c.verts {
        occ[v] = true;
    }
    for &r in &c.edges {
        let e = t.edge_of_rank(r);
        occ[t.tau(e)] = true;
        occ[t.iota(e)] = true;
    }
    occ
}

/// A strand parked on vertex `v` of `c` is blocked when the next vertex on
/// its rootward path is covered by the cell. The root is blocked by
/// convention.
pub fn is_blocked(t: &LabeledTree, c: &Cell, v: usize) -> bool {
    match t.parent_label(v) {
        Some(p) => occupancy(t, c)[p],
        None => true,
    }
}

/// A tree edge of `c` is order respecting when no strand of `c` waits at a
/// smaller-labelled sibling direction of its endpoint: every cell vertex
/// whose rootward edge ends at tau(e) must exceed iota(e). Deleted edges
/// are never order respecting.
pub fn is_order_respecting(t: &LabeledTree, c: &Cell, e: usize) -> bool {
    if !t.is_tree_edge(e) {
        return false;
    }
    let tau = t.tau(e);
    let iota = t.iota(e);
    c.verts
        .iter()
        .all(|&v| t.parent_label(v) != Some(tau) || v > iota)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Critical,
    /// Smallest unblocked vertex, the one the vector field moves.
    Redundant { vertex: usize },
    /// Minimal order-respecting edge, the one the paired cell slid along.
    Collapsible { edge: usize },
}

/// The trichotomy: a cell with no order-respecting edge is critical when
/// fully blocked and redundant otherwise; with a minimal order-respecting
/// edge e it is redundant when some unblocked vertex precedes iota(e) and
/// collapsible when none does.
pub fn classify(t: &LabeledTree, c: &Cell) -> Classification {
    let occ = occupancy(t, c);
    let mut min_or: Option<(usize, usize)> = None;
    for &r in &c.edges {
        let e = t.edge_of_rank(r);
        if !t.is_tree_edge(e) {
            continue;
        }
        let tau = t.tau(e);
        let iota = t.iota(e);
        let respected = c
            .verts
            .iter()
            .all(|&v| t.parent_label(v) != Some(tau) || v > iota);
        if respected && min_or.is_none_or(|(best, _)| iota < best) {
            min_or = Some((iota, e));
        }
    }
    // verts ascending, so the first unblocked vertex is the smallest
    let min_unblocked = c.verts.iter().copied().find(|&v| match t.parent_label(v) {
        Some(p) => !occ[p],
        None => false,
    });
    match (min_or, min_unblocked) {
        (None, None) => Classification::Critical,
        (None, Some(v)) => Classification::Redundant { vertex: v },
        (Some((_, e)), None) => Classification::Collapsible { edge: e },
        (Some((iota, e)), Some(v)) => {
            if v < iota {
                Classification::Redundant { vertex: v }
            } else {
                Classification::Collapsible { edge: e }
            }
        }
    }
}

fn paired_cell(t: &LabeledTree, c: &Cell, vertex: usize) -> Cell {
    let e = t.parent_edge(vertex).unwrap();
    let r = t.edge_rank(e);
    let verts: Vec<usize> = c.verts.iter().copied().filter(|&v| v != vertex).collect();
    let mut edges = c.edges.clone();
    let pos = edges.partition_point(|&x| x < r);
    edges.insert(pos, r);
    Cell { edges, verts }
}

/// The discrete vector field: defined exactly on redundant cells, where it
/// slides the smallest unblocked vertex onto its rootward edge.
pub fn vector_field(t: &LabeledTree, c: &Cell) -> Option<Cell> {
    match classify(t, c) {
        Classification::Redundant { vertex } => Some(paired_cell(t, c, vertex)),
        _ => None,
    }
}

/// Per-edge data of a critical cell. `witnesses` are the cell vertices
/// parked at smaller sibling directions of tau(e), the ones preventing the
/// edge from being order respecting; `witness_components` are the indices
/// (into the essential structure) of the arcs housing them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalEdge {
    pub edge: usize,
    pub deleted: bool,
    pub tau: usize,
    pub direction: usize,
    pub witnesses: Vec<usize>,
    pub witness_components: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalCell {
    pub cell: Cell,
    pub degree: usize,
    pub edges: Vec<CriticalEdge>,
}

/// Attach the per-edge metadata to a cell already known to be critical.
pub fn annotate_critical(t: &LabeledTree, cell: Cell) -> CriticalCell {
    debug_assert!(matches!(classify(t, &cell), Classification::Critical));
    let degree = cell.strands();
    let mut edges = Vec::with_capacity(cell.edges.len());
    for &r in &cell.edges {
        let e = t.edge_of_rank(r);
        let tau = t.tau(e);
        let iota = t.iota(e);
        let deleted = !t.is_tree_edge(e);
        let direction = t.direction_index(t.vertex_of(tau), e).unwrap();
        let witnesses: Vec<usize> = if deleted {
            Vec::new()
        } else {
            cell.verts
                .iter()
                .copied()
                .filter(|&v| t.parent_label(v) == Some(tau) && v < iota)
                .collect()
        };
        let mut witness_components: Vec<usize> = witnesses
            .iter()
            .filter_map(|&w| t.essential_component_of(t.vertex_of(w)))
            .collect();
        witness_components.sort_unstable();
        witness_components.dedup();
        edges.push(CriticalEdge {
            edge: e,
            deleted,
            tau,
            direction,
            witnesses,
            witness_components,
        });
    }
    CriticalCell { cell, degree, edges }
}

/// Critical i-cells for n strands, canonically ordered. Dispatches to the
/// direct generator on trees and to the pruned search elsewhere; the two
/// must agree verbatim on trees.
pub fn critical_cells(t: &LabeledTree, n: usize, i: usize) -> Result<Vec<CriticalCell>> {
    if t.graph().is_tree() {
        critical_cells_direct(t, n, i)
    } else {
        critical_cells_brute(t, n, i)
    }
}

struct BruteSearch<'a> {
    t: &'a LabeledTree,
    need: usize,
    occ: Vec<bool>,
    out: Vec<CriticalCell>,
}

/// Exhaustive search, pruned: a critical cell's edge is deleted or ends at
/// an essential or root vertex (anything else is order respecting for want
/// of siblings), vertices are placed in ascending label order so blocking
/// is decided at insertion, and each tree edge must pick up a witness
/// before the labels run past its last candidate.
pub fn critical_cells_brute(t: &LabeledTree, n: usize, i: usize) -> Result<Vec<CriticalCell>> {
    t.graph().check_subdivision(n)?;
    if i > n {
        return Ok(Vec::new());
    }
    let mut cand: Vec<usize> = (0..t.n_edges())
        .filter(|&e| !t.is_tree_edge(e) || t.degree_of_label(t.tau(e)) >= 3 || t.tau(e) == 0)
        .collect();
    cand.sort_by_key(|&e| t.edge_rank(e));
    let mut s = BruteSearch {
        t,
        need: n - i,
        occ: vec![false; t.n_vertices()],
        out: Vec::new(),
    };
    let mut edges = Vec::with_capacity(i);
    s.edges_from(&cand, 0, i, &mut edges);
    Ok(s.out)
}

impl BruteSearch<'_> {
    fn edges_from(&mut self, cand: &[usize], from: usize, left: usize, edges: &mut Vec<usize>) {
        if left == 0 {
            self.vertices(edges);
            return;
        }
        if cand.len() - from < left {
            return;
        }
        for idx in from..cand.len() {
            let e = cand[idx];
            let (a, b) = (self.t.tau(e), self.t.iota(e));
            if self.occ[a] || self.occ[b] {
                continue;
            }
            self.occ[a] = true;
            self.occ[b] = true;
            edges.push(e);
            self.edges_from(cand, idx + 1, left - 1, edges);
            edges.pop();
            self.occ[a] = false;
            self.occ[b] = false;
        }
    }

    fn vertices(&mut self, edges: &[usize]) {
        let t = self.t;
        let nv = t.n_vertices();
        // witness candidates per tree edge; an empty set kills the edge set
        let mut wit_of = vec![usize::MAX; nv];
        let mut wit_max = Vec::new();
        for &e in edges {
            if !t.is_tree_edge(e) {
                continue;
            }
            let tau = t.tau(e);
            let iota = t.iota(e);
            let k = wit_max.len();
            let mut max = None;
            for &w in t.children(tau) {
                if w < iota && !self.occ[w] {
                    wit_of[w] = k;
                    max = Some(w);
                }
            }
            match max {
                Some(m) => wit_max.push(m),
                None => return,
            }
        }
        let mut satisfied = vec![0usize; wit_max.len()];
        let mut verts = Vec::with_capacity(self.need);
        self.place(edges, 0, &wit_of, &wit_max, &mut satisfied, &mut verts);
    }

    fn place(
        &mut self,
        edges: &[usize],
        label: usize,
        wit_of: &[usize],
        wit_max: &[usize],
        satisfied: &mut Vec<usize>,
        verts: &mut Vec<usize>,
    ) {
        let t = self.t;
        let nv = t.n_vertices();
        if verts.len() == self.need {
            if satisfied.iter().all(|&s| s > 0) {
                let cell = Cell {
                    edges: edges.iter().map(|&e| t.edge_rank(e)).collect(),
                    verts: verts.clone(),
                };
                self.out.push(annotate_critical(t, cell));
            }
            return;
        }
        if label == nv || self.need - verts.len() > nv - label {
            return;
        }
        for (k, &m) in wit_max.iter().enumerate() {
            if satisfied[k] == 0 && m < label {
                return;
            }
        }
        if !self.occ[label] {
            let blocked = match t.parent_label(label) {
                Some(p) => self.occ[p],
                None => true,
            };
            if blocked {
                self.occ[label] = true;
                verts.push(label);
                let k = wit_of[label];
                if k != usize::MAX {
                    satisfied[k] += 1;
                }
                self.place(edges, label + 1, wit_of, wit_max, satisfied, verts);
                if k != usize::MAX {
                    satisfied[k] -= 1;
                }
                verts.pop();
                self.occ[label] = false;
            }
        }
        self.place(edges, label + 1, wit_of, wit_max, satisfied, verts);
    }
}

/// Components of the spanning tree minus the closed cell edges, cut along
/// tree adjacency only. Returns (component of each label, members of each
/// component); components are numbered by their smallest label and list
/// members ascending. Labels inside closures map to usize::MAX.
fn tree_components(t: &LabeledTree, closure: &[bool]) -> (Vec<usize>, Vec<Vec<usize>>) {
    let nv = t.n_vertices();
    let mut comp_of = vec![usize::MAX; nv];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for l in 0..nv {
        if closure[l] {
            continue;
        }
        let cid = match t.parent_label(l) {
            Some(p) if !closure[p] => comp_of[p],
            _ => {
                comps.push(Vec::new());
                comps.len() - 1
            }
        };
        comp_of[l] = cid;
        comps[cid].push(l);
    }
    (comp_of, comps)
}

struct DirectSearch<'a> {
    t: &'a LabeledTree,
    need: usize,
    out: Vec<CriticalCell>,
}

/// Trees only: pick i essential vertices and a direction >= 2 at each,
/// which fixes the edges, then distribute the remaining strands over the
/// components left by the closures, requiring at least one strand among
/// each edge's smaller-direction components. Each distribution is realized
/// by filling every component with its smallest labels; under sufficient
/// subdivision that blocked pile-up is the only one, so this enumerates
/// critical cells bijectively.
pub fn critical_cells_direct(t: &LabeledTree, n: usize, i: usize) -> Result<Vec<CriticalCell>> {
    if !t.graph().is_tree() {
        return Err(Error::RequiresTree);
    }
    t.graph().check_subdivision(n)?;
    if i > n {
        return Ok(Vec::new());
    }
    if i == 0 {
        let mut out = Vec::new();
        if n <= t.n_vertices() {
            let cell = Cell { edges: Vec::new(), verts: (0..n).collect() };
            out.push(annotate_critical(t, cell));
        }
        return Ok(out);
    }
    let ess = t.essential_labels();
    let mut s = DirectSearch { t, need: n - i, out: Vec::new() };
    let mut chosen = Vec::with_capacity(i);
    s.pick(&ess, 0, i, &mut chosen);
    s.out.sort_by(|a, b| a.cell.cmp(&b.cell));
    Ok(s.out)
}

impl DirectSearch<'_> {
    fn pick(&mut self, ess: &[usize], from: usize, left: usize, chosen: &mut Vec<(usize, usize)>) {
        if left == 0 {
            self.with_edges(chosen);
            return;
        }
        if ess.len() - from < left {
            return;
        }
        for idx in from..ess.len() {
            let v = ess[idx];
            for d in 2..self.t.degree_of_label(v) {
                chosen.push((v, d));
                self.pick(ess, idx + 1, left - 1, chosen);
                chosen.pop();
            }
        }
    }

    fn with_edges(&mut self, chosen: &[(usize, usize)]) {
        let t = self.t;
        let nv = t.n_vertices();
        let mut closure = vec![false; nv];
        let mut edges = Vec::with_capacity(chosen.len());
        for &(v, d) in chosen {
            let child = t.children(v)[d - 1];
            if closure[v] || closure[child] {
                return;
            }
            closure[v] = true;
            closure[child] = true;
            edges.push(t.parent_edge(child).unwrap());
        }
        let (comp_of, comps) = tree_components(t, &closure);
        // group k = components at directions below d_k; each needs a strand
        let mut group_of_comp = vec![usize::MAX; comps.len()];
        let mut group_last = vec![usize::MAX; chosen.len()];
        for (k, &(v, d)) in chosen.iter().enumerate() {
            for dd in 1..d {
                let w = t.children(v)[dd - 1];
                if closure[w] {
                    continue;
                }
                let cid = comp_of[w];
                group_of_comp[cid] = k;
                if group_last[k] == usize::MAX || cid > group_last[k] {
                    group_last[k] = cid;
                }
            }
        }
        if group_last.contains(&usize::MAX) {
            return;
        }
        let mut suffix = vec![0usize; comps.len() + 1];
        for j in (0..comps.len()).rev() {
            suffix[j] = suffix[j + 1] + comps[j].len();
        }
        let mut placed = vec![0usize; chosen.len()];
        let mut m = vec![0usize; comps.len()];
        self.distribute(
            &edges,
            &comps,
            &group_of_comp,
            &group_last,
            &suffix,
            0,
            self.need,
            &mut placed,
            &mut m,
        );
    }

    #[allow(clippy::too_many_arguments)]
    fn distribute(
        &mut self,
        edges: &[usize],
        comps: &[Vec<usize>],
        group_of_comp: &[usize],
        group_last: &[usize],
        suffix: &[usize],
        j: usize,
        left: usize,
        placed: &mut Vec<usize>,
        m: &mut Vec<usize>,
    ) {
        if left > suffix[j] {
            return;
        }
        if j == comps.len() {
            if left == 0 {
                self.realize(edges, comps, m);
            }
            return;
        }
        let g = group_of_comp[j];
        let lo = if g != usize::MAX && placed[g] == 0 && group_last[g] == j {
            1
        } else {
            0
        };
        let hi = comps[j].len().min(left);
        for take in lo..=hi {
            if g != usize::MAX {
                placed[g] += take;
            }
            m[j] = take;
            self.distribute(
                edges,
                comps,
                group_of_comp,
                group_last,
                suffix,
                j + 1,
                left - take,
                placed,
                m,
            );
            m[j] = 0;
            if g != usize::MAX {
                placed[g] -= take;
            }
        }
    }

    fn realize(&mut self, edges: &[usize], comps: &[Vec<usize>], m: &[usize]) {
        let t = self.t;
        let mut verts = Vec::with_capacity(self.need);
        for (j, comp) in comps.iter().enumerate() {
            verts.extend_from_slice(&comp[..m[j]]);
        }
        verts.sort_unstable();
        let mut ranks: Vec<usize> = edges.iter().map(|&e| t.edge_rank(e)).collect();
        ranks.sort_unstable();
        self.out
            .push(annotate_critical(t, Cell { edges: ranks, verts }));
    }
}

/// Loose upper bound on the number of cells with this many strands, used
/// only to cap the reduction loop; exceeding it means a closed gradient
/// path, which is a bug, not an input condition.
pub(crate) fn cell_count_bound(t: &LabeledTree, strands: usize) -> u128 {
    let m = (t.n_vertices() + t.n_edges()) as u128;
    let k = strands as u128;
    if k > m {
        return 2;
    }
    let mut b: u128 = 1;
    for j in 0..k {
        b = b.saturating_mul(m - j) / (j + 1);
        if b > u64::MAX as u128 {
            return b;
        }
    }
    b + 2
}

fn classify_cached(
    t: &LabeledTree,
    cache: &mut HashMap<Cell, Classification>,
    c: &Cell,
) -> Classification {
    if let Some(&cl) = cache.get(c) {
        return cl;
    }
    let cl = classify(t, c);
    cache.insert(c.clone(), cl);
    cl
}

/// One pass of the flow: keep critical cells, drop collapsible ones, and
/// replace each redundant cell by the other boundary faces of its paired
/// cell, signed so the cell itself cancels.
fn reduce_with_cache(
    t: &LabeledTree,
    mut cur: Chain,
    cache: &mut HashMap<Cell, Classification>,
) -> Result<Chain> {
    if cur.is_empty() {
        return Ok(cur);
    }
    let cap = cell_count_bound(t, cur.keys().next().unwrap().strands());
    let mut rounds: u128 = 0;
    loop {
        let mut changed = false;
        let mut next: Chain = BTreeMap::new();
        for (c, coef) in &cur {
            match classify_cached(t, cache, c) {
                Classification::Critical => add_term(&mut next, c.clone(), coef.clone()),
                Classification::Collapsible { .. } => changed = true,
                Classification::Redundant { vertex } => {
                    changed = true;
                    let up = paired_cell(t, c, vertex);
                    let faces = boundary_faces(t, &up);
                    let kappa = faces
                        .iter()
                        .find(|(f, _)| f == c)
                        .map(|&(_, s)| s)
                        .ok_or_else(|| {
                            Error::Internal("paired cell lost its defining face".into())
                        })?;
                    for (f, s) in faces {
                        if &f == c {
                            continue;
                        }
                        add_term(&mut next, f, coef * BigInt::from(-(kappa * s)));
                    }
                }
            }
        }
        if !changed {
            return Ok(cur);
        }
        cur = next;
        if cur.is_empty() {
            return Ok(cur);
        }
        rounds += 1;
        if rounds > cap {
            return Err(Error::Internal("gradient flow did not stabilize".into()));
        }
    }
}

/// Iterate the flow until the chain is supported on critical cells only.
pub fn reduce_chain(t: &LabeledTree, chain: Chain) -> Result<Chain> {
    let mut cache = HashMap::new();
    reduce_with_cache(t, chain, &mut cache)
}

/// Critical cells per dimension plus the reduced differential between
/// consecutive dimensions. Its homology equals the cube complex's.
#[derive(Debug, Clone)]
pub struct MorseComplexRep {
    pub dims: Vec<usize>,
    pub critical: Vec<Vec<CriticalCell>>,
    pub boundaries: Vec<SparseIntMatrix>,
}

pub fn morse_differential(t: &LabeledTree, n: usize) -> Result<MorseComplexRep> {
    t.graph().check_subdivision(n)?;
    let mut critical: Vec<Vec<CriticalCell>> = Vec::new();
    for i in 0..=n {
        critical.push(critical_cells(t, n, i)?);
    }
    while critical.len() > 1 && critical.last().unwrap().is_empty() {
        critical.pop();
    }
    let dims: Vec<usize> = critical.iter().map(|c| c.len()).collect();
    let mut cache: HashMap<Cell, Classification> = HashMap::new();
    let mut boundaries = Vec::new();
    for k in 0..critical.len().saturating_sub(1) {
        let row_index: BTreeMap<&Cell, usize> = critical[k]
            .iter()
            .enumerate()
            .map(|(r, c)| (&c.cell, r))
            .collect();
        let mut mat = SparseIntMatrix::zero(dims[k], dims[k + 1]);
        for (j, c) in critical[k + 1].iter().enumerate() {
            let mut chain: Chain = BTreeMap::new();
            for (f, s) in boundary_faces(t, &c.cell) {
                add_term(&mut chain, f, BigInt::from(s));
            }
            let reduced = reduce_with_cache(t, chain, &mut cache)?;
            for (f, coef) in reduced {
                let &r = row_index.get(&f).ok_or_else(|| {
                    Error::Internal("reduced boundary left the critical cells".into())
                })?;
                mat.add_assign(r, j, &coef);
            }
        }
        boundaries.push(mat);
    }
    Ok(MorseComplexRep { dims, critical, boundaries })
}

/// Homology through the Morse complex; the chain-complex identity is
/// re-verified on the reduced matrices along the way.
pub fn morse_homology(t: &LabeledTree, n: usize) -> Result<Vec<HomologyGroup>> {
    let rep = morse_differential(t, n)?;
    homology_of(&rep.dims, &rep.boundaries)
}

/// Multiply by the generator of an essential edge: one more strand joins
/// the component of the tree-minus-closures containing that arc's surviving
/// vertices, at the smallest free label. Degree rises by one, the edges do
/// not move. A saturated component means the current subdivision has no
/// room for the image cell.
pub fn sg_action(t: &LabeledTree, c: &CriticalCell, ee: usize) -> Result<CriticalCell> {
    let items = &t.essential().essential_edges;
    let item = items
        .get(ee)
        .ok_or_else(|| Error::Internal(format!("essential edge {ee} out of range")))?;
    let nv = t.n_vertices();
    let mut closure = vec![false; nv];
    for ce in &c.edges {
        closure[t.tau(ce.edge)] = true;
        closure[t.iota(ce.edge)] = true;
    }
    let (comp_of, comps) = tree_components(t, &closure);
    let anchor = item
        .vertices
        .iter()
        .map(|&v| t.label_of(v))
        .filter(|&l| !closure[l])
        .min()
        .ok_or(Error::ActionNeedsSubdivision)?;
    let comp = &comps[comp_of[anchor]];
    let mut occ = vec![false; nv];
    for &v in &c.cell.verts {
        occ[v] = true;
    }
    let add = comp
        .iter()
        .copied()
        .find(|&l| !occ[l])
        .ok_or(Error::ActionNeedsSubdivision)?;
    let mut verts = c.cell.verts.clone();
    let pos = verts.partition_point(|&x| x < add);
    verts.insert(pos, add);
    let cell = Cell { edges: c.cell.edges.clone(), verts };
    if !matches!(classify(t, &cell), Classification::Critical) {
        return Err(Error::Internal("action produced a non-critical cell".into()));
    }
    Ok(annotate_critical(t, cell))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub cell: CriticalCell,
    pub minimal: bool,
}

/// All critical i-cells of degree at most 2i; beyond that degree every
/// critical cell is an action image, so these generate. A generator is
/// minimal when it is not itself an action image.
pub fn generators(t: &LabeledTree, i: usize) -> Result<Vec<Generator>> {
    let n_items = t.essential().essential_edges.len();
    let mut out = Vec::new();
    let mut prev: Vec<CriticalCell> = Vec::new();
    for n in i..=2 * i {
        let cur = critical_cells(t, n, i)?;
        let mut images: BTreeSet<Cell> = BTreeSet::new();
        for c in &prev {
            for ee in 0..n_items {
                match sg_action(t, c, ee) {
                    Ok(a) => {
                        images.insert(a.cell);
                    }
                    // a saturated component cannot host any cell at this
                    // subdivision, so nothing here is its image
                    Err(Error::ActionNeedsSubdivision) => {}
                    Err(e) => return Err(e),
                }
            }
        }
        for c in &cur {
            out.push(Generator {
                cell: c.clone(),
                minimal: !images.contains(&c.cell),
            });
        }
        prev = cur;
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct ProbeMismatch {
    pub degree: usize,
    pub essential_edge: usize,
    pub cell: CriticalCell,
    pub lhs: Vec<(Cell, BigInt)>,
    pub rhs: Vec<(Cell, BigInt)>,
}

#[derive(Debug, Clone)]
pub struct ProbeReport {
    pub i: usize,
    pub n_max: usize,
    pub checked: usize,
    pub mismatches: Vec<ProbeMismatch>,
}

/// Does the strand-adding action commute with the reduced differential?
/// For every critical i-cell c of degree 2i..=n_max and every essential
/// edge, compare the differential of the action image against the action
/// image of the differential (extended linearly). Mismatches are findings,
/// not errors. Needs one degree of subdivision headroom for the images.
pub fn commutation_probe(t: &LabeledTree, i: usize, n_max: usize) -> Result<ProbeReport> {
    t.graph().check_subdivision(n_max + 1)?;
    let mut report = ProbeReport { i, n_max, checked: 0, mismatches: Vec::new() };
    if n_max < 2 * i {
        return Ok(report);
    }
    let n_items = t.essential().essential_edges.len();
    let lo = 2 * i;
    let mut reps = Vec::with_capacity(n_max + 2 - lo);
    for n in lo..=n_max + 1 {
        reps.push(morse_differential(t, n)?);
    }
    for n in lo..=n_max {
        let rep = &reps[n - lo];
        let rep_up = &reps[n + 1 - lo];
        if rep.critical.len() <= i {
            continue;
        }
        let up_index: BTreeMap<&Cell, usize> = rep_up
            .critical
            .get(i)
            .map(|v| v.iter().enumerate().map(|(j, c)| (&c.cell, j)).collect())
            .unwrap_or_default();
        for (j, c) in rep.critical[i].iter().enumerate() {
            for ee in 0..n_items {
                let a = sg_action(t, c, ee)?;
                report.checked += 1;
                let mut lhs: Chain = BTreeMap::new();
                let mut rhs: Chain = BTreeMap::new();
                if i >= 1 {
                    let aj = *up_index.get(&a.cell).ok_or_else(|| {
                        Error::Internal("action image missing from critical cells".into())
                    })?;
                    for (r, rc) in rep_up.critical[i - 1].iter().enumerate() {
                        let v = rep_up.boundaries[i - 1].get(r, aj);
                        if !v.is_zero() {
                            lhs.insert(rc.cell.clone(), v);
                        }
                    }
                    for (r, rc) in rep.critical[i - 1].iter().enumerate() {
                        let v = rep.boundaries[i - 1].get(r, j);
                        if v.is_zero() {
                            continue;
                        }
                        let b = sg_action(t, rc, ee)?;
                        add_term(&mut rhs, b.cell, v);
                    }
                }
                if lhs != rhs {
                    report.mismatches.push(ProbeMismatch {
                        degree: n,
                        essential_edge: ee,
                        cell: c.clone(),
                        lhs: lhs.into_iter().collect(),
                        rhs: rhs.into_iter().collect(),
                    });
                }
            }
        }
    }
    Ok(report)
}
