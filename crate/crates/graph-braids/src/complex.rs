use crate::algebra::{homology_of, HomologyGroup, SparseIntMatrix};
use crate::error::Result;
use crate::layout::LabeledTree;
use num_bigint::BigInt;
use std::collections::BTreeMap;

/// One cube of the discretized configuration space: n strands sitting on
/// `verts` (vertex labels, ascending) while `edges.len()` of them slide
/// along edges (edge ranks, ascending). Closures are pairwise disjoint.
///
/// The derived order, edges before vertices, is the canonical cell order
/// everywhere: matrix indices, reports, and the Morse pairing all use it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub edges: Vec<usize>,
    pub verts: Vec<usize>,
}

impl Cell {
    pub fn vertex(label: usize) -> Cell {
        Cell { edges: Vec::new(), verts: vec![label] }
    }

    pub fn dim(&self) -> usize {
        self.edges.len()
    }

    pub fn strands(&self) -> usize {
        self.edges.len() + self.verts.len()
    }
}

/// All i-cells for n strands, canonically ordered. The subdivision
/// preconditions are checked and reported by name.
pub fn enumerate_cells(t: &LabeledTree, n: usize, i: usize) -> Result<Vec<Cell>> {
    let mut out = Vec::new();
    visit_cells(t, n, i, |c| out.push(c.clone()))?;
    Ok(out)
}

pub fn count_cells(t: &LabeledTree, n: usize, i: usize) -> Result<usize> {
    let mut count = 0usize;
    visit_cells(t, n, i, |_| count += 1)?;
    Ok(count)
}

/// Backtracking enumeration: edge sets first (their closures prune the
/// hardest), then free vertices, both ascending, which is exactly the
/// canonical order.
pub fn visit_cells(
    t: &LabeledTree,
    n: usize,
    i: usize,
    mut f: impl FnMut(&Cell),
) -> Result<()> {
    t.graph().check_subdivision(n)?;
    if i > n {
        return Ok(());
    }
    let nv = t.n_vertices();
    let ne = t.n_edges();
    let ends_of_rank: Vec<(usize, usize)> = (0..ne)
        .map(|r| {
            let e = t.edge_of_rank(r);
            (t.tau(e), t.iota(e))
        })
        .collect();
    let mut occupied = vec![false; nv];
    let mut cell = Cell { edges: Vec::with_capacity(i), verts: Vec::with_capacity(n - i) };
    visit_edges(&ends_of_rank, nv, n, i, 0, &mut occupied, &mut cell, &mut f);
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn visit_edges(
    ends: &[(usize, usize)],
    nv: usize,
    n: usize,
    i: usize,
    from: usize,
    occupied: &mut Vec<bool>,
    cell: &mut Cell,
    f: &mut impl FnMut(&Cell),
) {
    if cell.edges.len() == i {
        visit_verts(nv, n - i, 0, occupied, cell, f);
        return;
    }
    let missing = i - cell.edges.len();
    for r in from..ends.len() {
        if ends.len() - r < missing {
            break;
        }
        let (a, b) = ends[r];
        if occupied[a] || occupied[b] {
            continue;
        }
        occupied[a] = true;
        occupied[b] = true;
        cell.edges.push(r);
        visit_edges(ends, nv, n, i, r + 1, occupied, cell, f);
        cell.edges.pop();
        occupied[a] = false;
        occupied[b] = false;
    }
}

fn visit_verts(
    nv: usize,
    want: usize,
    from: usize,
    occupied: &mut Vec<bool>,
    cell: &mut Cell,
    f: &mut impl FnMut(&Cell),
) {
    if cell.verts.len() == want {
        f(cell);
        return;
    }
    let missing = want - cell.verts.len();
    for v in from..nv {
        if nv - v < missing {
            break;
        }
        if occupied[v] {
            continue;
        }
        occupied[v] = true;
        cell.verts.push(v);
        visit_verts(nv, want, v + 1, occupied, cell, f);
        cell.verts.pop();
        occupied[v] = false;
    }
}

/// Geometric faces of a cell with the cubical signs: factors are ordered by
/// edge rank, and the face replacing the j-th edge (0-based) by its tau
/// endpoint carries (-1)^j, by its iota endpoint the opposite.
pub fn boundary_faces(t: &LabeledTree, cell: &Cell) -> Vec<(Cell, i64)> {
    let mut out = Vec::with_capacity(2 * cell.edges.len());
    for (j, &r) in cell.edges.iter().enumerate() {
        let e = t.edge_of_rank(r);
        let sign = if j % 2 == 0 { 1 } else { -1 };
        for (label, s) in [(t.tau(e), sign), (t.iota(e), -sign)] {
            let mut edges = cell.edges.clone();
            edges.remove(j);
            let mut verts = cell.verts.clone();
            let at = verts.partition_point(|&v| v < label);
            verts.insert(at, label);
            out.push((Cell { edges, verts }, s));
        }
    }
    out
}

/// Matrix of the boundary operator from i-cells to (i-1)-cells, indexed by
/// the canonical cell orders.
pub fn boundary_matrix(t: &LabeledTree, n: usize, i: usize) -> Result<SparseIntMatrix> {
    assert!(i >= 1);
    let rows = enumerate_cells(t, n, i - 1)?;
    let cols = enumerate_cells(t, n, i)?;
    let row_index: BTreeMap<&Cell, usize> =
        rows.iter().enumerate().map(|(k, c)| (c, k)).collect();
    let mut m = SparseIntMatrix::zero(rows.len(), cols.len());
    for (j, c) in cols.iter().enumerate() {
        for (face, sign) in boundary_faces(t, c) {
            let r = row_index[&face];
            m.add_assign(r, j, &BigInt::from(sign));
        }
    }
    Ok(m)
}

/// Cell counts and boundary matrices of the full space for n strands, up to
/// the top nonempty dimension.
pub struct ChainComplex {
    pub dims: Vec<usize>,
    pub boundaries: Vec<SparseIntMatrix>,
}

pub fn chain_complex(t: &LabeledTree, n: usize) -> Result<ChainComplex> {
    let mut dims = vec![count_cells(t, n, 0)?];
    let mut boundaries = Vec::new();
    for i in 1..=n {
        let count = count_cells(t, n, i)?;
        if count == 0 {
            break;
        }
        boundaries.push(boundary_matrix(t, n, i)?);
        dims.push(count);
    }
    Ok(ChainComplex { dims, boundaries })
}

/// Homology of the full cubical complex, dimension by dimension.
pub fn brute_homology(t: &LabeledTree, n: usize) -> Result<Vec<HomologyGroup>> {
    let cc = chain_complex(t, n)?;
    homology_of(&cc.dims, &cc.boundaries)
}
