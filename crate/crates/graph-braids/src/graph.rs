use crate::error::{Error, Result};
use std::collections::{BTreeMap, VecDeque};

/// One end of an edge. `side` 0 is the `.0` endpoint of the edge pair, 1 the `.1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeEnd {
    pub edge: usize,
    pub side: u8,
}

/// A finite connected multigraph with a rotation system.
///
/// The rotation at a vertex is the cyclic order of its incident edge ends;
/// a loop contributes two ends. Everything downstream (the spanning tree,
/// the labeling, the gradient field) is a deterministic function of this
/// structure plus the root.
#[derive(Debug, Clone)]
pub struct Graph {
    edges: Vec<(usize, usize)>,
    rotation: Vec<Vec<EdgeEnd>>,
    root: usize,
}

impl Graph {
    /// Build from adjacency lists in rotation order. The k-th occurrence of u
    /// in v's list pairs with the k-th occurrence of v in u's list; a loop
    /// lists its vertex twice and consecutive occurrences pair up.
    pub fn from_rotation_lists(adj: &[Vec<usize>], root: Option<usize>) -> Result<Graph> {
        let nv = adj.len();
        if nv == 0 {
            return Err(Error::InvalidGraph("graph has no vertices".into()));
        }
        for (v, list) in adj.iter().enumerate() {
            for &u in list {
                if u >= nv {
                    return Err(Error::InvalidGraph(format!(
                        "vertex {v} lists neighbor {u} which does not exist"
                    )));
                }
            }
        }
        let mut edges: Vec<(usize, usize)> = Vec::new();
        let mut rotation: Vec<Vec<EdgeEnd>> = adj
            .iter()
            .map(|l| vec![EdgeEnd { edge: usize::MAX, side: 0 }; l.len()])
            .collect();
        // Edges awaiting their second end, keyed by (smaller, larger) vertex pair.
        let mut pending: BTreeMap<(usize, usize), VecDeque<usize>> = BTreeMap::new();
        for v in 0..nv {
            for (pos, &u) in adj[v].iter().enumerate() {
                if v < u {
                    let id = edges.len();
                    edges.push((v, u));
                    rotation[v][pos] = EdgeEnd { edge: id, side: 0 };
                    pending.entry((v, u)).or_default().push_back(id);
                } else if v == u {
                    let q = pending.entry((v, v)).or_default();
                    match q.pop_front() {
                        Some(id) => rotation[v][pos] = EdgeEnd { edge: id, side: 1 },
                        None => {
                            let id = edges.len();
                            edges.push((v, v));
                            rotation[v][pos] = EdgeEnd { edge: id, side: 0 };
                            q.push_back(id);
                        }
                    }
                } else {
                    let id = pending
                        .get_mut(&(u, v))
                        .and_then(|q| q.pop_front())
                        .ok_or_else(|| {
                            Error::InvalidGraph(format!(
                                "edge {u}-{v} is not listed symmetrically"
                            ))
                        })?;
                    rotation[v][pos] = EdgeEnd { edge: id, side: 1 };
                }
            }
        }
        for ((a, b), q) in &pending {
            if !q.is_empty() {
                if a == b {
                    return Err(Error::InvalidGraph(format!(
                        "loop at {a} listed an odd number of times"
                    )));
                }
                return Err(Error::InvalidGraph(format!(
                    "edge {a}-{b} is not listed symmetrically"
                )));
            }
        }
        let root = match root {
            Some(r) => {
                if r >= nv {
                    return Err(Error::InvalidGraph(format!("root {r} does not exist")));
                }
                r
            }
            None => default_root(&rotation),
        };
        let g = Graph { edges, rotation, root };
        g.check_connected()?;
        Ok(g)
    }

    fn check_connected(&self) -> Result<()> {
        let nv = self.n_vertices();
        let mut seen = vec![false; nv];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for end in &self.rotation[v] {
                let w = self.end_other_vertex(v, *end);
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        if seen.iter().all(|&s| s) {
            Ok(())
        } else {
            Err(Error::NotConnected)
        }
    }

    pub fn n_vertices(&self) -> usize {
        self.rotation.len()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotation[v].len()
    }

    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.edges[e].0 == self.edges[e].1
    }

    pub fn rotation(&self, v: usize) -> &[EdgeEnd] {
        &self.rotation[v]
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn with_root(mut self, root: usize) -> Result<Graph> {
        if root >= self.n_vertices() {
            return Err(Error::InvalidGraph(format!("root {root} does not exist")));
        }
        self.root = root;
        Ok(self)
    }

    pub fn is_tree(&self) -> bool {
        self.n_edges() + 1 == self.n_vertices()
    }

    /// The vertex an end attaches to, given the vertex at the other side.
    /// For loops both sides are the same vertex.
    fn end_other_vertex(&self, _at: usize, end: EdgeEnd) -> usize {
        let (a, b) = self.edges[end.edge];
        if end.side == 0 {
            b
        } else {
            a
        }
    }

    pub fn edge_other(&self, e: usize, v: usize) -> usize {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    /// Position of the given end in its own vertex's rotation.
    pub fn end_position(&self, end: EdgeEnd) -> (usize, usize) {
        let (a, b) = self.edges[end.edge];
        let v = if end.side == 0 { a } else { b };
        for (pos, cand) in self.rotation[v].iter().enumerate() {
            if cand == &end {
                return (v, pos);
            }
        }
        unreachable!("end not present in its vertex rotation");
    }

    /// Subdivide edge e into parts[e] edges (1 = unchanged). Original vertex
    /// ids and rotation positions are preserved; new vertices and edges are
    /// appended in edge-id order. Edge e keeps its id for the first piece.
    pub fn subdivided(&self, parts: &[usize]) -> Graph {
        assert_eq!(parts.len(), self.n_edges());
        let mut edges = self.edges.clone();
        let mut rotation = self.rotation.clone();
        let mut next_vertex = self.n_vertices();
        for e in 0..self.edges.len() {
            let k = parts[e];
            assert!(k >= 1);
            if k == 1 {
                continue;
            }
            let (a, b) = self.edges[e];
            let inner: Vec<usize> = (0..k - 1).map(|j| next_vertex + j).collect();
            next_vertex += k - 1;
            // Chain a - w1 - w2 - ... - w_{k-1} - b. The first piece reuses id e.
            edges[e] = (a, inner[0]);
            let mut chain_ids = vec![e];
            for j in 1..k - 1 {
                chain_ids.push(edges.len());
                edges.push((inner[j - 1], inner[j]));
            }
            chain_ids.push(edges.len());
            edges.push((inner[k - 2], b));
            for j in 0..inner.len() {
                rotation.push(vec![
                    EdgeEnd { edge: chain_ids[j], side: 1 },
                    EdgeEnd { edge: chain_ids[j + 1], side: 0 },
                ]);
            }
            // b's old end of e now belongs to the last piece.
            let last = *chain_ids.last().unwrap();
            let old_end = EdgeEnd { edge: e, side: 1 };
            let rb = &mut rotation[b];
            let pos = rb.iter().position(|x| x == &old_end).unwrap();
            rb[pos] = EdgeEnd { edge: last, side: 1 };
        }
        Graph { edges, rotation, root: self.root }
    }

    /// Maximal paths whose interior vertices all have degree 2. Each segment
    /// is (end vertex, end vertex, edges in path order); a segment with equal
    /// ends closes a cycle at that vertex. A graph that is entirely degree 2
    /// (a circle) yields a single segment with both ends at the start vertex.
    pub fn segments(&self) -> Vec<(usize, usize, Vec<usize>)> {
        let nv = self.n_vertices();
        let mut out = Vec::new();
        let mut edge_seen = vec![false; self.n_edges()];
        let starts: Vec<usize> = (0..nv).filter(|&v| self.degree(v) != 2).collect();
        for &s in &starts {
            for pos in 0..self.degree(s) {
                let first = self.rotation[s][pos];
                if edge_seen[first.edge] {
                    continue;
                }
                out.push(self.walk_segment(s, first, &mut edge_seen));
            }
        }
        if starts.is_empty() && self.n_edges() > 0 {
            // circle: every vertex has degree 2
            let first = self.rotation[0][0];
            out.push(self.walk_segment(0, first, &mut edge_seen));
        }
        out
    }

    fn walk_segment(
        &self,
        start: usize,
        first: EdgeEnd,
        edge_seen: &mut [bool],
    ) -> (usize, usize, Vec<usize>) {
        let mut edges = Vec::new();
        let mut v = start;
        let mut end = first;
        loop {
            edge_seen[end.edge] = true;
            edges.push(end.edge);
            let w = if self.is_loop(end.edge) {
                v
            } else {
                self.edge_other(end.edge, v)
            };
            if self.degree(w) != 2 || w == start && self.degree(start) == 2 {
                return (start, w, edges);
            }
            // continue through w on its other end
            let next = self.rotation[w]
                .iter()
                .find(|cand| !(cand.edge == end.edge))
                .copied();
            match next {
                Some(n) => {
                    v = w;
                    end = n;
                }
                None => return (start, w, edges), // degree-2 vertex with a doubled edge
            }
        }
    }

    /// Both subdivision conditions for n strands: every path between distinct
    /// vertices of degree != 2 has at least n-1 edges, and every homotopically
    /// essential cycle has at least n+1 edges. Cycles are bounded through the
    /// non-tree edges of a spanning tree: every cycle contains one, and the
    /// shortest cycle through edge (a,b) is 1 plus the a-b distance avoiding it.
    pub fn check_subdivision(&self, n: usize) -> Result<()> {
        if self.n_vertices() >= 2 && (0..self.n_vertices()).all(|v| self.degree(v) == 2) {
            if self.n_edges() < n + 1 {
                return Err(Error::InsufficientSubdivision(format!(
                    "the graph is a circle of length {} but essential cycles need length >= {}",
                    self.n_edges(),
                    n + 1
                )));
            }
            return Ok(());
        }
        if n >= 2 {
            for (a, b, edges) in self.segments() {
                if a != b && edges.len() < n - 1 {
                    return Err(Error::InsufficientSubdivision(format!(
                        "path between vertices {a} and {b} of degree != 2 has length {} < {}",
                        edges.len(),
                        n - 1
                    )));
                }
            }
        }
        for e in self.nontree_edges_of_dfs() {
            let (a, b) = self.endpoints(e);
            let cycle_len = 1 + self.distance_avoiding(a, b, e);
            if cycle_len < n + 1 {
                return Err(Error::InsufficientSubdivision(format!(
                    "essential cycle through edge {a}-{b} has length {cycle_len} < {}",
                    n + 1
                )));
            }
        }
        Ok(())
    }

    /// Non-tree edges of a rotation-order DFS from the root.
    fn nontree_edges_of_dfs(&self) -> Vec<usize> {
        let mut visited = vec![false; self.n_vertices()];
        let mut used = vec![false; self.n_edges()];
        let mut out = Vec::new();
        let mut stack = vec![self.root];
        visited[self.root] = true;
        while let Some(v) = stack.pop() {
            for end in &self.rotation[v] {
                if used[end.edge] {
                    continue;
                }
                used[end.edge] = true;
                let w = self.end_other_vertex(v, *end);
                if visited[w] {
                    out.push(end.edge);
                } else {
                    visited[w] = true;
                    stack.push(w);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// BFS distance from a to b not using edge `skip`; usize::MAX if unreachable.
    fn distance_avoiding(&self, a: usize, b: usize, skip: usize) -> usize {
        if a == b {
            return 0;
        }
        let mut dist = vec![usize::MAX; self.n_vertices()];
        dist[a] = 0;
        let mut q = VecDeque::from([a]);
        while let Some(v) = q.pop_front() {
            for end in &self.rotation[v] {
                if end.edge == skip {
                    continue;
                }
                let w = self.end_other_vertex(v, *end);
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    if w == b {
                        return dist[w];
                    }
                    q.push_back(w);
                }
            }
        }
        usize::MAX
    }

    /// Subdivide just enough that `check_subdivision(n)` holds. Deficient
    /// paths get the required total distributed evenly over their edges.
    pub fn subdivide_for(&self, n: usize) -> Graph {
        let mut g = self.clone();
        for _ in 0..32 {
            let mut parts = vec![1usize; g.n_edges()];
            let mut dirty = false;
            let circle = g.n_vertices() >= 2 && (0..g.n_vertices()).all(|v| g.degree(v) == 2);
            if circle {
                if g.n_edges() < n + 1 {
                    distribute(&mut parts, &(0..g.n_edges()).collect::<Vec<_>>(), n + 1);
                    dirty = true;
                }
            } else {
                if n >= 2 {
                    for (a, b, edges) in g.segments() {
                        if a != b && edges.len() < n - 1 {
                            distribute(&mut parts, &edges, n - 1);
                            dirty = true;
                        }
                    }
                }
                for e in g.nontree_edges_of_dfs() {
                    let (a, b) = g.endpoints(e);
                    let path = g.path_avoiding(a, b, e);
                    let cycle_len = 1 + path.len();
                    if cycle_len < n + 1 {
                        let mut cycle = path;
                        cycle.push(e);
                        distribute(&mut parts, &cycle, n + 1);
                        dirty = true;
                    }
                }
            }
            if !dirty {
                return g;
            }
            g = g.subdivided(&parts);
        }
        unreachable!("subdivision did not converge");
    }

    /// Edges of a shortest a-b path not using edge `skip`.
    fn path_avoiding(&self, a: usize, b: usize, skip: usize) -> Vec<usize> {
        if a == b {
            return Vec::new();
        }
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; self.n_vertices()];
        let mut seen = vec![false; self.n_vertices()];
        seen[a] = true;
        let mut q = VecDeque::from([a]);
        'bfs: while let Some(v) = q.pop_front() {
            for end in &self.rotation[v] {
                if end.edge == skip {
                    continue;
                }
                let w = self.end_other_vertex(v, *end);
                if !seen[w] {
                    seen[w] = true;
                    prev[w] = Some((v, end.edge));
                    if w == b {
                        break 'bfs;
                    }
                    q.push_back(w);
                }
            }
        }
        let mut edges = Vec::new();
        let mut v = b;
        while v != a {
            let (u, e) = prev[v].expect("endpoints disconnected without this edge");
            edges.push(e);
            v = u;
        }
        edges
    }

    /// Suppress every degree-2 vertex, preserving the homeomorphism type.
    /// Kept vertices are reindexed compactly in id order; their rotation
    /// positions are preserved exactly.
    pub fn smooth_degree_two(&self) -> Result<Graph> {
        let nv = self.n_vertices();
        if nv >= 2 && (0..nv).all(|v| self.degree(v) == 2) {
            return Err(Error::CircleHasNoSmoothingBase);
        }
        let kept: Vec<usize> = (0..nv).filter(|&v| self.degree(v) != 2).collect();
        let mut new_id = vec![usize::MAX; nv];
        for (i, &v) in kept.iter().enumerate() {
            new_id[v] = i;
        }
        let placeholder = EdgeEnd { edge: usize::MAX, side: 0 };
        let mut edges: Vec<(usize, usize)> = Vec::new();
        let mut rotation: Vec<Vec<EdgeEnd>> =
            kept.iter().map(|&v| vec![placeholder; self.degree(v)]).collect();
        // Each chain leaving a kept vertex fills its own slot and the slot it
        // terminates in, so every slot is written exactly once.
        for &s in &kept {
            for pos in 0..self.degree(s) {
                if rotation[new_id[s]][pos].edge != usize::MAX {
                    continue;
                }
                let mut v = s;
                let mut cur = self.rotation[s][pos];
                let entering = loop {
                    let w = if self.is_loop(cur.edge) { v } else { self.edge_other(cur.edge, v) };
                    let came_in = EdgeEnd { edge: cur.edge, side: 1 - cur.side };
                    if self.degree(w) != 2 {
                        break came_in;
                    }
                    let next = self.rotation[w]
                        .iter()
                        .copied()
                        .find(|c| *c != came_in)
                        .expect("degree-2 vertex has two ends");
                    v = w;
                    cur = next;
                };
                let (t, t_pos) = self.end_position(entering);
                let id = edges.len();
                edges.push((new_id[s], new_id[t]));
                rotation[new_id[s]][pos] = EdgeEnd { edge: id, side: 0 };
                rotation[new_id[t]][t_pos] = EdgeEnd { edge: id, side: 1 };
            }
        }
        let root = if self.degree(self.root) != 2 {
            new_id[self.root]
        } else {
            default_root(&rotation)
        };
        let g = Graph { edges, rotation, root };
        g.check_connected()?;
        Ok(g)
    }

    /// Essential vertices, essential edges, and the essential degree multiset.
    pub fn essential_structure(&self) -> EssentialStructure {
        let nv = self.n_vertices();
        let essential: Vec<usize> = (0..nv).filter(|&v| self.degree(v) >= 3).collect();
        let mut degree_sequence: Vec<usize> = essential.iter().map(|&v| self.degree(v)).collect();
        degree_sequence.sort_unstable();
        if essential.is_empty() {
            return EssentialStructure {
                essential_vertices: essential,
                essential_edges: Vec::new(),
                degree_sequence,
            };
        }
        let is_essential: Vec<bool> = (0..nv).map(|v| self.degree(v) >= 3).collect();
        // Union-find over edges; join two edges sharing a non-essential vertex.
        let mut uf = UnionFind::new(self.n_edges());
        for (v, &ess) in is_essential.iter().enumerate() {
            if ess || self.degree(v) == 0 {
                continue;
            }
            let first = self.rotation[v][0].edge;
            for end in &self.rotation[v][1..] {
                uf.union(first, end.edge);
            }
        }
        let mut comp_edges: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for e in 0..self.n_edges() {
            comp_edges.entry(uf.find(e)).or_default().push(e);
        }
        let mut items: Vec<(usize, usize, EssentialEdge)> = Vec::new();
        for (_, edge_list) in comp_edges {
            let mut vertices: Vec<usize> = Vec::new();
            let mut attachments: Vec<(usize, usize)> = Vec::new();
            for &e in &edge_list {
                let (a, b) = self.endpoints(e);
                for (v, side) in [(a, 0u8), (b, 1u8)] {
                    if is_essential[v] {
                        let (_, pos) = self.end_position(EdgeEnd { edge: e, side });
                        attachments.push((v, pos));
                    } else if !vertices.contains(&v) {
                        vertices.push(v);
                    }
                }
            }
            vertices.sort_unstable();
            attachments.sort_unstable();
            attachments.dedup();
            let key = attachments[0];
            items.push((
                key.0,
                key.1,
                EssentialEdge { edges: edge_list, vertices, attachments },
            ));
        }
        items.sort_by_key(|(v, p, _)| (*v, *p));
        EssentialStructure {
            essential_vertices: essential,
            essential_edges: items.into_iter().map(|(_, _, ee)| ee).collect(),
            degree_sequence,
        }
    }

    /// Connected components of the space after removing the given vertices as
    /// points. Each removal of a degree-d vertex leaves d loose half-edges.
    pub fn components_removed(&self, removed: &[usize]) -> usize {
        let nv = self.n_vertices();
        let mut gone = vec![false; nv];
        for &v in removed {
            gone[v] = true;
        }
        let ne = self.n_edges();
        // Elements: edges 0..ne, then surviving vertices ne..ne+nv.
        let mut uf = UnionFind::new(ne + nv);
        let mut present = vec![false; ne + nv];
        for e in 0..ne {
            present[e] = true;
            let (a, b) = self.endpoints(e);
            for v in [a, b] {
                if !gone[v] {
                    present[ne + v] = true;
                    uf.union(e, ne + v);
                }
            }
        }
        for v in 0..nv {
            if !gone[v] && self.degree(v) == 0 {
                present[ne + v] = true;
            }
        }
        let mut roots: Vec<usize> = (0..ne + nv)
            .filter(|&x| present[x])
            .map(|x| uf.find(x))
            .collect();
        roots.sort_unstable();
        roots.dedup();
        roots.len()
    }

    /// Maximum component count over removals of exactly i essential vertices.
    /// 1 for i = 0, and 0 once i exceeds the essential vertex count.
    pub fn delta(&self, i: usize) -> usize {
        if i == 0 {
            return 1;
        }
        let ess = self.essential_structure().essential_vertices;
        if i > ess.len() {
            return 0;
        }
        let mut best = 0;
        let mut choice: Vec<usize> = (0..i).collect();
        loop {
            let removed: Vec<usize> = choice.iter().map(|&k| ess[k]).collect();
            best = best.max(self.components_removed(&removed));
            // next i-subset of 0..ess.len() in lexicographic order
            let mut pos = i;
            loop {
                if pos == 0 {
                    return best;
                }
                pos -= 1;
                if choice[pos] < ess.len() - (i - pos) {
                    choice[pos] += 1;
                    for j in pos + 1..i {
                        choice[j] = choice[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
}

/// Smallest-id boundary vertex if one exists, else vertex 0.
fn default_root(rotation: &[Vec<EdgeEnd>]) -> usize {
    rotation
        .iter()
        .position(|r| r.len() == 1)
        .unwrap_or(0)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EssentialEdge {
    /// Edge ids making up this component of the graph minus its essential vertices.
    pub edges: Vec<usize>,
    /// Non-essential vertices in the component, ascending.
    pub vertices: Vec<usize>,
    /// (essential vertex, rotation position) pairs where the component attaches.
    pub attachments: Vec<(usize, usize)>,
}

#[derive(Debug, Clone)]
pub struct EssentialStructure {
    pub essential_vertices: Vec<usize>,
    pub essential_edges: Vec<EssentialEdge>,
    pub degree_sequence: Vec<usize>,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut v = x;
        while self.parent[v] != r {
            let next = self.parent[v];
            self.parent[v] = r;
            v = next;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

fn distribute(parts: &mut [usize], edges: &[usize], total: usize) {
    let l = edges.len();
    let base = total / l;
    let rem = total % l;
    for (idx, &e) in edges.iter().enumerate() {
        let want = if idx < rem { base + 1 } else { base };
        parts[e] = parts[e].max(want.max(1));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tree_two_junctions() -> Graph {
        // Two degree-3 vertices (2 and 4) joined by a path, with subdivided
        // legs hanging off both. Leaves: 0, 6, 8, 10.
        let adj = vec![
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

    fn complete(k: usize) -> Graph {
        let adj: Vec<Vec<usize>> = (0..k)
            .map(|v| (0..k).filter(|&u| u != v).collect())
            .collect();
        Graph::from_rotation_lists(&adj, None).unwrap()
    }

    fn circle(k: usize) -> Graph {
        let adj: Vec<Vec<usize>> = (0..k)
            .map(|v| vec![(v + k - 1) % k, (v + 1) % k])
            .collect();
        Graph::from_rotation_lists(&adj, None).unwrap()
    }

    #[test]
    fn builds_path_with_default_root() {
        let g = Graph::from_rotation_lists(&[vec![1], vec![0, 2], vec![1]], None).unwrap();
        assert_eq!(g.n_vertices(), 3);
        assert_eq!(g.n_edges(), 2);
        assert_eq!(g.degree(1), 2);
        assert_eq!(g.root(), 0);
        assert!(g.is_tree());
        assert_eq!(g.endpoints(0), (0, 1));
        assert_eq!(g.edge_other(1, 2), 1);
    }

    #[test]
    fn builds_loops_and_parallel_edges() {
        // Vertex 0 carries a loop; 0 and 1 are doubly connected.
        let g = Graph::from_rotation_lists(&[vec![0, 0, 1, 1], vec![0, 0]], None).unwrap();
        assert_eq!(g.n_edges(), 3);
        assert_eq!(g.degree(0), 4);
        assert_eq!(g.degree(1), 2);
        assert_eq!((0..3).filter(|&e| g.is_loop(e)).count(), 1);
        // The two parallel edges are distinct ids paired in rotation order.
        let (p, q) = (g.rotation(0)[2].edge, g.rotation(0)[3].edge);
        assert_ne!(p, q);
        assert_eq!(g.rotation(1)[0].edge, p);
        assert_eq!(g.rotation(1)[1].edge, q);
    }

    #[test]
    fn rejects_asymmetric_and_disconnected_input() {
        assert!(matches!(
            Graph::from_rotation_lists(&[vec![1, 1], vec![0]], None),
            Err(Error::InvalidGraph(_))
        ));
        assert!(matches!(
            Graph::from_rotation_lists(&[vec![1], vec![0], vec![3], vec![2]], None),
            Err(Error::NotConnected)
        ));
        assert!(matches!(
            Graph::from_rotation_lists(&[vec![1], vec![0]], Some(7)),
            Err(Error::InvalidGraph(_))
        ));
    }

    #[test]
    fn subdivision_preserves_rotation_positions() {
        let g = Graph::from_rotation_lists(&[vec![1, 1], vec![0, 0]], None).unwrap();
        let s = g.subdivided(&[3, 1]);
        assert_eq!(s.n_vertices(), 4);
        assert_eq!(s.n_edges(), 4);
        // Edge 0 kept its id for the first piece, still leaving vertex 0 at
        // rotation position 0; the other parallel edge is untouched.
        assert_eq!(s.rotation(0)[0].edge, 0);
        assert_eq!(s.rotation(0)[1], g.rotation(0)[1]);
        assert_eq!(s.endpoints(0), (0, 2));
        assert_eq!(s.degree(2), 2);
        assert_eq!(s.degree(3), 2);
        s.check_connected().unwrap();
    }

    #[test]
    fn subdivision_of_a_loop() {
        let g = Graph::from_rotation_lists(&[vec![0, 0, 1], vec![0]], None).unwrap();
        let s = g.subdivided(&[2, 1]);
        assert_eq!(s.n_vertices(), 3);
        assert_eq!(s.n_edges(), 3);
        assert!((0..3).all(|e| !s.is_loop(e)));
        s.check_connected().unwrap();
    }

    #[test]
    fn subdivide_for_grows_short_paths() {
        let g = Graph::from_rotation_lists(&[vec![1], vec![0]], None).unwrap();
        let s = g.subdivide_for(3);
        assert!(s.n_edges() >= 2);
        s.check_subdivision(3).unwrap();
        assert!(g.check_subdivision(3).is_err());
    }

    #[test]
    fn subdivide_for_leaves_sufficient_graphs_alone() {
        let k5 = complete(5);
        k5.check_subdivision(2).unwrap();
        let s = k5.subdivide_for(2);
        assert_eq!(s.n_vertices(), 5);
        assert_eq!(s.n_edges(), 10);
    }

    #[test]
    fn circle_subdivision_bound() {
        circle(4).check_subdivision(3).unwrap();
        assert!(circle(4).check_subdivision(4).is_err());
        let s = circle(4).subdivide_for(4);
        assert!(s.n_edges() >= 5);
        s.check_subdivision(4).unwrap();
    }

    #[test]
    fn cycle_bound_uses_essential_cycles() {
        // Triangle with a long tail: the cycle has 3 edges, fine for n = 2
        // but not n = 3 even though all paths are long enough.
        let adj = vec![
            vec![1, 2, 3],
            vec![0, 2],
            vec![0, 1],
            vec![0, 4],
            vec![3],
        ];
        let g = Graph::from_rotation_lists(&adj, None).unwrap();
        g.check_subdivision(2).unwrap();
        assert!(g.check_subdivision(3).is_err());
        g.subdivide_for(3).check_subdivision(3).unwrap();
    }

    #[test]
    fn smoothing_contracts_degree_two_chains() {
        let g = tree_two_junctions();
        let s = g.smooth_degree_two().unwrap();
        assert_eq!(s.n_vertices(), 6);
        assert_eq!(s.n_edges(), 5);
        let mut degs: Vec<usize> = (0..6).map(|v| s.degree(v)).collect();
        degs.sort_unstable();
        assert_eq!(degs, [1, 1, 1, 1, 3, 3]);
        s.check_connected().unwrap();
    }

    #[test]
    fn smoothing_preserves_cycle_rank() {
        let s = complete(4).subdivide_for(3);
        assert!(s.n_vertices() > 4);
        let back = s.smooth_degree_two().unwrap();
        assert_eq!(back.n_vertices(), 4);
        assert_eq!(back.n_edges(), 6);
        assert!((0..4).all(|v| back.degree(v) == 3));
    }

    #[test]
    fn smoothing_a_circle_fails() {
        assert!(matches!(
            circle(5).smooth_degree_two(),
            Err(Error::CircleHasNoSmoothingBase)
        ));
    }

    #[test]
    fn essential_structure_of_tree() {
        let g = tree_two_junctions();
        let es = g.essential_structure();
        assert_eq!(es.essential_vertices, vec![2, 4]);
        assert_eq!(es.degree_sequence, vec![3, 3]);
        assert_eq!(es.essential_edges.len(), 5);
        // Components ordered by their smallest attachment: three at vertex 2,
        // then the shared 2-4 path appears once (keyed at 2), two more at 4.
        let firsts: Vec<usize> = es.essential_edges.iter().map(|c| c.attachments[0].0).collect();
        assert_eq!(firsts, vec![2, 2, 2, 4, 4]);
        // The 2-4 path attaches at both junctions.
        let shared = &es.essential_edges[1];
        assert_eq!(shared.attachments.len(), 2);
        assert_eq!(shared.vertices, vec![3]);
    }

    #[test]
    fn essential_structure_of_complete_graph() {
        let es = complete(5).essential_structure();
        assert_eq!(es.essential_vertices.len(), 5);
        assert_eq!(es.essential_edges.len(), 10);
        assert!(es.essential_edges.iter().all(|c| c.edges.len() == 1 && c.vertices.is_empty()));
    }

    #[test]
    fn essential_structure_empty_without_junctions() {
        let g = Graph::from_rotation_lists(&[vec![1], vec![0, 2], vec![1]], None).unwrap();
        let es = g.essential_structure();
        assert!(es.essential_vertices.is_empty());
        assert!(es.essential_edges.is_empty());
    }

    #[test]
    fn component_counts_after_removal() {
        let g = tree_two_junctions();
        assert_eq!(g.components_removed(&[]), 1);
        assert_eq!(g.components_removed(&[2]), 3);
        assert_eq!(g.components_removed(&[2, 4]), 5);
        // Removing adjacent vertices of a complete graph leaves the edge
        // between them as its own open arc.
        assert_eq!(complete(4).components_removed(&[0, 1]), 2);
    }

    #[test]
    fn max_components_over_essential_subsets() {
        let g = tree_two_junctions();
        assert_eq!(g.delta(0), 1);
        assert_eq!(g.delta(1), 3);
        assert_eq!(g.delta(2), 5);
        assert_eq!(g.delta(3), 0);
    }

    #[test]
    fn segments_cover_every_edge_once() {
        let g = tree_two_junctions();
        let segs = g.segments();
        assert_eq!(segs.len(), 5);
        let mut covered: Vec<usize> = segs.iter().flat_map(|(_, _, es)| es.clone()).collect();
        covered.sort_unstable();
        assert_eq!(covered, (0..g.n_edges()).collect::<Vec<_>>());
        let c = circle(6);
        let segs = c.segments();
        assert_eq!(segs.len(), 1);
        assert_eq!(segs[0].0, segs[0].1);
        assert_eq!(segs[0].2.len(), 6);
    }
}
