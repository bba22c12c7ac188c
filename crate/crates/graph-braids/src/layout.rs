use crate::error::{Error, Result};
use crate::graph::{EdgeEnd, EssentialStructure, Graph};

/// A rooted spanning tree with the depth-first labeling and the edge order
/// that the gradient field is built on.
///
/// Labels are 0..V-1 with the root at 0; children of a vertex are explored
/// leftmost-first relative to the arrival direction, i.e. rotation order
/// starting just after the entering end. Every tree edge then runs from its
/// smaller-labeled endpoint tau to its larger iota, and tau is the parent.
#[derive(Debug, Clone)]
pub struct LabeledTree {
    g: Graph,
    label_of: Vec<usize>,
    vertex_of: Vec<usize>,
    parent_edge_v: Vec<Option<usize>>,
    is_tree: Vec<bool>,
    deleted: Vec<usize>,
    children: Vec<Vec<usize>>,
    dir_index: Vec<[usize; 2]>,
    edge_rank: Vec<usize>,
    edge_of_rank: Vec<usize>,
    essential: EssentialStructure,
    escomp_of_vertex: Vec<Option<usize>>,
}

/// Spanning tree + labeling for a graph that is already subdivided as far as
/// the caller needs. Deterministic in the rotation system and the root.
pub fn build_layout(g: &Graph) -> Result<LabeledTree> {
    let nv = g.n_vertices();
    let ne = g.n_edges();
    let root = g.root();
    if g.is_tree() && nv >= 2 && g.degree(root) != 1 {
        return Err(Error::InvalidGraph(format!(
            "tree root {root} has degree {}, expected a boundary vertex",
            g.degree(root)
        )));
    }

    let mut is_tree = vec![false; ne];
    dfs_tree(g, &mut is_tree);
    swap_until_essential_adjacent(g, &mut is_tree)?;

    // Relabel by DFS restricted to the (possibly repaired) tree. Arrival
    // rotation positions drive both the label order and the direction data.
    let mut label_of = vec![usize::MAX; nv];
    let mut vertex_of = vec![usize::MAX; nv];
    let mut parent_edge_v = vec![None; nv];
    let mut arrival_pos: Vec<Option<usize>> = vec![None; nv];
    let mut next_label = 0usize;
    struct Frame {
        v: usize,
        k: usize,
    }
    label_of[root] = 0;
    vertex_of[0] = root;
    next_label += 1;
    let mut stack = vec![Frame { v: root, k: 0 }];
    while let Some(top) = stack.last_mut() {
        let v = top.v;
        let deg = g.degree(v);
        if top.k == deg {
            stack.pop();
            continue;
        }
        let pos = match arrival_pos[v] {
            None => top.k,
            Some(p) => (p + 1 + top.k) % deg,
        };
        top.k += 1;
        let end = g.rotation(v)[pos];
        if !is_tree[end.edge] {
            continue;
        }
        let w = if g.is_loop(end.edge) { v } else { g.edge_other(end.edge, v) };
        if label_of[w] != usize::MAX {
            continue; // the end we entered by
        }
        label_of[w] = next_label;
        vertex_of[next_label] = w;
        next_label += 1;
        parent_edge_v[w] = Some(end.edge);
        let far = EdgeEnd { edge: end.edge, side: 1 - end.side };
        arrival_pos[w] = Some(g.end_position(far).1);
        stack.push(Frame { v: w, k: 0 });
    }
    debug_assert_eq!(next_label, nv);

    let mut dir_index = vec![[usize::MAX; 2]; ne];
    for (v, &arrival) in arrival_pos.iter().enumerate() {
        let deg = g.degree(v);
        for k in 0..deg {
            let (pos, d) = match arrival {
                None => (k, k + 1),
                Some(p) if k == 0 => (p, 0),
                Some(p) => ((p + k) % deg, k),
            };
            let end = g.rotation(v)[pos];
            dir_index[end.edge][end.side as usize] = d;
        }
    }

    let deleted: Vec<usize> = (0..ne).filter(|&e| !is_tree[e]).collect();
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for v in 0..nv {
        if let Some(e) = parent_edge_v[v] {
            let p = g.edge_other(e, v);
            children[label_of[p]].push(label_of[v]);
        }
    }
    for c in &mut children {
        c.sort_unstable();
    }

    let mut order: Vec<usize> = (0..ne).collect();
    let key = |e: usize| {
        let (a, b) = g.endpoints(e);
        let (la, lb) = (label_of[a], label_of[b]);
        (la.min(lb), la.max(lb), e)
    };
    order.sort_unstable_by_key(|&e| key(e));
    let mut edge_rank = vec![0usize; ne];
    for (r, &e) in order.iter().enumerate() {
        edge_rank[e] = r;
    }

    let essential = g.essential_structure();
    let mut escomp_of_vertex = vec![None; nv];
    for (idx, comp) in essential.essential_edges.iter().enumerate() {
        for &v in &comp.vertices {
            escomp_of_vertex[v] = Some(idx);
        }
    }

    Ok(LabeledTree {
        g: g.clone(),
        label_of,
        vertex_of,
        parent_edge_v,
        is_tree,
        deleted,
        children,
        dir_index,
        edge_rank,
        edge_of_rank: order,
        essential,
        escomp_of_vertex,
    })
}

/// Subdivide for n strands and lay out. Edges joining two essential vertices
/// are split once up front (loops included) so that a spanning tree can hold
/// a representative of every essential edge and deleted edges can always be
/// pushed against essential vertices.
pub fn build_layout_for(g: &Graph, n: usize) -> Result<LabeledTree> {
    let mut parts = vec![1usize; g.n_edges()];
    for (e, part) in parts.iter_mut().enumerate() {
        let (a, b) = g.endpoints(e);
        if g.degree(a) >= 3 && g.degree(b) >= 3 {
            *part = 2;
        }
    }
    let pre = g.subdivided(&parts);
    build_layout(&pre.subdivide_for(n.max(1)))
}

/// DFS over the full rotation system; edges to already-visited vertices are
/// left out of the tree.
fn dfs_tree(g: &Graph, is_tree: &mut [bool]) {
    let nv = g.n_vertices();
    let root = g.root();
    let mut visited = vec![false; nv];
    let mut seen_edge = vec![false; g.n_edges()];
    let mut arrival: Vec<Option<usize>> = vec![None; nv];
    struct Frame {
        v: usize,
        k: usize,
    }
    visited[root] = true;
    let mut stack = vec![Frame { v: root, k: 0 }];
    while let Some(top) = stack.last_mut() {
        let v = top.v;
        let deg = g.degree(v);
        if top.k == deg {
            stack.pop();
            continue;
        }
        let pos = match arrival[v] {
            None => top.k,
            Some(p) => (p + 1 + top.k) % deg,
        };
        top.k += 1;
        let end = g.rotation(v)[pos];
        if seen_edge[end.edge] {
            continue;
        }
        seen_edge[end.edge] = true;
        let w = if g.is_loop(end.edge) { v } else { g.edge_other(end.edge, v) };
        if !visited[w] {
            visited[w] = true;
            is_tree[end.edge] = true;
            let far = EdgeEnd { edge: end.edge, side: 1 - end.side };
            arrival[w] = Some(g.end_position(far).1);
            stack.push(Frame { v: w, k: 0 });
        }
    }
}

/// Repair the spanning tree until every deleted edge touches an essential
/// vertex. A violating deleted edge closes a cycle whose interior must pass
/// through some essential vertex (otherwise the graph would be a circle), so
/// a tree edge at that vertex can take its place. Each swap settles one
/// violation for good. Graphs without essential vertices are left alone.
fn swap_until_essential_adjacent(g: &Graph, is_tree: &mut [bool]) -> Result<()> {
    let nv = g.n_vertices();
    let has_essential = (0..nv).any(|v| g.degree(v) >= 3);
    if !has_essential {
        return Ok(());
    }
    let essential_end = |e: usize| {
        let (a, b) = g.endpoints(e);
        g.degree(a) >= 3 || g.degree(b) >= 3
    };
    loop {
        let bad = (0..g.n_edges()).find(|&e| !is_tree[e] && !essential_end(e));
        let Some(d) = bad else { return Ok(()) };
        let (a, b) = g.endpoints(d);
        let cycle = tree_path(g, is_tree, a, b);
        let f = cycle
            .iter()
            .copied()
            .filter(|&e| essential_end(e))
            .min()
            .ok_or_else(|| {
                Error::Internal(format!(
                    "cycle through deleted edge {a}-{b} avoids every essential vertex"
                ))
            })?;
        is_tree[d] = true;
        is_tree[f] = false;
    }
}

/// Edges of the unique tree path between a and b.
fn tree_path(g: &Graph, is_tree: &[bool], a: usize, b: usize) -> Vec<usize> {
    let nv = g.n_vertices();
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; nv];
    let mut seen = vec![false; nv];
    seen[a] = true;
    let mut queue = std::collections::VecDeque::from([a]);
    while let Some(v) = queue.pop_front() {
        if v == b {
            break;
        }
        for end in g.rotation(v) {
            if !is_tree[end.edge] {
                continue;
            }
            let w = if g.is_loop(end.edge) { v } else { g.edge_other(end.edge, v) };
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some((v, end.edge));
                queue.push_back(w);
            }
        }
    }
    let mut path = Vec::new();
    let mut v = b;
    while v != a {
        let (u, e) = parent[v].expect("tree connects all vertices");
        path.push(e);
        v = u;
    }
    path
}

impl LabeledTree {
    pub fn graph(&self) -> &Graph {
        &self.g
    }

    pub fn n_vertices(&self) -> usize {
        self.g.n_vertices()
    }

    pub fn n_edges(&self) -> usize {
        self.g.n_edges()
    }

    pub fn label_of(&self, v: usize) -> usize {
        self.label_of[v]
    }

    pub fn vertex_of(&self, label: usize) -> usize {
        self.vertex_of[label]
    }

    /// Tree edge to the parent, by vertex label. None exactly at the root.
    pub fn parent_edge(&self, label: usize) -> Option<usize> {
        self.parent_edge_v[self.vertex_of[label]]
    }

    pub fn parent_label(&self, label: usize) -> Option<usize> {
        self.parent_edge(label).map(|e| {
            let v = self.vertex_of[label];
            self.label_of[self.g.edge_other(e, v)]
        })
    }

    /// Smaller endpoint label. Equal to iota only on a loop.
    pub fn tau(&self, e: usize) -> usize {
        let (a, b) = self.g.endpoints(e);
        self.label_of[a].min(self.label_of[b])
    }

    pub fn iota(&self, e: usize) -> usize {
        let (a, b) = self.g.endpoints(e);
        self.label_of[a].max(self.label_of[b])
    }

    pub fn is_tree_edge(&self, e: usize) -> bool {
        self.is_tree[e]
    }

    pub fn deleted_edges(&self) -> &[usize] {
        &self.deleted
    }

    /// Child labels of a vertex label, ascending.
    pub fn children(&self, label: usize) -> &[usize] {
        &self.children[label]
    }

    pub fn degree_of_label(&self, label: usize) -> usize {
        self.g.degree(self.vertex_of[label])
    }

    /// Rank of an edge in the canonical order: lexicographic by
    /// (tau label, iota label), ties between parallel edges by id.
    pub fn edge_rank(&self, e: usize) -> usize {
        self.edge_rank[e]
    }

    pub fn edge_of_rank(&self, rank: usize) -> usize {
        self.edge_of_rank[rank]
    }

    pub fn dir_of_end(&self, end: EdgeEnd) -> usize {
        self.dir_index[end.edge][end.side as usize]
    }

    /// Direction of edge e at vertex v: 0 looks toward the root, 1.. follow
    /// the exploration order. At the root the explored ends count from 1.
    /// A loop takes the smaller of its two end directions.
    pub fn direction_index(&self, v: usize, e: usize) -> Result<usize> {
        let (a, b) = self.g.endpoints(e);
        if a != v && b != v {
            return Err(Error::NotIncident { edge: e, vertex: v });
        }
        let mut dirs = Vec::new();
        if a == v {
            dirs.push(self.dir_index[e][0]);
        }
        if b == v {
            dirs.push(self.dir_index[e][1]);
        }
        Ok(dirs.into_iter().min().unwrap())
    }

    pub fn essential(&self) -> &EssentialStructure {
        &self.essential
    }

    /// Index into essential().essential_edges of the component holding a
    /// non-essential vertex; None on essential vertices and on graphs with
    /// no essential vertex at all.
    pub fn essential_component_of(&self, v: usize) -> Option<usize> {
        self.escomp_of_vertex[v]
    }

    /// Labels of essential vertices, ascending.
    pub fn essential_labels(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .essential
            .essential_vertices
            .iter()
            .map(|&v| self.label_of[v])
            .collect();
        out.sort_unstable();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tree_two_junctions() -> Graph {
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

    fn theta_rooted_mid_chain() -> Graph {
        // Junctions 0 and 1 joined by three chains; the root sits inside the
        // longest chain so the plain DFS strands a deleted edge between two
        // degree-2 vertices and the repair pass has to act.
        let adj = vec![
            vec![2, 4, 6],
            vec![8, 5, 7],
            vec![0, 3],
            vec![2, 8],
            vec![0, 5],
            vec![4, 1],
            vec![0, 7],
            vec![6, 1],
            vec![3, 1],
        ];
        Graph::from_rotation_lists(&adj, Some(3)).unwrap()
    }

    fn subtree_sizes(t: &LabeledTree) -> Vec<usize> {
        let nv = t.n_vertices();
        let mut size = vec![1usize; nv];
        for l in (1..nv).rev() {
            let p = t.parent_label(l).unwrap();
            size[p] += size[l];
        }
        size
    }

    #[test]
    fn figure_tree_is_labeled_in_place() {
        let g = tree_two_junctions();
        let t = build_layout(&g).unwrap();
        for v in 0..g.n_vertices() {
            assert_eq!(t.label_of(v), v);
            assert_eq!(t.vertex_of(v), v);
        }
        assert!(t.deleted_edges().is_empty());
        for l in 1..g.n_vertices() {
            assert!(t.parent_label(l).unwrap() < l);
        }
        assert_eq!(t.children(2), &[3, 9]);
        assert_eq!(t.children(4), &[5, 7]);
    }

    #[test]
    fn direction_indices_follow_exploration_order() {
        let g = tree_two_junctions();
        let t = build_layout(&g).unwrap();
        let edge_between = |a: usize, b: usize| {
            (0..g.n_edges())
                .find(|&e| {
                    let (x, y) = g.endpoints(e);
                    (x, y) == (a, b) || (x, y) == (b, a)
                })
                .unwrap()
        };
        assert_eq!(t.direction_index(4, edge_between(3, 4)).unwrap(), 0);
        assert_eq!(t.direction_index(4, edge_between(4, 5)).unwrap(), 1);
        assert_eq!(t.direction_index(4, edge_between(4, 7)).unwrap(), 2);
        assert_eq!(t.direction_index(2, edge_between(1, 2)).unwrap(), 0);
        assert_eq!(t.direction_index(2, edge_between(2, 3)).unwrap(), 1);
        assert_eq!(t.direction_index(2, edge_between(2, 9)).unwrap(), 2);
        assert!(matches!(
            t.direction_index(2, edge_between(0, 1)),
            Err(Error::NotIncident { .. })
        ));
    }

    #[test]
    fn edge_order_is_lexicographic_in_labels() {
        let g = tree_two_junctions();
        let t = build_layout(&g).unwrap();
        for r in 0..g.n_edges() {
            assert_eq!(t.edge_rank(t.edge_of_rank(r)), r);
        }
        let pairs: Vec<(usize, usize)> = (0..g.n_edges())
            .map(|r| {
                let e = t.edge_of_rank(r);
                (t.tau(e), t.iota(e))
            })
            .collect();
        let mut sorted = pairs.clone();
        sorted.sort_unstable();
        assert_eq!(pairs, sorted);
    }

    #[test]
    fn path_labels_increase_from_the_root() {
        let g = Graph::from_rotation_lists(&[vec![1], vec![0, 2], vec![1, 3], vec![2]], None)
            .unwrap();
        let t = build_layout(&g).unwrap();
        assert_eq!((0..4).map(|v| t.label_of(v)).collect::<Vec<_>>(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn branches_get_contiguous_label_blocks() {
        for t in [
            build_layout(&tree_two_junctions()).unwrap(),
            build_layout(&theta_rooted_mid_chain()).unwrap(),
        ] {
            let size = subtree_sizes(&t);
            for l in 0..t.n_vertices() {
                let mut next = l + 1;
                for &c in t.children(l) {
                    assert_eq!(c, next, "children start right after the parent block so far");
                    next += size[c];
                }
            }
        }
    }

    #[test]
    fn repair_pass_moves_deleted_edges_to_junctions() {
        let g = theta_rooted_mid_chain();
        let t = build_layout(&g).unwrap();
        assert_eq!(t.deleted_edges(), &[0, 2]);
        for &d in t.deleted_edges() {
            let (a, b) = g.endpoints(d);
            assert!(g.degree(a) >= 3 || g.degree(b) >= 3);
        }
        assert_eq!(t.label_of(3), 0);
        assert_eq!(t.label_of(8), 2);
        assert_eq!(t.label_of(0), 6);
        let tree_count = (0..g.n_edges()).filter(|&e| t.is_tree_edge(e)).count();
        assert_eq!(tree_count, g.n_vertices() - 1);
    }

    #[test]
    fn complete_graph_layout_after_subdivision() {
        let adj: Vec<Vec<usize>> = (0..5)
            .map(|v| (0..5).filter(|&u| u != v).collect())
            .collect();
        let k5 = Graph::from_rotation_lists(&adj, None).unwrap();
        let t = build_layout_for(&k5, 2).unwrap();
        assert_eq!(t.n_vertices(), 15);
        assert_eq!(t.n_edges(), 20);
        assert_eq!(t.deleted_edges().len(), 6);
        for &d in t.deleted_edges() {
            let (a, b) = t.graph().endpoints(d);
            assert!(t.graph().degree(a) >= 3 || t.graph().degree(b) >= 3);
        }
    }

    #[test]
    fn directions_at_junctions_survive_subdivision() {
        let g = tree_two_junctions();
        let before = build_layout(&g).unwrap();
        let after = build_layout_for(&g, 6).unwrap();
        for v in [2usize, 4] {
            let dirs = |t: &LabeledTree| -> Vec<usize> {
                t.graph().rotation(v).iter().map(|&end| t.dir_of_end(end)).collect()
            };
            assert_eq!(dirs(&before), dirs(&after));
        }
    }

    #[test]
    fn tree_rooted_away_from_the_boundary_is_rejected() {
        let g = tree_two_junctions().with_root(2).unwrap();
        assert!(matches!(build_layout(&g), Err(Error::InvalidGraph(_))));
    }

    #[test]
    fn circle_layout_keeps_one_deleted_edge() {
        let adj: Vec<Vec<usize>> = (0..5)
            .map(|v| vec![(v + 4) % 5, (v + 1) % 5])
            .collect();
        let g = Graph::from_rotation_lists(&adj, None).unwrap();
        let t = build_layout(&g).unwrap();
        assert_eq!(t.deleted_edges().len(), 1);
        let labels: Vec<usize> = (0..5).map(|v| t.label_of(v)).collect();
        let mut sorted = labels.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![0, 1, 2, 3, 4]);
    }
}
