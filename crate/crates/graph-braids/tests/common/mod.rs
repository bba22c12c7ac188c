//! Shared fixtures: a corpus of small trees (every one with at most six
//! essential edges and essential degrees at most five) plus the non-tree
//! graphs the oracles need. Builders return graphs with rotation lists in
//! a fixed order so every run sees identical layouts.

#![allow(dead_code)]

use graph_braids::graph::Graph;

fn add_path(adj: &mut Vec<Vec<usize>>, from: usize, len: usize) -> usize {
    let mut prev = from;
    for _ in 0..len {
        let v = adj.len();
        adj.push(vec![prev]);
        adj[prev].push(v);
        prev = v;
    }
    prev
}

fn build(adj: Vec<Vec<usize>>) -> Graph {
    Graph::from_rotation_lists(&adj, None).expect("fixture graph is well formed")
}

pub fn path_graph(edges: usize) -> Graph {
    let mut adj = vec![Vec::new()];
    add_path(&mut adj, 0, edges);
    build(adj)
}

/// One essential vertex with a leg of the given length per entry.
pub fn spider(legs: &[usize]) -> Graph {
    let mut adj = vec![Vec::new()];
    for &len in legs {
        add_path(&mut adj, 0, len);
    }
    build(adj)
}

/// Two essential vertices of degrees da and db joined by a bridge arc,
/// remaining degree made up by legs of the given length.
pub fn two_essential(da: usize, db: usize, bridge: usize, leg: usize) -> Graph {
    let mut adj = vec![Vec::new()];
    let b = add_path(&mut adj, 0, bridge);
    for _ in 0..da - 1 {
        add_path(&mut adj, 0, leg);
    }
    for _ in 0..db - 1 {
        add_path(&mut adj, b, leg);
    }
    build(adj)
}

/// Three essential vertices in a row with unit arcs and unit legs; the
/// degree at each position is prescribed.
pub fn spine3(d_left: usize, d_mid: usize, d_right: usize) -> Graph {
    let mut adj = vec![Vec::new()];
    let mid = add_path(&mut adj, 0, 1);
    let right = add_path(&mut adj, mid, 1);
    for _ in 0..d_left - 1 {
        add_path(&mut adj, 0, 1);
    }
    for _ in 0..d_mid - 2 {
        add_path(&mut adj, mid, 1);
    }
    for _ in 0..d_right - 1 {
        add_path(&mut adj, right, 1);
    }
    build(adj)
}

/// The two-branch tree drawn with a five-vertex path skeleton: two
/// degree-3 vertices two edges apart, every leg two edges long.
pub fn fig_tree() -> Graph {
    two_essential(3, 3, 2, 2)
}

pub fn star3() -> Graph {
    spider(&[1, 1, 1])
}

pub fn tripod() -> Graph {
    spider(&[2, 2, 2])
}

pub fn complete(k: usize) -> Graph {
    let adj: Vec<Vec<usize>> =
        (0..k).map(|v| (0..k).filter(|&w| w != v).collect()).collect();
    build(adj)
}

pub fn k33() -> Graph {
    let adj: Vec<Vec<usize>> = (0..6)
        .map(|v| {
            if v < 3 {
                vec![3, 4, 5]
            } else {
                vec![0, 1, 2]
            }
        })
        .collect();
    build(adj)
}

pub fn cycle_whisker() -> Graph {
    build(vec![vec![1, 2, 3], vec![0, 2], vec![0, 1], vec![0]])
}

/// The tree corpus: at least ten trees, stars of degree 3 through 5, and
/// pairs with equal degree sequences but different shapes.
pub fn corpus_trees() -> Vec<(&'static str, Graph)> {
    vec![
        ("path4", path_graph(4)),
        ("star3", star3()),
        ("tripod", tripod()),
        ("spider123", spider(&[1, 2, 3])),
        ("star4", spider(&[1, 1, 1, 1])),
        ("star4long", spider(&[2, 2, 2, 2])),
        ("star5", spider(&[1, 1, 1, 1, 1])),
        ("figtree", fig_tree()),
        ("hmin", two_essential(3, 3, 1, 1)),
        ("t34", two_essential(3, 4, 1, 1)),
        ("t34long", two_essential(3, 4, 2, 1)),
    ]
}

/// Pairs from the corpus with equal degree sequences but different shapes,
/// plus a three-vertex pair distinguished by the position of the degree-4
/// vertex.
pub fn degree_sequence_pairs() -> Vec<(&'static str, Graph, &'static str, Graph)> {
    vec![
        ("star3", star3(), "tripod", tripod()),
        ("figtree", fig_tree(), "hmin", two_essential(3, 3, 1, 1)),
        ("t34", two_essential(3, 4, 1, 1), "t34long", two_essential(3, 4, 2, 1)),
        ("spine343", spine3(3, 4, 3), "spine433", spine3(4, 3, 3)),
    ]
}

pub fn nontree_graphs() -> Vec<(&'static str, Graph, usize)> {
    vec![
        ("k5", complete(5), 2),
        ("k33", k33(), 2),
        ("k4", complete(4), 2),
        ("cyclewhisker", cycle_whisker(), 3),
    ]
}

/// Canonical encoding of an unlabeled tree: root at the centroid (smaller
/// encoding of the two when the centroid is an edge) and sort child
/// encodings recursively. Equal strings iff isomorphic.
pub fn tree_code(g: &Graph) -> String {
    let nv = g.n_vertices();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for e in 0..g.n_edges() {
        let (a, b) = g.endpoints(e);
        adj[a].push(b);
        adj[b].push(a);
    }
    // peel leaves to find the centroid vertex or edge
    let mut deg: Vec<usize> = adj.iter().map(|a| a.len()).collect();
    let mut alive = nv;
    let mut removed = vec![false; nv];
    let mut frontier: Vec<usize> = (0..nv).filter(|&v| deg[v] <= 1).collect();
    while alive > 2 {
        let mut next = Vec::new();
        for &v in &frontier {
            removed[v] = true;
            alive -= 1;
            for &w in &adj[v] {
                if !removed[w] {
                    deg[w] -= 1;
                    if deg[w] == 1 {
                        next.push(w);
                    }
                }
            }
        }
        frontier = next;
    }
    let centers: Vec<usize> = (0..nv).filter(|&v| !removed[v]).collect();
    fn encode(adj: &[Vec<usize>], v: usize, parent: Option<usize>) -> String {
        let mut kids: Vec<String> = adj[v]
            .iter()
            .filter(|&&w| Some(w) != parent)
            .map(|&w| encode(adj, w, Some(v)))
            .collect();
        kids.sort();
        format!("({})", kids.join(""))
    }
    let mut codes: Vec<String> =
        centers.iter().map(|&c| encode(&adj, c, None)).collect();
    codes.sort();
    codes[0].clone()
}
