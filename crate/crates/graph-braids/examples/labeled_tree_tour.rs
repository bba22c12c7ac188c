//! A tour of the labeled layout: parse a graph file, subdivide it for two
//! strands, walk the depth-first labels, and classify every 1-cell of the
//! two-strand complex as critical, redundant, or collapsible.

use graph_braids::complex::enumerate_cells;
use graph_braids::layout::build_layout_for;
use graph_braids::morse::{classify, Classification};
use graph_braids::parse::parse_graph;

const WHISKER: &str = include_str!("data/whisker.graph");

fn main() {
    let g = parse_graph(WHISKER).unwrap();
    let t = build_layout_for(&g, 2).unwrap();
    let sub = t.graph();
    println!(
        "triangle with whisker, subdivided for two strands: {} vertices, {} edges",
        sub.n_vertices(),
        sub.n_edges()
    );
    println!("deleted edges (not in the spanning tree): {:?}", t.deleted_edges());
    println!("label  vertex  parent  degree");
    for label in 0..sub.n_vertices() {
        let parent = match t.parent_label(label) {
            Some(p) => p.to_string(),
            None => "root".to_string(),
        };
        println!(
            "{label:>5}  {:>6}  {parent:>6}  {:>6}",
            t.vertex_of(label),
            t.degree_of_label(label)
        );
    }

    println!("\n1-cells of the two-strand complex:");
    let mut tally = [0usize; 3];
    for cell in enumerate_cells(&t, 2, 1).unwrap() {
        let class = match classify(&t, &cell) {
            Classification::Critical => {
                tally[0] += 1;
                "critical"
            }
            Classification::Redundant { .. } => {
                tally[1] += 1;
                "redundant"
            }
            Classification::Collapsible { .. } => {
                tally[2] += 1;
                "collapsible"
            }
        };
        println!("  edges {:?} verts {:?}: {class}", cell.edges, cell.verts);
    }
    println!(
        "totals: {} critical, {} redundant, {} collapsible",
        tally[0], tally[1], tally[2]
    );
}
