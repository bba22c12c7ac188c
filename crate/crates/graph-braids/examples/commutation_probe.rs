//! Experimental: does the strand-adding action commute with the reduced
//! differential? On trees the differential vanishes, so the answer is
//! trivially yes; on graphs with cycles the probe compares both sides term
//! by term and reports, never asserts.

use graph_braids::graph::Graph;
use graph_braids::layout::build_layout_for;
use graph_braids::morse::commutation_probe;

fn main() {
    let whisker = Graph::from_rotation_lists(
        &[vec![1, 2, 3], vec![0, 2], vec![0, 1], vec![0]],
        None,
    )
    .unwrap();
    let k4: Graph = Graph::from_rotation_lists(
        &(0..4).map(|v| (0..4).filter(|&w| w != v).collect()).collect::<Vec<_>>(),
        None,
    )
    .unwrap();

    for (name, g, i, n_max) in [("triangle with whisker", &whisker, 1, 4), ("K4", &k4, 1, 3)] {
        // headroom beyond n_max + 1: action images on short arcs can saturate
        // a component, and longer arcs keep every image representable
        let t = build_layout_for(g, n_max + 3).unwrap();
        let report = commutation_probe(&t, i, n_max).unwrap();
        println!(
            "{name}: checked {} (cell, arc) pairs in degree i = {i}, n <= {n_max}",
            report.checked
        );
        if report.mismatches.is_empty() {
            println!("  no mismatches found");
        }
        for m in &report.mismatches {
            println!(
                "  mismatch at degree {}, arc {}: cell verts {:?}",
                m.degree, m.essential_edge, m.cell.cell.verts
            );
            println!("    differential of image: {} terms", m.lhs.len());
            println!("    image of differential: {} terms", m.rhs.len());
        }
        println!();
    }
}
