//! Homology of two strands on the complete graphs K4 and K5 and on K33.
//! K5 and K33 pick up a Z/2 in degree one; K4, which is planar, does not.
//! Torsion in H_1 is exactly the obstruction to planarity.

use graph_braids::graph::Graph;
use graph_braids::layout::build_layout_for;
use graph_braids::morse::morse_homology;

fn complete(k: usize) -> Graph {
    let adj: Vec<Vec<usize>> =
        (0..k).map(|v| (0..k).filter(|&w| w != v).collect()).collect();
    Graph::from_rotation_lists(&adj, None).unwrap()
}

fn k33() -> Graph {
    let adj: Vec<Vec<usize>> = (0..6)
        .map(|v| if v < 3 { vec![3, 4, 5] } else { vec![0, 1, 2] })
        .collect();
    Graph::from_rotation_lists(&adj, None).unwrap()
}

fn show(name: &str, g: &Graph, planar: bool) {
    let t = build_layout_for(g, 2).unwrap();
    let h = morse_homology(&t, 2).unwrap();
    println!("{name}, two strands:");
    for (i, group) in h.iter().enumerate() {
        let mut parts = Vec::new();
        if group.free_rank > 0 {
            parts.push(format!("Z^{}", group.free_rank));
        }
        for d in &group.torsion {
            parts.push(format!("Z/{d}"));
        }
        let display = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
        println!("  H_{i} = {display}");
    }
    let has_torsion = h.iter().any(|g| !g.torsion.is_empty());
    assert_eq!(has_torsion, !planar);
    println!("  torsion present: {has_torsion} (planar: {planar})\n");
}

fn main() {
    show("K4", &complete(4), true);
    show("K5", &complete(5), false);
    show("K33", &k33(), false);
}
