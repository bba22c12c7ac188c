//! Critical i-cells across all strand counts form a module over a
//! polynomial ring with one variable per essential edge: the variable for
//! an arc adds a strand to that arc's pile. This example lists the module's
//! summands with their Hilbert series, shows the finite generator set, and
//! applies the action to walk one degree up.

use graph_braids::formulas::{hilbert_series, summands};
use graph_braids::graph::Graph;
use graph_braids::layout::build_layout_for;
use graph_braids::morse::{critical_cells, generators, sg_action};

fn main() {
    // degree-4 star: one essential vertex, directions 2 and 3 available
    let star4 = Graph::from_rotation_lists(
        &[vec![1, 2, 3, 4], vec![0], vec![0], vec![0], vec![0]],
        None,
    )
    .unwrap();
    let t = build_layout_for(&star4, 6).unwrap();

    println!("summands of the degree-one critical cell module on the 4-star:");
    for d in summands(&t, 1).unwrap() {
        let series = hilbert_series(&d, 1);
        println!(
            "  essential vertices {:?}, branch weights {:?}, {} components: {}",
            d.vbar,
            d.lbar,
            d.mu_vbar,
            series.display_with("t")
        );
    }

    let gens = generators(&t, 1).unwrap();
    println!("\ngenerators in degree one (critical cells of degree <= 2):");
    for g in &gens {
        let tag = if g.minimal { "minimal" } else { "reachable" };
        println!(
            "  degree {}, edges {:?}, vertices {:?} ({tag})",
            g.cell.degree, g.cell.cell.edges, g.cell.cell.verts
        );
    }

    // multiply one generator by each arc variable
    let c = &critical_cells(&t, 2, 1).unwrap()[0];
    println!("\naction on a degree-2 critical cell:");
    let n_arcs = t.essential().essential_edges.len();
    for ee in 0..n_arcs {
        match sg_action(&t, c, ee) {
            Ok(image) => println!(
                "  arc {ee}: degree {} cell with vertices {:?}",
                image.degree, image.cell.verts
            ),
            Err(e) => println!("  arc {ee}: {e}"),
        }
    }
}
