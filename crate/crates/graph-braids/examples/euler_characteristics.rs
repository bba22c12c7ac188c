//! Euler characteristics of unordered configuration spaces, read off a
//! rational generating function over the smoothed graph. On trees the
//! characteristic is also a polynomial in the strand count.

use graph_braids::formulas::{euler_gf, euler_polynomial};
use graph_braids::graph::Graph;

fn from_lists(adj: Vec<Vec<usize>>) -> Graph {
    Graph::from_rotation_lists(&adj, None).unwrap()
}

fn main() {
    let tripod = from_lists(vec![
        vec![1, 3, 5],
        vec![0, 2],
        vec![1],
        vec![0, 4],
        vec![3],
        vec![0, 6],
        vec![5],
    ]);
    let k5 = from_lists((0..5).map(|v| (0..5).filter(|&w| w != v).collect()).collect());
    let whisker = from_lists(vec![vec![1, 2, 3], vec![0, 2], vec![0, 1], vec![0]]);

    for (name, g) in [("Y graph", &tripod), ("K5", &k5), ("triangle with whisker", &whisker)] {
        let gf = euler_gf(g).unwrap();
        println!("{name}: chi generating function = {}", gf.display_with("t"));
        let values: Vec<String> =
            (0..=6).map(|n| gf.coefficient(n).to_integer().to_string()).collect();
        println!("  chi for n = 0..=6: {}", values.join(", "));
        match euler_polynomial(g) {
            Ok(p) => println!("  as a polynomial in n: {}", p.display_with("n")),
            Err(e) => println!("  no closed polynomial: {e}"),
        }
        println!();
    }

    // the sign in the numerator factors matters: two strands on the Y graph
    // live on a circle, so chi must be zero
    let gf = euler_gf(&tripod).unwrap();
    assert!(num_traits::Zero::is_zero(&gf.coefficient(2)));
    println!("two strands on the Y graph: chi = {} (a circle)", gf.coefficient(2));
}
