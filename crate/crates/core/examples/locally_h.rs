//! Connected graphs all of whose vertex neighbourhoods are a given graph.

use std::time::Instant;

use schemeforge::graphs::{extend_locally, named_graph, to_graph6};

fn main() {
    for (h, n_max) in [("C4", 24), ("C5", 24), ("octahedron", 24), ("K3xK2", 15), ("K3", 24), ("K4", 24)] {
        let t = Instant::now();
        let ext = extend_locally(&named_graph(h).unwrap(), n_max).unwrap();
        let found: Vec<String> = ext.graphs.iter().map(|g| format!("{} vertices {}", g.order(), to_graph6(g))).collect();
        println!("locally {h:<10} n <= {n_max}: {:?}  ({} nodes, {:?})", found, ext.nodes, t.elapsed());
    }
}
