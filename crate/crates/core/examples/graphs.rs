//! Named graphs, graph6 codes, canonical forms and regular-graph enumeration.

use schemeforge::graphs::{enumerate_regular_graphs, from_graph6, is_isomorphic, named_graph, to_graph6};

fn main() {
    for name in ["K3,3", "K3xK3", "J(5,2)", "crown", "Q4", "16-cell", "icosahedron"] {
        let g = named_graph(name).unwrap();
        println!(
            "{name:<12} n = {:<3} k = {:<2} diameter {} intersection array {:?} graph6 {}",
            g.order(),
            g.regularity().unwrap(),
            g.diameter(),
            g.intersection_array(),
            to_graph6(&g)
        );
    }
    let petersen = named_graph("petersen").unwrap();
    let back = from_graph6(&to_graph6(&petersen)).unwrap();
    println!("graph6 round trip isomorphic: {}", is_isomorphic(&petersen, &back));
    for n in 4..=9 {
        let counts: Vec<usize> = (0..n).map(|k| enumerate_regular_graphs(n, k).len()).collect();
        println!("regular graphs on {n} vertices by valency: {counts:?}");
    }
}
