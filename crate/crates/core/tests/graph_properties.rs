//! Graph invariants under random relabelling, plus locally-H extension outputs.

use std::collections::VecDeque;

use proptest::prelude::*;
use schemeforge::graphs::{
    canonical_form, extend_locally, from_graph6, is_isomorphic, is_locally, named_graph, to_graph6, Graph,
};

fn random_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut g = Graph::empty(n);
            let mut it = bits.into_iter();
            for u in 0..n {
                for v in u + 1..n {
                    if it.next().unwrap() {
                        g.add_edge(u, v);
                    }
                }
            }
            g
        })
    })
}

fn graph_and_perm(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    random_graph(max_n).prop_flat_map(|g| {
        let n = g.order();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

/// Breadth-first distances from the edge list alone.
fn bfs(g: &Graph, x: usize) -> Vec<Option<usize>> {
    let edges = g.edges();
    let mut dist = vec![None; g.order()];
    dist[x] = Some(0);
    let mut queue = VecDeque::from([x]);
    while let Some(u) = queue.pop_front() {
        for &(a, b) in &edges {
            for (p, q) in [(a, b), (b, a)] {
                if p == u && dist[q].is_none() {
                    dist[q] = Some(dist[u].unwrap() + 1);
                    queue.push_back(q);
                }
            }
        }
    }
    dist
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn distances_match_breadth_first_search(g in random_graph(14)) {
        for x in 0..g.order() {
            prop_assert_eq!(g.distances_from(x), bfs(&g, x));
        }
        let all_reached = (0..g.order()).all(|x| bfs(&g, x).iter().all(Option::is_some));
        prop_assert_eq!(g.is_connected(), all_reached);
    }

    #[test]
    fn distance_graphs_partition_the_pairs(g in random_graph(12)) {
        prop_assume!(g.is_connected());
        let n = g.order();
        let d = g.diameter();
        let mut seen = vec![vec![0usize; n]; n];
        for i in 1..=d {
            let gi = g.distance_i_graph(i).graph;
            for (u, v) in gi.edges() {
                seen[u][v] += 1;
                seen[v][u] += 1;
                prop_assert_eq!(bfs(&g, u)[v], Some(i));
            }
        }
        for u in 0..n {
            for v in 0..n {
                prop_assert_eq!(seen[u][v], (u != v) as usize);
            }
        }
    }

    #[test]
    fn complement_is_an_involution(g in random_graph(14)) {
        let c = g.complement();
        prop_assert_eq!(c.complement(), g.clone());
        let n = g.order();
        prop_assert_eq!(c.edge_count() + g.edge_count(), n * (n - 1) / 2);
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    prop_assert_ne!(c.has_edge(u, v), g.has_edge(u, v));
                }
            }
        }
    }

    #[test]
    fn canonical_form_ignores_labels((g, perm) in graph_and_perm(10)) {
        let h = g.relabel(&perm);
        prop_assert_eq!(canonical_form(&h), canonical_form(&g));
        prop_assert!(is_isomorphic(&g, &h));
        prop_assert_eq!(from_graph6(&to_graph6(&g)).unwrap(), g.clone());
    }

    #[test]
    fn one_edge_changes_the_class(g in random_graph(9), u in 0usize..9, v in 0usize..9) {
        let n = g.order();
        prop_assume!(u < n && v < n && u != v);
        let mut h = g.clone();
        if g.has_edge(u, v) { h.remove_edge(u, v) } else { h.add_edge(u, v) }
        prop_assert!(!is_isomorphic(&g, &h));
    }
}

#[test]
fn locally_h_outputs_are_locally_h() {
    for (h, n_max) in [("K3", 12), ("C4", 12), ("C5", 12), ("K3xK2", 10), ("2K2", 9), ("octahedron", 8)] {
        let local = named_graph(h).unwrap();
        let ext = extend_locally(&local, n_max).unwrap();
        for (i, g) in ext.graphs.iter().enumerate() {
            assert!(g.is_connected(), "{h}: output {i} disconnected");
            assert!(g.order() <= n_max);
            assert!(is_locally(g, &local), "{h}: output {i} is not locally {h}");
            for other in &ext.graphs[..i] {
                assert!(!is_isomorphic(g, other), "{h}: duplicate output");
            }
        }
    }
}

#[test]
fn small_locally_h_graphs_are_complete() {
    // locally K_{n-1} means K_n; locally C4 on at most 12 vertices is the octahedron
    for n in 3..=6 {
        let ext = extend_locally(&Graph::complete(n - 1), 10).unwrap();
        assert_eq!(ext.graphs.len(), 1);
        assert!(is_isomorphic(&ext.graphs[0], &Graph::complete(n)));
    }
    let ext = extend_locally(&Graph::cycle(4), 12).unwrap();
    assert_eq!(ext.graphs.len(), 1);
    assert!(is_isomorphic(&ext.graphs[0], &named_graph("octahedron").unwrap()));
}
