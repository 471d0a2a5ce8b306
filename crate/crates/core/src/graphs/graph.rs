use std::collections::VecDeque;
use std::fmt;

use super::GraphError;

/// Largest vertex count supported by the bitset representation.
pub const MAX_VERTICES: usize = 64;

/// Simple undirected graph on vertices `0..n`, one `u64` bitset per row.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

/// Result of [`Graph::distance_i_graph`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceGraph {
    pub graph: Graph,
    /// Set when `i` exceeds the diameter; the graph then has no edges.
    pub beyond_diameter: bool,
}

/// Distance layers around a base vertex together with the numbers `c_i`, `a_i`, `b_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceProfile {
    pub base: usize,
    pub dist: Vec<Option<usize>>,
    pub layers: Vec<Vec<usize>>,
    /// `c[y] = |Γ_{i−1}(x) ∩ Γ(y)|` where `i = dist(x, y)`; zero for unreachable `y`.
    pub c: Vec<usize>,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

impl DistanceProfile {
    /// Intersection array `(c_i, a_i, b_i)` per layer, if constant on each layer.
    pub fn layer_numbers(&self) -> Option<Vec<(usize, usize, usize)>> {
        self.layers
            .iter()
            .map(|layer| {
                let y = layer[0];
                let t = (self.c[y], self.a[y], self.b[y]);
                layer.iter().all(|&z| (self.c[z], self.a[z], self.b[z]) == t).then_some(t)
            })
            .collect()
    }
}

impl Graph {
    pub fn empty(n: usize) -> Graph {
        assert!(n <= MAX_VERTICES, "at most {MAX_VERTICES} vertices");
        Graph { n, adj: vec![0; n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge(n));
        }
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n || u == v {
                return Err(GraphError::BadEdge(u, v));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn from_adjacency(rows: &[Vec<bool>]) -> Result<Graph, GraphError> {
        let n = rows.len();
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge(n));
        }
        let mut g = Graph::empty(n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n || row[i] {
                return Err(GraphError::NotSimple);
            }
            for (j, &e) in row.iter().enumerate() {
                if e != rows[j][i] {
                    return Err(GraphError::NotSimple);
                }
                if e {
                    g.adj[i] |= 1 << j;
                }
            }
        }
        Ok(g)
    }

    pub(crate) fn from_rows_unchecked(n: usize, adj: Vec<u64>) -> Graph {
        Graph { n, adj }
    }

    pub fn complete(n: usize) -> Graph {
        Graph::empty(n).complement()
    }

    pub fn cycle(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for i in 0..n {
            g.add_edge(i, (i + 1) % n);
        }
        g
    }

    pub fn path(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for i in 1..n {
            g.add_edge(i - 1, i);
        }
        g
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn neighbour_mask(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        bits(self.adj[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n).flat_map(|u| self.neighbours(u).filter(move |&v| u < v).map(move |v| (u, v))).collect()
    }

    /// Common valency if the graph is regular.
    pub fn regularity(&self) -> Option<usize> {
        let k = if self.n == 0 { 0 } else { self.degree(0) };
        (0..self.n).all(|v| self.degree(v) == k).then_some(k)
    }

    pub fn complement(&self) -> Graph {
        let full = full_mask(self.n);
        Graph { n: self.n, adj: (0..self.n).map(|i| !self.adj[i] & full & !(1 << i)).collect() }
    }

    /// Subgraph induced on `vs`, relabelled `0..vs.len()` in the given order.
    pub fn induced(&self, vs: &[usize]) -> Graph {
        let mut g = Graph::empty(vs.len());
        for (i, &u) in vs.iter().enumerate() {
            for (j, &v) in vs.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Graph induced on the neighbours of `v`.
    pub fn local_graph(&self, v: usize) -> Graph {
        let vs: Vec<usize> = self.neighbours(v).collect();
        self.induced(&vs)
    }

    /// Relabels so that old vertex `perm[i]` becomes vertex `i`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        self.induced(perm)
    }

    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut g = Graph::empty(self.n + other.n);
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.add_edge(u + self.n, v + self.n);
        }
        g
    }

    /// Cartesian product `self □ other`; vertex `(u, v)` is `u * other.n + v`.
    pub fn cartesian(&self, other: &Graph) -> Graph {
        let m = other.n;
        let mut g = Graph::empty(self.n * m);
        for u in 0..self.n {
            for v in 0..m {
                for w in other.neighbours(v) {
                    g.add_edge(u * m + v, u * m + w);
                }
                for w in self.neighbours(u) {
                    g.add_edge(u * m + v, w * m + v);
                }
            }
        }
        g
    }

    pub fn distances_from(&self, x: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[x] = Some(0);
        let mut queue = VecDeque::from([x]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for v in self.neighbours(u) {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.distances_from(0).iter().all(Option::is_some)
    }

    /// Largest finite distance between two vertices.
    pub fn diameter(&self) -> usize {
        (0..self.n)
            .flat_map(|x| self.distances_from(x).into_iter().flatten())
            .max()
            .unwrap_or(0)
    }

    /// Graph on the same vertices joining pairs at distance exactly `i`.
    pub fn distance_i_graph(&self, i: usize) -> DistanceGraph {
        let mut g = Graph::empty(self.n);
        for x in 0..self.n {
            for (y, d) in self.distances_from(x).into_iter().enumerate() {
                if d == Some(i) && x != y {
                    g.adj[x] |= 1 << y;
                }
            }
        }
        DistanceGraph { beyond_diameter: i > self.diameter(), graph: g }
    }

    pub fn distance_profile(&self, x: usize) -> DistanceProfile {
        let dist = self.distances_from(x);
        let diam = dist.iter().flatten().copied().max().unwrap_or(0);
        let mut layers = vec![Vec::new(); diam + 1];
        for (y, d) in dist.iter().enumerate() {
            if let Some(d) = d {
                layers[*d].push(y);
            }
        }
        let mask = |d: Option<usize>| -> u64 {
            d.and_then(|d| layers.get(d)).map_or(0, |l| l.iter().fold(0, |m, &v| m | 1 << v))
        };
        let (mut c, mut a, mut b) = (vec![0; self.n], vec![0; self.n], vec![0; self.n]);
        for y in 0..self.n {
            let Some(i) = dist[y] else { continue };
            let nb = self.adj[y];
            c[y] = (nb & mask(i.checked_sub(1))).count_ones() as usize;
            a[y] = (nb & mask(Some(i))).count_ones() as usize;
            b[y] = (nb & mask(Some(i + 1))).count_ones() as usize;
        }
        DistanceProfile { base: x, dist, layers, c, a, b }
    }

    /// Whether the graph is distance-regular, returning its intersection array layers.
    pub fn intersection_array(&self) -> Option<Vec<(usize, usize, usize)>> {
        if !self.is_connected() || self.n == 0 {
            return None;
        }
        let first = self.distance_profile(0).layer_numbers()?;
        (1..self.n).all(|x| self.distance_profile(x).layer_numbers().as_ref() == Some(&first)).then_some(first)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub(crate) fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hexagon_antipodes() {
        let d3 = Graph::cycle(6).distance_i_graph(3);
        assert!(!d3.beyond_diameter);
        assert_eq!(d3.graph.edges(), vec![(0, 3), (1, 4), (2, 5)]);
        let d4 = Graph::cycle(6).distance_i_graph(4);
        assert!(d4.beyond_diameter);
        assert_eq!(d4.graph.edge_count(), 0);
    }

    #[test]
    fn distance_one_is_identity() {
        let g = Graph::cycle(7);
        assert_eq!(g.distance_i_graph(1).graph, g);
    }

    #[test]
    fn cycle_profile() {
        let p = Graph::cycle(5).distance_profile(0);
        assert_eq!(p.layer_numbers(), Some(vec![(0, 0, 2), (1, 0, 1), (1, 1, 0)]));
        assert_eq!(Graph::path(3).intersection_array(), None);
    }

    #[test]
    fn products_and_complements() {
        let prism = Graph::complete(3).cartesian(&Graph::complete(2));
        assert_eq!(prism.order(), 6);
        assert_eq!(prism.regularity(), Some(3));
        assert_eq!(Graph::complete(4).complement().edge_count(), 0);
        assert_eq!(Graph::cycle(3).disjoint_union(&Graph::cycle(3)).edge_count(), 6);
    }
}
