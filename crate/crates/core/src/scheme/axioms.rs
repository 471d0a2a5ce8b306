use std::fmt;

use serde::Serialize;

use super::SchemeError;
use crate::exactnum::{ExactMatrix, QuadNumber};
use crate::graphs::Graph;

/// A symmetric association scheme with its intersection numbers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Scheme {
    size: usize,
    d: usize,
    relations: Vec<Vec<usize>>,
    valencies: Vec<usize>,
    /// `p[h][i][j]` is `p_{ij}^h`.
    p: Vec<Vec<Vec<usize>>>,
}

/// First violated axiom, with a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum Refutation {
    NotSquare { row: usize, len: usize, expected: usize },
    DiagonalNotZero { x: usize, relation: usize },
    OffDiagonalZero { x: usize, y: usize },
    NotSymmetric { x: usize, y: usize, forward: usize, backward: usize },
    EmptyRelation { relation: usize },
    /// Two pairs in relation `h` see different numbers of `z` with `(x,z) ∈ R_i`, `(z,y) ∈ R_j`.
    IntersectionNotConstant { h: usize, i: usize, j: usize, first: PairCount, second: PairCount },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PairCount {
    pub x: usize,
    pub y: usize,
    pub count: usize,
}

impl fmt::Display for Refutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Refutation::NotSquare { row, len, expected } => {
                write!(f, "row {row} has {len} entries, expected {expected}")
            }
            Refutation::DiagonalNotZero { x, relation } => {
                write!(f, "diagonal entry ({x},{x}) is {relation}, not 0")
            }
            Refutation::OffDiagonalZero { x, y } => write!(f, "off-diagonal entry ({x},{y}) is 0"),
            Refutation::NotSymmetric { x, y, forward, backward } => {
                write!(f, "relation not symmetric: ({x},{y}) is {forward} but ({y},{x}) is {backward}")
            }
            Refutation::EmptyRelation { relation } => write!(f, "relation {relation} is empty"),
            Refutation::IntersectionNotConstant { h, i, j, first, second } => write!(
                f,
                "p_{{{i}{j}}}^{h} not constant: {} for ({},{}) vs {} for ({},{})",
                first.count, first.x, first.y, second.count, second.x, second.y
            ),
        }
    }
}

/// Checks the axioms of a symmetric association scheme on a relation map.
pub fn verify_scheme(relations: &[Vec<usize>]) -> Result<Scheme, Refutation> {
    let n = relations.len();
    for (row, r) in relations.iter().enumerate() {
        if r.len() != n {
            return Err(Refutation::NotSquare { row, len: r.len(), expected: n });
        }
    }
    for x in 0..n {
        if relations[x][x] != 0 {
            return Err(Refutation::DiagonalNotZero { x, relation: relations[x][x] });
        }
    }
    for x in 0..n {
        for y in 0..n {
            if x != y && relations[x][y] == 0 {
                return Err(Refutation::OffDiagonalZero { x, y });
            }
        }
    }
    for x in 0..n {
        for y in x + 1..n {
            if relations[x][y] != relations[y][x] {
                return Err(Refutation::NotSymmetric {
                    x,
                    y,
                    forward: relations[x][y],
                    backward: relations[y][x],
                });
            }
        }
    }
    let d = relations.iter().flatten().copied().max().unwrap_or(0);
    let mut valencies = vec![0; d + 1];
    if n > 0 {
        for &r in &relations[0] {
            valencies[r] += 1;
        }
    }
    let mut used = vec![false; d + 1];
    for &r in relations.iter().flatten() {
        used[r] = true;
    }
    if let Some(relation) = used.iter().position(|u| !u) {
        return Err(Refutation::EmptyRelation { relation });
    }

    // counts[x][y][i][j] is computed on demand per pair
    let count = |x: usize, y: usize| -> Vec<Vec<usize>> {
        let mut c = vec![vec![0; d + 1]; d + 1];
        for z in 0..n {
            c[relations[x][z]][relations[z][y]] += 1;
        }
        c
    };
    let mut p = vec![vec![vec![0; d + 1]; d + 1]; d + 1];
    for h in (1..=d).chain(std::iter::once(0)) {
        let mut first: Option<(usize, usize, Vec<Vec<usize>>)> = None;
        for x in 0..n {
            for y in 0..n {
                if relations[x][y] != h {
                    continue;
                }
                let c = count(x, y);
                match &first {
                    None => first = Some((x, y, c)),
                    Some((fx, fy, fc)) => {
                        for i in 0..=d {
                            for j in 0..=d {
                                if fc[i][j] != c[i][j] {
                                    return Err(Refutation::IntersectionNotConstant {
                                        h,
                                        i,
                                        j,
                                        first: PairCount { x: *fx, y: *fy, count: fc[i][j] },
                                        second: PairCount { x, y, count: c[i][j] },
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
        if let Some((_, _, c)) = first {
            p[h] = c;
        }
    }
    Ok(Scheme { size: n, d, relations: relations.to_vec(), valencies, p })
}

/// Distance partition of a connected graph, checked as a scheme.
pub fn scheme_from_graph_distances(g: &Graph) -> Result<Scheme, SchemeError> {
    if g.order() == 0 || !g.is_connected() {
        return Err(SchemeError::Disconnected);
    }
    let relations: Vec<Vec<usize>> =
        (0..g.order()).map(|x| g.distances_from(x).into_iter().map(|d| d.unwrap()).collect()).collect();
    verify_scheme(&relations).map_err(SchemeError::Refuted)
}

impl Scheme {
    pub fn size(&self) -> usize {
        self.size
    }

    /// Number of non-identity relations.
    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn valencies(&self) -> &[usize] {
        &self.valencies
    }

    pub fn relation(&self, x: usize, y: usize) -> usize {
        self.relations[x][y]
    }

    pub fn relations(&self) -> &[Vec<usize>] {
        &self.relations
    }

    /// Intersection number `p_{ij}^h`.
    pub fn p(&self, i: usize, j: usize, h: usize) -> usize {
        self.p[h][i][j]
    }

    /// Graph of relation `r`.
    pub fn relation_graph(&self, r: usize) -> Graph {
        let mut g = Graph::empty(self.size);
        for x in 0..self.size {
            for y in x + 1..self.size {
                if self.relations[x][y] == r {
                    g.add_edge(x, y);
                }
            }
        }
        g
    }

    /// Adjacency matrix `A_r`.
    pub fn adjacency(&self, r: usize) -> ExactMatrix {
        ExactMatrix::from_fn(self.size, self.size, |x, y| {
            if self.relations[x][y] == r {
                QuadNumber::one()
            } else {
                QuadNumber::zero()
            }
        })
    }

    /// Matrix of multiplication by `A_i` in the basis `A_0, …, A_d`: entry `(h, j)` is `p_{ij}^h`.
    pub fn intersection_matrix(&self, i: usize) -> ExactMatrix {
        ExactMatrix::from_fn(self.d + 1, self.d + 1, |h, j| QuadNumber::int(self.p[h][i][j] as i64))
    }

    /// Relabels relations so that old relation `order[t]` becomes relation `t`.
    pub fn reorder_relations(&self, order: &[usize]) -> Scheme {
        let mut inv = vec![0; self.d + 1];
        for (t, &r) in order.iter().enumerate() {
            inv[r] = t;
        }
        let relations: Vec<Vec<usize>> = self.relations.iter().map(|row| row.iter().map(|&r| inv[r]).collect()).collect();
        verify_scheme(&relations).expect("relabelling preserves the axioms")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::named_graph;

    #[test]
    fn johnson_scheme() {
        let s = scheme_from_graph_distances(&named_graph("J(5,2)").unwrap()).unwrap();
        assert_eq!(s.degree(), 2);
        assert_eq!(s.valencies(), &[1, 6, 3]);
        assert_eq!(s.p(1, 1, 1), 3);
    }

    #[test]
    fn path_is_refuted() {
        let err = scheme_from_graph_distances(&Graph::path(3)).unwrap_err();
        let SchemeError::Refuted(Refutation::IntersectionNotConstant { h, i, j, first, second }) = err else {
            panic!("unexpected {err:?}");
        };
        assert_eq!((h, i, j), (1, 1, 2));
        assert_eq!((first.count, second.count), (0, 1));
    }

    #[test]
    fn trivial_scheme() {
        let s = verify_scheme(&[vec![0]]).unwrap();
        assert_eq!(s.degree(), 0);
        assert_eq!(s.size(), 1);
    }

    #[test]
    fn malformed_maps() {
        assert!(matches!(verify_scheme(&[vec![0, 1], vec![2, 0]]), Err(Refutation::NotSymmetric { .. })));
        assert!(matches!(verify_scheme(&[vec![1]]), Err(Refutation::DiagonalNotZero { .. })));
        assert!(matches!(verify_scheme(&[vec![0, 2], vec![2, 0]]), Err(Refutation::EmptyRelation { relation: 1 })));
    }
}
