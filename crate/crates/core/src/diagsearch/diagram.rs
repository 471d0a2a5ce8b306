use std::fmt;

use serde::Serialize;

/// Why a branch of the search was discarded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PruneReason {
    Handshake,
    OutWeight,
    Yamazaki,
    Connectivity,
    PartialMetricity,
    Depth,
    Kissing,
    Recurrence,
    Faithfulness,
    Range,
    Field,
    EvenColumn,
    Nearest,
    Integrality,
    Krein,
    Orthogonality,
    Multiplicity,
}

impl PruneReason {
    pub fn as_str(self) -> &'static str {
        match self {
            PruneReason::Handshake => "handshake",
            PruneReason::OutWeight => "out_weight",
            PruneReason::Yamazaki => "yamazaki",
            PruneReason::Connectivity => "connectivity",
            PruneReason::PartialMetricity => "partial_metricity",
            PruneReason::Depth => "depth",
            PruneReason::Kissing => "kissing",
            PruneReason::Recurrence => "recurrence",
            PruneReason::Faithfulness => "faithfulness",
            PruneReason::Range => "range",
            PruneReason::Field => "field",
            PruneReason::EvenColumn => "even_column",
            PruneReason::Nearest => "nearest",
            PruneReason::Integrality => "integrality",
            PruneReason::Krein => "krein",
            PruneReason::Orthogonality => "orthogonality",
            PruneReason::Multiplicity => "multiplicity",
        }
    }
}

impl fmt::Display for PruneReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexStatus {
    Determined,
    Todo,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagramVertex {
    /// Graph distance of the relation from `R₀`.
    pub distance: usize,
    pub valency: Option<u64>,
    pub status: VertexStatus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    pub weight: u32,
}

/// Relation-distribution diagram of `R₁`: `weight(j, h) = p_{h1}^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistributionDiagram {
    k1: u32,
    vertices: Vec<DiagramVertex>,
    weights: Vec<Vec<u32>>,
}

impl DistributionDiagram {
    /// `R₀ → R₁` with weight `k₁`, `R₁` pending with a loop of weight `a₁`.
    pub fn start(k1: u32, a1: u32) -> Self {
        let mut d = DistributionDiagram { k1, vertices: Vec::new(), weights: Vec::new() };
        d.push_vertex(DiagramVertex { distance: 0, valency: Some(1), status: VertexStatus::Determined });
        d.push_vertex(DiagramVertex { distance: 1, valency: Some(k1 as u64), status: VertexStatus::Todo });
        d.set_weight(0, 1, k1);
        d.set_weight(1, 1, a1);
        d
    }

    /// Builds a diagram from its parts; used to replay and test configurations.
    pub fn from_parts(k1: u32, vertices: Vec<DiagramVertex>, arcs: &[Arc]) -> Self {
        let n = vertices.len();
        let mut d = DistributionDiagram { k1, vertices, weights: vec![vec![0; n]; n] };
        for a in arcs {
            d.set_weight(a.from, a.to, a.weight);
        }
        d
    }

    pub fn k1(&self) -> u32 {
        self.k1
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[DiagramVertex] {
        &self.vertices
    }

    pub fn vertex(&self, v: usize) -> &DiagramVertex {
        &self.vertices[v]
    }

    pub fn weight(&self, from: usize, to: usize) -> u32 {
        self.weights[from][to]
    }

    pub fn out_weight(&self, v: usize) -> u32 {
        self.weights[v].iter().sum()
    }

    pub fn valencies(&self) -> Vec<Option<u64>> {
        self.vertices.iter().map(|v| v.valency).collect()
    }

    pub fn is_determined(&self, v: usize) -> bool {
        self.vertices[v].status == VertexStatus::Determined
    }

    pub fn arcs(&self) -> Vec<Arc> {
        let mut out = Vec::new();
        for (from, row) in self.weights.iter().enumerate() {
            for (to, &weight) in row.iter().enumerate() {
                if weight > 0 {
                    out.push(Arc { from, to, weight });
                }
            }
        }
        out
    }

    pub(crate) fn push_vertex(&mut self, v: DiagramVertex) -> usize {
        self.vertices.push(v);
        for row in &mut self.weights {
            row.push(0);
        }
        self.weights.push(vec![0; self.vertices.len()]);
        self.vertices.len() - 1
    }

    pub(crate) fn set_weight(&mut self, from: usize, to: usize, w: u32) {
        self.weights[from][to] = w;
    }

    pub(crate) fn determine(&mut self, v: usize, valency: u64) {
        self.vertices[v].valency = Some(valency);
        self.vertices[v].status = VertexStatus::Determined;
    }

    /// Sum of the valencies known so far plus a lower bound for pending relations.
    pub fn size_lower_bound(&self) -> u64 {
        let k1 = self.k1 as u64;
        (0..self.len())
            .map(|h| match self.vertices[h].valency {
                Some(k) => k,
                None => (0..self.len())
                    .filter(|&t| self.is_determined(t))
                    .filter_map(|t| Some(self.vertices[t].valency? * self.weight(t, h) as u64))
                    .map(|x| x.div_ceil(k1))
                    .max()
                    .unwrap_or(1)
                    .max(1),
            })
            .sum()
    }

    /// `c` of a determined relation at distance `i`: its arcs into distance `i − 1`.
    pub fn c_number(&self, v: usize) -> u32 {
        let i = self.vertices[v].distance;
        (0..self.len()).filter(|&h| i > 0 && self.vertices[h].distance == i - 1).map(|h| self.weight(v, h)).sum()
    }

    pub fn size(&self) -> Option<u64> {
        self.vertices.iter().map(|v| v.valency).sum()
    }
}

/// All structural rules, Yamazaki's included.
pub fn check_diagram_valid(d: &DistributionDiagram) -> Result<(), PruneReason> {
    check_diagram_rules(d, true)
}

pub(crate) fn check_diagram_rules(d: &DistributionDiagram, yamazaki: bool) -> Result<(), PruneReason> {
    let n = d.len();
    for j in 0..n {
        let out = d.out_weight(j);
        if out > d.k1 || (d.is_determined(j) && out != d.k1) {
            return Err(PruneReason::OutWeight);
        }
    }
    for j in 0..n {
        for h in 0..n {
            if !(d.is_determined(j) && d.is_determined(h)) {
                continue;
            }
            let (Some(kj), Some(kh)) = (d.vertex(j).valency, d.vertex(h).valency) else { continue };
            if kj * d.weight(j, h) as u64 != kh * d.weight(h, j) as u64 {
                return Err(PruneReason::Handshake);
            }
        }
        // a determined relation only meets relations it has arcs to, and those are never pending from it
        if d.is_determined(j) {
            for h in 0..n {
                if d.is_determined(h) && (d.weight(j, h) > 0) != (d.weight(h, j) > 0) {
                    return Err(PruneReason::Handshake);
                }
            }
        }
    }
    for j in 0..n {
        for h in 0..n {
            if d.weight(j, h) > 0 && d.vertex(j).distance.abs_diff(d.vertex(h).distance) > 1 {
                return Err(PruneReason::Connectivity);
            }
        }
    }
    if !connected(d) {
        return Err(PruneReason::Connectivity);
    }
    if d.vertices.iter().filter(|v| v.distance == 2).count() > 1 {
        return Err(PruneReason::PartialMetricity);
    }
    if yamazaki && yamazaki_violation(d).is_some() {
        return Err(PruneReason::Yamazaki);
    }
    Ok(())
}

fn connected(d: &DistributionDiagram) -> bool {
    let mut seen = vec![false; d.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for h in 0..d.len() {
            if !seen[h] && d.weight(v, h) > 0 {
                seen[h] = true;
                stack.push(h);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// A witness `(a, b, c)` against Yamazaki's lemma.
///
/// A relation `a` at distance `i ≥ 2` with arcs to distinct relations `b`, `c` at distance
/// `i + 1`, where `b` has `c_{i+1} = 1`, needs a relation `e` outside distance `i` that both
/// `b` and `c` reach. Only determined `b`, `c` are judged.
pub fn yamazaki_violation(d: &DistributionDiagram) -> Option<(usize, usize, usize)> {
    let n = d.len();
    for a in 0..n {
        let i = d.vertex(a).distance;
        if i < 2 || !d.is_determined(a) {
            continue;
        }
        let succ: Vec<usize> =
            (0..n).filter(|&h| d.weight(a, h) > 0 && d.vertex(h).distance == i + 1 && d.is_determined(h)).collect();
        for &b in &succ {
            if d.c_number(b) != 1 {
                continue;
            }
            for &c in &succ {
                if c == b {
                    continue;
                }
                let shared =
                    (0..n).any(|e| d.weight(b, e) > 0 && d.weight(c, e) > 0 && d.vertex(e).distance != i);
                if !shared {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(distance: usize, valency: u64) -> DiagramVertex {
        DiagramVertex { distance, valency: Some(valency), status: VertexStatus::Determined }
    }

    fn arc(from: usize, to: usize, weight: u32) -> Arc {
        Arc { from, to, weight }
    }

    #[test]
    fn bipartite_diagram_is_valid() {
        let d = DistributionDiagram::from_parts(
            3,
            vec![v(0, 1), v(1, 3), v(2, 2)],
            &[arc(0, 1, 3), arc(1, 0, 1), arc(1, 2, 2), arc(2, 1, 3)],
        );
        assert_eq!(check_diagram_valid(&d), Ok(()));
        assert_eq!(d.size(), Some(6));
    }

    #[test]
    fn handshake_failure() {
        let d = DistributionDiagram::from_parts(
            3,
            vec![v(0, 1), v(1, 3), v(2, 3)],
            &[arc(0, 1, 3), arc(1, 0, 1), arc(1, 2, 2), arc(2, 1, 3)],
        );
        assert_eq!(check_diagram_valid(&d), Err(PruneReason::Handshake));
    }

    #[test]
    fn yamazaki_failure() {
        // R2 branches to R3, R4 at distance 3; R3 has c = 1 and shares nothing beyond distance 2 with R4
        let d = DistributionDiagram::from_parts(
            3,
            vec![v(0, 1), v(1, 3), v(2, 6), v(3, 6), v(3, 6)],
            &[
                arc(0, 1, 3),
                arc(1, 0, 1),
                arc(1, 2, 2),
                arc(2, 1, 1),
                arc(2, 3, 1),
                arc(2, 4, 1),
                arc(3, 2, 1),
                arc(3, 3, 2),
                arc(4, 2, 1),
                arc(4, 4, 2),
            ],
        );
        assert_eq!(yamazaki_violation(&d), Some((2, 3, 4)));
        assert_eq!(check_diagram_valid(&d), Err(PruneReason::Yamazaki));
        assert_eq!(check_diagram_rules(&d, false), Ok(()));
    }
}
