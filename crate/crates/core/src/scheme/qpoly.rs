use serde::Serialize;

use super::axioms::Scheme;
use super::spectra::Spectra;
use super::SchemeError;
use crate::exactnum::{Field, QuadNumber};

/// A Q-polynomial ordering with its nearest-neighbour relation and metric level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QPolyStructure {
    pub ordering: Vec<usize>,
    pub nearest_relation: usize,
    pub metricity: PartialMetricity,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartialMetricity {
    /// Largest `t` such that the distance-`i` graph of the relation is a relation for `i ≤ t`.
    pub t: usize,
    /// `t = d`.
    pub metric: bool,
    /// `distance_classes[i]` is the relation equal to distance `i`, for `i ≤ t`.
    pub distance_classes: Vec<usize>,
}

/// Orderings `(0, σ1, …, σd)` of the idempotents for which the scheme is cometric.
pub fn q_poly_orderings(sp: &Spectra) -> Vec<Vec<usize>> {
    let d = sp.degree();
    if d == 0 {
        return vec![vec![0]];
    }
    let nonzero = |i: usize, j: usize, k: usize| !sp.q(i, j, k).is_zero();
    let mut out = Vec::new();
    'first: for e1 in 1..=d {
        let mut order = vec![0, e1];
        for i in 1..=d {
            let support: Vec<usize> = (0..=d).filter(|&k| nonzero(e1, order[i], k)).collect();
            let mut fresh = Vec::new();
            for &k in &support {
                if order.contains(&k) {
                    if k != order[i] && k != order[i - 1] {
                        continue 'first;
                    }
                } else {
                    fresh.push(k);
                }
            }
            match (i < d, fresh.as_slice()) {
                (true, [next]) => order.push(*next),
                (false, []) => {}
                _ => continue 'first,
            }
        }
        out.push(order);
    }
    out
}

/// Metric level of relation `r`: how far its distance graphs coincide with relations.
pub fn partially_metric_level(s: &Scheme, r: usize) -> Result<PartialMetricity, SchemeError> {
    let g = s.relation_graph(r);
    if r == 0 || r > s.degree() || !g.is_connected() {
        return Err(SchemeError::Disconnected);
    }
    let dist: Vec<Vec<Option<usize>>> = (0..s.size()).map(|x| g.distances_from(x)).collect();
    let mut classes = vec![0];
    for i in 1..=s.degree() {
        // the relation of any pair at distance i, if the distance class is a single relation
        let mut rel = None;
        let mut single = true;
        let mut any = false;
        for x in 0..s.size() {
            for y in 0..s.size() {
                let same_distance = dist[x][y] == Some(i);
                if same_distance {
                    any = true;
                    match rel {
                        None => rel = Some(s.relation(x, y)),
                        Some(q) if q != s.relation(x, y) => single = false,
                        _ => {}
                    }
                }
            }
        }
        let Some(rel) = rel.filter(|_| single && any) else { break };
        // the relation must not also contain pairs at another distance
        let full = (0..s.size()).all(|x| (0..s.size()).all(|y| (s.relation(x, y) == rel) == (dist[x][y] == Some(i))));
        if !full {
            break;
        }
        assert!(!classes.contains(&rel), "two distances matched to one relation");
        classes.push(rel);
    }
    let t = classes.len() - 1;
    Ok(PartialMetricity { t, metric: t == s.degree(), distance_classes: classes })
}

/// Relation whose cosine under `E_{ordering[1]}` is the largest one below 1.
pub fn nearest_neighbour_relation(sp: &Spectra, ordering: &[usize]) -> Result<usize, SchemeError> {
    let d = sp.degree();
    if d == 0 {
        return Err(SchemeError::Precondition("a scheme with d = 0 has no nearest relation".into()));
    }
    let col = sp.cosine_column(ordering[1]);
    for a in 0..=d {
        for b in a + 1..=d {
            if col[a] == col[b] {
                return Err(SchemeError::TiedInnerProducts { first: a, second: b, value: col[a].to_string() });
            }
        }
    }
    let best = (1..=d)
        .filter(|&h| col[h] < QuadNumber::one())
        .max_by(|&a, &b| col[a].total_cmp(&col[b]))
        .ok_or_else(|| SchemeError::Precondition("no inner product below 1".into()))?;
    Ok(best)
}

/// Q-polynomial structures together with their nearest relations and metric levels.
pub fn q_poly_structures(sp: &Spectra) -> Result<Vec<QPolyStructure>, SchemeError> {
    q_poly_orderings(sp)
        .into_iter()
        .map(|ordering| {
            let nearest = nearest_neighbour_relation(sp, &ordering)?;
            let metricity = partially_metric_level(sp.scheme(), nearest)?;
            Ok(QPolyStructure { ordering, nearest_relation: nearest, metricity })
        })
        .collect()
}

/// Lower bound `k − k(θ+1)²a₁(a₁+1) / (((a₁+1)θ+k)² + k·a₁·b₁)` on a multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LightTailBound {
    pub bound: QuadNumber,
}

impl LightTailBound {
    /// Equality, which characterises a light tail.
    pub fn attained_by(&self, m: &QuadNumber) -> bool {
        *m == self.bound
    }
}

pub fn light_tail_bound(k: i64, theta: &QuadNumber, a1: i64, b1: i64) -> Result<LightTailBound, SchemeError> {
    let kq = QuadNumber::int(k);
    if *theta == kq || *theta == -&kq {
        return Err(SchemeError::Precondition("θ must differ from ±k".into()));
    }
    let a = QuadNumber::int(a1);
    let one = QuadNumber::one();
    let t1 = theta + &one;
    let num = &(&(&kq * &(&t1 * &t1)) * &a) * &(&a + &one);
    let base = &(&(&a + &one) * theta) + &kq;
    let den = &(&base * &base) + &QuadNumber::int(k * a1 * b1);
    let frac = num.try_div(&den)?;
    Ok(LightTailBound { bound: &kq - &frac })
}

/// Largest `d` allowed for nearest-relation valency `v1` in the given splitting field.
pub fn degree_bound(v1: usize, field: Field) -> usize {
    match field {
        Field::Rational => 2 * v1 + 1,
        Field::Quadratic(_) => 4 * v1 + 1,
    }
}
