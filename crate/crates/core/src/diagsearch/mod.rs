//! Generation of feasible relation-distribution diagrams of the nearest relation,
//! together with the first two cosine columns.
//!
//! Relations are explored in breadth-first order. Each step fixes the arcs leaving one
//! pending relation, solves the cosine recurrences for the relations it creates and
//! prunes by the structural and arithmetic rules of [`PruneReason`].

mod cosines;
mod diagram;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::{Mutex, OnceLock};

use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

pub use cosines::{check_solution_valid, cosine_candidates, second_cosine, CosineColumns};
pub use diagram::{
    check_diagram_valid, yamazaki_violation, Arc, DiagramVertex, DistributionDiagram, PruneReason, VertexStatus,
};

use crate::exactnum::{rat, Field, QuadNumber};
use crate::scheme::{q_poly_structures, spectra, Scheme, CATALOGUE};

pub const DEFAULT_SEARCH_BUDGET: u64 = 5_000_000;

/// Largest `[−1, 1/2]`-code on `S³`.
pub const KISSING_NUMBER_4: u64 = 24;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchConfig {
    pub k1: u32,
    pub m1: u32,
    pub a1: u32,
    pub field: Field,
    /// Impose `q_{11}^1 = 0`.
    pub light_tail: bool,
    /// Largest degree `d`; defaults to `2k₁ + 1` over Q and `4k₁ + 1` otherwise.
    pub max_depth: Option<usize>,
    pub budget: u64,
    pub yamazaki: bool,
}

impl SearchConfig {
    pub fn new(k1: u32, a1: u32, field: Field) -> Self {
        SearchConfig {
            k1,
            m1: 4,
            a1,
            field,
            light_tail: false,
            max_depth: None,
            budget: DEFAULT_SEARCH_BUDGET,
            yamazaki: true,
        }
    }

    pub fn light_tail(mut self, on: bool) -> Self {
        self.light_tail = on;
        self
    }

    pub fn depth_bound(&self) -> usize {
        self.max_depth.unwrap_or(match self.field {
            Field::Rational => 2 * self.k1 as usize + 1,
            Field::Quadratic(_) => 4 * self.k1 as usize + 1,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error("inconsistent configuration: {0}")]
    Config(String),
}

/// A diagram with its cosines and the relations still to be expanded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchState {
    pub diagram: DistributionDiagram,
    pub todo: Vec<usize>,
    pub cosines: CosineColumns,
}

/// One starting state per admissible `ω_{1,1}`.
///
/// Negative `ω_{1,1}` is skipped: then every cosine is negative, so the embedding has at
/// most `m₁ + 1` points and the scheme graph is complete.
pub fn initial_state(config: &SearchConfig) -> Result<Vec<SearchState>, SearchError> {
    if config.k1 < 3 {
        return Err(SearchError::Config("k1 must be at least 3".into()));
    }
    if config.a1 + 1 >= config.k1 {
        return Err(SearchError::Config("a1 = k1 - 1 gives a complete graph, which is not partially metric".into()));
    }
    if config.m1 < 2 {
        return Err(SearchError::Config("m1 must be at least 2".into()));
    }
    let one = QuadNumber::one();
    let q11 = config.light_tail.then(QuadNumber::zero);
    let seeds = cosine_candidates(config.k1 as u64, config.field).into_iter().filter(|w| !w.is_negative() && *w < one);
    let mut out = Vec::new();
    for w in seeds {
        let cos = CosineColumns {
            field: config.field,
            m1: config.m1,
            first: vec![one.clone(), w],
            krein_q11: q11.clone(),
        };
        if check_solution_valid(&cos, &[Some(1), Some(config.k1 as u64)]).is_err() {
            continue;
        }
        out.push(SearchState { diagram: DistributionDiagram::start(config.k1, config.a1), todo: vec![1], cosines: cos });
    }
    Ok(out)
}

/// A candidate continuation at the first pending relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    pub diagram: DistributionDiagram,
    pub todo: Vec<usize>,
    /// Relations created by this step.
    pub fresh: Vec<usize>,
}

/// All ways to complete the out-arcs of `todo[0]`.
///
/// The arcs back to determined relations are forced by the handshake `k_j p_{h1}^j = k_h p_{j1}^h`
/// once `k_j` is chosen; the rest is spread over the loop, pending relations at the same or
/// next distance, and new relations receiving non-increasing weights.
pub fn arrangements(diagram: &DistributionDiagram, todo: &[usize]) -> Vec<Arrangement> {
    let Some((&j, rest)) = todo.split_first() else { return vec![] };
    let k1 = diagram.k1();
    let n = diagram.len();
    let parents: Vec<usize> = (0..n).filter(|&t| diagram.is_determined(t) && diagram.weight(t, j) > 0).collect();
    let mut reverse_options: Vec<(u64, Vec<(usize, u32)>)> = Vec::new();
    let forced = |kj: u64| -> Option<Vec<(usize, u32)>> {
        parents
            .iter()
            .map(|&t| {
                let num = diagram.vertex(t).valency? * diagram.weight(t, j) as u64;
                (num.is_multiple_of(kj) && num / kj >= 1 && num / kj <= k1 as u64).then(|| (t, (num / kj) as u32))
            })
            .collect()
    };
    match diagram.vertex(j).valency {
        Some(kj) => reverse_options.extend(forced(kj).map(|r| (kj, r))),
        None => {
            let Some(&t0) = parents.first() else { return vec![] };
            let num = diagram.vertex(t0).valency.unwrap() * diagram.weight(t0, j) as u64;
            for c in 1..=k1 as u64 {
                if num.is_multiple_of(c) {
                    let kj = num / c;
                    reverse_options.extend(forced(kj).map(|r| (kj, r)));
                }
            }
        }
    }
    let dj = diagram.vertex(j).distance;
    let loop_preset = diagram.weight(j, j) > 0 || j == 1;
    let mut targets: Vec<usize> = Vec::new();
    if !loop_preset {
        targets.push(j);
    }
    targets.extend(
        (0..n).filter(|&h| h != j && !diagram.is_determined(h) && (dj..=dj + 1).contains(&diagram.vertex(h).distance)),
    );
    let mut out = Vec::new();
    for (kj, reverse) in reverse_options {
        let used: u32 = reverse.iter().map(|(_, w)| w).sum::<u32>() + diagram.weight(j, j);
        if used > k1 {
            continue;
        }
        let remain = k1 - used;
        for split in bounded_compositions(remain, targets.len()) {
            let leftover = remain - split.iter().sum::<u32>();
            for parts in partitions(leftover, leftover) {
                let mut d = diagram.clone();
                d.determine(j, kj);
                for &(t, w) in &reverse {
                    d.set_weight(j, t, w);
                }
                for (&h, &w) in targets.iter().zip(&split) {
                    d.set_weight(j, h, w);
                }
                let mut fresh = Vec::new();
                for &w in &parts {
                    let v = d.push_vertex(DiagramVertex { distance: dj + 1, valency: None, status: VertexStatus::Todo });
                    d.set_weight(j, v, w);
                    fresh.push(v);
                }
                let mut new_todo = rest.to_vec();
                new_todo.extend(&fresh);
                out.push(Arrangement { diagram: d, todo: new_todo, fresh });
            }
        }
    }
    out
}

/// Vectors of `len` non-negative integers with sum at most `total`.
fn bounded_compositions(total: u32, len: usize) -> Vec<Vec<u32>> {
    if len == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut tail in bounded_compositions(total - first, len - 1) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}

/// Partitions of `n` into non-increasing parts of size at most `max`.
fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=max.min(n)).rev() {
        for mut tail in partitions(n - first, first) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}

/// Cosines of the relations in `fresh`, from the recurrences `k₁ ω_{1,c} ω_{j,c} = Σ_h p_{h1}^j ω_{h,c}`
/// at `current` for `c = 1, 2`, with column 2 tied to column 1 by the Krein identity.
///
/// While `q_{11}^1` is unknown, the column-2 recurrence determines it. More than two new
/// relations are handled by trying the admissible values for all but the last two.
pub fn solve_cosines(
    diagram: &DistributionDiagram,
    current: usize,
    fresh: &[usize],
    cos: &CosineColumns,
) -> Vec<CosineColumns> {
    let j = current;
    let k1 = QuadNumber::int(diagram.k1() as i64);
    let is_fresh = |h: usize| fresh.contains(&h);
    let known_sum = |f: &dyn Fn(usize) -> QuadNumber| -> QuadNumber {
        (0..diagram.len())
            .filter(|&h| !is_fresh(h) && diagram.weight(j, h) > 0)
            .fold(QuadNumber::zero(), |acc, h| &acc + &f(h).scale(&crate::exactnum::rat_int(diagram.weight(j, h) as i64)))
    };
    let w = |h: usize| QuadNumber::int(diagram.weight(j, h) as i64);
    let c1 = &(&(&k1 * &cos.first[1]) * &cos.first[j]) - &known_sum(&|h| cos.first[h].clone());
    let extend = |vals: &[QuadNumber], q: Option<QuadNumber>| {
        let mut c = cos.clone();
        c.first.extend(vals.iter().cloned());
        if q.is_some() {
            c.krein_q11 = q;
        }
        c
    };

    let Some(q11) = cos.krein_q11.clone() else {
        // column 1 first, then q₁₁¹ from column 2
        let vals = match fresh {
            [] if c1.is_zero() => vec![],
            [f] => vec![c1.try_div(&w(*f)).unwrap()],
            _ => return vec![],
        };
        let probe = extend(&vals, None);
        return solve_krein(diagram, j, &probe).into_iter().map(|q| extend(&vals, Some(q))).collect();
    };

    let m = cos.m1 as i64;
    let r = &QuadNumber::int(m - 1) - &q11;
    let Ok(u) = QuadNumber::one().try_div(&r) else { return vec![] };
    let g = |x: &QuadNumber| second_cosine(cos.m1, &q11, x).unwrap();
    let c2 = &(&(&k1 * &g(&cos.first[1])) * &g(&cos.first[j])) - &known_sum(&|h| g(&cos.first[h]));
    let weights: Vec<QuadNumber> = fresh.iter().map(|&f| w(f)).collect();
    // built only when some cosine has to be enumerated
    let pool = std::cell::OnceCell::new();
    let candidates = || -> &[QuadNumber] {
        pool.get_or_init(|| {
            fresh_candidates(diagram, j, fresh, cos.field)
                .into_iter()
                .filter(|x| *x < cos.first[1] && !x.is_one())
                .filter(|x| g(x).is_rational())
                .collect::<Vec<_>>()
        })
    };

    let mut sols = Vec::new();
    let mut prefix = Vec::new();
    solve_fresh(&weights, &c1, &c2, &u, m, cos.field, &candidates, &g, &mut prefix, &mut sols);
    sols.into_iter()
        .filter(|vals| {
            // equal weights mean interchangeable relations: keep increasing cosines
            (1..vals.len()).all(|i| weights[i] != weights[i - 1] || vals[i - 1] < vals[i])
        })
        .map(|vals| extend(&vals, None))
        .collect()
}

fn cached_candidates(k: u64, field: Field) -> std::sync::Arc<Vec<QuadNumber>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, Field), std::sync::Arc<Vec<QuadNumber>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(c) = cache.lock().unwrap().get(&(k, field)) {
        return c.clone();
    }
    let c = std::sync::Arc::new(cosine_candidates(k, field));
    cache.lock().unwrap().insert((k, field), c.clone());
    c
}

/// `λ/k_h` for every valency `k_h = k_j p_{h1}^j / p_{j1}^h` a fresh relation can still take.
fn fresh_candidates(diagram: &DistributionDiagram, j: usize, fresh: &[usize], field: Field) -> Vec<QuadNumber> {
    let kj = diagram.vertex(j).valency.expect("current relation is determined");
    let mut valencies: Vec<u64> = fresh
        .iter()
        .flat_map(|&h| {
            let num = kj * diagram.weight(j, h) as u64;
            (1..=diagram.k1() as u64).filter(move |p| num.is_multiple_of(*p)).map(move |p| num / p)
        })
        .collect();
    valencies.sort_unstable();
    valencies.dedup();
    let mut out: Vec<QuadNumber> =
        valencies.into_iter().flat_map(|k| cached_candidates(k, field).iter().cloned().collect::<Vec<_>>()).collect();
    out.sort_by(QuadNumber::total_cmp);
    out.dedup();
    out
}

#[allow(clippy::too_many_arguments)]
fn solve_fresh<'a>(
    weights: &[QuadNumber],
    c1: &QuadNumber,
    c2: &QuadNumber,
    u: &QuadNumber,
    m: i64,
    field: Field,
    candidates: &dyn Fn() -> &'a [QuadNumber],
    g: &dyn Fn(&QuadNumber) -> QuadNumber,
    prefix: &mut Vec<QuadNumber>,
    out: &mut Vec<Vec<QuadNumber>>,
) {
    let done = prefix.len();
    match weights.len() - done {
        0 => {
            if c1.is_zero() && c2.is_zero() {
                out.push(prefix.clone());
            }
        }
        1 => {
            let x = c1.try_div(&weights[done]).unwrap();
            if (&weights[done] * &g(&x)) == *c2 {
                let mut v = prefix.clone();
                v.push(x);
                out.push(v);
            }
        }
        2 => {
            let (w1, w2) = (&weights[done], &weights[done + 1]);
            // g(x) = A x² + B x + C
            let a = u.scale(&crate::exactnum::rat_int(m));
            let b = &QuadNumber::one() - &u.scale(&crate::exactnum::rat_int(m - 1));
            let c = -u;
            // w₁ g(x) + w₂ g(y) = c₂ with y = (c₁ − w₁ x)/w₂
            let a_over = |x: &QuadNumber| (&a * x).try_div(w2).unwrap();
            let qa = &(w1 * &a) + &a_over(&(w1 * w1));
            let qb = -&a_over(&(c1 * w1)).scale(&rat(2, 1));
            let qc = &(&(&(&(w1 * &c) + &a_over(&(c1 * c1))) + &(&b * c1)) + &(w2 * &c)) - c2;
            let xs = match cosines::quadratic_roots(&qa, &qb, &qc, field) {
                Some(xs) => xs,
                None => candidates().to_vec(),
            };
            for x in xs {
                let y = (c1 - &(w1 * &x)).try_div(w2).unwrap();
                if &(w1 * &g(&x)) + &(w2 * &g(&y)) == *c2 {
                    let mut v = prefix.clone();
                    v.push(x);
                    v.push(y);
                    out.push(v);
                }
            }
        }
        _ => {
            let w = weights[done].clone();
            for x in candidates() {
                prefix.push(x.clone());
                let nc1 = c1 - &(&w * x);
                let nc2 = c2 - &(&w * &g(x));
                solve_fresh(weights, &nc1, &nc2, u, m, field, candidates, g, prefix, out);
                prefix.pop();
            }
        }
    }
}

/// `q_{11}^1` from the column-2 recurrence at `j`, with `ω_{h,2} = ω_h + u (ω_h − 1)(m ω_h + 1)`
/// and `u = 1/(m − 1 − q)`; the recurrence is linear in `u` after removing `u = 0`.
fn solve_krein(diagram: &DistributionDiagram, j: usize, cos: &CosineColumns) -> Vec<QuadNumber> {
    let m = QuadNumber::int(cos.m1 as i64);
    let one = QuadNumber::one();
    let k1 = QuadNumber::int(diagram.k1() as i64);
    let f = |x: &QuadNumber| &(x - &one) * &(&(&m * x) + &one);
    let (w1, wj) = (&cos.first[1], &cos.first[j]);
    let (f1, fj) = (f(w1), f(wj));
    let sum = (0..diagram.len())
        .filter(|&h| diagram.weight(j, h) > 0)
        .fold(QuadNumber::zero(), |acc, h| &acc + &f(&cos.first[h]).scale(&crate::exactnum::rat_int(diagram.weight(j, h) as i64)));
    let lhs = &sum - &(&k1 * &(&(w1 * &fj) + &(wj * &f1)));
    let den = &(&k1 * &f1) * &fj;
    if den.is_zero() {
        return vec![];
    }
    let u = lhs.try_div(&den).unwrap();
    if u.is_zero() {
        return vec![];
    }
    let r = one.try_div(&u).unwrap();
    vec![&(&m - &one) - &r]
}

/// A completed diagram with its cosines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub diagram: DistributionDiagram,
    pub cosines: CosineColumns,
    pub size: u64,
    pub multiplicities: [u64; 2],
    pub matched: Option<String>,
}

impl SearchResult {
    pub fn degree(&self) -> usize {
        self.diagram.len() - 1
    }

    fn sort_key(&self) -> (u64, usize, Vec<String>) {
        (self.size, self.degree(), self.cosines.rows().iter().flatten().map(|x| x.to_string()).collect())
    }
}

impl Serialize for DistributionDiagram {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("DistributionDiagram", 3)?;
        st.serialize_field("k1", &self.k1())?;
        st.serialize_field("vertices", self.vertices())?;
        st.serialize_field("arcs", &self.arcs())?;
        st.end()
    }
}

impl Serialize for SearchResult {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SearchResult", 5)?;
        st.serialize_field("diagram", &self.diagram)?;
        st.serialize_field("cosines", &self.cosines.rows())?;
        st.serialize_field("size", &self.size)?;
        st.serialize_field("multiplicities", &self.multiplicities)?;
        st.serialize_field("matched", &self.matched)?;
        st.end()
    }
}

impl fmt::Display for SearchResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cos: Vec<String> = self
            .cosines
            .rows()
            .iter()
            .map(|r| format!("({})", r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
            .collect();
        writeln!(
            f,
            "|X| = {}, d = {}, m = {:?}, matched = {}",
            self.size,
            self.degree(),
            self.multiplicities,
            self.matched.as_deref().unwrap_or("unmatched")
        )?;
        writeln!(f, "  cosines: {}", cos.join(" "))?;
        let valencies: Vec<String> =
            self.diagram.valencies().iter().map(|k| k.map_or("?".into(), |k| k.to_string())).collect();
        writeln!(f, "  valencies: {}", valencies.join(" "))?;
        for a in self.diagram.arcs() {
            write!(f, "  {}->{}:{}", a.from, a.to, a.weight)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub pruned_by: BTreeMap<String, u64>,
}

impl SearchStats {
    fn prune(&mut self, r: PruneReason) {
        *self.pruned_by.entry(r.as_str().to_string()).or_default() += 1;
    }

    fn merge(&mut self, other: SearchStats) {
        self.nodes += other.nodes;
        for (k, v) in other.pruned_by {
            *self.pruned_by.entry(k).or_default() += v;
        }
    }

    pub fn pruned(&self, r: PruneReason) -> u64 {
        self.pruned_by.get(r.as_str()).copied().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchOutcome {
    pub config: SearchConfig,
    pub results: Vec<SearchResult>,
    pub stats: SearchStats,
    /// False when the node budget ran out; the results are then partial.
    pub complete: bool,
}

impl SearchOutcome {
    pub fn matched_ids(&self) -> Vec<&str> {
        let mut ids: Vec<&str> = self.results.iter().filter_map(|r| r.matched.as_deref()).collect();
        ids.sort_unstable();
        ids.dedup();
        ids
    }

    pub fn unmatched(&self) -> usize {
        self.results.iter().filter(|r| r.matched.is_none()).count()
    }
}

struct Searcher<'a> {
    config: &'a SearchConfig,
    nodes: &'a AtomicU64,
    exhausted: &'a AtomicBool,
}

impl Searcher<'_> {
    fn run(&self, state: SearchState, stats: &mut SearchStats, out: &mut Vec<SearchResult>) {
        stats.nodes += 1;
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.config.budget {
            self.exhausted.store(true, Ordering::Relaxed);
            return;
        }
        if state.todo.is_empty() {
            match complete(&state) {
                Ok(r) => out.push(r),
                Err(reason) => stats.prune(reason),
            }
            return;
        }
        let j = state.todo[0];
        let half = QuadNumber::frac(1, 2);
        let kissing = state.cosines.first[1] <= half;
        for arr in arrangements(&state.diagram, &state.todo) {
            if let Err(reason) = diagram::check_diagram_rules(&arr.diagram, self.config.yamazaki) {
                stats.prune(reason);
                continue;
            }
            if arr.diagram.len() - 1 > self.config.depth_bound() {
                stats.prune(PruneReason::Depth);
                continue;
            }
            if kissing && arr.diagram.size_lower_bound() > KISSING_NUMBER_4 {
                stats.prune(PruneReason::Kissing);
                continue;
            }
            let sols = solve_cosines(&arr.diagram, j, &arr.fresh, &state.cosines);
            if sols.is_empty() {
                stats.prune(PruneReason::Recurrence);
            }
            for cos in sols {
                if let Err(reason) = check_solution_valid(&cos, &arr.diagram.valencies()) {
                    stats.prune(reason);
                    continue;
                }
                let next = SearchState { diagram: arr.diagram.clone(), todo: arr.todo.clone(), cosines: cos };
                self.run(next, stats, out);
                if self.exhausted.load(Ordering::Relaxed) {
                    return;
                }
            }
        }
    }
}

/// Final checks: `Σ k_h ω_{h,c} = 0`, `m₁ = |X| / Σ k_h ω_{h,1}²` and an integral `m₂`.
fn complete(state: &SearchState) -> Result<SearchResult, PruneReason> {
    let d = &state.diagram;
    let cos = &state.cosines;
    let size = d.size().ok_or(PruneReason::OutWeight)?;
    let second: Vec<QuadNumber> = (0..d.len()).map(|h| cos.second(h)).collect::<Option<_>>().ok_or(PruneReason::Krein)?;
    let k = |h: usize| crate::exactnum::rat_int(d.vertex(h).valency.unwrap() as i64);
    let mut mults = [0u64; 2];
    for (c, col) in [&cos.first, &second].into_iter().enumerate() {
        let sum = (0..d.len()).fold(QuadNumber::zero(), |acc, h| &acc + &col[h].scale(&k(h)));
        if !sum.is_zero() {
            return Err(PruneReason::Orthogonality);
        }
        let sq = (0..d.len()).fold(QuadNumber::zero(), |acc, h| &acc + &(&col[h] * &col[h]).scale(&k(h)));
        let m = QuadNumber::int(size as i64).try_div(&sq).map_err(|_| PruneReason::Multiplicity)?;
        if !m.is_integer() || !m.is_positive() {
            return Err(PruneReason::Multiplicity);
        }
        mults[c] = m.to_rational().unwrap().to_integer().try_into().map_err(|_| PruneReason::Multiplicity)?;
    }
    if mults[0] != cos.m1 as u64 {
        return Err(PruneReason::Multiplicity);
    }
    Ok(SearchResult { diagram: d.clone(), cosines: cos.clone(), size, multiplicities: mults, matched: None })
}

/// Runs the search from every starting state and matches the results against the catalogue.
pub fn generate_diagrams(config: &SearchConfig) -> Result<SearchOutcome, SearchError> {
    let seeds = initial_state(config)?;
    let nodes = AtomicU64::new(0);
    let exhausted = AtomicBool::new(false);
    let searcher = Searcher { config, nodes: &nodes, exhausted: &exhausted };
    let parts: Vec<(SearchStats, Vec<SearchResult>)> = seeds
        .into_par_iter()
        .map(|s| {
            let mut stats = SearchStats::default();
            let mut out = Vec::new();
            searcher.run(s, &mut stats, &mut out);
            (stats, out)
        })
        .collect();
    let mut stats = SearchStats::default();
    let mut results = Vec::new();
    for (s, r) in parts {
        stats.merge(s);
        results.extend(r);
    }
    let known = known_diagrams();
    for r in &mut results {
        r.matched = known.iter().find(|k| k.matches(r)).map(|k| k.id.to_string());
    }
    results.sort_by_cached_key(SearchResult::sort_key);
    Ok(SearchOutcome { config: config.clone(), results, stats, complete: !exhausted.load(Ordering::Relaxed) })
}

/// Runs the search over Q and each radicand of [`default_radicands`], merging the results.
///
/// The node budget is shared by all fields. Rational solutions turn up in every field; they are kept once.
pub fn generate_diagrams_auto(config: &SearchConfig) -> Result<SearchOutcome, SearchError> {
    let mut fields = vec![Field::Rational];
    fields.extend(default_radicands(config.k1).into_iter().map(Field::Quadratic));
    let mut merged = SearchOutcome { config: config.clone(), results: Vec::new(), stats: SearchStats::default(), complete: true };
    for field in fields {
        let budget = config.budget.saturating_sub(merged.stats.nodes);
        if budget == 0 {
            merged.complete = false;
            break;
        }
        let out = generate_diagrams(&SearchConfig { field, budget, ..config.clone() })?;
        merged.stats.merge(out.stats);
        merged.complete &= out.complete;
        for r in out.results {
            let dup = merged.results.iter().any(|m| m.diagram == r.diagram && m.cosines.rows() == r.cosines.rows());
            if !dup {
                merged.results.push(r);
            }
        }
    }
    merged.results.sort_by_cached_key(SearchResult::sort_key);
    Ok(merged)
}

/// The nearest-relation diagram and cosines of a known scheme under one Q-polynomial ordering.
#[derive(Clone, Debug)]
pub struct KnownDiagram {
    pub id: String,
    scheme: Scheme,
    relation: usize,
    first: Vec<QuadNumber>,
    second: Vec<QuadNumber>,
}

impl KnownDiagram {
    /// One entry per Q-polynomial ordering of degree at least 2.
    pub fn from_scheme(id: &str, scheme: &Scheme) -> Vec<KnownDiagram> {
        let Ok(sp) = spectra(scheme) else { return vec![] };
        let Ok(structures) = q_poly_structures(&sp) else { return vec![] };
        structures
            .into_iter()
            .filter(|s| s.ordering.len() >= 3)
            .map(|s| KnownDiagram {
                id: id.to_string(),
                scheme: scheme.clone(),
                relation: s.nearest_relation,
                first: sp.cosine_column(s.ordering[1]).to_vec(),
                second: sp.cosine_column(s.ordering[2]).to_vec(),
            })
            .collect()
    }

    /// Same arcs and cosines up to relabelling relations; the labelling is forced by the
    /// distinct first-column cosines.
    pub fn matches(&self, r: &SearchResult) -> bool {
        let d = &r.diagram;
        if d.len() != self.first.len() {
            return false;
        }
        let map: Option<Vec<usize>> =
            (0..d.len()).map(|v| self.first.iter().position(|w| *w == r.cosines.first[v])).collect();
        let Some(map) = map else { return false };
        if map[0] != 0 || map[1] != self.relation {
            return false;
        }
        (0..d.len()).all(|v| {
            r.cosines.second(v).as_ref() == Some(&self.second[map[v]])
                && d.vertex(v).valency == Some(self.scheme.valencies()[map[v]] as u64)
                && (0..d.len()).all(|u| d.weight(v, u) as usize == self.scheme.p(map[u], self.relation, map[v]))
        })
    }
}

/// Diagrams of every catalogue scheme, computed once.
pub fn known_diagrams() -> &'static [KnownDiagram] {
    static KNOWN: OnceLock<Vec<KnownDiagram>> = OnceLock::new();
    KNOWN.get_or_init(|| CATALOGUE.iter().flat_map(|e| KnownDiagram::from_scheme(e.id, &e.scheme())).collect())
}

pub fn match_known(result: &SearchResult, scheme: &Scheme) -> bool {
    KnownDiagram::from_scheme("", scheme).iter().any(|k| k.matches(result))
}

/// Radicands tried by an `auto` run: square-free parts of `(λ − λ')² ≤ 4k²`.
pub fn default_radicands(k: u32) -> Vec<u64> {
    let mut ps: Vec<u64> = (2..=4 * (k as u64).pow(2)).map(|n| crate::exactnum::square_free_decompose(n).1).collect();
    ps.retain(|&p| p > 1);
    ps.sort_unstable();
    ps.dedup();
    ps
}
