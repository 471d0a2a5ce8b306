//! Neighbourhood graphs admitting a two-cosine embedding on a 2-sphere.
//!
//! The neighbours of a point form a spherical code on the sphere cut out by the
//! hyperplane `⟨x₀, ·⟩ = ω₁`. With `B₁` the graph of the nearest relation on them, the
//! Gram matrix is `G = I + β₁B₁ + β₂(J − I − B₁)` and must be PSD of rank at most 3.
//! Since the neighbours of `x₀` sum to `θ₁x̂₀` they are centred on the sphere, which
//! forces the all-ones eigenvalue `μ₀ = 1 + kβ₁ + (n−1−k)β₂` of `G` to vanish.

mod biv;

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

pub use biv::BivariatePolynomial;
use biv::TPoly;

use crate::exactnum::{ExactMatrix, ExactPolynomial, NumError, QuadNumber, Rational};
use crate::graphs::{canonical_form, enumerate_regular_graphs, named_graph, to_graph6, Graph};

/// `C(d+s−1, d−1) + C(d+s−2, d−1)`: the largest `s`-distance set on `S^{d−1}`.
pub fn delsarte_bound(d: u64, s: u64) -> u64 {
    assert!(d >= 1 && s >= 1);
    binomial(d + s - 1, d - 1) + binomial(d + s - 2, d - 1)
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeometricLabel {
    Triangle,
    Tetrahedron,
    TwoAntiprism,
    Pentagon,
    ThreePrism,
    Octahedron,
}

impl fmt::Display for GeometricLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GeometricLabel::Triangle => "triangle",
            GeometricLabel::Tetrahedron => "tetrahedron",
            GeometricLabel::TwoAntiprism => "2-antiprism",
            GeometricLabel::Pentagon => "pentagon",
            GeometricLabel::ThreePrism => "3-prism",
            GeometricLabel::Octahedron => "octahedron",
        };
        f.write_str(s)
    }
}

/// A candidate neighbourhood graph and its Gram matrix in the unknowns `β₁, β₂`.
#[derive(Clone, Debug)]
pub struct LocalGramProblem {
    pub graph: Graph,
    pub n: usize,
    pub valency: usize,
}

impl LocalGramProblem {
    pub fn new(graph: Graph) -> Result<Self, LocalError> {
        let valency = graph.regularity().ok_or(LocalError::NotRegular)?;
        if graph.order() < 2 {
            return Err(LocalError::TooSmall(graph.order()));
        }
        Ok(LocalGramProblem { n: graph.order(), valency, graph })
    }

    /// Only one cosine class is present (`B₁` empty or complete).
    pub fn single_class(&self) -> bool {
        self.valency == 0 || self.valency == self.n - 1
    }

    pub fn gram(&self, beta1: &QuadNumber, beta2: &QuadNumber) -> ExactMatrix {
        ExactMatrix::from_fn(self.n, self.n, |x, y| {
            if x == y {
                QuadNumber::one()
            } else if self.graph.has_edge(x, y) {
                beta1.clone()
            } else {
                beta2.clone()
            }
        })
    }

    fn adjacency(&self) -> ExactMatrix {
        self.gram(&QuadNumber::one(), &QuadNumber::zero()).sub(&ExactMatrix::identity(self.n)).unwrap()
    }

    /// `χ_B(x)/(x − k)`: the characteristic polynomial of `B₁` on the complement of the all-ones vector.
    fn reduced_char_poly(&self) -> Result<ExactPolynomial, NumError> {
        let chi = self.adjacency().char_poly()?;
        let (q, r) = chi.div_rem(&ExactPolynomial::from_ints(&[-(self.valency as i64), 1]))?;
        debug_assert!(r.is_zero());
        Ok(q)
    }
}

/// Coefficients `h₀, …, h_{n−4}` of `det(tI − G)` as polynomials in `(β₁, β₂)`; rank of `G`
/// is at most 3 exactly when all of them vanish.
pub fn rank_constraints(problem: &LocalGramProblem) -> Result<Vec<BivariatePolynomial>, LocalError> {
    let n = problem.n;
    let k = problem.valency as i64;
    let q = problem.reduced_char_poly()?;
    let mu0 = BivariatePolynomial::linear(1, k, n as i64 - 1 - k);
    let a = BivariatePolynomial::linear(1, 0, -1);
    let s = BivariatePolynomial::linear(0, 1, -1);
    // eigenvalues a + sλ over the roots λ of q: Σ_j q_j (t − a)^j s^{n−1−j}
    let t_minus_a = TPoly::t_minus(&a);
    let mut rest = TPoly(vec![]);
    for (j, qj) in q.coeffs().iter().enumerate() {
        let c = qj.to_rational().ok_or(LocalError::Num(NumError::NotRational))?;
        let coeff = BivariatePolynomial::constant(c).mul(&s.pow(n - 1 - j));
        rest = rest.add(&t_minus_a.pow(j).scale(&coeff));
    }
    let chi = TPoly::t_minus(&mu0).mul(&rest);
    Ok(chi.0.into_iter().take(n.saturating_sub(3)).collect())
}

/// `c + m·t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Affine {
    pub constant: QuadNumber,
    pub slope: QuadNumber,
}

impl Affine {
    pub fn at(&self, t: &QuadNumber) -> QuadNumber {
        &self.constant + &(&self.slope * t)
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.constant.is_zero(), self.slope.is_zero()) {
            (_, true) => write!(f, "{}", self.constant),
            (true, false) if self.slope.is_one() => write!(f, "t"),
            (true, false) => write!(f, "({})*t", self.slope),
            (false, false) if self.slope.is_one() => write!(f, "{}+t", self.constant),
            (false, false) => write!(f, "{}+({})*t", self.constant, self.slope),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Endpoint {
    pub value: QuadNumber,
    pub closed: bool,
}

/// Feasible cosines for one candidate graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BetaSolution {
    /// A single point; a cosine is `None` when its class is empty.
    Point { beta1: Option<QuadNumber>, beta2: Option<QuadNumber> },
    /// `(β₁, β₂) = (beta1(t), beta2(t))` for `t` between the endpoints.
    Segment { beta1: Affine, beta2: Affine, lower: Endpoint, upper: Endpoint },
}

impl fmt::Display for BetaSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |b: &Option<QuadNumber>| b.as_ref().map_or("-".to_string(), ToString::to_string);
        match self {
            BetaSolution::Point { beta1, beta2 } => write!(f, "(b1, b2) = ({}, {})", show(beta1), show(beta2)),
            BetaSolution::Segment { beta1, beta2, lower, upper } => write!(
                f,
                "(b1, b2) = ({beta1}, {beta2}), t in {}{}, {}{}",
                if lower.closed { "[" } else { "(" },
                lower.value,
                upper.value,
                if upper.closed { "]" } else { ")" }
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalSolution {
    pub graph: String,
    pub graph6: String,
    pub n: usize,
    pub valency: usize,
    pub geometric_label: Option<GeometricLabel>,
    pub solutions: Vec<BetaSolution>,
}

/// A candidate the exact solver could not decide.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnresolvedCase {
    pub graph: String,
    pub graph6: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalClassification {
    pub solutions: Vec<LocalSolution>,
    pub unresolved: Vec<UnresolvedCase>,
    pub candidates: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LocalError {
    #[error("candidate graph is not regular")]
    NotRegular,
    #[error("candidate graph has {0} vertices, need at least 2")]
    TooSmall(usize),
    #[error(transparent)]
    Num(#[from] NumError),
}

/// Runs the local classification over all regular graphs on `3..=k_max` vertices.
pub fn classify_local(k_max: usize) -> Result<LocalClassification, LocalError> {
    let cap = delsarte_bound(3, 2) as usize;
    let single_cap = delsarte_bound(3, 1) as usize;
    let mut graphs = Vec::new();
    for n in 3..=k_max.min(cap) {
        for k in 0..n {
            if (k == 0 || k == n - 1) && n > single_cap {
                continue;
            }
            graphs.extend(enumerate_regular_graphs(n, k));
        }
    }
    let candidates = graphs.len();
    let results: Vec<Result<Outcome, LocalError>> = graphs.into_par_iter().map(solve_candidate).collect();
    let mut solutions = Vec::new();
    let mut unresolved = Vec::new();
    for r in results {
        match r? {
            Outcome::Feasible(s) => solutions.push(s),
            Outcome::Infeasible => {}
            Outcome::Unresolved(u) => unresolved.push(u),
        }
    }
    Ok(LocalClassification { solutions, unresolved, candidates })
}

enum Outcome {
    Feasible(LocalSolution),
    Infeasible,
    Unresolved(UnresolvedCase),
}

/// Solves one candidate graph and re-verifies every answer on the explicit Gram matrix.
pub fn solve_local(graph: &Graph) -> Result<Option<LocalSolution>, LocalError> {
    match solve_candidate(graph.clone())? {
        Outcome::Feasible(s) => Ok(Some(s)),
        _ => Ok(None),
    }
}

fn solve_candidate(graph: Graph) -> Result<Outcome, LocalError> {
    let problem = LocalGramProblem::new(graph)?;
    let name = describe_graph(&problem.graph);
    let graph6 = to_graph6(&problem.graph);
    let sols = if problem.single_class() {
        single_class_solutions(&problem)
    } else {
        match two_class_solutions(&problem)? {
            Ok(s) => s,
            Err(reason) => return Ok(Outcome::Unresolved(UnresolvedCase { graph: name, graph6, reason })),
        }
    };
    for s in &sols {
        verify_solution(&problem, s)?;
    }
    if sols.is_empty() {
        return Ok(Outcome::Infeasible);
    }
    Ok(Outcome::Feasible(LocalSolution {
        geometric_label: label_for(&problem.graph),
        graph: name,
        graph6,
        n: problem.n,
        valency: problem.valency,
        solutions: sols,
    }))
}

fn half() -> QuadNumber {
    QuadNumber::frac(1, 2)
}

fn single_class_solutions(p: &LocalGramProblem) -> Vec<BetaSolution> {
    // μ₀ = 1 + (n−1)β = 0; rank n − 1 ≤ 3 needs n ≤ 4
    if p.n > 4 {
        return vec![];
    }
    let beta = QuadNumber::frac(-1, p.n as i64 - 1);
    if beta >= half() {
        return vec![];
    }
    if p.valency == 0 {
        vec![BetaSolution::Point { beta1: None, beta2: Some(beta) }]
    } else {
        vec![BetaSolution::Point { beta1: Some(beta), beta2: None }]
    }
}

/// Eigenvalue classes of `B₁` orthogonal to the all-ones vector, with multiplicities, and
/// the degree of the part without roots of degree ≤ 2.
fn eigen_classes(p: &LocalGramProblem) -> Result<(Vec<(QuadNumber, usize)>, usize), LocalError> {
    let split = p.reduced_char_poly()?.split_rational()?;
    let classes = split.roots().map(|(r, m)| (r.clone(), m)).collect();
    Ok((classes, split.residual.degree().unwrap_or(0)))
}

/// Linear condition `c0 + c1·t ≥ 0` (or `> 0` when strict).
struct Condition {
    c0: QuadNumber,
    c1: QuadNumber,
    strict: bool,
}

fn two_class_solutions(p: &LocalGramProblem) -> Result<Result<Vec<BetaSolution>, String>, LocalError> {
    let n = p.n as i64;
    let k = p.valency as i64;
    let (classes, residual) = eigen_classes(p)?;
    let need_zero = p.n.saturating_sub(3);
    let mut out = Vec::new();

    if need_zero <= 1 {
        // μ₀ = 0 alone gives rank ≤ 3: the line β₂ = −(1 + kβ₁)/(n−1−k)
        if residual > 0 {
            return Ok(Err(format!("eigenvalues of degree > 2 (residual degree {residual})")));
        }
        let line = Affine { constant: QuadNumber::frac(-1, n - 1 - k), slope: QuadNumber::frac(-k, n - 1 - k) };
        if let Some(s) = segment_on_line(&line, &classes) {
            out.push(s);
        }
        return Ok(Ok(out));
    }

    // a degree ≥ 3 eigenvalue shares its multiplicity with at least two conjugates
    if residual / 3 >= need_zero - 1 {
        return Ok(Err(format!("eigenvalues of degree > 2 with possible multiplicity {}", residual / 3)));
    }
    for (lambda, mult) in &classes {
        if 1 + mult < need_zero {
            continue;
        }
        // kβ₁ + (n−1−k)β₂ = −1 and λβ₁ − (1+λ)β₂ = −1
        let one = QuadNumber::one();
        let (a11, a12) = (QuadNumber::int(k), QuadNumber::int(n - 1 - k));
        let (a21, a22) = (lambda.clone(), -&(&one + lambda));
        let det = &(&a11 * &a22) - &(&a12 * &a21);
        if det.is_zero() {
            continue;
        }
        let b1 = (&(-&a22) + &a12).try_div(&det)?;
        let b2 = (&(-&a11) + &a21).try_div(&det)?;
        let h = half();
        if b1 >= h || b2 >= h || b1 <= b2 {
            continue;
        }
        if p.gram(&b1, &b2).is_psd()? {
            out.push(BetaSolution::Point { beta1: Some(b1), beta2: Some(b2) });
        }
    }
    Ok(Ok(out))
}

/// Intersects the line `β₁ = t, β₂ = line(t)` with the strict and PSD conditions.
fn segment_on_line(line: &Affine, classes: &[(QuadNumber, usize)]) -> Option<BetaSolution> {
    let one = QuadNumber::one();
    let h = half();
    let mut conds = vec![
        // β₁ < 1/2
        Condition { c0: h.clone(), c1: -&one, strict: true },
        // β₂ < 1/2
        Condition { c0: &h - &line.constant, c1: -&line.slope, strict: true },
        // β₁ > β₂
        Condition { c0: -&line.constant, c1: &one - &line.slope, strict: true },
    ];
    for (lambda, _) in classes {
        // 1 + λβ₁ − (1+λ)β₂ ≥ 0
        let l1 = &one + lambda;
        conds.push(Condition {
            c0: &one - &(&l1 * &line.constant),
            c1: lambda - &(&l1 * &line.slope),
            strict: false,
        });
    }
    let mut lower: Option<Endpoint> = None;
    let mut upper: Option<Endpoint> = None;
    for c in conds {
        if c.c1.is_zero() {
            let ok = if c.strict { c.c0.is_positive() } else { !c.c0.is_negative() };
            if !ok {
                return None;
            }
            continue;
        }
        let root = (-&c.c0).try_div(&c.c1).ok()?;
        let e = Endpoint { value: root, closed: !c.strict };
        if c.c1.is_positive() {
            lower = Some(tighter(lower, e, true));
        } else {
            upper = Some(tighter(upper, e, false));
        }
    }
    let (lower, upper) = (lower?, upper?);
    match lower.value.total_cmp(&upper.value) {
        std::cmp::Ordering::Greater => None,
        std::cmp::Ordering::Equal if lower.closed && upper.closed => {
            let t = lower.value;
            Some(BetaSolution::Point { beta2: Some(line.at(&t)), beta1: Some(t) })
        }
        std::cmp::Ordering::Equal => None,
        std::cmp::Ordering::Less => {
            Some(BetaSolution::Segment { beta1: Affine { constant: QuadNumber::zero(), slope: one }, beta2: line.clone(), lower, upper })
        }
    }
}

fn tighter(cur: Option<Endpoint>, new: Endpoint, is_lower: bool) -> Endpoint {
    let Some(cur) = cur else { return new };
    match new.value.total_cmp(&cur.value) {
        std::cmp::Ordering::Equal => Endpoint { value: cur.value, closed: cur.closed && new.closed },
        std::cmp::Ordering::Greater if is_lower => new,
        std::cmp::Ordering::Less if !is_lower => new,
        _ => cur,
    }
}

/// Points at which a solution is re-checked on the explicit Gram matrix.
pub fn sample_points(s: &BetaSolution) -> Vec<(QuadNumber, QuadNumber)> {
    match s {
        BetaSolution::Point { beta1, beta2 } => {
            let z = QuadNumber::zero();
            vec![(beta1.clone().unwrap_or(z.clone()), beta2.clone().unwrap_or(z))]
        }
        BetaSolution::Segment { beta1, beta2, lower, upper } => {
            let mid = (&lower.value + &upper.value).scale(&Rational::new(1.into(), 2.into()));
            let mut ts = vec![mid];
            for e in [lower, upper] {
                if e.closed {
                    ts.push(e.value.clone());
                }
            }
            ts.iter().map(|t| (beta1.at(t), beta2.at(t))).collect()
        }
    }
}

fn verify_solution(p: &LocalGramProblem, s: &BetaSolution) -> Result<(), LocalError> {
    for (b1, b2) in sample_points(s) {
        let g = p.gram(&b1, &b2);
        assert!(g.is_psd()?, "solver returned a non-PSD Gram for {}", describe_graph(&p.graph));
        assert!(g.rank() <= 3, "solver returned a Gram of rank > 3 for {}", describe_graph(&p.graph));
    }
    Ok(())
}

const KNOWN_LOCAL_GRAPHS: &[(&str, Option<GeometricLabel>)] = &[
    ("N3", Some(GeometricLabel::Triangle)),
    ("K3", Some(GeometricLabel::Triangle)),
    ("N4", Some(GeometricLabel::Tetrahedron)),
    ("K4", Some(GeometricLabel::Tetrahedron)),
    ("2K2", Some(GeometricLabel::TwoAntiprism)),
    ("C4", Some(GeometricLabel::TwoAntiprism)),
    ("C5", Some(GeometricLabel::Pentagon)),
    ("K3xK2", Some(GeometricLabel::ThreePrism)),
    ("octahedron", Some(GeometricLabel::Octahedron)),
    ("C6", None),
    ("3K2", None),
    ("2K3", None),
    ("K3,3", None),
    ("cube", None),
];

fn known_graphs() -> &'static Vec<(String, Graph, Option<GeometricLabel>)> {
    static KNOWN: std::sync::OnceLock<Vec<(String, Graph, Option<GeometricLabel>)>> = std::sync::OnceLock::new();
    KNOWN.get_or_init(|| {
        KNOWN_LOCAL_GRAPHS
            .iter()
            .map(|(name, label)| {
                let g = if *name == "cube" { crate::graphs::hypercube(3) } else { named_graph(name).unwrap() };
                (name.to_string(), canonical_form(&g), *label)
            })
            .collect()
    })
}

/// Short name of a small graph, or its graph6 code.
pub fn describe_graph(g: &Graph) -> String {
    let c = canonical_form(g);
    known_graphs().iter().find(|(_, k, _)| *k == c).map_or_else(|| to_graph6(g), |(name, _, _)| name.clone())
}

fn label_for(g: &Graph) -> Option<GeometricLabel> {
    let c = canonical_form(g);
    known_graphs().iter().find(|(_, k, _)| *k == c).and_then(|(_, _, l)| *l)
}


#[cfg(test)]
mod classification {
    use super::*;

    #[test]
    fn nine_graphs() {
        let c = classify_local(9).unwrap();
        assert!(c.unresolved.is_empty(), "{:?}", c.unresolved);
        let mut names: Vec<&str> = c.solutions.iter().map(|s| s.graph.as_str()).collect();
        names.sort_unstable();
        assert_eq!(names, ["2K2", "C4", "C5", "K3", "K3xK2", "K4", "N3", "N4", "octahedron"]);
        assert!(c.solutions.iter().all(|s| s.geometric_label.is_some()));
    }

    #[test]
    fn constraints_match_characteristic_polynomial() {
        let pts = [("1/5", "-2/7"), ("-1/3", "1/4"), ("2/9", "-3/5")];
        for g in [Graph::cycle(6), named_graph("prism").unwrap(), named_graph("cube").unwrap_or(crate::graphs::hypercube(3))] {
            let p = LocalGramProblem::new(g).unwrap();
            let hs = rank_constraints(&p).unwrap();
            for (a, b) in pts {
                let (a, b): (QuadNumber, QuadNumber) = (a.parse().unwrap(), b.parse().unwrap());
                let chi = p.gram(&a, &b).char_poly().unwrap();
                for (i, h) in hs.iter().enumerate() {
                    assert_eq!(h.eval(&a, &b), chi.coeff(i));
                }
            }
        }
    }
}
