//! The full classification run: local graphs, then one branch per local case.

use serde::Serialize;

use super::golden::{golden_scheme, GoldenError};
use crate::diagsearch::{generate_diagrams_auto, SearchConfig};
use crate::exactnum::Field;
use crate::graphs::{
    canonical_form, extend_locally_with_budget, is_isomorphic, named_graph, to_graph6, Graph, GraphError,
    DEFAULT_LOCAL_BUDGET,
};
use crate::localclass::{classify_local, LocalError};
use crate::scheme::{
    partially_metric_level, q_poly_structures, scheme_from_graph_distances, spectra, SchemeError, CATALOGUE,
};

/// Local cases in the order they are reported.
pub const LOCAL_CASES: &[&str] = &["N3", "K3", "N4", "K4", "2K2", "C4", "C5", "K3xK2", "octahedron"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassifyConfig {
    /// Only this local case, when set.
    pub case: Option<String>,
    pub search_budget: u64,
    pub local_budget: u64,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        ClassifyConfig {
            case: None,
            search_budget: crate::diagsearch::DEFAULT_SEARCH_BUDGET,
            local_budget: DEFAULT_LOCAL_BUDGET,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classified {
    pub local_case: String,
    pub graph: String,
    pub scheme_id: String,
    pub size: usize,
    /// Cosines of the first idempotent, ordered by relation.
    pub cosines: Vec<String>,
    pub provenance: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Exclusion {
    pub local_case: String,
    pub graph: String,
    pub reason: String,
    pub provenance: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseLog {
    pub local_case: String,
    pub branch: String,
    pub nodes: u64,
    pub complete: bool,
    /// Feasible objects found before identification.
    pub found: usize,
    /// Feasible diagrams matching no catalogue scheme.
    pub unmatched: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassifyReport {
    pub local_graphs: Vec<String>,
    pub results: Vec<Classified>,
    pub exclusions: Vec<Exclusion>,
    pub cases: Vec<CaseLog>,
    pub complete: bool,
}

#[derive(Debug, thiserror::Error)]
pub enum ClassifyError {
    #[error("unknown local case {0}; expected one of {}", LOCAL_CASES.join(", "))]
    UnknownCase(String),
    #[error(transparent)]
    Local(#[from] LocalError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error(transparent)]
    Golden(#[from] GoldenError),
    #[error("{0}")]
    Search(String),
    #[error("verification of {0} failed: {1}")]
    Verification(String, String),
}

/// Extension branch parameters: local graph and largest order searched.
fn extension_case(case: &str) -> Option<(&'static str, usize)> {
    match case {
        "octahedron" => Some(("octahedron", 24)),
        "K3xK2" => Some(("K3xK2", 15)),
        "C5" => Some(("C5", 24)),
        "C4" => Some(("C4", 24)),
        "K3" => Some(("K3", 24)),
        "K4" => Some(("K4", 24)),
        _ => None,
    }
}

fn search_case(case: &str) -> Option<SearchConfig> {
    match case {
        "N3" => Some(SearchConfig::new(3, 0, Field::Rational)),
        "N4" => Some(SearchConfig::new(4, 0, Field::Rational).light_tail(true)),
        "2K2" => Some(SearchConfig::new(4, 1, Field::Rational)),
        _ => None,
    }
}

fn catalogue_id(g: &Graph) -> Option<&'static str> {
    let c = canonical_form(g);
    CATALOGUE.iter().find(|e| named_graph(e.graph).is_ok_and(|h| canonical_form(&h) == c)).map(|e| e.id)
}

fn display_of(id: &str) -> String {
    CATALOGUE.iter().find(|e| e.id == id).map_or_else(|| id.to_string(), |e| e.display.to_string())
}

fn graph_name(g: &Graph) -> String {
    ["icosahedron", "octahedron", "K4", "K5", "16-cell", "J(5,2)"]
        .into_iter()
        .find(|n| named_graph(n).is_ok_and(|h| is_isomorphic(&h, g)))
        .map_or_else(|| to_graph6(g), str::to_string)
}

/// Checks a bundled scheme: `m₁ = 4` for a Q-polynomial ordering whose nearest relation is
/// locally the case graph. Returns the size and the first cosine column.
fn verify_result(id: &str, local: &Graph) -> Result<(usize, Vec<String>), ClassifyError> {
    let s = golden_scheme(id)?;
    let sp = spectra(&s)?;
    for st in q_poly_structures(&sp)? {
        if st.ordering.len() < 2 || sp.multiplicity(st.ordering[1]) != 4 {
            continue;
        }
        let g = s.relation_graph(st.nearest_relation);
        if (0..g.order()).all(|v| is_isomorphic(&g.local_graph(v), local)) {
            let cos = sp.cosine_column(st.ordering[1]).iter().map(ToString::to_string).collect();
            return Ok((s.size(), cos));
        }
    }
    Err(ClassifyError::Verification(id.into(), "no Q-polynomial ordering with m1 = 4 and this local graph".into()))
}

/// First multiplicities of the Q-polynomial orderings whose nearest relation is adjacency.
fn first_multiplicities(g: &Graph) -> Result<Vec<usize>, ClassifyError> {
    let s = scheme_from_graph_distances(g)?;
    let sp = spectra(&s)?;
    let mut ms: Vec<usize> = q_poly_structures(&sp)?
        .iter()
        .filter(|st| st.ordering.len() >= 2 && st.nearest_relation == 1)
        .map(|st| sp.multiplicity(st.ordering[1]))
        .collect();
    ms.sort_unstable();
    ms.dedup();
    Ok(ms)
}

fn run_extension(
    case: &str,
    n_max: usize,
    cfg: &ClassifyConfig,
    report: &mut ClassifyReport,
) -> Result<(), ClassifyError> {
    let local = named_graph(case)?;
    let branch = format!("locally-{case} extension, n <= {n_max}");
    let ext = match extend_locally_with_budget(&local, n_max, cfg.local_budget) {
        Ok(e) => e,
        Err(GraphError::BudgetExceeded { budget, found }) => {
            report.complete = false;
            report.cases.push(CaseLog {
                local_case: case.into(),
                branch,
                nodes: budget,
                complete: false,
                found,
                unmatched: 0,
            });
            return Ok(());
        }
        Err(e) => return Err(e.into()),
    };
    report.cases.push(CaseLog {
        local_case: case.into(),
        branch: branch.clone(),
        nodes: ext.nodes,
        complete: true,
        found: ext.graphs.len(),
        unmatched: 0,
    });
    for g in &ext.graphs {
        let ms = first_multiplicities(g)?;
        let name = graph_name(g);
        if !ms.contains(&4) {
            let shown: Vec<String> = ms.iter().map(|m| format!("m1 = {m}")).collect();
            report.exclusions.push(Exclusion {
                local_case: case.into(),
                graph: name,
                reason: format!("first multiplicity {}", shown.join(", ")),
                provenance: branch.clone(),
            });
            continue;
        }
        let s = scheme_from_graph_distances(g)?;
        let pm = partially_metric_level(&s, 1)?;
        if s.degree() < 2 {
            report.exclusions.push(Exclusion {
                local_case: case.into(),
                graph: name,
                reason: format!("partially_metric_level = {}", pm.t),
                provenance: branch.clone(),
            });
            continue;
        }
        match catalogue_id(g) {
            Some(id) => {
                let (size, cosines) = verify_result(id, &local)?;
                report.results.push(Classified {
                    local_case: case.into(),
                    graph: display_of(id),
                    scheme_id: id.into(),
                    size,
                    cosines,
                    provenance: branch.clone(),
                });
            }
            None => {
                return Err(ClassifyError::Verification(name, "m1 = 4 graph missing from the catalogue".into()));
            }
        }
    }
    Ok(())
}

fn run_search(
    case: &str,
    mut sc: SearchConfig,
    cfg: &ClassifyConfig,
    report: &mut ClassifyReport,
) -> Result<(), ClassifyError> {
    sc.budget = cfg.search_budget;
    let out = generate_diagrams_auto(&sc).map_err(|e| ClassifyError::Search(e.to_string()))?;
    let branch = format!(
        "diagram search k1 = {}, a1 = {}{}, all fields",
        sc.k1,
        sc.a1,
        if sc.light_tail { ", light tail" } else { "" }
    );
    report.complete &= out.complete;
    report.cases.push(CaseLog {
        local_case: case.into(),
        branch: branch.clone(),
        nodes: out.stats.nodes,
        complete: out.complete,
        found: out.results.len(),
        unmatched: out.unmatched(),
    });
    let local = named_graph(case)?;
    for id in out.matched_ids() {
        let (size, cosines) = verify_result(id, &local)?;
        report.results.push(Classified {
            local_case: case.into(),
            graph: display_of(id),
            scheme_id: id.into(),
            size,
            cosines,
            provenance: branch.clone(),
        });
    }
    Ok(())
}

/// Classifies Q-polynomial schemes with `m₁ = 4` by their local graph.
pub fn cmd_classify(cfg: &ClassifyConfig) -> Result<ClassifyReport, ClassifyError> {
    if let Some(c) = &cfg.case {
        if !LOCAL_CASES.contains(&c.as_str()) {
            return Err(ClassifyError::UnknownCase(c.clone()));
        }
    }
    let local = classify_local(9)?;
    let mut found: Vec<String> = local.solutions.iter().map(|s| s.graph.clone()).collect();
    found.sort_by_key(|g| LOCAL_CASES.iter().position(|c| c == g).unwrap_or(usize::MAX));
    let mut report =
        ClassifyReport { local_graphs: found.clone(), results: vec![], exclusions: vec![], cases: vec![], complete: true };
    for case in &found {
        if cfg.case.as_ref().is_some_and(|c| c != case) {
            continue;
        }
        if let Some((h, n_max)) = extension_case(case) {
            run_extension(h, n_max, cfg, &mut report)?;
        } else if let Some(sc) = search_case(case) {
            run_search(case, sc, cfg, &mut report)?;
        } else {
            return Err(ClassifyError::Verification(case.clone(), "local graph without a branch".into()));
        }
    }
    report.results.sort_by(|a, b| (a.size, &a.scheme_id).cmp(&(b.size, &b.scheme_id)));
    Ok(report)
}
