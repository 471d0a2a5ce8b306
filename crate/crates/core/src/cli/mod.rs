//! Command-line surface: scheme files, the golden bundle and JSON run reports.
//!
//! Exit codes: 0 success, 1 refutation or negative finding, 2 usage or parse error,
//! 3 budget exhausted.

mod classify;
mod golden;
mod schemefile;

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

pub use classify::{
    cmd_classify, CaseLog, ClassifyConfig, ClassifyError, ClassifyReport, Classified, Exclusion, LOCAL_CASES,
};
pub use golden::{golden_file, golden_scheme, manifest_hash, sha256_hex, GoldenError, GoldenFile, GOLDEN, MANIFEST};
pub use schemefile::{parse_scheme_file, ParseError, SchemeFile};

use crate::diagsearch::{generate_diagrams, generate_diagrams_auto, SearchConfig, DEFAULT_SEARCH_BUDGET, KISSING_NUMBER_4};
use crate::exactnum::{Field, QuadNumber};
use crate::graphs::{
    canonical_form, extend_locally_with_budget, from_graph6, named_graph, to_graph6, Graph, GraphError,
    DEFAULT_LOCAL_BUDGET,
};
use crate::localclass::{classify_local, delsarte_bound};
use crate::scheme::{degree_bound, light_tail_bound, q_poly_structures, spectra, verify_scheme, Scheme, CATALOGUE};

#[derive(Parser, Debug, Clone)]
#[command(name = "schemeforge", version, about = "Exact tools for Q-polynomial association schemes")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Emit::Json, global = true)]
    pub emit: Emit,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Emit {
    Json,
    Text,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Check the scheme axioms of a relation matrix file.
    Verify { file: PathBuf },
    /// Eigenmatrices, Krein parameters and cosines of a scheme.
    Spectra {
        file: Option<PathBuf>,
        /// Distance partition of a named graph.
        #[arg(long, conflicts_with_all = ["file", "id"])]
        graph: Option<String>,
        /// A bundled scheme, e.g. AS16[30].
        #[arg(long, conflicts_with = "file")]
        id: Option<String>,
    },
    /// Local graphs admitting a rank-3 spherical representation.
    ClassifyLocal {
        #[arg(long, default_value_t = 9)]
        k_max: usize,
    },
    /// Relation-distribution diagrams of the nearest relation.
    Search {
        #[arg(long)]
        k1: u32,
        #[arg(long)]
        a1: u32,
        #[arg(long)]
        light_tail: bool,
        /// rational, quad:<p> or auto.
        #[arg(long, default_value = "auto")]
        field: String,
        #[arg(long)]
        max_depth: Option<usize>,
        #[arg(long, env = "SCHEMEFORGE_BUDGET", default_value_t = DEFAULT_SEARCH_BUDGET)]
        budget: u64,
        /// Skip Yamazaki's rule.
        #[arg(long)]
        no_yamazaki: bool,
    },
    /// Connected locally-H graphs up to a given order.
    Recognize {
        /// Graph name or graph6 code.
        #[arg(long)]
        local: String,
        #[arg(long)]
        max_order: usize,
        #[arg(long, env = "SCHEMEFORGE_BUDGET", default_value_t = DEFAULT_LOCAL_BUDGET)]
        budget: u64,
    },
    /// Numerical bounds used by the classification.
    #[command(subcommand)]
    Bound(BoundCommand),
    /// The complete classification for first multiplicity 4.
    Classify {
        /// Restrict to one local graph.
        #[arg(long)]
        case: Option<String>,
        #[arg(long, env = "SCHEMEFORGE_BUDGET", default_value_t = DEFAULT_SEARCH_BUDGET)]
        budget: u64,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum BoundCommand {
    /// Largest spherical s-distance set in dimension d.
    Delsarte { d: u64, s: u64 },
    /// Kissing number in dimension 4.
    Kissing,
    /// Multiplicity lower bound from an eigenvalue theta of a k-regular graph.
    LightTail {
        k: i64,
        #[arg(allow_hyphen_values = true)]
        theta: String,
        a1: i64,
        b1: i64,
    },
    /// Largest degree for nearest valency v1 over the given field.
    Degree { v1: usize, field: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RunStatus {
    Ok,
    Refuted,
    BudgetExhausted,
}

impl RunStatus {
    pub fn exit_code(self) -> i32 {
        match self {
            RunStatus::Ok => 0,
            RunStatus::Refuted => 1,
            RunStatus::BudgetExhausted => 3,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub elapsed_ms: u128,
}

/// Everything a run prints in JSON mode. Only `timing` varies between identical runs.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub config: Value,
    pub status: RunStatus,
    pub results: Value,
    pub timing: Timing,
    pub version: String,
}

/// Result of a command before it is wrapped in a report.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub config: Value,
    pub results: Value,
    pub status: RunStatus,
    pub text: String,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error("{0}")]
    Failed(String),
}

fn failed(e: impl std::fmt::Display) -> CliError {
    CliError::Failed(e.to_string())
}

fn to_json(v: &impl Serialize) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn read_scheme_file(path: &PathBuf) -> Result<SchemeFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    parse_scheme_file(&text).map_err(|source| CliError::Parse { path: path.display().to_string(), source })
}

fn parse_graph(s: &str) -> Result<Graph, CliError> {
    named_graph(s).or_else(|_| from_graph6(s)).map_err(|_| CliError::Usage(format!("unknown graph {s:?}")))
}

fn parse_field(s: &str) -> Result<Field, CliError> {
    s.parse::<Field>().map_err(|e| CliError::Usage(format!("field {s:?}: {e}")))
}

fn catalogue_id_of(g: &Graph) -> Option<&'static str> {
    let c = canonical_form(g);
    CATALOGUE.iter().find(|e| named_graph(e.graph).is_ok_and(|h| canonical_form(&h) == c)).map(|e| e.id)
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Verify { file } => cmd_verify(file),
        Command::Spectra { file, graph, id } => cmd_spectra(file.as_ref(), graph.as_deref(), id.as_deref()),
        Command::ClassifyLocal { k_max } => cmd_classify_local(*k_max),
        Command::Search { k1, a1, light_tail, field, max_depth, budget, no_yamazaki } => {
            let mut cfg = SearchConfig::new(*k1, *a1, Field::Rational).light_tail(*light_tail);
            cfg.max_depth = *max_depth;
            cfg.budget = *budget;
            cfg.yamazaki = !no_yamazaki;
            let auto = field == "auto";
            if !auto {
                cfg.field = parse_field(field)?;
            }
            cmd_search(&cfg, auto)
        }
        Command::Recognize { local, max_order, budget } => cmd_recognize(local, *max_order, *budget),
        Command::Bound(b) => cmd_bound(b),
        Command::Classify { case, budget } => {
            let cfg = ClassifyConfig { case: case.clone(), search_budget: *budget, ..ClassifyConfig::default() };
            let report = cmd_classify(&cfg)?;
            Ok(classify_outcome(&cfg, &report))
        }
    }
}

fn scheme_summary(s: &Scheme) -> Value {
    json!({ "size": s.size(), "degree": s.degree(), "valencies": s.valencies() })
}

fn cmd_verify(path: &PathBuf) -> Result<Outcome, CliError> {
    let f = read_scheme_file(path)?;
    let config = json!({ "file": path.display().to_string(), "id": f.id });
    Ok(match verify_scheme(&f.relations) {
        Ok(s) => {
            let text = format!("scheme: |X| = {}, d = {}, valencies {:?}", s.size(), s.degree(), s.valencies());
            Outcome { config, results: scheme_summary(&s), status: RunStatus::Ok, text }
        }
        Err(r) => {
            let text = format!("not a scheme: {r}");
            Outcome { config, results: json!({ "refutation": r }), status: RunStatus::Refuted, text }
        }
    })
}

fn cmd_spectra(file: Option<&PathBuf>, graph: Option<&str>, id: Option<&str>) -> Result<Outcome, CliError> {
    let (config, scheme) = match (file, graph, id) {
        (Some(p), None, None) => {
            let f = read_scheme_file(p)?;
            let s = verify_scheme(&f.relations).map_err(|r| failed(format!("not a scheme: {r}")))?;
            (json!({ "file": p.display().to_string() }), s)
        }
        (None, Some(g), None) => {
            let s = crate::scheme::scheme_from_graph_distances(&parse_graph(g)?).map_err(failed)?;
            (json!({ "graph": g }), s)
        }
        (None, None, Some(i)) => (json!({ "id": i }), golden_scheme(i).map_err(|e| CliError::Usage(e.to_string()))?),
        _ => return Err(CliError::Usage("give exactly one of FILE, --graph, --id".into())),
    };
    let sp = spectra(&scheme).map_err(failed)?;
    let structures = q_poly_structures(&sp).map_err(failed)?;
    let mut text = format!("|X| = {}, d = {}, field {}\n", scheme.size(), scheme.degree(), sp.field);
    for (j, col) in sp.cosines.iter().enumerate() {
        let c: Vec<String> = col.iter().map(ToString::to_string).collect();
        text += &format!("E{j}: m = {}, cosines ({})\n", sp.multiplicities[j], c.join(", "));
    }
    for st in &structures {
        text += &format!(
            "Q-polynomial ordering {:?}: nearest relation {}, metric level {}\n",
            st.ordering, st.nearest_relation, st.metricity.t
        );
    }
    let results = json!({ "scheme": scheme_summary(&scheme), "spectra": sp, "q_polynomial": structures });
    Ok(Outcome { config, results, status: RunStatus::Ok, text: text.trim_end().into() })
}

fn cmd_classify_local(k_max: usize) -> Result<Outcome, CliError> {
    let c = classify_local(k_max).map_err(failed)?;
    let mut text = format!("{} candidates, {} feasible\n", c.candidates, c.solutions.len());
    for s in &c.solutions {
        let label = s.geometric_label.map_or("-".to_string(), |l| l.to_string());
        for b in &s.solutions {
            text += &format!("{:<11} {:<14} {b}\n", s.graph, label);
        }
    }
    for u in &c.unresolved {
        text += &format!("unresolved {}: {}\n", u.graph, u.reason);
    }
    Ok(Outcome { config: json!({ "k_max": k_max }), results: to_json(&c), status: RunStatus::Ok, text: text.trim_end().into() })
}

fn cmd_search(cfg: &SearchConfig, auto: bool) -> Result<Outcome, CliError> {
    let out = if auto { generate_diagrams_auto(cfg) } else { generate_diagrams(cfg) }
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let mut config = to_json(cfg);
    if auto {
        config["field"] = json!("auto");
    }
    let mut text = String::new();
    for r in &out.results {
        text += &format!("{r}\n");
    }
    let pruned: Vec<String> = out.stats.pruned_by.iter().map(|(k, v)| format!("{k}={v}")).collect();
    text += &format!("nodes {}, {} result(s), {} unmatched\npruned: {}", out.stats.nodes, out.results.len(), out.unmatched(), pruned.join(" "));
    let status = if out.complete { RunStatus::Ok } else { RunStatus::BudgetExhausted };
    let results = json!({ "results": out.results, "stats": out.stats, "complete": out.complete });
    Ok(Outcome { config, results, status, text })
}

fn cmd_recognize(local: &str, max_order: usize, budget: u64) -> Result<Outcome, CliError> {
    let h = parse_graph(local)?;
    let config = json!({ "local": local, "local_graph6": to_graph6(&h), "max_order": max_order, "budget": budget });
    match extend_locally_with_budget(&h, max_order, budget) {
        Ok(ext) => {
            let graphs: Vec<Value> = ext
                .graphs
                .iter()
                .map(|g| json!({ "order": g.order(), "graph6": to_graph6(g), "catalogue_id": catalogue_id_of(g) }))
                .collect();
            let mut text = format!("{} locally-{local} graph(s) on at most {max_order} vertices\n", graphs.len());
            for g in &ext.graphs {
                text += &format!("{} {} {}\n", g.order(), to_graph6(g), catalogue_id_of(g).unwrap_or("-"));
            }
            let status = if graphs.is_empty() { RunStatus::Refuted } else { RunStatus::Ok };
            let results = json!({ "graphs": graphs, "nodes": ext.nodes });
            Ok(Outcome { config, results, status, text: text.trim_end().into() })
        }
        Err(GraphError::BudgetExceeded { budget, found }) => Ok(Outcome {
            config,
            results: json!({ "found": found }),
            status: RunStatus::BudgetExhausted,
            text: format!("budget of {budget} nodes exhausted after {found} graph(s)"),
        }),
        Err(e) => Err(CliError::Usage(e.to_string())),
    }
}

fn cmd_bound(b: &BoundCommand) -> Result<Outcome, CliError> {
    let ok = |config: Value, value: String, text: String| Outcome {
        config,
        results: json!({ "bound": value }),
        status: RunStatus::Ok,
        text,
    };
    Ok(match b {
        BoundCommand::Delsarte { d, s } => {
            let v = delsarte_bound(*d, *s);
            ok(json!({ "bound": "delsarte", "d": d, "s": s }), v.to_string(), format!("{v}"))
        }
        BoundCommand::Kissing => {
            ok(json!({ "bound": "kissing", "d": 4 }), KISSING_NUMBER_4.to_string(), KISSING_NUMBER_4.to_string())
        }
        BoundCommand::LightTail { k, theta, a1, b1 } => {
            let t: QuadNumber = theta.parse().map_err(|e| CliError::Usage(format!("theta {theta:?}: {e}")))?;
            let lb = light_tail_bound(*k, &t, *a1, *b1).map_err(|e| CliError::Usage(e.to_string()))?;
            let v = lb.bound.to_string();
            ok(json!({ "bound": "light_tail", "k": k, "theta": t, "a1": a1, "b1": b1 }), v.clone(), v)
        }
        BoundCommand::Degree { v1, field } => {
            let f = parse_field(field)?;
            let v = degree_bound(*v1, f);
            ok(json!({ "bound": "degree", "v1": v1, "field": f }), v.to_string(), v.to_string())
        }
    })
}

fn classify_outcome(cfg: &ClassifyConfig, r: &ClassifyReport) -> Outcome {
    let mut text = format!("local graphs: {}\n", r.local_graphs.join(", "));
    for c in &r.results {
        text += &format!("{:<9} {:<10} via {}  [{}]\n", c.scheme_id, c.graph, c.local_case, c.provenance);
    }
    for e in &r.exclusions {
        text += &format!("excluded {} (local {}): {}\n", e.graph, e.local_case, e.reason);
    }
    for c in &r.cases {
        if !c.complete {
            text += &format!("incomplete: {} ({})\n", c.local_case, c.branch);
        }
    }
    let status = if r.complete { RunStatus::Ok } else { RunStatus::BudgetExhausted };
    Outcome { config: to_json(cfg), results: to_json(r), status, text: text.trim_end().into() }
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    use std::io::Write;
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

/// Parses `args`, runs the command, prints the report and returns the exit code.
pub fn main_from_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let start = Instant::now();
    match execute(&cli) {
        Ok(out) => {
            match cli.emit {
                Emit::Text => emit(&out.text),
                Emit::Json => {
                    let report = RunReport {
                        command: args.iter().map(|a| a.to_string_lossy().into_owned()).collect(),
                        config: out.config,
                        status: out.status,
                        results: out.results,
                        timing: Timing { elapsed_ms: start.elapsed().as_millis() },
                        version: env!("CARGO_PKG_VERSION").to_string(),
                    };
                    emit(&serde_json::to_string_pretty(&report).expect("reports serialize"));
                }
            }
            out.status.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
