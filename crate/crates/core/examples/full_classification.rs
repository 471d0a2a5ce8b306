//! The complete classification run, one branch per local graph.

use schemeforge::cli::{cmd_classify, ClassifyConfig};

fn main() {
    let case = std::env::args().nth(1);
    let report = cmd_classify(&ClassifyConfig { case, ..ClassifyConfig::default() }).unwrap();
    println!("local graphs: {:?}", report.local_graphs);
    for r in &report.results {
        println!("{:<9} {:<9} local {:<10} cosines ({})  {}", r.scheme_id, r.graph, r.local_case, r.cosines.join(", "), r.provenance);
    }
    for e in &report.exclusions {
        println!("excluded {:<12} local {:<4} {}", e.graph, e.local_case, e.reason);
    }
    for c in &report.cases {
        println!("{:<11} {} nodes, complete {}, unmatched {}", c.local_case, c.nodes, c.complete, c.unmatched);
    }
}
