//! Axioms, eigenmatrices, Krein parameters and cosines of a scheme.

use schemeforge::graphs::{named_graph, Graph};
use schemeforge::scheme::{krein_check, scheme_from_graph_distances, spectra, verify_scheme};

fn main() {
    let name = std::env::args().nth(1).unwrap_or_else(|| "J(5,2)".into());
    let s = scheme_from_graph_distances(&named_graph(&name).unwrap()).unwrap();
    let sp = spectra(&s).unwrap();
    println!("{name}: |X| = {}, d = {}, valencies {:?}, field {}", s.size(), s.degree(), s.valencies(), sp.field);
    for (j, row) in sp.first_eigenmatrix.iter().enumerate() {
        let row: Vec<String> = row.iter().map(ToString::to_string).collect();
        let cos: Vec<String> = sp.cosine_column(j).iter().map(ToString::to_string).collect();
        println!("E{j}: m = {}  P row ({})  cosines ({})", sp.multiplicities[j], row.join(", "), cos.join(", "));
    }
    let (ok, witness) = krein_check(&sp);
    println!("Krein conditions hold: {ok} {witness:?}");

    // the path on three vertices is not distance-regular
    let p3 = Graph::path(3);
    let rel: Vec<Vec<usize>> =
        (0..3).map(|x| p3.distances_from(x).into_iter().map(|d| d.unwrap()).collect()).collect();
    println!("P3 distance partition: {}", verify_scheme(&rel).unwrap_err());
}
