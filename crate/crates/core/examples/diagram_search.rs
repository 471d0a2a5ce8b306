//! Relation-distribution diagrams of the nearest relation for small valencies.

use schemeforge::diagsearch::{generate_diagrams_auto, SearchConfig};
use schemeforge::exactnum::Field;

fn main() {
    for (k1, a1, light) in [(3, 0, false), (4, 1, false), (4, 0, true)] {
        let cfg = SearchConfig::new(k1, a1, Field::Rational).light_tail(light);
        let out = generate_diagrams_auto(&cfg).unwrap();
        println!("k1 = {k1}, a1 = {a1}, light tail {light}: {} node(s), matched {:?}", out.stats.nodes, out.matched_ids());
        for r in &out.results {
            println!("{r}");
        }
        println!("pruned {:?}\n", out.stats.pruned_by);
    }
}
