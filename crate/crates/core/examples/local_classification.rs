//! Local graphs whose neighbourhoods embed in a 3-dimensional sphere with two inner products.

use schemeforge::localclass::{classify_local, delsarte_bound};

fn main() {
    let k_max = std::env::args().nth(1).map_or(9, |a| a.parse().unwrap());
    println!("Delsarte bound for 2-distance sets on S^2: {}", delsarte_bound(3, 2));
    let c = classify_local(k_max).unwrap();
    println!("{} candidates, {} feasible", c.candidates, c.solutions.len());
    for s in &c.solutions {
        let label = s.geometric_label.map_or("-".into(), |l| l.to_string());
        for b in &s.solutions {
            println!("{:<11} {:<12} {b}", s.graph, label);
        }
    }
}
