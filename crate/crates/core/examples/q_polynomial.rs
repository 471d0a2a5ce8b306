//! Q-polynomial orderings, partial metricity, the light-tail bound and the degree bound.

use schemeforge::exactnum::{Field, QuadNumber};
use schemeforge::scheme::{degree_bound, light_tail_bound, q_poly_structures, spectra, CATALOGUE};

fn main() {
    for e in CATALOGUE {
        let sp = spectra(&e.scheme()).unwrap();
        for st in q_poly_structures(&sp).unwrap() {
            let m1 = if st.ordering.len() > 1 { sp.multiplicity(st.ordering[1]) } else { 0 };
            println!(
                "{:<9} ordering {:?} m1 = {m1} nearest R{} metric level {}{}",
                e.id,
                st.ordering,
                st.nearest_relation,
                st.metricity.t,
                if st.metricity.metric { " (metric)" } else { "" }
            );
        }
    }
    // θ is the eigenvalue of the nearest relation on E1
    for id in ["AS16[30]", "AS10[6]", "AS09[3]"] {
        let e = CATALOGUE.iter().find(|e| e.id == id).unwrap();
        let s = e.scheme();
        let sp = spectra(&s).unwrap();
        let st = &q_poly_structures(&sp).unwrap()[0];
        let r = st.nearest_relation;
        let theta: &QuadNumber = &sp.first_eigenmatrix[st.ordering[1]][r];
        let k = s.valencies()[r] as i64;
        let a1 = s.p(r, r, r) as i64;
        let b1 = k - 1 - a1;
        let bound = light_tail_bound(k, theta, a1, b1).unwrap().bound;
        println!("light-tail bound {}: theta = {theta}, bound {bound}, m1 = {}", e.display, sp.multiplicities[st.ordering[1]]);
    }
    println!("degree bound for k1 = 4: {} over Q, {} over Q[sqrt 5]", degree_bound(4, Field::Rational), degree_bound(4, Field::Quadratic(5)));
}
