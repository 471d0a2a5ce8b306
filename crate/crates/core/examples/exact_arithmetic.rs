//! Exact arithmetic in Q and Q[√p]: the golden ratio, a characteristic polynomial and its roots.

use schemeforge::exactnum::{ExactMatrix, QuadNumber};

fn main() {
    let phi: QuadNumber = "1/2+1/2*sqrt(5)".parse().unwrap();
    let sq = &phi * &phi;
    println!("phi = {phi}, phi^2 = {sq}, phi^2 - phi - 1 = {}", &(&sq - &phi) - &QuadNumber::one());
    println!("conjugate {}, algebraic integer: {}", phi.conjugate(), phi.is_algebraic_integer());

    // adjacency matrix of the pentagon
    let c5 = ExactMatrix::from_fn(5, 5, |i, j| QuadNumber::int(((i + 1) % 5 == j || (j + 1) % 5 == i) as i64));
    let chi = c5.char_poly().unwrap();
    let split = chi.split_rational().unwrap();
    println!("char poly coefficients: {:?}", chi.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>());
    for (root, mult) in split.roots() {
        println!("  eigenvalue {root} with multiplicity {mult}");
    }
    println!("rank {}, psd: {}", c5.rank(), c5.is_psd().unwrap());
}
