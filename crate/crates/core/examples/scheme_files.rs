//! Reading and writing relation-matrix files, and the bundled catalogue.

use schemeforge::cli::{parse_scheme_file, sha256_hex, GOLDEN};

fn main() {
    for g in GOLDEN {
        let f = g.parse().unwrap();
        let s = g.scheme().unwrap();
        println!("{:<9} {:<12} n = {:<3} d = {} sha256 {}", g.id, g.file_name, f.order(), s.degree(), &sha256_hex(g.text)[..16]);
    }
    let text = GOLDEN[1].text;
    let f = parse_scheme_file(text).unwrap();
    println!("\nround trip exact: {}\n{f}", f.to_string() == text);
    for bad in ["", "2\n0 0\n0 0\n", "3\n0 1 2\n1 0 1\n2 1\n", "2\n0 1\n2 0\n"] {
        println!("{:?} -> {}", bad, parse_scheme_file(bad).unwrap_err());
    }
}
