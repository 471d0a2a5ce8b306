//! Oracles shared by the integration tests. They recompute everything from the relation
//! matrix and the spectral tables rather than calling the library's own checks.

#![allow(dead_code)]

use nalgebra::{DMatrix, SymmetricEigen};
use schemeforge::cli::GOLDEN;
use schemeforge::exactnum::{ExactMatrix, Field, QuadNumber};
use schemeforge::scheme::{q_poly_structures, spectra, Scheme, Spectra};

/// Float tolerance of the floating-point sanity oracles.
pub const FLOAT_TOL: f64 = 1e-9;

pub fn golden_schemes() -> Vec<(&'static str, Scheme)> {
    GOLDEN.iter().map(|g| (g.id, g.scheme().expect("bundled scheme"))).collect()
}

pub fn q(n: i64) -> QuadNumber {
    QuadNumber::int(n)
}

pub fn adjacency(s: &Scheme, r: usize) -> ExactMatrix {
    let n = s.size();
    ExactMatrix::from_fn(n, n, |x, y| q((s.relation(x, y) == r) as i64))
}

/// `k_h p_{ij}^h = k_i p_{jh}^i`, recounted from the relation matrix.
pub fn handshake(s: &Scheme, i: usize, j: usize, h: usize) -> Result<(), String> {
    let count = |a: usize, b: usize, c: usize| -> usize {
        // p_{ab}^c from a pair in R_c
        let (x, y) = first_pair(s, c);
        (0..s.size()).filter(|&z| s.relation(x, z) == a && s.relation(z, y) == b).count()
    };
    let k = |r: usize| (0..s.size()).filter(|&y| s.relation(0, y) == r).count();
    let lhs = k(h) * count(i, j, h);
    let rhs = k(i) * count(j, h, i);
    let rhs2 = k(j) * count(h, i, j);
    if lhs == rhs && rhs == rhs2 && count(i, j, h) == s.p(i, j, h) {
        Ok(())
    } else {
        Err(format!("handshake fails at ({i},{j},{h}): {lhs} {rhs} {rhs2}"))
    }
}

fn first_pair(s: &Scheme, r: usize) -> (usize, usize) {
    (0..s.size()).flat_map(|x| (0..s.size()).map(move |y| (x, y))).find(|&(x, y)| s.relation(x, y) == r).unwrap()
}

/// `k_i ω_{i,c} ω_{j,c} = Σ_h p_{hi}^j ω_{h,c}`.
pub fn primal_recurrence(s: &Scheme, sp: &Spectra, c: usize, i: usize, j: usize) -> Result<(), String> {
    let w = |h: usize| sp.cosines[c][h].clone();
    let lhs = &(&q(s.valencies()[i] as i64) * &w(i)) * &w(j);
    let mut rhs = q(0);
    for h in 0..=s.degree() {
        rhs = &rhs + &(&q(s.p(h, i, j) as i64) * &w(h));
    }
    (lhs == rhs).then_some(()).ok_or_else(|| format!("primal recurrence c={c} i={i} j={j}: {lhs} vs {rhs}"))
}

/// `m_i ω_{r,i} ω_{r,j} = Σ_h q_{hi}^j ω_{r,h}`.
pub fn dual_recurrence(sp: &Spectra, r: usize, i: usize, j: usize) -> Result<(), String> {
    let w = |c: usize| sp.cosines[c][r].clone();
    let lhs = &(&sp.multiplicities[i] * &w(i)) * &w(j);
    let mut rhs = q(0);
    for h in 0..sp.cosines.len() {
        rhs = &rhs + &(&sp.krein[j][h][i] * &w(h));
    }
    (lhs == rhs).then_some(()).ok_or_else(|| format!("dual recurrence r={r} i={i} j={j}: {lhs} vs {rhs}"))
}

pub fn krein_nonnegative(sp: &Spectra) -> Result<(), String> {
    for (k, t) in sp.krein.iter().enumerate() {
        for (i, row) in t.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if v.is_negative() {
                    return Err(format!("q_{{{i}{j}}}^{k} = {v} < 0"));
                }
            }
        }
    }
    Ok(())
}

/// Spectra reordered by each Q-polynomial ordering.
pub fn q_orderings(sp: &Spectra) -> Vec<Spectra> {
    q_poly_structures(sp).unwrap().iter().map(|st| sp.reorder(&st.ordering)).collect()
}

/// `q₀₁⁰ = 0`, `q₀₁¹ = 1`, `q₁₁⁰ = m₁`, `q₂₁¹ = m₁ − 1 − q₁₁¹` in a Q-polynomial ordering.
pub fn initial_krein_identities(o: &Spectra) -> Result<(), String> {
    let qk = |i: usize, j: usize, k: usize| o.krein[k][i][j].clone();
    let m1 = o.multiplicities[1].clone();
    let mut bad = Vec::new();
    if !qk(0, 1, 0).is_zero() {
        bad.push("q01^0");
    }
    if !qk(0, 1, 1).is_one() {
        bad.push("q01^1");
    }
    if qk(1, 1, 0) != m1 {
        bad.push("q11^0");
    }
    if o.cosines.len() > 2 && qk(2, 1, 1) != &(&m1 - &q(1)) - &qk(1, 1, 1) {
        bad.push("q21^1");
    }
    bad.is_empty().then_some(()).ok_or_else(|| format!("initial Krein identities fail: {bad:?}"))
}

/// Entries of the second eigenmatrix in even positions of a Q-polynomial ordering are rational.
pub fn even_columns_rational(o: &Spectra) -> Result<(), String> {
    for (h, row) in o.second_eigenmatrix.iter().enumerate() {
        for (j, v) in row.iter().enumerate().step_by(2) {
            if !v.is_rational() {
                return Err(format!("Q[{h}][{j}] = {v} is irrational"));
            }
        }
    }
    Ok(())
}

/// Entries of the second eigenmatrix in even positions of a Q-polynomial ordering are integers.
pub fn even_columns_integral(o: &Spectra) -> Result<(), String> {
    for (h, row) in o.second_eigenmatrix.iter().enumerate() {
        for (j, v) in row.iter().enumerate().step_by(2) {
            if !v.is_integer() {
                return Err(format!("Q[{h}][{j}] = {v} is not a rational integer"));
            }
        }
    }
    Ok(())
}

/// `d ≤ 4v₁ + 1`, and `d ≤ 2v₁ + 1` over Q, for the nearest relation of each ordering.
pub fn degree_bound_holds(s: &Scheme, sp: &Spectra) -> Result<(), String> {
    for st in q_poly_structures(sp).unwrap() {
        let v1 = s.valencies()[st.nearest_relation];
        let bound = if sp.field == Field::Rational { 2 * v1 + 1 } else { 4 * v1 + 1 };
        if s.degree() > bound {
            return Err(format!("d = {} exceeds {bound}", s.degree()));
        }
    }
    Ok(())
}

/// `E_j = |X|⁻¹ Σ_h Q_{hj} A_h` squares to itself and the `E_j` sum to `I`.
pub fn idempotents_exact(s: &Scheme, sp: &Spectra) -> Result<(), String> {
    let n = s.size();
    let adj: Vec<ExactMatrix> = (0..=s.degree()).map(|r| adjacency(s, r)).collect();
    let inv_n = QuadNumber::one().try_div(&q(n as i64)).unwrap();
    let mut total = ExactMatrix::zeros(n, n);
    for j in 0..=s.degree() {
        let mut e = ExactMatrix::zeros(n, n);
        for (h, a) in adj.iter().enumerate() {
            e = e.add(&a.scale(&(&sp.second_eigenmatrix[h][j] * &inv_n))).unwrap();
        }
        if e.mul(&e).unwrap() != e {
            return Err(format!("E_{j} is not idempotent"));
        }
        total = total.add(&e).unwrap();
    }
    (total == ExactMatrix::identity(n)).then_some(()).ok_or_else(|| "idempotents do not sum to I".into())
}

pub fn spectra_of(s: &Scheme) -> Spectra {
    spectra(s).expect("spectra")
}

pub fn to_f64_matrix(m: &ExactMatrix) -> DMatrix<f64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m.row(i)[j].to_f64())
}

/// Eigenvalues of a symmetric float matrix, ascending.
pub fn float_eigenvalues(m: &DMatrix<f64>) -> Vec<f64> {
    let mut ev: Vec<f64> = SymmetricEigen::new(m.clone()).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Float PSD and numerical rank of a symmetric matrix.
pub fn float_psd_rank(m: &DMatrix<f64>) -> (bool, usize) {
    let ev = float_eigenvalues(m);
    (ev.iter().all(|&x| x > -FLOAT_TOL), ev.iter().filter(|&&x| x > FLOAT_TOL).count())
}

/// Cosine sequences of every eigenvalue of `A_r` with the given multiplicity, from the
/// orthogonal projection onto the eigenspace; `None` when the ratio is not constant on a relation.
pub fn float_cosines(s: &Scheme, r: usize, multiplicity: usize) -> Vec<Vec<f64>> {
    let a = to_f64_matrix(&adjacency(s, r));
    let eig = SymmetricEigen::new(a);
    let n = s.size();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| eig.eigenvalues[x].total_cmp(&eig.eigenvalues[y]));
    let mut out = Vec::new();
    let mut start = 0;
    while start < n {
        let theta = eig.eigenvalues[order[start]];
        let mut end = start;
        while end < n && (eig.eigenvalues[order[end]] - theta).abs() < 1e-6 {
            end += 1;
        }
        if end - start == multiplicity {
            let cols: Vec<usize> = order[start..end].to_vec();
            let proj = |x: usize, y: usize| cols.iter().map(|&c| eig.eigenvectors[(x, c)] * eig.eigenvectors[(y, c)]).sum::<f64>();
            let diag = proj(0, 0);
            let mut cos = vec![f64::NAN; s.degree() + 1];
            let mut constant = true;
            for x in 0..n {
                for y in 0..n {
                    let h = s.relation(x, y);
                    let w = proj(x, y) / diag;
                    if cos[h].is_nan() {
                        cos[h] = w;
                    } else if (cos[h] - w).abs() > 1e-6 {
                        constant = false;
                    }
                }
            }
            if constant {
                out.push(cos);
            }
        }
        start = end;
    }
    out
}
