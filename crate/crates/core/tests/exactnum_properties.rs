//! Field arithmetic against floats, characteristic polynomials, rank and bounded integers.

use std::collections::BTreeSet;

use num_rational::BigRational;
use proptest::prelude::*;
use schemeforge::exactnum::{bounded_algebraic_integers, ExactMatrix, ExactPolynomial, Field, QuadNumber};

const RADICANDS: [u64; 5] = [2, 3, 5, 13, 17];

fn quad(p: u64) -> impl Strategy<Value = QuadNumber> {
    (-40i64..=40, 1i64..=9, -40i64..=40, 1i64..=9).prop_map(move |(a, da, b, db)| {
        QuadNumber::new(BigRational::new(a.into(), da.into()), BigRational::new(b.into(), db.into()), p)
    })
}

fn close(x: f64, y: f64) -> bool {
    (x - y).abs() <= 1e-9 * (1.0 + x.abs().max(y.abs()))
}

fn int_matrix(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-4i64..=4, n), n)
}

/// `p(A)` by Horner's rule.
fn eval_at_matrix(p: &ExactPolynomial, a: &ExactMatrix) -> ExactMatrix {
    let n = a.rows();
    let mut acc = ExactMatrix::zeros(n, n);
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(a).unwrap().add(&ExactMatrix::identity(n).scale(c)).unwrap();
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn field_operations_track_floats(i in 0usize..5, x in quad(2), y in quad(2), z in quad(2)) {
        let p = RADICANDS[i];
        let re = |q: &QuadNumber| QuadNumber::new(q.rational_part().clone(), q.surd_part().clone(), p);
        let (x, y, z) = (re(&x), re(&y), re(&z));
        prop_assert!(close((&x + &y).to_f64(), x.to_f64() + y.to_f64()));
        prop_assert!(close((&x * &y).to_f64(), x.to_f64() * y.to_f64()));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&(&x - &y) + &y, x.clone());
        if !x.is_zero() {
            prop_assert!((&x * &x.inverse().unwrap()).is_one());
            prop_assert!(close((&y / &x).to_f64(), y.to_f64() / x.to_f64()));
        }
        prop_assert_eq!((&x * &y).conjugate(), &x.conjugate() * &y.conjugate());
        prop_assert_eq!(QuadNumber::rational(x.norm()), &x * &x.conjugate());
        if (x.to_f64() - y.to_f64()).abs() > 1e-6 {
            prop_assert_eq!(x < y, x.to_f64() < y.to_f64());
        }
    }

    #[test]
    fn display_round_trips(x in quad(5)) {
        prop_assert_eq!(x.to_string().parse::<QuadNumber>().unwrap(), x);
    }

    #[test]
    fn cayley_hamilton(rows in int_matrix(4)) {
        let a = ExactMatrix::from_ints(&rows).unwrap();
        let chi = a.char_poly().unwrap();
        prop_assert_eq!(chi.degree(), Some(4));
        prop_assert!(chi.leading().unwrap().is_one());
        prop_assert!(eval_at_matrix(&chi, &a).is_zero());
        let trace: i64 = (0..4).map(|i| rows[i][i]).sum();
        prop_assert_eq!(chi.coeff(3), QuadNumber::int(-trace));
        let det = a.determinant().unwrap();
        prop_assert_eq!(chi.coeff(0), det);
    }

    #[test]
    fn triangular_roots_are_the_diagonal(diag in prop::collection::vec(-6i64..=6, 1..6), above in -3i64..=3) {
        let n = diag.len();
        let rows: Vec<Vec<i64>> =
            (0..n).map(|i| (0..n).map(|j| if i == j { diag[i] } else if j > i { above } else { 0 }).collect()).collect();
        let split = ExactMatrix::from_ints(&rows).unwrap().char_poly().unwrap().split_rational().unwrap();
        prop_assert!(split.is_complete());
        let mut roots: Vec<i64> = split
            .roots()
            .flat_map(|(r, m)| std::iter::repeat_n(r.to_f64().round() as i64, m))
            .collect();
        roots.sort_unstable();
        let mut want = diag.clone();
        want.sort_unstable();
        prop_assert_eq!(roots, want);
    }

    #[test]
    fn rank_plus_nullity(rows in prop::collection::vec(prop::collection::vec(-2i64..=2, 5), 1..6)) {
        let a = ExactMatrix::from_ints(&rows).unwrap();
        let ns = a.nullspace();
        prop_assert_eq!(a.rank() + ns.len(), a.cols());
        for v in &ns {
            prop_assert!(a.mul_vec(v).unwrap().iter().all(QuadNumber::is_zero));
        }
    }
}

/// Brute force over halves `(s + t√p)/2` with integral trace and norm.
fn bounded_oracle(k: i64, p: u64) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    let r = (p as f64).sqrt();
    for s in -4 * k..=4 * k {
        for t in -4 * k..=4 * k {
            // trace s, norm (s² − t²p)/4
            if (s * s - t * t * p as i64).rem_euclid(4) != 0 {
                continue;
            }
            let (x, y) = ((s as f64 + t as f64 * r) / 2.0, (s as f64 - t as f64 * r) / 2.0);
            if x.abs() <= k as f64 + 1e-12 && y.abs() <= k as f64 + 1e-12 {
                out.insert(QuadNumber::new(BigRational::new(s.into(), 2.into()), BigRational::new(t.into(), 2.into()), p).to_string());
            }
        }
    }
    out
}

#[test]
fn bounded_integers_match_brute_force() {
    for k in 1..=4 {
        for p in RADICANDS {
            let got: BTreeSet<String> =
                bounded_algebraic_integers(k as u64, Field::quadratic(p)).iter().map(ToString::to_string).collect();
            assert_eq!(got, bounded_oracle(k, p), "k = {k}, p = {p}");
            let list = bounded_algebraic_integers(k as u64, Field::quadratic(p));
            assert!(list.windows(2).all(|w| w[0] < w[1]), "not ascending");
            assert!(list.iter().all(QuadNumber::is_algebraic_integer));
        }
        assert_eq!(bounded_algebraic_integers(k as u64, Field::Rational).len(), 2 * k as usize + 1);
    }
}
