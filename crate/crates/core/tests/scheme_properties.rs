//! Scheme identities on the bundled schemes, under random relabellings of points and relations.

mod common;

use common::*;
use proptest::prelude::*;
use schemeforge::graphs::{hypercube, johnson, named_graph};
use schemeforge::scheme::{q_poly_structures, scheme_from_graph_distances, verify_scheme, Scheme};

fn bundle() -> &'static [(&'static str, Scheme)] {
    static B: std::sync::OnceLock<Vec<(&'static str, Scheme)>> = std::sync::OnceLock::new();
    B.get_or_init(golden_schemes)
}

fn permuted_points(s: &Scheme, perm: &[usize]) -> Scheme {
    let n = s.size();
    let rel: Vec<Vec<usize>> = (0..n).map(|x| (0..n).map(|y| s.relation(perm[x], perm[y])).collect()).collect();
    verify_scheme(&rel).expect("relabelled scheme")
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn scheme_and_perm() -> impl Strategy<Value = (usize, Vec<usize>)> {
    (0..bundle().len()).prop_flat_map(|i| (Just(i), permutation(bundle()[i].1.size())))
}

#[test]
fn identities_hold_on_every_bundled_scheme() {
    for (id, s) in bundle() {
        let sp = spectra_of(s);
        let d = s.degree();
        for i in 0..=d {
            for j in 0..=d {
                for h in 0..=d {
                    handshake(s, i, j, h).unwrap_or_else(|e| panic!("{id}: {e}"));
                }
                for c in 0..=d {
                    primal_recurrence(s, &sp, c, i, j).unwrap_or_else(|e| panic!("{id}: {e}"));
                    dual_recurrence(&sp, c, i, j).unwrap_or_else(|e| panic!("{id}: {e}"));
                }
            }
        }
        krein_nonnegative(&sp).unwrap_or_else(|e| panic!("{id}: {e}"));
        let orderings = q_orderings(&sp);
        assert!(!orderings.is_empty(), "{id}: not Q-polynomial");
        for o in &orderings {
            initial_krein_identities(o).unwrap_or_else(|e| panic!("{id}: {e}"));
            even_columns_rational(o).unwrap_or_else(|e| panic!("{id}: {e}"));
        }
        degree_bound_holds(s, &sp).unwrap_or_else(|e| panic!("{id}: {e}"));
        idempotents_exact(s, &sp).unwrap_or_else(|e| panic!("{id}: {e}"));
    }
}

#[test]
fn even_columns_are_not_always_integral() {
    let (_, j52) = bundle().iter().find(|(id, _)| *id == "AS10[3]").unwrap();
    let sp = spectra_of(j52);
    assert!(q_orderings(&sp).iter().any(|o| even_columns_integral(o).is_err()));
}

#[test]
fn float_spectrum_matches_first_eigenmatrix() {
    for (id, s) in bundle() {
        let sp = spectra_of(s);
        for r in 1..=s.degree() {
            let mut want: Vec<f64> = Vec::new();
            for (j, row) in sp.first_eigenmatrix.iter().enumerate() {
                want.extend(std::iter::repeat_n(row[r].to_f64(), sp.multiplicity(j)));
            }
            want.sort_by(f64::total_cmp);
            let got = float_eigenvalues(&to_f64_matrix(&adjacency(s, r)));
            assert_eq!(got.len(), want.len());
            for (g, w) in got.iter().zip(&want) {
                assert!((g - w).abs() < 1e-6, "{id}: A_{r} eigenvalue {g} vs {w}");
            }
        }
    }
}

#[test]
fn float_cosines_match_exact_columns() {
    for (id, s) in bundle() {
        let sp = spectra_of(s);
        for j in 1..=s.degree() {
            let m = sp.multiplicity(j);
            let exact: Vec<f64> = sp.cosine_column(j).iter().map(|w| w.to_f64()).collect();
            // the eigenspace of A_r for a relation separating E_j from the others
            let found = (1..=s.degree()).any(|r| {
                float_cosines(s, r, m).iter().any(|c| c.iter().zip(&exact).all(|(a, b)| (a - b).abs() < 1e-6))
            });
            assert!(found, "{id}: column {j} has no float witness");
        }
    }
}

#[test]
fn gram_matrices_are_psd_of_rank_m() {
    for (id, s) in bundle() {
        let sp = spectra_of(s);
        for j in 0..=s.degree() {
            let (psd, rank) = float_psd_rank(&to_f64_matrix(&sp.embedding_gram(j)));
            assert!(psd && rank == sp.multiplicity(j), "{id}: E_{j} rank {rank}");
        }
    }
}

#[test]
fn distance_schemes_of_named_graphs() {
    let graphs = [johnson(6, 2), johnson(6, 3), hypercube(4), hypercube(5), named_graph("icosahedron").unwrap()];
    for g in graphs {
        let s = scheme_from_graph_distances(&g).unwrap();
        let sp = spectra_of(&s);
        krein_nonnegative(&sp).unwrap();
        assert!(q_poly_structures(&sp).unwrap().iter().any(|st| st.metricity.metric));
        for o in q_orderings(&sp) {
            initial_krein_identities(&o).unwrap();
            even_columns_rational(&o).unwrap();
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn relabelling_points_preserves_parameters((i, perm) in scheme_and_perm()) {
        let (_, s) = &bundle()[i];
        let t = permuted_points(s, &perm);
        let d = s.degree();
        prop_assert_eq!(t.valencies(), s.valencies());
        for a in 0..=d {
            for b in 0..=d {
                for c in 0..=d {
                    prop_assert_eq!(t.p(a, b, c), s.p(a, b, c));
                }
            }
        }
        let (sp, tp) = (spectra_of(s), spectra_of(&t));
        prop_assert_eq!(&tp.cosines, &sp.cosines);
        prop_assert_eq!(&tp.krein, &sp.krein);
    }

    #[test]
    fn relabelling_relations_permutes_parameters(i in 0..8usize, shuffled in Just(vec![1usize, 2, 3, 4, 5, 6, 7, 8]).prop_shuffle()) {
        let (_, s) = &bundle()[i];
        let d = s.degree();
        let order: Vec<usize> = std::iter::once(0).chain(shuffled.into_iter().filter(|&r| r <= d)).collect();
        let t = s.reorder_relations(&order);
        for a in 0..=d {
            for b in 0..=d {
                for c in 0..=d {
                    prop_assert_eq!(t.p(a, b, c), s.p(order[a], order[b], order[c]));
                }
            }
        }
        let tp = spectra_of(&t);
        let sp = spectra_of(s);
        let sorted = |v: &[schemeforge::exactnum::QuadNumber]| {
            let mut v = v.to_vec();
            v.sort_by(|a, b| a.total_cmp(b));
            v
        };
        prop_assert_eq!(sorted(&tp.multiplicities), sorted(&sp.multiplicities));
        krein_nonnegative(&tp).unwrap();
        for j in 0..=d {
            let col = tp.cosine_column(j);
            let twin = (0..=d).find(|&k| (0..=d).all(|h| col[h] == sp.cosine_column(k)[order[h]]));
            prop_assert!(twin.is_some());
        }
    }
}
