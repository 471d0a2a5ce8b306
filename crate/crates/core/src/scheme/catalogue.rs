//! Small Q-polynomial schemes with `m₁ = 4`, built from graphs or coordinates.

use super::axioms::{scheme_from_graph_distances, verify_scheme, Scheme};
use crate::graphs::named_graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CatalogueEntry {
    /// Identifier in the small-scheme list, e.g. `AS16[30]`.
    pub id: &'static str,
    /// Name understood by `named_graph`.
    pub graph: &'static str,
    /// Display name of the nearest-neighbour graph.
    pub display: &'static str,
}

pub const CATALOGUE: &[CatalogueEntry] = &[
    CatalogueEntry { id: "AS05[1]", graph: "K5", display: "K5" },
    CatalogueEntry { id: "AS06[3]", graph: "K3,3", display: "K3,3" },
    CatalogueEntry { id: "AS08[2]", graph: "16-cell", display: "K2,2,2,2" },
    CatalogueEntry { id: "AS09[3]", graph: "K3xK3", display: "K3xK3" },
    CatalogueEntry { id: "AS10[3]", graph: "J(5,2)", display: "J(5,2)" },
    CatalogueEntry { id: "AS10[6]", graph: "crown", display: "crown" },
    CatalogueEntry { id: "AS16[30]", graph: "Q4", display: "Q4" },
    CatalogueEntry { id: "AS24[43]", graph: "24-cell", display: "24-cell" },
];

pub fn catalogue_entry(id: &str) -> Option<&'static CatalogueEntry> {
    CATALOGUE.iter().find(|e| e.id == id)
}

impl CatalogueEntry {
    pub fn scheme(&self) -> Scheme {
        if self.id == "AS24[43]" {
            return twenty_four_cell_scheme();
        }
        scheme_from_graph_distances(&named_graph(self.graph).expect("catalogue graph name"))
            .expect("catalogue graphs are distance-regular")
    }
}

/// The 24-cell's distance partition is not a scheme; its inner-product partition is.
pub fn twenty_four_cell_scheme() -> Scheme {
    let mut pts: Vec<[i32; 4]> = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            for si in [1, -1] {
                for sj in [1, -1] {
                    let mut v = [0; 4];
                    v[i] = si;
                    v[j] = sj;
                    pts.push(v);
                }
            }
        }
    }
    let rel: Vec<Vec<usize>> = pts
        .iter()
        .map(|x| {
            pts.iter()
                .map(|y| {
                    let dot: i32 = x.iter().zip(y).map(|(a, b)| a * b).sum();
                    (2 - dot) as usize
                })
                .collect()
        })
        .collect();
    verify_scheme(&rel).expect("inner products of the 24-cell form a scheme")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        let sizes: Vec<usize> = CATALOGUE.iter().map(|e| e.scheme().size()).collect();
        assert_eq!(sizes, [5, 6, 8, 9, 10, 10, 16, 24]);
        let s = twenty_four_cell_scheme();
        assert_eq!(s.valencies(), &[1, 8, 6, 8, 1]);
    }
}
