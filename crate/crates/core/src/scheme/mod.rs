//! Symmetric association schemes and their spectral data.

mod catalogue;
mod axioms;
mod qpoly;
mod spectra;

pub use catalogue::{catalogue_entry, twenty_four_cell_scheme, CatalogueEntry, CATALOGUE};
pub use axioms::{scheme_from_graph_distances, verify_scheme, PairCount, Refutation, Scheme};
pub use qpoly::{
    degree_bound, light_tail_bound, nearest_neighbour_relation, partially_metric_level, q_poly_orderings,
    q_poly_structures, LightTailBound, PartialMetricity, QPolyStructure,
};
pub use spectra::{krein_check, spectra, Spectra};

use thiserror::Error;

use crate::exactnum::NumError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemeError {
    #[error("not an association scheme: {0}")]
    Refuted(Refutation),
    #[error("relation graph is not connected")]
    Disconnected,
    #[error("eigenvalues need a field of degree > 2 (irreducible factor of degree {residual_degree})")]
    UnsupportedSplittingField { residual_degree: usize },
    #[error("no coefficient vector separated the idempotents")]
    GenericElementNotFound,
    #[error("relations {first} and {second} share the inner product {value}")]
    TiedInnerProducts { first: usize, second: usize, value: String },
    #[error("{0}")]
    Precondition(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Num(#[from] NumError),
}
