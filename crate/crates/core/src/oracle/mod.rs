//! Brute-force reference implementations and exhaustive campaigns.
//!
//! Nothing here uses the lattice's own rank or closure routines: ranks come
//! from Gaussian elimination over the rationals, modularity from explicit
//! subspace sums, characteristic polynomials from deletion-contraction.

mod campaign;
mod chromatic;
mod corpus;
mod linear;

pub use campaign::{campaign, CampaignOptions, CampaignReport, GraphFailure, TheoremTally};
pub use chromatic::{chromatic_polynomial_dc, MAX_DC_EDGES};
pub use corpus::{all_graphs, canonical_form, connected_graphs, corpus_up_to};
pub use linear::{naive_modular, naive_rank};
