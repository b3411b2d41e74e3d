//! Nice partitions of central arrangements and their correspondence with
//! maximal modular chains.

mod chains;
mod enumerate;
mod nice;
mod suite;

pub use chains::{
    chain_to_partition, partition_to_modular_chain, star_vertex, BlockOrientation,
    ChainReconstruction,
};
pub use enumerate::{enumerate_nice_partitions, EnumerationOptions, DEFAULT_MAX_HYPERPLANES};
pub use nice::{
    factorization_counterexample, is_independent_partition, is_nice, localize_partition,
    verify_factorization, NiceCertificate, NiceFailure,
};
pub use suite::{theorem_suite, CheckOutcome, CheckStatus, SuiteOptions, SuiteReport, Theorem};
