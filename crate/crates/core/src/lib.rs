pub mod arrangement;
pub mod error;
pub mod graph;
pub mod io;
pub mod hyperplane_set;
pub mod linalg;
pub mod lattice;
pub mod oracle;
pub mod polynomial;
pub mod factorization;
pub mod partition;
