//! Finite multiplicative lattices: construction, axiom validation, element
//! classification (prime, n-absorbing, quasi/weakly/strongly quasi
//! n-absorbing, principal, ...), an exhaustive theorem suite, and predicate
//! search over generated families.
//!
//! The main entry points:
//!
//! - [`construct::divisor_lattice`] and friends build concrete lattices;
//! - [`format::from_file`] / [`format::to_file`] read and write the MLAT
//!   JSON format;
//! - [`predicates::classify`] decides every element class exhaustively;
//! - [`theorems::run_all`] checks the theorem catalog, using the proven
//!   statements as a bug detector;
//! - [`expr::parse_predicate`] and [`search::search`] drive counterexample
//!   hunts over lattice families.

pub mod construct;
pub mod expr;
pub mod format;
pub mod lattice;
pub mod predicates;
pub mod search;
pub mod theorems;

pub use lattice::{Elem, MultLattice, ValidationReport};
