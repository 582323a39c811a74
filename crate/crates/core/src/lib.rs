//! Online selection under k-fold matroid union constraints.
//!
//! The crate is layered bottom-up:
//!
//! * [`ground`] and [`matroid`]: weighted ground sets and the concrete matroid
//!   oracles (uniform, partition, graphic, linear over a prime field, explicit).
//! * [`union`]: matroid unions via augmenting-path partitioning, covering
//!   numbers, and the exhaustive characterisations used to cross-check them.
//! * [`secretary`]: the phased threshold algorithm and the baseline online rules.
//! * [`harness`]: instance generation, Monte Carlo trials and estimators.
//! * [`verify`]: the oracle-equivalence suites driven by the CLI.

pub mod error;
pub mod ground;
pub mod harness;
pub mod matroid;
pub mod rng;
pub mod secretary;
pub mod union;
pub mod verify;

pub use error::{Error, Result};
pub use ground::GroundSet;
pub use matroid::Matroid;
pub use union::{PartitionCertificate, UnionOracle};
