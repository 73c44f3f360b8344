//! Spectral, balanced and symmetric realizations of finite graphs.
//!
//! The crate is `no_std` (it needs `alloc`). File formats, exports and the
//! command-line front end live in the `grt` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod catalog;
pub mod constructions;
pub mod dtrans;
pub mod error;
pub mod graph;
pub mod linalg;
pub mod matrix;
pub mod metrics;
pub mod perm;
pub mod realization;
pub mod rigidity;
pub mod rng;
pub mod symmetry;

pub use catalog::{catalog, catalog_by_name, Family};
pub use error::{Error, Result};
pub use graph::{cartesian_product, DistanceTable, Graph};
pub use linalg::{eigendecompose, EigenGroup, Spectrum, Subspace, SubspaceRelation};
pub use matrix::Matrix;
pub use perm::{Perm, PermGroup};
pub use symmetry::{automorphism_group, orbitals, orbits, transitivity_class, Domain, OrbitalPartition, Transitivity};
pub use realization::{Extraction, Irreducibility, Realization, Representation, Sphericity};
pub use dtrans::{CosineProfile, IntersectionArray, Obstruction};
pub use metrics::MetricReport;
pub use rigidity::{RigidityReport, Rule, Verdict};
