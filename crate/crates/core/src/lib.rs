//! Amalgam decompositions of matroids.
//!
//! The crate builds matroids from rank oracles, glues them with generalized
//! parallel connections, represents glueing histories as amalgam
//! decomposition trees, and runs two dynamic programs over such trees: the
//! Tutte polynomial and monadic second-order model checking. Every fast path
//! has a brute-force counterpart on the realized matroid.

pub mod amalgam;
pub mod catalog;
pub mod cli;
pub mod corpus;
pub mod decomposition;
pub mod element;
pub mod error;
pub mod gf;
pub mod matroid;
pub mod mso;
pub mod tutte;
pub mod types;

pub use element::{ElementId, ElementSet};
pub use error::{Error, Result};
pub use matroid::Matroid;
