//! Torsion-free subgroups of Coxeter groups built from Weyl-group root
//! lattices reduced mod 2, with exact covolume computations for the
//! Vinberg simplex groups in dimensions 4, 6 and 8.
//!
//! Node indices are 0-based throughout the library API. Node *names*
//! (as seen in JSON and on the command line) follow the classical
//! 1-based numbering of the Dynkin diagrams.

pub mod cli;
pub mod error;
pub mod exact;
pub mod geometry;
pub mod intmat;
pub mod involutions;
pub mod modtwo;
pub mod nodeset;
pub mod symbol;
pub mod torsionfree;
pub mod weyl;

pub use error::{Error, Result};
pub use exact::{ExactRational, PiMonomial};
pub use intmat::IntMatrix;
pub use nodeset::NodeSet;
pub use symbol::{CoxeterSymbol, Family, FiniteType, Label};
pub use weyl::{WeylData, WeylElement, WeylFamily};
