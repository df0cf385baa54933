//! Exact lattice machinery for complete toric fans and Campana orbifolds in
//! positive characteristic.
//!
//! The crate decides and certifies *separable Campana rational connectedness*
//! (SCRC) for non-klt Campana toric orbifolds over an algebraically closed
//! field of characteristic `p`. Everything is exact integer / `F_p` linear
//! algebra at desk scale: Smith normal forms with unimodular transforms,
//! saturated integer kernels, mod-`p` kernels and their positive lifts, fan
//! combinatorics (validation, singularity classification, star subdivision),
//! weighted projective space fans, and the rank/torsion certificate checker
//! together with the constructive witness builders it certifies.
//!
//! The crate is `no_std` (with `alloc`); IO, JSON schemas and the command
//! line live in the companion `campana-cli` crate.

#![no_std]
// dual-indexed loops are the dominant access pattern in the matrix code
#![allow(clippy::needless_range_loop)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod campana;
pub mod error;
pub mod fan;
pub mod linalg;
pub mod modp;
pub mod oracle;
pub mod rng;
pub mod witness;
pub mod wps;

pub use campana::{CampanaOrbifold, Certificate, ContactOrderSet, Marking, Multiplicity};
pub use error::{Error, Result};
pub use fan::{is_refinement, Adjacency, Cone, Fan, Ray, SingularityClass};
pub use linalg::{IntMatrix, SmithDecomposition};
pub use modp::{ModPVec, Prime, SpanSearch};
pub use oracle::SearchBudget;
pub use witness::{Reason, Verdict, VerdictStatus};
pub use wps::Weights;
