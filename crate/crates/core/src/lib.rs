//! Exact computation of stringy E-functions and stringy Hodge numbers.
//!
//! A Gorenstein canonical variety is described by a [`ResolutionDescriptor`]:
//! the exceptional components of a log-resolution with their discrepancies,
//! and the Hodge diamonds of all closed strata. From it the crate computes
//! the stringy E-function as an exact rational function, its expansion, the
//! stringy Hodge numbers and a number of derived invariants, and checks the
//! identities they must satisfy.
//!
//! All arithmetic is over the integers or rationals; nothing is floating point.

pub mod analysis;
pub mod catalog;
mod error;
pub mod hodge;
pub mod polyalg;
pub mod random;
pub mod sncweights;
pub mod stringy;

pub use error::Error;
pub use hodge::{builtin_diamond, DiamondChecks, HodgeDiamond};
pub use polyalg::{BivariatePoly, DenominatorSpec, StringyFunction, WPoly};
pub use stringy::{Component, ResolutionDescriptor, Stratum, StringyReport};
