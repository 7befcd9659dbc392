//! Weighted blow-ups of building sets of weighted linear subspaces, the
//! weighted Fulton–MacPherson configuration space of ℝ^m with a constant
//! coordinate filtration, and the blow-up of pairs of second-order jets.
//!
//! Module map:
//! - [`jets`]: truncated curves, polynomial lifts, weighted actions.
//! - [`weightings`]: monomial structure filtrations, conormal bases, alignment.
//! - [`arrangements`]: building sets, intersection lattices, factors, nests.
//! - [`blowup`]: single-weighting and building-set charts, strata, quotients.
//! - [`fm`]: forests, offset coordinates, the local model and collision limits.
//! - [`bundlejet`]: fiberwise blow-ups and the jet-pair construction.
//! - [`verify`]: finite-difference smoothness, coherence and nest oracles.
//!
//! Exact arithmetic uses [`rational::Q`] and the radical type [`surd::Surd`];
//! floating point appears only in sphere normalizations and output.

pub mod arrangements;
pub mod blowup;
pub mod bundlejet;
pub mod catalog;
pub mod cli;
pub mod error;
pub mod flat;
pub mod fm;
pub mod io;
pub mod jets;
pub mod rational;
pub mod surd;
pub mod verify;
pub mod weightings;

pub use error::{Error, Result};
