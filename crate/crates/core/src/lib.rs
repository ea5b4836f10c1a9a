//! Signature calculus for plaque inverse limits of polynomial maps.
//!
//! * [`seqlattice`]: exact algebra of almost-equal binary sequences and the
//!   signature lattice of downsets.
//! * [`dynamics`]: polynomial maps, critical points, cycles and multipliers.
//! * [`pullback`]: backward orbits, traced pullbacks of Jordan curves and
//!   index sequences.
//! * [`engine`]: signature estimation and cycle-theorem verification.

pub mod dynamics;
pub mod engine;
mod error;
pub mod pullback;
pub mod report;
pub mod seqlattice;

pub use error::{Error, Result};
pub use num_complex::Complex64;
