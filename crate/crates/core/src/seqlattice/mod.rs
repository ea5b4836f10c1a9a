//! Exact Boolean algebra of almost-equal binary sequences and its signature
//! lattice of downsets.

mod chain;
pub mod expr;
mod signature;
mod tail;

pub use chain::{diagonal_witness, meet_chain_reduce, partial_meets, witness_is_valid, ChainReduction};
pub use signature::Signature;
pub use tail::{EventuallyPeriodicSequence, TailClass};
