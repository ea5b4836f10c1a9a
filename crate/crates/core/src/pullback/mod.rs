//! Pullbacks of Jordan curves along backward orbits.

mod chain;
mod construct;
mod curve;
mod orbit;
mod trace;

pub use chain::{pullback_chain, ChainFailure, ChainLevel, IndexBits, PullbackChain};
pub use construct::{
    construct_irregular_orbit, construct_regular_plaque, engulfing_search, IrregularOrbit, SearchConfig, SearchOutcome,
    REGULAR_SEED_RADIUS,
};
pub use curve::{winding_contains, winding_number, SampledLoop};
pub use orbit::{BackwardOrbit, OrbitGenerator};
pub use trace::{forward_residual, preimage_set, preimages, pullback_components, pullback_loop, TraceConfig};
