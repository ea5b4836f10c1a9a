//! Polynomial maps of the plane: evaluation, critical points, periodic
//! cycles, multipliers and their classification.

mod cycles;
mod orbit;
mod poly;
pub mod roots;

pub use cycles::{classify_cycle, critical_points, periodic_cycles, rational_rotation, Cycle, CycleLabel, Tolerances};
pub use orbit::{evaluate_orbit, orbit_closure_sample, recurrence_probe, Orbit, OrbitSample, Recurrence};
pub use poly::{format_complex, golden_multiplier, parse_complex, Polynomial};
pub use roots::RootConfig;
