use plaque::dynamics::{critical_points, periodic_cycles, Polynomial, RootConfig, Tolerances};
use plaque::pullback::BackwardOrbit;
use plaque::Complex64;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn quad(re: f64) -> Polynomial {
    Polynomial::quadratic(c(re, 0.0))
}

pub fn crit(f: &Polynomial) -> Vec<Complex64> {
    critical_points(f, &Tolerances::default(), &RootConfig::default()).unwrap()
}

/// Invariant lift of the period-`n` cycle through (a point near) `at`,
/// based at that point.
pub fn lift(f: &Polynomial, n: usize, at: Complex64) -> BackwardOrbit {
    let cycle = periodic_cycles(f, n, &Tolerances::default(), &RootConfig::default())
        .unwrap()
        .into_iter()
        .find(|cy| cy.points.iter().any(|z| (z - at).norm() < 1e-6))
        .expect("cycle through the requested point");
    BackwardOrbit::from_cycle(&cycle, cycle.nearest_index(at) + 1).unwrap()
}
