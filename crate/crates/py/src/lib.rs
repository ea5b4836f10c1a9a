//! Python bindings: tail classes and signatures, polynomial maps and their
//! cycles, pullback chains, and the signature engine. Report-shaped results
//! come back as plain dicts (decoded from the JSON report documents).

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

use plaque_core::dynamics::{critical_points, periodic_cycles, RootConfig, Tolerances};
use plaque_core::engine::{self, EngineConfig};
use plaque_core::pullback::{self, SearchConfig, TraceConfig};
use plaque_core::seqlattice::{self, expr};
use plaque_core::{Complex64, Error};

fn err(e: Error) -> PyErr {
    match e {
        Error::Parse(_)
        | Error::InvalidArgument(_)
        | Error::EmptyPeriod
        | Error::InvalidBit(_)
        | Error::ZeroPeriod
        | Error::EmptySignature => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn to_py(py: Python<'_>, v: &impl Serialize) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(v).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

fn critical(f: &plaque_core::dynamics::Polynomial) -> PyResult<Vec<Complex64>> {
    critical_points(f, &Tolerances::default(), &RootConfig::default()).map_err(err)
}

#[pyclass(name = "TailClass", frozen, from_py_object, module = "plaque")]
#[derive(Clone, PartialEq)]
struct TailClass(seqlattice::TailClass);

#[pymethods]
impl TailClass {
    /// Parses the textual form `p=K;w=bits`.
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(Self).map_err(err)
    }

    #[staticmethod]
    fn sq(n: usize) -> PyResult<Self> {
        seqlattice::TailClass::sq(n).map(Self).map_err(err)
    }

    #[staticmethod]
    fn zero() -> Self {
        Self(seqlattice::TailClass::zero())
    }

    #[staticmethod]
    fn one() -> Self {
        Self(seqlattice::TailClass::one())
    }

    #[getter]
    fn period(&self) -> usize {
        self.0.period()
    }

    #[getter]
    fn residue_word(&self) -> Vec<bool> {
        self.0.residue_word().to_vec()
    }

    /// Bit at 1-based position `n` of any representative, for large `n`.
    fn bit_at(&self, n: usize) -> bool {
        self.0.bit_at(n)
    }

    fn join(&self, other: &Self) -> Self {
        Self(self.0.join(&other.0))
    }

    fn meet(&self, other: &Self) -> Self {
        Self(self.0.meet(&other.0))
    }

    fn neg(&self) -> Self {
        Self(self.0.neg())
    }

    fn leq(&self, other: &Self) -> bool {
        self.0.leq(&other.0)
    }

    fn shift(&self, m: i64) -> Self {
        Self(self.0.shift(m))
    }

    fn __or__(&self, other: &Self) -> Self {
        self.join(other)
    }

    fn __and__(&self, other: &Self) -> Self {
        self.meet(other)
    }

    fn __invert__(&self) -> Self {
        self.neg()
    }

    fn __le__(&self, other: &Self) -> bool {
        self.leq(other)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __hash__(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.0.to_string().hash(&mut h);
        h.finish()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("TailClass('{}')", self.0)
    }
}

#[pyclass(name = "Signature", frozen, eq, module = "plaque")]
#[derive(PartialEq)]
struct Signature(seqlattice::Signature);

#[pymethods]
impl Signature {
    /// Downset generated by `generators` (non-maximal ones are dropped).
    #[new]
    fn new(generators: Vec<TailClass>) -> PyResult<Self> {
        seqlattice::Signature::from_generators(generators.into_iter().map(|g| g.0))
            .map(Self)
            .map_err(err)
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        text.parse().map(Self).map_err(err)
    }

    #[staticmethod]
    fn principal(a: &TailClass) -> Self {
        Self(seqlattice::Signature::principal(a.0.clone()))
    }

    #[staticmethod]
    fn bottom() -> Self {
        Self(seqlattice::Signature::bottom())
    }

    #[staticmethod]
    fn top() -> Self {
        Self(seqlattice::Signature::top())
    }

    #[getter]
    fn generators(&self) -> Vec<TailClass> {
        self.0.generators().iter().cloned().map(TailClass).collect()
    }

    fn is_bottom(&self) -> bool {
        self.0.is_bottom()
    }

    fn union(&self, other: &Self) -> Self {
        Self(self.0.union(&other.0))
    }

    fn intersect(&self, other: &Self) -> Self {
        Self(self.0.intersect(&other.0))
    }

    fn shift(&self, m: i64) -> Self {
        Self(self.0.shift(m))
    }

    fn is_subset(&self, other: &Self) -> bool {
        self.0.is_subset(&other.0)
    }

    fn __contains__(&self, b: &TailClass) -> bool {
        self.0.contains(&b.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Signature('{}')", self.0)
    }
}

#[pyclass(name = "Polynomial", frozen, module = "plaque")]
struct Polynomial(plaque_core::dynamics::Polynomial);

#[pymethods]
impl Polynomial {
    /// `quad:c=<complex>`, `siegel:golden`, or ascending coefficients `a0,a1,...`.
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        spec.parse().map(Self).map_err(err)
    }

    #[staticmethod]
    fn quadratic(c: Complex64) -> Self {
        Self(plaque_core::dynamics::Polynomial::quadratic(c))
    }

    #[staticmethod]
    fn siegel_golden() -> Self {
        Self(plaque_core::dynamics::Polynomial::siegel_golden())
    }

    #[getter]
    fn degree(&self) -> usize {
        self.0.degree()
    }

    #[getter]
    fn coefficients(&self) -> Vec<Complex64> {
        self.0.coeffs().to_vec()
    }

    fn __call__(&self, z: Complex64) -> Complex64 {
        self.0.eval(z)
    }

    fn critical_points(&self) -> PyResult<Vec<Complex64>> {
        critical(&self.0)
    }

    /// Cycles of exact period `n`, each listed once.
    fn cycles(&self, n: usize) -> PyResult<Vec<Cycle>> {
        let cycles = periodic_cycles(&self.0, n, &Tolerances::default(), &RootConfig::default()).map_err(err)?;
        Ok(cycles.into_iter().map(Cycle).collect())
    }

    fn __repr__(&self) -> String {
        format!("Polynomial('{}')", self.0)
    }
}

#[pyclass(name = "Cycle", frozen, module = "plaque")]
struct Cycle(plaque_core::dynamics::Cycle);

#[pymethods]
impl Cycle {
    #[getter]
    fn points(&self) -> Vec<Complex64> {
        self.0.points.clone()
    }

    #[getter]
    fn period(&self) -> usize {
        self.0.period
    }

    #[getter]
    fn multiplier(&self) -> Complex64 {
        self.0.multiplier
    }

    #[getter]
    fn label(&self) -> String {
        self.0.label.to_string()
    }

    #[getter]
    fn multiplicity(&self) -> usize {
        self.0.multiplicity
    }

    /// Invariant lift starting at the 1-based cycle point `base`.
    #[pyo3(signature = (base = 1))]
    fn lift(&self, base: usize) -> PyResult<BackwardOrbit> {
        pullback::BackwardOrbit::from_cycle(&self.0, base)
            .map(BackwardOrbit)
            .map_err(err)
    }

    fn __repr__(&self) -> String {
        format!(
            "Cycle(period={}, label={}, points={:?})",
            self.0.period, self.0.label, self.0.points
        )
    }
}

#[pyclass(name = "BackwardOrbit", frozen, module = "plaque")]
struct BackwardOrbit(pullback::BackwardOrbit);

#[pymethods]
impl BackwardOrbit {
    /// `x_1 = start`, then `x_{i+1}` is the `choices[i-1]`-th (0-based,
    /// lexicographic) preimage of `x_i`.
    #[staticmethod]
    fn from_branches(f: &Polynomial, start: Complex64, choices: Vec<usize>) -> PyResult<Self> {
        pullback::BackwardOrbit::from_branches(&f.0, start, &choices, &RootConfig::default())
            .map(Self)
            .map_err(err)
    }

    #[getter]
    fn points(&self) -> Vec<Complex64> {
        self.0.points.clone()
    }

    #[getter]
    fn periodic(&self) -> bool {
        self.0.periodic
    }

    /// 1-based point `i`, following the period for invariant lifts.
    fn point(&self, i: usize) -> Option<Complex64> {
        self.0.point(i)
    }

    /// The orbit with its first `m` points deleted.
    fn reindexed(&self, m: usize) -> Self {
        Self(self.0.reindexed(m))
    }
}

#[pyclass(name = "PullbackChain", frozen, module = "plaque")]
struct PullbackChain(pullback::PullbackChain);

#[pymethods]
impl PullbackChain {
    #[getter]
    fn levels(&self) -> usize {
        self.0.levels.len()
    }

    #[getter]
    fn failure(&self) -> Option<String> {
        self.0
            .failure
            .as_ref()
            .map(|f| format!("level {}: {}", f.level, f.error))
    }

    fn is_complete(&self) -> bool {
        self.0.is_complete()
    }

    fn max_residual(&self) -> f64 {
        self.0.max_residual()
    }

    /// Index bits of critical point `c` as a `0`/`1` string.
    #[pyo3(signature = (c = 0))]
    fn index_bits(&self, c: usize) -> PyResult<String> {
        self.0.index_bits(c).map(|b| b.bits).map_err(err)
    }

    /// Number of levels whose component contains a critical point.
    fn branching_count(&self) -> usize {
        engine::branching_count(&self.0).count
    }

    /// Absolute samples of the curve at 1-based `level`.
    fn curve(&self, level: usize) -> PyResult<Vec<Complex64>> {
        level
            .checked_sub(1)
            .and_then(|i| self.0.levels.get(i))
            .map(|l| l.curve.samples())
            .ok_or_else(|| PyValueError::new_err(format!("level {level} outside 1..={}", self.0.levels.len())))
    }

    fn to_dict(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &self.0)
    }
}

/// Evaluates a tail-class expression; returns the class text or a bool.
#[pyfunction]
fn eval_expr(py: Python<'_>, src: &str) -> PyResult<Py<PyAny>> {
    match expr::eval(src).map_err(err)? {
        expr::ExprValue::Class(c) => Ok(TailClass(c).into_pyobject(py)?.into_any().unbind()),
        expr::ExprValue::Bool(b) => to_py(py, &b),
    }
}

/// `(stabilized, index, class)`; `index` is 1-based and `None` when the
/// partial meets do not stabilize within `window`.
#[pyfunction]
fn meet_chain_reduce(ts: Vec<TailClass>, window: usize) -> PyResult<(bool, Option<usize>, TailClass)> {
    let ts: Vec<_> = ts.into_iter().map(|t| t.0).collect();
    Ok(match seqlattice::meet_chain_reduce(&ts, window).map_err(err)? {
        seqlattice::ChainReduction::Stabilized { index, class } => (true, Some(index), TailClass(class)),
        seqlattice::ChainReduction::NotStabilized { last } => (false, None, TailClass(last)),
    })
}

#[pyfunction]
fn diagonal_witness(ts: Vec<TailClass>, k: usize) -> PyResult<Vec<usize>> {
    let ts: Vec<_> = ts.into_iter().map(|t| t.0).collect();
    seqlattice::diagonal_witness(&ts, k).map_err(err)
}

#[pyfunction]
fn pullback_chain(f: &Polynomial, orbit: &BackwardOrbit, radius: f64, depth: usize) -> PyResult<PullbackChain> {
    let crit = critical(&f.0)?;
    pullback::pullback_chain(&f.0, &orbit.0, radius, depth, &crit, &TraceConfig::default())
        .map(PullbackChain)
        .map_err(err)
}

#[pyfunction]
#[pyo3(signature = (f, orbit, radii, depth, critical = 0))]
fn estimate_signature(
    py: Python<'_>,
    f: &Polynomial,
    orbit: &BackwardOrbit,
    radii: Vec<f64>,
    depth: usize,
    critical: usize,
) -> PyResult<Py<PyAny>> {
    let crit = self::critical(&f.0)?;
    let est = engine::estimate_signature(&f.0, &orbit.0, &crit, critical, &radii, depth, &EngineConfig::default())
        .map_err(err)?;
    to_py(py, &est)
}

#[pyfunction]
fn regularity_verdict(
    py: Python<'_>,
    f: &Polynomial,
    orbit: &BackwardOrbit,
    radii: Vec<f64>,
    depth: usize,
) -> PyResult<Py<PyAny>> {
    let crit = critical(&f.0)?;
    let rep =
        engine::regularity_verdict(&f.0, &orbit.0, &crit, &radii, depth, &EngineConfig::default()).map_err(err)?;
    to_py(py, &rep)
}

/// Candidate signatures, one per shift offset.
#[pyfunction]
#[pyo3(signature = (f, cycle, critical = 0))]
fn predict_signature(f: &Polynomial, cycle: &Cycle, critical: usize) -> PyResult<Vec<Signature>> {
    let crit = self::critical(&f.0)?;
    let c = *crit
        .get(critical)
        .ok_or_else(|| PyValueError::new_err(format!("critical point {critical} out of range")))?;
    Ok(engine::predict_signature(&f.0, &cycle.0, c)
        .candidates
        .into_iter()
        .map(Signature)
        .collect())
}

#[pyfunction]
#[pyo3(signature = (f, n_max, r0 = 0.1, steps = 6, depth = 32))]
fn verify_cycle_theorem(
    py: Python<'_>,
    f: &Polynomial,
    n_max: usize,
    r0: f64,
    steps: usize,
    depth: usize,
) -> PyResult<Py<PyAny>> {
    let crit = critical(&f.0)?;
    let rep =
        engine::verify_cycle_theorem(&f.0, &crit, n_max, r0, steps, depth, &EngineConfig::default()).map_err(err)?;
    to_py(py, &rep)
}

#[pyfunction]
fn construct_regular_plaque(f: &Polynomial, depth: usize) -> PyResult<(BackwardOrbit, PullbackChain)> {
    let crit = critical(&f.0)?;
    let (orbit, chain) =
        pullback::construct_regular_plaque(&f.0, depth, &crit, &TraceConfig::default()).map_err(err)?;
    Ok((BackwardOrbit(orbit), PullbackChain(chain)))
}

/// Returns `(orbit, report)`; the report carries the engulfing depths.
#[pyfunction]
#[pyo3(signature = (f, depth, critical = 0, x0 = None))]
fn construct_irregular_orbit(
    py: Python<'_>,
    f: &Polynomial,
    depth: usize,
    critical: usize,
    x0: Option<Complex64>,
) -> PyResult<(BackwardOrbit, Py<PyAny>)> {
    let crit = self::critical(&f.0)?;
    let c = *crit
        .get(critical)
        .ok_or_else(|| PyValueError::new_err(format!("critical point {critical} out of range")))?;
    let out = pullback::construct_irregular_orbit(
        &f.0,
        c,
        x0.unwrap_or(c),
        depth,
        &crit,
        &SearchConfig::default(),
        &TraceConfig::default(),
    )
    .map_err(err)?;
    let report = to_py(py, &out)?;
    Ok((BackwardOrbit(out.orbit), report))
}

#[pymodule]
fn plaque(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<TailClass>()?;
    m.add_class::<Signature>()?;
    m.add_class::<Polynomial>()?;
    m.add_class::<Cycle>()?;
    m.add_class::<BackwardOrbit>()?;
    m.add_class::<PullbackChain>()?;
    m.add_function(wrap_pyfunction!(eval_expr, m)?)?;
    m.add_function(wrap_pyfunction!(meet_chain_reduce, m)?)?;
    m.add_function(wrap_pyfunction!(diagonal_witness, m)?)?;
    m.add_function(wrap_pyfunction!(pullback_chain, m)?)?;
    m.add_function(wrap_pyfunction!(estimate_signature, m)?)?;
    m.add_function(wrap_pyfunction!(regularity_verdict, m)?)?;
    m.add_function(wrap_pyfunction!(predict_signature, m)?)?;
    m.add_function(wrap_pyfunction!(verify_cycle_theorem, m)?)?;
    m.add_function(wrap_pyfunction!(construct_regular_plaque, m)?)?;
    m.add_function(wrap_pyfunction!(construct_irregular_orbit, m)?)?;
    Ok(())
}
