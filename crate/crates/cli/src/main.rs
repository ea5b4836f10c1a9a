//! `plaque`: command-line front end for the signature engine.
//!
//! Every command prints one JSON document (`schema`, `command`, `config` and
//! the command's result fields) or, for curve data, CSV. Exit status is 0 on
//! success, 1 on engine errors and 2 on usage errors.

mod select;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use plaque::dynamics::{
    critical_points, orbit_closure_sample, periodic_cycles, rational_rotation, Cycle, CycleLabel, Polynomial,
};
use plaque::engine::*;
use plaque::pullback::{
    construct_irregular_orbit, construct_regular_plaque, pullback_chain, BackwardOrbit, PullbackChain, SearchConfig,
};
use plaque::report::SCHEMA;
use plaque::seqlattice::expr::{eval, ExprValue};
use plaque::Complex64;

#[derive(Debug, Parser)]
#[command(name = "plaque", version)]
#[command(about = "Index sequences and signatures of points in plaque inverse limits of polynomial maps")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    opts: Options,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a tail-class expression, e.g. "sq(2) & sq(3)"
    Lattice { expr: String },
    /// Critical points and critical values
    Critpts,
    /// Periodic cycles of period 1..=--period-max
    Cycles,
    /// Multiplier classification of the selected cycle, or of all cycles
    Classify,
    /// Pullback chain of a disk about the selected cycle's invariant lift
    Pullback,
    /// Index bits of one critical point at one radius
    Index,
    /// Signature estimate and regularity verdict over a radius schedule
    Signature,
    /// Predicted against estimated signatures for every cycle
    Verify,
    /// Construct a backward orbit whose pullbacks avoid every critical point
    Regular,
    /// Construct a backward orbit near the critical orbit that engulfs it
    Irregular,
    /// Search for engulfing preimage chains from points of the critical orbit
    Probe,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct Options {
    /// `quad:c=<complex>`, `siegel:golden`, or ascending coefficients `a0,a1,...`
    #[arg(long, global = true, allow_hyphen_values = true, default_value = "quad:c=0")]
    map: String,

    /// Pullback depth [default: 32; 64 for parabolic cycles; 6 for probe]
    #[arg(long, global = true)]
    depth: Option<usize>,

    /// Disk radius, or the first radius of the halving schedule
    /// [default: 0.1; 0.9 for parabolic cycles; 0.5 seed for irregular]
    #[arg(long, global = true)]
    radius: Option<f64>,

    /// Explicit radius schedule (comma list)
    #[arg(long, global = true, value_delimiter = ',')]
    radii: Option<Vec<f64>>,

    /// Largest period searched
    #[arg(long, global = true, default_value_t = 1)]
    period_max: usize,

    /// `fixed:<z>`, `period:<n>:<index>` (1-based), `base:<i>` (1-based)
    #[arg(long, global = true)]
    cycle: Vec<String>,

    /// Critical point: 0-based index, or its value
    #[arg(long, global = true, allow_hyphen_values = true, default_value = "0")]
    critical: String,

    /// Root-of-unity tolerance for parabolic detection
    #[arg(long, global = true)]
    tol_root: Option<f64>,

    /// Half-width of the neutral multiplier band
    #[arg(long, global = true)]
    tol_band: Option<f64>,

    /// Largest denominator tried for rational rotation numbers
    #[arg(long, global = true)]
    p_max: Option<u64>,

    /// Search node budget for irregular and probe
    #[arg(long, global = true, default_value_t = 10_000)]
    budget: usize,

    /// Closeness to the critical-orbit sample for irregular and probe
    #[arg(long, global = true, default_value_t = 0.02)]
    epsilon: f64,

    /// Forward steps sampling the critical orbit [default: 4096 for irregular, 1000 for probe]
    #[arg(long, global = true)]
    sample_steps: Option<usize>,

    /// Start of the irregular orbit [default: the critical point]
    #[arg(long, global = true, allow_hyphen_values = true)]
    x0: Option<String>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Seed for root-finder initialization
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Engine(plaque::Error),
}

impl From<plaque::Error> for CliError {
    fn from(e: plaque::Error) -> Self {
        Self::Engine(e)
    }
}

enum Output {
    Json(Map<String, Value>),
    Csv(Vec<u8>),
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn pair(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

struct Run {
    f: Polynomial,
    cfg: EngineConfig,
    opts: Options,
    config: Map<String, Value>,
}

impl Run {
    fn new(opts: Options) -> Result<Self, CliError> {
        let f: Polynomial = opts.map.parse().map_err(|e: plaque::Error| usage(e.to_string()))?;
        let mut cfg = EngineConfig::default();
        if let Some(t) = opts.tol_root {
            cfg.tolerances.root_of_unity = t;
        }
        if let Some(t) = opts.tol_band {
            cfg.tolerances.band = t;
        }
        if let Some(p) = opts.p_max {
            cfg.tolerances.p_max = p;
        }
        cfg.trace.roots.seed = opts.seed;
        for (name, v) in [
            ("--tol-root", opts.tol_root),
            ("--tol-band", opts.tol_band),
            ("--radius", opts.radius),
        ] {
            if v.is_some_and(|x| !positive(x)) {
                return Err(usage(format!("{name} must be positive")));
            }
        }
        if opts.radii.iter().flatten().any(|&r| !positive(r)) {
            return Err(usage("--radii must be positive"));
        }
        if opts.depth == Some(0) || opts.period_max == 0 || !positive(opts.epsilon) {
            return Err(usage("--depth, --period-max and --epsilon must be positive"));
        }
        let mut config = Map::new();
        config.insert("map".into(), json!(opts.map));
        config.insert("coefficients".into(), to_value(f.to_string()));
        config.insert("engine".into(), to_value(cfg));
        config.insert("format".into(), to_value(opts.format));
        config.insert("seed".into(), json!(opts.seed));
        Ok(Self { f, cfg, opts, config })
    }

    fn echo(&mut self, key: &str, v: impl Serialize) {
        self.config.insert(key.into(), to_value(v));
    }

    fn critical(&self) -> Result<Vec<Complex64>, CliError> {
        Ok(critical_points(&self.f, &self.cfg.tolerances, &self.cfg.trace.roots)?)
    }

    fn cycles_upto(&self, n_max: usize) -> Result<Vec<Cycle>, CliError> {
        let mut out = Vec::new();
        for n in 1..=n_max {
            out.extend(periodic_cycles(
                &self.f,
                n,
                &self.cfg.tolerances,
                &self.cfg.trace.roots,
            )?);
        }
        Ok(out)
    }

    fn depth(&mut self, parabolic: bool, fallback: usize) -> usize {
        let d = self.opts.depth.unwrap_or(if parabolic { 64 } else { fallback });
        self.echo("depth", d);
        d
    }

    fn radius(&mut self, parabolic: bool) -> f64 {
        let r = self.opts.radius.unwrap_or(if parabolic { 0.9 } else { 0.1 });
        self.echo("radius", r);
        r
    }

    fn schedule(&mut self, parabolic: bool) -> Vec<f64> {
        let radii = match self.opts.radii.clone() {
            Some(r) => r,
            None => halving_schedule(self.radius(parabolic), 6),
        };
        self.echo("radii", &radii);
        radii
    }

    fn selected(&mut self) -> Result<(Cycle, BackwardOrbit), CliError> {
        let sel = select::cycle(&self.f, &self.opts.cycle, &self.cfg)?;
        let orbit = BackwardOrbit::from_cycle(&sel.cycle, sel.base)?;
        self.echo(
            "cycle",
            json!({
                "selectors": self.opts.cycle,
                "period": sel.cycle.period,
                "base": sel.base,
                "points": sel.cycle.points.iter().map(|&z| pair(z)).collect::<Vec<_>>(),
                "label": sel.cycle.label.to_string(),
            }),
        );
        Ok((sel.cycle, orbit))
    }

    fn critical_choice(&mut self, critical: &[Complex64]) -> Result<usize, CliError> {
        let which = select::critical(&self.opts.critical, critical)?;
        self.echo("critical", json!({"index": which, "point": pair(critical[which])}));
        Ok(which)
    }

    fn allow_csv(&self, csv: bool) -> Result<(), CliError> {
        if self.opts.format == Format::Csv && !csv {
            return Err(usage("csv output is only available for curve data (pullback, regular)"));
        }
        Ok(())
    }
}

/// False for NaN as well as for non-positive values.
fn positive(x: f64) -> bool {
    x > 0.0
}

fn is_parabolic(cycle: &Cycle) -> bool {
    matches!(cycle.label, CycleLabel::Parabolic { .. })
}

fn chain_output(run: &Run, chain: &PullbackChain, mut doc: Map<String, Value>) -> Result<Output, CliError> {
    if run.opts.format == Format::Csv {
        let mut buf = Vec::new();
        chain.write_csv(&mut buf).expect("writing to memory");
        return Ok(Output::Csv(buf));
    }
    doc.insert("branching".into(), to_value(branching_count(chain)));
    doc.insert("max_residual".into(), json!(chain.max_residual()));
    doc.insert("chain".into(), to_value(chain));
    Ok(Output::Json(doc))
}

fn dispatch(command: &Command, run: &mut Run) -> Result<Output, CliError> {
    run.allow_csv(matches!(command, Command::Pullback | Command::Regular))?;
    let mut doc = Map::new();
    match command {
        Command::Lattice { expr } => {
            let value = eval(expr).map_err(|e| usage(e.to_string()))?;
            doc.insert("expression".into(), json!(expr));
            doc.insert(
                "result".into(),
                match value {
                    ExprValue::Class(c) => json!(c.to_string()),
                    ExprValue::Bool(b) => json!(b),
                },
            );
        }
        Command::Critpts => {
            let crit = run.critical()?;
            doc.insert("critical_points".into(), crit.iter().map(|&z| pair(z)).collect());
            doc.insert(
                "critical_values".into(),
                crit.iter().map(|&z| pair(run.f.eval(z))).collect(),
            );
        }
        Command::Cycles => {
            let n = run.opts.period_max;
            run.echo("period_max", n);
            doc.insert("cycles".into(), to_value(run.cycles_upto(n)?));
        }
        Command::Classify => {
            let crit = run.critical()?;
            let cycles = if run.opts.cycle.is_empty() {
                run.echo("period_max", run.opts.period_max);
                run.cycles_upto(run.opts.period_max)?
            } else {
                vec![run.selected()?.0]
            };
            let rows: Vec<Value> = cycles
                .iter()
                .map(|cy| {
                    let nearest_critical = cy
                        .points
                        .iter()
                        .flat_map(|p| crit.iter().map(move |c| (p - c).norm()))
                        .fold(f64::INFINITY, f64::min);
                    json!({
                        "period": cy.period,
                        "points": cy.points.iter().map(|&z| pair(z)).collect::<Vec<_>>(),
                        "multiplier": pair(cy.multiplier),
                        "modulus": cy.multiplier.norm(),
                        "label": cy.label.to_string(),
                        "rotation": rational_rotation(cy.multiplier, &run.cfg.tolerances),
                        "nearest_critical_distance": nearest_critical,
                        "multiplicity": cy.multiplicity,
                        "flagged": cy.flagged(),
                    })
                })
                .collect();
            doc.insert("cycles".into(), Value::Array(rows));
        }
        Command::Pullback => {
            let crit = run.critical()?;
            let (cycle, orbit) = run.selected()?;
            let depth = run.depth(is_parabolic(&cycle), 32);
            let radius = run.radius(is_parabolic(&cycle));
            let chain = pullback_chain(&run.f, &orbit, radius, depth, &crit, &run.cfg.trace)?;
            if let Some(failure) = &chain.failure {
                log::warn!("chain stopped at level {}: {}", failure.level, failure.error);
            }
            return chain_output(run, &chain, doc);
        }
        Command::Index => {
            let crit = run.critical()?;
            let (cycle, orbit) = run.selected()?;
            let which = run.critical_choice(&crit)?;
            let depth = run.depth(is_parabolic(&cycle), 32);
            let radius = run.radius(is_parabolic(&cycle));
            let entry = index_class(&run.f, &orbit, &crit, which, radius, depth, &run.cfg)?;
            doc.insert("bits".into(), json!(entry.bits));
            doc.insert("class".into(), to_value(entry.class().map(|c| c.to_string())));
            doc.insert("fit".into(), to_value(&entry.fit));
            doc.insert("residual".into(), json!(entry.residual));
        }
        Command::Signature => {
            let crit = run.critical()?;
            let (cycle, orbit) = run.selected()?;
            let which = run.critical_choice(&crit)?;
            let parabolic = is_parabolic(&cycle);
            let depth = run.depth(parabolic, 32);
            let radii = run.schedule(parabolic);
            let estimate = estimate_signature(&run.f, &orbit, &crit, which, &radii, depth, &run.cfg)?;
            let regularity = regularity_verdict(&run.f, &orbit, &crit, &radii, depth, &run.cfg)?;
            let prediction = predict_signature(&run.f, &cycle, crit[which]);
            doc.insert("signature".into(), json!(estimate.value.to_string()));
            doc.insert("verdict".into(), to_value(estimate.verdict));
            doc.insert("regularity".into(), to_value(regularity.verdict));
            doc.insert("estimate".into(), to_value(&estimate));
            doc.insert("regularity_report".into(), to_value(&regularity));
            doc.insert("prediction".into(), to_value(&prediction));
            doc.insert(
                "prediction_offset".into(),
                to_value(prediction.offset_of(&estimate.value)),
            );
        }
        Command::Verify => {
            if run.opts.radii.is_some() {
                return Err(usage("verify uses the schedule --radius·2^-j; --radii is not accepted"));
            }
            let crit = run.critical()?;
            let n = run.opts.period_max;
            run.echo("period_max", n);
            let parabolic = run.cycles_upto(n)?.iter().any(is_parabolic);
            let depth = run.depth(parabolic, 32);
            let r0 = run.radius(parabolic);
            run.echo("steps", 6);
            let report = verify_cycle_theorem(&run.f, &crit, n, r0, 6, depth, &run.cfg)?;
            doc.insert("pass".into(), json!(report.pass));
            doc.insert("report".into(), to_value(&report));
        }
        Command::Regular => {
            let crit = run.critical()?;
            let depth = run.depth(false, 32);
            let (orbit, chain) = construct_regular_plaque(&run.f, depth, &crit, &run.cfg.trace)?;
            doc.insert("orbit".into(), to_value(&orbit));
            return chain_output(run, &chain, doc);
        }
        Command::Irregular => {
            let crit = run.critical()?;
            let which = run.critical_choice(&crit)?;
            let c = crit[which];
            let x0 = match &run.opts.x0 {
                Some(s) => select::complex(s)?,
                None => c,
            };
            run.echo("x0", pair(x0));
            let depth = run.depth(false, 32);
            let search = SearchConfig {
                epsilon: run.opts.epsilon,
                sample_steps: run.opts.sample_steps.unwrap_or(SearchConfig::default().sample_steps),
                seed_radius: run.opts.radius.unwrap_or(SearchConfig::default().seed_radius),
                budget: run.opts.budget,
                ..SearchConfig::default()
            };
            run.echo("search", search);
            let out = construct_irregular_orbit(&run.f, c, x0, depth, &crit, &search, &run.cfg.trace)?;
            doc.insert("engulfing_depths".into(), to_value(&out.engulfing_depths));
            doc.insert("irregular".into(), to_value(&out));
        }
        Command::Probe => {
            let crit = run.critical()?;
            let which = run.critical_choice(&crit)?;
            let c = crit[which];
            let depth = run.depth(false, 6);
            let radii = match (&run.opts.radii, run.opts.radius) {
                (Some(r), _) => r.clone(),
                (None, Some(r)) => vec![r],
                (None, None) => vec![0.01],
            };
            run.echo("radii", &radii);
            let steps = run.opts.sample_steps.unwrap_or(1000);
            run.echo("sample_steps", steps);
            run.echo("epsilon", run.opts.epsilon);
            run.echo("budget", run.opts.budget);
            let sample = orbit_closure_sample(&run.f, c, steps, false, run.cfg.tolerances.dedup)?;
            let report = inverse_critical_probe(
                &run.f,
                c,
                &sample.points,
                &radii,
                depth,
                run.opts.epsilon,
                run.opts.budget,
                &crit,
                &run.cfg,
            );
            doc.insert("sample_size".into(), json!(sample.points.len()));
            doc.insert("satisfied_fraction".into(), json!(report.satisfied_fraction));
            doc.insert("report".into(), to_value(&report));
        }
    }
    Ok(Output::Json(doc))
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Lattice { .. } => "lattice",
        Command::Critpts => "critpts",
        Command::Cycles => "cycles",
        Command::Classify => "classify",
        Command::Pullback => "pullback",
        Command::Index => "index",
        Command::Signature => "signature",
        Command::Verify => "verify",
        Command::Regular => "regular",
        Command::Irregular => "irregular",
        Command::Probe => "probe",
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("PLAQUE_LOG")).init();
    let cli = Cli::parse();
    let name = command_name(&cli.command);
    let result = Run::new(cli.opts).and_then(|mut run| {
        let out = dispatch(&cli.command, &mut run)?;
        Ok((run, out))
    });
    match result {
        Ok((run, Output::Json(fields))) => {
            let mut doc = Map::new();
            doc.insert("schema".into(), json!(SCHEMA));
            doc.insert("command".into(), json!(name));
            doc.insert("config".into(), Value::Object(run.config));
            doc.extend(fields);
            let text = serde_json::to_string_pretty(&Value::Object(doc)).expect("json");
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            ExitCode::SUCCESS
        }
        Ok((_, Output::Csv(bytes))) => {
            let _ = std::io::stdout().lock().write_all(&bytes);
            ExitCode::SUCCESS
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            eprintln!("run `plaque --help` for usage");
            ExitCode::from(2)
        }
        Err(CliError::Engine(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
