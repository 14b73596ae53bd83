//! Command-line front end. The binary only forwards its arguments to
//! [`main_with_args`].

use crate::constants::{a_funnel, a_obstacle, b_end, zero_volume, EndDescriptor, EndKind, QuadratureSpec};
use crate::error::Error;
use crate::modes::{Funnel, Model};
use crate::phase::rho_curve;
use crate::resonances::{background_lattice, find_mode_zeros, resonance_set, Background, ResonanceSet, SearchRegion};
use crate::scatdet::{log_tau, sigma_phase, ModeSumPolicy, StepPolicy};
use crate::Complex64;
use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use std::ffi::OsString;
use std::f64::consts::{FRAC_PI_2, PI};
use std::io::Write;
use std::path::PathBuf;

mod verify;

pub use verify::{run_suite, Check, Suite, SuiteReport};

const TWO_PI: f64 = 2.0 * PI;

#[derive(Debug, Parser)]
#[command(name = "hypres", version, about = "Resonances and scattering data of model hyperbolic ends")]
pub struct Cli {
    /// JSON file overriding tolerances.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Write results here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EndModel {
    /// Funnel cut at r0 > 0.
    Truncated,
    /// Funnel continued to r0 < 0 (the sign of r0 is ignored).
    Extended,
    /// Standard funnel background lattice.
    Funnel,
    /// Hyperbolic plane background lattice.
    Plane,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConstantModel {
    /// A for a model funnel with signed r0.
    Funnel,
    /// A for the exterior of a disk of radius r0.
    Obstacle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FigureId {
    Resplot,
    Aplot,
    Nplot,
    Phicurve,
}

#[derive(Debug, Clone, PartialEq, Subcommand)]
pub enum Command {
    /// Resonances with |s − 1/2| ≤ radius.
    Resonances {
        #[arg(long, value_enum)]
        model: EndModel,
        #[arg(long, default_value_t = TWO_PI)]
        ell: f64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        r0: f64,
        #[arg(long, default_value_t = 10.0)]
        radius: f64,
    },
    /// Counting functions N(t) and Ñ(t) on a grid.
    Counts {
        #[arg(long, value_enum)]
        model: EndModel,
        #[arg(long, default_value_t = TWO_PI)]
        ell: f64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        r0: f64,
        #[arg(long, default_value_t = 10.0)]
        t_max: f64,
        #[arg(long, default_value_t = 0.5)]
        step: f64,
    },
    /// Asymptotic constants of one end.
    Constant {
        #[arg(long, value_enum)]
        model: ConstantModel,
        #[arg(long, default_value_t = TWO_PI)]
        ell: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        r0: f64,
    },
    /// log|τ| on the quarter circle |s − 1/2| = a, Re s ≥ 1/2.
    Detsamples {
        #[arg(long, value_enum)]
        model: EndModel,
        #[arg(long, default_value_t = TWO_PI)]
        ell: f64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        r0: f64,
        #[arg(long, default_value_t = 10.0)]
        a: f64,
        #[arg(long, default_value_t = 16)]
        thetas: usize,
    },
    /// Relative scattering phase σ(ξ).
    Phase {
        #[arg(long, value_enum)]
        model: EndModel,
        #[arg(long, default_value_t = TWO_PI)]
        ell: f64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        r0: f64,
        #[arg(long, default_value_t = 20.0)]
        xi_max: f64,
    },
    /// Run a suite of invariant checks and print a JSON report.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
    /// Data behind one of the standard plots.
    Figure {
        #[arg(long, value_enum)]
        id: FigureId,
        /// Overrides the default radius (resplot) or t range (nplot).
        #[arg(long)]
        radius: Option<f64>,
    },
}

/// Tolerances and output settings; the JSON config file uses these keys.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub theta_panels: usize,
    pub grid_step: f64,
    pub mode_sum_tol: f64,
    pub phase_step: f64,
    pub min_step: f64,
    pub format: Option<Format>,
    pub output_path: Option<PathBuf>,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            abs_tol: 1e-9,
            rel_tol: 1e-9,
            theta_panels: 8,
            grid_step: 0.25,
            mode_sum_tol: 1e-10,
            phase_step: 0.25,
            min_step: 1e-6,
            format: None,
            output_path: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub tolerances: Tolerances,
    pub output_path: Option<PathBuf>,
    pub format: Format,
}

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Module(Error),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            _ => 1,
        }
    }

    /// One-line JSON error record.
    pub fn record(&self) -> String {
        let (kind, message) = match self {
            CliError::Config(m) => ("config".to_string(), m.clone()),
            CliError::Module(e) => (e.kind().to_string(), e.to_string()),
            CliError::Io(e) => ("io".to_string(), e.to_string()),
        };
        serde_json::json!({ "error": { "kind": kind, "message": message } }).to_string()
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Module(e)
    }
}

/// x to 12 significant digits, shortest form.
pub fn fmt12(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.11e}");
    let (mant, exp) = sci.split_once('e').unwrap();
    let e: i32 = exp.parse().unwrap();
    if (-5..12).contains(&e) {
        let digits = (11 - e).max(0) as usize;
        let s = format!("{x:.digits$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        let m = if mant.contains('.') { mant.trim_end_matches('0').trim_end_matches('.') } else { mant };
        format!("{m}e{e}")
    }
}

/// x rounded to 12 significant digits, for JSON output.
pub fn round12(x: f64) -> f64 {
    fmt12(x).parse().unwrap_or(x)
}

/// A rectangular result: header plus formatted rows.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => fmt12(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Text(t) => t.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> serde_json::Value {
        match self {
            Cell::Num(x) => serde_json::json!(round12(*x)),
            Cell::Int(i) => serde_json::json!(i),
            Cell::Text(t) => serde_json::json!(t),
            Cell::Empty => serde_json::Value::Null,
        }
    }
}

impl Table {
    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.header).map_err(|e| CliError::Io(e.into()))?;
                for row in &self.rows {
                    w.write_record(row.iter().map(Cell::csv)).map_err(|e| CliError::Io(e.into()))?;
                }
                let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
                Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
            }
            Format::Json => {
                let rows: Vec<serde_json::Value> = self
                    .rows
                    .iter()
                    .map(|row| {
                        let m: serde_json::Map<String, serde_json::Value> =
                            self.header.iter().zip(row).map(|(h, c)| (h.to_string(), c.json())).collect();
                        serde_json::Value::Object(m)
                    })
                    .collect();
                Ok(serde_json::to_string_pretty(&rows).expect("json rows serialize") + "\n")
            }
        }
    }
}

fn resonance_table(set: &ResonanceSet) -> Table {
    Table {
        header: vec!["re", "im", "multiplicity", "mode"],
        rows: set
            .entries
            .iter()
            .map(|e| vec![Cell::Num(e.s.re), Cell::Num(e.s.im), Cell::Int(e.multiplicity as i64), Cell::Int(e.mode)])
            .collect(),
    }
}

fn funnel_for(model: EndModel, ell: f64, r0: f64) -> Result<(Model, Funnel), CliError> {
    let m = match model {
        EndModel::Truncated => {
            if r0 <= 0.0 {
                return Err(CliError::Config(format!("truncated model needs r0 > 0, got {r0}")));
            }
            Model::TruncatedFunnel
        }
        EndModel::Extended => {
            if r0 == 0.0 {
                return Err(CliError::Config("extended model needs r0 ≠ 0".into()));
            }
            Model::ExtendedFunnel
        }
        _ => return Err(CliError::Config("this command needs --model truncated or extended".into())),
    };
    let fun = Funnel::new(ell, if m == Model::ExtendedFunnel { -r0.abs() } else { r0 }).map_err(|e| CliError::Config(e.to_string()))?;
    Ok((m, fun))
}

fn resonances_for(model: EndModel, ell: f64, r0: f64, radius: f64) -> Result<ResonanceSet, CliError> {
    match model {
        EndModel::Funnel => Ok(background_lattice(Background::StandardFunnel { ell }, radius)?),
        EndModel::Plane => Ok(background_lattice(Background::HyperbolicPlane, radius)?),
        _ => {
            let (m, fun) = funnel_for(model, ell, r0)?;
            Ok(resonance_set(m, &fun, radius)?)
        }
    }
}

fn check_budget(name: &str, value: f64, lo: f64, hi: f64) -> Result<(), CliError> {
    if !(value >= lo && value <= hi) {
        return Err(CliError::Config(format!("{name} must lie in [{lo}, {hi}], got {value}")));
    }
    Ok(())
}

fn validate(cfg: &RunConfig) -> Result<(), CliError> {
    let t = &cfg.tolerances;
    for (name, v) in [
        ("abs_tol", t.abs_tol),
        ("rel_tol", t.rel_tol),
        ("grid_step", t.grid_step),
        ("mode_sum_tol", t.mode_sum_tol),
        ("phase_step", t.phase_step),
        ("min_step", t.min_step),
    ] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(CliError::Config(format!("{name} must be positive, got {v}")));
        }
    }
    if t.theta_panels == 0 {
        return Err(CliError::Config("theta_panels must be positive".into()));
    }
    match &cfg.command {
        Command::Resonances { ell, radius, model, .. } => {
            check_budget("ell", *ell, 1e-3, 1e3)?;
            let lo = if matches!(model, EndModel::Funnel | EndModel::Plane) { 1.0 } else { 0.0 };
            check_budget("radius", *radius, lo, 60.0)?;
        }
        Command::Counts { ell, t_max, step, .. } => {
            check_budget("ell", *ell, 1e-3, 1e3)?;
            check_budget("t_max", *t_max, 1.0, 60.0)?;
            check_budget("step", *step, 1e-3, *t_max)?;
        }
        Command::Constant { ell, .. } => check_budget("ell", *ell, 1e-3, 1e3)?,
        Command::Detsamples { ell, a, thetas, .. } => {
            check_budget("ell", *ell, 1e-3, 1e3)?;
            check_budget("a", *a, 0.0, 60.0)?;
            if *thetas < 1 {
                return Err(CliError::Config("thetas must be at least 1".into()));
            }
        }
        Command::Phase { ell, xi_max, .. } => {
            check_budget("ell", *ell, 1e-3, 1e3)?;
            check_budget("xi_max", *xi_max, 0.0, 200.0)?;
        }
        Command::Figure { radius: Some(r), .. } => check_budget("radius", *r, 1.0, 60.0)?,
        _ => {}
    }
    Ok(())
}

fn counts_table(set: &ResonanceSet, t_max: f64, step: f64) -> Result<Table, CliError> {
    let n = set.counting();
    let steps = (t_max / step).round() as usize;
    let mut rows = Vec::with_capacity(steps + 1);
    for i in 0..=steps {
        let t = (i as f64 * step).min(t_max);
        rows.push(vec![Cell::Num(t), Cell::Int(n.n(t)? as i64), Cell::Num(n.n_tilde(t)?)]);
    }
    Ok(Table { header: vec!["t", "N", "Ntilde"], rows })
}

fn quad_spec(t: &Tolerances) -> QuadratureSpec {
    QuadratureSpec { abs_tol: t.abs_tol, rel_tol: t.rel_tol, theta_panels: t.theta_panels }
}

/// Rendered output plus the number of failed checks (verify only).
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub text: String,
    pub failed_checks: usize,
}

/// Executes one command and returns the rendered output.
pub fn run(cfg: &RunConfig) -> Result<Output, CliError> {
    validate(cfg)?;
    let tol = &cfg.tolerances;
    let table = match &cfg.command {
        Command::Resonances { model, ell, r0, radius } => resonance_table(&resonances_for(*model, *ell, *r0, *radius)?),
        Command::Counts { model, ell, r0, t_max, step } => counts_table(&resonances_for(*model, *ell, *r0, *t_max)?, *t_max, *step)?,
        Command::Constant { model, ell, r0 } => {
            let spec = quad_spec(tol);
            let mut rows = Vec::new();
            match model {
                ConstantModel::Funnel => {
                    let a = a_funnel(*ell, *r0, &spec)?;
                    rows.push(vec![Cell::Text("A".into()), Cell::Num(a.value), Cell::Num(a.error)]);
                    let end = EndDescriptor { kind: EndKind::Funnel, ell: *ell, b: *r0 };
                    let b = b_end(&end, &spec)?;
                    rows.push(vec![Cell::Text("B".into()), Cell::Num(b.value), Cell::Num(b.error)]);
                    rows.push(vec![Cell::Text("zero_volume".into()), Cell::Num(zero_volume(&end)?), Cell::Num(0.0)]);
                    if *r0 <= 0.0 {
                        let bound = -ell / TWO_PI * r0.sinh() + ell / 4.0;
                        rows.push(vec![Cell::Text("upper_bound".into()), Cell::Num(bound), Cell::Num(0.0)]);
                    }
                }
                ConstantModel::Obstacle => {
                    let a = a_obstacle(*r0, &spec)?;
                    rows.push(vec![Cell::Text("A".into()), Cell::Num(a.value), Cell::Num(a.error)]);
                    let end = EndDescriptor { kind: EndKind::Planar, ell: TWO_PI, b: *r0 };
                    let b = b_end(&end, &spec)?;
                    rows.push(vec![Cell::Text("B".into()), Cell::Num(b.value), Cell::Num(b.error)]);
                    rows.push(vec![Cell::Text("zero_volume".into()), Cell::Num(zero_volume(&end)?), Cell::Num(0.0)]);
                }
            }
            Table { header: vec!["name", "value", "error_estimate"], rows }
        }
        Command::Detsamples { model, ell, r0, a, thetas } => {
            let (m, fun) = funnel_for(*model, *ell, *r0)?;
            let policy = ModeSumPolicy { abs_tol: tol.mode_sum_tol, ..ModeSumPolicy::default() };
            // θ stops short of π/2 by a⁻², where the critical line is approached
            let top = if *a > 1.0 { FRAC_PI_2 - 1.0 / (a * a) } else { FRAC_PI_2 - 1e-3 };
            let mut rows = Vec::with_capacity(*thetas);
            for i in 0..*thetas {
                let th = if *thetas == 1 { 0.0 } else { top * i as f64 / (*thetas - 1) as f64 };
                let s = Complex64::new(0.5, 0.0) + Complex64::from_polar(*a, th);
                rows.push(vec![Cell::Num(*a), Cell::Num(th), Cell::Num(log_tau(s, m, &fun, &policy)?)]);
            }
            Table { header: vec!["a", "theta", "log_abs_tau"], rows }
        }
        Command::Phase { model, ell, r0, xi_max } => {
            let (m, fun) = funnel_for(*model, *ell, *r0)?;
            let step = StepPolicy { output_step: tol.phase_step, min_step: tol.min_step, abs_tol: tol.mode_sum_tol };
            let v = sigma_phase(*xi_max, m, &fun, &step)?;
            Table { header: vec!["xi", "sigma"], rows: v.iter().map(|p| vec![Cell::Num(p.xi), Cell::Num(p.sigma)]).collect() }
        }
        Command::Verify { suite } => {
            let report = run_suite(*suite);
            let text = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
            return Ok(Output { text, failed_checks: report.failed });
        }
        Command::Figure { id, radius } => figure(*id, *radius, tol)?,
    };
    Ok(Output { text: table.render(cfg.format)?, failed_checks: 0 })
}

fn figure(id: FigureId, radius: Option<f64>, tol: &Tolerances) -> Result<Table, CliError> {
    match id {
        // extended funnel resonances drifting towards the critical line
        FigureId::Resplot => {
            let fun = Funnel::new(TWO_PI, -1.0)?;
            Ok(resonance_table(&resonance_set(Model::ExtendedFunnel, &fun, radius.unwrap_or(20.0))?))
        }
        // A(F_{2π,r0}) against r0, with the extended-funnel bound
        FigureId::Aplot => {
            let spec = quad_spec(tol);
            let mut rows = Vec::new();
            for i in 0..=16 {
                let r0 = -2.0 + 0.25 * i as f64;
                let a = a_funnel(TWO_PI, r0, &spec)?;
                let bound = if r0 <= 0.0 { Cell::Num(-r0.sinh() + FRAC_PI_2) } else { Cell::Empty };
                rows.push(vec![Cell::Num(r0), Cell::Num(a.value), Cell::Num(a.error), bound]);
            }
            Ok(Table { header: vec!["r0", "A", "error_estimate", "bound"], rows })
        }
        // truncated funnel counting function
        FigureId::Nplot => {
            let t_max = radius.unwrap_or(10.0);
            let fun = Funnel::new(TWO_PI, 1.0)?;
            counts_table(&resonance_set(Model::TruncatedFunnel, &fun, t_max)?, t_max, 0.05)
        }
        // the curve Re φ((1/2 − s)/7; 1) = 0, mirrored to Im s > 0, with the k = 7 zeros
        FigureId::Phicurve => {
            let fun = Funnel::new(TWO_PI, 1.0)?;
            let k = 7.0;
            let mut rows = Vec::new();
            for i in 0..=200 {
                let th = FRAC_PI_2 * i as f64 / 200.0;
                if let Some(x) = rho_curve(th, fun.omega, 1.0)? {
                    let s = (Complex64::new(0.5, 0.0) - k * Complex64::from_polar(x, th)).conj();
                    rows.push(vec![Cell::Text("curve".into()), Cell::Num(s.re), Cell::Num(s.im)]);
                }
            }
            let region = SearchRegion { re_min: -16.0, re_max: 0.73, im_min: 0.05, im_max: 16.0, grid_step: tol.grid_step, disk: None };
            for z in find_mode_zeros(Model::TruncatedFunnel, &fun, 7, &region)? {
                rows.push(vec![Cell::Text("zero".into()), Cell::Num(z.s.re), Cell::Num(z.s.im)]);
            }
            Ok(Table { header: vec!["kind", "re", "im"], rows })
        }
    }
}

fn load_config(path: &Option<PathBuf>) -> Result<Tolerances, CliError> {
    match path {
        None => Ok(Tolerances::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| CliError::Config(format!("cannot read {}: {e}", p.display())))?;
            serde_json::from_str(&text).map_err(|e| CliError::Config(format!("bad config {}: {e}", p.display())))
        }
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("HYPRES_THREADS") else {
        return Ok(());
    };
    let n: usize = v.trim().parse().ok().filter(|&n| n >= 1).ok_or_else(|| CliError::Config(format!("HYPRES_THREADS must be a positive integer, got {v:?}")))?;
    // a pool built earlier in the same process keeps its size
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

/// Builds the run configuration from parsed arguments and the config file.
pub fn build_config(cli: Cli) -> Result<RunConfig, CliError> {
    let tolerances = load_config(&cli.config)?;
    let format = cli.format.or(tolerances.format).unwrap_or(Format::Csv);
    let output_path = cli.out.or_else(|| tolerances.output_path.clone());
    Ok(RunConfig { command: cli.command, tolerances, output_path, format })
}

fn execute(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    let cfg = build_config(cli)?;
    let out = run(&cfg)?;
    match &cfg.output_path {
        Some(p) => std::fs::write(p, &out.text).map_err(CliError::Io)?,
        None => std::io::stdout().lock().write_all(out.text.as_bytes()).map_err(CliError::Io)?,
    }
    if out.failed_checks > 0 {
        return Err(CliError::Module(Error::Domain(format!("{} verification check(s) failed", out.failed_checks))));
    }
    Ok(())
}

/// Parses arguments, runs, and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{}", e.record());
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_digits() {
        assert_eq!(fmt12(PI), "3.14159265359");
        assert_eq!(fmt12(-1.5), "-1.5");
        assert_eq!(fmt12(1e-7), "1e-7");
        assert_eq!(fmt12(123456789012345.0), "1.23456789012e14");
        assert_eq!(fmt12(0.0), "0");
        assert_eq!(round12(1.0 / 3.0), 0.333333333333);
    }

    #[test]
    fn config_errors_exit_two() {
        let cli = Cli::try_parse_from(["hypres", "resonances", "--model", "truncated", "--r0", "1", "--radius", "100"]).unwrap();
        let err = run(&build_config(cli).unwrap()).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.record().contains("\"config\""));
        assert!(Cli::try_parse_from(["hypres", "resonances", "--model", "truncated", "--ell", "2pi"]).is_err());
    }

    #[test]
    fn resonance_csv_header() {
        let cli = Cli::try_parse_from(["hypres", "resonances", "--model", "funnel", "--radius", "4"]).unwrap();
        let out = run(&build_config(cli).unwrap()).unwrap().text;
        assert!(out.starts_with("re,im,multiplicity,mode\n"));
        assert!(out.contains("-1,0,2,0\n"));
    }

    #[test]
    fn negative_r0_parses() {
        let cli = Cli::try_parse_from(["hypres", "constant", "--model", "funnel", "--r0", "-1"]).unwrap();
        let out = run(&build_config(cli).unwrap()).unwrap().text;
        assert!(out.contains("upper_bound,"));
    }
}
