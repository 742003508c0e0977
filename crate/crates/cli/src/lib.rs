//! Command-line front end for the `vacmotion` toolkit.
//!
//! Every run is described by its command line: a subcommand, its physical
//! parameters, a unit system and an output format. Sweeps produce a
//! [`SweepResult`] that is written as CSV or JSON.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use vacmotion::cavity::{self, Cavity, MotionMode, MotionSpec};
use vacmotion::conformal_algebra::{self, Generator, GeneratorSet};
use vacmotion::gravity;
use vacmotion::measurement::{self, MechanicalSusceptibility};
use vacmotion::mirror_dynamics::{self, ForceSusceptibilityModel, OscillatorModel};
use vacmotion::spectra::{self, FrequencyGrid, Spectrum, ThermalState};
use vacmotion::worldline::{self, FourVector, Worldline};
use vacmotion::{Constants, UnitSystem};

/// Environment variable naming a JSON file with replacement SI constants
/// (`hbar`, `c`, `k_b`, `g`). Intended for tests.
pub const CODATA_OVERRIDE_ENV: &str = "VACMOTION_CODATA";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    /// Help or version text requested explicitly.
    #[error("{0}")]
    Info(String),
    #[error(transparent)]
    Physics(#[from] vacmotion::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Info(_) => 0,
            CliError::Usage(_) => 2,
            CliError::Physics(vacmotion::Error::InvalidInput(_)) => 3,
            CliError::Physics(vacmotion::Error::Domain(_)) => 4,
            CliError::Physics(vacmotion::Error::Singularity(_)) => 5,
            CliError::Physics(vacmotion::Error::Kinematics(_)) => 6,
            CliError::Io(_) => 7,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Units {
    Natural,
    Si,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Frequency or parameter sweep, written `start:stop:count` or
/// `log:start:stop:count`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RangeSpec {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    pub log: bool,
}

impl RangeSpec {
    pub fn grid(&self) -> vacmotion::Result<FrequencyGrid> {
        if self.log {
            FrequencyGrid::logarithmic(self.start, self.stop, self.count)
        } else {
            FrequencyGrid::linear(self.start, self.stop, self.count)
        }
    }
}

impl FromStr for RangeSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (log, body) = match s.strip_prefix("log:") {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let parts: Vec<&str> = body.split(':').collect();
        let [start, stop, count] = parts.as_slice() else {
            return Err(format!("expected start:stop:count, got {s:?}"));
        };
        let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
        let count = count.trim().parse::<usize>().map_err(|e| format!("{count:?}: {e}"))?;
        Ok(RangeSpec { start: num(start)?, stop: num(stop)?, count, log })
    }
}

impl std::fmt::Display for RangeSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.log {
            f.write_str("log:")?;
        }
        write!(f, "{}:{}:{}", self.start, self.stop, self.count)
    }
}

fn parse_vector(s: &str) -> Result<[f64; 4], String> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}")))
        .collect::<Result<_, _>>()?;
    parts.try_into().map_err(|_| format!("expected four comma-separated components, got {s:?}"))
}

#[derive(Debug, Parser)]
#[command(name = "vacmotion", version, about = "Vacuum fluctuation and motion calculations")]
#[command(arg_required_else_help = true)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value = "natural")]
    units: Units,
    #[arg(long, global = true, value_enum, default_value = "csv")]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, PartialEq, Subcommand)]
pub enum Command {
    /// Vacuum and thermal force spectra.
    Spectrum(SpectrumArgs),
    /// Worldline samples with their Abraham vector.
    Trajectory(TrajectoryArgs),
    /// Exact check of the conformal algebra.
    Algebra(AlgebraArgs),
    /// Mirror response and position noise.
    Mirror(MirrorArgs),
    /// Photons radiated by a resonantly driven cavity.
    Cavity(CavityArgs),
    /// Quantum limits of position measurement.
    Measure(MeasureArgs),
    /// Compton and Planck noise floors.
    Gravity(GravityArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpectrumKind {
    /// Radiation pressure noise on a perfect mirror.
    ForcePerfect,
    /// Force commutator spectrum.
    ForceCommutator,
    /// Incoming momentum-flux noise.
    Momentum,
    /// Force noise at finite temperature.
    ForceThermal,
}

#[derive(Debug, Clone, PartialEq, Args)]
pub struct SpectrumArgs {
    #[arg(long, value_enum)]
    pub kind: SpectrumKind,
    #[arg(long, allow_hyphen_values = true)]
    pub omega: RangeSpec,
    /// Temperature for `force-thermal` (K in SI).
    #[arg(long, allow_negative_numbers = true)]
    pub temperature: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TrajectoryKind {
    Rest,
    Hyperbolic,
    Sinusoid,
    /// Special conformal image of the rest worldline.
    ConformalRest,
}

#[derive(Debug, Clone, PartialEq, Args)]
pub struct TrajectoryArgs {
    #[arg(long, value_enum)]
    pub kind: TrajectoryKind,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: RangeSpec,
    #[arg(long, allow_negative_numbers = true)]
    pub accel: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub amp: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub freq: Option<f64>,
    /// Conformal parameter `a` as `a0,a1,a2,a3`.
    #[arg(long, value_parser = parse_vector, allow_hyphen_values = true)]
    pub vector: Option<[f64; 4]>,
    /// Half-width of the coordinate-time window mapped by `conformal-rest`.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub span: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgebraAction {
    Check,
}

#[derive(Debug, Clone, PartialEq, Args)]
pub struct AlgebraArgs {
    #[arg(value_enum, default_value = "check")]
    pub action: AlgebraAction,
    /// Replace D by -D in the checked generator set.
    #[arg(long)]
    pub flip_d: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ForceModel {
    Perfect,
    Cutoff,
    Decoupled,
}

#[derive(Debug, Clone, PartialEq, Args)]
pub struct MirrorArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub mass: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub omega0: f64,
    /// Treat `--mass` as the bare mass.
    #[arg(long)]
    pub bare: bool,
    #[arg(long, value_enum, default_value = "perfect")]
    pub model: ForceModel,
    #[arg(long, allow_negative_numbers = true)]
    pub cutoff: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub omega: RangeSpec,
    /// Emit the dispersion-relation report instead of the sweep.
    #[arg(long)]
    pub causality: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Elongation,
    Translation,
}

#[derive(Debug, Clone, PartialEq, Args)]
pub struct CavityArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub r1: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub r2: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub length: f64,
    #[arg(long, value_enum)]
    pub mode: Mode,
    /// Drive at the n-th motional resonance.
    #[arg(long, conflicts_with = "omega", required_unless_present = "omega")]
    pub n: Option<u64>,
    /// Drive frequency.
    #[arg(long, allow_negative_numbers = true)]
    pub omega: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub amp: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub duration: f64,
}

#[derive(Debug, Clone, PartialEq, Args)]
pub struct MeasureArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub mass: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub omega0: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub gamma: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub omega: RangeSpec,
}

#[derive(Debug, Clone, PartialEq, Args)]
pub struct GravityArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub mass: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub omega: RangeSpec,
    /// Measurement-dependent prefactor of the geodesic noise.
    #[arg(long, allow_negative_numbers = true)]
    pub factor: Option<f64>,
}

/// Parsed command line.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub units: Units,
    pub format: Format,
    pub out: Option<PathBuf>,
    /// Flags as given, for the metadata block.
    pub parameters: BTreeMap<String, String>,
}

impl RunConfig {
    pub fn subcommand(&self) -> &'static str {
        match self.command {
            Command::Spectrum(_) => "spectrum",
            Command::Trajectory(_) => "trajectory",
            Command::Algebra(_) => "algebra",
            Command::Mirror(_) => "mirror",
            Command::Cavity(_) => "cavity",
            Command::Measure(_) => "measure",
            Command::Gravity(_) => "gravity",
        }
    }
}

/// Parses `argv` (including the program name). Help and version requests
/// come back as `Info` errors carrying the rendered text.
pub fn parse_config<I, T>(argv: I) -> Result<RunConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let cli = Cli::try_parse_from(&argv).map_err(|e| {
        let text = e.render().to_string();
        match e.kind() {
            clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                CliError::Info(text)
            }
            _ => CliError::Usage(text),
        }
    })?;
    Ok(RunConfig {
        parameters: collect_parameters(&argv),
        command: cli.command,
        units: cli.units,
        format: cli.format,
        out: cli.out,
    })
}

fn collect_parameters(argv: &[String]) -> BTreeMap<String, String> {
    let mut out = BTreeMap::new();
    let mut it = argv.iter().skip(1).peekable();
    while let Some(arg) = it.next() {
        let Some(name) = arg.strip_prefix("--") else {
            continue;
        };
        if matches!(name, "units" | "format" | "out") {
            it.next();
            continue;
        }
        if let Some((k, v)) = name.split_once('=') {
            out.insert(k.to_string(), v.to_string());
            continue;
        }
        let value = match it.peek() {
            Some(next) if !next.starts_with("--") => it.next().cloned().unwrap_or_default(),
            _ => "true".to_string(),
        };
        out.insert(name.to_string(), value);
    }
    out
}

/// One output cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Cell {
    Num(f64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub subcommand: String,
    pub parameters: BTreeMap<String, String>,
    pub units: Units,
    pub version: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub meta: Meta,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl SweepResult {
    fn new(config: &RunConfig, columns: &[&str]) -> Self {
        SweepResult {
            meta: Meta {
                subcommand: config.subcommand().to_string(),
                parameters: config.parameters.clone(),
                units: config.units,
                version: env!("CARGO_PKG_VERSION").to_string(),
            },
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<&Cell>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| &r[i]).collect())
    }
}

#[derive(Deserialize)]
struct ConstantsOverride {
    hbar: f64,
    c: f64,
    k_b: f64,
    g: f64,
}

/// Constants for the run. SI values may be replaced through
/// [`CODATA_OVERRIDE_ENV`].
pub fn constants_for(units: Units) -> Result<Constants, CliError> {
    match units {
        Units::Natural => Ok(Constants::NATURAL),
        Units::Si => match std::env::var_os(CODATA_OVERRIDE_ENV) {
            None => Ok(Constants::SI),
            Some(path) => {
                let text = std::fs::read_to_string(&path)?;
                let o: ConstantsOverride = serde_json::from_str(&text)
                    .map_err(|e| CliError::Usage(format!("bad constants file: {e}")))?;
                Ok(Constants { system: UnitSystem::Si, hbar: o.hbar, c: o.c, k_b: o.k_b, g: o.g })
            }
        },
    }
}

fn required(value: Option<f64>, flag: &str, kind: &str) -> Result<f64, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("--{flag} is required for {kind}")))
}

pub fn run(config: &RunConfig) -> Result<SweepResult, CliError> {
    let k = constants_for(config.units)?;
    match &config.command {
        Command::Spectrum(a) => run_spectrum(config, a, &k),
        Command::Trajectory(a) => run_trajectory(config, a),
        Command::Algebra(a) => Ok(run_algebra(config, a)),
        Command::Mirror(a) => run_mirror(config, a, &k),
        Command::Cavity(a) => run_cavity(config, a, &k),
        Command::Measure(a) => run_measure(config, a, &k),
        Command::Gravity(a) => run_gravity(config, a, &k),
    }
}

fn run_spectrum(config: &RunConfig, a: &SpectrumArgs, k: &Constants) -> Result<SweepResult, CliError> {
    let grid = a.omega.grid()?;
    let values: Vec<f64> = match a.kind {
        SpectrumKind::ForcePerfect => {
            let xi = Spectrum::from_real_fn(grid.clone(), k.system, |w| {
                spectra::force_commutator_perfect_mirror(w, k)
            });
            spectra::vacuum_fd(&xi, k)?.0.real_parts()
        }
        SpectrumKind::ForceCommutator => {
            grid.points().iter().map(|&w| spectra::force_commutator_perfect_mirror(w, k)).collect()
        }
        SpectrumKind::Momentum => {
            grid.points().iter().map(|&w| spectra::momentum_density_spectrum(w, k)).collect()
        }
        SpectrumKind::ForceThermal => {
            let t = required(a.temperature, "temperature", "force-thermal")?;
            let state = if t == 0.0 {
                ThermalState::vacuum()
            } else {
                ThermalState::from_temperature(t, k)?
            };
            let xi = Spectrum::from_real_fn(grid.clone(), k.system, |w| {
                spectra::force_commutator_perfect_mirror(w, k)
            });
            spectra::thermal_fd(&xi, state, k)?.real_parts()
        }
    };
    let mut out = SweepResult::new(config, &["omega", "value"]);
    for (&w, v) in grid.points().iter().zip(values) {
        out.push(vec![w.into(), v.into()]);
    }
    Ok(out)
}

fn run_trajectory(config: &RunConfig, a: &TrajectoryArgs) -> Result<SweepResult, CliError> {
    let kind = "trajectory";
    let w = match a.kind {
        TrajectoryKind::Rest => Worldline::rest(),
        TrajectoryKind::Hyperbolic => Worldline::hyperbolic(required(a.accel, "accel", kind)?)?,
        TrajectoryKind::Sinusoid => {
            Worldline::sinusoid(required(a.amp, "amp", kind)?, required(a.freq, "freq", kind)?)
        }
        TrajectoryKind::ConformalRest => {
            let v = a.vector.ok_or_else(|| CliError::Usage("--vector is required for conformal-rest".into()))?;
            worldline::map_worldline(&Worldline::rest(), FourVector::new(v), (-a.span, a.span))?
        }
    };
    let grid = a.lambda.grid()?;
    let mut out = SweepResult::new(
        config,
        &["lambda", "x0", "x1", "x2", "x3", "abraham0", "abraham1", "abraham2", "abraham3"],
    );
    for &l in grid.points() {
        let x = w.position(l)?.components;
        let g = worldline::abraham_vector(&w, l)?.components;
        let mut row: Vec<Cell> = vec![l.into()];
        row.extend(x.iter().chain(g.iter()).map(|&v| Cell::Num(v)));
        out.push(row);
    }
    Ok(out)
}

fn run_algebra(config: &RunConfig, a: &AlgebraArgs) -> SweepResult {
    let AlgebraAction::Check = a.action;
    let mut set = GeneratorSet::canonical();
    if a.flip_d {
        let flipped = set.get(Generator::D).neg();
        set = set.with_override(Generator::D, flipped);
    }
    let report = conformal_algebra::check_structure_constants_with(&set);
    let mut out = SweepResult::new(config, &["bracket", "expected", "computed", "status"]);
    let convention = match report.convention {
        conformal_algebra::BracketOrder::AbMinusBa => "AB-BA",
        conformal_algebra::BracketOrder::BaMinusAb => "BA-AB",
    };
    out.meta.parameters.insert("convention".into(), convention.into());
    out.meta.parameters.insert("passed".into(), format!("{}/{}", report.passed, report.total));
    for row in report.rows {
        let status = match row.status {
            conformal_algebra::Status::Pass => "pass",
            conformal_algebra::Status::Fail => "fail",
        };
        out.push(vec![row.bracket.into(), row.expected.into(), row.computed.into(), status.into()]);
    }
    out
}

fn force_model(a: &MirrorArgs) -> Result<ForceSusceptibilityModel, CliError> {
    Ok(match a.model {
        ForceModel::Perfect => ForceSusceptibilityModel::PerfectMirror,
        ForceModel::Decoupled => ForceSusceptibilityModel::Decoupled,
        ForceModel::Cutoff => ForceSusceptibilityModel::cutoff(required(a.cutoff, "cutoff", "the cutoff model")?)?,
    })
}

fn run_mirror(config: &RunConfig, a: &MirrorArgs, k: &Constants) -> Result<SweepResult, CliError> {
    let force = force_model(a)?;
    let grid = a.omega.grid()?;
    if a.causality {
        let report = mirror_dynamics::causality_check(force, &grid, k);
        let verdict = match report.verdict {
            mirror_dynamics::CausalityVerdict::Consistent => "consistent",
            mirror_dynamics::CausalityVerdict::Inconsistent => "inconsistent",
            mirror_dynamics::CausalityVerdict::Trivial => "trivial",
            mirror_dynamics::CausalityVerdict::NonCausal => "non-causal",
        };
        let mut out = SweepResult::new(config, &["model", "verdict", "max_discrepancy", "points_checked"]);
        out.push(vec![
            report.model.into(),
            verdict.into(),
            report.max_discrepancy.into(),
            (report.points_checked as f64).into(),
        ]);
        return Ok(out);
    }
    let osc = OscillatorModel::new(a.mass, a.omega0, a.bare)?;
    let noise = mirror_dynamics::langevin_position_spectrum(osc, force, &grid, k)?;
    let mut out = SweepResult::new(
        config,
        &["omega", "chi_ff_re", "chi_ff_im", "chi_qq_re", "chi_qq_im", "c_qq"],
    );
    for (w, c) in noise.iter() {
        let f = mirror_dynamics::chi_ff(force, w, k);
        let q = mirror_dynamics::chi_qq(osc, force, w, k)?;
        out.push(vec![w.into(), f.re.into(), f.im.into(), q.re.into(), q.im.into(), c.re.into()]);
    }
    Ok(out)
}

fn run_cavity(config: &RunConfig, a: &CavityArgs, k: &Constants) -> Result<SweepResult, CliError> {
    let cav = Cavity::new(a.r1, a.r2, a.length, k)?;
    let omega = match (a.n, a.omega) {
        (Some(n), _) => n as f64 * PI / cav.tau(),
        (None, Some(w)) => w,
        (None, None) => return Err(CliError::Usage("one of --n or --omega is required".into())),
    };
    let mode = match a.mode {
        Mode::Elongation => MotionMode::Elongation,
        Mode::Translation => MotionMode::Translation,
    };
    let motion = MotionSpec::new(mode, omega, a.amp, a.duration)?;
    let photons = cavity::radiated_photons(&cav, &motion, k)?;
    let res = cavity::matching_resonance(&cav, &motion)?;
    let parity = match res.parity {
        cavity::Parity::Even => "even",
        cavity::Parity::Odd => "odd",
    };
    let mut out = SweepResult::new(config, &["N", "finesse", "resonance_index", "parity"]);
    out.push(vec![photons.into(), cav.finesse().into(), (res.index as f64).into(), parity.into()]);
    Ok(out)
}

fn run_measure(config: &RunConfig, a: &MeasureArgs, k: &Constants) -> Result<SweepResult, CliError> {
    let s = MechanicalSusceptibility::new(a.mass, a.omega0, a.gamma)?;
    let mut out = SweepResult::new(config, &["omega", "sql", "uql", "optimized_noise"]);
    for &w in a.omega.grid()?.points() {
        let opt = measurement::optimize_probe(&s, w, k)?;
        out.push(vec![
            w.into(),
            measurement::sql_bound(&s, w, k)?.into(),
            measurement::uql_bound(&s, w, k)?.into(),
            opt.noise.into(),
        ]);
    }
    Ok(out)
}

fn run_gravity(config: &RunConfig, a: &GravityArgs, k: &Constants) -> Result<SweepResult, CliError> {
    let regime = gravity::regime_classifier(a.mass, k)?;
    let mut out = SweepResult::new(config, &["omega", "compton_noise", "planck_noise", "dominant_regime"]);
    for &w in a.omega.grid()?.points() {
        out.push(vec![
            w.into(),
            mirror_dynamics::compton_background(a.mass, w, k)?.into(),
            gravity::geodesic_noise(w, a.factor, k)?.into(),
            regime.as_str().into(),
        ]);
    }
    Ok(out)
}

fn csv_field(cell: &Cell) -> String {
    match cell {
        Cell::Num(v) => format!("{v:.15e}"),
        Cell::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
        Cell::Text(s) => s.clone(),
    }
}

/// Renders a result. CSV numbers use scientific notation with 16
/// significant digits.
pub fn render(result: &SweepResult, format: Format) -> String {
    match format {
        Format::Csv => {
            let mut s = result.columns.join(",");
            s.push('\n');
            for row in &result.rows {
                let fields: Vec<String> = row.iter().map(csv_field).collect();
                let _ = writeln!(s, "{}", fields.join(","));
            }
            s
        }
        Format::Json => {
            let mut s = serde_json::to_string_pretty(result).unwrap_or_default();
            s.push('\n');
            s
        }
    }
}

pub fn emit(result: &SweepResult, format: Format, sink: &mut dyn Write) -> Result<(), CliError> {
    sink.write_all(render(result, format).as_bytes())?;
    sink.flush()?;
    Ok(())
}

/// Full program: parse, run, write. Returns the process exit code.
pub fn main_with(argv: Vec<String>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let config = match parse_config(argv) {
        Ok(c) => c,
        Err(CliError::Info(text)) => {
            let _ = write!(stdout, "{text}");
            return 0;
        }
        Err(CliError::Usage(text)) => {
            let _ = write!(stderr, "{text}");
            return 2;
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return e.exit_code();
        }
    };
    let outcome = run(&config).and_then(|result| match &config.out {
        Some(path) => {
            let mut file = std::fs::File::create(path)?;
            emit(&result, config.format, &mut file)
        }
        None => emit(&result, config.format, stdout),
    });
    match outcome {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
