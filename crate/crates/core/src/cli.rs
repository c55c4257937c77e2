//! Command-line front end. `main` only parses arguments and hands them to [`run`].

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::expsim::{simulate, DetectorModel, SimulationConfig};
use crate::factorization::factorize;
use crate::poincare::{FrameKind, SphereScene};
use crate::report::AnalysisReport;
use crate::schmidt::schmidt_from_factorization;
use crate::state::{complex_serde, QutritState};
use crate::{Error, EPS_REC};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "biqutrit", version, about = "Analyze and simulate polarization biphoton qutrits")]
pub struct Cli {
    /// Reconstruction tolerance used to judge residuals.
    #[arg(long, global = true, env = "QUTRIT_EPS", default_value_t = EPS_REC)]
    pub eps: f64,

    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full analysis report (measures, factorization, Schmidt modes, residuals).
    Analyze(StateArgs),
    /// Factorizing modes A†, B† and the commutator [A, B†].
    Factorize(StateArgs),
    /// Schmidt eigenvalues, modes and phase.
    Schmidt(StateArgs),
    /// Named Stokes vectors for plotting.
    Sphere(SphereArgs),
    /// Simulate the coincidence measurement and estimate λ± and cos 2φ.
    Simulate(SimulateArgs),
}

#[derive(Debug, Clone, Args)]
pub struct StateArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub c1: Option<f64>,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub c1_im: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub c2: Option<f64>,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub c2_im: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub c3: Option<f64>,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub c3_im: f64,
    /// State N a_H†(cos α a_H† + sin α a_V†)|0⟩.
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["c1", "c2", "c3", "json"])]
    pub alpha: Option<f64>,
    /// JSON file `{"c1": {"re": .., "im": ..}, "c2": .., "c3": ..}`.
    #[arg(long, conflicts_with_all = ["c1", "c2", "c3"])]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FrameArg {
    Lab,
    Schmidt,
}

#[derive(Debug, Clone, Args)]
pub struct SphereArgs {
    #[command(flatten)]
    pub state: StateArgs,
    #[arg(long, value_enum, default_value_t = FrameArg::Lab)]
    pub frame: FrameArg,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub state: StateArgs,
    #[arg(long, default_value_t = 1.0)]
    pub eta1: f64,
    #[arg(long, default_value_t = 1.0)]
    pub eta2: f64,
    /// Background coincidences per input pair in every channel.
    #[arg(long, default_value_t = 0.0)]
    pub dark_rate: f64,
    /// Number of input pairs N.
    #[arg(long, default_value_t = 1_000_000)]
    pub pairs: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Use expected rates instead of Poisson samples.
    #[arg(long)]
    pub exact: bool,
    /// Sweep φ over this many points in [0, π).
    #[arg(long, default_value_t = 0)]
    pub phi_sweep: usize,
    /// `csv` emits the φ sweep (requires --phi-sweep).
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError { code: EXIT_USAGE, message: message.into() }
    }

    fn validation(message: impl Into<String>) -> Self {
        CliError { code: EXIT_VALIDATION, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::validation(e.to_string())
    }
}

/// Result of a command: the text to emit and the exit code. A report whose
/// residuals exceed the tolerance is still emitted, with exit code 3.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub text: String,
    pub code: i32,
}

#[derive(Deserialize)]
struct StateFile {
    #[serde(with = "complex_serde")]
    c1: Complex64,
    #[serde(with = "complex_serde")]
    c2: Complex64,
    #[serde(with = "complex_serde")]
    c3: Complex64,
}

pub fn read_state(args: &StateArgs) -> Result<QutritState, CliError> {
    if let Some(alpha) = args.alpha {
        return Ok(QutritState::alpha_family(alpha)?);
    }
    if let Some(path) = &args.json {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
        let f: StateFile = serde_json::from_str(&text)
            .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))?;
        return Ok(QutritState::new(f.c1, f.c2, f.c3)?);
    }
    if args.c1.is_none() && args.c2.is_none() && args.c3.is_none() {
        return Err(CliError::usage("no state given: use --c1/--c2/--c3, --alpha or --json"));
    }
    let amp = |re: Option<f64>, im: f64| Complex64::new(re.unwrap_or(0.0), im);
    Ok(QutritState::new(
        amp(args.c1, args.c1_im),
        amp(args.c2, args.c2_im),
        amp(args.c3, args.c3_im),
    )?)
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report types serialize");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct Checked<'a, T> {
    #[serde(flatten)]
    body: &'a T,
    tolerance: f64,
    passed: bool,
}

fn checked<T: Serialize>(body: &T, max_residual: f64, tol: f64) -> Output {
    let passed = max_residual < tol;
    Output {
        text: to_json(&Checked { body, tolerance: tol, passed }),
        code: if passed { EXIT_OK } else { EXIT_VALIDATION },
    }
}

#[derive(Serialize)]
struct FactorizeOutput {
    state: QutritState,
    #[serde(flatten)]
    factorization: crate::factorization::FactorizationResult,
    concurrence_from_commutator: f64,
    reconstruction_residual: f64,
}

#[derive(Serialize)]
struct SchmidtOutput {
    state: QutritState,
    #[serde(flatten)]
    schmidt: crate::schmidt::SchmidtDecomposition,
    reconstruction_residual: f64,
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    if !(cli.eps.is_finite() && cli.eps > 0.0) {
        return Err(CliError::usage(format!("tolerance must be positive, got {}", cli.eps)));
    }
    match &cli.command {
        Command::Analyze(a) => {
            let q = read_state(a)?;
            let r = AnalysisReport::new(&q);
            Ok(checked(&r, r.residuals.max_reconstruction(), cli.eps))
        }
        Command::Factorize(a) => {
            let q = read_state(a)?;
            let f = factorize(&q);
            let res = f.reconstruction_residual(&q);
            let body = FactorizeOutput {
                state: q,
                factorization: f,
                concurrence_from_commutator: crate::concurrence_from_commutator(&f),
                reconstruction_residual: res,
            };
            Ok(checked(&body, res, cli.eps))
        }
        Command::Schmidt(a) => {
            let q = read_state(a)?;
            let s = schmidt_from_factorization(&q, &factorize(&q));
            let res = s.reconstruction_residual(&q);
            let body = SchmidtOutput { state: q, schmidt: s, reconstruction_residual: res };
            Ok(checked(&body, res, cli.eps))
        }
        Command::Sphere(a) => {
            let q = read_state(&a.state)?;
            let kind = match a.frame {
                FrameArg::Lab => FrameKind::Lab,
                FrameArg::Schmidt => FrameKind::Schmidt,
            };
            let scene = SphereScene::build(&q, kind);
            let text = match a.format {
                Format::Json => to_json(&scene),
                Format::Csv => scene.to_csv(),
            };
            Ok(Output { text, code: EXIT_OK })
        }
        Command::Simulate(a) => {
            let q = read_state(&a.state)?;
            let detector = DetectorModel::new(a.eta1, a.eta2, a.dark_rate)
                .map_err(|e| CliError::usage(e.to_string()))?;
            if a.format == Format::Csv && a.phi_sweep == 0 {
                return Err(CliError::usage("--format csv needs --phi-sweep STEPS"));
            }
            let cfg = SimulationConfig {
                detector,
                n_pairs: a.pairs,
                seed: a.seed,
                exact: a.exact,
                phi_sweep_steps: a.phi_sweep,
            };
            let report = simulate(&q, &cfg)?;
            let text = match a.format {
                Format::Json => to_json(&report),
                Format::Csv => report.phi_sweep.as_ref().expect("sweep requested").to_csv(),
            };
            Ok(Output { text, code: EXIT_OK })
        }
    }
}
