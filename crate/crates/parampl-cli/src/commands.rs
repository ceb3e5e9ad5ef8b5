//! Flag parsing, config-file merging, and the five subcommand bodies.
//!
//! Every subcommand resolves its parameters in the same order — explicit
//! flag, then config-file value, then built-in default — validates them up
//! front (domain problems are configuration errors, exit 1), and only then
//! computes (numerical failures are exit 2). CSV always goes through
//! [`crate::csvout::CsvDoc`] so output is byte-identical across runs.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64 as C64;

use parampl::error_model::{fidelity_full_with, fidelity_lower_bound_with, outcome_overlaps};
use parampl::fock::{coherent_state, Truncation};
use parampl::herald::{
    closed_output, gain_displaced_number, q_zero_location, success_probability,
    vanishing_coefficient_index,
};
use parampl::observables::{photon_moments_closed, q_function, reference_projections, GridSpec};
use parampl::opa::pipeline_truncation;
use parampl::verify::run_acceptance_checks;
use parampl::ErrorModel;

use crate::config::FileConfig;
use crate::csvout::{float, CsvDoc};

/// Husimi panel gains emitted by `qgrid` when no `--gain` is given.
const PANEL_GAINS: [f64; 4] = [1.0, 1.111, 1.154, 1.195];
/// Default `fidelity` gain: the displaced-one-photon collapse point for
/// the default amplitude, to caption precision.
const FIDELITY_GAIN: f64 = 1.154;
/// Dark-count grid of the `fidelity` table: 51 points on [0, 0.5].
const DARK_STEPS: usize = 51;
const DARK_MAX: f64 = 0.5;
/// Loss panels of the `fidelity` table.
const LOSS_PANELS: [f64; 3] = [0.0, 0.2, 0.5];
/// Default `sweep` range: gains 1 to 10, 181 points, linear.
const SWEEP_START: f64 = 1.0;
const SWEEP_STOP: f64 = 10.0;
const SWEEP_STEPS: usize = 181;

/// Heralded optical-amplifier toolbox: Fock coefficients, gain sweeps,
/// Husimi grids, detector-model fidelity bounds, and a self-check report.
#[derive(Parser)]
#[command(name = "parampl", version, arg_required_else_help = true)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fock coefficients of the heralded output next to its coherent reference
    State(StateArgs),
    /// Sweep the gain: success probability, reference overlaps, photon moments, landmarks
    Sweep(SweepArgs),
    /// Husimi Q function on a square phase-space grid, one panel per gain
    Qgrid(QgridArgs),
    /// Fidelity bounds under detector dark counts and losses
    Fidelity(FidelityArgs),
    /// Run the built-in closed-form-vs-oracle checks and print a report
    Verify,
}

#[derive(Args)]
struct CommonArgs {
    /// Real part of the input coherent amplitude
    #[arg(long)]
    alpha_re: Option<f64>,
    /// Imaginary part of the input coherent amplitude
    #[arg(long)]
    alpha_im: Option<f64>,
    /// Fock-space cutoff (levels retained); default is sized from the inputs
    #[arg(long)]
    dim: Option<usize>,
    /// Relative tail-mass tolerance for truncation checks, in [0, 1)
    #[arg(long)]
    tail_tol: Option<f64>,
    /// Write CSV here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Flat `key = value` file supplying defaults for any flag
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct StateArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Amplitude gain g >= 1; default: the gain collapsing the output onto
    /// a displaced one-photon state (needs |alpha| > 1)
    #[arg(long)]
    gain: Option<f64>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// First gain of the sweep
    #[arg(long)]
    gain_start: Option<f64>,
    /// Last gain of the sweep
    #[arg(long)]
    gain_stop: Option<f64>,
    /// Number of sweep points
    #[arg(long)]
    gain_steps: Option<usize>,
    /// Space the sweep points logarithmically
    #[arg(long)]
    gain_log: bool,
}

#[derive(Args)]
struct QgridArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Single panel gain; default: the four landmark panels 1, 1.111, 1.154, 1.195
    #[arg(long)]
    gain: Option<f64>,
}

#[derive(Args)]
struct FidelityArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Amplitude gain g >= 1
    #[arg(long)]
    gain: Option<f64>,
}

/// What went wrong, split by exit code: configuration problems exit 1,
/// numerical failures exit 2.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Library(parampl::Error),
    ChecksFailed(usize),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "{msg}"),
            CliError::Library(e) => write!(f, "{e}"),
            CliError::ChecksFailed(n) => write!(f, "{n} check(s) failed"),
        }
    }
}

impl From<parampl::Error> for CliError {
    fn from(e: parampl::Error) -> Self {
        CliError::Library(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 1,
            // Domain errors escaping the up-front validation still describe
            // bad parameters, not a numerical breakdown.
            CliError::Library(
                parampl::Error::InvalidGain(_)
                | parampl::Error::InvalidAmplitude(_)
                | parampl::Error::InvalidModel(_),
            ) => 1,
            CliError::Library(_) | CliError::ChecksFailed(_) => 2,
        }
    }
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::State(args) => cmd_state(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Qgrid(args) => cmd_qgrid(args),
        Command::Fidelity(args) => cmd_fidelity(args),
        Command::Verify => cmd_verify(),
    }
}

fn load_config(common: &CommonArgs) -> Result<FileConfig, CliError> {
    match &common.config {
        Some(path) => FileConfig::load(path).map_err(CliError::Config),
        None => Ok(FileConfig::default()),
    }
}

fn cfg_f64(file: &FileConfig, key: &str) -> Result<Option<f64>, CliError> {
    file.f64(key).map_err(CliError::Config)
}

fn cfg_usize(file: &FileConfig, key: &str) -> Result<Option<usize>, CliError> {
    file.usize(key).map_err(CliError::Config)
}

fn cfg_bool(file: &FileConfig, key: &str) -> Result<Option<bool>, CliError> {
    file.bool(key).map_err(CliError::Config)
}

fn resolve_alpha(common: &CommonArgs, file: &FileConfig, default: C64) -> Result<C64, CliError> {
    let re = common
        .alpha_re
        .or(cfg_f64(file, "alpha-re")?)
        .unwrap_or(default.re);
    let im = common
        .alpha_im
        .or(cfg_f64(file, "alpha-im")?)
        .unwrap_or(default.im);
    if !re.is_finite() || !im.is_finite() {
        return Err(CliError::Config(format!(
            "alpha must be finite, got {re} + {im}i"
        )));
    }
    Ok(C64::new(re, im))
}

fn resolve_trunc(
    common: &CommonArgs,
    file: &FileConfig,
    default: Truncation,
) -> Result<Truncation, CliError> {
    let dim = common
        .dim
        .or(cfg_usize(file, "dim")?)
        .unwrap_or(default.dim);
    let tail_tol = common
        .tail_tol
        .or(cfg_f64(file, "tail-tol")?)
        .unwrap_or(default.tail_tol);
    if dim < 2 {
        return Err(CliError::Config(format!(
            "dim must keep at least two levels, got {dim}"
        )));
    }
    if !(0.0..1.0).contains(&tail_tol) {
        return Err(CliError::Config(format!(
            "tail-tol must lie in [0, 1), got {tail_tol}"
        )));
    }
    Ok(Truncation::new(dim, tail_tol))
}

fn resolve_out(common: &CommonArgs, file: &FileConfig) -> Option<PathBuf> {
    common.out.clone().or_else(|| file.path("out"))
}

fn validate_gain(g: f64) -> Result<f64, CliError> {
    if !g.is_finite() || g < 1.0 {
        return Err(CliError::Config(format!(
            "gain must be a finite number >= 1, got {g}"
        )));
    }
    Ok(g)
}

fn emit(doc: &CsvDoc, out: Option<&PathBuf>) -> Result<(), CliError> {
    match doc.emit(out.map(|p| p.as_path())) {
        // A downstream pipe hanging up early (`parampl qgrid | head`) is
        // not an error.
        Err(e) if out.is_none() && e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        other => other.map_err(|e| CliError::Config(format!("cannot write output: {e}"))),
    }
}

fn echo_alpha(doc: &mut CsvDoc, alpha: C64) {
    doc.comment("alpha-re", float(alpha.re));
    doc.comment("alpha-im", float(alpha.im));
}

fn echo_trunc(doc: &mut CsvDoc, trunc: Truncation) {
    doc.comment("dim", trunc.dim);
    doc.comment("tail-tol", float(trunc.tail_tol));
}

fn cmd_state(args: StateArgs) -> Result<(), CliError> {
    let file = load_config(&args.common)?;
    let alpha = resolve_alpha(&args.common, &file, C64::new(10.0_f64.sqrt(), 0.0))?;
    let gain = match args.gain.or(cfg_f64(&file, "gain")?) {
        Some(g) => validate_gain(g)?,
        None => {
            let g0 = gain_displaced_number(alpha).map_err(|_| {
                CliError::Config(
                    "the default gain (the displaced-one-photon collapse point) needs \
                     |alpha| > 1; pass --gain explicitly"
                        .into(),
                )
            })?;
            if g0 > 100.0 {
                eprintln!(
                    "warning: default gain {g0:.3} is extreme (|alpha| is barely above 1); \
                     the required cutoff may be impractical"
                );
            }
            g0
        }
    };
    let trunc = resolve_trunc(
        &args.common,
        &file,
        Truncation::for_mean_photons(alpha.norm_sqr()),
    )?;
    let out_path = resolve_out(&args.common, &file);

    let heralded = closed_output(alpha, gain, trunc)?;
    let reference = coherent_state(heralded.beta, trunc)?;

    let mut doc = CsvDoc::new("state");
    echo_alpha(&mut doc, alpha);
    doc.comment("gain", float(gain));
    echo_trunc(&mut doc, trunc);
    doc.header(&[
        "n", "out_re", "out_im", "out_abs2", "ref_re", "ref_im", "ref_abs2",
    ]);
    for n in 0..trunc.dim {
        let a = heralded.psi.amp(n);
        let r = reference.amp(n);
        doc.row(&[
            n.to_string(),
            float(a.re),
            float(a.im),
            float(a.norm_sqr()),
            float(r.re),
            float(r.im),
            float(r.norm_sqr()),
        ]);
    }
    emit(&doc, out_path.as_ref())
}

/// Sweep points with exact endpoints: a plain lerp in linear mode, a lerp
/// in `ln g` in log mode.
fn sweep_gains(start: f64, stop: f64, steps: usize, log: bool) -> Vec<f64> {
    if steps == 1 {
        return vec![start];
    }
    let (a, b) = if log {
        (start.ln(), stop.ln())
    } else {
        (start, stop)
    };
    (0..steps)
        .map(|i| {
            if i == 0 {
                return start;
            }
            if i == steps - 1 {
                return stop;
            }
            let t = i as f64 / (steps - 1) as f64;
            let v = a * (1.0 - t) + b * t;
            if log {
                v.exp()
            } else {
                v
            }
        })
        .collect()
}

fn cmd_sweep(args: SweepArgs) -> Result<(), CliError> {
    let file = load_config(&args.common)?;
    let alpha = resolve_alpha(&args.common, &file, C64::new(2.0, 0.0))?;
    let start = args
        .gain_start
        .or(cfg_f64(&file, "gain-start")?)
        .unwrap_or(SWEEP_START);
    let stop = args
        .gain_stop
        .or(cfg_f64(&file, "gain-stop")?)
        .unwrap_or(SWEEP_STOP);
    let steps = args
        .gain_steps
        .or(cfg_usize(&file, "gain-steps")?)
        .unwrap_or(SWEEP_STEPS);
    let log = args.gain_log || cfg_bool(&file, "gain-log")?.unwrap_or(false);
    validate_gain(start)?;
    validate_gain(stop)?;
    if steps < 1 {
        return Err(CliError::Config("gain-steps must be at least 1".into()));
    }
    let trunc = resolve_trunc(
        &args.common,
        &file,
        Truncation::for_mean_photons(alpha.norm_sqr() + 2.0),
    )?;
    let out_path = resolve_out(&args.common, &file);

    let mut doc = CsvDoc::new("sweep");
    echo_alpha(&mut doc, alpha);
    doc.comment("gain-start", float(start));
    doc.comment("gain-stop", float(stop));
    doc.comment("gain-steps", steps);
    doc.comment("gain-log", log);
    echo_trunc(&mut doc, trunc);
    doc.header(&[
        "gain",
        "p_success",
        "p_coherent",
        "p_photon_added",
        "p_displaced_number",
        "mean_n",
        "variance",
        "vanishing_n",
        "qzero_re",
        "qzero_im",
    ]);
    for g in sweep_gains(start, stop, steps, log) {
        let p_success = success_probability(alpha, g)?;
        let proj = reference_projections(alpha, g, trunc)?;
        let moments = photon_moments_closed(alpha, g)?;
        // The vanishing level and Husimi zero run off to infinity at unit
        // gain (and the zero needs a nonzero amplitude); the CSV says so
        // rather than dropping the row.
        let (n0, qz) = if g == 1.0 {
            (f64::INFINITY, None)
        } else {
            let n0 = vanishing_coefficient_index(g)?;
            match q_zero_location(alpha, g) {
                Ok(z) => (n0, Some(z)),
                Err(parampl::Error::InvalidAmplitude(_)) => (n0, None),
                Err(e) => return Err(e.into()),
            }
        };
        let (qz_re, qz_im) = match qz {
            Some(z) => (z.re, z.im),
            None => (f64::INFINITY, f64::INFINITY),
        };
        doc.row(&[
            float(g),
            float(p_success),
            float(proj.coherent),
            float(proj.photon_added),
            float(proj.displaced_number),
            float(moments.mean_n),
            float(moments.variance),
            float(n0),
            float(qz_re),
            float(qz_im),
        ]);
    }
    emit(&doc, out_path.as_ref())
}

fn cmd_qgrid(args: QgridArgs) -> Result<(), CliError> {
    let file = load_config(&args.common)?;
    let alpha = resolve_alpha(&args.common, &file, C64::new(2.0, 0.0))?;
    let gains = match args.gain.or(cfg_f64(&file, "gain")?) {
        Some(g) => vec![validate_gain(g)?],
        None => PANEL_GAINS.to_vec(),
    };
    let trunc = resolve_trunc(
        &args.common,
        &file,
        Truncation::for_mean_photons(alpha.norm_sqr() + 2.0),
    )?;
    let out_path = resolve_out(&args.common, &file);
    let spec = GridSpec::default_for(alpha);

    let mut doc = CsvDoc::new("qgrid");
    echo_alpha(&mut doc, alpha);
    doc.comment(
        "gains",
        gains
            .iter()
            .map(|g| float(*g))
            .collect::<Vec<_>>()
            .join(","),
    );
    doc.comment("grid-half-width", float(spec.x_max));
    doc.comment("grid-nodes-per-axis", spec.nx);
    echo_trunc(&mut doc, trunc);
    doc.header(&["gain", "x", "y", "q"]);
    for &g in &gains {
        let psi = closed_output(alpha, g, trunc)?.psi;
        let grid = q_function(&psi, &spec)?;
        let xs = spec.xs();
        let ys = spec.ys();
        for (ix, x) in xs.iter().enumerate() {
            for (iy, y) in ys.iter().enumerate() {
                doc.row(&[float(g), float(*x), float(*y), float(grid.values[(ix, iy)])]);
            }
        }
    }
    emit(&doc, out_path.as_ref())
}

fn cmd_fidelity(args: FidelityArgs) -> Result<(), CliError> {
    let file = load_config(&args.common)?;
    let alpha = resolve_alpha(&args.common, &file, C64::new(2.0, 0.0))?;
    let gain = match args.gain.or(cfg_f64(&file, "gain")?) {
        Some(g) => validate_gain(g)?,
        None => FIDELITY_GAIN,
    };
    let trunc = resolve_trunc(&args.common, &file, pipeline_truncation(alpha, gain, 1))?;
    let out_path = resolve_out(&args.common, &file);

    let overlaps = outcome_overlaps(alpha, gain, trunc)?;

    let mut doc = CsvDoc::new("fidelity");
    echo_alpha(&mut doc, alpha);
    doc.comment("gain", float(gain));
    doc.comment("dark-steps", DARK_STEPS);
    doc.comment("dark-max", float(DARK_MAX));
    doc.comment(
        "loss-values",
        LOSS_PANELS
            .iter()
            .map(|l| float(*l))
            .collect::<Vec<_>>()
            .join(","),
    );
    echo_trunc(&mut doc, trunc);
    doc.header(&["dark", "loss", "f_lower", "f_full"]);
    for &loss in &LOSS_PANELS {
        for i in 0..DARK_STEPS {
            let dark = DARK_MAX * i as f64 / (DARK_STEPS - 1) as f64;
            let model = ErrorModel::new(dark, loss)?;
            doc.row(&[
                float(dark),
                float(loss),
                float(fidelity_lower_bound_with(&overlaps, &model)),
                float(fidelity_full_with(&overlaps, &model)),
            ]);
        }
    }
    emit(&doc, out_path.as_ref())
}

fn cmd_verify() -> Result<(), CliError> {
    let results = run_acceptance_checks();
    let mut failed = 0usize;
    for r in &results {
        if r.passed {
            println!("PASS {} - {}", r.name, r.detail);
        } else {
            failed += 1;
            println!("FAIL {} - {}", r.name, r.detail);
        }
    }
    println!(
        "{} of {} checks passed",
        results.len() - failed,
        results.len()
    );
    if failed > 0 {
        return Err(CliError::ChecksFailed(failed));
    }
    Ok(())
}
