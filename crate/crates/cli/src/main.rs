mod angle;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mzi_core::sweep::{self, SweepSpec};
use mzi_core::verify::{self, RunConfig};
use mzi_core::{duality_report, path_weights, BeamSplitterAngle, BlochState, DetectorConfig};
use serde_json::json;

use angle::parse_angle;

/// Mach-Zehnder duality calculator.
#[derive(Parser)]
#[command(name = "mzi", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print V, D and the complementarity residual for one parameter point as JSON.
    Report {
        #[arg(long, allow_negative_numbers = true)]
        sx: f64,
        #[arg(long, allow_negative_numbers = true)]
        sy: f64,
        #[arg(long, allow_negative_numbers = true)]
        sz: f64,
        /// Detector overlap |⟨r|U|r⟩| in [0, 1].
        #[arg(long = "A")]
        a: f64,
        #[arg(long, default_value = "0", value_parser = parse_angle, allow_hyphen_values = true)]
        gamma: f64,
        #[arg(long, default_value = "0", value_parser = parse_angle, allow_hyphen_values = true)]
        delta: f64,
        #[arg(long, value_parser = parse_angle)]
        beta: f64,
    },
    /// Sweep S_x or β and write a CSV.
    Sweep(SweepArgs),
    /// Write the eight figure CSVs (fig2a..fig2d, fig3a..fig3d).
    Figures {
        #[arg(long, default_value = ".")]
        output_dir: PathBuf,
        /// Phase grid of the brute-force visibility scan.
        #[arg(long, default_value_t = sweep::SWEEP_SCAN_GRID)]
        scan_grid: usize,
    },
    /// Run every oracle and invariant suite; print a JSON summary.
    Verify {
        /// JSON file with `seed`, `draws` and `tolerances`; flags override it.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        draws: Option<usize>,
        /// Tolerance override `suite=value`; repeatable.
        #[arg(long = "tol", value_parser = parse_tolerance)]
        tolerances: Vec<(String, f64)>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Param {
    Sx,
    Beta,
}

#[derive(clap::Args)]
struct SweepArgs {
    #[arg(long, value_enum)]
    param: Param,
    /// Purity λ = |S|².
    #[arg(long, default_value_t = 1.0)]
    lambda: f64,
    /// Fixed S_x when sweeping β.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    sx: f64,
    /// Fixed β when sweeping S_x.
    #[arg(long, default_value = "pi/2", value_parser = parse_angle)]
    beta: f64,
    /// Direction of the transverse (S_y, S_z) component, measured from S_z.
    #[arg(long, default_value = "0", value_parser = parse_angle, allow_hyphen_values = true)]
    theta: f64,
    #[arg(long = "A")]
    a: f64,
    #[arg(long, default_value = "0", value_parser = parse_angle, allow_hyphen_values = true)]
    gamma: f64,
    #[arg(long, default_value = "0", value_parser = parse_angle, allow_hyphen_values = true)]
    delta: f64,
    /// Range start; defaults to −√λ (S_x) or 0 (β).
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
    from: Option<f64>,
    /// Range end; defaults to √λ (S_x) or π (β).
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
    to: Option<f64>,
    #[arg(long, default_value_t = 241)]
    steps: usize,
    #[arg(long, default_value_t = sweep::SWEEP_SCAN_GRID)]
    scan_grid: usize,
    /// Output file; standard output when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn parse_tolerance(s: &str) -> Result<(String, f64), String> {
    let (name, value) = s.split_once('=').ok_or_else(|| format!("expected NAME=VALUE, got `{s}`"))?;
    let value = value.parse::<f64>().map_err(|_| format!("invalid tolerance value `{value}`"))?;
    Ok((name.to_string(), value))
}

/// Failure modes mapped onto exit codes.
enum Failure {
    Input(String),
    Verification,
}

impl From<mzi_core::Error> for Failure {
    fn from(e: mzi_core::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))
}

fn report(sx: f64, sy: f64, sz: f64, a: f64, gamma: f64, delta: f64, beta: f64) -> Result<(), Failure> {
    let state = BlochState::new(sx, sy, sz)?;
    let det = DetectorConfig::new(a, gamma, delta)?;
    let beta = BeamSplitterAngle::new(beta)?;
    let r = duality_report(&state, &det, beta)?;
    let w = path_weights(sx, beta)?;
    let out = json!({
        "V": r.visibility,
        "D": r.distinguishability,
        "V2_plus_D2": r.complementarity_sum(),
        "residual": r.residual,
        "omega_a": w.omega_a(),
        "omega_b": w.omega_b(),
    });
    println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
    Ok(())
}

fn run_sweep(args: SweepArgs) -> Result<(), Failure> {
    let mut spec = match args.param {
        Param::Sx => SweepSpec::over_sx(args.lambda, args.beta, args.a, args.steps),
        Param::Beta => SweepSpec::over_beta(args.lambda, args.sx, args.a, args.steps),
    };
    spec.transverse_angle = args.theta;
    spec.gamma = args.gamma;
    spec.delta = args.delta;
    spec.scan_grid = args.scan_grid;
    spec.range = (args.from.unwrap_or(spec.range.0), args.to.unwrap_or(spec.range.1));

    let result = sweep::run_sweep(&spec)?;
    for w in &result.warnings {
        eprintln!("warning: {w}");
    }
    let csv = sweep::sweep_csv(&result.rows);
    match args.output {
        Some(path) => write_file(&path, &csv),
        None => {
            print!("{csv}");
            Ok(())
        }
    }
}

fn figures(output_dir: &Path, scan_grid: usize) -> Result<(), Failure> {
    fs::create_dir_all(output_dir)
        .map_err(|e| Failure::Input(format!("cannot create {}: {e}", output_dir.display())))?;
    for mut spec in sweep::figure_specs() {
        for (_, curve) in &mut spec.curves {
            curve.scan_grid = scan_grid;
        }
        let data = sweep::compute_figure(&spec)?;
        for w in data.warnings() {
            eprintln!("warning: {w}");
        }
        write_file(&output_dir.join(format!("{}.csv", data.name)), &data.csv())?;
    }
    Ok(())
}

fn run_verify(
    config: Option<PathBuf>,
    seed: Option<u64>,
    draws: Option<usize>,
    tolerances: Vec<(String, f64)>,
) -> Result<(), Failure> {
    let mut cfg = match config {
        Some(path) => {
            let text = fs::read_to_string(&path)
                .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
            serde_json::from_str::<RunConfig>(&text)
                .map_err(|e| Failure::Input(format!("invalid config {}: {e}", path.display())))?
        }
        None => RunConfig::default(),
    };
    if let Some(seed) = seed {
        cfg.seed = seed;
    }
    if let Some(draws) = draws {
        cfg.draws = draws;
    }
    cfg.tolerances.extend(tolerances);

    let summary = verify::run(&cfg)?;
    println!("{}", serde_json::to_string_pretty(&summary).expect("serializable"));
    if summary.passed() {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn main() -> ExitCode {
    let outcome = match Cli::parse().command {
        Command::Report { sx, sy, sz, a, gamma, delta, beta } => report(sx, sy, sz, a, gamma, delta, beta),
        Command::Sweep(args) => run_sweep(args),
        Command::Figures { output_dir, scan_grid } => figures(&output_dir, scan_grid),
        Command::Verify { config, seed, draws, tolerances } => run_verify(config, seed, draws, tolerances),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => {
            eprintln!("verification failed");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
