//! `adialab` — batch experiment runner.
//!
//! One subcommand per geometry plus `suite` for the default battery. Exit
//! codes: 0 all checks pass, 1 a numerical check failed, 2 configuration
//! error, 3 a convergence failure occurred (partial results still written).

use std::path::PathBuf;
use std::process::ExitCode;

use adialab::cli::{
    emit_csv, emit_json, emit_report, run_experiment, run_suite, ConfigError, ExperimentConfig,
    Geometry, Mode, NamedIrrational, RunOutput,
};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "adialab",
    about = "Adiabatic-limit spectral laboratory: eigenvalue counts, heat traces, \
             transverse symbol traces, and noncommutative Weyl checks",
    version
)]
struct CliArgs {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Linear foliation on the flat 2-torus (codimension 1)
    Torus(GeomArgs),
    /// Invariant flow on the Heisenberg manifold (codimension 2)
    Heisenberg(GeomArgs),
    /// Invariant flow on a Sol-manifold (codimension 2)
    Sol(GeomArgs),
    /// Semiclassical reference models on circles
    WeylRef(GeomArgs),
    /// Run the full default experiment battery
    Suite(OutputArgs),
}

#[derive(Args, Clone)]
struct GeomArgs {
    /// counting | heat | symbol | compare | mismatch (default depends on geometry)
    #[arg(long, value_enum)]
    mode: Option<Mode>,

    /// Slope of the foliation direction (treated as irrational unless --rational is given)
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,

    /// Use the named irrational slope sqrt(2)
    #[arg(long = "alpha-sqrt2", conflicts_with_all = ["alpha", "alpha_golden", "rational"])]
    alpha_sqrt2: bool,

    /// Use the named irrational slope (1+sqrt(5))/2
    #[arg(long = "alpha-golden", conflicts_with_all = ["alpha", "rational"])]
    alpha_golden: bool,

    /// Declared rational slope p/q in lowest terms, e.g. --rational 1/2
    #[arg(long, value_parser = parse_rational)]
    rational: Option<Rational>,

    /// Adiabatic parameters (or semiclassical h values), comma separated
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    eps: Vec<f64>,

    /// Heat times, comma separated
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    t: Vec<f64>,

    /// Spectral thresholds, comma separated
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    lambda: Vec<f64>,

    /// Mathieu potential amplitude (sol)
    #[arg(long)]
    a: Option<f64>,

    /// Mathieu potential rate (sol)
    #[arg(long)]
    mu: Option<f64>,

    /// Sol gluing matrix a11,a12,a21,a22
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    matrix: Option<Vec<i64>>,

    /// Codimension cross-check (torus/weyl-ref: 1, heisenberg/sol: 2)
    #[arg(long)]
    q_codim: Option<u32>,

    /// Override every agreement-check tolerance
    #[arg(long)]
    tol: Option<f64>,

    /// JSON config file; explicit flags override file values
    #[arg(long)]
    config: Option<PathBuf>,

    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Clone)]
struct OutputArgs {
    /// Write the data table here
    #[arg(long = "out-csv")]
    out_csv: Option<PathBuf>,

    /// Write the JSON summary here
    #[arg(long = "out-json")]
    out_json: Option<PathBuf>,

    /// Write the markdown report here
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Clone, Debug)]
struct Rational(i64, u64);

fn parse_rational(s: &str) -> Result<Rational, String> {
    let (p, q) = s
        .split_once('/')
        .ok_or_else(|| format!("expected p/q, got `{s}`"))?;
    let p: i64 = p.trim().parse().map_err(|e| format!("bad numerator: {e}"))?;
    let q: u64 = q.trim().parse().map_err(|e| format!("bad denominator: {e}"))?;
    Ok(Rational(p, q))
}

fn default_mode(geometry: Geometry) -> Mode {
    match geometry {
        Geometry::Torus | Geometry::Heisenberg | Geometry::WeylRef => Mode::Compare,
        Geometry::Sol => Mode::Counting,
    }
}

fn expected_codim(geometry: Geometry) -> u32 {
    match geometry {
        Geometry::Torus | Geometry::WeylRef => 1,
        Geometry::Heisenberg | Geometry::Sol => 2,
    }
}

fn build_config(geometry: Geometry, args: &GeomArgs) -> Result<ExperimentConfig, ConfigError> {
    let mut config = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| ConfigError(format!("cannot read {}: {e}", path.display())))?;
            let mut from_file: ExperimentConfig = serde_json::from_str(&text)
                .map_err(|e| ConfigError(format!("cannot parse {}: {e}", path.display())))?;
            from_file.geometry = geometry;
            from_file
        }
        None => ExperimentConfig::new(geometry, default_mode(geometry)),
    };
    if args.config.is_none() {
        config.mode = args.mode.unwrap_or_else(|| default_mode(geometry));
    } else if let Some(mode) = args.mode {
        config.mode = mode;
    }

    if let Some(alpha) = args.alpha {
        config.alpha = Some(alpha);
    }
    if args.alpha_sqrt2 {
        config.alpha_named = Some(NamedIrrational::Sqrt2);
    }
    if args.alpha_golden {
        config.alpha_named = Some(NamedIrrational::Golden);
    }
    if let Some(Rational(p, q)) = args.rational {
        config.rational = Some((p, q));
    }
    if let Some(m) = &args.matrix {
        if m.len() != 4 {
            return Err(ConfigError(format!(
                "matrix needs exactly 4 entries a11,a12,a21,a22, got {}",
                m.len()
            )));
        }
        config.matrix = Some([[m[0], m[1]], [m[2], m[3]]]);
    }
    if let Some(a) = args.a {
        config.a = a;
    }
    if let Some(mu) = args.mu {
        config.mu = mu;
    }
    if !args.eps.is_empty() {
        config.eps = args.eps.clone();
    }
    if !args.t.is_empty() {
        config.t = args.t.clone();
    }
    if !args.lambda.is_empty() {
        config.lambda = args.lambda.clone();
    }
    if let Some(tol) = args.tol {
        config.tol = Some(tol);
    }
    if let Some(q) = args.q_codim {
        let expected = expected_codim(geometry);
        if q != expected {
            return Err(ConfigError(format!(
                "q_codim = {q} does not match the {} codimension {expected}",
                geometry.as_str()
            )));
        }
    }
    if let Some(p) = &args.output.out_csv {
        config.out_csv = Some(p.display().to_string());
    }
    if let Some(p) = &args.output.out_json {
        config.out_json = Some(p.display().to_string());
    }
    if let Some(p) = &args.output.report {
        config.report = Some(p.display().to_string());
    }
    Ok(config)
}

fn write_outputs(
    echo: serde_json::Value,
    out: &RunOutput,
    csv_path: Option<&str>,
    json_path: Option<&str>,
    report_path: Option<&str>,
) -> std::io::Result<()> {
    if let Some(path) = csv_path {
        std::fs::write(path, emit_csv(&out.rows))?;
    }
    if let Some(path) = json_path {
        std::fs::write(path, emit_json(echo, &out.checks, &out.fits))?;
    }
    let report = emit_report(&out.checks, &out.fits);
    if let Some(path) = report_path {
        std::fs::write(path, &report)?;
    }
    print!("{report}");
    Ok(())
}

fn finish(
    echo: serde_json::Value,
    out: &RunOutput,
    csv: Option<&str>,
    json: Option<&str>,
    report: Option<&str>,
) -> ExitCode {
    if let Err(e) = write_outputs(echo, out, csv, json, report) {
        eprintln!("adialab: cannot write outputs: {e}");
        return ExitCode::from(2);
    }
    if !out.failures.is_empty() {
        for f in &out.failures {
            eprintln!("adialab: convergence failure in {f}");
        }
        return ExitCode::from(3);
    }
    if !out.all_pass() {
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}

fn run_geometry(geometry: Geometry, args: GeomArgs) -> ExitCode {
    let config = match build_config(geometry, &args) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("adialab: {e}");
            return ExitCode::from(2);
        }
    };
    let out = match run_experiment(&config) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("adialab: {e}");
            return ExitCode::from(2);
        }
    };
    let echo = serde_json::to_value(&config).expect("config serializes");
    finish(
        echo,
        &out,
        config.out_csv.as_deref(),
        config.out_json.as_deref(),
        config.report.as_deref(),
    )
}

fn run_suite_cmd(output: OutputArgs) -> ExitCode {
    let (configs, out) = run_suite();
    let echo = serde_json::to_value(&configs).expect("configs serialize");
    let csv = output.out_csv.as_ref().map(|p| p.display().to_string());
    let json = output.out_json.as_ref().map(|p| p.display().to_string());
    let report = output.report.as_ref().map(|p| p.display().to_string());
    finish(echo, &out, csv.as_deref(), json.as_deref(), report.as_deref())
}

fn main() -> ExitCode {
    let cli = CliArgs::parse();
    match cli.command {
        Command::Torus(args) => run_geometry(Geometry::Torus, args),
        Command::Heisenberg(args) => run_geometry(Geometry::Heisenberg, args),
        Command::Sol(args) => run_geometry(Geometry::Sol, args),
        Command::WeylRef(args) => run_geometry(Geometry::WeylRef, args),
        Command::Suite(output) => run_suite_cmd(output),
    }
}
