use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use jacobi_spectral::inverse::ScanGrid;
use jacobi_spectral::{BoundaryPerturbation, Execution};
use jacobi_spectral_cli::batch::run_batch;
use jacobi_spectral_cli::render::render;
use jacobi_spectral_cli::{execute, CliError, Command, OutputFormat, RunConfig, TheoremArg};

/// Spectral computations and uniqueness checks for finite Jacobi,
/// Schrödinger and Floquet matrices.
///
/// Exit status: 0 on success, 1 when a verification is violated, 2 on
/// usage or input errors.
#[derive(Parser)]
#[command(name = "jspec", version)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Subcommand)]
enum Sub {
    /// Characteristic polynomial (float, or rational with --exact).
    Charpoly,
    /// Eigenvalues of a Jacobi matrix, or of a Floquet matrix with --theta.
    Spectrum,
    /// Eigenvalues with multiplicities of a Floquet matrix.
    FloquetSpectrum,
    /// Check a uniqueness theorem on given or random instances.
    Verify,
    /// Recover the leading pair from two consecutive free eigenvalues.
    SolveAmb3,
    /// Grid-and-Newton search for leading pairs matching two eigenvalues.
    OracleScan,
    /// The 3x3 isospectral pair and their shared polynomial.
    Counterexample,
    /// Run newline-delimited JSON configs, one result line each.
    Batch {
        /// Input file; `-` reads standard input.
        input: PathBuf,
    },
    /// Run the single config given by --config.
    Run,
}

#[derive(Args)]
struct Opts {
    /// Matrix dimension.
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Diagonal entries, comma separated.
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    b: Option<Vec<f64>>,
    /// Off-diagonal entries (positive), comma separated.
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    a: Option<Vec<f64>>,
    /// Boundary perturbation `b,B` added to the first and last diagonal entries.
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    boundary: Option<Vec<f64>>,
    /// Floquet angle in turns.
    #[arg(long, global = true, allow_hyphen_values = true)]
    theta: Option<f64>,
    /// Reference Floquet angle in turns.
    #[arg(long, global = true, allow_hyphen_values = true)]
    phi: Option<f64>,
    /// 1-based eigenvalue index.
    #[arg(long, global = true)]
    k: Option<usize>,
    /// `λ_k,λ_{k+1}` for solve-amb3.
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    eigenvalues: Option<Vec<f64>>,
    #[arg(long, global = true, value_enum)]
    theorem: Option<TheoremArg>,
    /// Random instances for verify.
    #[arg(long, global = true)]
    trials: Option<usize>,
    /// Known first diagonal entry for `verify --theorem nzbc`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    boundary_value: Option<f64>,
    /// Oracle grid lower end.
    #[arg(long, global = true, allow_hyphen_values = true)]
    lo: Option<f64>,
    /// Oracle grid upper end.
    #[arg(long, global = true, allow_hyphen_values = true)]
    hi: Option<f64>,
    /// Oracle grid step.
    #[arg(long, global = true)]
    step: Option<f64>,
    /// Rational arithmetic for charpoly.
    #[arg(long, global = true)]
    exact: bool,
    /// Eigenvalue tolerance.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Tolerance for two eigenvalues to count as equal.
    #[arg(long, global = true)]
    tol_match: Option<f64>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Run everything on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,
    /// Digits after the decimal point in csv and table output.
    #[arg(long, global = true)]
    precision: Option<usize>,
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// JSON config file; flags given on the command line override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

fn read(path: &Path) -> Result<String, CliError> {
    let result = if path == Path::new("-") {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    };
    result.map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn pair(name: &str, v: Vec<f64>) -> Result<(f64, f64), CliError> {
    match v[..] {
        [x, y] => Ok((x, y)),
        _ => Err(CliError::usage(format!("--{name} takes exactly two values"))),
    }
}

fn merge(base: RunConfig, o: Opts) -> Result<RunConfig, CliError> {
    let mut c = base;
    c.n = o.n.or(c.n);
    c.b = o.b.or(c.b);
    c.a = o.a.or(c.a);
    if let Some(v) = o.boundary {
        let (l, r) = pair("boundary", v)?;
        c.boundary = Some(BoundaryPerturbation::new(l, r));
    }
    c.theta = o.theta.or(c.theta);
    c.phi = o.phi.or(c.phi);
    c.k = o.k.or(c.k);
    if let Some(v) = o.eigenvalues {
        c.eigenvalues = Some(pair("eigenvalues", v)?);
    }
    c.theorem = o.theorem.or(c.theorem);
    c.trials = o.trials.or(c.trials);
    c.boundary_value = o.boundary_value.or(c.boundary_value);
    if o.lo.is_some() || o.hi.is_some() || o.step.is_some() {
        let g = c.grid.unwrap_or_default();
        c.grid = Some(ScanGrid::new(
            o.lo.unwrap_or(g.lo),
            o.hi.unwrap_or(g.hi),
            o.step.unwrap_or(g.step),
        )?);
    }
    c.exact |= o.exact;
    c.tol = o.tol.unwrap_or(c.tol);
    c.tol_match = o.tol_match.unwrap_or(c.tol_match);
    c.seed = o.seed.unwrap_or(c.seed);
    if o.sequential {
        c.exec = Execution::Sequential;
    }
    c.format = o.format.unwrap_or(c.format);
    c.precision = o.precision.unwrap_or(c.precision);
    c.out = o.out.or(c.out);
    Ok(c)
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let base = match &cli.opts.config {
        Some(path) => Some(serde_json::from_str::<RunConfig>(&read(path)?)?),
        None => None,
    };
    let command = match &cli.command {
        Sub::Charpoly => Command::Charpoly,
        Sub::Spectrum => Command::Spectrum,
        Sub::FloquetSpectrum => Command::FloquetSpectrum,
        Sub::Verify => Command::Verify,
        Sub::SolveAmb3 => Command::SolveAmb3,
        Sub::OracleScan => Command::OracleScan,
        Sub::Counterexample => Command::Counterexample,
        Sub::Run => base
            .as_ref()
            .map(|c| c.command)
            .ok_or_else(|| CliError::usage("run needs --config"))?,
        Sub::Batch { input } => {
            let format = cli.opts.format.unwrap_or_default();
            if format != OutputFormat::Json {
                return Err(CliError::usage("batch output is always JSON lines"));
            }
            let exec = if cli.opts.sequential {
                Execution::Sequential
            } else {
                Execution::Parallel
            };
            let out = run_batch(&read(input)?, exec);
            emit(&out.to_text(), cli.opts.out.as_deref())?;
            return Ok(out.exit_code());
        }
    };
    let mut base = base.unwrap_or_else(|| RunConfig::new(command));
    base.command = command;
    let config = merge(base, cli.opts)?;
    let outcome = execute(&config)?;
    emit(
        &render(&outcome.document, config.format, config.precision),
        config.out.as_deref(),
    )?;
    Ok(outcome.exit_code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("jspec: {e}");
            ExitCode::from(2)
        }
    }
}
