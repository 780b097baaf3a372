//! `polydescent` command-line front end.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 numerical non-convergence.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use polydescent::verify::{run_suite, SuiteConfig};
use polydescent::{
    find_roots, newton_classical, newton_descent, solve_all_roots, Polynomial, SolveStatus,
    SolverConfig, ThetaMode,
};
use thiserror::Error;

pub mod basin;
pub mod bench;
pub mod input;
pub mod trace;

pub use basin::{BasinImage, BasinPixel, Region};
pub use bench::{BenchRow, BenchTable, Family};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NONCONVERGENCE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Classical Newton, undefined at critical points.
    Newton,
    /// Descent-Newton with backtracking; monotone in |p|.
    Descent,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Newton => "newton",
            Method::Descent => "descent",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ThetaArg {
    /// Best of the four table angles 0, pi/k, pi/2k, 3pi/2k.
    #[value(alias = "table")]
    Paper,
    /// Continuous minimizer of the leading term.
    Optimal,
}

#[derive(Debug, Parser)]
#[command(
    name = "polydescent",
    version,
    about = "Complex polynomial roots by descent on |p(z)|^2"
)]
pub struct Cli {
    /// Relative root tolerance: stop once |p(z)| <= tol * max|coeff|.
    #[arg(long, global = true, default_value_t = 1e-12)]
    pub tol: f64,

    #[arg(long, global = true, default_value_t = 500)]
    pub max_iters: usize,

    #[arg(long, global = true, value_enum, default_value_t = ThetaArg::Paper)]
    pub theta_mode: ThetaArg,

    /// Seed for every random choice (random bench family, verify trials).
    #[arg(long, global = true, default_value_t = 0)]
    pub seed_rng: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct PolyInput {
    /// Inline coefficients, ascending: "re im, re im, ..."
    #[arg(long, allow_hyphen_values = true)]
    pub poly: Option<String>,

    /// Coefficient file: one "re im" per line, ascending, '#' comments.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one solver from one seed and print its JSON-lines trace.
    Solve {
        #[command(flatten)]
        input: PolyInput,
        #[arg(long, allow_hyphen_values = true, default_value = "0 0")]
        seed: String,
        #[arg(long, value_enum, default_value_t = Method::Descent)]
        method: Method,
        /// Write the trace here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Find all roots and report residuals.
    Roots {
        #[command(flatten)]
        input: PolyInput,
    },
    /// Render basins of attraction to a binary PPM.
    Basin {
        #[command(flatten)]
        input: PolyInput,
        #[arg(long, allow_hyphen_values = true, default_value = "0 0")]
        center: String,
        #[arg(long, default_value_t = 4.0)]
        width: f64,
        #[arg(long, default_value_t = 4.0)]
        height: f64,
        #[arg(long, default_value_t = 200)]
        px_w: usize,
        #[arg(long, default_value_t = 200)]
        px_h: usize,
        #[arg(long, value_enum, default_value_t = Method::Descent)]
        method: Method,
        /// Iteration count rendered darkest; defaults to --max-iters.
        #[arg(long)]
        shade_cap: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare both methods over a grid of seeds.
    Bench {
        #[arg(long, value_enum, default_value_t = Family::Unity)]
        family: Family,
        /// Degree for the unity and random families.
        #[arg(long, default_value_t = 3)]
        degree: usize,
        /// Seeds per side of the square grid.
        #[arg(long, default_value_t = 21)]
        grid: usize,
        #[arg(long, allow_hyphen_values = true, default_value = "0 0")]
        center: String,
        /// Side length of the seed square.
        #[arg(long, default_value_t = 4.0)]
        size: f64,
    },
    /// Run the randomized identity and descent checks.
    Verify {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Input(#[from] input::InputError),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("{0}")]
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Numeric(_) => EXIT_NONCONVERGENCE,
            _ => EXIT_USAGE,
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

impl Cli {
    pub fn solver_config(&self) -> Result<SolverConfig, CliError> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(CliError::Usage(format!(
                "--tol must be positive, got {}",
                self.tol
            )));
        }
        Ok(SolverConfig {
            root_tol: self.tol,
            max_iters: self.max_iters,
            theta_mode: match self.theta_mode {
                ThetaArg::Paper => ThetaMode::Table,
                ThetaArg::Optimal => ThetaMode::Optimal,
            },
            ..SolverConfig::default()
        })
    }
}

fn load(input: &PolyInput) -> Result<Polynomial, CliError> {
    let p = match (&input.poly, &input.file) {
        (Some(text), _) => input::parse_inline(text)?,
        (None, Some(path)) => {
            let text = fs::read_to_string(path).map_err(io_err(path))?;
            input::parse_coefficient_file(&text, &path.display().to_string())?
        }
        (None, None) => {
            return Err(CliError::Usage(
                "one of --poly or --file is required".into(),
            ))
        }
    };
    if p.degree() == 0 {
        return Err(CliError::Usage("polynomial must be nonconstant".into()));
    }
    Ok(p)
}

fn fmt_c(z: Complex64) -> String {
    format!("{:+.17e} {:+.17e}", z.re, z.im)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let cfg = cli.solver_config()?;
    match &cli.command {
        Command::Solve {
            input,
            seed,
            method,
            out: out_path,
        } => {
            let p = load(input)?;
            let seed = input::parse_pair(seed, "--seed")?;
            let res = match method {
                Method::Newton => newton_classical(&p, seed, &cfg),
                Method::Descent => newton_descent(&p, seed, &cfg),
            }
            .map_err(|e| CliError::Usage(e.to_string()))?;
            match out_path {
                Some(path) => {
                    let mut buf = Vec::new();
                    trace::write_trace(&mut buf, &res.trace).map_err(io_err(path))?;
                    fs::write(path, buf).map_err(io_err(path))?;
                }
                None => {
                    trace::write_trace(out, &res.trace).map_err(io_err(Path::new("<stdout>")))?
                }
            }
            let _ = writeln!(
                err,
                "status: {}  iterations: {}  last: {}  |p|: {:e}",
                res.status.as_str(),
                res.trace.iterations(),
                fmt_c(res.last),
                p.eval(res.last).norm()
            );
            Ok(if res.status == SolveStatus::Converged {
                EXIT_OK
            } else {
                EXIT_NONCONVERGENCE
            })
        }
        Command::Roots { input } => {
            let p = load(input)?;
            let (found, report) =
                find_roots(&p, &cfg).map_err(|e| CliError::Numeric(e.to_string()))?;
            let w = |e| CliError::Io {
                path: "<stdout>".into(),
                source: e,
            };
            writeln!(out, "degree: {}", p.degree()).map_err(w)?;
            for (i, (r, residual)) in found.iter().zip(&report.residuals).enumerate() {
                writeln!(
                    out,
                    "root {i}: {}  |p| = {:.3e}  status: {}",
                    fmt_c(r.value),
                    residual,
                    r.status.as_str()
                )
                .map_err(w)?;
            }
            writeln!(out, "max residual: {:.3e}", report.max_residual()).map_err(w)?;
            writeln!(
                out,
                "reconstruction error: {:.3e}",
                report.reconstruction_error
            )
            .map_err(w)?;
            let all = found.iter().all(|r| r.status == SolveStatus::Converged);
            Ok(if all { EXIT_OK } else { EXIT_NONCONVERGENCE })
        }
        Command::Basin {
            input,
            center,
            width,
            height,
            px_w,
            px_h,
            method,
            shade_cap,
            out: out_path,
        } => {
            let p = load(input)?;
            let region = Region {
                center: input::parse_pair(center, "--center")?,
                width: *width,
                height: *height,
                px_w: *px_w,
                px_h: *px_h,
            };
            region.validate().map_err(CliError::Usage)?;
            let roots: Vec<Complex64> = solve_all_roots(&p, &cfg, &[])
                .map_err(|e| CliError::Numeric(e.to_string()))?
                .iter()
                .map(|r| r.value)
                .collect();
            let image = basin::render(
                &p,
                &roots,
                &region,
                *method,
                &cfg,
                shade_cap.unwrap_or(cfg.max_iters),
            );
            fs::write(out_path, image.to_ppm()).map_err(io_err(out_path))?;
            let (counts, failed) = image.class_counts();
            let _ = writeln!(
                err,
                "wrote {} ({}x{}); pixels per root: {:?}; failed: {}",
                out_path.display(),
                region.px_w,
                region.px_h,
                counts,
                failed
            );
            Ok(EXIT_OK)
        }
        Command::Bench {
            family,
            degree,
            grid,
            center,
            size,
        } => {
            if *degree == 0 || *grid == 0 || !size.is_finite() || *size <= 0.0 {
                return Err(CliError::Usage(
                    "--degree, --grid and --size must be positive".into(),
                ));
            }
            let region = Region {
                center: input::parse_pair(center, "--center")?,
                width: *size,
                height: *size,
                px_w: *grid,
                px_h: *grid,
            };
            let p = family.polynomial(*degree, cli.seed_rng);
            let table = bench::run_bench(&p, family.label(*degree), &region, &cfg);
            write!(out, "{table}").map_err(io_err(Path::new("<stdout>")))?;
            Ok(EXIT_OK)
        }
        Command::Verify { trials } => {
            let report = run_suite(&SuiteConfig {
                trials: *trials,
                seed: cli.seed_rng,
                theta_mode: cfg.theta_mode,
            });
            for check in &report.checks {
                writeln!(
                    out,
                    "{} {:<45} trials={} failures={} worst={:.3e} tol={:e}",
                    if check.passed() { "PASS" } else { "FAIL" },
                    check.name,
                    check.trials,
                    check.failures,
                    check.worst,
                    check.tolerance
                )
                .map_err(io_err(Path::new("<stdout>")))?;
            }
            match report.first_failure() {
                None => Ok(EXIT_OK),
                Some(check) => Err(CliError::Numeric(format!(
                    "{} failed: {}",
                    check.name,
                    check.first_failure.as_deref().unwrap_or("")
                ))),
            }
        }
    }
}
