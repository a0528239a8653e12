//! `selfaffine` command-line interface.
//!
//! Exit status: 0 on success, 1 on a usage error (bad flags or parameter
//! values), 2 on a data error (unreadable input, estimator failure).

use std::ffi::OsString;
use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use selfaffine_core::analysis::{analyze_returns_with, classify_source, AnalysisConfig};
use selfaffine_core::montecarlo::{power_function_with, DEFAULT_REPS};
use selfaffine_core::rng::substream_seed;
use selfaffine_core::simulate::{Generator, DEFAULT_TRUNCATION};
use selfaffine_core::{Method, Model, OrderCriterion, RngStream, SimulationSpec};

use crate::cache::niid_tables;
use crate::io::{read_series_file, write_returns, IoError};
use crate::parallel::Parallel;
use crate::report;
use crate::selftest;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "selfaffine",
    version,
    about = "Hurst exponent estimation and Monte Carlo tests for return series"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Simulate a returns series and write it as `t,value` CSV.
    Simulate {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 2000)]
        len: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run one estimator on a CSV series.
    Estimate {
        #[arg(long)]
        method: Method,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Critical values of the null of NIID returns.
    Critvals {
        #[arg(long, value_delimiter = ',', default_value = "rra,fa1,fa2,fa3")]
        methods: Vec<Method>,
        /// One or more series lengths.
        #[arg(long, value_delimiter = ',', required = true)]
        len: Vec<usize>,
        #[arg(long, default_value_t = DEFAULT_REPS)]
        reps: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, value_delimiter = ',', default_value = "0.10,0.05,0.01")]
        levels: Vec<f64>,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Rejection rates of H0: H = 0.5 under an alternative model.
    Power {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, value_delimiter = ',', default_value = "rra,fa1,fa2,fa3")]
        methods: Vec<Method>,
        #[arg(long, default_value_t = 2000)]
        len: usize,
        #[arg(long, default_value_t = DEFAULT_REPS)]
        reps: usize,
        /// Replications for the NIID critical values; defaults to `--reps`.
        #[arg(long)]
        null_reps: Option<usize>,
        /// Seed of the NIID critical values. The alternative uses a stream
        /// derived from it.
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, value_delimiter = ',', default_value = "0.05")]
        levels: Vec<f64>,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Full testing battery on a price (or returns) series.
    Analyze {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 1000)]
        reps: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, value_delimiter = ',', default_value = "0.10,0.05,0.01")]
        levels: Vec<f64>,
        #[arg(long, default_value_t = 10)]
        max_lag: usize,
        #[arg(long, value_enum, default_value_t = CriterionArg::Aic)]
        criterion: CriterionArg,
        /// Series name used in the report; defaults to the input file stem.
        #[arg(long)]
        id: Option<String>,
        /// Write report.csv, table.csv and summary.csv here.
        #[arg(long)]
        out_dir: Option<PathBuf>,
        /// Also write report.json to `--out-dir`.
        #[arg(long, requires = "out_dir")]
        json: bool,
        #[arg(long, default_value_t = 0)]
        threads: usize,
    },
    /// Quick internal consistency checks.
    Selftest {
        #[arg(long, default_value_t = 0)]
        threads: usize,
    },
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Directory of cached NIID critical-value tables.
    #[arg(long)]
    cache_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModelArg {
    Niid,
    Arfima,
    Lstable,
    StudentT,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CriterionArg {
    Aic,
    Bic,
}

#[derive(Debug, Args)]
struct ModelArgs {
    #[arg(long, value_enum, default_value_t = ModelArg::Niid)]
    model: ModelArg,
    /// Sets `d = H - 0.5` for arfima and `alpha = 1/H` for lstable.
    #[arg(long)]
    hurst: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    d: Option<f64>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    beta: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    mu: f64,
    #[arg(long, default_value_t = 1.0)]
    sigma: f64,
    #[arg(long)]
    df: Option<u32>,
    #[arg(long, default_value_t = DEFAULT_TRUNCATION)]
    truncation: usize,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Data(String),
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<selfaffine_core::Error> for CliError {
    fn from(e: selfaffine_core::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

fn usage(e: impl std::fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

impl ModelArgs {
    fn build(&self) -> Result<Model, CliError> {
        let need = |v: Option<f64>, what: &str| {
            v.ok_or_else(|| usage(format!("this model needs --hurst or --{what}")))
        };
        Ok(match self.model {
            ModelArg::Niid => Model::Niid,
            ModelArg::Arfima => Model::Arfima {
                d: need(self.d.or(self.hurst.map(|h| h - 0.5)), "d")?,
            },
            ModelArg::Lstable => Model::LStable {
                alpha: need(self.alpha.or(self.hurst.map(|h| 1.0 / h)), "alpha")?,
                beta: self.beta,
                mu: self.mu,
                sigma: self.sigma,
            },
            ModelArg::StudentT => Model::StudentT {
                df: self
                    .df
                    .ok_or_else(|| usage("--model student-t needs --df"))?,
            },
        })
    }

    /// A validated specification; invalid parameters are usage errors.
    fn spec(&self, len: usize, seed: u64) -> Result<SimulationSpec, CliError> {
        let mut spec = SimulationSpec::new(self.build()?, len, seed);
        spec.truncation = self.truncation;
        Generator::new(&spec).map_err(usage)?;
        Ok(spec)
    }
}

fn executor(threads: usize) -> Result<Parallel, CliError> {
    Parallel::new(threads).map_err(usage)
}

fn check_levels(levels: &[f64]) -> Result<(), CliError> {
    if levels.iter().any(|l| !(*l > 0.0 && *l < 1.0)) {
        return Err(usage("levels must lie strictly between 0 and 1"));
    }
    Ok(())
}

fn check_reps(reps: usize) -> Result<(), CliError> {
    if reps < selfaffine_core::montecarlo::MIN_CUTOFF_COUNT {
        return Err(usage(format!(
            "critical values need at least {} replications",
            selfaffine_core::montecarlo::MIN_CUTOFF_COUNT
        )));
    }
    Ok(())
}

fn sink<'a>(
    path: &Option<PathBuf>,
    stdout: &'a mut dyn Write,
) -> Result<Box<dyn Write + 'a>, CliError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| CliError::Data(format!("{}: {e}", p.display())))?,
        )),
        None => Box::new(stdout),
    })
}

/// Parses `argv` (program name first) and runs the command.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_cli_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_cli_with<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(cli.command, stdout, stderr) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Data(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_DATA
        }
    }
}

fn dispatch(
    command: Command,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, CliError> {
    match command {
        Command::Simulate {
            model,
            len,
            seed,
            output,
        } => {
            let spec = model.spec(len, seed)?;
            let series = Generator::new(&spec)?.generate(&mut RngStream::new(seed))?;
            write_returns(sink(&output, stdout)?, &series)?;
        }
        Command::Estimate {
            method,
            input,
            output,
        } => {
            let r = read_series_file(&input)?.returns();
            let out = method.run(&r)?;
            let mut w = csv::Writer::from_writer(sink(&output, stdout)?);
            w.write_record(["method", "h_or_d", "intercept", "n_points"])
                .map_err(IoError::from)?;
            w.write_record([
                method.name().to_string(),
                out.value.to_string(),
                out.intercept.map_or(String::new(), |v| v.to_string()),
                out.n_points.to_string(),
            ])
            .map_err(IoError::from)?;
            w.flush()?;
        }
        Command::Critvals {
            methods,
            len,
            reps,
            seed,
            levels,
            run,
            output,
        } => {
            check_levels(&levels)?;
            check_reps(reps)?;
            let exec = executor(run.threads)?;
            let mut tables = Vec::new();
            for &t in &len {
                tables.extend(niid_tables(
                    &exec,
                    &methods,
                    t,
                    reps,
                    seed,
                    &levels,
                    run.cache_dir.as_deref(),
                )?);
            }
            report::write_critvals_csv(sink(&output, stdout)?, &tables)?;
        }
        Command::Power {
            model,
            methods,
            len,
            reps,
            null_reps,
            seed,
            levels,
            run,
            output,
        } => {
            check_levels(&levels)?;
            let null_reps = null_reps.unwrap_or(reps);
            check_reps(null_reps)?;
            if reps == 0 {
                return Err(usage("--reps must be at least 1"));
            }
            let alt_seed = substream_seed(seed, 1);
            let alt = model.spec(len, alt_seed)?;
            let exec = executor(run.threads)?;
            let tables = niid_tables(
                &exec,
                &methods,
                len,
                null_reps,
                seed,
                &levels,
                run.cache_dir.as_deref(),
            )?;
            let mut results = Vec::new();
            for table in &tables {
                for &level in &levels {
                    results.push(power_function_with(
                        &exec,
                        &alt,
                        table.method,
                        table,
                        level,
                        reps,
                        alt_seed,
                    )?);
                }
            }
            report::write_power_csv(sink(&output, stdout)?, &results)?;
        }
        Command::Analyze {
            input,
            reps,
            seed,
            levels,
            max_lag,
            criterion,
            id,
            out_dir,
            json,
            threads,
        } => {
            check_levels(&levels)?;
            check_reps(reps)?;
            let returns = read_series_file(&input)?.returns();
            let config = AnalysisConfig {
                series_id: id.unwrap_or_else(|| file_stem(&input)),
                reps,
                seed,
                levels,
                max_lag,
                criterion: match criterion {
                    CriterionArg::Aic => OrderCriterion::Aic,
                    CriterionArg::Bic => OrderCriterion::Bic,
                },
            };
            let exec = executor(threads)?;
            let rep = analyze_returns_with(&exec, &returns, &config)?;
            let class = classify_source(&rep);
            report::write_report_csv(&mut *stdout, &rep)?;
            match &class {
                Ok(c) => writeln!(stdout, "{}", report::classification_line(c))?,
                Err(e) => writeln!(stdout, "classification: unavailable ({e})")?,
            }
            if let Some(dir) = out_dir {
                fs::create_dir_all(&dir)?;
                report::write_report_csv(File::create(dir.join("report.csv"))?, &rep)?;
                report::write_table_csv(File::create(dir.join("table.csv"))?, &rep)?;
                report::write_summary_csv(
                    File::create(dir.join("summary.csv"))?,
                    &rep,
                    class.as_ref().ok(),
                )?;
                if json {
                    let value = report::report_json(&rep, class.as_ref().ok());
                    fs::write(dir.join("report.json"), format!("{value:#}\n"))?;
                }
            }
        }
        Command::Selftest { threads } => {
            let exec = executor(threads)?;
            let ok = selftest::run(&exec, stdout)?;
            if !ok {
                writeln!(stderr, "error: self-test failed")?;
                return Ok(EXIT_DATA);
            }
        }
    }
    Ok(EXIT_OK)
}

fn file_stem(path: &Path) -> String {
    path.file_stem().map_or_else(
        || "series".to_string(),
        |s| s.to_string_lossy().into_owned(),
    )
}
