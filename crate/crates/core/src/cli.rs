//! Command-line front end: `eval`, `modulus`, `figures` and `verify`.
//!
//! Exit codes are 0 on success, 1 when a verification check fails and 2 for
//! usage, configuration, domain and I/O errors.

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::analysis::{self, VerificationReport, MIN_VERIFY_GRID};
use crate::error::Error;
use crate::format::sig15;
use crate::modulus::{
    delta_star, find_delta_star, modulus_grid, omega_g_table, uniform_grid, DEFAULT_DELTA_STAR_TOL,
};
use crate::real_fn::{build_f, build_g, build_h, NamedFn};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub const DEFAULT_GRID_N: usize = 20_001;
pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_SAMPLES: usize = 100_000;
pub const FIGURE_POINTS: usize = (1 << 12) + 1;
pub const AC_TRIALS: usize = 200;
pub const CANDIDATE_SAMPLES: usize = 1000;
pub const LIPSCHITZ_FUNCTIONS: usize = 10;
pub const LIPSCHITZ_GRID_N: usize = 2001;
pub const COVER_LEVELS: u32 = 12;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Library(#[from] Error),
    #[error("I/O error: {0}")]
    Io(#[from] io::Error),
}

/// Settings shared by the verification suite.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub grid_n: usize,
    pub delta_star_tol: f64,
    pub seed: u64,
    pub samples: usize,
    pub output_path: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            grid_n: DEFAULT_GRID_N,
            delta_star_tol: DEFAULT_DELTA_STAR_TOL,
            seed: DEFAULT_SEED,
            samples: DEFAULT_SAMPLES,
            output_path: PathBuf::from("verify_summary.csv"),
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.grid_n < MIN_VERIFY_GRID {
            return Err(CliError::Usage(format!(
                "--grid-n must be at least {MIN_VERIFY_GRID}, got {}",
                self.grid_n
            )));
        }
        if !(self.delta_star_tol > 0.0 && self.delta_star_tol <= 1e-6) {
            return Err(CliError::Usage(format!(
                "delta* tolerance must lie in (0, 1e-6], got {}",
                self.delta_star_tol
            )));
        }
        if self.samples == 0 {
            return Err(CliError::Usage("--samples must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "modcont",
    version,
    about = "Moduli of continuity of Cantor-type functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate f, g, h, f1, f2 or f3 at a point.
    Eval {
        name: String,
        #[arg(allow_negative_numbers = true)]
        x: f64,
    },
    /// Write the modulus of continuity as `delta,omega` CSV.
    Modulus {
        name: String,
        #[arg(long, default_value_t = DEFAULT_GRID_N)]
        grid_n: usize,
        /// Use the closed form of ω_g (only for `g`).
        #[arg(long)]
        closed_form: bool,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write fig1_f_g.csv, fig2_omega.csv and fig3_h.csv.
    Figures {
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
        #[arg(long, default_value_t = DEFAULT_GRID_N)]
        grid_n: usize,
    },
    /// Run every verification check and write a summary CSV.
    Verify {
        #[arg(long, default_value_t = DEFAULT_GRID_N)]
        grid_n: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, default_value = "verify_summary.csv")]
        summary: PathBuf,
        #[arg(long, default_value_t = DEFAULT_DELTA_STAR_TOL)]
        delta_star_tol: f64,
    },
}

/// Parses `args` (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            if code == 0 {
                let _ = write!(stdout, "{e}");
                return EXIT_OK;
            }
            let _ = write!(stderr, "{e}");
            return EXIT_USAGE;
        }
    };
    match dispatch(cli.command, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(command: Command, stdout: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Eval { name, x } => {
            let value = eval_named(parse_name(&name)?, x)?;
            writeln!(stdout, "{}", sig15(value))?;
            Ok(EXIT_OK)
        }
        Command::Modulus {
            name,
            grid_n,
            closed_form,
            out,
        } => {
            let name = parse_name(&name)?;
            if grid_n < MIN_VERIFY_GRID {
                return Err(CliError::Usage(format!(
                    "--grid-n must be at least {MIN_VERIFY_GRID}, got {grid_n}"
                )));
            }
            match out {
                Some(path) => {
                    let mut w = BufWriter::new(File::create(path)?);
                    write_modulus_csv(&mut w, name, grid_n, closed_form)?;
                    w.flush()?;
                }
                None => write_modulus_csv(stdout, name, grid_n, closed_form)?,
            }
            Ok(EXIT_OK)
        }
        Command::Figures { out_dir, grid_n } => {
            if grid_n < MIN_VERIFY_GRID {
                return Err(CliError::Usage(format!(
                    "--grid-n must be at least {MIN_VERIFY_GRID}, got {grid_n}"
                )));
            }
            write_figures(&out_dir, grid_n)?;
            writeln!(stdout, "wrote figure data to {}", out_dir.display())?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            grid_n,
            seed,
            samples,
            summary,
            delta_star_tol,
        } => {
            let config = RunConfig {
                grid_n,
                delta_star_tol,
                seed,
                samples,
                output_path: summary,
            };
            config.validate()?;
            cmd_verify(&config, stdout)
        }
    }
}

fn parse_name(name: &str) -> Result<NamedFn, CliError> {
    name.parse()
        .map_err(|e: Error| CliError::Usage(e.to_string()))
}

pub fn eval_named(name: NamedFn, x: f64) -> Result<f64, Error> {
    name.build().eval(x)
}

/// `delta,omega` rows for every grid δ of the named function.
pub fn write_modulus_csv(
    w: &mut dyn Write,
    name: NamedFn,
    grid_n: usize,
    closed_form: bool,
) -> Result<(), CliError> {
    let table = if closed_form {
        if name != NamedFn::G {
            return Err(CliError::Usage(format!(
                "--closed-form is only available for g, not {name}"
            )));
        }
        omega_g_table(grid_n)?
    } else {
        modulus_grid(&name.build(), grid_n)?
    };
    writeln!(w, "delta,omega")?;
    for (d, v) in table.deltas().iter().zip(table.values()) {
        writeln!(w, "{},{}", sig15(*d), sig15(*v))?;
    }
    Ok(())
}

pub fn write_figures(dir: &Path, grid_n: usize) -> Result<(), CliError> {
    fs::create_dir_all(dir)?;
    let (f, g, h) = (build_f(), build_g(), build_h());

    let mut w = BufWriter::new(File::create(dir.join("fig1_f_g.csv"))?);
    writeln!(w, "x,f,g")?;
    for x in uniform_grid(0.0, 7.0, FIGURE_POINTS) {
        writeln!(
            w,
            "{},{},{}",
            sig15(x),
            sig15(f.eval(x)?),
            sig15(g.eval(x)?)
        )?;
    }
    w.flush()?;

    let grid = modulus_grid(&g, grid_n)?;
    let closed = omega_g_table(grid_n)?;
    let mut w = BufWriter::new(File::create(dir.join("fig2_omega.csv"))?);
    writeln!(w, "delta,omega_closed,omega_grid")?;
    for ((d, c), v) in closed
        .deltas()
        .iter()
        .zip(closed.values())
        .zip(grid.values())
    {
        writeln!(w, "{},{},{}", sig15(*d), sig15(*c), sig15(*v))?;
    }
    w.flush()?;

    let mut w = BufWriter::new(File::create(dir.join("fig3_h.csv"))?);
    writeln!(w, "x,h")?;
    for x in uniform_grid(0.0, 2.0, FIGURE_POINTS) {
        writeln!(w, "{},{}", sig15(x), sig15(h.eval(x)?))?;
    }
    w.flush()?;
    Ok(())
}

/// Every check of the verification suite, in summary order.
pub fn run_verification(config: &RunConfig) -> Result<Vec<VerificationReport>, Error> {
    let mut reports = analysis::check_lemma_bounds(config.samples, config.seed)?;
    reports.push(analysis::verify_self_modulus(7, 5)?);
    let tf = modulus_grid(&build_f(), config.grid_n)?;
    let tg = modulus_grid(&build_g(), config.grid_n)?;
    reports.push(analysis::same_modulus_report(&tf, &tg, None));
    reports.push(analysis::closed_form_report(&tg));
    reports.extend(analysis::verify_candidate_maxima(CANDIDATE_SAMPLES)?);
    reports.push(analysis::verify_delta_star(config.delta_star_tol)?);
    reports.push(analysis::verify_substitution_pairs(
        config.samples,
        config.seed,
    ));
    reports.extend(analysis::verify_singular_covers(COVER_LEVELS)?);
    reports.push(analysis::verify_ac_profile(AC_TRIALS, config.seed)?);
    let h_grid = ((config.grid_n - 1) / 2 + 1).max(MIN_VERIFY_GRID);
    reports.push(analysis::verify_h_modulus(h_grid)?);
    reports.push(analysis::verify_lipschitz_family(
        LIPSCHITZ_FUNCTIONS,
        LIPSCHITZ_GRID_N,
        config.seed,
    )?);
    Ok(reports)
}

pub fn summary_csv(reports: &[VerificationReport]) -> String {
    let mut out = String::from("name,samples,max_violation,tolerance,passed\n");
    for r in reports {
        out.push_str(&r.csv_line());
        out.push('\n');
    }
    out
}

fn cmd_verify(config: &RunConfig, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let ds = find_delta_star(config.delta_star_tol)?;
    writeln!(
        stdout,
        "delta* = {}  (cached {})",
        sig15(ds),
        sig15(delta_star())
    )?;
    writeln!(
        stdout,
        "grid_n = {}  seed = {}  samples = {}",
        config.grid_n, config.seed, config.samples
    )?;
    let reports = run_verification(config)?;
    writeln!(
        stdout,
        "{:<28} {:>10} {:>24} {:>12} result",
        "check", "samples", "max_violation", "tolerance"
    )?;
    for r in &reports {
        writeln!(stdout, "{r}")?;
    }
    fs::write(&config.output_path, summary_csv(&reports))?;
    let failed = reports.iter().filter(|r| !r.passed).count();
    if failed == 0 {
        writeln!(
            stdout,
            "all {} checks passed; summary in {}",
            reports.len(),
            config.output_path.display()
        )?;
        Ok(EXIT_OK)
    } else {
        writeln!(
            stdout,
            "{failed} of {} checks failed; summary in {}",
            reports.len(),
            config.output_path.display()
        )?;
        Ok(EXIT_FAILED)
    }
}
