use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use mpkit::bench::{self, BenchConfig, BenchRoutine};
use mpkit::ddarith::TWO_PROD_METHOD;
use mpkit::mpblas::Matrix;
use mpkit::mplapack::{gees, gesvd, inverse, syev};
use mpkit::testkit::{self, infnorm_l, SuiteConfig, SuiteRoutine};
use mpkit::{DdReal, Precision, Real};

use crate::demos::{run_demo, summary, Demo};
use crate::matrix_file::read_matrix;
use crate::octave::{digits_for, format_num, print_octave, print_vector};

fn long_version() -> String {
    format!("{} (two_prod: {})", env!("CARGO_PKG_VERSION"), TWO_PROD_METHOD.as_str())
}

#[derive(Debug, Parser)]
#[command(name = "mpkit", version, long_version = long_version(), about = "Double-double linear algebra demos, QA suite and benchmarks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a worked example and check it against the known answer.
    Demo {
        #[arg(value_enum)]
        name: Demo,
    },
    /// Random residual-ratio suite.
    Qa {
        #[arg(long, default_value_t = 20)]
        seeds: u64,
        /// Largest matrix order; the sizes are {1, 2, 3, 5, 10, 50} up to this bound.
        #[arg(long, default_value_t = 50)]
        nmax: usize,
        /// Restrict to one routine, e.g. Rgemm or Rgetrf.
        #[arg(long)]
        routine: Option<SuiteRoutine>,
        #[arg(long)]
        precision: Option<Precision>,
        #[arg(long, default_value_t = testkit::DEFAULT_THRESHOLD)]
        threshold: f64,
        #[arg(long, env = "MPKIT_THREADS", default_value_t = 0)]
        threads: usize,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Flop-rate sweep; CSV goes to stdout.
    Bench {
        #[arg(long)]
        routine: BenchRoutine,
        #[arg(long)]
        precision: Precision,
        #[arg(long)]
        nmin: usize,
        #[arg(long)]
        nmax: usize,
        #[arg(long, default_value_t = 1)]
        step: usize,
        #[arg(long, env = "MPKIT_THREADS", default_value_t = 1)]
        threads: usize,
        #[arg(long, default_value_t = 3)]
        reps: usize,
        /// Allow more threads than logical cores.
        #[arg(long)]
        force: bool,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Invert the matrix in a file.
    Invert(FileArgs),
    /// Symmetric eigendecomposition (upper triangle is read).
    Eig(FileArgs),
    /// Singular value decomposition.
    Svd(FileArgs),
    /// Real Schur form and eigenvalues.
    Schur(FileArgs),
}

#[derive(Debug, clap::Args)]
pub struct FileArgs {
    #[arg(long)]
    pub file: PathBuf,
    #[arg(long, default_value = "dd")]
    pub precision: Precision,
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code.
pub fn run<I, A>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = A>,
    A: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

type Result<T> = std::result::Result<T, Box<dyn std::error::Error>>;

fn execute(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Demo { name } => {
            let outcome = run_demo(name);
            write!(out, "{}", outcome.text)?;
            if outcome.passed() {
                Ok(0)
            } else {
                write!(out, "{}", summary(&outcome))?;
                Ok(1)
            }
        }
        Command::Qa { seeds, nmax, routine, precision, threshold, threads, csv } => {
            let cfg = SuiteConfig {
                seeds: (0..seeds).collect(),
                sizes: SuiteConfig::default().sizes.into_iter().filter(|&n| n <= nmax).collect(),
                routines: routine.map_or_else(SuiteRoutine::all, |r| vec![r]),
                precisions: precision.map_or_else(|| SuiteConfig::default().precisions, |p| vec![p]),
                threshold,
                threads,
            };
            let reports = testkit::run_suite(&cfg)?;
            testkit::write_text(&reports, &mut *out)?;
            let (passed, total) = testkit::tally(&reports);
            writeln!(out, "# {passed}/{total} ratios below {threshold}")?;
            if let Some(path) = csv {
                testkit::write_csv(&reports, std::fs::File::create(&path)?)?;
            }
            Ok(if passed == total { 0 } else { 1 })
        }
        Command::Bench { routine, precision, nmin, nmax, step, threads, reps, force, csv } => {
            let mut cfg = BenchConfig::new(routine, precision, bench::sweep(nmin, nmax, step));
            cfg.threads = threads;
            cfg.repetitions = reps;
            cfg.force = force;
            let records = bench::run_bench(&cfg)?;
            bench::write_csv(&records, &mut *out)?;
            if let Some(path) = csv {
                bench::emit_csv(&records, &path)?;
            }
            Ok(0)
        }
        Command::Invert(f) => with_precision(f, out, invert_cmd::<f64>, invert_cmd::<DdReal>),
        Command::Eig(f) => with_precision(f, out, eig_cmd::<f64>, eig_cmd::<DdReal>),
        Command::Svd(f) => with_precision(f, out, svd_cmd::<f64>, svd_cmd::<DdReal>),
        Command::Schur(f) => with_precision(f, out, schur_cmd::<f64>, schur_cmd::<DdReal>),
    }
}

type FileCmd = fn(&Path, &mut dyn Write) -> Result<()>;

fn with_precision(f: FileArgs, out: &mut dyn Write, f64_cmd: FileCmd, dd_cmd: FileCmd) -> Result<i32> {
    match f.precision {
        Precision::F64 => f64_cmd(&f.file, out)?,
        Precision::Dd => dd_cmd(&f.file, out)?,
    }
    Ok(0)
}

fn load<T: Real>(path: &Path, out: &mut dyn Write) -> Result<Matrix<T>> {
    let a = read_matrix::<T>(path)?;
    writeln!(out, "a ={}", print_octave(&a, digits_for::<T>()))?;
    Ok(a)
}

fn invert_cmd<T: Real>(path: &Path, out: &mut dyn Write) -> Result<()> {
    let a = load::<T>(path, out)?;
    let ainv = inverse(&a)?;
    writeln!(out, "ainv ={}", print_octave(&ainv, digits_for::<T>()))?;
    writeln!(out, "infnorm_l = {}", format_num(infnorm_l(&a, &ainv), 3))?;
    Ok(())
}

fn eig_cmd<T: Real>(path: &Path, out: &mut dyn Write) -> Result<()> {
    let a = load::<T>(path, out)?;
    let r = syev(&a, 'U', true)?;
    writeln!(out, "w ={}", print_vector(&r.w, digits_for::<T>()))?;
    if let Some(v) = r.v {
        writeln!(out, "v ={}", print_octave(&v, digits_for::<T>()))?;
    }
    Ok(())
}

fn svd_cmd<T: Real>(path: &Path, out: &mut dyn Write) -> Result<()> {
    let a = load::<T>(path, out)?;
    let r = gesvd(&a, true)?;
    let d = digits_for::<T>();
    writeln!(out, "s ={}", print_vector(&r.s, d))?;
    if let (Some(u), Some(vt)) = (r.u, r.vt) {
        writeln!(out, "u ={}", print_octave(&u, d))?;
        writeln!(out, "vt ={}", print_octave(&vt, d))?;
    }
    Ok(())
}

fn schur_cmd<T: Real>(path: &Path, out: &mut dyn Write) -> Result<()> {
    let a = load::<T>(path, out)?;
    let r = gees(&a, true)?;
    let d = digits_for::<T>();
    writeln!(out, "t ={}", print_octave(&r.t, d))?;
    if let Some(z) = r.z {
        writeln!(out, "vs ={}", print_octave(&z, d))?;
    }
    writeln!(out, "wr ={}", print_vector(&r.wr, d))?;
    writeln!(out, "wi ={}", print_vector(&r.wi, d))?;
    Ok(())
}
