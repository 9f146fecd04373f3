//! Flop-rate benchmark harness for the sequential and threaded kernels.
//!
//! Each size of a sweep gets one set of inputs from a fixed seed, one
//! warm-up call and a best-of-`r` timing on the monotonic clock. Before any
//! timing, the smallest size is checked against the binary64 oracle (BLAS)
//! or a residual ratio (factorizations), and threaded kernels are checked
//! bitwise against their sequential versions.

use std::fmt;
use std::hint::black_box;
use std::io;
use std::path::Path;
use std::str::FromStr;
use std::thread;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::mplapack::{rgetrf, rpotrf};
use crate::mpblas::{self, IndexInt, Matrix};
use crate::real::{Precision, Real};
use crate::testkit::gen::{derive_seed, gen_matrix, rng, uniform, uniform_vec, MatrixGenSpec, MatrixKind};
use crate::testkit::{oracle, residual_chol, residual_lu, DEFAULT_THRESHOLD};
use crate::DdReal;

/// CSV header written by [`write_csv`].
pub const CSV_HEADER: &str = "routine,precision,n,k,threads,elapsed_s,mflops";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BenchRoutine {
    Raxpy,
    Rdot,
    Rgemv,
    Rgemm,
    Rsyrk,
    Rgetrf,
    Rpotrf,
}

impl BenchRoutine {
    pub const ALL: [BenchRoutine; 7] = [
        BenchRoutine::Raxpy,
        BenchRoutine::Rdot,
        BenchRoutine::Rgemv,
        BenchRoutine::Rgemm,
        BenchRoutine::Rsyrk,
        BenchRoutine::Rgetrf,
        BenchRoutine::Rpotrf,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BenchRoutine::Raxpy => "Raxpy",
            BenchRoutine::Rdot => "Rdot",
            BenchRoutine::Rgemv => "Rgemv",
            BenchRoutine::Rgemm => "Rgemm",
            BenchRoutine::Rsyrk => "Rsyrk",
            BenchRoutine::Rgetrf => "Rgetrf",
            BenchRoutine::Rpotrf => "Rpotrf",
        }
    }

    /// Whether a threaded kernel exists.
    pub fn has_parallel(self) -> bool {
        matches!(self, BenchRoutine::Raxpy | BenchRoutine::Rdot | BenchRoutine::Rgemm)
    }

    /// The inner dimension recorded in the `k` column.
    pub fn k_for(self, n: usize) -> Option<usize> {
        matches!(self, BenchRoutine::Rgemm | BenchRoutine::Rsyrk).then_some(n)
    }
}

impl fmt::Display for BenchRoutine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BenchRoutine {
    type Err = BenchError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BenchRoutine::ALL
            .into_iter()
            .find(|r| r.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| BenchError::UnknownRoutine(s.to_string()))
    }
}

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("unknown routine {0:?} (expected one of Raxpy, Rdot, Rgemv, Rgemm, Rsyrk, Rgetrf, Rpotrf)")]
    UnknownRoutine(String),
    #[error("sizes must be strictly ascending and non-empty")]
    BadSweep,
    #[error("repetitions must be at least 1")]
    NoRepetitions,
    #[error("{threads} threads requested but the host has {available} logical cores (force to override)")]
    Oversubscribed { threads: usize, available: usize },
    #[error("{0} has no threaded kernel; use 1 thread")]
    NoParallelKernel(&'static str),
    #[error("{routine} spot check failed at n = {n}: {detail}")]
    SpotCheck { routine: &'static str, n: usize, detail: String },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Floating-point operation count, leading terms for the factorizations:
/// `Rgemm` 2mnk, `Rsyrk` n^2 k + nk, `Rgemv` 2mn, `Raxpy` and `Rdot` 2n,
/// `Rgetrf` (2/3) n^3, `Rpotrf` (1/3) n^3.
pub fn flop_count(routine: &str, m: usize, n: usize, k: usize) -> Result<f64, BenchError> {
    let r: BenchRoutine = routine.parse()?;
    let (m, n, k) = (m as f64, n as f64, k as f64);
    Ok(match r {
        BenchRoutine::Raxpy | BenchRoutine::Rdot => 2.0 * n,
        BenchRoutine::Rgemv => 2.0 * m * n,
        BenchRoutine::Rgemm => 2.0 * m * n * k,
        BenchRoutine::Rsyrk => n * n * k + n * k,
        BenchRoutine::Rgetrf => 2.0 * n * n * n / 3.0,
        BenchRoutine::Rpotrf => n * n * n / 3.0,
    })
}

fn flops_at(routine: BenchRoutine, n: usize) -> f64 {
    flop_count(routine.name(), n, n, n).expect("known routine")
}

/// One timed point of a sweep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub routine: String,
    pub precision: Precision,
    pub n: usize,
    pub k: Option<usize>,
    pub threads: usize,
    pub elapsed_s: f64,
    pub mflops: f64,
}

impl BenchRecord {
    /// Recomputes the flop count from the row and checks
    /// `mflops * elapsed * 1e6 == flops` to rounding.
    pub fn is_consistent(&self) -> bool {
        let Ok(flops) = flop_count(&self.routine, self.n, self.n, self.k.unwrap_or(self.n)) else {
            return false;
        };
        self.elapsed_s > 0.0 && (self.mflops * self.elapsed_s * 1e6 - flops).abs() <= 1e-9 * flops.max(1.0)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchConfig {
    pub routine: BenchRoutine,
    pub precision: Precision,
    pub sizes: Vec<usize>,
    pub threads: usize,
    pub repetitions: usize,
    /// Allow more threads than logical cores.
    pub force: bool,
    pub seed: u64,
}

impl BenchConfig {
    pub fn new(routine: BenchRoutine, precision: Precision, sizes: Vec<usize>) -> Self {
        BenchConfig { routine, precision, sizes, threads: 1, repetitions: 3, force: false, seed: 0 }
    }
}

/// `nmin, nmin + step, ...` up to and including `nmax`.
pub fn sweep(nmin: usize, nmax: usize, step: usize) -> Vec<usize> {
    (nmin..=nmax).step_by(step.max(1)).collect()
}

pub fn available_threads() -> usize {
    thread::available_parallelism().map_or(1, |p| p.get())
}

/// Runs the sweep and returns one record per size, in sweep order.
pub fn run_bench(cfg: &BenchConfig) -> Result<Vec<BenchRecord>, BenchError> {
    if cfg.sizes.is_empty() || cfg.sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(BenchError::BadSweep);
    }
    if cfg.repetitions == 0 {
        return Err(BenchError::NoRepetitions);
    }
    let threads = cfg.threads.max(1);
    let available = available_threads();
    if threads > available && !cfg.force {
        return Err(BenchError::Oversubscribed { threads, available });
    }
    if threads > 1 && !cfg.routine.has_parallel() {
        return Err(BenchError::NoParallelKernel(cfg.routine.name()));
    }
    match cfg.precision {
        Precision::F64 => run_at::<f64>(cfg, threads),
        Precision::Dd => run_at::<DdReal>(cfg, threads),
    }
}

/// Inputs for one size, as binary64 so the oracle sees the same values.
struct Inputs {
    n: usize,
    alpha: f64,
    beta: f64,
    x: Vec<f64>,
    y: Vec<f64>,
    a: Matrix<f64>,
    b: Matrix<f64>,
    c: Matrix<f64>,
}

impl Inputs {
    fn new(routine: BenchRoutine, n: usize, seed: u64) -> Self {
        let s = derive_seed(seed, &[routine as u64, n as u64]);
        let mut r = rng(s);
        let (alpha, beta) = (uniform(&mut r), uniform(&mut r));
        let vec_len = if matches!(routine, BenchRoutine::Raxpy | BenchRoutine::Rdot | BenchRoutine::Rgemv) { n } else { 0 };
        let x = uniform_vec(&mut r, vec_len);
        let y = uniform_vec(&mut r, vec_len);
        let mat = |kind: MatrixKind, size: usize, seed: u64| gen_matrix::<f64>(&MatrixGenSpec::square(kind, size, seed)).expect("square");
        let (a, b, c) = match routine {
            BenchRoutine::Raxpy | BenchRoutine::Rdot => (Matrix::zeros(0, 0), Matrix::zeros(0, 0), Matrix::zeros(0, 0)),
            BenchRoutine::Rgemv | BenchRoutine::Rgetrf => (mat(MatrixKind::RandomUniform, n, s), Matrix::zeros(0, 0), Matrix::zeros(0, 0)),
            BenchRoutine::Rpotrf => (mat(MatrixKind::RandomSpd, n, s), Matrix::zeros(0, 0), Matrix::zeros(0, 0)),
            BenchRoutine::Rsyrk => (mat(MatrixKind::RandomUniform, n, s), Matrix::zeros(0, 0), mat(MatrixKind::RandomUniform, n, s ^ 2)),
            BenchRoutine::Rgemm => (
                mat(MatrixKind::RandomUniform, n, s),
                mat(MatrixKind::RandomUniform, n, s ^ 1),
                mat(MatrixKind::RandomUniform, n, s ^ 2),
            ),
        };
        Inputs { n, alpha, beta, x, y, a, b, c }
    }
}

fn lift<T: Real>(v: &[f64]) -> Vec<T> {
    v.iter().map(|&x| T::from_f64(x)).collect()
}

/// Precision-`T` copies of the inputs plus the output buffer of one call.
struct Operands<T> {
    alpha: T,
    beta: T,
    x: Vec<T>,
    a: Vec<T>,
    b: Vec<T>,
    /// Initial contents of the output (y, C or A).
    out0: Vec<T>,
}

impl<T: Real> Operands<T> {
    fn new(routine: BenchRoutine, inp: &Inputs) -> Self {
        let out0 = match routine {
            BenchRoutine::Raxpy | BenchRoutine::Rgemv | BenchRoutine::Rdot => lift(&inp.y),
            BenchRoutine::Rgemm | BenchRoutine::Rsyrk => lift(inp.c.as_slice()),
            BenchRoutine::Rgetrf | BenchRoutine::Rpotrf => lift(inp.a.as_slice()),
        };
        Operands {
            alpha: T::from_f64(inp.alpha),
            beta: T::from_f64(inp.beta),
            x: lift(&inp.x),
            a: lift(inp.a.as_slice()),
            b: lift(inp.b.as_slice()),
            out0,
        }
    }

    /// One call of the kernel on `out` (a fresh copy of `out0`). `Rdot`
    /// writes its result into `out[0]` when `out` is non-empty.
    fn call(&self, routine: BenchRoutine, n: usize, threads: usize, out: &mut [T], ipiv: &mut [IndexInt]) {
        let ni = n as IndexInt;
        let ld = n.max(1) as IndexInt;
        match routine {
            BenchRoutine::Raxpy => {
                if threads > 1 {
                    mpblas::raxpy_par(ni, self.alpha, &self.x, 1, out, 1, threads);
                } else {
                    mpblas::raxpy(ni, self.alpha, &self.x, 1, out, 1);
                }
            }
            BenchRoutine::Rdot => {
                let d = if threads > 1 {
                    mpblas::rdot_par(ni, &self.x, 1, &self.out0, 1, threads)
                } else {
                    mpblas::rdot(ni, &self.x, 1, &self.out0, 1)
                };
                if let Some(slot) = out.first_mut() {
                    *slot = black_box(d);
                }
            }
            BenchRoutine::Rgemv => {
                mpblas::rgemv('N', ni, ni, self.alpha, &self.a, ld, &self.x, 1, self.beta, out, 1).expect("valid arguments");
            }
            BenchRoutine::Rgemm => {
                if threads > 1 {
                    mpblas::rgemm_par('N', 'N', ni, ni, ni, self.alpha, &self.a, ld, &self.b, ld, self.beta, out, ld, threads)
                } else {
                    mpblas::rgemm('N', 'N', ni, ni, ni, self.alpha, &self.a, ld, &self.b, ld, self.beta, out, ld)
                }
                .expect("valid arguments");
            }
            BenchRoutine::Rsyrk => {
                mpblas::rsyrk('U', 'N', ni, ni, self.alpha, &self.a, ld, self.beta, out, ld).expect("valid arguments");
            }
            BenchRoutine::Rgetrf => {
                rgetrf(ni, ni, out, ld, ipiv).expect("valid arguments");
            }
            BenchRoutine::Rpotrf => {
                rpotrf('L', ni, out, ld).expect("valid arguments");
            }
        }
    }
}

fn spot_check<T: Real>(routine: BenchRoutine, inp: &Inputs, ops: &Operands<T>, threads: usize) -> Result<(), BenchError> {
    let n = inp.n;
    let fail = |detail: String| Err(BenchError::SpotCheck { routine: routine.name(), n, detail });
    let mut out = ops.out0.clone();
    let mut ipiv = vec![0; n];
    ops.call(routine, n, 1, &mut out, &mut ipiv);
    if threads > 1 {
        let mut par = ops.out0.clone();
        ops.call(routine, n, threads, &mut par, &mut vec![0; n]);
        let same = par.iter().zip(&out).all(|(p, s)| p.to_dd() == s.to_dd());
        if !same {
            return fail(format!("{threads}-thread result differs from the sequential one"));
        }
    }
    let ni = n as IndexInt;
    let ld = n.max(1) as IndexInt;
    // Oracle results and the magnitude bound each entry is held to.
    let (expect, bound): (Vec<f64>, f64) = match routine {
        BenchRoutine::Raxpy => {
            let mut y = inp.y.clone();
            oracle::axpy(n, inp.alpha, &inp.x, 1, &mut y, 1);
            (y, 2.0 * (inp.alpha.abs() + 1.0))
        }
        BenchRoutine::Rdot => {
            let d = oracle::dot(n, &inp.x, 1, &inp.y, 1);
            let d_ours = if n == 0 { T::zero() } else { mpblas::rdot(ni, &ops.x, 1, &ops.out0, 1) };
            out = vec![d_ours];
            (vec![d], (n + 1) as f64 * n as f64)
        }
        BenchRoutine::Rgemv => {
            let mut y = inp.y.clone();
            oracle::gemv('N', ni, ni, inp.alpha, inp.a.as_slice(), ld, &inp.x, 1, inp.beta, &mut y, 1).expect("valid");
            (y, (n + 2) as f64 * (inp.alpha.abs() * n as f64 + inp.beta.abs()))
        }
        BenchRoutine::Rgemm => {
            let mut c = inp.c.as_slice().to_vec();
            oracle::gemm('N', 'N', ni, ni, ni, inp.alpha, inp.a.as_slice(), ld, inp.b.as_slice(), ld, inp.beta, &mut c, ld).expect("valid");
            (c, (n + 2) as f64 * (inp.alpha.abs() * n as f64 + inp.beta.abs()))
        }
        BenchRoutine::Rsyrk => {
            let mut c = inp.c.as_slice().to_vec();
            oracle::syrk('U', 'N', ni, ni, inp.alpha, inp.a.as_slice(), ld, inp.beta, &mut c, ld).expect("valid");
            (c, (n + 2) as f64 * (inp.alpha.abs() * n as f64 + inp.beta.abs()))
        }
        BenchRoutine::Rgetrf | BenchRoutine::Rpotrf => {
            let a = Matrix::from_f64(&inp.a);
            let f = Matrix::from_col_major(n, n, n.max(1), out.clone());
            let report = if routine == BenchRoutine::Rgetrf {
                residual_lu(&a, &f, &ipiv[..n])
            } else {
                residual_chol(&a, &f, 'L')
            }
            .expect("shapes match");
            return if report.ratio < DEFAULT_THRESHOLD { Ok(()) } else { fail(report.to_string()) };
        }
    };
    let tol = DEFAULT_THRESHOLD * f64::EPSILON * bound;
    for (i, (o, e)) in out.iter().zip(&expect).enumerate() {
        let gap = (o.to_f64() - e).abs();
        if gap > tol {
            return fail(format!("entry {i}: {} vs oracle {e} (gap {gap:e} > {tol:e})", o.to_f64()));
        }
    }
    Ok(())
}

fn run_at<T: Real>(cfg: &BenchConfig, threads: usize) -> Result<Vec<BenchRecord>, BenchError> {
    let routine = cfg.routine;
    let mut records = Vec::with_capacity(cfg.sizes.len());
    for (idx, &n) in cfg.sizes.iter().enumerate() {
        let inp = Inputs::new(routine, n, cfg.seed);
        let ops = Operands::<T>::new(routine, &inp);
        if idx == 0 {
            spot_check(routine, &inp, &ops, threads)?;
        }
        let mut ipiv = vec![0; n];
        let mut out = ops.out0.clone();
        ops.call(routine, n, threads, &mut out, &mut ipiv);
        let mut best = f64::INFINITY;
        for _ in 0..cfg.repetitions {
            out.copy_from_slice(&ops.out0);
            let t0 = Instant::now();
            ops.call(routine, n, threads, black_box(&mut out), &mut ipiv);
            best = best.min(t0.elapsed().as_secs_f64());
        }
        black_box(&out);
        // A zero reading from a coarse clock is clamped to keep rates finite.
        let elapsed = best.max(1e-9);
        records.push(BenchRecord {
            routine: routine.name().to_string(),
            precision: T::PRECISION,
            n,
            k: routine.k_for(n),
            threads,
            elapsed_s: elapsed,
            mflops: flops_at(routine, n) / elapsed / 1e6,
        });
    }
    Ok(records)
}

/// Writes the header and one row per record.
pub fn write_csv<W: io::Write>(records: &[BenchRecord], out: W) -> Result<(), BenchError> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CSV_HEADER.split(','))?;
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn emit_csv(records: &[BenchRecord], path: &Path) -> Result<(), BenchError> {
    write_csv(records, std::fs::File::create(path)?)
}

pub fn read_csv<R: io::Read>(input: R) -> Result<Vec<BenchRecord>, BenchError> {
    let mut r = csv::Reader::from_reader(input);
    let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    if header.join(",") != CSV_HEADER {
        return Err(BenchError::Csv(csv::Error::from(io::Error::new(
            io::ErrorKind::InvalidData,
            format!("unexpected header {:?}", header.join(",")),
        ))));
    }
    Ok(r.deserialize().collect::<Result<_, _>>()?)
}

/// Timer sanity guard: within each (routine, precision, threads) group,
/// a size at least twice another must not run faster than it.
pub fn monotone_work(records: &[BenchRecord]) -> bool {
    records.iter().all(|a| {
        records.iter().all(|b| {
            let same = a.routine == b.routine && a.precision == b.precision && a.threads == b.threads;
            !same || b.n < 2 * a.n.max(1) || b.elapsed_s >= a.elapsed_s
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flop_formulas() {
        assert_eq!(flop_count("Rgemm", 10, 10, 10).unwrap(), 2000.0);
        assert_eq!(flop_count("Raxpy", 5, 5, 5).unwrap(), 10.0);
        assert_eq!(flop_count("Rgetrf", 3, 3, 3).unwrap(), 18.0);
        assert_eq!(flop_count("rsyrk", 2, 2, 3).unwrap(), 4.0 * 3.0 + 6.0);
        assert!(matches!(flop_count("Rcopy", 1, 1, 1), Err(BenchError::UnknownRoutine(_))));
    }

    #[test]
    fn every_routine_runs_at_both_precisions() {
        for routine in BenchRoutine::ALL {
            for precision in [Precision::F64, Precision::Dd] {
                let mut cfg = BenchConfig::new(routine, precision, vec![4, 9]);
                cfg.repetitions = 1;
                let recs = run_bench(&cfg).unwrap();
                assert_eq!(recs.len(), 2);
                assert!(recs.iter().all(BenchRecord::is_consistent), "{recs:?}");
            }
        }
    }

    #[test]
    fn parallel_spot_check_when_forced() {
        let mut cfg = BenchConfig::new(BenchRoutine::Rgemm, Precision::Dd, vec![17]);
        cfg.threads = 3;
        cfg.force = true;
        cfg.repetitions = 1;
        assert_eq!(run_bench(&cfg).unwrap()[0].threads, 3);
    }

    #[test]
    fn config_errors() {
        let mut cfg = BenchConfig::new(BenchRoutine::Rgemm, Precision::F64, vec![8, 4]);
        assert!(matches!(run_bench(&cfg), Err(BenchError::BadSweep)));
        cfg.sizes = vec![4];
        cfg.threads = available_threads() + 1;
        assert!(matches!(run_bench(&cfg), Err(BenchError::Oversubscribed { .. })));
        cfg.force = true;
        cfg.routine = BenchRoutine::Rgetrf;
        assert!(matches!(run_bench(&cfg), Err(BenchError::NoParallelKernel("Rgetrf"))));
    }

    #[test]
    fn csv_round_trip_and_empty_run() {
        let recs = vec![
            BenchRecord { routine: "Rgemm".into(), precision: Precision::Dd, n: 8, k: Some(8), threads: 2, elapsed_s: 1.5e-4, mflops: 1024.0 / 1.5e-4 / 1e6 },
            BenchRecord { routine: "Raxpy".into(), precision: Precision::F64, n: 1000, k: None, threads: 1, elapsed_s: 2e-6, mflops: 1000.0 },
        ];
        let mut buf = Vec::new();
        write_csv(&recs, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert_eq!(text.lines().next(), Some(CSV_HEADER));
        assert_eq!(text.lines().nth(2), Some("Raxpy,f64,1000,,1,2e-6,1000.0"));
        assert_eq!(read_csv(buf.as_slice()).unwrap(), recs);
        let mut empty = Vec::new();
        write_csv(&[], &mut empty).unwrap();
        assert_eq!(String::from_utf8(empty).unwrap(), format!("{CSV_HEADER}\n"));
    }

    #[test]
    fn monotone_guard() {
        let rec = |n, t| BenchRecord { routine: "Rgemm".into(), precision: Precision::F64, n, k: Some(n), threads: 1, elapsed_s: t, mflops: 1.0 };
        assert!(monotone_work(&[rec(10, 1.0), rec(15, 0.9), rec(20, 2.0)]));
        assert!(!monotone_work(&[rec(10, 1.0), rec(20, 0.5)]));
    }

    #[test]
    fn sweep_is_inclusive() {
        assert_eq!(sweep(100, 300, 100), [100, 200, 300]);
        assert_eq!(sweep(1000, 1000, 1), [1000]);
    }
}
