//! The random residual suite: every routine, a sweep of sizes and seeds,
//! at one or both precisions.

use std::fmt;
use std::str::FromStr;
use std::thread;

use rand::Rng;

use crate::mplapack::{self, LapackError};
use crate::mpblas::Matrix;
use crate::real::{Precision, Real};
use crate::DdReal;

use super::gen::{derive_seed, gen_matrix, rng, MatrixGenSpec, MatrixKind};
use super::oracle::{compare_vs_oracle, BlasRoutine, OracleError};
use super::report::{ResidualReport, DEFAULT_THRESHOLD};
use super::residual::{residual_chol, residual_eig, residual_inverse, residual_lu, residual_schur, residual_solve, residual_svd, ResidualError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LapackRoutine {
    Rgetrf,
    Rgetrs,
    Rgetri,
    Rpotrf,
    Rsyev,
    Rgees,
    Rgesvd,
}

impl LapackRoutine {
    pub const ALL: [LapackRoutine; 7] = [
        LapackRoutine::Rgetrf,
        LapackRoutine::Rgetrs,
        LapackRoutine::Rgetri,
        LapackRoutine::Rpotrf,
        LapackRoutine::Rsyev,
        LapackRoutine::Rgees,
        LapackRoutine::Rgesvd,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LapackRoutine::Rgetrf => "Rgetrf",
            LapackRoutine::Rgetrs => "Rgetrs",
            LapackRoutine::Rgetri => "Rgetri",
            LapackRoutine::Rpotrf => "Rpotrf",
            LapackRoutine::Rsyev => "Rsyev",
            LapackRoutine::Rgees => "Rgees",
            LapackRoutine::Rgesvd => "Rgesvd",
        }
    }
}

/// Any routine the suite can exercise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SuiteRoutine {
    Blas(BlasRoutine),
    Lapack(LapackRoutine),
}

impl SuiteRoutine {
    pub fn all() -> Vec<SuiteRoutine> {
        BlasRoutine::ALL
            .into_iter()
            .map(SuiteRoutine::Blas)
            .chain(LapackRoutine::ALL.into_iter().map(SuiteRoutine::Lapack))
            .collect()
    }

    pub fn name(self) -> &'static str {
        match self {
            SuiteRoutine::Blas(r) => r.name(),
            SuiteRoutine::Lapack(r) => r.name(),
        }
    }

    fn tag(self) -> u64 {
        match self {
            SuiteRoutine::Blas(r) => r as u64,
            SuiteRoutine::Lapack(r) => 100 + r as u64,
        }
    }
}

impl fmt::Display for SuiteRoutine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SuiteRoutine {
    type Err = SuiteError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SuiteRoutine::all()
            .into_iter()
            .find(|r| r.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| SuiteError::UnknownRoutine(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum SuiteError {
    #[error("unknown routine {0:?}")]
    UnknownRoutine(String),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("{routine}: {source}")]
    Lapack { routine: &'static str, source: LapackError },
    #[error(transparent)]
    Residual(#[from] ResidualError),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteConfig {
    pub seeds: Vec<u64>,
    pub sizes: Vec<usize>,
    pub routines: Vec<SuiteRoutine>,
    pub precisions: Vec<Precision>,
    pub threshold: f64,
    /// Worker threads; 0 uses the host's available parallelism.
    pub threads: usize,
}

impl Default for SuiteConfig {
    /// 20 seeds, sizes {1, 2, 3, 5, 10, 50}, every routine, both precisions.
    fn default() -> Self {
        SuiteConfig {
            seeds: (0..20).collect(),
            sizes: vec![1, 2, 3, 5, 10, 50],
            routines: SuiteRoutine::all(),
            precisions: vec![Precision::F64, Precision::Dd],
            threshold: DEFAULT_THRESHOLD,
            threads: 0,
        }
    }
}

fn lapack_failure(routine: LapackRoutine, e: LapackError, precision: Precision, n: usize) -> Result<Vec<ResidualReport>, SuiteError> {
    match e {
        LapackError::Argument(_) | LapackError::NotSquare { .. } => Err(SuiteError::Lapack { routine: routine.name(), source: e }),
        // A numerical failure is a test outcome, not a harness error.
        _ => Ok(vec![ResidualReport::new(format!("{} info=0", routine.name()), precision, (n, n), f64::INFINITY)]),
    }
}

/// Factors a random instance of size `n` with `routine` and returns its
/// residual reports. Inputs depend only on `(seed, routine, n)`.
pub fn run_lapack_case<T: Real>(routine: LapackRoutine, n: usize, seed: u64) -> Result<Vec<ResidualReport>, SuiteError> {
    let case_seed = derive_seed(seed, &[SuiteRoutine::Lapack(routine).tag(), n as u64]);
    let mut r = rng(case_seed);
    let gen = |kind: MatrixKind, m: usize, k: usize, s: u64| -> Matrix<T> {
        gen_matrix(&MatrixGenSpec { kind, m, n: k, seed: s }).expect("valid shape")
    };
    let uniform = gen(MatrixKind::RandomUniform, n, n, case_seed);
    let uplo = if r.gen_bool(0.5) { 'U' } else { 'L' };
    let fail = |e| lapack_failure(routine, e, T::PRECISION, n);
    let reports = match routine {
        LapackRoutine::Rgetrf => match mplapack::lu(&uniform) {
            Ok(f) => vec![residual_lu(&uniform, &f.lu, &f.ipiv)?],
            Err(e) => return fail(e),
        },
        LapackRoutine::Rgetrs => {
            let b = gen(MatrixKind::RandomUniform, n, 2, case_seed ^ 1);
            match mplapack::lu(&uniform).and_then(|f| f.solve(&b)) {
                Ok(x) => vec![residual_solve(&uniform, &x, &b)?],
                Err(e) => return fail(e),
            }
        }
        LapackRoutine::Rgetri => match mplapack::inverse(&uniform) {
            Ok(inv) => vec![residual_inverse(&uniform, &inv)?],
            Err(e) => return fail(e),
        },
        LapackRoutine::Rpotrf => {
            let a = gen(MatrixKind::RandomSpd, n, n, case_seed);
            match mplapack::cholesky(&a, uplo) {
                Ok(f) => vec![residual_chol(&a, &f, uplo)?],
                Err(e) => return fail(e),
            }
        }
        LapackRoutine::Rsyev => {
            let a = gen(MatrixKind::RandomSymmetric, n, n, case_seed);
            match mplapack::syev(&a, uplo, true) {
                Ok(e) => residual_eig(&a, uplo, &e.w, e.v.as_ref().expect("vectors requested"))?,
                Err(e) => return fail(e),
            }
        }
        LapackRoutine::Rgees => match mplapack::gees(&uniform, true) {
            Ok(s) => residual_schur(&uniform, &s.t, s.z.as_ref().expect("vectors requested"))?,
            Err(e) => return fail(e),
        },
        LapackRoutine::Rgesvd => match mplapack::gesvd(&uniform, true) {
            Ok(s) => residual_svd(&uniform, &s.s, s.u.as_ref().expect("U requested"), s.vt.as_ref().expect("VT requested"))?,
            Err(e) => return fail(e),
        },
    };
    Ok(reports)
}

fn run_case_at<T: Real>(routine: SuiteRoutine, n: usize, seed: u64, threshold: f64) -> Result<Vec<ResidualReport>, SuiteError> {
    let reports = match routine {
        SuiteRoutine::Blas(b) => vec![compare_vs_oracle::<T>(b, n, seed, threshold)?],
        SuiteRoutine::Lapack(l) => run_lapack_case::<T>(l, n, seed)?,
    };
    Ok(reports.into_iter().map(|r| r.with_seed(seed).with_threshold(threshold)).collect())
}

/// Runs one `(routine, precision, n, seed)` case.
pub fn run_case(routine: SuiteRoutine, precision: Precision, n: usize, seed: u64, threshold: f64) -> Result<Vec<ResidualReport>, SuiteError> {
    match precision {
        Precision::F64 => run_case_at::<f64>(routine, n, seed, threshold),
        Precision::Dd => run_case_at::<DdReal>(routine, n, seed, threshold),
    }
}

/// Runs every case of `cfg` and returns the reports in a fixed order
/// (routine, precision, size, seed), independent of the thread count.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Vec<ResidualReport>, SuiteError> {
    let mut cases = Vec::new();
    for &routine in &cfg.routines {
        for &precision in &cfg.precisions {
            for &n in &cfg.sizes {
                for &seed in &cfg.seeds {
                    cases.push((routine, precision, n, seed));
                }
            }
        }
    }
    let threads = match cfg.threads {
        0 => thread::available_parallelism().map_or(1, |p| p.get()),
        t => t,
    }
    .clamp(1, cases.len().max(1));
    let run = |chunk: &[(SuiteRoutine, Precision, usize, u64)]| -> Result<Vec<Vec<ResidualReport>>, SuiteError> {
        chunk.iter().map(|&(r, p, n, s)| run_case(r, p, n, s, cfg.threshold)).collect()
    };
    // Cases are dealt round-robin so the large sizes spread over workers.
    let per_worker: Vec<Result<Vec<Vec<ResidualReport>>, SuiteError>> = thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|w| {
                let mine: Vec<_> = cases.iter().copied().skip(w).step_by(threads).collect();
                scope.spawn(move || run(&mine))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("suite worker panicked")).collect()
    });
    let mut per_worker = per_worker.into_iter().collect::<Result<Vec<_>, _>>()?;
    let mut out = Vec::new();
    for i in 0..cases.len() {
        let slot = &mut per_worker[i % threads][i / threads];
        out.append(slot);
    }
    Ok(out)
}
