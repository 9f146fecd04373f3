//! Quality-assurance machinery: reproducible matrix generators, a binary64
//! oracle for the BLAS routines, LAPACK-style residual ratios with the
//! pass threshold of 30, and the random suite that ties them together.

pub mod gen;
pub mod hilbert;
pub mod oracle;
pub mod report;
pub mod residual;
pub mod suite;

pub use gen::{gen_matrix, GenError, MatrixGenSpec, MatrixKind};
pub use hilbert::{hilbert_infnorm_study, infnorm_l, HilbertRow};
pub use oracle::{compare_vs_oracle, BlasRoutine, OracleError};
pub use report::{tally, write_csv, write_text, ResidualReport, DEFAULT_THRESHOLD};
pub use residual::{
    is_quasi_triangular, lapack_ratio, matmul, orthogonality, residual_chol, residual_eig, residual_inverse, residual_lu,
    residual_schur, residual_solve, residual_svd, ResidualError,
};
pub use suite::{run_case, run_lapack_case, run_suite, LapackRoutine, SuiteConfig, SuiteError, SuiteRoutine};
