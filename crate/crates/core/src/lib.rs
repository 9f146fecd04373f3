//! Double-double arithmetic, precision-generic BLAS and LAPACK subsets, a
//! residual-ratio test kit and a flop-rate benchmark harness.

pub mod bench;
pub mod ddarith;
pub mod mpblas;
pub mod mplapack;
pub mod real;
pub mod testkit;

pub use ddarith::{DdComplex, DdReal};
pub use real::{Precision, Real};
