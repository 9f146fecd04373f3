//! LAPACK driver subset over the generic [`Real`](crate::Real) scalars.
//!
//! The `r*` routines keep LAPACK argument lists and return the LAPACK
//! `info` value (`Ok(0)` on success, `Ok(k > 0)` for numerical failures,
//! `Err(BlasError)` for invalid arguments). Routines that take a workspace
//! honour the `lwork == -1` query protocol. The owned-matrix wrappers in
//! [`driver`] turn those conventions into ordinary `Result`s.

mod chol;
pub mod driver;
pub mod elementary;
mod gees;
mod gesvd;
mod lu;
pub(crate) mod syev;

pub use chol::rpotrf;
pub use driver::{cholesky, gees, gesvd, inverse, lu, syev, EigenResult, LapackError, LuFactors, SchurResult, SvdResult};
pub use gees::{rgees, rgees_lwork};
pub use gesvd::{rgesvd, rgesvd_lwork};
pub use lu::{rgetrf, rgetri, rgetri_lwork, rgetrs};
pub use syev::{rsyev, rsyev_lwork};
