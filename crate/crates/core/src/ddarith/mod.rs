//! Double-double scalar arithmetic.
//!
//! [`DdReal`] is an unevaluated sum of two binary64 values built from the
//! error-free transforms in [`eft`]. [`DdComplex`] pairs two of them.
//! Decimal conversion is exact in both directions; see [`decimal`].

pub mod complex;
pub mod dd;
pub mod decimal;
pub mod eft;
pub mod lamch;

pub use complex::DdComplex;
pub use dd::{DdReal, DomainError};
pub use decimal::{dd_from_ratio, dd_from_string, dd_to_string, ParseDecimalError};
pub use eft::{quick_two_sum, two_prod, two_prod_dekker, two_prod_fma, two_sum, TwoProdMethod, TWO_PROD_METHOD};
pub use lamch::{machine_params, MachineParams, DD_PARAMS, F64_PARAMS};
