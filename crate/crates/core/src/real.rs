//! The scalar abstraction the BLAS and LAPACK kernels are generic over.

use std::fmt::{self, Debug, Display};
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use crate::ddarith::{dd_from_ratio, DdReal, ParseDecimalError, DD_PARAMS, F64_PARAMS};

/// Working precision of an instantiation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Precision {
    F64,
    Dd,
}

impl Precision {
    pub fn as_str(self) -> &'static str {
        match self {
            Precision::F64 => "f64",
            Precision::Dd => "dd",
        }
    }
}

impl Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Precision {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "f64" | "double" | "binary64" => Ok(Precision::F64),
            "dd" | "dd_real" | "double-double" => Ok(Precision::Dd),
            other => Err(format!("unknown precision {other:?} (expected f64 or dd)")),
        }
    }
}

/// A real scalar type usable by the kernels.
pub trait Real:
    Copy
    + Default
    + Debug
    + Display
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
{
    const PRECISION: Precision;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_f64(x: f64) -> Self;
    fn to_f64(self) -> f64;
    /// Exact widening to double-double.
    fn to_dd(self) -> DdReal;
    /// `num / den` rounded to this precision.
    fn from_ratio(num: i64, den: i64) -> Self;
    fn abs(self) -> Self;
    fn sqrt(self) -> Self;
    fn is_finite(self) -> bool;
    fn is_nan(self) -> bool;
    fn parse_decimal(s: &str) -> Result<Self, ParseDecimalError>;

    /// `Rlamch("E")`.
    fn eps() -> Self;
    /// `Rlamch("S")`.
    fn safe_min() -> Self;
    /// `Rlamch("P")` = eps * base.
    fn ulp() -> Self;
    /// `Rlamch("O")`.
    fn overflow() -> Self;

    #[inline]
    fn from_i64(n: i64) -> Self {
        Self::from_ratio(n, 1)
    }

    #[inline]
    fn is_zero(self) -> bool {
        self == Self::zero()
    }

    #[inline]
    fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    #[inline]
    fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    /// Fortran `SIGN(a, b)`: `|a|` carrying the sign of `b` (zero counts as positive).
    #[inline]
    fn sign_of(self, b: Self) -> Self {
        let a = self.abs();
        if b >= Self::zero() {
            a
        } else {
            -a
        }
    }

    /// Signed scientific notation with `digits` significant digits.
    fn to_sci(self, digits: usize) -> String {
        self.to_dd().to_sci(digits)
    }
}

impl Real for f64 {
    const PRECISION: Precision = Precision::F64;

    #[inline]
    fn zero() -> Self {
        0.0
    }
    #[inline]
    fn one() -> Self {
        1.0
    }
    #[inline]
    fn from_f64(x: f64) -> Self {
        x
    }
    #[inline]
    fn to_f64(self) -> f64 {
        self
    }
    #[inline]
    fn to_dd(self) -> DdReal {
        DdReal::from_f64(self)
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        // Nearest binary64 to the exact ratio, not fl(fl(num)/fl(den)).
        dd_from_ratio(num, den).to_f64()
    }
    #[inline]
    fn abs(self) -> Self {
        f64::abs(self)
    }
    #[inline]
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    #[inline]
    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }
    #[inline]
    fn is_nan(self) -> bool {
        f64::is_nan(self)
    }
    fn parse_decimal(s: &str) -> Result<Self, ParseDecimalError> {
        // Round once from the exact decimal; going through dd would double-round.
        crate::ddarith::dd_from_string(s)?;
        Ok(s.trim().parse::<f64>().expect("validated decimal"))
    }
    #[inline]
    fn eps() -> Self {
        F64_PARAMS.eps.to_f64()
    }
    #[inline]
    fn safe_min() -> Self {
        F64_PARAMS.safe_min.to_f64()
    }
    #[inline]
    fn ulp() -> Self {
        F64_PARAMS.precision.to_f64()
    }
    #[inline]
    fn overflow() -> Self {
        F64_PARAMS.overflow.to_f64()
    }
}

impl Real for DdReal {
    const PRECISION: Precision = Precision::Dd;

    #[inline]
    fn zero() -> Self {
        DdReal::ZERO
    }
    #[inline]
    fn one() -> Self {
        DdReal::ONE
    }
    #[inline]
    fn from_f64(x: f64) -> Self {
        DdReal::from_f64(x)
    }
    #[inline]
    fn to_f64(self) -> f64 {
        DdReal::to_f64(self)
    }
    #[inline]
    fn to_dd(self) -> DdReal {
        self
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        dd_from_ratio(num, den)
    }
    #[inline]
    fn abs(self) -> Self {
        DdReal::abs(self)
    }
    #[inline]
    fn sqrt(self) -> Self {
        DdReal::sqrt(self)
    }
    #[inline]
    fn is_finite(self) -> bool {
        DdReal::is_finite(self)
    }
    #[inline]
    fn is_nan(self) -> bool {
        DdReal::is_nan(self)
    }
    fn parse_decimal(s: &str) -> Result<Self, ParseDecimalError> {
        crate::ddarith::dd_from_string(s)
    }
    #[inline]
    fn eps() -> Self {
        DD_PARAMS.eps
    }
    #[inline]
    fn safe_min() -> Self {
        DD_PARAMS.safe_min
    }
    #[inline]
    fn ulp() -> Self {
        DD_PARAMS.precision
    }
    #[inline]
    fn overflow() -> Self {
        DD_PARAMS.overflow
    }
}
