use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use super::decimal::{self, ParseDecimalError};
use super::eft::{quick_two_sum, two_prod, two_sqr, two_sum};

/// A double-double real: the unevaluated sum `hi + lo` of two binary64 values,
/// with `hi == fl(hi + lo)`. Carries about 106 significand bits.
///
/// Non-finite values are kept as `(inf | nan, 0)`.
#[derive(Clone, Copy, Default, PartialEq)]
pub struct DdReal {
    hi: f64,
    lo: f64,
}

impl DdReal {
    pub const ZERO: DdReal = DdReal { hi: 0.0, lo: 0.0 };
    pub const ONE: DdReal = DdReal { hi: 1.0, lo: 0.0 };
    pub const NAN: DdReal = DdReal {
        hi: f64::NAN,
        lo: 0.0,
    };

    /// Builds a value from components that already satisfy the normalization
    /// invariant. Checked in debug builds.
    #[inline]
    pub const fn from_parts_unchecked(hi: f64, lo: f64) -> Self {
        DdReal { hi, lo }
    }

    /// Renormalizes an arbitrary pair `hi + lo`.
    #[inline]
    pub fn from_parts(hi: f64, lo: f64) -> Self {
        let (s, e) = two_sum(hi, lo);
        Self::finish(s, e)
    }

    #[inline(always)]
    fn finish(hi: f64, lo: f64) -> Self {
        if hi.is_finite() {
            let r = DdReal { hi, lo };
            debug_assert!(r.is_normalized(), "denormalized dd ({hi:e}, {lo:e})");
            r
        } else {
            DdReal { hi, lo: 0.0 }
        }
    }

    #[inline]
    pub const fn from_f64(x: f64) -> Self {
        DdReal { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn hi(self) -> f64 {
        self.hi
    }

    #[inline]
    pub fn lo(self) -> f64 {
        self.lo
    }

    /// Nearest binary64 value.
    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi
    }

    pub fn is_normalized(self) -> bool {
        if !self.hi.is_finite() {
            return self.lo == 0.0;
        }
        self.lo.is_finite() && self.hi + self.lo == self.hi && (self.hi != 0.0 || self.lo == 0.0)
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.hi.is_finite()
    }

    #[inline]
    pub fn is_nan(self) -> bool {
        self.hi.is_nan()
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.hi == 0.0
    }

    #[inline]
    pub fn is_sign_negative(self) -> bool {
        self.hi.is_sign_negative()
    }

    #[inline]
    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    /// Exact multiplication by `2^k`, barring overflow or underflow.
    pub fn ldexp(self, k: i32) -> Self {
        let (hi, lo) = (scale_pow2(self.hi, k), scale_pow2(self.lo, k));
        Self::finish(hi, lo)
    }

    #[inline]
    pub fn add_f64(self, b: f64) -> Self {
        let (s1, s2) = two_sum(self.hi, b);
        if !s1.is_finite() {
            return DdReal { hi: s1, lo: 0.0 };
        }
        let (hi, lo) = quick_two_sum(s1, s2 + self.lo);
        Self::finish(hi, lo)
    }

    #[inline]
    pub fn mul_f64(self, b: f64) -> Self {
        let (p1, p2) = two_prod(self.hi, b);
        if !p1.is_finite() {
            return DdReal { hi: p1, lo: 0.0 };
        }
        let (hi, lo) = quick_two_sum(p1, p2 + self.lo * b);
        Self::finish(hi, lo)
    }

    /// Exact `a + b` of two binary64 values.
    #[inline]
    pub fn sum_f64(a: f64, b: f64) -> Self {
        let (s, e) = two_sum(a, b);
        Self::finish(s, e)
    }

    /// Exact `a * b` of two binary64 values.
    #[inline]
    pub fn prod_f64(a: f64, b: f64) -> Self {
        let (p, e) = two_prod(a, b);
        Self::finish(p, e)
    }

    pub fn sqr(self) -> Self {
        let (p1, p2) = two_sqr(self.hi);
        if !p1.is_finite() {
            return DdReal { hi: p1, lo: 0.0 };
        }
        let p2 = p2 + 2.0 * self.hi * self.lo + self.lo * self.lo;
        let (hi, lo) = quick_two_sum(p1, p2);
        Self::finish(hi, lo)
    }

    pub fn recip(self) -> Self {
        DdReal::ONE / self
    }

    /// Square root. Negative input returns NaN; see [`DdReal::checked_sqrt`]
    /// for the error-returning form.
    pub fn sqrt(self) -> Self {
        self.checked_sqrt().unwrap_or(DdReal::NAN)
    }

    /// Square root with a domain error on negative input.
    ///
    /// One Newton correction on the binary64 estimate. Very large and very
    /// small inputs are rescaled by an even power of two first so that the
    /// squaring inside the correction step cannot overflow or lose bits.
    pub fn checked_sqrt(self) -> Result<Self, DomainError> {
        if self.hi == 0.0 {
            return Ok(DdReal::ZERO);
        }
        if self.hi.is_nan() {
            return Ok(self);
        }
        if self.hi < 0.0 {
            return Err(DomainError::NegativeSqrt);
        }
        if self.hi.is_infinite() {
            return Ok(self);
        }
        let k = if self.hi > 1.0e300 {
            -600
        } else if self.hi < 1.0e-280 {
            600
        } else {
            0
        };
        let a = if k != 0 { self.ldexp(k) } else { self };
        let x = 1.0 / a.hi.sqrt();
        let ax = a.hi * x;
        let corr = (a - DdReal::prod_f64(ax, ax)).hi * (x * 0.5);
        let r = DdReal::sum_f64(ax, corr);
        Ok(if k != 0 { r.ldexp(-k / 2) } else { r })
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    pub fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    /// Value with the magnitude of `self` and the sign of `sign`.
    pub fn copysign(self, sign: Self) -> Self {
        if sign.hi.is_sign_negative() == self.hi.is_sign_negative() {
            self
        } else {
            -self
        }
    }

    /// Correctly rounded parse of a decimal string.
    pub fn parse_decimal(s: &str) -> Result<Self, ParseDecimalError> {
        decimal::dd_from_string(s)
    }

    /// Signed scientific notation with `digits` significant digits.
    pub fn to_sci(self, digits: usize) -> String {
        decimal::dd_to_string(self, digits)
    }
}

fn scale_pow2(x: f64, k: i32) -> f64 {
    // Applied in steps so that neither 2^k nor an intermediate leaves the normal range.
    let mut x = x;
    let mut k = k;
    while k > 1000 {
        x *= 2f64.powi(1000);
        k -= 1000;
    }
    while k < -1000 {
        x *= 2f64.powi(-1000);
        k += 1000;
    }
    x * 2f64.powi(k)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DomainError {
    #[error("square root of a negative number")]
    NegativeSqrt,
}

impl From<f64> for DdReal {
    fn from(x: f64) -> Self {
        DdReal::from_f64(x)
    }
}

impl From<i64> for DdReal {
    fn from(n: i64) -> Self {
        let hi = n as f64;
        // |n - hi| < 2^11, so the correction is exact in both the i128 and f64 domains.
        let lo = (n as i128 - hi as i128) as f64;
        DdReal::from_parts(hi, lo)
    }
}

impl From<i32> for DdReal {
    fn from(n: i32) -> Self {
        DdReal::from_f64(n as f64)
    }
}

impl PartialOrd for DdReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi)? {
            Ordering::Equal => self.lo.partial_cmp(&other.lo),
            ord => Some(ord),
        }
    }
}

impl Neg for DdReal {
    type Output = DdReal;
    #[inline]
    fn neg(self) -> DdReal {
        DdReal {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for DdReal {
    type Output = DdReal;
    /// Accurate addition: both components are two-summed, then renormalized twice.
    #[inline]
    fn add(self, b: DdReal) -> DdReal {
        let (s1, s2) = two_sum(self.hi, b.hi);
        if !s1.is_finite() {
            return DdReal { hi: s1, lo: 0.0 };
        }
        let (t1, t2) = two_sum(self.lo, b.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        let (hi, lo) = quick_two_sum(s1, s2 + t2);
        DdReal::finish(hi, lo)
    }
}

impl Sub for DdReal {
    type Output = DdReal;
    #[inline]
    fn sub(self, b: DdReal) -> DdReal {
        self + (-b)
    }
}

impl Mul for DdReal {
    type Output = DdReal;
    #[inline]
    fn mul(self, b: DdReal) -> DdReal {
        let (p1, p2) = two_prod(self.hi, b.hi);
        if !p1.is_finite() {
            return DdReal { hi: p1, lo: 0.0 };
        }
        let p2 = p2 + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p1, p2);
        DdReal::finish(hi, lo)
    }
}

impl Div for DdReal {
    type Output = DdReal;
    /// Long division with three binary64 quotient digits.
    fn div(self, b: DdReal) -> DdReal {
        let q1 = self.hi / b.hi;
        if !q1.is_finite() || b.hi == 0.0 {
            return DdReal { hi: q1, lo: 0.0 };
        }
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (q1, q2) = quick_two_sum(q1, q2);
        DdReal { hi: q1, lo: q2 }.add_f64(q3)
    }
}

macro_rules! assign_ops {
    ($($trait:ident $method:ident $op:tt),*) => {$(
        impl $trait for DdReal {
            #[inline]
            fn $method(&mut self, rhs: DdReal) {
                *self = *self $op rhs;
            }
        }
    )*};
}

assign_ops!(AddAssign add_assign +, SubAssign sub_assign -, MulAssign mul_assign *, DivAssign div_assign /);

impl Sum for DdReal {
    fn sum<I: Iterator<Item = DdReal>>(iter: I) -> Self {
        iter.fold(DdReal::ZERO, |acc, x| acc + x)
    }
}

impl fmt::Debug for DdReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DdReal({:e}, {:e})", self.hi, self.lo)
    }
}

impl fmt::Display for DdReal {
    /// Scientific notation; the formatter precision (default 32) is the
    /// number of digits after the decimal point.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().map(|p| p + 1).unwrap_or(33);
        f.write_str(&decimal::dd_to_string(*self, digits))
    }
}

impl FromStr for DdReal {
    type Err = ParseDecimalError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        decimal::dd_from_string(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dd(s: &str) -> DdReal {
        s.parse().unwrap()
    }

    #[test]
    fn identities() {
        let a = dd("3.14159265358979323846264338327950288");
        assert_eq!(a + DdReal::ZERO, a);
        assert_eq!(a * DdReal::ONE, a);
        assert_eq!(a - a, DdReal::ZERO);
    }

    #[test]
    fn third_round_trip() {
        let r = dd("1") / dd("3") * dd("3");
        let err = (r - DdReal::ONE).abs();
        assert!(err.hi() <= 2f64.powi(-104), "err = {err:?}");
    }

    #[test]
    fn sqrt_values() {
        assert_eq!(DdReal::from(4.0).sqrt(), DdReal::from(2.0));
        assert_eq!(DdReal::ZERO.sqrt(), DdReal::ZERO);
        let r = DdReal::from(2.0).sqrt();
        assert_eq!(r.to_sci(30), "+1.41421356237309504880168872421e+00");
        assert_eq!(
            DdReal::from(-1.0).checked_sqrt(),
            Err(DomainError::NegativeSqrt)
        );
        assert!(DdReal::from(-1.0).sqrt().is_nan());
    }

    #[test]
    fn sqrt_near_overflow_and_underflow() {
        let big = DdReal::from_parts(f64::MAX, 9.979_201_547_673_598e291);
        let r = big.sqrt();
        assert!(r.is_finite());
        // Square in scaled form; r^2 itself sits on the overflow boundary.
        let scaled = big.ldexp(-1200);
        let rel = ((r.ldexp(-600).sqr() - scaled) / scaled).abs();
        assert!(rel.hi() < 1e-30);
        let tiny = DdReal::from(2f64.powi(-1000) * 3.0);
        let r = tiny.sqrt();
        let scaled = tiny.ldexp(600);
        let rel = ((r.ldexp(300).sqr() - scaled) / scaled).abs();
        assert!(rel.hi() < 1e-30);
    }

    #[test]
    fn division_by_zero_is_canonical_non_finite() {
        let q = DdReal::ONE / DdReal::ZERO;
        assert!(q.hi().is_infinite() && q.lo() == 0.0);
        let q = DdReal::ZERO / DdReal::ZERO;
        assert!(q.is_nan() && q.lo() == 0.0);
    }

    #[test]
    fn nan_and_inf_propagate() {
        let inf = DdReal::from(f64::INFINITY);
        let s = inf + DdReal::ONE;
        assert!(s.hi().is_infinite() && s.lo() == 0.0);
        let p = DdReal::NAN * DdReal::ONE;
        assert!(p.is_nan() && p.lo() == 0.0);
        let o = DdReal::from(f64::MAX) * DdReal::from(2.0);
        assert!(o.hi().is_infinite() && o.lo() == 0.0);
    }

    #[test]
    fn ordering_uses_both_components() {
        let a = DdReal::from_parts(1.0, 1e-20);
        let b = DdReal::from_parts(1.0, -1e-20);
        assert!(b < a);
        assert!(DdReal::from(-2.0) < b);
    }

    #[test]
    fn integer_conversion_is_exact() {
        let n = (1i64 << 60) + 7;
        let x = DdReal::from(n);
        assert_eq!(x.hi() as i128 + x.lo() as i128, n as i128);
    }
}
