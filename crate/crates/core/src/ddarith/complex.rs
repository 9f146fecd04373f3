use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use super::dd::DdReal;
use super::decimal::ParseDecimalError;

/// Complex number over double-double components.
#[derive(Clone, Copy, Default, PartialEq)]
pub struct DdComplex {
    pub re: DdReal,
    pub im: DdReal,
}

impl DdComplex {
    pub const ZERO: DdComplex = DdComplex {
        re: DdReal::ZERO,
        im: DdReal::ZERO,
    };
    pub const ONE: DdComplex = DdComplex {
        re: DdReal::ONE,
        im: DdReal::ZERO,
    };

    pub const fn new(re: DdReal, im: DdReal) -> Self {
        DdComplex { re, im }
    }

    pub fn from_f64(re: f64, im: f64) -> Self {
        DdComplex::new(DdReal::from(re), DdReal::from(im))
    }

    /// Exact-decimal construction of both parts.
    pub fn parse(re: &str, im: &str) -> Result<Self, ParseDecimalError> {
        Ok(DdComplex::new(re.parse()?, im.parse()?))
    }

    pub fn conj(self) -> Self {
        DdComplex::new(self.re, -self.im)
    }

    pub fn is_zero(self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// Modulus, scaled by the larger component so it cannot overflow early.
    pub fn abs(self) -> DdReal {
        let a = self.re.abs();
        let b = self.im.abs();
        let (big, small) = if a >= b { (a, b) } else { (b, a) };
        if big.is_zero() || !big.is_finite() {
            return big;
        }
        let r = small / big;
        big * (DdReal::ONE + r * r).sqrt()
    }

    pub fn scale(self, s: DdReal) -> Self {
        DdComplex::new(self.re * s, self.im * s)
    }
}

impl Neg for DdComplex {
    type Output = DdComplex;
    fn neg(self) -> DdComplex {
        DdComplex::new(-self.re, -self.im)
    }
}

impl Add for DdComplex {
    type Output = DdComplex;
    #[inline]
    fn add(self, b: DdComplex) -> DdComplex {
        DdComplex::new(self.re + b.re, self.im + b.im)
    }
}

impl Sub for DdComplex {
    type Output = DdComplex;
    #[inline]
    fn sub(self, b: DdComplex) -> DdComplex {
        DdComplex::new(self.re - b.re, self.im - b.im)
    }
}

impl Mul for DdComplex {
    type Output = DdComplex;
    #[inline]
    fn mul(self, b: DdComplex) -> DdComplex {
        DdComplex::new(
            self.re * b.re - self.im * b.im,
            self.re * b.im + self.im * b.re,
        )
    }
}

impl Div for DdComplex {
    type Output = DdComplex;
    /// Smith's algorithm: divides through by the larger component of the
    /// denominator so that neither `|b|^2` nor the cross terms over/underflow.
    fn div(self, b: DdComplex) -> DdComplex {
        if b.is_zero() {
            return DdComplex::new(self.re / DdReal::ZERO, self.im / DdReal::ZERO);
        }
        if b.re.abs() >= b.im.abs() {
            let r = b.im / b.re;
            let den = b.re + b.im * r;
            DdComplex::new(
                (self.re + self.im * r) / den,
                (self.im - self.re * r) / den,
            )
        } else {
            let r = b.re / b.im;
            let den = b.re * r + b.im;
            DdComplex::new(
                (self.re * r + self.im) / den,
                (self.im * r - self.re) / den,
            )
        }
    }
}

impl AddAssign for DdComplex {
    fn add_assign(&mut self, rhs: DdComplex) {
        *self = *self + rhs;
    }
}

impl SubAssign for DdComplex {
    fn sub_assign(&mut self, rhs: DdComplex) {
        *self = *self - rhs;
    }
}

impl MulAssign for DdComplex {
    fn mul_assign(&mut self, rhs: DdComplex) {
        *self = *self * rhs;
    }
}

impl fmt::Debug for DdComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?})", self.re, self.im)
    }
}

impl fmt::Display for DdComplex {
    /// `±re±imi`, both parts in scientific notation.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().map(|p| p + 1).unwrap_or(33);
        write!(f, "{}{}i", self.re.to_sci(digits), self.im.to_sci(digits))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: &str, im: &str) -> DdComplex {
        DdComplex::parse(re, im).unwrap()
    }

    #[test]
    fn identities() {
        let z = c("3", "-1.2");
        assert_eq!(z * DdComplex::ONE, z);
        assert_eq!(z + DdComplex::ZERO, z);
        assert_eq!(z.conj().conj(), z);
    }

    #[test]
    fn conjugate_product() {
        assert_eq!(c("1", "1") * c("1", "-1"), c("2", "0"));
    }

    #[test]
    fn modulus() {
        assert_eq!(c("3", "4").abs(), DdReal::from(5.0));
        let big = DdComplex::from_f64(1e300, 1e300);
        assert!(big.abs().is_finite());
    }

    #[test]
    fn division_is_robust_to_magnitude_disparity() {
        let a = DdComplex::from_f64(1.0, 1.0);
        let b = DdComplex::from_f64(1e-100, 1e100);
        let q = a / b;
        assert!(q.re.is_finite() && q.im.is_finite());
        let back = q * b;
        assert!(((back.re - a.re).abs()).hi() < 1e-30);
        assert!(((back.im - a.im).abs()).hi() < 1e-30);
    }

    #[test]
    fn division_by_zero_is_non_finite() {
        let q = c("1", "2") / DdComplex::ZERO;
        assert!(!q.re.is_finite() && !q.im.is_finite());
        assert_eq!(q.re.lo(), 0.0);
    }

    #[test]
    fn display() {
        assert_eq!(format!("{:.2}", c("3", "-1.2")), "+3.00e+00-1.20e+00i");
    }
}
