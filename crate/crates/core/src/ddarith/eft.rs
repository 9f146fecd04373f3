//! Error-free transformations on binary64.
//!
//! Each routine returns a pair `(r, e)` where `r` is the rounded result of the
//! primitive operation and `e` is the exact rounding error, so that `r + e`
//! equals the mathematically exact result. Non-finite results are passed
//! through in `r` with `e == 0`.

/// `2^27 + 1`, the Veltkamp splitting constant for binary64.
const SPLITTER: f64 = 134_217_729.0;
/// Inputs above `2^996` are pre-scaled before splitting so `SPLITTER * a` cannot overflow.
const SPLIT_THRESHOLD: f64 = 6.696_928_794_914_17e299;
const TWO_POW_M28: f64 = 3.725_290_298_461_914e-9;
const TWO_POW_28: f64 = 268_435_456.0;

/// Which product transform [`two_prod`] was compiled to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwoProdMethod {
    /// Hardware fused multiply-add (correctly rounded).
    Fma,
    /// Dekker's algorithm with Veltkamp splitting.
    Dekker,
}

impl TwoProdMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            TwoProdMethod::Fma => "fma",
            TwoProdMethod::Dekker => "dekker",
        }
    }
}

/// The method selected at build time. FMA is used only when the target
/// guarantees the instruction; otherwise `f64::mul_add` may fall back to a
/// slow software routine, and Dekker's split is the better choice.
#[cfg(target_feature = "fma")]
pub const TWO_PROD_METHOD: TwoProdMethod = TwoProdMethod::Fma;
#[cfg(not(target_feature = "fma"))]
pub const TWO_PROD_METHOD: TwoProdMethod = TwoProdMethod::Dekker;

/// Knuth's branch-free two-sum. No ordering of `|a|`, `|b|` is required.
#[inline(always)]
pub fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    if !s.is_finite() {
        return (s, 0.0);
    }
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

/// Fast two-sum; exact only when `|a| >= |b|` (or `a == 0`).
#[inline(always)]
pub fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    if !s.is_finite() {
        return (s, 0.0);
    }
    let e = b - (s - a);
    (s, e)
}

/// Veltkamp split of `a` into two halves of at most 26 significant bits each.
#[inline(always)]
#[allow(clippy::manual_range_contains)] // NaN must stay on the unscaled path
pub fn split(a: f64) -> (f64, f64) {
    if a > SPLIT_THRESHOLD || a < -SPLIT_THRESHOLD {
        let a = a * TWO_POW_M28;
        let t = SPLITTER * a;
        let hi = t - (t - a);
        let lo = a - hi;
        (hi * TWO_POW_28, lo * TWO_POW_28)
    } else {
        let t = SPLITTER * a;
        let hi = t - (t - a);
        (hi, a - hi)
    }
}

/// Dekker's exact product.
#[inline(always)]
pub fn two_prod_dekker(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    if !p.is_finite() {
        return (p, 0.0);
    }
    let (ah, al) = split(a);
    let (bh, bl) = split(b);
    let e = ((ah * bh - p) + ah * bl + al * bh) + al * bl;
    (p, e)
}

/// Exact product via fused multiply-add. Always correct, but only fast when
/// the target has an FMA instruction.
#[inline(always)]
pub fn two_prod_fma(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    if !p.is_finite() {
        return (p, 0.0);
    }
    (p, a.mul_add(b, -p))
}

#[inline(always)]
pub fn two_prod(a: f64, b: f64) -> (f64, f64) {
    #[cfg(target_feature = "fma")]
    {
        two_prod_fma(a, b)
    }
    #[cfg(not(target_feature = "fma"))]
    {
        two_prod_dekker(a, b)
    }
}

/// Exact square of `a`.
#[inline(always)]
pub fn two_sqr(a: f64) -> (f64, f64) {
    two_prod(a, a)
}
