//! Exact decimal conversion for double-double values.
//!
//! Both directions go through big integers, so parsing rounds correctly to a
//! 106-bit significand and printing rounds correctly to the requested number
//! of significant digits.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use super::dd::DdReal;

/// Significand width targeted by the parser.
const DD_BITS: u64 = 106;
/// Exponent of the smallest binary64 subnormal.
const MIN_LSB: i64 = -1074;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseDecimalError {
    #[error("empty decimal string")]
    Empty,
    #[error("invalid character {found:?} at offset {offset} in {input:?}")]
    InvalidChar {
        input: String,
        offset: usize,
        found: char,
    },
    #[error("no digits in {0:?}")]
    NoDigits(String),
    #[error("malformed exponent in {0:?}")]
    BadExponent(String),
}

/// Parses `[+-]digits[.digits][(e|E)[+-]digits]` and rounds it to the nearest
/// double-double whose significand fits in 106 bits (ties to even).
pub fn dd_from_string(s: &str) -> Result<DdReal, ParseDecimalError> {
    let t = s.trim();
    if t.is_empty() {
        return Err(ParseDecimalError::Empty);
    }
    let bytes = t.as_bytes();
    let mut pos = 0;
    let mut negative = false;
    if bytes[0] == b'+' || bytes[0] == b'-' {
        negative = bytes[0] == b'-';
        pos = 1;
    }
    let mut digits = String::new();
    let mut frac_len: i64 = 0;
    let mut seen_point = false;
    let mut any_digit = false;
    while pos < bytes.len() {
        let c = bytes[pos];
        match c {
            b'0'..=b'9' => {
                any_digit = true;
                digits.push(c as char);
                if seen_point {
                    frac_len += 1;
                }
            }
            b'.' if !seen_point => seen_point = true,
            b'e' | b'E' => break,
            _ => {
                return Err(ParseDecimalError::InvalidChar {
                    input: s.to_string(),
                    offset: pos,
                    found: t[pos..].chars().next().unwrap_or('?'),
                })
            }
        }
        pos += 1;
    }
    if !any_digit {
        return Err(ParseDecimalError::NoDigits(s.to_string()));
    }
    let mut exp10: i64 = 0;
    if pos < bytes.len() {
        let rest = &t[pos + 1..];
        let (neg_exp, body) = match rest.as_bytes().first() {
            Some(b'-') => (true, &rest[1..]),
            Some(b'+') => (false, &rest[1..]),
            _ => (false, rest),
        };
        if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
            return Err(ParseDecimalError::BadExponent(s.to_string()));
        }
        // Saturate absurd exponents; anything past 10^±10^6 is 0 or inf anyway.
        let significant = body.trim_start_matches('0');
        let mag: i64 = match significant.len() {
            0 => 0,
            1..=12 => significant.parse::<i64>().expect("ascii digits").min(1_000_000_000),
            _ => 1_000_000_000,
        };
        exp10 = if neg_exp { -mag } else { mag };
    }

    let signed_zero = if negative {
        DdReal::from_f64(-0.0)
    } else {
        DdReal::ZERO
    };
    let trimmed = digits.trim_start_matches('0');
    if trimmed.is_empty() {
        return Ok(signed_zero);
    }
    let mantissa: BigUint = trimmed.parse().expect("digit string");
    let exp10 = exp10 - frac_len;
    // Decimal exponent of the leading digit.
    let lead = exp10 + trimmed.len() as i64 - 1;
    if lead > 309 {
        let inf = DdReal::from_f64(f64::INFINITY);
        return Ok(if negative { -inf } else { inf });
    }
    if lead < -325 {
        return Ok(signed_zero);
    }
    let (num, den) = if exp10 >= 0 {
        (mantissa * pow10(exp10 as u64), BigUint::one())
    } else {
        (mantissa, pow10((-exp10) as u64))
    };
    let r = round_ratio(&num, &den);
    Ok(if negative { -r } else { r })
}

fn pow10(k: u64) -> BigUint {
    BigUint::from(10u32).pow(k)
}

/// Rounds the positive rational `num / den` to the nearest value with a
/// 106-bit significand (granularity never finer than 2^-1074) and splits it
/// into a normalized `(hi, lo)` pair.
pub(crate) fn round_ratio(num: &BigUint, den: &BigUint) -> DdReal {
    if num.is_zero() {
        return DdReal::ZERO;
    }
    // Find e with 2^e <= num/den < 2^(e+1).
    let mut e = num.bits() as i64 - den.bits() as i64;
    if shifted_cmp(num, den, e) == std::cmp::Ordering::Less {
        e -= 1;
    }
    let lsb = (e - (DD_BITS as i64 - 1)).max(MIN_LSB);
    if e > 1024 {
        return DdReal::from_f64(f64::INFINITY);
    }
    // q = round(num / den / 2^lsb)
    let (n2, d2) = if lsb >= 0 {
        (num.clone(), den << (lsb as u64))
    } else {
        (num << ((-lsb) as u64), den.clone())
    };
    let (q, r) = n2.div_rem(&d2);
    let twice_r = r << 1u32;
    let q = match twice_r.cmp(&d2) {
        std::cmp::Ordering::Greater => q + 1u32,
        std::cmp::Ordering::Equal if q.bit(0) => q + 1u32,
        _ => q,
    };
    let m = q.to_u128().expect("significand fits in 107 bits");
    split_u128(m, lsb)
}

/// Returns 2^e * den compared with num, i.e. sign of num/den - 2^e reversed.
fn shifted_cmp(num: &BigUint, den: &BigUint, e: i64) -> std::cmp::Ordering {
    if e >= 0 {
        num.cmp(&(den << (e as u64)))
    } else {
        (num << ((-e) as u64)).cmp(den)
    }
}

/// Splits the exact value `m * 2^lsb` (m < 2^108) into `hi = RN(value)` and
/// the exact remainder `lo`.
fn split_u128(m: u128, lsb: i64) -> DdReal {
    if m == 0 {
        return DdReal::ZERO;
    }
    let nbits = 128 - m.leading_zeros() as i64;
    let top = lsb + nbits - 1;
    let hi_lsb = (top - 52).max(MIN_LSB);
    let shift = hi_lsb - lsb;
    let (hi_m, rem): (u128, i128) = if shift <= 0 {
        (m, 0)
    } else {
        let s = shift as u32;
        let q = m >> s;
        let r = m - (q << s);
        let half = 1u128 << (s - 1);
        let q = if r > half || (r == half && q & 1 == 1) {
            q + 1
        } else {
            q
        };
        (q, m as i128 - (q << s) as i128)
    };
    let hi_lsb = if shift <= 0 { lsb } else { hi_lsb };
    let hi = ldexp_exact(hi_m as f64, hi_lsb);
    if !hi.is_finite() {
        return DdReal::from_f64(f64::INFINITY);
    }
    let lo = ldexp_exact(rem as f64, lsb);
    DdReal::from_parts_unchecked(hi, lo)
}

fn ldexp_exact(x: f64, k: i64) -> f64 {
    let mut x = x;
    let mut k = k;
    while k > 1000 {
        x *= 2f64.powi(1000);
        k -= 1000;
    }
    while k < -1000 {
        // Scale in two steps so the result is exact when it lands in the subnormal range.
        if k < -1000 - 60 {
            x *= 2f64.powi(-1000);
            k += 1000;
        } else {
            x *= 2f64.powi(-60);
            k += 60;
        }
    }
    x * 2f64.powi(k as i32)
}

/// Exact value of a finite f64 as `mantissa * 2^exp`.
fn decompose(x: f64) -> (i64, i64) {
    if x == 0.0 {
        return (0, 0);
    }
    let bits = x.to_bits();
    let sign = if bits >> 63 == 1 { -1 } else { 1 };
    let exp_bits = ((bits >> 52) & 0x7ff) as i64;
    let frac = (bits & ((1u64 << 52) - 1)) as i64;
    let (m, e) = if exp_bits == 0 {
        (frac, -1074)
    } else {
        (frac | (1i64 << 52), exp_bits - 1075)
    };
    (sign * m, e)
}

/// Exact value of `a` as a signed big integer times a power of two.
pub(crate) fn exact_binary(a: DdReal) -> (BigInt, i64) {
    let (mh, eh) = decompose(a.hi());
    let (ml, el) = decompose(a.lo());
    if ml == 0 {
        return (BigInt::from(mh), eh);
    }
    if mh == 0 {
        return (BigInt::from(ml), el);
    }
    let base = eh.min(el);
    let n = (BigInt::from(mh) << ((eh - base) as u64)) + (BigInt::from(ml) << ((el - base) as u64));
    (n, base)
}

/// Formats `a` as `±d.ddd…e±XX` with `digits` significant digits (clamped to
/// 1..=34), rounding the exact value half-to-even.
pub fn dd_to_string(a: DdReal, digits: usize) -> String {
    let digits = digits.clamp(1, 34);
    if a.is_nan() {
        return "nan".to_string();
    }
    let sign = if a.hi().is_sign_negative() { '-' } else { '+' };
    if a.hi().is_infinite() {
        return format!("{sign}inf");
    }
    if a.is_zero() {
        return format_parts(sign, &"0".repeat(digits), 0);
    }
    let (n, e2) = exact_binary(a);
    let mag = n.abs().to_biguint().expect("non-negative");
    let mut k = a.hi().abs().log10().floor() as i64;
    let lower = pow10(digits as u64 - 1);
    let upper = pow10(digits as u64);
    loop {
        let t = digits as i64 - 1 - k;
        let mut num = mag.clone();
        let mut den = BigUint::one();
        if e2 >= 0 {
            num <<= e2 as u64;
        } else {
            den <<= (-e2) as u64;
        }
        if t >= 0 {
            num *= pow10(t as u64);
        } else {
            den *= pow10((-t) as u64);
        }
        let (q, r) = num.div_rem(&den);
        let twice_r = r << 1u32;
        let q = match twice_r.cmp(&den) {
            std::cmp::Ordering::Greater => q + 1u32,
            std::cmp::Ordering::Equal if q.bit(0) => q + 1u32,
            _ => q,
        };
        if q >= upper {
            k += 1;
            continue;
        }
        if q < lower {
            k -= 1;
            continue;
        }
        return format_parts(sign, &q.to_str_radix(10), k);
    }
}

fn format_parts(sign: char, digits: &str, exp10: i64) -> String {
    let (lead, rest) = digits.split_at(1);
    let mut out = String::with_capacity(digits.len() + 8);
    out.push(sign);
    out.push_str(lead);
    if !rest.is_empty() {
        out.push('.');
        out.push_str(rest);
    }
    out.push('e');
    out.push(if exp10 < 0 { '-' } else { '+' });
    out.push_str(&format!("{:02}", exp10.abs()));
    out
}

/// Nearest double-double (106-bit significand) to `num / den`.
pub fn dd_from_ratio(num: i64, den: i64) -> DdReal {
    if den == 0 {
        return DdReal::from_f64(num as f64) / DdReal::ZERO;
    }
    let negative = (num < 0) != (den < 0);
    let n = BigUint::from(num.unsigned_abs());
    let d = BigUint::from(den.unsigned_abs());
    let r = round_ratio(&n, &d);
    if negative {
        -r
    } else {
        r
    }
}

/// Exact value of `a` as a (numerator, denominator) pair of big integers.
pub fn dd_to_ratio(a: DdReal) -> (BigInt, BigInt) {
    let (n, e) = exact_binary(a);
    if e >= 0 {
        (n << (e as u64), BigInt::one())
    } else {
        (n, BigInt::from_biguint(Sign::Plus, BigUint::one() << ((-e) as u64)))
    }
}
