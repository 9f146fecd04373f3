//! Machine parameters in the style of LAPACK's `xLAMCH`.

use std::fmt::Write as _;

use super::dd::DdReal;
use crate::real::Precision;

/// The `Rlamch` constant set for one precision.
///
/// Real-valued entries are stored as [`DdReal`], which holds every binary64
/// constant exactly.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MachineParams {
    /// `E`: relative machine epsilon (unit roundoff).
    pub eps: DdReal,
    /// `S`: safe minimum, such that `1/safe_min` does not overflow.
    pub safe_min: DdReal,
    /// `B`: base of the representation.
    pub base: u32,
    /// `P`: `eps * base`.
    pub precision: DdReal,
    /// `N`: number of base digits in the significand.
    pub mantissa_digits: u32,
    /// `R`: 1 when rounding is to nearest.
    pub rounding: u32,
    /// `M`: minimum exponent before gradual underflow.
    pub min_exponent: i32,
    /// `U`: underflow threshold.
    pub underflow: DdReal,
    /// `L`: largest exponent before overflow.
    pub max_exponent: i32,
    /// `O`: overflow threshold.
    pub overflow: DdReal,
    /// `-`: reciprocal of the safe minimum.
    pub recip_safe_min: DdReal,
}

const fn dd_bits(hi: u64, lo: u64) -> DdReal {
    DdReal::from_parts_unchecked(f64::from_bits(hi), f64::from_bits(lo))
}

// Double-double values are the nearest normalized (hi, lo) pairs to the
// published 33-digit constants. Overflow is the largest normalized pair,
// (DBL_MAX, 2^970 - 2^917), so sqrt and scaling of the threshold stay finite.
const DD_EPS: DdReal = dd_bits(0x396f_ffff_ffff_fff9, 0xb2cd_4ab0_ff03_ffbd);
const DD_PREC: DdReal = dd_bits(0x397f_ffff_ffff_fff9, 0xb2dd_4ab0_ff03_ffbd);
const DD_SAFE_MIN: DdReal = dd_bits(0x0360_0000_0000_0000, 0x8000_0000_0000_0006);
const DD_OVERFLOW: DdReal = dd_bits(0x7fef_ffff_ffff_ffff, 0x7c8f_ffff_ffff_ffff);
const DD_RECIP_SAFE_MIN: DdReal = dd_bits(0x7c80_0000_0000_0000, 0x7618_8195_ffa2_2827);

pub const DD_PARAMS: MachineParams = MachineParams {
    eps: DD_EPS,
    safe_min: DD_SAFE_MIN,
    base: 2,
    precision: DD_PREC,
    mantissa_digits: 106,
    rounding: 1,
    min_exponent: -968,
    underflow: DD_SAFE_MIN,
    max_exponent: 1024,
    overflow: DD_OVERFLOW,
    recip_safe_min: DD_RECIP_SAFE_MIN,
};

pub const F64_PARAMS: MachineParams = MachineParams {
    eps: DdReal::from_f64(f64::EPSILON / 2.0),
    safe_min: DdReal::from_f64(f64::MIN_POSITIVE),
    base: 2,
    precision: DdReal::from_f64(f64::EPSILON),
    mantissa_digits: 53,
    rounding: 1,
    min_exponent: -1021,
    underflow: DdReal::from_f64(f64::MIN_POSITIVE),
    max_exponent: 1024,
    overflow: DdReal::from_f64(f64::MAX),
    recip_safe_min: DdReal::from_f64(4.494_232_837_155_79e307),
};

pub fn machine_params(precision: Precision) -> MachineParams {
    match precision {
        Precision::F64 => F64_PARAMS,
        Precision::Dd => DD_PARAMS,
    }
}

impl MachineParams {
    /// Rows in the conventional `Rlamch` order: (code, label, value).
    pub fn rows(&self) -> [(char, &'static str, DdReal); 11] {
        [
            ('E', "Epsilon", self.eps),
            ('S', "Safe minimum", self.safe_min),
            ('B', "Base", DdReal::from(self.base as f64)),
            ('P', "Precision", self.precision),
            ('N', "Number of digits in mantissa", DdReal::from(self.mantissa_digits as f64)),
            ('R', "Rounding mode", DdReal::from(self.rounding as f64)),
            ('M', "Minimum exponent:", DdReal::from(self.min_exponent as f64)),
            ('U', "Underflow threshold", self.underflow),
            ('L', "Largest exponent", DdReal::from(self.max_exponent as f64)),
            ('O', "Overflow threshold", self.overflow),
            ('-', "Reciprocal of safe minimum", self.recip_safe_min),
        ]
    }

    /// Looks up a constant by its single-letter code, like `Rlamch("E")`.
    pub fn get(&self, code: char) -> Option<DdReal> {
        let code = code.to_ascii_uppercase();
        self.rows().into_iter().find(|r| r.0 == code).map(|r| r.2)
    }

    /// The table as printed by the reference examples, one row per line.
    pub fn table(&self, digits: usize) -> String {
        let mut out = String::new();
        for (code, label, value) in self.rows() {
            let head = format!("Rlamch {code}: {label}");
            let _ = writeln!(out, "{head:<39}{}", value.to_sci(digits));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dd_constants_are_normalized() {
        for (_, _, v) in DD_PARAMS.rows() {
            assert!(v.is_normalized(), "{v:?}");
        }
    }

    #[test]
    fn invariants_hold_for_both_precisions() {
        for p in [F64_PARAMS, DD_PARAMS] {
            assert!(p.eps > DdReal::ZERO);
            assert!(p.underflow > DdReal::ZERO);
            assert!(p.overflow > p.underflow);
            assert_eq!(p.base, 2);
            assert_eq!(p.precision.hi(), 2.0 * p.eps.hi());
            let recip = DdReal::ONE / p.safe_min;
            let ulp = recip.abs().hi() * 2f64.powi(-(p.mantissa_digits as i32) + 1);
            assert!((recip - p.recip_safe_min).abs().hi() <= ulp);
        }
    }

    #[test]
    fn lookup_by_code() {
        assert_eq!(DD_PARAMS.get('e'), Some(DD_EPS));
        assert_eq!(F64_PARAMS.get('N'), Some(DdReal::from(53.0)));
        assert_eq!(DD_PARAMS.get('x'), None);
    }

    #[test]
    fn binary64_table_matches_reference_printout() {
        let expected = "\
Rlamch E: Epsilon                      +1.1102230246251565e-16
Rlamch S: Safe minimum                 +2.2250738585072014e-308
Rlamch B: Base                         +2.0000000000000000e+00
Rlamch P: Precision                    +2.2204460492503131e-16
Rlamch N: Number of digits in mantissa +5.3000000000000000e+01
Rlamch R: Rounding mode                +1.0000000000000000e+00
Rlamch M: Minimum exponent:            -1.0210000000000000e+03
Rlamch U: Underflow threshold          +2.2250738585072014e-308
Rlamch L: Largest exponent             +1.0240000000000000e+03
Rlamch O: Overflow threshold           +1.7976931348623157e+308
Rlamch -: Reciprocal of safe minimum   +4.4942328371557898e+307
";
        assert_eq!(F64_PARAMS.table(17), expected);
    }
}
