//! Error-free transforms and double-double arithmetic against exact
//! rational arithmetic.

use mpkit::ddarith::{quick_two_sum, two_prod, two_prod_dekker, two_prod_fma, two_sum};
use mpkit::DdReal;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn q(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite")
}

fn qd(x: DdReal) -> BigRational {
    q(x.hi()) + q(x.lo())
}

/// `|got - want| <= 2^-k |want|`, exactly.
fn within(got: &BigRational, want: &BigRational, k: u32) -> bool {
    let err = (got - want).abs();
    err * BigRational::from_integer(BigInt::from(1u8) << k) <= want.abs()
}

/// A binary64 with a random 53-bit significand and exponent in `[-e, e]`.
fn f64_in(e: i32) -> impl Strategy<Value = f64> {
    (any::<bool>(), 1u64 << 52..1u64 << 53, -e..=e).prop_map(|(neg, m, k)| {
        let x = m as f64 * 2f64.powi(k - 52);
        if neg {
            -x
        } else {
            x
        }
    })
}

/// A normalized double-double with a full-width tail.
fn dd_in(e: i32) -> impl Strategy<Value = DdReal> {
    (f64_in(e), -1.0f64..1.0).prop_map(|(hi, t)| DdReal::from_parts(hi, t * hi.abs() * f64::EPSILON / 2.0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn two_sum_is_exact(a in f64_in(500), b in f64_in(500)) {
        let (s, e) = two_sum(a, b);
        prop_assert_eq!(s, a + b);
        prop_assert_eq!(q(s) + q(e), q(a) + q(b));
    }

    #[test]
    fn quick_two_sum_is_exact_when_ordered(a in f64_in(500), b in f64_in(500)) {
        let (a, b) = if a.abs() >= b.abs() { (a, b) } else { (b, a) };
        let (s, e) = quick_two_sum(a, b);
        prop_assert_eq!(q(s) + q(e), q(a) + q(b));
    }

    #[test]
    fn two_prod_is_exact(a in f64_in(400), b in f64_in(400)) {
        let exact = q(a) * q(b);
        for (p, e) in [two_prod(a, b), two_prod_dekker(a, b), two_prod_fma(a, b)] {
            prop_assert_eq!(p, a * b);
            prop_assert_eq!(q(p) + q(e), exact.clone());
        }
    }

    #[test]
    fn dd_add_sub(a in dd_in(300), b in dd_in(300)) {
        let (qa, qb) = (qd(a), qd(b));
        let sum = qa.clone() + qb.clone();
        let diff = qa - qb;
        for (got, want) in [(a + b, sum), (a - b, diff)] {
            prop_assert!(within(&qd(got), &want, 99), "{:?} {:?}", a, b);
        }
    }

    #[test]
    fn dd_add_near_cancellation(a in dd_in(300), ulps in -4i32..=4, t in -1.0f64..1.0) {
        // b agrees with -a in the leading word up to a few ulps.
        let hi = -a.hi() + ulps as f64 * a.hi().abs() * f64::EPSILON;
        let b = DdReal::from_parts(hi, t * hi.abs() * f64::EPSILON / 2.0);
        let want = qd(a) + qd(b);
        let got = a + b;
        if want.is_zero() {
            prop_assert!(got.is_zero());
        } else {
            prop_assert!(within(&qd(got), &want, 99));
        }
    }

    #[test]
    fn dd_mul_div(a in dd_in(200), b in dd_in(200)) {
        let (qa, qb) = (qd(a), qd(b));
        prop_assert!(within(&qd(a * b), &(qa.clone() * qb.clone()), 99));
        prop_assert!(within(&qd(a / b), &(qa / qb), 99));
    }

    #[test]
    fn dd_sqrt(a in dd_in(600).prop_map(|x| x.abs())) {
        let r = a.sqrt();
        let sq = qd(r) * qd(r);
        // (1 + d)^2 - 1 ~ 2d, so 2^-98 on the square is 2^-99 on the root.
        prop_assert!(within(&sq, &qd(a), 98));
    }

    #[test]
    fn dd_results_are_normalized(a in dd_in(200), b in dd_in(200)) {
        for r in [a + b, a - b, a * b, a / b, a.abs().sqrt()] {
            prop_assert!(r.is_normalized());
            prop_assert!(r.lo() == 0.0 || r.lo().abs() <= r.hi().abs() * f64::EPSILON / 2.0);
        }
    }
}

#[test]
fn exact_cancellation_is_zero() {
    let a = DdReal::from_parts(1.0, 2f64.powi(-60));
    let d = a - a;
    assert!(d.is_zero());
    assert!(qd(d).is_zero());
}
