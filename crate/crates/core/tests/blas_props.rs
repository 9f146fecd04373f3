use mpkit::mpblas::{cgemm, raxpy, raxpy_par, rdot, rdot_par, rgemm, rgemm_par, rgemv, rscal, IndexInt};
use mpkit::{DdComplex, DdReal, Real};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn dd_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<DdReal> {
    (0..n).map(|_| DdReal::from(rng.gen_range(-1.0..1.0)) / DdReal::from(rng.gen_range(1.0..7.0))).collect()
}

/// Lays `v` out with increment `inc` as the reference BLAS reads it:
/// element `i` sits at `(i - 1) * inc` from the start, counted from the far
/// end when `inc < 0`. Gaps hold `fill`.
fn strided<T: Copy>(v: &[T], inc: IndexInt, fill: T) -> Vec<T> {
    let n = v.len();
    let step = inc.unsigned_abs() as usize;
    let mut out = vec![fill; 1 + n.saturating_sub(1) * step];
    for (i, &x) in v.iter().enumerate() {
        let pos = if inc > 0 { i * step } else { (n - 1 - i) * step };
        out[pos] = x;
    }
    out
}

fn gather<T: Copy>(buf: &[T], n: usize, inc: IndexInt) -> Vec<T> {
    let step = inc.unsigned_abs() as usize;
    (0..n).map(|i| buf[if inc > 0 { i * step } else { (n - 1 - i) * step }]).collect()
}

fn inc_strategy() -> impl Strategy<Value = IndexInt> {
    prop_oneof![Just(1), Just(2), Just(3), Just(-1), Just(-2), Just(-3)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Strided access gives bitwise the same result as the packed vector.
    #[test]
    fn stride_law(seed in any::<u64>(), n in 0usize..40, incx in inc_strategy(), incy in inc_strategy()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (x, y) = (dd_vec(&mut rng, n), dd_vec(&mut rng, n));
        let alpha = DdReal::from(rng.gen_range(-2.0..2.0));
        let nn = n as IndexInt;
        let fill = DdReal::from(1e300);
        let (xs, mut ys) = (strided(&x, incx, fill), strided(&y, incy, fill));

        prop_assert_eq!(rdot(nn, &xs, incx, &ys, incy), rdot(nn, &x, 1, &y, 1));

        let mut packed = y.clone();
        raxpy(nn, alpha, &x, 1, &mut packed, 1);
        raxpy(nn, alpha, &xs, incx, &mut ys, incy);
        prop_assert_eq!(gather(&ys, n, incy), packed);

        let mut packed = x.clone();
        let mut xs2 = strided(&x, incx.abs(), fill);
        rscal(nn, alpha, &mut packed, 1);
        rscal(nn, alpha, &mut xs2, incx.abs());
        prop_assert_eq!(gather(&xs2, n, incx.abs()), packed);
    }

    #[test]
    fn gemv_stride_law(seed in any::<u64>(), m in 1usize..12, n in 1usize..12, incx in inc_strategy(), incy in inc_strategy(), trans in prop::sample::select(vec!['N', 'T'])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = dd_vec(&mut rng, m * n);
        let (lx, ly) = if trans == 'N' { (n, m) } else { (m, n) };
        let (x, y) = (dd_vec(&mut rng, lx), dd_vec(&mut rng, ly));
        let (alpha, beta) = (DdReal::from(0.75), DdReal::from(-1.5));
        let mut packed = y.clone();
        rgemv(trans, m as IndexInt, n as IndexInt, alpha, &a, m as IndexInt, &x, 1, beta, &mut packed, 1).unwrap();
        let xs = strided(&x, incx, DdReal::NAN);
        let mut ys = strided(&y, incy, DdReal::NAN);
        rgemv(trans, m as IndexInt, n as IndexInt, alpha, &a, m as IndexInt, &xs, incx, beta, &mut ys, incy).unwrap();
        prop_assert_eq!(gather(&ys, ly, incy), packed);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    /// Parallel kernels are bitwise identical to the sequential ones.
    #[test]
    fn parallel_matches_sequential(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = 100_000;
        let (x, y) = (dd_vec(&mut rng, n), dd_vec(&mut rng, n));
        let alpha = DdReal::from(rng.gen_range(-2.0..2.0));
        let dot = rdot(n as IndexInt, &x, 1, &y, 1);
        let mut axpy = y.clone();
        raxpy(n as IndexInt, alpha, &x, 1, &mut axpy, 1);

        let d = 64;
        let (a, b, c0) = (dd_vec(&mut rng, d * d), dd_vec(&mut rng, d * d), dd_vec(&mut rng, d * d));
        let beta = DdReal::from(0.5);
        let mut gemm = c0.clone();
        rgemm('N', 'T', 64, 64, 64, alpha, &a, 64, &b, 64, beta, &mut gemm, 64).unwrap();

        for t in [1, 2, 4, 8] {
            prop_assert_eq!(rdot_par(n as IndexInt, &x, 1, &y, 1, t), dot);
            let mut yp = y.clone();
            raxpy_par(n as IndexInt, alpha, &x, 1, &mut yp, 1, t);
            prop_assert!(yp == axpy);
            let mut cp = c0.clone();
            rgemm_par('N', 'T', 64, 64, 64, alpha, &a, 64, &b, 64, beta, &mut cp, 64, t).unwrap();
            prop_assert!(cp == gemm);
        }
    }
}

fn q(x: DdReal) -> BigRational {
    BigRational::from_float(x.hi()).unwrap() + BigRational::from_float(x.lo()).unwrap()
}

type QC = (BigRational, BigRational);

fn qc(z: DdComplex) -> QC {
    (q(z.re), q(z.im))
}

fn cmul(a: &QC, b: &QC) -> QC {
    (&a.0 * &b.0 - &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0)
}

/// Exact `alpha * A * B + beta * C` (column-major, square, no transposes)
/// and the magnitude sum of its terms per entry.
fn cgemm_exact(n: usize, alpha: DdComplex, a: &[DdComplex], b: &[DdComplex], beta: DdComplex, c: &[DdComplex]) -> Vec<(QC, BigRational)> {
    let abs1 = |z: &QC| z.0.abs() + z.1.abs();
    let (qa, qbeta) = (qc(alpha), qc(beta));
    let mut out = Vec::new();
    for j in 0..n {
        for i in 0..n {
            let mut acc: QC = (BigRational::zero(), BigRational::zero());
            let mut mag = BigRational::zero();
            for l in 0..n {
                let p = cmul(&qa, &cmul(&qc(a[i + l * n]), &qc(b[l + j * n])));
                mag += abs1(&p);
                acc = (acc.0 + p.0, acc.1 + p.1);
            }
            let t = cmul(&qbeta, &qc(c[i + j * n]));
            mag += abs1(&t);
            out.push(((acc.0 + t.0, acc.1 + t.1), mag));
        }
    }
    out
}

fn to_f64(x: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn cgemm_matches_rational_oracle(seed in any::<u64>(), n in 1usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut z = |k: usize| -> Vec<DdComplex> {
            let re = dd_vec(&mut rng, k);
            let im = dd_vec(&mut rng, k);
            re.into_iter().zip(im).map(|(r, i)| DdComplex::new(r, i)).collect()
        };
        let (a, b, c) = (z(n * n), z(n * n), z(n * n));
        let ab = z(2);
        let (alpha, beta) = (ab[0], ab[1]);
        let mut got = c.clone();
        let nn = n as IndexInt;
        cgemm('N', 'N', nn, nn, nn, alpha, &a, nn, &b, nn, beta, &mut got, nn).unwrap();
        for (g, (want, mag)) in got.iter().zip(cgemm_exact(n, alpha, &a, &b, beta, &c)) {
            // Each term carries a few dd roundings; the bound scales with
            // the number of terms and their magnitude.
            let bound = to_f64(&mag) * (4 * n + 8) as f64 * DdReal::eps().hi();
            prop_assert!(to_f64(&(q(g.re) - want.0).abs()) <= bound);
            prop_assert!(to_f64(&(q(g.im) - want.1).abs()) <= bound);
        }
    }
}

/// Exact value of a plain decimal literal.
fn decimal(s: &str) -> BigRational {
    let (neg, body) = s.strip_prefix('-').map_or((false, s), |b| (true, b));
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    let num: BigInt = format!("{int}{frac}").parse().unwrap();
    let den = BigInt::from(10u8).pow(frac.len() as u32);
    let r = BigRational::new(num, den);
    if neg {
        -r
    } else {
        r
    }
}

#[test]
fn cgemm_decimal_instance_matches_exact_answer() {
    let a = [["1", "-1", "8", "2.2", "0", "-10"], ["2", "0", "10", "0", "8.1", "2.2"], ["-9", "3", "-5", "3", "-1", "0"]];
    let b = [["9", "0", "8", "-0.01", "3", "1.001"], ["3", "-8", "-11", "0.1", "8", "0.00001"], ["-8", "1", "6", "0", "1.1", "1"]];
    let c = [["3", "1", "-3", "9.99", "-9", "-11"], ["8", "-1", "4", "4.44", "8", "9"], ["6", "0", "-1", "0", "-2", "1"]];
    let to_dd = |rows: &[[&str; 6]; 3]| -> Vec<DdComplex> {
        let mut v = vec![DdComplex::ZERO; 9];
        for (i, r) in rows.iter().enumerate() {
            for j in 0..3 {
                v[i + 3 * j] = DdComplex::parse(r[2 * j], r[2 * j + 1]).unwrap();
            }
        }
        v
    };
    let to_q = |rows: &[[&str; 6]; 3]| -> Vec<QC> {
        let mut v = vec![(BigRational::zero(), BigRational::zero()); 9];
        for (i, r) in rows.iter().enumerate() {
            for j in 0..3 {
                v[i + 3 * j] = (decimal(r[2 * j]), decimal(r[2 * j + 1]));
            }
        }
        v
    };
    let alpha = ("3", "-1.2");
    let beta = ("-2", "-2");
    let mut got = to_dd(&c);
    cgemm(
        'N',
        'N',
        3,
        3,
        3,
        DdComplex::parse(alpha.0, alpha.1).unwrap(),
        &to_dd(&a),
        3,
        &to_dd(&b),
        3,
        DdComplex::parse(beta.0, beta.1).unwrap(),
        &mut got,
        3,
    )
    .unwrap();

    // The oracle works on the decimal inputs themselves, not their dd roundings.
    let (qa, qb, qcm) = (to_q(&a), to_q(&b), to_q(&c));
    let (qal, qbe) = ((decimal(alpha.0), decimal(alpha.1)), (decimal(beta.0), decimal(beta.1)));
    let tol = BigRational::new(BigInt::from(1), BigInt::from(10u8).pow(28));
    for j in 0..3 {
        for i in 0..3 {
            let mut acc = cmul(&qbe, &qcm[i + 3 * j]);
            for l in 0..3 {
                let p = cmul(&qal, &cmul(&qa[i + 3 * l], &qb[l + 3 * j]));
                acc = (acc.0 + p.0, acc.1 + p.1);
            }
            let g = qc(got[i + 3 * j]);
            assert!((g.0 - &acc.0).abs() <= tol && (g.1 - &acc.1).abs() <= tol, "entry ({i},{j})");
        }
    }
    // Spot values of the closed form.
    let g00 = qc(got[0]);
    assert!((g00.0 - decimal("194.12")).abs() <= tol && (g00.1 - decimal("-39.92")).abs() <= tol);
    let g22 = qc(got[8]);
    assert!((g22.0 - decimal("-179.71995")).abs() <= tol && (g22.1 - decimal("156.296486")).abs() <= tol);
}
