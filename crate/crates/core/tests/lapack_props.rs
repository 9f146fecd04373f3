use mpkit::mpblas::{IndexInt, Matrix};
use mpkit::mplapack::{
    gesvd, inverse, rgees, rgees_lwork, rgesvd, rgesvd_lwork, rgetrf, rgetri, rgetri_lwork, rsyev, rsyev_lwork,
};
use mpkit::testkit::{gen_matrix, residual_svd, MatrixGenSpec, MatrixKind};
use mpkit::{DdReal, Real};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;

fn random<T: Real>(kind: MatrixKind, m: usize, n: usize, seed: u64) -> Matrix<T> {
    gen_matrix(&MatrixGenSpec { kind, m, n, seed }).unwrap()
}

/// Query with `lwork = -1`, then call with exactly the reported size and
/// with one less. Returns the reported size.
fn query_protocol<T: Real>(name: &str, expected: IndexInt, call: impl Fn(&mut [T], IndexInt) -> Result<IndexInt, mpkit::mpblas::BlasError>) {
    let mut probe = [T::zero()];
    assert_eq!(call(&mut probe, -1), Ok(0), "{name} query");
    let size = probe[0].to_f64() as IndexInt;
    assert_eq!(size, expected, "{name} reported size");
    let mut work = vec![T::zero(); size as usize];
    assert_eq!(call(&mut work, size), Ok(0), "{name} with reported size");
    let mut short = vec![T::zero(); size as usize - 1];
    assert!(call(&mut short, size - 1).is_err(), "{name} with lwork - 1");
}

fn workspace_protocol_at<T: Real>(n: usize) {
    let ni = n as IndexInt;
    let a: Matrix<T> = random(MatrixKind::RandomUniform, n, n, n as u64);
    let s: Matrix<T> = random(MatrixKind::RandomSymmetric, n, n, n as u64);

    let mut lu = a.clone();
    let mut ipiv = vec![0; n];
    assert_eq!(rgetrf(ni, ni, lu.as_mut_slice(), ni, &mut ipiv), Ok(0));
    query_protocol::<T>("Rgetri", rgetri_lwork(ni), |w, l| {
        let mut f = lu.clone();
        rgetri(ni, f.as_mut_slice(), ni, &ipiv, w, l)
    });
    query_protocol::<T>("Rsyev", rsyev_lwork(ni), |w, l| {
        let mut z = s.clone();
        let mut ev = vec![T::zero(); n];
        rsyev('V', 'U', ni, z.as_mut_slice(), ni, &mut ev, w, l)
    });
    query_protocol::<T>("Rgees", rgees_lwork(ni), |w, l| {
        let mut t = a.clone();
        let (mut wr, mut wi) = (vec![T::zero(); n], vec![T::zero(); n]);
        let mut vs = vec![T::zero(); n * n];
        rgees('V', ni, t.as_mut_slice(), ni, &mut wr, &mut wi, &mut vs, ni, w, l)
    });
    for (m, nn) in [(n, n), (n + 3, n), (n, n + 2)] {
        let r: Matrix<T> = random(MatrixKind::RandomUniform, m, nn, (m * 100 + nn) as u64);
        let (mi, nni) = (m as IndexInt, nn as IndexInt);
        query_protocol::<T>("Rgesvd", rgesvd_lwork(mi, nni), |w, l| {
            let mut x = r.clone();
            let mut sv = vec![T::zero(); m.min(nn)];
            let (mut u, mut vt) = (vec![T::zero(); m * m], vec![T::zero(); nn * nn]);
            rgesvd('A', 'A', mi, nni, x.as_mut_slice(), mi, &mut sv, &mut u, mi, &mut vt, nni, w, l)
        });
    }
}

#[test]
fn workspace_query_then_call_f64() {
    for n in 1..=50 {
        workspace_protocol_at::<f64>(n);
    }
}

#[test]
fn workspace_query_then_call_dd() {
    for n in [1, 2, 3, 7, 16, 31] {
        workspace_protocol_at::<DdReal>(n);
    }
}

#[test]
fn empty_problems_are_quick_returns() {
    let mut w = [0.0f64; 1];
    assert_eq!(rgetrf::<f64>(0, 0, &mut [], 1, &mut []), Ok(0));
    assert_eq!(rsyev::<f64>('V', 'U', 0, &mut [], 1, &mut [], &mut w, 1), Ok(0));
    assert_eq!(rgesvd::<f64>('A', 'A', 0, 3, &mut [], 1, &mut [], &mut [], 1, &mut [0.0; 9], 3, &mut [0.0; 3], 3), Ok(0));
    let r = gesvd(&Matrix::<DdReal>::zeros(0, 0), true).unwrap();
    assert!(r.s.is_empty());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn rectangular_svd_ratios(seed in any::<u64>(), m in 1usize..=40, n in 1usize..=40) {
        let a: Matrix<DdReal> = random(MatrixKind::RandomUniform, m, n, seed);
        let r = gesvd(&a, true).unwrap();
        prop_assert!(r.s.windows(2).all(|w| w[0] >= w[1]));
        prop_assert!(r.s.iter().all(|&s| s >= DdReal::ZERO));
        for rep in residual_svd(&a, &r.s, r.u.as_ref().unwrap(), r.vt.as_ref().unwrap()).unwrap() {
            prop_assert!(rep.passed, "{}", rep);
        }
    }

    /// Singular values agree between precisions to f64 accuracy.
    #[test]
    fn svd_precisions_agree(seed in any::<u64>(), m in 1usize..=12, n in 1usize..=12) {
        let a: Matrix<f64> = random(MatrixKind::RandomUniform, m, n, seed);
        let sf = gesvd(&a, false).unwrap().s;
        let sd = gesvd(&Matrix::<DdReal>::from_f64(&a), false).unwrap().s;
        let tol = 64.0 * f64::EPSILON * sd[0].to_f64().max(1.0) * (m.max(n) as f64);
        for (x, y) in sf.iter().zip(&sd) {
            prop_assert!((x - y.to_f64()).abs() <= tol);
        }
    }
}

/// Exact inverse by Gauss-Jordan over the rationals.
fn rational_inverse(a: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero()).expect("nonsingular");
        m.swap(c, p);
        let piv = m[c][c].clone();
        for x in m[c].iter_mut() {
            *x = &*x / &piv;
        }
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                let pivot_row = m[c].clone();
                for (x, y) in m[r].iter_mut().zip(pivot_row) {
                    *x = &*x - &f * y;
                }
            }
        }
    }
    m.into_iter().map(|r| r[n..].to_vec()).collect()
}

#[test]
fn hilbert_three_against_rational_inverse() {
    let n = 3;
    let exact_h: Vec<Vec<BigRational>> =
        (0..n).map(|i| (0..n).map(|j| BigRational::new(BigInt::one(), BigInt::from(i + j + 1))).collect()).collect();
    let exact_inv = rational_inverse(&exact_h);
    assert_eq!(exact_inv[1][1], BigRational::from_integer(BigInt::from(192)));

    let norm_inf = |m: &[Vec<BigRational>]| m.iter().map(|r| r.iter().map(|x| x.abs()).sum::<BigRational>()).max().unwrap();
    let kappa = (norm_inf(&exact_h) * norm_inf(&exact_inv)).to_f64().unwrap();

    let h: Matrix<DdReal> = random(MatrixKind::Hilbert, n, n, 0);
    let inv = inverse(&h).unwrap();
    let bound = n as f64 * kappa * DdReal::eps().hi() * norm_inf(&exact_inv).to_f64().unwrap();
    for i in 0..n {
        for j in 0..n {
            let got = BigRational::from_float(inv[(i, j)].hi()).unwrap() + BigRational::from_float(inv[(i, j)].lo()).unwrap();
            let err = (got - &exact_inv[i][j]).abs().to_f64().unwrap();
            assert!(err <= bound, "({i},{j}) err {err:e} > {bound:e}");
        }
    }
}
