use super::elementary::{at, lanv2, larf_left, larf_right, larfg, lascl, max_abs, org2r, rot};
use crate::mpblas::{lsame, BlasError, IndexInt};
use crate::real::Real;

/// Minimal (and optimal) `lwork` for [`rgees`].
pub fn rgees_lwork(n: IndexInt) -> IndexInt {
    (3 * n).max(1)
}

/// Real Schur factorization `A = Z * T * Z^T` without eigenvalue reordering.
///
/// `a` is overwritten by the quasi-upper-triangular `T` (2x2 blocks are in
/// standard form); `wr`/`wi` receive the eigenvalues, complex pairs in
/// consecutive slots with positive imaginary part first. With
/// `jobvs = 'V'` the Schur vectors are written to `vs`. Argument numbers
/// follow the reference driver, whose `SORT`/`SELECT` arguments (2 and 3)
/// are fixed to "no sorting". info `i > 0`: the QR algorithm failed and
/// eigenvalues `i+1..n` are the converged ones.
#[allow(clippy::too_many_arguments)]
pub fn rgees<T: Real>(
    jobvs: char,
    n: IndexInt,
    a: &mut [T],
    lda: IndexInt,
    wr: &mut [T],
    wi: &mut [T],
    vs: &mut [T],
    ldvs: IndexInt,
    work: &mut [T],
    lwork: IndexInt,
) -> Result<IndexInt, BlasError> {
    let wantvs = lsame(jobvs, 'V');
    let query = lwork == -1;
    let info = if !wantvs && !lsame(jobvs, 'N') {
        1
    } else if n < 0 {
        4
    } else if lda < n.max(1) {
        6
    } else if ldvs < 1 || (wantvs && ldvs < n) {
        11
    } else if lwork < rgees_lwork(n) && !query {
        13
    } else {
        0
    };
    if info != 0 {
        return Err(BlasError::new("Rgees", info));
    }
    if query {
        work[0] = T::from_i64(rgees_lwork(n));
        return Ok(0);
    }
    let (n, lda, ldvs) = (n as usize, lda as usize, ldvs as usize);
    if n == 0 {
        return Ok(0);
    }

    let eps = T::ulp();
    let smlnum = (T::safe_min() / eps).sqrt();
    let bignum = T::one() / smlnum;
    let anrm = max_abs(n, n, a, lda);
    let cscale = if anrm > T::zero() && anrm < smlnum {
        Some(smlnum)
    } else if anrm > bignum {
        Some(bignum)
    } else {
        None
    };
    if let Some(c) = cscale {
        lascl(anrm, c, n, n, a, lda);
    }

    let tau = &mut work[..n];
    gehd2(n, a, lda, tau);
    if wantvs {
        for j in 1..=n {
            for i in 1..=n {
                vs[at(i, j, ldvs)] = a[at(i, j, lda)];
            }
        }
        orghr(n, vs, ldvs, tau);
    }
    for j in 1..=n {
        for i in j + 2..=n {
            a[at(i, j, lda)] = T::zero();
        }
    }
    let z = if wantvs { Some((&mut vs[..], ldvs)) } else { None };
    let info = lahqr(n, a, lda, wr, wi, z);

    if let Some(c) = cscale {
        // Undo scaling of T and the eigenvalues.
        lascl(c, anrm, n, n, a, lda);
        for k in 0..n {
            wr[k] = a[at(k + 1, k + 1, lda)];
            wi[k] = T::zero();
        }
        let mut i = 1;
        while i < n {
            if !a[at(i + 1, i, lda)].is_zero() {
                let b = a[at(i, i + 1, lda)];
                let c2 = a[at(i + 1, i, lda)];
                let im = b.abs().sqrt() * c2.abs().sqrt();
                wi[i - 1] = im;
                wi[i] = -im;
                i += 2;
            } else {
                i += 1;
            }
        }
    }
    work[0] = T::from_i64(rgees_lwork(n as IndexInt));
    Ok(info)
}

/// Hessenberg reduction `Q^T A Q = H` by Householder reflectors, stored below
/// the subdiagonal with scalars in `tau[..n-1]`.
pub(crate) fn gehd2<T: Real>(n: usize, a: &mut [T], lda: usize, tau: &mut [T]) {
    for i in 1..n {
        let len = n - i;
        let head = at(i + 1, i, lda);
        let (beta, t) = larfg(a[head], &mut a[head + 1..head + len]);
        tau[i - 1] = t;
        a[head] = T::one();
        let v: Vec<T> = a[head..head + len].to_vec();
        let off = at(1, i + 1, lda);
        larf_right(n, len, &v, t, &mut a[off..], lda);
        let off = at(i + 1, i + 1, lda);
        larf_left(len, len, &v, t, &mut a[off..], lda);
        a[head] = beta;
    }
}

/// Forms the orthogonal `Q` of [`gehd2`] in place from a copy of its output.
pub(crate) fn orghr<T: Real>(n: usize, a: &mut [T], lda: usize, tau: &[T]) {
    for j in (2..=n).rev() {
        for i in 1..j {
            a[at(i, j, lda)] = T::zero();
        }
        for i in j + 1..=n {
            a[at(i, j, lda)] = a[at(i, j - 1, lda)];
        }
    }
    for i in 1..=n {
        a[at(i, 1, lda)] = T::zero();
    }
    a[at(1, 1, lda)] = T::one();
    if n > 1 {
        let off = at(2, 2, lda);
        org2r(n - 1, n - 1, n - 1, &mut a[off..], lda, tau);
    }
}

/// Double-shift QR on the full upper Hessenberg `h`, computing the Schur
/// form `T` and accumulating into `z`. Returns 0 or the failing index.
pub(crate) fn lahqr<T: Real>(
    n: usize,
    h: &mut [T],
    ldh: usize,
    wr: &mut [T],
    wi: &mut [T],
    mut z: Option<(&mut [T], usize)>,
) -> IndexInt {
    let (zero, one) = (T::zero(), T::one());
    let dat1 = T::from_f64(0.75);
    let dat2 = T::from_f64(-0.4375);
    const KEXSH: usize = 10;
    if n == 0 {
        return 0;
    }
    if n == 1 {
        wr[0] = h[0];
        wi[0] = zero;
        return 0;
    }
    macro_rules! h {
        ($i:expr, $j:expr) => {
            h[at($i, $j, ldh)]
        };
    }
    for j in 1..=n.saturating_sub(3) {
        h!(j + 2, j) = zero;
        h!(j + 3, j) = zero;
    }
    if n >= 3 {
        h!(n, n - 2) = zero;
    }

    let nh = n;
    let safmin = T::safe_min();
    let ulp = T::ulp();
    let smlnum = safmin * (T::from_i64(nh as i64) / ulp);
    let (i1, i2) = (1, n);
    let itmax = 30 * nh.max(10);
    let mut kdefl = 0;

    let mut i = n;
    while i >= 1 {
        let mut l = 1;
        let mut converged = false;
        for _its in 0..=itmax {
            // Look for a single small subdiagonal element.
            let mut k = i;
            while k > l {
                if h!(k, k - 1).abs() <= smlnum {
                    break;
                }
                let mut tst = h!(k - 1, k - 1).abs() + h!(k, k).abs();
                if tst.is_zero() {
                    if k >= 3 {
                        tst += h!(k - 1, k - 2).abs();
                    }
                    if k < n {
                        tst += h!(k + 1, k).abs();
                    }
                }
                if h!(k, k - 1).abs() <= ulp * tst {
                    let ab = h!(k, k - 1).abs().max(h!(k - 1, k).abs());
                    let ba = h!(k, k - 1).abs().min(h!(k - 1, k).abs());
                    let aa = h!(k, k).abs().max((h!(k - 1, k - 1) - h!(k, k)).abs());
                    let bb = h!(k, k).abs().min((h!(k - 1, k - 1) - h!(k, k)).abs());
                    let s = aa + ab;
                    if ba * (ab / s) <= smlnum.max(ulp * (bb * (aa / s))) {
                        break;
                    }
                }
                k -= 1;
            }
            l = k;
            if l > 1 {
                h!(l, l - 1) = zero;
            }
            if l + 1 >= i {
                converged = true;
                break;
            }
            kdefl += 1;

            let (h11, h12, h21, h22);
            if kdefl % (2 * KEXSH) == 0 {
                let s = h!(i, i - 1).abs() + h!(i - 1, i - 2).abs();
                h11 = dat1 * s + h!(i, i);
                h12 = dat2 * s;
                h21 = s;
                h22 = h11;
            } else if kdefl % KEXSH == 0 {
                let s = h!(l + 1, l).abs() + h!(l + 2, l + 1).abs();
                h11 = dat1 * s + h!(l, l);
                h12 = dat2 * s;
                h21 = s;
                h22 = h11;
            } else {
                h11 = h!(i - 1, i - 1);
                h21 = h!(i, i - 1);
                h12 = h!(i - 1, i);
                h22 = h!(i, i);
            }
            let s = h11.abs() + h12.abs() + h21.abs() + h22.abs();
            let (rt1r, rt1i, rt2r, rt2i);
            if s.is_zero() {
                rt1r = zero;
                rt1i = zero;
                rt2r = zero;
                rt2i = zero;
            } else {
                let (h11, h12, h21, h22) = (h11 / s, h12 / s, h21 / s, h22 / s);
                let tr = (h11 + h22) * T::from_f64(0.5);
                let det = (h11 - tr) * (h22 - tr) - h12 * h21;
                let rtdisc = det.abs().sqrt();
                if det >= zero {
                    rt1r = tr * s;
                    rt2r = rt1r;
                    rt1i = rtdisc * s;
                    rt2i = -rt1i;
                } else {
                    let a1 = tr + rtdisc;
                    let a2 = tr - rtdisc;
                    let r = if (a1 - h22).abs() <= (a2 - h22).abs() { a1 * s } else { a2 * s };
                    rt1r = r;
                    rt2r = r;
                    rt1i = zero;
                    rt2i = zero;
                }
            }

            // Look for two consecutive small subdiagonal elements.
            let mut v = [zero; 3];
            let mut m = i - 2;
            loop {
                let h21s = h!(m + 1, m);
                let s = (h!(m, m) - rt2r).abs() + rt2i.abs() + h21s.abs();
                let h21s = h!(m + 1, m) / s;
                v[0] = h21s * h!(m, m + 1) + (h!(m, m) - rt1r) * ((h!(m, m) - rt2r) / s) - rt1i * (rt2i / s);
                v[1] = h21s * (h!(m, m) + h!(m + 1, m + 1) - rt1r - rt2r);
                v[2] = h21s * h!(m + 2, m + 1);
                let s = v[0].abs() + v[1].abs() + v[2].abs();
                v[0] /= s;
                v[1] /= s;
                v[2] /= s;
                if m == l {
                    break;
                }
                let h00 = h!(m, m - 1).abs() * (v[1].abs() + v[2].abs());
                let h01 = v[0].abs() * (h!(m - 1, m - 1).abs() + h!(m, m).abs() + h!(m + 1, m + 1).abs());
                if h00 <= ulp * h01 {
                    break;
                }
                m -= 1;
            }

            // Double-shift QR sweep.
            for k in m..i {
                let nr = 3.min(i - k + 1);
                if k > m {
                    for (t, vt) in v.iter_mut().enumerate().take(nr) {
                        *vt = h!(k + t, k - 1);
                    }
                }
                let (beta, t1) = larfg(v[0], &mut v[1..nr]);
                v[0] = beta;
                if k > m {
                    h!(k, k - 1) = v[0];
                    h!(k + 1, k - 1) = zero;
                    if k < i - 1 {
                        h!(k + 2, k - 1) = zero;
                    }
                } else if m > l {
                    // Avoids a sign problem when v[1] and v[2] underflow.
                    h!(k, k - 1) = h!(k, k - 1) * (one - t1);
                }
                let v2 = v[1];
                let t2 = t1 * v2;
                if nr == 3 {
                    let v3 = v[2];
                    let t3 = t1 * v3;
                    for j in k..=i2 {
                        let sum = h!(k, j) + v2 * h!(k + 1, j) + v3 * h!(k + 2, j);
                        h!(k, j) -= sum * t1;
                        h!(k + 1, j) -= sum * t2;
                        h!(k + 2, j) -= sum * t3;
                    }
                    for j in i1..=(k + 3).min(i) {
                        let sum = h!(j, k) + v2 * h!(j, k + 1) + v3 * h!(j, k + 2);
                        h!(j, k) -= sum * t1;
                        h!(j, k + 1) -= sum * t2;
                        h!(j, k + 2) -= sum * t3;
                    }
                    if let Some((zz, ldz)) = z.as_mut() {
                        for j in 1..=n {
                            let (p0, p1, p2) = (at(j, k, *ldz), at(j, k + 1, *ldz), at(j, k + 2, *ldz));
                            let sum = zz[p0] + v2 * zz[p1] + v3 * zz[p2];
                            zz[p0] -= sum * t1;
                            zz[p1] -= sum * t2;
                            zz[p2] -= sum * t3;
                        }
                    }
                } else if nr == 2 {
                    for j in k..=i2 {
                        let sum = h!(k, j) + v2 * h!(k + 1, j);
                        h!(k, j) -= sum * t1;
                        h!(k + 1, j) -= sum * t2;
                    }
                    for j in i1..=i {
                        let sum = h!(j, k) + v2 * h!(j, k + 1);
                        h!(j, k) -= sum * t1;
                        h!(j, k + 1) -= sum * t2;
                    }
                    if let Some((zz, ldz)) = z.as_mut() {
                        for j in 1..=n {
                            let (p0, p1) = (at(j, k, *ldz), at(j, k + 1, *ldz));
                            let sum = zz[p0] + v2 * zz[p1];
                            zz[p0] -= sum * t1;
                            zz[p1] -= sum * t2;
                        }
                    }
                }
            }
        }
        if !converged {
            return i as IndexInt;
        }

        if l == i {
            wr[i - 1] = h!(i, i);
            wi[i - 1] = zero;
        } else if l + 1 == i {
            let r = lanv2(h!(i - 1, i - 1), h!(i - 1, i), h!(i, i - 1), h!(i, i));
            h!(i - 1, i - 1) = r.a;
            h!(i - 1, i) = r.b;
            h!(i, i - 1) = r.c;
            h!(i, i) = r.d;
            wr[i - 2] = r.rt1r;
            wi[i - 2] = r.rt1i;
            wr[i - 1] = r.rt2r;
            wi[i - 1] = r.rt2i;
            if i2 > i {
                rot(i2 - i, h, at(i - 1, i + 1, ldh), ldh, at(i, i + 1, ldh), ldh, r.cs, r.sn);
            }
            rot(i - i1 - 1, h, at(i1, i - 1, ldh), 1, at(i1, i, ldh), 1, r.cs, r.sn);
            if let Some((zz, ldz)) = z.as_mut() {
                rot(n, zz, at(1, i - 1, *ldz), 1, at(1, i, *ldz), 1, r.cs, r.sn);
            }
        }
        kdefl = 0;
        if l == 1 {
            break;
        }
        i = l - 1;
    }
    0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ddarith::DdReal;

    fn schur<T: Real>(rows: &[[f64; 4]]) -> (Vec<T>, Vec<T>, Vec<T>, Vec<T>) {
        let n = rows.len();
        let mut a = vec![T::zero(); n * n];
        for (i, r) in rows.iter().enumerate() {
            for j in 0..n {
                a[i + j * n] = T::from_f64(r[j]);
            }
        }
        let (mut wr, mut wi) = (vec![T::zero(); n], vec![T::zero(); n]);
        let mut vs = vec![T::zero(); n * n];
        let mut work = vec![T::zero(); 3 * n];
        let ni = n as IndexInt;
        let info = rgees('V', ni, &mut a, ni, &mut wr, &mut wi, &mut vs, ni, &mut work, 3 * ni).unwrap();
        assert_eq!(info, 0);
        (a, wr, wi, vs)
    }

    #[test]
    fn real_spectrum() {
        let (_, wr, wi, _) =
            schur::<DdReal>(&[[-2., 2., 2., 2.], [-3., 3., 2., 2.], [-2., 0., 4., 2.], [-1., 0., 0., 5.]]);
        let mut ev: Vec<f64> = wr.iter().map(|v| v.to_f64()).collect();
        ev.sort_by(f64::total_cmp);
        for (x, e) in ev.iter().zip([1.0, 2.0, 3.0, 4.0]) {
            assert!((x - e).abs() < 1e-25, "{ev:?}");
        }
        assert!(wi.iter().all(|v| v.is_zero()));
    }

    #[test]
    fn complex_pair_is_ordered_plus_then_minus() {
        let (t, wr, wi, _) =
            schur::<f64>(&[[4., -5., 0., 3.], [0., 4., -3., -5.], [5., -3., 4., 0.], [3., 0., 5., 4.]]);
        let mut found = false;
        for k in 0..3 {
            if wi[k] > 0.0 {
                assert_eq!(wi[k + 1], -wi[k]);
                assert!((wr[k] - 1.0).abs() < 1e-12 && (wi[k] - 5.0).abs() < 1e-12);
                assert_eq!(t[k + k * 4], t[(k + 1) + (k + 1) * 4]);
                found = true;
            }
        }
        assert!(found, "{wr:?} {wi:?}");
    }

    #[test]
    fn triangular_input_is_fixed_point() {
        let (_, wr, wi, _) = schur::<f64>(&[[1., 2., 3., 4.], [0., 5., 6., 7.], [0., 0., 8., 9.], [0., 0., 0., 10.]]);
        assert_eq!(wr, [1.0, 5.0, 8.0, 10.0]);
        assert_eq!(wi, [0.0; 4]);
    }

    #[test]
    fn query_and_errors() {
        let mut a = [0.0; 4];
        let (mut wr, mut wi, mut vs) = ([0.0; 2], [0.0; 2], [0.0; 4]);
        let mut work = [0.0; 6];
        rgees('V', 2, &mut a, 2, &mut wr, &mut wi, &mut vs, 2, &mut work, -1).unwrap();
        assert_eq!(work[0], 6.0);
        let e = rgees('V', 2, &mut a, 2, &mut wr, &mut wi, &mut vs, 1, &mut work, 6).unwrap_err();
        assert_eq!(e.arg, 11);
        let e = rgees('V', 2, &mut a, 2, &mut wr, &mut wi, &mut vs, 2, &mut work, 5).unwrap_err();
        assert_eq!(e.arg, 13);
    }
}
