use super::elementary::{at, lapy2, laev2, larfg, lartg, org2r};
use crate::mpblas::{lsame, BlasError, IndexInt};
use crate::real::Real;

/// Iteration budget per eigenvalue, as in LAPACK.
const MAXIT: usize = 30;

/// `|e| <= eps * (|d1| + |d2|)`: the off-diagonal is negligible.
#[inline]
pub(crate) fn negligible<T: Real>(e: T, d1: T, d2: T, eps: T) -> bool {
    let ae = e.abs();
    ae <= eps * (d1.abs() + d2.abs()) || ae <= T::safe_min()
}

/// Minimal (and optimal) `lwork` for [`rsyev`].
pub fn rsyev_lwork(n: IndexInt) -> IndexInt {
    (3 * n - 1).max(1)
}

/// Eigenvalues and optionally eigenvectors of a real symmetric matrix.
///
/// `w` receives the eigenvalues in ascending order. With `jobz = 'V'`, `a`
/// is overwritten by the orthonormal eigenvectors (column `k` pairs with
/// `w[k]`); otherwise its contents are destroyed. `lwork == -1` is a
/// workspace query. info `k > 0`: `k` off-diagonals failed to converge.
#[allow(clippy::too_many_arguments)]
pub fn rsyev<T: Real>(
    jobz: char,
    uplo: char,
    n: IndexInt,
    a: &mut [T],
    lda: IndexInt,
    w: &mut [T],
    work: &mut [T],
    lwork: IndexInt,
) -> Result<IndexInt, BlasError> {
    let wantz = lsame(jobz, 'V');
    let lower = lsame(uplo, 'L');
    let query = lwork == -1;
    let info = if !wantz && !lsame(jobz, 'N') {
        1
    } else if !lower && !lsame(uplo, 'U') {
        2
    } else if n < 0 {
        3
    } else if lda < n.max(1) {
        5
    } else if lwork < rsyev_lwork(n) && !query {
        8
    } else {
        0
    };
    if info != 0 {
        return Err(BlasError::new("Rsyev", info));
    }
    if query {
        work[0] = T::from_i64(rsyev_lwork(n));
        return Ok(0);
    }
    let (n, lda) = (n as usize, lda as usize);
    if n == 0 {
        return Ok(0);
    }
    if n == 1 {
        w[0] = a[0];
        work[0] = T::from_i64(2);
        if wantz {
            a[0] = T::one();
        }
        return Ok(0);
    }

    // Mirror the referenced triangle into lower storage.
    if !lower {
        for j in 1..=n {
            for i in j + 1..=n {
                a[at(i, j, lda)] = a[at(j, i, lda)];
            }
        }
    }

    // Scale into the safe range.
    let eps = T::ulp();
    let smlnum = T::safe_min() / eps;
    let bignum = T::one() / smlnum;
    let rmin = smlnum.sqrt();
    let rmax = bignum.sqrt();
    let anrm = lower_max_abs(n, a, lda);
    let sigma = if anrm > T::zero() && anrm < rmin {
        Some(rmin / anrm)
    } else if anrm > rmax {
        Some(rmax / anrm)
    } else {
        None
    };
    if let Some(s) = sigma {
        for j in 1..=n {
            for i in j..=n {
                a[at(i, j, lda)] *= s;
            }
        }
    }

    let (e, rest) = work.split_at_mut(n);
    let (tau, _) = rest.split_at_mut(n);
    sytd2_lower(n, a, lda, w, e, tau);
    if wantz {
        orgtr_lower(n, a, lda, tau);
    }
    let info = steqr(n, w, e, if wantz { Some((a, lda)) } else { None });

    if let Some(s) = sigma {
        let imax = if info == 0 { n } else { info as usize - 1 };
        let r = T::one() / s;
        for v in &mut w[..imax] {
            *v *= r;
        }
    }
    work[0] = T::from_i64(rsyev_lwork(n as IndexInt));
    Ok(info)
}

fn lower_max_abs<T: Real>(n: usize, a: &[T], lda: usize) -> T {
    let mut v = T::zero();
    for j in 1..=n {
        for i in j..=n {
            v = v.max(a[at(i, j, lda)].abs());
        }
    }
    v
}

/// Householder tridiagonalization `Q^T A Q = T` using the lower triangle.
/// Diagonal goes to `d`, off-diagonal to `e[..n-1]`, reflectors stay below
/// the subdiagonal of `a` with scalars in `tau[..n-1]`.
pub(crate) fn sytd2_lower<T: Real>(n: usize, a: &mut [T], lda: usize, d: &mut [T], e: &mut [T], tau: &mut [T]) {
    let half = T::from_f64(0.5);
    for i in 1..n {
        let len = n - i;
        let head = at(i + 1, i, lda);
        let alpha = a[head];
        let (beta, taui) = larfg(alpha, &mut a[head + 1..head + len]);
        e[i - 1] = beta;
        if !taui.is_zero() {
            a[head] = T::one();
            let v: Vec<T> = a[head..head + len].to_vec();
            // x := tau * A22 * v  (A22 symmetric, lower storage)
            let mut x = vec![T::zero(); len];
            for jj in 0..len {
                let temp1 = taui * v[jj];
                let mut temp2 = T::zero();
                let cj = at(i + 1, i + 1 + jj, lda);
                x[jj] += temp1 * a[cj + jj];
                for ii in jj + 1..len {
                    let aij = a[cj + ii];
                    x[ii] += temp1 * aij;
                    temp2 += aij * v[ii];
                }
                x[jj] += taui * temp2;
            }
            // w := x - 1/2 tau (x^T v) v
            let mut dot = T::zero();
            for k in 0..len {
                dot += x[k] * v[k];
            }
            let alpha2 = -half * taui * dot;
            for k in 0..len {
                x[k] += alpha2 * v[k];
            }
            // A22 := A22 - v w^T - w v^T  (lower triangle)
            for jj in 0..len {
                let cj = at(i + 1, i + 1 + jj, lda);
                for ii in jj..len {
                    a[cj + ii] -= v[ii] * x[jj] + x[ii] * v[jj];
                }
            }
        }
        a[head] = e[i - 1];
        d[i - 1] = a[at(i, i, lda)];
        tau[i - 1] = taui;
    }
    d[n - 1] = a[at(n, n, lda)];
}

/// Forms the orthogonal `Q` of [`sytd2_lower`] in place.
pub(crate) fn orgtr_lower<T: Real>(n: usize, a: &mut [T], lda: usize, tau: &[T]) {
    // Shift the reflectors one column right; first row and column become e1.
    for j in (2..=n).rev() {
        a[at(1, j, lda)] = T::zero();
        for i in j + 1..=n {
            a[at(i, j, lda)] = a[at(i, j - 1, lda)];
        }
    }
    a[at(1, 1, lda)] = T::one();
    for i in 2..=n {
        a[at(i, 1, lda)] = T::zero();
    }
    if n > 1 {
        let off = at(2, 2, lda);
        org2r(n - 1, n - 1, n - 1, &mut a[off..], lda, tau);
    }
}

/// Applies the rotation `[c -s; s c]` acting on columns `(j, j+1)` of `z`
/// from the right, the update `lasr('R', 'V', ...)` performs.
#[inline]
fn rotate_cols<T: Real>(z: &mut [T], ldz: usize, nrows: usize, j: usize, c: T, s: T) {
    for k in 1..=nrows {
        let p = at(k, j, ldz);
        let q = at(k, j + 1, ldz);
        let temp = z[q];
        z[q] = c * temp - s * z[p];
        z[p] = s * temp + c * z[p];
    }
}

/// Implicit-shift QL/QR on the symmetric tridiagonal `(d, e)`.
///
/// On success `d` holds the eigenvalues in ascending order and, if given,
/// the columns of `z` are rotated accordingly. Returns the number of
/// unconverged off-diagonals (0 on success).
pub(crate) fn steqr<T: Real>(n: usize, d: &mut [T], e: &mut [T], mut z: Option<(&mut [T], usize)>) -> IndexInt {
    if n <= 1 {
        return 0;
    }
    let (zero, one, two) = (T::zero(), T::one(), T::from_f64(2.0));
    let eps = T::eps();
    let safmin = T::safe_min();
    let safmax = one / safmin;
    let ssfmax = safmax.sqrt() / T::from_f64(3.0);
    let ssfmin = safmin.sqrt() / (eps * eps);
    let nmaxit = n * MAXIT;
    let mut jtot = 0;

    // 1-based views.
    macro_rules! d {
        ($i:expr) => {
            d[$i - 1]
        };
    }
    macro_rules! e {
        ($i:expr) => {
            e[$i - 1]
        };
    }
    let rot = |z: &mut Option<(&mut [T], usize)>, j: usize, c: T, s: T| {
        if let Some((zz, ldz)) = z.as_mut() {
            rotate_cols(zz, *ldz, n, j, c, s);
        }
    };

    let mut l1 = 1;
    'split: while l1 <= n {
        if l1 > 1 {
            e!(l1 - 1) = zero;
        }
        let mut m = n;
        for mm in l1..n {
            if negligible(e!(mm), d!(mm), d!(mm + 1), eps) {
                e!(mm) = zero;
                m = mm;
                break;
            }
        }
        let mut l = l1;
        let lsv = l;
        let mut lend = m;
        let lendsv = lend;
        l1 = m + 1;
        if lend == l {
            continue;
        }

        // Scale the unreduced block.
        let mut anorm = zero;
        for i in l..=lend {
            anorm = anorm.max(d!(i).abs());
            if i < lend {
                anorm = anorm.max(e!(i).abs());
            }
        }
        if anorm.is_zero() {
            continue;
        }
        let iscale = if anorm > ssfmax {
            Some(ssfmax)
        } else if anorm < ssfmin {
            Some(ssfmin)
        } else {
            None
        };
        if let Some(target) = iscale {
            let f = target / anorm;
            for i in l..=lend {
                d!(i) *= f;
                if i < lend {
                    e!(i) *= f;
                }
            }
        }

        // QL when the top end is larger, QR otherwise.
        if d!(lend).abs() < d!(l).abs() {
            lend = lsv;
            l = lendsv;
        }

        if lend > l {
            // QL iteration.
            loop {
                let mut m = lend;
                for mm in l..lend {
                    if negligible(e!(mm), d!(mm), d!(mm + 1), eps) {
                        m = mm;
                        break;
                    }
                }
                if m < lend {
                    e!(m) = zero;
                }
                let mut p = d!(l);
                if m != l {
                    if m == l + 1 {
                        let (rt1, rt2, c, s) = laev2(d!(l), e!(l), d!(l + 1));
                        rot(&mut z, l, c, s);
                        d!(l) = rt1;
                        d!(l + 1) = rt2;
                        e!(l) = zero;
                        l += 2;
                        if l <= lend {
                            continue;
                        }
                        break;
                    }
                    if jtot == nmaxit {
                        break;
                    }
                    jtot += 1;
                    let mut g = (d!(l + 1) - p) / (two * e!(l));
                    let mut r = lapy2(g, one);
                    g = d!(m) - p + (e!(l) / (g + r.sign_of(g)));
                    let (mut s, mut c) = (one, one);
                    p = zero;
                    for i in (l..m).rev() {
                        let f = s * e!(i);
                        let b = c * e!(i);
                        let (cc, ss, rr) = lartg(g, f);
                        c = cc;
                        s = ss;
                        r = rr;
                        if i != m - 1 {
                            e!(i + 1) = r;
                        }
                        g = d!(i + 1) - p;
                        r = (d!(i) - g) * s + two * c * b;
                        p = s * r;
                        d!(i + 1) = g + p;
                        g = c * r - b;
                        rot(&mut z, i, c, -s);
                    }
                    d!(l) -= p;
                    e!(l) = g;
                    continue;
                }
                // Eigenvalue found.
                d!(l) = p;
                l += 1;
                if l <= lend {
                    continue;
                }
                break;
            }
        } else {
            // QR iteration.
            loop {
                let mut m = lend;
                let mut mm = l;
                while mm > lend {
                    if negligible(e!(mm - 1), d!(mm), d!(mm - 1), eps) {
                        m = mm;
                        break;
                    }
                    mm -= 1;
                }
                if m > lend {
                    e!(m - 1) = zero;
                }
                let mut p = d!(l);
                if m != l {
                    if m + 1 == l {
                        let (rt1, rt2, c, s) = laev2(d!(l - 1), e!(l - 1), d!(l));
                        rot(&mut z, l - 1, c, s);
                        d!(l - 1) = rt1;
                        d!(l) = rt2;
                        e!(l - 1) = zero;
                        if l < lend + 2 {
                            break;
                        }
                        l -= 2;
                        continue;
                    }
                    if jtot == nmaxit {
                        break;
                    }
                    jtot += 1;
                    let mut g = (d!(l - 1) - p) / (two * e!(l - 1));
                    let mut r = lapy2(g, one);
                    g = d!(m) - p + (e!(l - 1) / (g + r.sign_of(g)));
                    let (mut s, mut c) = (one, one);
                    p = zero;
                    for i in m..l {
                        let f = s * e!(i);
                        let b = c * e!(i);
                        let (cc, ss, rr) = lartg(g, f);
                        c = cc;
                        s = ss;
                        r = rr;
                        if i != m {
                            e!(i - 1) = r;
                        }
                        g = d!(i) - p;
                        r = (d!(i + 1) - g) * s + two * c * b;
                        p = s * r;
                        d!(i) = g + p;
                        g = c * r - b;
                        rot(&mut z, i, c, s);
                    }
                    d!(l) -= p;
                    e!(l - 1) = g;
                    continue;
                }
                d!(l) = p;
                if l <= lend {
                    break;
                }
                l -= 1;
            }
        }

        if let Some(target) = iscale {
            let f = anorm / target;
            for i in lsv..=lendsv {
                d!(i) *= f;
                if i < lendsv {
                    e!(i) *= f;
                }
            }
        }
        if jtot >= nmaxit {
            let bad = e[..n - 1].iter().filter(|v| !v.is_zero()).count();
            return bad as IndexInt;
        }
        continue 'split;
    }

    // Selection sort into ascending order.
    for ii in 2..=n {
        let i = ii - 1;
        let mut k = i;
        let mut p = d!(i);
        for j in ii..=n {
            if d!(j) < p {
                k = j;
                p = d!(j);
            }
        }
        if k != i {
            d!(k) = d!(i);
            d!(i) = p;
            if let Some((zz, ldz)) = z.as_mut() {
                for r in 1..=n {
                    zz.swap(at(r, i, *ldz), at(r, k, *ldz));
                }
            }
        }
    }
    0
}
