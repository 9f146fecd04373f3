use super::elementary::{at, larf_left, larf_right, larfg, lartg, lascl, max_abs, org2r, orgl2};
use crate::mpblas::{lsame, BlasError, IndexInt};
use crate::real::Real;

/// Minimal (and optimal) `lwork` for [`rgesvd`].
pub fn rgesvd_lwork(m: IndexInt, n: IndexInt) -> IndexInt {
    let mn = m.min(n);
    (3 * mn + m.max(n)).max(5 * mn).max(1)
}

/// Singular value decomposition `A = U * diag(s) * V^T`.
///
/// `jobu`/`jobvt` select `'A'` (all of `U`/`V^T`) or `'N'` (none). `s` receives
/// the `min(m, n)` singular values in descending order; `a` is destroyed.
/// `lwork == -1` is a workspace query. info `k > 0`: `k` superdiagonals of
/// the intermediate bidiagonal form did not converge.
#[allow(clippy::too_many_arguments)]
pub fn rgesvd<T: Real>(
    jobu: char,
    jobvt: char,
    m: IndexInt,
    n: IndexInt,
    a: &mut [T],
    lda: IndexInt,
    s: &mut [T],
    u: &mut [T],
    ldu: IndexInt,
    vt: &mut [T],
    ldvt: IndexInt,
    work: &mut [T],
    lwork: IndexInt,
) -> Result<IndexInt, BlasError> {
    let wantu = lsame(jobu, 'A');
    let wantvt = lsame(jobvt, 'A');
    let query = lwork == -1;
    let info = if !wantu && !lsame(jobu, 'N') {
        1
    } else if !wantvt && !lsame(jobvt, 'N') {
        2
    } else if m < 0 {
        3
    } else if n < 0 {
        4
    } else if lda < m.max(1) {
        6
    } else if ldu < 1 || (wantu && ldu < m) {
        9
    } else if ldvt < 1 || (wantvt && ldvt < n) {
        11
    } else if lwork < rgesvd_lwork(m, n) && !query {
        13
    } else {
        0
    };
    if info != 0 {
        return Err(BlasError::new("Rgesvd", info));
    }
    if query {
        work[0] = T::from_i64(rgesvd_lwork(m, n));
        return Ok(0);
    }
    let (m, n, lda, ldu, ldvt) = (m as usize, n as usize, lda as usize, ldu as usize, ldvt as usize);
    work[0] = T::from_i64(rgesvd_lwork(m as IndexInt, n as IndexInt));
    if m == 0 || n == 0 {
        if wantu {
            set_identity(m, u, ldu);
        }
        if wantvt {
            set_identity(n, vt, ldvt);
        }
        return Ok(0);
    }

    let eps = T::ulp();
    let smlnum = T::safe_min().sqrt() / eps;
    let bignum = T::one() / smlnum;
    let anrm = max_abs(m, n, a, lda);
    let iscl = if anrm > T::zero() && anrm < smlnum {
        Some(smlnum)
    } else if anrm > bignum {
        Some(bignum)
    } else {
        None
    };
    if let Some(c) = iscl {
        lascl(anrm, c, m, n, a, lda);
    }

    // Work on a tall copy: A itself when m >= n, else A^T (and swap roles).
    let tall = m >= n;
    let (p, q) = if tall { (m, n) } else { (n, m) };
    let mut b = vec![T::zero(); p * q];
    for j in 1..=q {
        for i in 1..=p {
            b[at(i, j, p)] = if tall { a[at(i, j, lda)] } else { a[at(j, i, lda)] };
        }
    }
    let (want_left, want_right) = if tall { (wantu, wantvt) } else { (wantvt, wantu) };

    let mut d = vec![T::zero(); q];
    let mut e = vec![T::zero(); q.saturating_sub(1)];
    let mut tauq = vec![T::zero(); q];
    let mut taup = vec![T::zero(); q];
    gebd2_upper(p, q, &mut b, p, &mut d, &mut e, &mut tauq, &mut taup);

    // Left factor (p x p) and right factor (q x q, already transposed).
    let mut left = Vec::new();
    if want_left {
        left = vec![T::zero(); p * p];
        for j in 1..=q {
            for i in j..=p {
                left[at(i, j, p)] = b[at(i, j, p)];
            }
        }
        org2r(p, p, q, &mut left, p, &tauq);
    }
    let mut right = Vec::new();
    if want_right {
        right = vec![T::zero(); q * q];
        for j in 1..=q {
            for i in 1..=j {
                right[at(i, j, q)] = b[at(i, j, p)];
            }
        }
        orgbr_p(q, &mut right, q, &taup);
    }

    let info = bdsqr(
        q,
        &mut d,
        &mut e,
        if want_right { Some((&mut right[..], q)) } else { None },
        if want_left { Some((&mut left[..], p, p)) } else { None },
    );

    s[..q].copy_from_slice(&d);
    if let Some(c) = iscl {
        lascl(c, anrm, q, 1, s, q);
    }

    // A^T = L S R  =>  A = R^T S L^T.
    if tall {
        if wantu {
            copy_into(p, p, &left, p, u, ldu, false);
        }
        if wantvt {
            copy_into(q, q, &right, q, vt, ldvt, false);
        }
    } else {
        if wantu {
            copy_into(q, q, &right, q, u, ldu, true);
        }
        if wantvt {
            copy_into(p, p, &left, p, vt, ldvt, true);
        }
    }
    Ok(info)
}

fn set_identity<T: Real>(n: usize, a: &mut [T], lda: usize) {
    for j in 1..=n {
        for i in 1..=n {
            a[at(i, j, lda)] = if i == j { T::one() } else { T::zero() };
        }
    }
}

fn copy_into<T: Real>(m: usize, n: usize, src: &[T], lds: usize, dst: &mut [T], ldd: usize, transpose: bool) {
    for j in 1..=n {
        for i in 1..=m {
            let v = src[at(i, j, lds)];
            if transpose {
                dst[at(j, i, ldd)] = v;
            } else {
                dst[at(i, j, ldd)] = v;
            }
        }
    }
}

/// Householder bidiagonalization `Q^T A P = B` for `m >= n` (upper bidiagonal).
#[allow(clippy::too_many_arguments)]
pub(crate) fn gebd2_upper<T: Real>(
    m: usize,
    n: usize,
    a: &mut [T],
    lda: usize,
    d: &mut [T],
    e: &mut [T],
    tauq: &mut [T],
    taup: &mut [T],
) {
    for i in 1..=n {
        let head = at(i, i, lda);
        let len = m - i + 1;
        let (beta, tq) = larfg(a[head], &mut a[head + 1..head + len]);
        d[i - 1] = beta;
        tauq[i - 1] = tq;
        if i < n {
            a[head] = T::one();
            let v: Vec<T> = a[head..head + len].to_vec();
            let off = at(i, i + 1, lda);
            larf_left(len, n - i, &v, tq, &mut a[off..], lda);
        }
        a[head] = d[i - 1];

        if i < n {
            let mut row: Vec<T> = (i + 1..=n).map(|j| a[at(i, j, lda)]).collect();
            let (beta, tp) = larfg(row[0], &mut row[1..]);
            e[i - 1] = beta;
            taup[i - 1] = tp;
            row[0] = T::one();
            for (k, j) in (i + 2..=n).enumerate() {
                a[at(i, j, lda)] = row[k + 1];
            }
            let off = at(i + 1, i + 1, lda);
            larf_right(m - i, n - i, &row, tp, &mut a[off..], lda);
            a[at(i, i + 1, lda)] = e[i - 1];
        } else {
            taup[i - 1] = T::zero();
        }
    }
}

/// Forms the `n x n` matrix `P^T` from the row reflectors of [`gebd2_upper`]
/// (copied into the upper triangle of `a`).
fn orgbr_p<T: Real>(n: usize, a: &mut [T], lda: usize, taup: &[T]) {
    // Shift the reflectors one row down; first row and column become e1.
    a[at(1, 1, lda)] = T::one();
    for i in 2..=n {
        a[at(i, 1, lda)] = T::zero();
    }
    for j in 2..=n {
        for i in (2..j).rev() {
            a[at(i, j, lda)] = a[at(i - 1, j, lda)];
        }
        a[at(1, j, lda)] = T::zero();
    }
    if n > 1 {
        let off = at(2, 2, lda);
        orgl2(n - 1, n - 1, n - 1, &mut a[off..], lda, taup);
    }
}

/// Implicit zero-tolerant Golub-Kahan SVD of the upper bidiagonal `(d, e)`.
///
/// Rotations from the right update the rows of `vt` (`n x n`), rotations
/// from the left update the first `n` columns of `u` (`nru x n` used).
/// On success `d` holds the singular values, non-negative and descending.
pub(crate) fn bdsqr<T: Real>(
    n: usize,
    d: &mut [T],
    e: &mut [T],
    mut vt: Option<(&mut [T], usize)>,
    mut u: Option<(&mut [T], usize, usize)>,
) -> IndexInt {
    let zero = T::zero();
    let eps = T::eps();
    if n == 0 {
        return 0;
    }
    // Right rotation on columns (k, k+1) of B: rows k, k+1 of VT.
    let rot_right = |vt: &mut Option<(&mut [T], usize)>, k: usize, c: T, s: T| {
        if let Some((v, ldv)) = vt.as_mut() {
            for j in 0..n {
                let p = k + j * *ldv;
                let q = k + 1 + j * *ldv;
                let (x, y) = (v[p], v[q]);
                v[p] = c * x + s * y;
                v[q] = c * y - s * x;
            }
        }
    };
    // Left rotation on rows (k, l) of B: columns k, l of U.
    let rot_left = |u: &mut Option<(&mut [T], usize, usize)>, k: usize, l: usize, c: T, s: T| {
        if let Some((uu, ldu, nru)) = u.as_mut() {
            for i in 0..*nru {
                let p = i + k * *ldu;
                let q = i + l * *ldu;
                let (x, y) = (uu[p], uu[q]);
                uu[p] = c * x + s * y;
                uu[q] = c * y - s * x;
            }
        }
    };

    let maxit = 30 * n * n.max(2);
    let mut iter = 0;
    let mut hi = n - 1; // last index of the active block
    let mut info = 0;
    loop {
        // Deflate negligible superdiagonals at the bottom.
        while hi > 0 && crate::mplapack::syev::negligible(e[hi - 1], d[hi - 1], d[hi], eps) {
            e[hi - 1] = zero;
            hi -= 1;
        }
        if hi == 0 {
            break;
        }
        // Find the top of the unreduced block.
        let mut lo = hi - 1;
        while lo > 0 {
            if crate::mplapack::syev::negligible(e[lo - 1], d[lo - 1], d[lo], eps) {
                e[lo - 1] = zero;
                break;
            }
            lo -= 1;
        }
        if iter >= maxit {
            info = e.iter().filter(|v| !v.is_zero()).count() as IndexInt;
            break;
        }
        iter += 1;

        // Block norm for the zero-diagonal test.
        let mut bnorm = zero;
        for k in lo..=hi {
            bnorm = bnorm.max(d[k].abs());
            if k < hi {
                bnorm = bnorm.max(e[k].abs());
            }
        }
        let tiny = eps * bnorm;

        if let Some(k) = (lo..hi).find(|&k| d[k].abs() <= tiny) {
            // Zero diagonal inside the block: chase e[k] off to the right.
            d[k] = zero;
            let mut bulge = e[k];
            e[k] = zero;
            for j in k + 1..=hi {
                let (c, s, r) = lartg(d[j], bulge);
                d[j] = r;
                // new row k = c*row_k - s*row_j ; new row j = s*row_k + c*row_j
                rot_left(&mut u, j, k, c, s);
                if j < hi {
                    bulge = -s * e[j];
                    e[j] *= c;
                }
            }
            continue;
        }
        if d[hi].abs() <= tiny {
            // Zero last diagonal: chase e[hi-1] upward with right rotations.
            d[hi] = zero;
            let mut bulge = e[hi - 1];
            e[hi - 1] = zero;
            for j in (lo..hi).rev() {
                let (c, s, r) = lartg(d[j], bulge);
                d[j] = r;
                rot_right_pair(&mut vt, n, j, hi, c, s);
                if j > lo {
                    bulge = -s * e[j - 1];
                    e[j - 1] *= c;
                }
            }
            continue;
        }

        // Wilkinson shift from the trailing 2x2 of B^T B (scaled).
        let sc = d[hi - 1].abs().max(d[hi].abs()).max(e[hi - 1].abs()).max(if hi - 1 > lo {
            e[hi - 2].abs()
        } else {
            zero
        });
        let (dm, dn, em) = (d[hi - 1] / sc, d[hi] / sc, e[hi - 1] / sc);
        let ep = if hi - 1 > lo { e[hi - 2] / sc } else { zero };
        let t11 = dm * dm + ep * ep;
        let t12 = dm * em;
        let t22 = dn * dn + em * em;
        let delta = (t11 - t22) * T::from_f64(0.5);
        let mu = if t12.is_zero() {
            t22
        } else {
            let denom = delta + (delta * delta + t12 * t12).sqrt().sign_of(delta);
            t22 - t12 * t12 / denom
        };
        let mu = mu * sc * sc;

        let mut y = d[lo] * d[lo] - mu;
        let mut z = d[lo] * e[lo];
        for k in lo..hi {
            let (c, s, r) = lartg(y, z);
            if k > lo {
                e[k - 1] = r;
            }
            let f = c * d[k] + s * e[k];
            e[k] = c * e[k] - s * d[k];
            let g = s * d[k + 1];
            d[k + 1] *= c;
            d[k] = f;
            rot_right(&mut vt, k, c, s);

            let (c, s, r) = lartg(d[k], g);
            d[k] = r;
            let f = c * e[k] + s * d[k + 1];
            d[k + 1] = c * d[k + 1] - s * e[k];
            e[k] = f;
            if k + 1 < hi {
                z = s * e[k + 1];
                e[k + 1] *= c;
                y = e[k];
            }
            rot_left(&mut u, k, k + 1, c, s);
        }
    }

    // Make singular values non-negative.
    for k in 0..n {
        if d[k] < zero {
            d[k] = -d[k];
            if let Some((v, ldv)) = vt.as_mut() {
                for j in 0..n {
                    v[k + j * *ldv] = -v[k + j * *ldv];
                }
            }
        }
    }
    // Selection sort into descending order.
    for i in 0..n.saturating_sub(1) {
        let mut k = i;
        for j in i + 1..n {
            if d[j] > d[k] {
                k = j;
            }
        }
        if k != i {
            d.swap(i, k);
            if let Some((v, ldv)) = vt.as_mut() {
                for j in 0..n {
                    v.swap(i + j * *ldv, k + j * *ldv);
                }
            }
            if let Some((uu, ldu, nru)) = u.as_mut() {
                for r in 0..*nru {
                    uu.swap(r + i * *ldu, r + k * *ldu);
                }
            }
        }
    }
    info
}

/// Right rotation mixing columns `j` and `l` of B: rows `j`, `l` of VT become
/// `c*VT_j + s*VT_l` and `c*VT_l - s*VT_j`.
fn rot_right_pair<T: Real>(vt: &mut Option<(&mut [T], usize)>, n: usize, j: usize, l: usize, c: T, s: T) {
    if let Some((v, ldv)) = vt.as_mut() {
        for col in 0..n {
            let p = j + col * *ldv;
            let q = l + col * *ldv;
            let (x, y) = (v[p], v[q]);
            v[p] = c * x + s * y;
            v[q] = c * y - s * x;
        }
    }
}
