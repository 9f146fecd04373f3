//! Elementary transformations shared by the drivers.

use crate::real::Real;

/// Column-major offset of the 1-based element `(i, j)`.
#[inline(always)]
pub(crate) fn at(i: usize, j: usize, ld: usize) -> usize {
    (i - 1) + (j - 1) * ld
}

#[inline]
pub(crate) fn half<T: Real>() -> T {
    T::from_f64(0.5)
}

/// `sqrt(x^2 + y^2)` without destructive underflow or overflow.
pub fn lapy2<T: Real>(x: T, y: T) -> T {
    let xa = x.abs();
    let ya = y.abs();
    let w = xa.max(ya);
    let z = xa.min(ya);
    if z.is_zero() || w > T::overflow() {
        w
    } else {
        let r = z / w;
        w * (T::one() + r * r).sqrt()
    }
}

/// Generates an elementary reflector `H = I - tau * v * v^T` with
/// `H * (alpha, x)^T = (beta, 0)^T`, `v = (1, x_out)`. Returns `(beta, tau)`;
/// `x` is overwritten with the tail of `v`.
pub fn larfg<T: Real>(alpha: T, x: &mut [T]) -> (T, T) {
    if x.is_empty() {
        return (alpha, T::zero());
    }
    let mut xnorm = crate::mpblas::rnrm2(x.len() as i64, x, 1);
    if xnorm.is_zero() {
        return (alpha, T::zero());
    }
    let mut alpha = alpha;
    let mut beta = -lapy2(alpha, xnorm).sign_of(alpha);
    let safmin = T::safe_min() / T::eps();
    let rsafmn = T::one() / safmin;
    let mut knt = 0;
    if beta.abs() < safmin {
        // xnorm and beta may be inaccurate; rescale until they are not.
        loop {
            knt += 1;
            for v in x.iter_mut() {
                *v *= rsafmn;
            }
            beta *= rsafmn;
            alpha *= rsafmn;
            if beta.abs() >= safmin || knt >= 20 {
                break;
            }
        }
        xnorm = crate::mpblas::rnrm2(x.len() as i64, x, 1);
        beta = -lapy2(alpha, xnorm).sign_of(alpha);
    }
    let tau = (beta - alpha) / beta;
    let scal = T::one() / (alpha - beta);
    for v in x.iter_mut() {
        *v *= scal;
    }
    for _ in 0..knt {
        beta *= safmin;
    }
    (beta, tau)
}

/// `C <- (I - tau * v * v^T) * C` for the `m x n` block at the start of `c`.
pub fn larf_left<T: Real>(m: usize, n: usize, v: &[T], tau: T, c: &mut [T], ldc: usize) {
    if tau.is_zero() {
        return;
    }
    for j in 0..n {
        let col = &mut c[j * ldc..j * ldc + m];
        let mut w = T::zero();
        for (ci, &vi) in col.iter().zip(v) {
            w += *ci * vi;
        }
        let w = tau * w;
        for (ci, &vi) in col.iter_mut().zip(v) {
            *ci -= vi * w;
        }
    }
}

/// `C <- C * (I - tau * v * v^T)` for the `m x n` block at the start of `c`.
pub fn larf_right<T: Real>(m: usize, n: usize, v: &[T], tau: T, c: &mut [T], ldc: usize) {
    if tau.is_zero() {
        return;
    }
    let mut w = vec![T::zero(); m];
    for (j, &vj) in v.iter().enumerate().take(n) {
        for (wi, &cij) in w.iter_mut().zip(&c[j * ldc..j * ldc + m]) {
            *wi += cij * vj;
        }
    }
    for (j, &vj) in v.iter().enumerate().take(n) {
        let t = tau * vj;
        for (cij, &wi) in c[j * ldc..j * ldc + m].iter_mut().zip(&w) {
            *cij -= wi * t;
        }
    }
}

/// Plane rotation with `c * f + s * g = r`, `-s * f + c * g = 0`, `c >= 0`
/// when `f != 0`, and `r` carrying the sign of `f`.
pub fn lartg<T: Real>(f: T, g: T) -> (T, T, T) {
    if g.is_zero() {
        return (T::one(), T::zero(), f);
    }
    if f.is_zero() {
        return (T::zero(), T::one().sign_of(g), g.abs());
    }
    let d = lapy2(f, g);
    let c = f.abs() / d;
    let r = d.sign_of(f);
    let s = g / r;
    (c, s, r)
}

/// Applies `[x; y] <- [c s; -s c] [x; y]` to `n` element pairs.
#[allow(clippy::too_many_arguments)]
pub fn rot<T: Real>(n: usize, a: &mut [T], ix: usize, incx: usize, iy: usize, incy: usize, c: T, s: T) {
    for k in 0..n {
        let px = ix + k * incx;
        let py = iy + k * incy;
        let x = a[px];
        let y = a[py];
        a[px] = c * x + s * y;
        a[py] = c * y - s * x;
    }
}

/// Standardized Schur factorization of a real 2x2 block.
#[derive(Clone, Copy, Debug)]
pub struct Lanv2<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
    pub rt1r: T,
    pub rt1i: T,
    pub rt2r: T,
    pub rt2i: T,
    pub cs: T,
    pub sn: T,
}

/// Computes `[a b; c d] = [cs -sn; sn cs] [aa bb; cc dd] [cs sn; -sn cs]`
/// where either `cc = 0` (real eigenvalues) or `aa = dd` and `bb * cc < 0`
/// (a complex pair).
pub fn lanv2<T: Real>(a: T, b: T, c: T, d: T) -> Lanv2<T> {
    let (zero, one) = (T::zero(), T::one());
    let multpl = T::from_f64(4.0);
    let eps = T::ulp();
    let (mut a, mut b, mut c, mut d) = (a, b, c, d);
    let (mut cs, mut sn);
    let sgn = |x: T| one.sign_of(x);

    if c.is_zero() {
        cs = one;
        sn = zero;
    } else if b.is_zero() {
        cs = zero;
        sn = one;
        std::mem::swap(&mut a, &mut d);
        b = -c;
        c = zero;
    } else if (a - d).is_zero() && sgn(b) != sgn(c) {
        cs = one;
        sn = zero;
    } else {
        let temp = a - d;
        let mut p = half::<T>() * temp;
        let bcmax = b.abs().max(c.abs());
        let bcmis = b.abs().min(c.abs()) * sgn(b) * sgn(c);
        let scale = p.abs().max(bcmax);
        let mut z = p / scale * p + bcmax / scale * bcmis;
        if z >= multpl * eps {
            z = p + (scale.sqrt() * z.sqrt()).sign_of(p);
            a = d + z;
            d -= bcmax / z * bcmis;
            let tau = lapy2(c, z);
            cs = z / tau;
            sn = c / tau;
            b -= c;
            c = zero;
        } else {
            // Complex or nearly equal real eigenvalues: equalize the diagonal.
            let sigma = b + c;
            let tau = lapy2(sigma, temp);
            cs = (half::<T>() * (one + sigma.abs() / tau)).sqrt();
            sn = -(p / (tau * cs)) * sgn(sigma);

            let aa = a * cs + b * sn;
            let bb = -a * sn + b * cs;
            let cc = c * cs + d * sn;
            let dd = -c * sn + d * cs;

            a = aa * cs + cc * sn;
            b = bb * cs + dd * sn;
            c = -aa * sn + cc * cs;
            d = -bb * sn + dd * cs;

            let temp = half::<T>() * (a + d);
            a = temp;
            d = temp;

            if !c.is_zero() {
                if !b.is_zero() {
                    if sgn(b) == sgn(c) {
                        // Real eigenvalues after all.
                        let sab = b.abs().sqrt();
                        let sac = c.abs().sqrt();
                        p = (sab * sac).sign_of(c);
                        let tau = one / (b + c).abs().sqrt();
                        a = temp + p;
                        d = temp - p;
                        b -= c;
                        c = zero;
                        let cs1 = sab * tau;
                        let sn1 = sac * tau;
                        let t = cs * cs1 - sn * sn1;
                        sn = cs * sn1 + sn * cs1;
                        cs = t;
                    }
                } else {
                    b = -c;
                    c = zero;
                    let t = cs;
                    cs = -sn;
                    sn = t;
                }
            }
        }
    }

    let (rt1i, rt2i) = if c.is_zero() {
        (zero, zero)
    } else {
        let v = b.abs().sqrt() * c.abs().sqrt();
        (v, -v)
    };
    Lanv2 { a, b, c, d, rt1r: a, rt1i, rt2r: d, rt2i, cs, sn }
}

/// Eigen-decomposition of the symmetric 2x2 `[a b; b c]`: returns
/// `(rt1, rt2, cs, sn)` with `|rt1| >= |rt2|` and `(cs, sn)` the unit
/// eigenvector for `rt1`.
pub fn laev2<T: Real>(a: T, b: T, c: T) -> (T, T, T, T) {
    let (zero, one) = (T::zero(), T::one());
    let two = T::from_f64(2.0);
    let sm = a + c;
    let df = a - c;
    let adf = df.abs();
    let tb = b + b;
    let ab = tb.abs();
    let (acmx, acmn) = if a.abs() > c.abs() { (a, c) } else { (c, a) };
    let rt = if adf > ab {
        let r = ab / adf;
        adf * (one + r * r).sqrt()
    } else if adf < ab {
        let r = adf / ab;
        ab * (one + r * r).sqrt()
    } else {
        ab * two.sqrt()
    };
    let (rt1, rt2, sgn1);
    if sm < zero {
        rt1 = half::<T>() * (sm - rt);
        sgn1 = -1;
        rt2 = (acmx / rt1) * acmn - (b / rt1) * b;
    } else if sm > zero {
        rt1 = half::<T>() * (sm + rt);
        sgn1 = 1;
        rt2 = (acmx / rt1) * acmn - (b / rt1) * b;
    } else {
        rt1 = half::<T>() * rt;
        rt2 = -half::<T>() * rt;
        sgn1 = 1;
    }
    let (cs, sgn2) = if df >= zero { (df + rt, 1) } else { (df - rt, -1) };
    let (mut cs1, mut sn1);
    if cs.abs() > ab {
        let ct = -tb / cs;
        sn1 = one / (one + ct * ct).sqrt();
        cs1 = ct * sn1;
    } else if ab.is_zero() {
        cs1 = one;
        sn1 = zero;
    } else {
        let tn = -cs / tb;
        cs1 = one / (one + tn * tn).sqrt();
        sn1 = tn * cs1;
    }
    if sgn1 == sgn2 {
        let tn = cs1;
        cs1 = -sn1;
        sn1 = tn;
    }
    (rt1, rt2, cs1, sn1)
}

/// Generates the `m x n` matrix `Q = H(1) ... H(k)` with orthonormal columns
/// from reflectors stored below the diagonal of the first `k` columns.
pub fn org2r<T: Real>(m: usize, n: usize, k: usize, a: &mut [T], lda: usize, tau: &[T]) {
    if n == 0 {
        return;
    }
    for j in k + 1..=n {
        for l in 1..=m {
            a[at(l, j, lda)] = T::zero();
        }
        a[at(j, j, lda)] = T::one();
    }
    for i in (1..=k).rev() {
        if i < n {
            a[at(i, i, lda)] = T::one();
            let v: Vec<T> = a[at(i, i, lda)..at(i, i, lda) + m - i + 1].to_vec();
            let off = at(i, i + 1, lda);
            larf_left(m - i + 1, n - i, &v, tau[i - 1], &mut a[off..], lda);
        }
        for l in i + 1..=m {
            a[at(l, i, lda)] *= -tau[i - 1];
        }
        a[at(i, i, lda)] = T::one() - tau[i - 1];
        for l in 1..i {
            a[at(l, i, lda)] = T::zero();
        }
    }
}

/// Generates the `m x n` matrix `Q = H(k) ... H(1)` with orthonormal rows
/// from reflectors stored right of the diagonal in the first `k` rows.
pub fn orgl2<T: Real>(m: usize, n: usize, k: usize, a: &mut [T], lda: usize, tau: &[T]) {
    if m == 0 {
        return;
    }
    if k < m {
        for j in 1..=n {
            for l in k + 1..=m {
                a[at(l, j, lda)] = T::zero();
            }
            if j > k && j <= m {
                a[at(j, j, lda)] = T::one();
            }
        }
    }
    for i in (1..=k).rev() {
        if i < n {
            if i < m {
                a[at(i, i, lda)] = T::one();
                let v: Vec<T> = (i..=n).map(|j| a[at(i, j, lda)]).collect();
                let off = at(i + 1, i, lda);
                larf_right(m - i, n - i + 1, &v, tau[i - 1], &mut a[off..], lda);
            }
            for j in i + 1..=n {
                a[at(i, j, lda)] *= -tau[i - 1];
            }
        }
        a[at(i, i, lda)] = T::one() - tau[i - 1];
        for l in 1..i {
            a[at(i, l, lda)] = T::zero();
        }
    }
}

/// Largest absolute entry of the leading `m x n` block.
pub(crate) fn max_abs<T: Real>(m: usize, n: usize, a: &[T], lda: usize) -> T {
    let mut v = T::zero();
    for j in 0..n {
        for &x in &a[j * lda..j * lda + m] {
            let ax = x.abs();
            if ax > v || ax.is_nan() {
                v = ax;
            }
        }
    }
    v
}

/// Multiplies the leading `m x n` block by `cto / cfrom` in steps that never
/// overflow or underflow (the `lascl` scheme).
pub(crate) fn lascl<T: Real>(cfrom: T, cto: T, m: usize, n: usize, a: &mut [T], lda: usize) {
    let smlnum = T::safe_min();
    let bignum = T::one() / smlnum;
    let mut cfromc = cfrom;
    let mut ctoc = cto;
    loop {
        let cfrom1 = cfromc * smlnum;
        let mul;
        let done;
        if cfrom1 == cfromc {
            // cfromc is inf: multiply by a correctly signed zero or nan.
            mul = ctoc / cfromc;
            done = true;
        } else {
            let cto1 = ctoc / bignum;
            if cto1 == ctoc {
                mul = ctoc;
                done = true;
                cfromc = T::one();
            } else if cfrom1.abs() > ctoc.abs() && !ctoc.is_zero() {
                mul = smlnum;
                done = false;
                cfromc = cfrom1;
            } else if cto1.abs() > cfromc.abs() {
                mul = bignum;
                done = false;
                ctoc = cto1;
            } else {
                mul = ctoc / cfromc;
                done = true;
            }
        }
        for j in 0..n {
            for x in &mut a[j * lda..j * lda + m] {
                *x *= mul;
            }
        }
        if done {
            break;
        }
    }
}
