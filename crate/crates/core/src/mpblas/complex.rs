use super::{lsame, BlasError, IndexInt};
use crate::ddarith::DdComplex;

#[derive(Clone, Copy, PartialEq)]
enum Op {
    None,
    Trans,
    ConjTrans,
}

fn op_of(c: char) -> Option<Op> {
    if lsame(c, 'N') {
        Some(Op::None)
    } else if lsame(c, 'T') {
        Some(Op::Trans)
    } else if lsame(c, 'C') {
        Some(Op::ConjTrans)
    } else {
        None
    }
}

/// Complex double-double `C <- alpha * op(A) * op(B) + beta * C`, where
/// `op(X)` is `X`, `X^T` (`'T'`) or `X^H` (`'C'`).
#[allow(clippy::too_many_arguments)]
pub fn cgemm(
    transa: char,
    transb: char,
    m: IndexInt,
    n: IndexInt,
    k: IndexInt,
    alpha: DdComplex,
    a: &[DdComplex],
    lda: IndexInt,
    b: &[DdComplex],
    ldb: IndexInt,
    beta: DdComplex,
    c: &mut [DdComplex],
    ldc: IndexInt,
) -> Result<(), BlasError> {
    let (opa, opb) = (op_of(transa), op_of(transb));
    let nota = opa == Some(Op::None);
    let notb = opb == Some(Op::None);
    let nrowa = if nota { m } else { k };
    let nrowb = if notb { k } else { n };
    let info = if opa.is_none() {
        1
    } else if opb.is_none() {
        2
    } else if m < 0 {
        3
    } else if n < 0 {
        4
    } else if k < 0 {
        5
    } else if lda < nrowa.max(1) {
        8
    } else if ldb < nrowb.max(1) {
        10
    } else if ldc < m.max(1) {
        13
    } else {
        0
    };
    if info != 0 {
        return Err(BlasError::new("Cgemm", info));
    }
    if m == 0 || n == 0 || ((alpha.is_zero() || k == 0) && beta == DdComplex::ONE) {
        return Ok(());
    }
    let (opa, opb) = (opa.unwrap(), opb.unwrap());
    let (m, n, k) = (m as usize, n as usize, k as usize);
    let (lda, ldb, ldc) = (lda as usize, ldb as usize, ldc as usize);
    let get = |x: &[DdComplex], ld: usize, op: Op, r: usize, s: usize| match op {
        Op::None => x[r + s * ld],
        Op::Trans => x[s + r * ld],
        Op::ConjTrans => x[s + r * ld].conj(),
    };

    for j in 0..n {
        let ccol = &mut c[j * ldc..j * ldc + m];
        if alpha.is_zero() {
            for v in ccol.iter_mut() {
                *v = if beta.is_zero() { DdComplex::ZERO } else { beta * *v };
            }
            continue;
        }
        if nota {
            if beta.is_zero() {
                ccol.fill(DdComplex::ZERO);
            } else if beta != DdComplex::ONE {
                for v in ccol.iter_mut() {
                    *v *= beta;
                }
            }
            for l in 0..k {
                let temp = alpha * get(b, ldb, opb, l, j);
                for (i, ci) in ccol.iter_mut().enumerate() {
                    *ci += temp * a[i + l * lda];
                }
            }
        } else {
            for (i, ci) in ccol.iter_mut().enumerate() {
                let mut temp = DdComplex::ZERO;
                for l in 0..k {
                    temp += get(a, lda, opa, i, l) * get(b, ldb, opb, l, j);
                }
                *ci = if beta.is_zero() { alpha * temp } else { alpha * temp + beta * *ci };
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> DdComplex {
        DdComplex::from_f64(re, im)
    }

    #[test]
    fn one_by_one_products() {
        let a = [c(1.0, 2.0)];
        let b = [c(3.0, -1.0)];
        let mut out = [c(1.0, 1.0)];
        cgemm('N', 'N', 1, 1, 1, DdComplex::ONE, &a, 1, &b, 1, DdComplex::ONE, &mut out, 1).unwrap();
        // (1+2i)(3-i) = 5+5i
        assert_eq!(out[0], c(6.0, 6.0));
        let mut out = [DdComplex::ZERO];
        cgemm('C', 'N', 1, 1, 1, DdComplex::ONE, &a, 1, &b, 1, DdComplex::ZERO, &mut out, 1).unwrap();
        // (1-2i)(3-i) = 1-7i
        assert_eq!(out[0], c(1.0, -7.0));
    }

    #[test]
    fn flags_validated() {
        let z = [DdComplex::ZERO; 1];
        let mut out = [DdComplex::ZERO; 1];
        let e = cgemm('X', 'N', 1, 1, 1, DdComplex::ONE, &z, 1, &z, 1, DdComplex::ZERO, &mut out, 1);
        assert_eq!(e.unwrap_err(), BlasError::new("Cgemm", 1));
    }
}
