//! Worked examples at double-double precision. Each demo prints its inputs
//! and outputs as Octave literals and checks the results against the known
//! answers; `mismatches` lists every failed check.

use std::fmt::Write as _;

use clap::ValueEnum;
use mpkit::mpblas::{cgemm, rgemm, Matrix};
use mpkit::mplapack::{gees, gesvd, syev};
use mpkit::testkit::{hilbert_infnorm_study, residual_eig, residual_schur, residual_svd, ResidualReport};
use mpkit::{DdComplex, DdReal, Real};

use crate::octave::{format_complex, format_num, print_complex_octave, print_octave, print_vector, LONG_DIGITS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Demo {
    Rgemm,
    Cgemm,
    Rsyev,
    Rgees,
    Rgesvd,
    Hilbert,
}

impl Demo {
    pub const ALL: [Demo; 6] = [Demo::Rgemm, Demo::Cgemm, Demo::Rsyev, Demo::Rgees, Demo::Rgesvd, Demo::Hilbert];
}

#[derive(Clone, Debug, Default)]
pub struct DemoOutcome {
    pub text: String,
    pub mismatches: Vec<String>,
}

impl DemoOutcome {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn matrix(&mut self, name: &str, m: &Matrix<DdReal>) {
        self.line(format!("{name} ={}", print_octave(m, LONG_DIGITS)));
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        let what = what.into();
        self.line(format!("# {} {what}", if ok { "ok" } else { "MISMATCH" }));
        if !ok {
            self.mismatches.push(what);
        }
    }

    fn ratios(&mut self, reports: &[ResidualReport]) {
        for r in reports {
            self.check(r.passed, format!("{} ratio {:.3e} < {}", r.name, r.ratio, r.threshold));
        }
    }
}

pub fn run_demo(demo: Demo) -> DemoOutcome {
    let mut out = DemoOutcome::default();
    match demo {
        Demo::Rgemm => demo_rgemm(&mut out),
        Demo::Cgemm => demo_cgemm(&mut out),
        Demo::Rsyev => demo_rsyev(&mut out),
        Demo::Rgees => demo_rgees(&mut out),
        Demo::Rgesvd => demo_rgesvd(&mut out),
        Demo::Hilbert => demo_hilbert(&mut out),
    }
    out
}

fn dd_matrix<const N: usize>(rows: &[[f64; N]]) -> Matrix<DdReal> {
    Matrix::from_fn(rows.len(), N, |i, j| DdReal::from(rows[i][j]))
}

fn eps() -> DdReal {
    DdReal::eps()
}

fn tol(scale: DdReal) -> DdReal {
    DdReal::from(100.0) * eps() * scale
}

fn demo_rgemm(out: &mut DemoOutcome) {
    out.line("# Rgemm demo...");
    let a = dd_matrix(&[[1.0, 8.0, 3.0], [0.0, 10.0, 8.0], [9.0, -5.0, -1.0]]);
    let b = dd_matrix(&[[9.0, 8.0, 3.0], [3.0, -11.0, 0.0], [-8.0, 6.0, 1.0]]);
    let mut c = dd_matrix(&[[3.0, 3.0, 0.0], [8.0, 4.0, 8.0], [6.0, 1.0, -2.0]]);
    let (alpha, beta) = (DdReal::from(3.0), DdReal::from(-2.0));
    out.matrix("a", &a);
    out.matrix("b", &b);
    out.matrix("c", &c);
    out.line(format!("alpha = {}", format_num(alpha, LONG_DIGITS)));
    out.line(format!("beta = {}", format_num(beta, LONG_DIGITS)));
    rgemm('n', 'n', 3, 3, 3, alpha, a.as_slice(), 3, b.as_slice(), 3, beta, c.as_mut_slice(), 3).expect("valid arguments");
    out.line("alpha * a * b + beta * c");
    out.matrix("ans", &c);
    let expected = dd_matrix(&[[21.0, -192.0, 18.0], [-118.0, -194.0, 8.0], [210.0, 361.0, 82.0]]);
    out.check(c == expected, "ans == [[21,-192,18],[-118,-194,8],[210,361,82]] exactly");
}

fn cplx_matrix(rows: &[[(&str, &str); 3]; 3]) -> Matrix<DdComplex> {
    Matrix::from_fn(3, 3, |i, j| {
        let (re, im) = rows[i][j];
        DdComplex::parse(re, im).expect("literal")
    })
}

/// Inputs and the exact answer of the complex example; the answer is
/// the rational-arithmetic value of `alpha * A * B + beta * C`.
pub mod cgemm_instance {
    pub const A: [[(&str, &str); 3]; 3] = [
        [("1", "-1"), ("8", "2.2"), ("0", "-10")],
        [("2", "0"), ("10", "0"), ("8.1", "2.2")],
        [("-9", "3"), ("-5", "3"), ("-1", "0")],
    ];
    pub const B: [[(&str, &str); 3]; 3] = [
        [("9", "0"), ("8", "-0.01"), ("3", "1.001")],
        [("3", "-8"), ("-11", "0.1"), ("8", "0.00001")],
        [("-8", "1"), ("6", "0"), ("1.1", "1")],
    ];
    pub const C: [[(&str, &str); 3]; 3] = [
        [("3", "1"), ("-3", "9.99"), ("-9", "-11")],
        [("8", "-1"), ("4", "4.44"), ("8", "9")],
        [("6", "0"), ("-1", "0"), ("-2", "1")],
    ];
    pub const ALPHA: (&str, &str) = ("3", "-1.2");
    pub const BETA: (&str, &str) = ("-2", "-2");
    pub const ANSWER: [[(&str, &str); 3]; 3] = [
        [("194.12", "-39.92"), ("-324.402", "-191.934"), ("235.52423", "-39.7979336")],
        [("-182.4", "-259.7"), ("-118.304", "80.14"), ("295.15652", "-107.6857")],
        [("-114", "289.8"), ("-79.102", "1.694"), ("-179.71995", "156.296486")],
    ];
}

fn demo_cgemm(out: &mut DemoOutcome) {
    use cgemm_instance::*;
    out.line("# Cgemm demo...");
    let (a, b, mut c) = (cplx_matrix(&A), cplx_matrix(&B), cplx_matrix(&C));
    let alpha = DdComplex::parse(ALPHA.0, ALPHA.1).expect("literal");
    let beta = DdComplex::parse(BETA.0, BETA.1).expect("literal");
    out.line(format!("a ={}", print_complex_octave(&a, LONG_DIGITS)));
    out.line(format!("b ={}", print_complex_octave(&b, LONG_DIGITS)));
    out.line(format!("c ={}", print_complex_octave(&c, LONG_DIGITS)));
    out.line(format!("alpha = {}", format_complex(alpha, LONG_DIGITS)));
    out.line(format!("beta = {}", format_complex(beta, LONG_DIGITS)));
    cgemm('n', 'n', 3, 3, 3, alpha, a.as_slice(), 3, b.as_slice(), 3, beta, c.as_mut_slice(), 3).expect("valid arguments");
    out.line("alpha * a * b + beta * c");
    out.line(format!("ans ={}", print_complex_octave(&c, LONG_DIGITS)));
    let expected = cplx_matrix(&ANSWER);
    let bound = DdReal::from(1e-28);
    let mut worst = DdReal::ZERO;
    for j in 0..3 {
        for i in 0..3 {
            let d = c[(i, j)] - expected[(i, j)];
            worst = worst.max(d.re.abs()).max(d.im.abs());
        }
    }
    out.check(worst <= bound, format!("max |ans - exact| = {} <= 1e-28", format_num(worst, 2)));
}

fn demo_rsyev(out: &mut DemoOutcome) {
    out.line("# Rsyev demo...");
    let a = dd_matrix(&[[5.0, 4.0, 1.0, 1.0], [4.0, 5.0, 1.0, 1.0], [1.0, 1.0, 4.0, 2.0], [1.0, 1.0, 2.0, 4.0]]);
    out.matrix("a", &a);
    let r = match syev(&a, 'U', true) {
        Ok(r) => r,
        Err(e) => return out.check(false, format!("Rsyev failed: {e}")),
    };
    let v = r.v.expect("vectors requested");
    out.line(format!("w ={}", print_vector(&r.w, LONG_DIGITS)));
    out.matrix("v", &v);
    for (k, (&w, e)) in r.w.iter().zip([1.0, 2.0, 5.0, 10.0]).enumerate() {
        let e = DdReal::from(e);
        out.check((w - e).abs() <= tol(e), format!("w({}) == {e} within 100 eps", k + 1));
    }
    match residual_eig(&a, 'U', &r.w, &v) {
        Ok(reports) => out.ratios(&reports),
        Err(e) => out.check(false, e.to_string()),
    }
}

/// Matches computed eigenvalues to the expected list, one to one.
fn eigen_match(out: &mut DemoOutcome, wr: &[DdReal], wi: &[DdReal], expected: &[(f64, f64)]) {
    let mut unused: Vec<(DdReal, DdReal)> = expected.iter().map(|&(r, i)| (DdReal::from(r), DdReal::from(i))).collect();
    for (&r, &i) in wr.iter().zip(wi) {
        let dist = |e: &(DdReal, DdReal)| (r - e.0).abs().max((i - e.1).abs());
        let best = (0..unused.len()).min_by(|&x, &y| dist(&unused[x]).partial_cmp(&dist(&unused[y])).expect("finite"));
        let Some(k) = best else { break };
        let e = unused.remove(k);
        out.check(
            dist(&e) <= tol(DdReal::ONE),
            format!("eigenvalue {}{}i within 100 eps of {}{}i", format_num(r, 3), format_num(i, 3), e.0, e.1),
        );
    }
}

fn demo_rgees(out: &mut DemoOutcome) {
    out.line("# Rgees demo...");
    let instances = [
        (
            dd_matrix(&[[-2.0, 2.0, 2.0, 2.0], [-3.0, 3.0, 2.0, 2.0], [-2.0, 0.0, 4.0, 2.0], [-1.0, 0.0, 0.0, 5.0]]),
            vec![(1.0, 0.0), (2.0, 0.0), (3.0, 0.0), (4.0, 0.0)],
        ),
        (
            dd_matrix(&[[4.0, -5.0, 0.0, 3.0], [0.0, 4.0, -3.0, -5.0], [5.0, -3.0, 4.0, 0.0], [3.0, 0.0, 5.0, 4.0]]),
            vec![(12.0, 0.0), (1.0, 5.0), (1.0, -5.0), (2.0, 0.0)],
        ),
    ];
    for (a, expected) in instances {
        out.matrix("a", &a);
        let r = match gees(&a, true) {
            Ok(r) => r,
            Err(e) => return out.check(false, format!("Rgees failed: {e}")),
        };
        let z = r.z.expect("vectors requested");
        out.matrix("vs", &z);
        out.matrix("t", &r.t);
        out.line(format!("wr ={}", print_vector(&r.wr, LONG_DIGITS)));
        out.line(format!("wi ={}", print_vector(&r.wi, LONG_DIGITS)));
        eigen_match(out, &r.wr, &r.wi, &expected);
        match residual_schur(&a, &r.t, &z) {
            Ok(reports) => out.ratios(&reports),
            Err(e) => out.check(false, e.to_string()),
        }
    }
}

fn demo_rgesvd(out: &mut DemoOutcome) {
    out.line("# Rgesvd demo...");
    let a = dd_matrix(&[[1.0, 0.0, 0.0, 0.0, 2.0], [0.0, 0.0, 3.0, 0.0, 0.0], [0.0, 0.0, 0.0, 0.0, 0.0], [0.0, 2.0, 0.0, 0.0, 0.0]]);
    out.matrix("a", &a);
    let r = match gesvd(&a, true) {
        Ok(r) => r,
        Err(e) => return out.check(false, format!("Rgesvd failed: {e}")),
    };
    let (u, vt) = (r.u.expect("vectors"), r.vt.expect("vectors"));
    out.line(format!("s ={}", print_vector(&r.s, LONG_DIGITS)));
    out.matrix("u", &u);
    out.matrix("vt", &vt);
    let expected = [DdReal::from(3.0), DdReal::from(5.0).sqrt(), DdReal::from(2.0)];
    for (k, (&s, e)) in r.s.iter().zip(expected).enumerate() {
        out.check((s - e).abs() <= tol(e), format!("s({}) == {} within 100 eps", k + 1, format_num(e, 5)));
    }
    let s4 = r.s[3];
    out.check(s4.abs() <= tol(a.norm_one().max(a.norm_inf())), "s(4) == 0 within 100 eps ||a||");
    match residual_svd(&a, &r.s, &u, &vt) {
        Ok(reports) => out.ratios(&reports),
        Err(e) => out.check(false, e.to_string()),
    }
}

fn demo_hilbert(out: &mut DemoOutcome) {
    out.line("# Hilbert inversion demo: InfnormL = ||inv(H) H - I||_inf");
    let dd = hilbert_infnorm_study::<DdReal>(8);
    let f = hilbert_infnorm_study::<f64>(8);
    for (d, f) in dd.iter().zip(&f) {
        let show = |r: &Result<String, String>| r.clone().unwrap_or_else(|e| format!("failed ({e})"));
        let dv = d.infnorm_l.as_ref().map(|x| format_num(*x, 3)).map_err(|e| e.to_string());
        let fv = f.infnorm_l.as_ref().map(|x| format_num(*x, 3)).map_err(|e| e.to_string());
        out.line(format!("# n = {}  dd InfnormL = {}  f64 InfnormL = {}", d.n, show(&dv), show(&fv)));
    }
    let dd_val = |n: usize| dd[n - 1].infnorm_l.clone().ok();
    let f_val = |n: usize| f[n - 1].infnorm_l.clone().ok();
    out.check(dd_val(1) == Some(DdReal::ZERO) && f_val(1) == Some(0.0), "n = 1: InfnormL == 0 at both precisions");
    out.check(f_val(2) == Some(0.0), "n = 2: InfnormL == 0 at f64");
    // At dd the n = 2 residual is one unit of 2^-105 (see README).
    if dd_val(2) != Some(DdReal::ZERO) {
        out.line("# note: n = 2 at dd leaves a residual of one dd rounding unit");
    }
    for n in 3..=8 {
        let ok = dd_val(n).is_some_and(|x| x < DdReal::from(1e-20));
        out.check(ok, format!("n = {n}: dd InfnormL < 1e-20"));
    }
    let f8 = f_val(8);
    out.check(f8.is_some_and(|x| x > 1e-13), format!("n = 8: f64 InfnormL > 1e-13 ({})", f8.map_or("-".into(), |x| format_num(x, 3))));
}

/// Runs every demo and returns `(name, outcome)` pairs.
pub fn run_all() -> Vec<(Demo, DemoOutcome)> {
    Demo::ALL.iter().map(|&d| (d, run_demo(d))).collect()
}

pub fn summary(outcome: &DemoOutcome) -> String {
    let mut s = String::new();
    for m in &outcome.mismatches {
        let _ = writeln!(s, "mismatch: {m}");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_demo_matches_its_reference() {
        for (demo, outcome) in run_all() {
            assert!(outcome.passed(), "{demo:?}\n{}{}", outcome.text, summary(&outcome));
        }
    }
}
