use std::fmt;
use std::io;

use serde::Serialize;

use crate::real::Precision;

/// Pass threshold of the LAPACK test programs.
pub const DEFAULT_THRESHOLD: f64 = 30.0;

/// One named test ratio and its verdict.
#[derive(Clone, Debug, PartialEq)]
pub struct ResidualReport {
    pub name: String,
    pub precision: Precision,
    /// `(m, n)` of the problem.
    pub dims: (usize, usize),
    pub seed: Option<u64>,
    pub ratio: f64,
    pub threshold: f64,
    /// `ratio < threshold`; false for NaN ratios.
    pub passed: bool,
}

impl ResidualReport {
    pub fn new(name: impl Into<String>, precision: Precision, dims: (usize, usize), ratio: f64) -> Self {
        ResidualReport {
            name: name.into(),
            precision,
            dims,
            seed: None,
            ratio,
            threshold: DEFAULT_THRESHOLD,
            passed: ratio < DEFAULT_THRESHOLD,
        }
    }

    pub fn with_threshold(mut self, threshold: f64) -> Self {
        self.threshold = threshold;
        self.passed = self.ratio < threshold;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn verdict(&self) -> &'static str {
        if self.passed {
            "PASS"
        } else {
            "FAIL"
        }
    }
}

impl fmt::Display for ResidualReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let seed = self.seed.map_or_else(|| "-".to_string(), |s| s.to_string());
        write!(
            f,
            "{:<32} {:<3} {:>3}x{:<3} seed={:<5} ratio={:<11.4e} threshold={} {}",
            self.name,
            self.precision,
            self.dims.0,
            self.dims.1,
            seed,
            self.ratio,
            self.threshold,
            self.verdict()
        )
    }
}

#[derive(Serialize)]
struct Row<'a> {
    name: &'a str,
    precision: &'a str,
    m: usize,
    n: usize,
    seed: Option<u64>,
    ratio: f64,
    threshold: f64,
    result: &'a str,
}

/// One [`Display`](fmt::Display) line per report.
pub fn write_text<W: io::Write>(reports: &[ResidualReport], mut out: W) -> io::Result<()> {
    for r in reports {
        writeln!(out, "{r}")?;
    }
    Ok(())
}

/// CSV with the same columns as the text report.
pub fn write_csv<W: io::Write>(reports: &[ResidualReport], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if reports.is_empty() {
        w.write_record(["name", "precision", "m", "n", "seed", "ratio", "threshold", "result"])?;
    }
    for r in reports {
        w.serialize(Row {
            name: &r.name,
            precision: r.precision.as_str(),
            m: r.dims.0,
            n: r.dims.1,
            seed: r.seed,
            ratio: r.ratio,
            threshold: r.threshold,
            result: r.verdict(),
        })?;
    }
    w.flush()?;
    Ok(())
}

/// `(passed, total)`.
pub fn tally(reports: &[ResidualReport]) -> (usize, usize) {
    (reports.iter().filter(|r| r.passed).count(), reports.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_follows_threshold() {
        let r = ResidualReport::new("x", Precision::Dd, (2, 2), 29.9);
        assert!(r.passed);
        assert!(!r.clone().with_threshold(10.0).passed);
        assert!(!ResidualReport::new("nan", Precision::F64, (1, 1), f64::NAN).passed);
    }

    #[test]
    fn csv_columns() {
        let reports = [ResidualReport::new("Rgetrf LU-PA", Precision::Dd, (3, 3), 0.5).with_seed(4)];
        let mut buf = Vec::new();
        write_csv(&reports, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("name,precision,m,n,seed,ratio,threshold,result"));
        assert_eq!(lines.next(), Some("Rgetrf LU-PA,dd,3,3,4,0.5,30.0,PASS"));
        let mut empty = Vec::new();
        write_csv(&[], &mut empty).unwrap();
        assert_eq!(String::from_utf8(empty).unwrap().lines().count(), 1);
    }
}
