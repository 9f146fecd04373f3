//! A small parser for the Octave matrix-literal subset: nested brackets,
//! `,`/whitespace for horizontal and `;` for vertical concatenation, real
//! numbers with optional sign, and `re±imi` complex entries.

use mpkit::mpblas::Matrix;
use mpkit::{DdComplex, DdReal};
use mpkit_cli::octave::{print_complex_octave, print_octave, print_vector, LONG_DIGITS, SHORT_DIGITS};
use proptest::prelude::*;

type Cell = (String, Option<String>);
type Block = Vec<Vec<Cell>>;

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(s: &'a str) -> Self {
        Parser { s: s.as_bytes(), pos: 0 }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c == b' ' || c == b'\t') {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), String> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(format!("expected {:?} at {}", c as char, self.pos))
        }
    }

    fn number(&mut self) -> Result<String, String> {
        let start = self.pos;
        if matches!(self.peek(), Some(b'+' | b'-')) {
            self.pos += 1;
        }
        let digits = |p: &mut Self| {
            let s = p.pos;
            while p.peek().is_some_and(|c| c.is_ascii_digit()) {
                p.pos += 1;
            }
            p.pos > s
        };
        let int = digits(self);
        let mut frac = false;
        if self.peek() == Some(b'.') {
            self.pos += 1;
            frac = digits(self);
        }
        if !int && !frac {
            return Err(format!("number expected at {start}"));
        }
        if matches!(self.peek(), Some(b'e' | b'E')) {
            self.pos += 1;
            if matches!(self.peek(), Some(b'+' | b'-')) {
                self.pos += 1;
            }
            if !digits(self) {
                return Err(format!("bad exponent at {}", self.pos));
            }
        }
        Ok(String::from_utf8(self.s[start..self.pos].to_vec()).unwrap())
    }

    /// A real entry, or a complex one when a signed term ending in `i`
    /// follows without whitespace.
    fn entry(&mut self) -> Result<Cell, String> {
        let re = self.number()?;
        if matches!(self.peek(), Some(b'+' | b'-')) {
            let im = self.number()?;
            if self.peek() != Some(b'i') {
                return Err(format!("expected 'i' at {}", self.pos));
            }
            self.pos += 1;
            return Ok((re, Some(im)));
        }
        Ok((re, None))
    }

    fn element(&mut self) -> Result<Block, String> {
        self.skip_ws();
        if self.peek() == Some(b'[') {
            self.matrix()
        } else {
            Ok(vec![vec![self.entry()?]])
        }
    }

    fn matrix(&mut self) -> Result<Block, String> {
        self.expect(b'[')?;
        let mut rows: Vec<Vec<Block>> = Vec::new();
        let mut row: Vec<Block> = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b']') => {
                    self.pos += 1;
                    rows.push(std::mem::take(&mut row));
                    break;
                }
                Some(b';') => {
                    self.pos += 1;
                    rows.push(std::mem::take(&mut row));
                }
                Some(b',') => self.pos += 1,
                Some(_) => row.push(self.element()?),
                None => return Err("unterminated matrix".into()),
            }
        }
        let mut out = Block::new();
        for blocks in rows.into_iter().filter(|r| !r.is_empty()) {
            let height = blocks[0].len();
            if blocks.iter().any(|b| b.len() != height) {
                return Err("horizontal dimensions mismatch".into());
            }
            let mut joined: Block = vec![Vec::new(); height];
            for b in blocks {
                for (dst, src) in joined.iter_mut().zip(b) {
                    dst.extend(src);
                }
            }
            if let Some(first) = out.first() {
                if joined.iter().any(|r| r.len() != first.len()) {
                    return Err("vertical dimensions mismatch".into());
                }
            }
            out.extend(joined);
        }
        Ok(out)
    }
}

fn parse(text: &str) -> Result<Block, String> {
    let mut p = Parser::new(text);
    let m = p.matrix()?;
    p.skip_ws();
    if p.pos != text.len() {
        return Err(format!("trailing input at {}", p.pos));
    }
    Ok(m)
}

fn real_cells(b: &Block) -> Vec<Vec<String>> {
    b.iter().map(|r| r.iter().map(|(re, im)| {
        assert!(im.is_none());
        re.clone()
    }).collect()).collect()
}

#[test]
fn parser_follows_octave_concatenation() {
    assert_eq!(parse("[ [ 1, 2]; [ 3, 4] ]").unwrap().len(), 2);
    assert_eq!(parse("[1 2 3]").unwrap()[0].len(), 3);
    assert!(parse("[ [ 1, 2]; [ 3] ]").is_err());
    assert!(parse("[ [ 1, 2]; [ 3, 4] ").is_err());
    assert!(parse("[ 1.e ]").is_err());
}

#[test]
fn zero_matrix_literal() {
    let text = print_octave(&Matrix::<f64>::zeros(1, 1), SHORT_DIGITS);
    assert_eq!(text, "[ [ +0.0000000000000000e+00] ]");
    assert_eq!(real_cells(&parse(&text).unwrap()), [["+0.0000000000000000e+00"]]);
}

#[test]
fn vectors_parse_as_columns() {
    let b = parse(&print_vector(&[1.0f64, 2.0, 3.0], SHORT_DIGITS)).unwrap();
    assert_eq!(b.len(), 3);
    assert!(b.iter().all(|r| r.len() == 1));
}

fn dd_strategy() -> impl Strategy<Value = DdReal> {
    (-1e6f64..1e6, -1.0f64..1.0, -40i32..40).prop_map(|(hi, t, k)| {
        let hi = hi * 2f64.powi(k);
        DdReal::from_parts(hi, t * hi.abs() * f64::EPSILON / 2.0)
    })
}

/// Half a unit in the 33rd significant digit, plus the parser's rounding to
/// a 106-bit significand (a dd pair can carry a few more bits than that).
fn round_trip_rel() -> DdReal {
    DdReal::from(5e-33) + DdReal::from(2f64.powi(-106))
}

proptest! {
    #[test]
    fn f64_matrices_round_trip_exactly(rows in 1usize..5, cols in 1usize..5, data in prop::collection::vec(any::<f64>().prop_filter("finite", |x| x.is_finite()), 16)) {
        let m = Matrix::from_fn(rows, cols, |i, j| data[i * 4 + j]);
        let cells = real_cells(&parse(&print_octave(&m, SHORT_DIGITS)).unwrap());
        prop_assert_eq!(cells.len(), rows);
        for i in 0..rows {
            prop_assert_eq!(cells[i].len(), cols);
            for j in 0..cols {
                let back: f64 = cells[i][j].parse().unwrap();
                prop_assert_eq!(back, m[(i, j)]);
            }
        }
    }

    #[test]
    fn dd_matrices_round_trip_within_printed_digits(rows in 1usize..4, cols in 1usize..4, data in prop::collection::vec(dd_strategy(), 9)) {
        let m = Matrix::from_fn(rows, cols, |i, j| data[i * 3 + j]);
        let cells = real_cells(&parse(&print_octave(&m, LONG_DIGITS)).unwrap());
        for i in 0..rows {
            for j in 0..cols {
                let x = m[(i, j)];
                let back: DdReal = cells[i][j].parse().unwrap();
                let bound = x.abs() * round_trip_rel();
                prop_assert!((back - x).abs() <= bound, "{} vs {}", x, back);
            }
        }
    }

    #[test]
    fn complex_entries_round_trip(re in dd_strategy(), im in dd_strategy()) {
        let z = DdComplex::new(re, im);
        let b = parse(&print_complex_octave(&Matrix::from_rows(&[[z]]), LONG_DIGITS)).unwrap();
        let (r, i) = b[0][0].clone();
        let back = DdComplex::parse(&r, &i.expect("complex entry")).unwrap();
        prop_assert!((back.re - re).abs() <= re.abs() * round_trip_rel());
        prop_assert!((back.im - im).abs() <= im.abs() * round_trip_rel());
    }
}

#[test]
fn demo_output_matrices_are_valid_literals() {
    for demo in mpkit_cli::demos::Demo::ALL {
        let outcome = mpkit_cli::demos::run_demo(demo);
        for line in outcome.text.lines().filter(|l| !l.starts_with('#')) {
            if let Some((_, rhs)) = line.split_once('=') {
                let rhs = rhs.trim();
                if rhs.starts_with('[') {
                    parse(rhs).unwrap_or_else(|e| panic!("{demo:?}: {e}\n{line}"));
                }
            }
        }
    }
}
