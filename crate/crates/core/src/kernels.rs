//! ±1-valued kernels on the unit square or the torus, and their discretized
//! matrix form.
//!
//! Two continuous kernels are built in:
//!
//! * [`SignKernel::HalfPlane`] on the open unit square: `+1` if `x < y`, `-1`
//!   otherwise.
//! * [`SignKernel::CircleBand`] on the torus `T x T` (circle of length 1):
//!   `+1` if the circular distance between `x` and `y` is below `0.25`, `-1`
//!   otherwise.
//!
//! Ties (`x == y`, distance exactly `0.25`) fall in the `-1` branch. A custom
//! kernel wraps a [`SignMatrix`] and maps each point to its containing cell.

use std::fmt;
use std::io::Read;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};

/// A single kernel value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[repr(i8)]
pub enum Sign {
    Minus = -1,
    Plus = 1,
}

impl Sign {
    pub fn from_bool(positive: bool) -> Self {
        if positive {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn as_i8(self) -> i8 {
        self as i8
    }

    pub fn as_f64(self) -> f64 {
        self as i8 as f64
    }
}

/// The two built-in problems, numbered 1 and 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Example {
    /// Unit square, `+1` above the diagonal.
    HalfPlane = 1,
    /// Torus, `+1` inside the band of circular width `0.25` around the diagonal.
    CircleBand = 2,
}

impl Example {
    pub fn from_number(example: u8) -> Result<Self> {
        match example {
            1 => Ok(Example::HalfPlane),
            2 => Ok(Example::CircleBand),
            other => Err(invalid(format!("unknown example {other}, expected 1 or 2"))),
        }
    }

    pub fn number(self) -> u8 {
        self as u8
    }

    pub fn kernel(self) -> SignKernel {
        match self {
            Example::HalfPlane => SignKernel::HalfPlane,
            Example::CircleBand => SignKernel::CircleBand,
        }
    }
}

/// A ±1 kernel: one of the two built-in examples or a user matrix.
#[derive(Debug, Clone, PartialEq)]
pub enum SignKernel {
    HalfPlane,
    CircleBand,
    CustomMatrix(SignMatrix),
}

impl SignKernel {
    /// Kernel for example number 1 (half-plane) or 2 (circle band).
    pub fn example(example: u8) -> Result<Self> {
        Example::from_number(example).map(Example::kernel)
    }

    /// The built-in example this kernel is, if any.
    pub fn as_example(&self) -> Option<Example> {
        match self {
            SignKernel::HalfPlane => Some(Example::HalfPlane),
            SignKernel::CircleBand => Some(Example::CircleBand),
            SignKernel::CustomMatrix(_) => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SignKernel::HalfPlane => "half-plane",
            SignKernel::CircleBand => "circle-band",
            SignKernel::CustomMatrix(_) => "custom",
        }
    }

    pub fn eval(&self, x: f64, y: f64) -> Result<Sign> {
        match self {
            SignKernel::HalfPlane => {
                check_unit_square(x, y)?;
                Ok(Sign::from_bool(x < y))
            }
            SignKernel::CircleBand => {
                if !x.is_finite() || !y.is_finite() {
                    return Err(Error::Domain { x, y });
                }
                Ok(Sign::from_bool(torus_distance(x, y) < 0.25))
            }
            SignKernel::CustomMatrix(m) => {
                check_unit_square(x, y)?;
                let i = cell_index(x, m.rows());
                let j = cell_index(y, m.cols());
                Ok(m.sign(i, j))
            }
        }
    }

    /// Samples the kernel at the `n x n` cell centers `(i + 0.5) / n`.
    ///
    /// The built-in kernels are evaluated in integer arithmetic on the cell
    /// indices, so ties on the discontinuity curves are resolved exactly.
    pub fn discretize(&self, n: usize) -> Result<SignMatrix> {
        if n == 0 {
            return Err(invalid("grid size must be at least 1"));
        }
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let s = match self {
                    SignKernel::HalfPlane => Sign::from_bool(i < j),
                    SignKernel::CircleBand => {
                        let k = i.abs_diff(j);
                        // circular distance k/n compared against 1/4
                        Sign::from_bool(4 * k.min(n - k) < n)
                    }
                    SignKernel::CustomMatrix(m) => {
                        let x = (i as f64 + 0.5) / n as f64;
                        let y = (j as f64 + 0.5) / n as f64;
                        m.sign(cell_index(x, m.rows()), cell_index(y, m.cols()))
                    }
                };
                entries.push(s.as_i8());
            }
        }
        SignMatrix::new(n, n, entries)
    }
}

/// Free-function form of [`SignKernel::eval`].
pub fn eval_kernel(kernel: &SignKernel, x: f64, y: f64) -> Result<Sign> {
    kernel.eval(x, y)
}

/// Free-function form of [`SignKernel::discretize`].
pub fn discretize(kernel: &SignKernel, n: usize) -> Result<SignMatrix> {
    kernel.discretize(n)
}

fn check_unit_square(x: f64, y: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) && (0.0..=1.0).contains(&y) {
        Ok(())
    } else {
        Err(Error::Domain { x, y })
    }
}

fn cell_index(x: f64, cells: usize) -> usize {
    ((x * cells as f64) as usize).min(cells - 1)
}

/// Distance on the circle of length 1.
pub fn torus_distance(x: f64, y: f64) -> f64 {
    let t = (x - y).rem_euclid(1.0);
    t.min(1.0 - t)
}

/// An `n x m` matrix of ±1 entries with uniform cell weight `1 / (n m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<i8>,
}

impl SignMatrix {
    /// Builds a matrix from row-major entries, each of which must be ±1.
    pub fn new(rows: usize, cols: usize, entries: Vec<i8>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(invalid("matrix dimensions must be positive"));
        }
        if entries.len() != rows * cols {
            return Err(crate::error::mismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if let Some(pos) = entries.iter().position(|&e| e != 1 && e != -1) {
            return Err(invalid(format!(
                "entry ({}, {}) is {}, expected 1 or -1",
                pos / cols,
                pos % cols,
                entries[pos]
            )));
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(rows: &[Vec<i8>]) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != m) {
            return Err(crate::error::mismatch("ragged rows"));
        }
        Self::new(n, m, rows.concat())
    }

    /// Matrix with every entry equal to `sign`.
    pub fn filled(rows: usize, cols: usize, sign: Sign) -> Result<Self> {
        Self::new(rows, cols, vec![sign.as_i8(); rows * cols])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn cell_weight(&self) -> f64 {
        1.0 / (self.rows as f64 * self.cols as f64)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.entries[i * self.cols + j]
    }

    pub fn sign(&self, i: usize, j: usize) -> Sign {
        Sign::from_bool(self.get(i, j) > 0)
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[i8] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[i8] {
        &self.entries
    }

    pub fn transpose(&self) -> SignMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j));
            }
        }
        SignMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn negated(&self) -> SignMatrix {
        SignMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| -e).collect(),
        }
    }

    /// Text form: `"n m"` header then one line per row.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for SignMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let mut first = true;
            for &e in self.row(i) {
                if !first {
                    f.write_str(" ")?;
                }
                first = false;
                write!(f, "{e}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl FromStr for SignMatrix {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        parse_matrix(text)
    }
}

/// Reads a matrix in the text format from any byte stream.
pub fn load_matrix<R: Read>(mut reader: R) -> Result<SignMatrix> {
    let mut text = String::new();
    reader.read_to_string(&mut text).map_err(|e| Error::Parse {
        line: 0,
        message: format!("read failed: {e}"),
    })?;
    parse_matrix(&text)
}

fn parse_matrix(text: &str) -> Result<SignMatrix> {
    let parse_err = |line: usize, message: String| Error::Parse { line, message };

    let mut lines = text
        .lines()
        .enumerate()
        .map(|(idx, l)| (idx + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines
        .next()
        .ok_or_else(|| parse_err(1, "missing header \"n m\"".into()))?;
    let dims: Vec<&str> = header.split_whitespace().collect();
    let parse_dim = |s: &str| -> Result<usize> {
        match s.parse::<usize>() {
            Ok(v) if v > 0 => Ok(v),
            _ => Err(parse_err(
                header_line,
                format!("bad dimension {s:?}, expected a positive integer"),
            )),
        }
    };
    if dims.len() != 2 {
        return Err(parse_err(
            header_line,
            format!("header must be \"n m\", got {header:?}"),
        ));
    }
    let rows = parse_dim(dims[0])?;
    let cols = parse_dim(dims[1])?;

    let mut entries = Vec::with_capacity(rows * cols);
    let mut seen = 0;
    for (line_no, line) in lines {
        if seen == rows {
            return Err(parse_err(
                line_no,
                format!("unexpected extra row, header declared {rows} rows"),
            ));
        }
        let before = entries.len();
        for tok in line.split_whitespace() {
            match tok {
                "1" => entries.push(1),
                "-1" => entries.push(-1),
                other => {
                    return Err(parse_err(
                        line_no,
                        format!("entry {other:?} is not 1 or -1"),
                    ))
                }
            }
        }
        let got = entries.len() - before;
        if got != cols {
            return Err(parse_err(
                line_no,
                format!("row has {got} entries, expected {cols}"),
            ));
        }
        seen += 1;
    }
    if seen != rows {
        let last = text.lines().count().max(1);
        return Err(parse_err(
            last,
            format!("found {seen} rows, header declared {rows}"),
        ));
    }
    SignMatrix::new(rows, cols, entries)
}
