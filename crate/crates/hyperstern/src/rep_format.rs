//! Text format for linear representations.
//!
//! ```text
//! # s_b for b = 3
//! base 3
//! dim 2
//! w 1 0
//! v 0 1
//! A0
//! 1 0
//! 1 1
//! A1
//! 1 1
//! 0 1
//! A2
//! 0 1
//! 0 1
//! ```
//!
//! One directive per line; `#` starts a comment and blank lines are ignored.
//! `base` and `dim` must precede everything else. `w` and `v` list `dim`
//! integers. `A<i>` is followed by `dim` rows of `dim` integers each (row-major).
//! Every digit matrix `A0` … `A<base-1>` must appear exactly once, in any
//! order. Entries are arbitrary-precision signed decimal integers.

use std::fmt::{self, Write as _};

use hyperstern_core::linrep::{LinearRep, Matrix};
use hyperstern_core::Base;
use num_bigint::BigInt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based line number, 0 for end of input.
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "at end of input: {}", self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

impl std::error::Error for ParseError {}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

fn integers(line: usize, tokens: &[&str]) -> Result<Vec<BigInt>, ParseError> {
    tokens
        .iter()
        .map(|t| {
            t.parse::<BigInt>()
                .or_else(|_| err(line, format!("`{t}` is not an integer")))
        })
        .collect()
}

pub fn parse(text: &str) -> Result<LinearRep, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let mut header = |key: &str| -> Result<(usize, u64), ParseError> {
        let Some((no, line)) = lines.next() else {
            return err(0, format!("missing `{key}`"));
        };
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.as_slice() {
            [k, value] if *k == key => value
                .parse()
                .map(|v| (no, v))
                .or_else(|_| err(no, format!("`{key}` needs a positive integer"))),
            _ => err(no, format!("expected `{key} <n>`")),
        }
    };
    let (no, b) = header("base")?;
    let base = u32::try_from(b)
        .ok()
        .and_then(|b| Base::new(b).ok())
        .map_or_else(|| err(no, format!("invalid base {b}")), Ok)?;
    let (no, dim) = header("dim")?;
    if dim == 0 || dim > 64 {
        return err(no, format!("dimension {dim} outside 1..=64"));
    }
    let dim = dim as usize;

    let mut w = None;
    let mut v = None;
    let mut matrices: Vec<Option<Matrix>> = vec![None; base.get() as usize];
    while let Some((no, line)) = lines.next() {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens[0] {
            "w" | "v" => {
                let values = integers(no, &tokens[1..])?;
                if values.len() != dim {
                    return err(no, format!("expected {dim} entries, got {}", values.len()));
                }
                let slot = if tokens[0] == "w" { &mut w } else { &mut v };
                if slot.replace(values).is_some() {
                    return err(no, format!("duplicate `{}`", tokens[0]));
                }
            }
            name if name.starts_with('A') && tokens.len() == 1 => {
                let digit: usize = name[1..]
                    .parse()
                    .or_else(|_| err(no, format!("bad matrix label `{name}`")))?;
                if digit >= matrices.len() {
                    return err(no, format!("digit {digit} out of range for base {base}"));
                }
                let mut rows = Vec::with_capacity(dim);
                for _ in 0..dim {
                    let Some((row_no, row)) = lines.next() else {
                        return err(0, format!("matrix {name} is missing rows"));
                    };
                    let row = integers(row_no, &row.split_whitespace().collect::<Vec<_>>())?;
                    if row.len() != dim {
                        return err(row_no, format!("expected {dim} entries, got {}", row.len()));
                    }
                    rows.push(row);
                }
                let m = Matrix::from_rows(rows).map_err(|e| ParseError {
                    line: no,
                    message: e.to_string(),
                })?;
                if matrices[digit].replace(m).is_some() {
                    return err(no, format!("duplicate matrix {name}"));
                }
            }
            other => return err(no, format!("unknown directive `{other}`")),
        }
    }

    let w = w.map_or_else(|| err(0, "missing `w`"), Ok)?;
    let v = v.map_or_else(|| err(0, "missing `v`"), Ok)?;
    let matrices = matrices
        .into_iter()
        .enumerate()
        .map(|(i, m)| m.map_or_else(|| err(0, format!("missing matrix A{i}")), Ok))
        .collect::<Result<Vec<_>, _>>()?;
    LinearRep::new(base, matrices, w, v).map_err(|e| ParseError {
        line: 0,
        message: e.to_string(),
    })
}

pub fn write(rep: &LinearRep) -> String {
    let mut out = String::new();
    let join = |xs: &[BigInt]| {
        xs.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    };
    let _ = writeln!(out, "base {}", rep.base());
    let _ = writeln!(out, "dim {}", rep.dim());
    let _ = writeln!(out, "w {}", join(rep.w()));
    let _ = writeln!(out, "v {}", join(rep.v()));
    for (i, m) in rep.matrices().iter().enumerate() {
        let _ = writeln!(out, "A{i}");
        for row in m.rows() {
            let _ = writeln!(out, "{}", join(row));
        }
    }
    out
}
