//! The `m × n` binary pooling matrix and its text file format.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{invalid, Error, Result};
use crate::support::SupportSet;

const MAGIC: &str = "asmat v1";

/// An `m × n` binary test design: row `t` is test `t`, column `i` is item `i`.
///
/// Both orientations are stored. Rows are length-`n` bitstrings; column
/// supports `S_i` are length-`m` bitstrings. The two are kept as exact
/// transposes and the design is immutable after construction.
#[derive(Clone, PartialEq, Eq)]
pub struct TestDesign {
    n: usize,
    m: usize,
    rows: Vec<SupportSet>,
    cols: Vec<SupportSet>,
}

impl TestDesign {
    /// Builds a design from its rows. Every row must have length `n >= 1`
    /// and there must be at least one row.
    pub fn from_rows(n: usize, rows: Vec<SupportSet>) -> Result<Self> {
        if n == 0 {
            return Err(invalid("n", "a design needs at least one column"));
        }
        if rows.is_empty() {
            return Err(invalid("m", "a design needs at least one row"));
        }
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::LengthMismatch {
                expected: n,
                got: r.len(),
            });
        }
        let m = rows.len();
        let mut cols = vec![SupportSet::empty(m); n];
        for (t, row) in rows.iter().enumerate() {
            for i in row.iter() {
                cols[i].insert(t);
            }
        }
        Ok(Self { n, m, rows, cols })
    }

    /// Builds a design from its column supports, each of length `m >= 1`.
    pub fn from_columns(m: usize, cols: Vec<SupportSet>) -> Result<Self> {
        if m == 0 {
            return Err(invalid("m", "a design needs at least one row"));
        }
        if cols.is_empty() {
            return Err(invalid("n", "a design needs at least one column"));
        }
        if let Some(c) = cols.iter().find(|c| c.len() != m) {
            return Err(Error::LengthMismatch {
                expected: m,
                got: c.len(),
            });
        }
        let n = cols.len();
        let mut rows = vec![SupportSet::empty(n); m];
        for (i, col) in cols.iter().enumerate() {
            for t in col.iter() {
                rows[t].insert(i);
            }
        }
        Ok(Self { n, m, rows, cols })
    }

    pub fn from_fn(n: usize, m: usize, mut entry: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        let rows = (0..m)
            .map(|t| {
                let mut r = SupportSet::empty(n);
                for i in 0..n {
                    if entry(t, i) {
                        r.insert(i);
                    }
                }
                r
            })
            .collect();
        Self::from_rows(n, rows)
    }

    /// Rows given as `0`/`1` strings, e.g. `["110", "011"]`.
    pub fn from_bitstrings<S: AsRef<str>>(rows: &[S]) -> Result<Self> {
        let n = rows.first().map_or(0, |r| r.as_ref().len());
        let rows = rows
            .iter()
            .enumerate()
            .map(|(t, r)| {
                SupportSet::from_bitstring(r.as_ref())
                    .ok_or_else(|| invalid("rows", format!("row {t} has a character other than 0/1")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(n, rows)
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::from_fn(n, n, |t, i| t == i)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn entry(&self, t: usize, i: usize) -> bool {
        self.rows[t].contains(i)
    }

    pub fn row(&self, t: usize) -> &SupportSet {
        &self.rows[t]
    }

    /// Support `S_i` of column `i`.
    pub fn column(&self, i: usize) -> &SupportSet {
        &self.cols[i]
    }

    pub fn columns(&self) -> &[SupportSet] {
        &self.cols
    }

    /// Fraction of ones in the matrix.
    pub fn density(&self) -> f64 {
        let ones: usize = self.rows.iter().map(SupportSet::count).sum();
        ones as f64 / (self.n * self.m) as f64
    }

    /// Support of the disjunction of the given columns; the empty set for
    /// an empty `items`.
    pub fn union_support(&self, items: &[usize]) -> Result<SupportSet> {
        let mut acc = SupportSet::empty(self.m);
        for &i in items {
            if i >= self.n {
                return Err(Error::IndexOutOfRange { index: i, n: self.n });
            }
            acc.union_with(&self.cols[i]);
        }
        Ok(acc)
    }

    /// True iff the stored column supports are the exact transpose of the rows.
    pub fn transpose_check(&self) -> bool {
        self.cols.len() == self.n
            && self.rows.len() == self.m
            && (0..self.m).all(|t| (0..self.n).all(|i| self.rows[t].contains(i) == self.cols[i].contains(t)))
    }

    /// Design whose column `j` is column `perm[j]` of `self`.
    pub fn permute_columns(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: perm.len(),
            });
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(invalid("perm", "not a permutation of the column indices"));
            }
        }
        Self::from_columns(self.m, perm.iter().map(|&p| self.cols[p].clone()).collect())
    }

    /// Serializes to the `asmat v1` text format.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.m * (self.n + 1) + 32);
        out.push_str(MAGIC);
        out.push('\n');
        let _ = writeln!(out, "n={} m={}", self.n, self.m);
        for row in &self.rows {
            out.push_str(&row.to_bitstring());
            out.push('\n');
        }
        out
    }

    /// Parses the `asmat v1` text format. Errors name the offending line
    /// (1-based).
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines: Vec<&str> = text.split('\n').collect();
        if lines.last() == Some(&"") {
            lines.pop();
        }
        let perr = |line: usize, message: String| Error::Parse { line, message };

        match lines.first() {
            Some(&MAGIC) => {}
            Some(other) => return Err(perr(1, format!("expected header `{MAGIC}`, found `{other}`"))),
            None => return Err(perr(1, format!("empty input, expected header `{MAGIC}`"))),
        }
        let dims = lines
            .get(1)
            .ok_or_else(|| perr(2, "missing dimension line `n=<n> m=<m>`".into()))?;
        let (n, m) = parse_dims(dims).ok_or_else(|| perr(2, format!("malformed dimension line `{dims}`")))?;
        if n == 0 || m == 0 {
            return Err(perr(2, "n and m must both be at least 1".into()));
        }

        let body = &lines[2..];
        if body.len() < m {
            return Err(perr(
                2 + body.len() + 1,
                format!("expected {m} matrix rows, found only {}", body.len()),
            ));
        }
        if body.len() > m {
            return Err(perr(2 + m + 1, format!("unexpected extra line after {m} matrix rows")));
        }
        let mut rows = Vec::with_capacity(m);
        for (t, line) in body.iter().enumerate() {
            let lineno = t + 3;
            if line.len() != n {
                return Err(perr(lineno, format!("expected {n} characters, found {}", line.len())));
            }
            let row = SupportSet::from_bitstring(line)
                .ok_or_else(|| perr(lineno, "row contains a character other than 0 or 1".into()))?;
            rows.push(row);
        }
        Self::from_rows(n, rows)
    }

    pub fn read_from_path(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn write_to_path(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }
}

fn parse_dims(line: &str) -> Option<(usize, usize)> {
    let (a, b) = line.split_once(' ')?;
    let n = a.strip_prefix("n=")?;
    let m = b.strip_prefix("m=")?;
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|c| c.is_ascii_digit());
    if !digits(n) || !digits(m) {
        return None;
    }
    Some((n.parse().ok()?, m.parse().ok()?))
}

impl std::fmt::Debug for TestDesign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "TestDesign {}x{}", self.m, self.n)?;
        for r in &self.rows {
            writeln!(f, "  {}", r.to_bitstring())?;
        }
        Ok(())
    }
}
