//! Square matrices over the symbol set `{1..n}` and their lines.
//!
//! A matrix of order `n` has `4n` lines: its rows, its columns, and both read
//! backwards. Lines are produced in a fixed canonical order — rows `1..n`,
//! columns `1..n`, reverse rows `1..n`, reverse columns `1..n` — and all
//! line-census logic in this crate relies on that order.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{Permutation, MAX_DEGREE};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SquareMatrix {
    n: usize,
    entries: Vec<u8>,
}

impl SquareMatrix {
    /// Builds an `n × n` matrix from `f(i, j)` with 0-based `i, j`,
    /// validating that every produced entry lies in `{1..n}`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> u8) -> Result<SquareMatrix> {
        if n == 0 || n > MAX_DEGREE {
            return Err(Error::InvalidMatrix(format!(
                "order must be between 1 and {MAX_DEGREE}, got {n}"
            )));
        }
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let v = f(i, j);
                if v == 0 || v as usize > n {
                    return Err(Error::InvalidMatrix(format!(
                        "entry {v} at row {}, column {} is outside 1..={n}",
                        i + 1,
                        j + 1
                    )));
                }
                entries.push(v);
            }
        }
        Ok(SquareMatrix { n, entries })
    }

    pub fn from_rows(rows: Vec<Vec<u8>>) -> Result<SquareMatrix> {
        let n = rows.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidMatrix(format!(
                    "row {} has {} entries, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
        }
        SquareMatrix::from_fn(n, |i, j| rows[i][j])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry at 0-based `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> Vec<u8> {
        self.entries[i * self.n..(i + 1) * self.n].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<u8> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u8]> + '_ {
        self.entries.chunks(self.n)
    }

    /// The `4n` lines in canonical order.
    pub fn lines(&self) -> Vec<Line> {
        let n = self.n;
        let mut out = Vec::with_capacity(4 * n);
        for i in 0..n {
            out.push(Line {
                kind: LineKind::Row,
                index: i + 1,
                seq: self.row(i),
            });
        }
        for j in 0..n {
            out.push(Line {
                kind: LineKind::Column,
                index: j + 1,
                seq: self.column(j),
            });
        }
        for i in 0..n {
            let mut seq = self.row(i);
            seq.reverse();
            out.push(Line {
                kind: LineKind::ReverseRow,
                index: i + 1,
                seq,
            });
        }
        for j in 0..n {
            let mut seq = self.column(j);
            seq.reverse();
            out.push(Line {
                kind: LineKind::ReverseColumn,
                index: j + 1,
                seq,
            });
        }
        out
    }

    pub fn transpose(&self) -> SquareMatrix {
        SquareMatrix::from_fn(self.n, |i, j| self.get(j, i)).expect("transpose preserves entries")
    }

    /// Conjugate by the half-turn: entry `(i, j)` moves to `(n+1-i, n+1-j)`.
    pub fn half_turn(&self) -> SquareMatrix {
        let n = self.n;
        SquareMatrix::from_fn(n, |i, j| self.get(n - 1 - i, n - 1 - j))
            .expect("half turn preserves entries")
    }
}

impl fmt::Debug for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SquareMatrix(n={})", self.n)?;
        for row in self.rows() {
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LineKind {
    Row,
    Column,
    ReverseRow,
    ReverseColumn,
}

impl fmt::Display for LineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            LineKind::Row => "row",
            LineKind::Column => "column",
            LineKind::ReverseRow => "reverse-row",
            LineKind::ReverseColumn => "reverse-column",
        };
        write!(f, "{name}")
    }
}

/// One line of a matrix: which kind, the 1-based row/column index, and the
/// symbol sequence read in the line's direction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Line {
    pub kind: LineKind,
    pub index: usize,
    pub seq: Vec<u8>,
}

impl Line {
    /// Lines of a Latin square are permutations; this conversion fails on
    /// lines with repeated symbols.
    pub fn as_permutation(&self) -> Result<Permutation> {
        Permutation::from_seq(self.seq.clone())
    }
}

/// Relabels every entry of `m` through `r`, i.e. produces the matrix with
/// entries `r(m(i, j))`.
pub fn apply_entrywise(r: &Permutation, m: &SquareMatrix) -> Result<SquareMatrix> {
    if r.n() != m.n() {
        return Err(Error::SizeMismatch {
            expected: m.n(),
            found: r.n(),
        });
    }
    SquareMatrix::from_fn(m.n(), |i, j| r.apply(m.get(i, j)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq(rows: &[&[u8]]) -> SquareMatrix {
        SquareMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn construction_validates_shape_and_symbols() {
        assert!(SquareMatrix::from_rows(vec![vec![1, 2], vec![2, 1]]).is_ok());
        assert!(SquareMatrix::from_rows(vec![vec![1, 2], vec![2]]).is_err());
        assert!(SquareMatrix::from_rows(vec![vec![1, 3], vec![3, 1]]).is_err());
        assert!(SquareMatrix::from_rows(vec![vec![0]]).is_err());
        assert!(SquareMatrix::from_rows(vec![]).is_err());
    }

    #[test]
    fn lines_follow_canonical_order() {
        let m = sq(&[&[1, 2], &[2, 1]]);
        let lines = m.lines();
        assert_eq!(lines.len(), 8);
        let described: Vec<(LineKind, usize, &[u8])> = lines
            .iter()
            .map(|l| (l.kind, l.index, l.seq.as_slice()))
            .collect();
        assert_eq!(
            described,
            vec![
                (LineKind::Row, 1, &[1, 2][..]),
                (LineKind::Row, 2, &[2, 1]),
                (LineKind::Column, 1, &[1, 2]),
                (LineKind::Column, 2, &[2, 1]),
                (LineKind::ReverseRow, 1, &[2, 1]),
                (LineKind::ReverseRow, 2, &[1, 2]),
                (LineKind::ReverseColumn, 1, &[2, 1]),
                (LineKind::ReverseColumn, 2, &[1, 2]),
            ]
        );
    }

    #[test]
    fn entrywise_relabeling() {
        let m = sq(&[&[2, 3, 1], &[3, 1, 2], &[1, 2, 3]]);
        let r = Permutation::from_seq(vec![2, 1, 3]).unwrap();
        let relabeled = apply_entrywise(&r, &m).unwrap();
        assert_eq!(
            relabeled,
            sq(&[&[1, 3, 2], &[3, 2, 1], &[2, 1, 3]])
        );
        let wrong_degree = Permutation::from_seq(vec![2, 1]).unwrap();
        assert!(apply_entrywise(&wrong_degree, &m).is_err());
    }

    #[test]
    fn transpose_and_half_turn() {
        let m = sq(&[&[1, 2, 3], &[3, 1, 2], &[2, 3, 1]]);
        assert_eq!(m.transpose(), sq(&[&[1, 3, 2], &[2, 1, 3], &[3, 2, 1]]));
        assert_eq!(m.half_turn(), sq(&[&[1, 3, 2], &[2, 1, 3], &[3, 2, 1]]));
        assert_eq!(m.transpose().transpose(), m);
        assert_eq!(m.half_turn().half_turn(), m);
    }

    #[test]
    fn line_kinds_serialize_kebab_case() {
        assert_eq!(
            serde_json::to_string(&LineKind::ReverseColumn).unwrap(),
            "\"reverse-column\""
        );
        assert_eq!(serde_json::to_string(&LineKind::Row).unwrap(), "\"row\"");
    }
}
