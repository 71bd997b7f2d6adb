//! Exact verification: Latin and strong-asymmetry checks, packing census
//! with duplicate reporting, line-group closure, orthogonality, symmetry
//! classification, and exhaustive enumeration of tiny Latin squares.
//!
//! Everything here is exact — no tolerances, no sampling. A packing either
//! has all lines distinct or the report names each collision.

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::Serialize;

use crate::constructions::PackingSet;
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::square::{LineKind, SquareMatrix};

/// Hard bound on exhaustive Latin square enumeration; order 6 already has
/// 812,851,200 squares.
pub const LATIN_ENUM_CAP: usize = 5;

/// Every row and every column hits every symbol exactly once.
pub fn is_latin(m: &SquareMatrix) -> bool {
    let n = m.n();
    for i in 0..n {
        let mut row_seen = vec![false; n];
        let mut col_seen = vec![false; n];
        for j in 0..n {
            let r = m.get(i, j) as usize - 1;
            let c = m.get(j, i) as usize - 1;
            if row_seen[r] || col_seen[c] {
                return false;
            }
            row_seen[r] = true;
            col_seen[c] = true;
        }
    }
    true
}

/// All `4n` lines distinct: no row, column, or reversal of one coincides
/// with any other.
pub fn is_strongly_asymmetric(m: &SquareMatrix) -> bool {
    let mut seen = HashSet::with_capacity(4 * m.n());
    m.lines().into_iter().all(|line| seen.insert(line.seq))
}

/// Where a line lives: 1-based matrix position in the set, the line kind,
/// and the 1-based row/column index.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct LineLocation {
    pub matrix: usize,
    pub kind: LineKind,
    pub index: usize,
}

/// A repeated line: where it was found and where its first occurrence was.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct Violation {
    pub matrix: usize,
    pub kind: LineKind,
    pub index: usize,
    pub duplicate_of: LineLocation,
}

#[derive(Clone, Debug, Serialize)]
pub struct PackingReport {
    pub n: usize,
    pub matrix_count: usize,
    pub total_lines: usize,
    pub distinct_lines: usize,
    pub all_latin: bool,
    pub all_strongly_asymmetric: bool,
    pub is_packing: bool,
    pub violations: Vec<Violation>,
}

/// Full census of a candidate packing. Matrices are scanned in order, each
/// matrix's lines in canonical order; every recurrence of an already-seen
/// line becomes one violation pointing at the earliest occurrence.
pub fn verify_packing(set: &PackingSet) -> PackingReport {
    let n = set.n();
    let mut first_seen: HashMap<Vec<u8>, LineLocation> = HashMap::new();
    let mut violations = Vec::new();
    let mut all_latin = true;
    let mut all_strongly_asymmetric = true;
    for (mi, m) in set.matrices().iter().enumerate() {
        if !is_latin(m) {
            all_latin = false;
        }
        if !is_strongly_asymmetric(m) {
            all_strongly_asymmetric = false;
        }
        for line in m.lines() {
            let here = LineLocation {
                matrix: mi + 1,
                kind: line.kind,
                index: line.index,
            };
            match first_seen.entry(line.seq) {
                std::collections::hash_map::Entry::Occupied(first) => {
                    violations.push(Violation {
                        matrix: here.matrix,
                        kind: here.kind,
                        index: here.index,
                        duplicate_of: *first.get(),
                    });
                }
                std::collections::hash_map::Entry::Vacant(slot) => {
                    slot.insert(here);
                }
            }
        }
    }
    let total_lines = set.total_lines();
    let distinct_lines = first_seen.len();
    PackingReport {
        n,
        matrix_count: set.len(),
        total_lines,
        distinct_lines,
        all_latin,
        all_strongly_asymmetric,
        is_packing: all_latin && violations.is_empty(),
        violations,
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct GroupCheck {
    pub is_group: bool,
    pub order: usize,
}

/// Collects the distinct lines of the given Latin squares as permutations
/// and tests closure under composition. (A finite composition-closed set of
/// permutations is automatically a group.) Non-Latin input is an error: its
/// lines would not all be permutations.
pub fn lines_form_group(matrices: &[SquareMatrix]) -> Result<GroupCheck> {
    let mut lines: BTreeSet<Permutation> = BTreeSet::new();
    for (i, m) in matrices.iter().enumerate() {
        if !is_latin(m) {
            return Err(Error::NotLatin { index: i + 1 });
        }
        for line in m.lines() {
            lines.insert(line.as_permutation()?);
        }
    }
    let order = lines.len();
    for a in &lines {
        for b in &lines {
            if !lines.contains(&a.compose(b)?) {
                return Ok(GroupCheck {
                    is_group: false,
                    order,
                });
            }
        }
    }
    Ok(GroupCheck {
        is_group: true,
        order,
    })
}

/// Two Latin squares of the same order are orthogonal when the pairs
/// `(A(i,j), B(i,j))` are all distinct.
pub fn are_orthogonal(a: &SquareMatrix, b: &SquareMatrix) -> Result<bool> {
    if a.n() != b.n() {
        return Err(Error::SizeMismatch {
            expected: a.n(),
            found: b.n(),
        });
    }
    if !is_latin(a) {
        return Err(Error::NotLatin { index: 1 });
    }
    if !is_latin(b) {
        return Err(Error::NotLatin { index: 2 });
    }
    let n = a.n();
    let mut seen = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            let slot = (a.get(i, j) as usize - 1) * n + (b.get(i, j) as usize - 1);
            if seen[slot] {
                return Ok(false);
            }
            seen[slot] = true;
        }
    }
    Ok(true)
}

/// Pairwise orthogonality of a whole set.
pub fn verify_mols(matrices: &[SquareMatrix]) -> Result<bool> {
    for (i, a) in matrices.iter().enumerate() {
        for b in &matrices[i + 1..] {
            if !are_orthogonal(a, b)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The three mirror symmetries a square can have: transpose-invariance,
/// half-turn invariance, and anti-transpose invariance (Hankel). Any two of
/// them force the third; all three are still computed directly.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct SymmetryReport {
    pub symmetric: bool,
    pub centrosymmetric: bool,
    pub hankel_symmetric: bool,
    pub distinct_lines: usize,
}

pub fn classify_symmetry(m: &SquareMatrix) -> SymmetryReport {
    let transpose = m.transpose();
    let half_turn = m.half_turn();
    let symmetric = *m == transpose;
    let centrosymmetric = *m == half_turn;
    let hankel_symmetric = transpose == half_turn;
    let distinct: HashSet<Vec<u8>> = m.lines().into_iter().map(|l| l.seq).collect();
    SymmetryReport {
        symmetric,
        centrosymmetric,
        hankel_symmetric,
        distinct_lines: distinct.len(),
    }
}

/// Streams every Latin square of order `n ≤ 5` in lexicographic row-major
/// order, filling cells left to right, top to bottom, always trying the
/// smallest admissible symbol first.
pub fn enumerate_latin_squares(n: usize) -> Result<LatinSquares> {
    if n == 0 {
        return Err(Error::UnsupportedOrder {
            n,
            reason: "the order must be at least 1".into(),
        });
    }
    if n > LATIN_ENUM_CAP {
        return Err(Error::CapExceeded {
            what: "Latin square enumeration",
            n,
            cap: LATIN_ENUM_CAP,
        });
    }
    Ok(LatinSquares {
        n,
        cells: vec![0; n * n],
        row_used: vec![0; n],
        col_used: vec![0; n],
        pos: 0,
        done: false,
    })
}

/// Backtracking iterator over all Latin squares of a fixed small order.
/// `cells[pos]` holds the symbol last tried at `pos` (0 = none yet), and the
/// bitmasks always reflect exactly the cells before `pos`.
pub struct LatinSquares {
    n: usize,
    cells: Vec<u8>,
    row_used: Vec<u32>,
    col_used: Vec<u32>,
    pos: usize,
    done: bool,
}

impl LatinSquares {
    fn unmark(&mut self) {
        let (r, c) = (self.pos / self.n, self.pos % self.n);
        let bit = 1u32 << (self.cells[self.pos] - 1);
        self.row_used[r] &= !bit;
        self.col_used[c] &= !bit;
    }
}

impl Iterator for LatinSquares {
    type Item = SquareMatrix;

    fn next(&mut self) -> Option<SquareMatrix> {
        if self.done {
            return None;
        }
        let n = self.n;
        let total = n * n;
        loop {
            if self.pos == total {
                let snapshot = SquareMatrix::from_fn(n, |i, j| self.cells[i * n + j])
                    .expect("filled grid is a valid matrix");
                // Step back onto the last cell so the search resumes past it.
                self.pos -= 1;
                self.unmark();
                return Some(snapshot);
            }
            let (r, c) = (self.pos / n, self.pos % n);
            let mut placed = false;
            for s in self.cells[self.pos] + 1..=n as u8 {
                let bit = 1u32 << (s - 1);
                if self.row_used[r] & bit == 0 && self.col_used[c] & bit == 0 {
                    self.cells[self.pos] = s;
                    self.row_used[r] |= bit;
                    self.col_used[c] |= bit;
                    self.pos += 1;
                    placed = true;
                    break;
                }
            }
            if placed {
                continue;
            }
            self.cells[self.pos] = 0;
            if self.pos == 0 {
                self.done = true;
                return None;
            }
            self.pos -= 1;
            self.unmark();
        }
    }
}
