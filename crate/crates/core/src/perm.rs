//! Permutations in sequence representation, with just enough group
//! machinery for exhaustive small-degree work: closure of a generating
//! set, left cosets of a subgroup in `S_n`, and double cosets `CgR`.
//!
//! A permutation of `{1..n}` is stored as its sequence `(p(1), ..., p(n))`.
//! Composition follows function application: `(p ∘ q)(i) = p(q(i))`.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::util::gcd;

/// Default bound on the degree for whole-of-`S_n` enumerations.
pub const DEFAULT_GROUP_ENUM_CAP: usize = 8;

/// Symbols are stored as `u8`, which bounds every degree in this crate.
pub(crate) const MAX_DEGREE: usize = 255;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    seq: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Permutation {
        assert!((1..=MAX_DEGREE).contains(&n), "degree out of range");
        Permutation {
            seq: (1..=n as u8).collect(),
        }
    }

    /// The cyclic shift `(2, 3, ..., n, 1)` sending `i` to `i + 1 mod n`.
    pub fn cyclic_shift(n: usize) -> Permutation {
        assert!((1..=MAX_DEGREE).contains(&n), "degree out of range");
        let mut seq: Vec<u8> = (2..=n as u8).collect();
        seq.push(1);
        Permutation { seq }
    }

    /// The reversal `(n, n-1, ..., 1)`.
    pub fn reversal(n: usize) -> Permutation {
        assert!((1..=MAX_DEGREE).contains(&n), "degree out of range");
        Permutation {
            seq: (1..=n as u8).rev().collect(),
        }
    }

    /// Validates that `seq` hits every symbol of `{1..n}` exactly once.
    pub fn from_seq(seq: Vec<u8>) -> Result<Permutation> {
        let n = seq.len();
        if n == 0 || n > MAX_DEGREE {
            return Err(Error::InvalidPermutation(format!(
                "degree must be between 1 and {MAX_DEGREE}, got {n}"
            )));
        }
        let mut seen = vec![false; n];
        for &v in &seq {
            if v == 0 || v as usize > n {
                return Err(Error::InvalidPermutation(format!(
                    "symbol {v} is outside 1..={n}"
                )));
            }
            if seen[v as usize - 1] {
                return Err(Error::InvalidPermutation(format!("symbol {v} repeats")));
            }
            seen[v as usize - 1] = true;
        }
        Ok(Permutation { seq })
    }

    pub fn n(&self) -> usize {
        self.seq.len()
    }

    pub fn seq(&self) -> &[u8] {
        &self.seq
    }

    /// Image of the symbol `x` (1-based).
    pub fn apply(&self, x: u8) -> u8 {
        self.seq[x as usize - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.seq.iter().enumerate().all(|(i, &v)| v as usize == i + 1)
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.n() != other.n() {
            return Err(Error::SizeMismatch {
                expected: self.n(),
                found: other.n(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.n(), other.n());
        Permutation {
            seq: other.seq.iter().map(|&v| self.apply(v)).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut seq = vec![0u8; self.n()];
        for (i, &v) in self.seq.iter().enumerate() {
            seq[v as usize - 1] = i as u8 + 1;
        }
        Permutation { seq }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.seq {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

/// A subgroup of `S_n`, held as the sorted set of all its elements.
/// Construction validates the group axioms, so downstream coset machinery
/// can assume closure.
#[derive(Clone, PartialEq, Eq)]
pub struct PermGroup {
    n: usize,
    elements: BTreeSet<Permutation>,
}

impl PermGroup {
    /// Closure of a generating set under composition. An empty generating
    /// set yields the trivial group.
    pub fn generate(n: usize, generators: &[Permutation]) -> Result<PermGroup> {
        for g in generators {
            if g.n() != n {
                return Err(Error::SizeMismatch {
                    expected: n,
                    found: g.n(),
                });
            }
        }
        let mut elements = BTreeSet::new();
        elements.insert(Permutation::identity(n));
        let mut queue: VecDeque<Permutation> = generators.iter().cloned().collect();
        while let Some(p) = queue.pop_front() {
            if !elements.insert(p.clone()) {
                continue;
            }
            let mut products = Vec::new();
            for q in &elements {
                products.push(p.compose_unchecked(q));
                products.push(q.compose_unchecked(&p));
            }
            for prod in products {
                if !elements.contains(&prod) {
                    queue.push_back(prod);
                }
            }
        }
        Ok(PermGroup { n, elements })
    }

    /// Accepts an explicit element list, rejecting anything that is not a
    /// group: wrong degrees, missing identity, or a composition that leaves
    /// the set. (A finite set closed under composition is a group, so
    /// inverses need no separate check.)
    pub fn from_elements<I>(n: usize, elements: I) -> Result<PermGroup>
    where
        I: IntoIterator<Item = Permutation>,
    {
        let elements: BTreeSet<Permutation> = elements.into_iter().collect();
        if elements.is_empty() {
            return Err(Error::NotAGroup("the element set is empty".into()));
        }
        for p in &elements {
            if p.n() != n {
                return Err(Error::SizeMismatch {
                    expected: n,
                    found: p.n(),
                });
            }
        }
        if !elements.contains(&Permutation::identity(n)) {
            return Err(Error::NotAGroup("the identity is missing".into()));
        }
        for a in &elements {
            for b in &elements {
                let ab = a.compose_unchecked(b);
                if !elements.contains(&ab) {
                    return Err(Error::NotAGroup(format!(
                        "not closed under composition: ({a}) composed with ({b}) gives ({ab})"
                    )));
                }
            }
        }
        Ok(PermGroup { n, elements })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.contains(p)
    }

    /// Elements in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = &Permutation> {
        self.elements.iter()
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PermGroup(n={}, order={})", self.n, self.order())
    }
}

/// All of `S_n` in lexicographic order. Guarded by `cap` because the result
/// has `n!` entries.
pub fn symmetric_group(n: usize, cap: usize) -> Result<Vec<Permutation>> {
    if n == 0 {
        return Err(Error::UnsupportedOrder {
            n,
            reason: "the degree must be at least 1".into(),
        });
    }
    if n > cap {
        return Err(Error::CapExceeded {
            what: "group enumeration",
            n,
            cap,
        });
    }
    if n > MAX_DEGREE {
        return Err(Error::CapExceeded {
            what: "symbol range",
            n,
            cap: MAX_DEGREE,
        });
    }
    Ok((1..=n as u8)
        .permutations(n)
        .map(|seq| Permutation { seq })
        .collect())
}

/// Representatives of the left cosets `gH` of `h` in `S_n`, one per coset,
/// each the lexicographically least member of its coset, in lexicographic
/// order. There are `n!/|H|` of them.
pub fn left_coset_reps(h: &PermGroup, cap: usize) -> Result<Vec<Permutation>> {
    let n = h.n();
    let all = symmetric_group(n, cap)?;
    let mut covered: HashSet<Permutation> = HashSet::with_capacity(all.len());
    let mut reps = Vec::new();
    for p in all {
        if covered.contains(&p) {
            continue;
        }
        for g in h.iter() {
            covered.insert(p.compose_unchecked(g));
        }
        reps.push(p);
    }
    debug_assert_eq!(covered.len() % h.order(), 0);
    Ok(reps)
}

/// Partition of `S_n` into double cosets `CgR`. Each coset is sorted and the
/// list is ordered by least member; the least member of the first coset is
/// the identity. When `|C|` and `|R|` are coprime every double coset has
/// exactly `|C| * |R|` elements, which is asserted.
pub fn double_cosets(c: &PermGroup, r: &PermGroup, cap: usize) -> Result<Vec<Vec<Permutation>>> {
    if c.n() != r.n() {
        return Err(Error::SizeMismatch {
            expected: c.n(),
            found: r.n(),
        });
    }
    let n = c.n();
    let all = symmetric_group(n, cap)?;
    let total = all.len();
    let mut covered: HashSet<Permutation> = HashSet::with_capacity(total);
    let mut cosets = Vec::new();
    for g in all {
        if covered.contains(&g) {
            continue;
        }
        let mut coset = BTreeSet::new();
        for a in c.iter() {
            let ag = a.compose_unchecked(&g);
            for b in r.iter() {
                coset.insert(ag.compose_unchecked(b));
            }
        }
        for p in &coset {
            covered.insert(p.clone());
        }
        cosets.push(coset.into_iter().collect::<Vec<_>>());
    }
    debug_assert_eq!(covered.len(), total);
    if gcd(c.order() as u64, r.order() as u64) == 1 {
        let expected = c.order() * r.order();
        for coset in &cosets {
            assert_eq!(
                coset.len(),
                expected,
                "coprime-order double coset has unexpected size"
            );
        }
    }
    Ok(cosets)
}
