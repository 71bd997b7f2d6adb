//! Builders for Latin squares whose lines realize prescribed permutation
//! sets, plus the couple systems behind the packed MOLS family.
//!
//! The headline constructions:
//!
//! * [`pack_odd`] — for odd `n ≥ 5`, `(n-1)!/4` Latin squares whose `n·n!`
//!   lines are, without repetition, all of `S_n`;
//! * [`pack_even_subgroup`] / [`pack_even`] — for even `n = 2m ≥ 6`, first a
//!   set realizing a subgroup of order `m!·2^m`, then its extension by left
//!   coset representatives to all of `S_n`;
//! * [`pack_single`] — one square whose `4n` lines are distinct and closed
//!   under composition;
//! * [`mols_packed`] — for a prime `p ≡ 1 mod 4`, a set of `(p-1)/4` mutually
//!   orthogonal squares with `p(p-1)` distinct lines;
//! * [`min_lines_square`] — the opposite extreme: a square with as few
//!   distinct lines as possible (`2n` odd, `n` even);
//! * [`subgroup_4n`] — an order-`4n` subgroup of `S_n` for even `n ≥ 6`, the
//!   shape a single square's line group must have.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::perm::{double_cosets, left_coset_reps, PermGroup, Permutation};
use crate::ring::{construct_quartet, reflectable_enumeration};
use crate::square::{apply_entrywise, SquareMatrix};
use crate::util::shuffle;
use crate::verify::lines_form_group;

pub const DEFAULT_PACK_ODD_CAP: usize = 9;
pub const DEFAULT_PACK_EVEN_CAP: usize = 8;
pub const DEFAULT_MOLS_CAP: usize = 17;

/// How to pair off double cosets (odd construction) or Boolean vectors
/// (even construction). `Canonical` is the deterministic default; `Seeded`
/// draws the pairing from a seeded shuffle, still a perfect matching.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Pairing {
    Canonical,
    Seeded(u64),
}

/// A set of same-order square matrices built (or claimed) to have pairwise
/// disjoint line sets.
#[derive(Clone, Debug)]
pub struct PackingSet {
    n: usize,
    matrices: Vec<SquareMatrix>,
}

impl PackingSet {
    pub fn new(matrices: Vec<SquareMatrix>) -> Result<PackingSet> {
        let n = match matrices.first() {
            Some(m) => m.n(),
            None => {
                return Err(Error::InvalidMatrix(
                    "a packing set needs at least one matrix".into(),
                ))
            }
        };
        for m in &matrices {
            if m.n() != n {
                return Err(Error::SizeMismatch {
                    expected: n,
                    found: m.n(),
                });
            }
        }
        Ok(PackingSet { n, matrices })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    pub fn matrices(&self) -> &[SquareMatrix] {
        &self.matrices
    }

    pub fn into_matrices(self) -> Vec<SquareMatrix> {
        self.matrices
    }

    /// Number of lines counted with multiplicity: `4n` per matrix.
    pub fn total_lines(&self) -> usize {
        4 * self.n * self.matrices.len()
    }
}

/// Symbol for a 1-based value computed modulo `k`: residue 0 prints as `k`.
fn wrap_symbol(v: usize, k: usize) -> u8 {
    (((v - 1) % k) + 1) as u8
}

/// Packs all of `S_n`, for odd `n ≥ 5`, into `(n-1)!/4` Latin squares.
///
/// The double cosets `CgR` of the cyclic-shift group `C` and the reversal
/// group `R` each hold `2n` permutations (`|C| = n` and `|R| = 2` are
/// coprime). Pairing the cosets off and taking lexicographically least
/// representatives `p, q` of a pair yields the square `M(i,j) = p(i) + q(j)
/// (mod n)`, whose columns and reverse columns exhaust `CpR` and whose rows
/// and reverse rows exhaust `CqR`.
pub fn pack_odd(n: usize, cap: usize, pairing: Pairing) -> Result<PackingSet> {
    if n % 2 == 0 {
        return Err(Error::UnsupportedOrder {
            n,
            reason: "the double-coset pairing needs an odd order \
                     (for even orders the cyclic shift and reversal interact)"
                .into(),
        });
    }
    if n < 5 {
        return Err(Error::UnsupportedOrder {
            n,
            reason: if n == 3 {
                "order 3 has a single double coset, which cannot be paired".into()
            } else {
                "the order must be at least 5".into()
            },
        });
    }
    if n > cap {
        return Err(Error::CapExceeded {
            what: "odd packing",
            n,
            cap,
        });
    }
    let c = PermGroup::generate(n, &[Permutation::cyclic_shift(n)])?;
    let r = PermGroup::generate(n, &[Permutation::reversal(n)])?;
    let cosets = double_cosets(&c, &r, n)?;
    debug_assert_eq!(cosets.len() % 2, 0);
    let mut order: Vec<usize> = (0..cosets.len()).collect();
    if let Pairing::Seeded(seed) = pairing {
        shuffle(&mut order, seed);
    }
    let mut matrices = Vec::with_capacity(cosets.len() / 2);
    for pair in order.chunks(2) {
        let p = &cosets[pair[0]][0];
        let q = &cosets[pair[1]][0];
        matrices.push(SquareMatrix::from_fn(n, |i, j| {
            wrap_symbol(p.seq()[i] as usize + q.seq()[j] as usize, n)
        })?);
    }
    PackingSet::new(matrices)
}

/// The shifted cyclic square `M(i,j) = i + j + 1 (mod m)`, a Latin square of
/// order `m ≥ 3` in which line `i` equals line `i` crosswise: row `i` is
/// column `i`, so every one of its `2m` distinct lines occurs exactly twice.
pub fn double_occurrence_base(m: usize) -> Result<SquareMatrix> {
    if m < 3 {
        return Err(Error::UnsupportedOrder {
            n: m,
            reason: "a double occurrence square needs order at least 3".into(),
        });
    }
    SquareMatrix::from_fn(m, |i, j| wrap_symbol(i + j + 2, m))
}

/// `(m-1)!/2` relabelings of the base square whose line sets partition
/// `S_m`, each line appearing exactly twice in its matrix. The relabelings
/// are the left coset representatives of the base square's line group.
pub fn double_occurrence_set(m: usize, cap: usize) -> Result<Vec<SquareMatrix>> {
    let base = double_occurrence_base(m)?;
    let check = lines_form_group(std::slice::from_ref(&base))?;
    debug_assert!(check.is_group && check.order == 2 * m);
    let group = PermGroup::from_elements(
        m,
        base.lines()
            .iter()
            .map(|l| l.as_permutation())
            .collect::<Result<BTreeSet<_>>>()?,
    )?;
    let reps = left_coset_reps(&group, cap)?;
    reps.iter().map(|q| apply_entrywise(q, &base)).collect()
}

/// A 0/1 matrix. Used as the swap pattern when doubling a Latin square.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BooleanMatrix {
    m: usize,
    bits: Vec<u8>,
}

impl BooleanMatrix {
    pub fn from_fn(m: usize, mut f: impl FnMut(usize, usize) -> u8) -> Result<BooleanMatrix> {
        if m == 0 {
            return Err(Error::InvalidMatrix("order must be at least 1".into()));
        }
        let mut bits = Vec::with_capacity(m * m);
        for i in 0..m {
            for j in 0..m {
                let b = f(i, j);
                if b > 1 {
                    return Err(Error::InvalidMatrix(format!(
                        "entry {b} at row {}, column {} is not a bit",
                        i + 1,
                        j + 1
                    )));
                }
                bits.push(b);
            }
        }
        Ok(BooleanMatrix { m, bits })
    }

    pub fn from_rows(rows: Vec<Vec<u8>>) -> Result<BooleanMatrix> {
        let m = rows.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != m {
                return Err(Error::InvalidMatrix(format!(
                    "row {} has {} entries, expected {m}",
                    i + 1,
                    row.len()
                )));
            }
        }
        BooleanMatrix::from_fn(m, |i, j| rows[i][j])
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.bits[i * self.m + j]
    }
}

/// The rank-one Boolean matrices `A(i,j) = v(i) + w(j) (mod 2)` obtained by
/// pairing off all `2^(m-1)` Boolean vectors of length `m` with first
/// component 0. Canonically the `k`-th vector (lexicographic) pairs with the
/// `k + 2^(m-2)`-th; a seeded pairing is any other perfect matching.
pub fn boolean_matrices(m: usize, pairing: Pairing) -> Result<Vec<BooleanMatrix>> {
    if m < 3 {
        return Err(Error::UnsupportedOrder {
            n: m,
            reason: "vector pairing needs length at least 3".into(),
        });
    }
    if m > 16 {
        return Err(Error::CapExceeded {
            what: "boolean vector pairing",
            n: m,
            cap: 16,
        });
    }
    let count = 1usize << (m - 1);
    // Vector k has the bits of k, most significant first, in positions 2..m.
    let vector = |k: usize| -> Vec<u8> {
        let mut v = vec![0u8; m];
        for t in 0..m - 1 {
            v[1 + t] = ((k >> (m - 2 - t)) & 1) as u8;
        }
        v
    };
    let pairs: Vec<(usize, usize)> = match pairing {
        Pairing::Canonical => {
            let half = count / 2;
            (0..half).map(|k| (k, k + half)).collect()
        }
        Pairing::Seeded(seed) => {
            let mut order: Vec<usize> = (0..count).collect();
            shuffle(&mut order, seed);
            order.chunks(2).map(|c| (c[0], c[1])).collect()
        }
    };
    pairs
        .into_iter()
        .map(|(a, b)| {
            let v = vector(a);
            let w = vector(b);
            BooleanMatrix::from_fn(m, |i, j| (v[i] + w[j]) % 2)
        })
        .collect()
}

/// Doubles a Latin square `L` of order `m` into one of order `2m` by
/// replacing entry `k = L(i,j)` with the 2×2 block on symbols `{2k-1, 2k}`,
/// straight when `A(i,j) = 0` and swapped when `A(i,j) = 1`.
pub fn composite(l: &SquareMatrix, a: &BooleanMatrix) -> Result<SquareMatrix> {
    if l.n() != a.m() {
        return Err(Error::SizeMismatch {
            expected: l.n(),
            found: a.m(),
        });
    }
    SquareMatrix::from_fn(2 * l.n(), |i, j| {
        let k = l.get(i / 2, j / 2) as usize;
        let bit = a.get(i / 2, j / 2) as usize;
        if (i % 2) ^ (j % 2) ^ bit == 0 {
            (2 * k - 1) as u8
        } else {
            (2 * k) as u8
        }
    })
}

/// Exact inverse of [`composite`]: recovers `(L, A)` or reports why the
/// matrix is not a composite.
pub fn decompose_composite(mat: &SquareMatrix) -> Result<(SquareMatrix, BooleanMatrix)> {
    let n = mat.n();
    if n % 2 != 0 {
        return Err(Error::NotComposite(format!("the order {n} is odd")));
    }
    let m = n / 2;
    let mut l_rows = vec![vec![0u8; m]; m];
    let mut a_rows = vec![vec![0u8; m]; m];
    for bi in 0..m {
        for bj in 0..m {
            let ul = mat.get(2 * bi, 2 * bj);
            let ur = mat.get(2 * bi, 2 * bj + 1);
            let ll = mat.get(2 * bi + 1, 2 * bj);
            let lr = mat.get(2 * bi + 1, 2 * bj + 1);
            let block = format!(
                "the block at rows {}-{}, columns {}-{}",
                2 * bi + 1,
                2 * bi + 2,
                2 * bj + 1,
                2 * bj + 2
            );
            if lr != ul || ll != ur {
                return Err(Error::NotComposite(format!(
                    "{block} is not anti-diagonally constant"
                )));
            }
            let (small, bit) = if ul % 2 == 1 && ur == ul + 1 {
                (ul, 0)
            } else if ur % 2 == 1 && ul == ur + 1 {
                (ur, 1)
            } else {
                return Err(Error::NotComposite(format!(
                    "{block} does not hold a symbol pair 2k-1, 2k"
                )));
            };
            l_rows[bi][bj] = small.div_ceil(2);
            a_rows[bi][bj] = bit;
        }
    }
    Ok((SquareMatrix::from_rows(l_rows)?, BooleanMatrix::from_rows(a_rows)?))
}

/// For even `n = 2m ≥ 6`: all composites of the double occurrence set with
/// the paired Boolean matrices — `(m-1)!·2^(m-3)` Latin squares of order `n`
/// whose `m!·2^m` lines are distinct and form a subgroup of `S_n`.
pub fn pack_even_subgroup(n: usize, cap: usize, pairing: Pairing) -> Result<PackingSet> {
    if n % 2 != 0 || n < 6 {
        return Err(Error::UnsupportedOrder {
            n,
            reason: "the doubling construction needs an even order of at least 6".into(),
        });
    }
    if n > cap {
        return Err(Error::CapExceeded {
            what: "even packing",
            n,
            cap,
        });
    }
    let m = n / 2;
    let doubles = double_occurrence_set(m, cap)?;
    let patterns = boolean_matrices(m, pairing)?;
    let mut matrices = Vec::with_capacity(doubles.len() * patterns.len());
    for l in &doubles {
        for a in &patterns {
            matrices.push(composite(l, a)?);
        }
    }
    PackingSet::new(matrices)
}

/// Extends a packing whose distinct lines form a subgroup `G ≤ S_n` to a
/// packing of all of `S_n`, by relabeling every matrix through every left
/// coset representative of `G`. The representative of `G` itself is the
/// identity, so the input matrices are the first `|S|` of the output.
pub fn extend_packing(s: &PackingSet, cap: usize) -> Result<PackingSet> {
    let n = s.n();
    let check = lines_form_group(s.matrices())?;
    if !check.is_group {
        return Err(Error::NotAGroup(
            "the distinct lines of the packing are not closed under composition".into(),
        ));
    }
    let mut lines = BTreeSet::new();
    for m in s.matrices() {
        for line in m.lines() {
            lines.insert(line.as_permutation()?);
        }
    }
    let group = PermGroup::from_elements(n, lines)?;
    let reps = left_coset_reps(&group, cap)?;
    let mut matrices = Vec::with_capacity(reps.len() * s.len());
    for rep in &reps {
        for m in s.matrices() {
            matrices.push(apply_entrywise(rep, m)?);
        }
    }
    PackingSet::new(matrices)
}

/// Packs all of `S_n` for even `n = 2m ≥ 6`: the subgroup packing extended
/// by coset representatives — `(n-1)!/4` matrices carrying `n!` distinct
/// lines.
pub fn pack_even(n: usize, cap: usize, pairing: Pairing) -> Result<PackingSet> {
    let subgroup = pack_even_subgroup(n, cap, pairing)?;
    extend_packing(&subgroup, cap)
}

/// One Latin square of order `n` whose `4n` lines are distinct and form a
/// group: `M(i,j) = z(i) + c·z(j)` over a ring of `n` elements, where `c`
/// comes from a quartet and `z` is a reflectable enumeration. Symbols are
/// `1 +` the lexicographic rank of the ring element.
///
/// Exists for every `n ≥ 5` except primes `≡ 3 mod 4` and their doubles.
pub fn pack_single(n: usize) -> Result<SquareMatrix> {
    let (ring, quartet) = construct_quartet(n)?;
    let enumeration = reflectable_enumeration(&ring);
    let z = &enumeration.z;
    let c = &quartet.c;
    SquareMatrix::from_fn(n, |i, j| {
        let value = ring.add(&z[i], &ring.mul(c, &z[j]));
        (ring.index_of(&value) + 1) as u8
    })
}

/// Couples for the packed MOLS construction at a prime `p ≡ 1 mod 4`:
/// `(p-1)/4` pairs `(r, s)` drawn from `{1, ..., (p-1)/2}`, using every
/// value exactly once, such that any two couples have `r·s' - s·r' ≢ 0
/// (mod p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoupleList {
    pub p: usize,
    pub couples: Vec<(usize, usize)>,
}

/// Finds the lexicographically first admissible couple system by always
/// extending with the smallest unused value.
pub fn couple_selection(p: usize) -> Result<CoupleList> {
    if !crate::util::is_prime(p as u64) || p % 4 != 1 {
        return Err(Error::UnsupportedOrder {
            n: p,
            reason: "couple systems exist only for primes congruent to 1 mod 4".into(),
        });
    }
    let half = (p - 1) / 2;
    let mut used = vec![false; half + 1];
    let mut couples: Vec<(usize, usize)> = Vec::with_capacity((p - 1) / 4);
    if search_couples(p, half, &mut used, &mut couples) {
        Ok(CoupleList { p, couples })
    } else {
        Err(Error::NoCoupleSystem { p: p as u64 })
    }
}

fn independent(p: usize, a: (usize, usize), b: (usize, usize)) -> bool {
    (a.0 * b.1) % p != (a.1 * b.0) % p
}

fn search_couples(
    p: usize,
    half: usize,
    used: &mut Vec<bool>,
    couples: &mut Vec<(usize, usize)>,
) -> bool {
    let r = match (1..=half).find(|&v| !used[v]) {
        Some(v) => v,
        None => return true,
    };
    used[r] = true;
    for s in r + 1..=half {
        if used[s] || !couples.iter().all(|&c| independent(p, c, (r, s))) {
            continue;
        }
        used[s] = true;
        couples.push((r, s));
        if search_couples(p, half, used, couples) {
            return true;
        }
        couples.pop();
        used[s] = false;
    }
    used[r] = false;
    false
}

/// `(p-1)/4` mutually orthogonal Latin squares `M(i,j) = r·i + s·j (mod p)`,
/// one per couple, whose `p(p-1)` lines are distinct and form a group (the
/// invertible affine maps `x ↦ a·x + b` with `a ≢ 0`).
pub fn mols_packed(p: usize, cap: usize) -> Result<PackingSet> {
    if p > cap {
        return Err(Error::CapExceeded {
            what: "packed MOLS",
            n: p,
            cap,
        });
    }
    let couples = couple_selection(p)?;
    let matrices = couples
        .couples
        .iter()
        .map(|&(r, s)| {
            SquareMatrix::from_fn(p, |i, j| wrap_symbol(r * (i + 1) + s * (j + 1), p))
        })
        .collect::<Result<Vec<_>>>()?;
    PackingSet::new(matrices)
}

/// A Latin square of order `n ≥ 2` with the minimum possible number of
/// distinct lines: `2n` when `n` is odd (the cyclic square `i + j (mod n)`),
/// `n` when `n` is even (a symmetric, centrosymmetric block arrangement of
/// two half-order cyclic squares, making reverse lines coincide with lines).
pub fn min_lines_square(n: usize) -> Result<SquareMatrix> {
    if n < 2 {
        return Err(Error::UnsupportedOrder {
            n,
            reason: "the order must be at least 2".into(),
        });
    }
    if n % 2 == 1 {
        return SquareMatrix::from_fn(n, |i, j| wrap_symbol(i + j + 1, n));
    }
    let m = n / 2;
    let a = |i: usize, j: usize| wrap_symbol(i + j + 1, m);
    let b = |i: usize, j: usize| a(i, j) + m as u8;
    SquareMatrix::from_fn(n, |i, j| match (i < m, j < m) {
        (true, true) => a(i, j),
        (true, false) => b(i, m - 1 - (j - m)),
        (false, true) => b(m - 1 - (i - m), j),
        (false, false) => a(m - 1 - (i - m), m - 1 - (j - m)),
    })
}

/// An explicit subgroup of `S_n` of order `4n`, for even `n = 2m ≥ 6` — the
/// order a single strongly asymmetric Latin square's line group must have.
///
/// For `m ≥ 4`: affine maps `j ↦ i ± j (mod m)` on `{1..m}`, independent
/// swaps of `{m+1, m+2}` and of `{m+3, m+4}`, everything else fixed
/// (order `2m · 2 · 2 = 4n`). For `m = 3` those blocks do not fit, so the
/// group is instead all permutations of `{1..4}` fixing 5 and 6
/// (order `24 = 4·6`).
pub fn subgroup_4n(n: usize) -> Result<PermGroup> {
    if n % 2 != 0 || n < 6 {
        return Err(Error::UnsupportedOrder {
            n,
            reason: "the order-4n subgroup is built for even orders of at least 6".into(),
        });
    }
    let m = n / 2;
    let mut elements = Vec::new();
    if m == 3 {
        for head in crate::perm::symmetric_group(4, 4)? {
            let mut seq = head.seq().to_vec();
            seq.push(5);
            seq.push(6);
            elements.push(Permutation::from_seq(seq)?);
        }
    } else {
        for shift in 0..m {
            for &flip in &[false, true] {
                for &swap_a in &[false, true] {
                    for &swap_b in &[false, true] {
                        let mut seq = Vec::with_capacity(n);
                        for pos in 0..m {
                            let j = pos + 1;
                            let image = if flip {
                                (shift + m - (j % m)) % m
                            } else {
                                (shift + j) % m
                            };
                            seq.push(image as u8 + 1);
                        }
                        seq.push(if swap_a { m as u8 + 2 } else { m as u8 + 1 });
                        seq.push(if swap_a { m as u8 + 1 } else { m as u8 + 2 });
                        seq.push(if swap_b { m as u8 + 4 } else { m as u8 + 3 });
                        seq.push(if swap_b { m as u8 + 3 } else { m as u8 + 4 });
                        for rest in m + 5..=n {
                            seq.push(rest as u8);
                        }
                        elements.push(Permutation::from_seq(seq)?);
                    }
                }
            }
        }
    }
    PermGroup::from_elements(n, elements)
}
