//! Finite commutative rings `Z_k1 × ... × Z_kt`, their unit groups, and two
//! structures the single-square construction needs:
//!
//! * a *quartet* `{1, -1, c, -c}`: four distinct units, closed under
//!   negation, with `c² ∈ {1, -1}` — so the four form a group of units
//!   under multiplication up to sign;
//! * a *reflectable enumeration* `z_1, ..., z_n` of all ring elements, one
//!   whose reflection `x ↦ u - x` (here `u = -1`) reverses the enumeration:
//!   `u - z_i = z_{n+1-i}`.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::util::{gcd, is_prime};

/// Product of residue-class rings, one factor per modulus. Elements are
/// tuples of reduced residues, ordered lexicographically.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Ring {
    moduli: Vec<u64>,
    size: usize,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RingElement {
    residues: Vec<u64>,
}

impl RingElement {
    pub fn residues(&self) -> &[u64] {
        &self.residues
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.residues.len() == 1 {
            write!(f, "{}", self.residues[0])
        } else {
            write!(f, "(")?;
            for (i, r) in self.residues.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{r}")?;
            }
            write!(f, ")")
        }
    }
}

impl Ring {
    pub fn new(moduli: Vec<u64>) -> Result<Ring> {
        if moduli.is_empty() {
            return Err(Error::InvalidModuli("at least one modulus is required".into()));
        }
        let mut size: u128 = 1;
        for &k in &moduli {
            if k == 0 {
                return Err(Error::InvalidModuli("moduli must be at least 1".into()));
            }
            size *= k as u128;
            if size > u32::MAX as u128 {
                return Err(Error::InvalidModuli(format!(
                    "ring size exceeds the supported bound of {}",
                    u32::MAX
                )));
            }
        }
        Ok(Ring {
            moduli,
            size: size as usize,
        })
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    /// Number of elements.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn zero(&self) -> RingElement {
        RingElement {
            residues: vec![0; self.moduli.len()],
        }
    }

    pub fn one(&self) -> RingElement {
        RingElement {
            residues: self.moduli.iter().map(|&k| 1 % k).collect(),
        }
    }

    /// Validates residue count and reduction.
    pub fn element(&self, residues: Vec<u64>) -> Result<RingElement> {
        if residues.len() != self.moduli.len() {
            return Err(Error::InvalidModuli(format!(
                "expected {} residues, got {}",
                self.moduli.len(),
                residues.len()
            )));
        }
        for (&r, &k) in residues.iter().zip(&self.moduli) {
            if r >= k {
                return Err(Error::InvalidModuli(format!(
                    "residue {r} is not reduced modulo {k}"
                )));
            }
        }
        Ok(RingElement { residues })
    }

    fn zip_with(&self, a: &RingElement, b: &RingElement, f: impl Fn(u64, u64, u64) -> u64) -> RingElement {
        debug_assert_eq!(a.residues.len(), self.moduli.len());
        debug_assert_eq!(b.residues.len(), self.moduli.len());
        RingElement {
            residues: self
                .moduli
                .iter()
                .zip(a.residues.iter().zip(&b.residues))
                .map(|(&k, (&x, &y))| f(x, y, k))
                .collect(),
        }
    }

    pub fn add(&self, a: &RingElement, b: &RingElement) -> RingElement {
        self.zip_with(a, b, |x, y, k| (x + y) % k)
    }

    pub fn sub(&self, a: &RingElement, b: &RingElement) -> RingElement {
        self.zip_with(a, b, |x, y, k| (x + k - y) % k)
    }

    pub fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        self.zip_with(a, b, |x, y, k| (x as u128 * y as u128 % k as u128) as u64)
    }

    pub fn neg(&self, a: &RingElement) -> RingElement {
        self.sub(&self.zero(), a)
    }

    /// A tuple is a unit exactly when every component is coprime to its
    /// modulus. (In `Z_1` the sole element 0 is the unit 1.)
    pub fn is_unit(&self, a: &RingElement) -> bool {
        a.residues
            .iter()
            .zip(&self.moduli)
            .all(|(&r, &k)| gcd(r, k) == 1)
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> impl Iterator<Item = RingElement> + '_ {
        (0..self.size).map(|idx| self.unrank(idx))
    }

    /// Units in lexicographic order.
    pub fn units(&self) -> Vec<RingElement> {
        self.elements().filter(|x| self.is_unit(x)).collect()
    }

    /// Rank of an element in the lexicographic order of all elements.
    pub fn index_of(&self, a: &RingElement) -> usize {
        debug_assert_eq!(a.residues.len(), self.moduli.len());
        let mut idx: usize = 0;
        for (&r, &k) in a.residues.iter().zip(&self.moduli) {
            idx = idx * k as usize + r as usize;
        }
        idx
    }

    fn unrank(&self, mut idx: usize) -> RingElement {
        let mut residues = vec![0u64; self.moduli.len()];
        for (slot, &k) in residues.iter_mut().zip(&self.moduli).rev() {
            *slot = (idx % k as usize) as u64;
            idx /= k as usize;
        }
        RingElement { residues }
    }
}

/// Four distinct units `{1, -1, c, -c}` with `c² ∈ {1, -1}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Quartet {
    pub one: RingElement,
    pub minus_one: RingElement,
    pub c: RingElement,
    pub minus_c: RingElement,
}

impl Quartet {
    pub fn members(&self) -> [&RingElement; 4] {
        [&self.one, &self.minus_one, &self.c, &self.minus_c]
    }

    fn from_c(ring: &Ring, c: RingElement) -> Quartet {
        Quartet {
            one: ring.one(),
            minus_one: ring.neg(&ring.one()),
            minus_c: ring.neg(&c),
            c,
        }
    }
}

/// Searches the units in lexicographic order for the least `c ∉ {1, -1}`
/// with `c² ∈ {1, -1}` and returns its quartet, or `None` when the ring has
/// no quartet (in particular whenever `1 = -1`).
pub fn find_quartet(ring: &Ring) -> Option<Quartet> {
    let one = ring.one();
    let minus_one = ring.neg(&one);
    if one == minus_one {
        return None;
    }
    for c in ring.elements() {
        if !ring.is_unit(&c) || c == one || c == minus_one {
            continue;
        }
        let c2 = ring.mul(&c, &c);
        if c2 != one && c2 != minus_one {
            continue;
        }
        if ring.neg(&c) == c {
            continue;
        }
        return Some(Quartet::from_c(ring, c));
    }
    None
}

/// Builds, for an order `n ≥ 5`, a ring of exactly `n` elements together
/// with a quartet in it. Such a ring exists unless `n` is a prime congruent
/// to 3 mod 4, or twice such a prime; those orders are rejected.
///
/// The ring chosen depends only on the arithmetic of `n`:
/// odd composite `n = f·q` (f its least prime factor) → `Z_f × Z_q` with
/// `c = (1, -1)`; prime `n ≡ 1 mod 4` → `Z_n` with `c` the least square
/// root of `-1`; `n ≡ 0 mod 4` → `Z_n` with `c = (n-2)/2`; and
/// `n ≡ 2 mod 4` → `Z_2 ×` (the ring for the odd half `n/2`).
pub fn construct_quartet(n: usize) -> Result<(Ring, Quartet)> {
    if n < 5 {
        return Err(Error::UnsupportedOrder {
            n,
            reason: "no ring of fewer than 5 elements has a quartet".into(),
        });
    }
    let m = n as u64;
    if is_prime(m) && m % 4 == 3 {
        return Err(Error::UnsupportedOrder {
            n,
            reason: format!("no quartet exists: {n} is a prime congruent to 3 mod 4"),
        });
    }
    if m % 2 == 0 && is_prime(m / 2) && (m / 2) % 4 == 3 {
        return Err(Error::UnsupportedOrder {
            n,
            reason: format!("no quartet exists: {n} is twice a prime congruent to 3 mod 4"),
        });
    }
    if m % 2 == 1 {
        return odd_order_quartet(m);
    }
    if m % 4 == 0 {
        let ring = Ring::new(vec![m])?;
        let c = ring.element(vec![(m - 2) / 2])?;
        let quartet = Quartet::from_c(&ring, c);
        return Ok((ring, quartet));
    }
    // n ≡ 2 mod 4: glue Z_2 onto the ring for the odd half. Negation fixes
    // the Z_2 component, so the quartet lifts with a leading 1.
    let (half_ring, half_quartet) = odd_order_quartet(m / 2)?;
    let mut moduli = vec![2];
    moduli.extend_from_slice(half_ring.moduli());
    let ring = Ring::new(moduli)?;
    let lift = |x: &RingElement| -> Result<RingElement> {
        let mut residues = vec![1];
        residues.extend_from_slice(x.residues());
        ring.element(residues)
    };
    let quartet = Quartet::from_c(&ring, lift(&half_quartet.c)?);
    Ok((ring, quartet))
}

/// Odd `m ≥ 5`, not a prime congruent to 3 mod 4.
fn odd_order_quartet(m: u64) -> Result<(Ring, Quartet)> {
    debug_assert!(m >= 5 && m % 2 == 1);
    if is_prime(m) {
        debug_assert_eq!(m % 4, 1);
        let ring = Ring::new(vec![m])?;
        let root = (2..m - 1)
            .find(|&x| (x as u128 * x as u128 % m as u128) as u64 == m - 1)
            .expect("primes congruent to 1 mod 4 have a square root of -1");
        let c = ring.element(vec![root])?;
        let quartet = Quartet::from_c(&ring, c);
        return Ok((ring, quartet));
    }
    let f = (3..).step_by(2).find(|&d| m % d == 0).expect("odd composite");
    let q = m / f;
    let ring = Ring::new(vec![f, q])?;
    let c = ring.element(vec![1, q - 1])?;
    let quartet = Quartet::from_c(&ring, c);
    Ok((ring, quartet))
}

/// An enumeration `z_1, ..., z_n` of all ring elements whose reflection
/// `x ↦ u - x` with `u = -1` reads it backwards: `u - z_i = z_{n+1-i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReflectableEnumeration {
    pub u: RingElement,
    pub z: Vec<RingElement>,
}

/// Pairs each element with its mirror image under `x ↦ -1 - x`, placing the
/// lexicographically smaller member of each pair in the front half (front
/// half in lexicographic order) and mirroring it into the back half; the
/// unique self-mirrored element of an odd-size ring sits in the middle.
pub fn reflectable_enumeration(ring: &Ring) -> ReflectableEnumeration {
    let u = ring.neg(&ring.one());
    let mut fixed: Option<RingElement> = None;
    let mut firsts: Vec<RingElement> = Vec::new();
    let mut mirrored: HashSet<RingElement> = HashSet::new();
    for x in ring.elements() {
        if mirrored.contains(&x) {
            continue;
        }
        let y = ring.sub(&u, &x);
        if y == x {
            let previous = fixed.replace(x);
            debug_assert!(previous.is_none(), "at most one element satisfies 2x = u");
            continue;
        }
        mirrored.insert(y);
        firsts.push(x);
    }
    let mut z = firsts.clone();
    if let Some(f) = fixed {
        z.push(f);
    }
    for x in firsts.iter().rev() {
        z.push(ring.sub(&u, x));
    }
    debug_assert_eq!(z.len(), ring.size());
    ReflectableEnumeration { u, z }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(moduli: &[u64]) -> Ring {
        Ring::new(moduli.to_vec()).unwrap()
    }

    fn el(ring: &Ring, residues: &[u64]) -> RingElement {
        ring.element(residues.to_vec()).unwrap()
    }

    #[test]
    fn construction_validates_moduli() {
        assert!(Ring::new(vec![]).is_err());
        assert!(Ring::new(vec![3, 0]).is_err());
        assert!(Ring::new(vec![1]).is_ok());
    }

    #[test]
    fn elements_are_lexicographic_and_ranked() {
        let r = ring(&[2, 3]);
        let all: Vec<Vec<u64>> = r.elements().map(|x| x.residues().to_vec()).collect();
        assert_eq!(
            all,
            vec![
                vec![0, 0],
                vec![0, 1],
                vec![0, 2],
                vec![1, 0],
                vec![1, 1],
                vec![1, 2]
            ]
        );
        for (i, x) in r.elements().enumerate() {
            assert_eq!(r.index_of(&x), i);
        }
    }

    #[test]
    fn arithmetic_is_componentwise() {
        let r = ring(&[4, 5]);
        let a = el(&r, &[3, 2]);
        let b = el(&r, &[2, 4]);
        assert_eq!(r.add(&a, &b), el(&r, &[1, 1]));
        assert_eq!(r.sub(&a, &b), el(&r, &[1, 3]));
        assert_eq!(r.mul(&a, &b), el(&r, &[2, 3]));
        assert_eq!(r.neg(&a), el(&r, &[1, 3]));
        assert_eq!(r.one(), el(&r, &[1, 1]));
    }

    #[test]
    fn units_by_componentwise_coprimality() {
        let z12 = ring(&[12]);
        let units: Vec<u64> = z12.units().iter().map(|x| x.residues()[0]).collect();
        assert_eq!(units, vec![1, 5, 7, 11]);
        assert_eq!(ring(&[9]).units().len(), 6);
        assert_eq!(ring(&[27]).units().len(), 18);
        assert_eq!(ring(&[2, 5]).units().len(), 4);
        // The trivial ring's sole element is its own 1.
        let z1 = ring(&[1]);
        assert_eq!(z1.units().len(), 1);
        assert_eq!(z1.one(), z1.zero());
    }

    #[test]
    fn quartet_found_in_small_rings() {
        let z5 = ring(&[5]);
        let q = find_quartet(&z5).unwrap();
        assert_eq!(q.one, el(&z5, &[1]));
        assert_eq!(q.minus_one, el(&z5, &[4]));
        assert_eq!(q.c, el(&z5, &[2]));
        assert_eq!(q.minus_c, el(&z5, &[3]));

        let z33 = ring(&[3, 3]);
        let q = find_quartet(&z33).unwrap();
        assert_eq!(q.c, el(&z33, &[1, 2]));
        assert_eq!(q.minus_c, el(&z33, &[2, 1]));

        let z13 = ring(&[13]);
        assert_eq!(find_quartet(&z13).unwrap().c, el(&z13, &[5]));

        let z8 = ring(&[8]);
        assert_eq!(find_quartet(&z8).unwrap().c, el(&z8, &[3]));

        let z25 = ring(&[2, 5]);
        assert_eq!(find_quartet(&z25).unwrap().c, el(&z25, &[1, 2]));
    }

    #[test]
    fn quartet_absent_where_it_must_be() {
        // Prime powers of a prime ≡ 3 mod 4 have cyclic unit groups of
        // order 2·3^k with a unique involution -1: no quartet.
        assert!(find_quartet(&ring(&[9])).is_none());
        assert!(find_quartet(&ring(&[27])).is_none());
        assert!(find_quartet(&ring(&[7])).is_none());
        assert!(find_quartet(&ring(&[3])).is_none());
        // 1 = -1 kills every candidate.
        assert!(find_quartet(&ring(&[2, 2])).is_none());
        assert!(find_quartet(&ring(&[2])).is_none());
        assert!(find_quartet(&ring(&[1])).is_none());
        assert!(find_quartet(&ring(&[4])).is_none());
    }

    #[test]
    fn quartets_are_closed_under_negation_with_c_squared_unital() {
        for moduli in [vec![5], vec![8], vec![3, 3], vec![13], vec![2, 5], vec![16]] {
            let r = ring(&moduli);
            let q = find_quartet(&r).unwrap();
            assert_eq!(r.neg(&q.one), q.minus_one);
            assert_eq!(r.neg(&q.c), q.minus_c);
            assert!(q.members().iter().all(|x| r.is_unit(x)));
            let c2 = r.mul(&q.c, &q.c);
            assert!(c2 == q.one || c2 == q.minus_one);
            let distinct: std::collections::BTreeSet<_> = q.members().into_iter().collect();
            assert_eq!(distinct.len(), 4);
        }
    }

    #[test]
    fn constructed_quartets_per_order_class() {
        // Odd composite: split off the least prime factor.
        let (r9, q9) = construct_quartet(9).unwrap();
        assert_eq!(r9.moduli(), &[3, 3]);
        assert_eq!(q9.c, el(&r9, &[1, 2]));

        let (r15, q15) = construct_quartet(15).unwrap();
        assert_eq!(r15.moduli(), &[3, 5]);
        assert_eq!(q15.c, el(&r15, &[1, 4]));

        // Prime ≡ 1 mod 4: square root of -1.
        let (r5, q5) = construct_quartet(5).unwrap();
        assert_eq!(r5.moduli(), &[5]);
        assert_eq!(q5.c, el(&r5, &[2]));
        let (r13, q13) = construct_quartet(13).unwrap();
        assert_eq!(q13.c, el(&r13, &[5]));

        // Multiples of 4: c = (n-2)/2.
        let (r8, q8) = construct_quartet(8).unwrap();
        assert_eq!(r8.moduli(), &[8]);
        assert_eq!(q8.c, el(&r8, &[3]));
        let (r16, q16) = construct_quartet(16).unwrap();
        assert_eq!(q16.c, el(&r16, &[7]));
        let (r12, q12) = construct_quartet(12).unwrap();
        assert_eq!(q12.c, el(&r12, &[5]));

        // Twice an odd order: a Z_2 factor in front.
        let (r10, q10) = construct_quartet(10).unwrap();
        assert_eq!(r10.moduli(), &[2, 5]);
        assert_eq!(q10.c, el(&r10, &[1, 2]));
        let (r18, q18) = construct_quartet(18).unwrap();
        assert_eq!(r18.moduli(), &[2, 3, 3]);
        assert_eq!(q18.c, el(&r18, &[1, 1, 2]));
    }

    #[test]
    fn construction_rejects_exactly_the_known_gaps() {
        for n in 0..5 {
            assert!(construct_quartet(n).is_err(), "n = {n}");
        }
        for n in [7, 11, 19, 23, 31, 43, 47] {
            let err = construct_quartet(n).unwrap_err();
            assert!(
                err.to_string().contains("prime congruent to 3 mod 4"),
                "n = {n}: {err}"
            );
        }
        for n in [6, 14, 22, 38, 46] {
            let err = construct_quartet(n).unwrap_err();
            assert!(err.to_string().contains("twice a prime"), "n = {n}: {err}");
        }
    }

    #[test]
    fn constructed_quartets_are_valid_for_all_admissible_orders_up_to_60() {
        for n in 5..=60 {
            let m = n as u64;
            let gap = (is_prime(m) && m % 4 == 3)
                || (m % 2 == 0 && is_prime(m / 2) && (m / 2) % 4 == 3);
            match construct_quartet(n) {
                Err(_) => assert!(gap, "n = {n} unexpectedly failed"),
                Ok((r, q)) => {
                    assert!(!gap, "n = {n} should have no quartet");
                    assert_eq!(r.size(), n);
                    assert_eq!(q.one, r.one());
                    assert_eq!(q.minus_one, r.neg(&r.one()));
                    assert_eq!(q.minus_c, r.neg(&q.c));
                    assert!(q.members().iter().all(|x| r.is_unit(x)));
                    let c2 = r.mul(&q.c, &q.c);
                    assert!(c2 == q.one || c2 == q.minus_one);
                    let distinct: std::collections::BTreeSet<_> =
                        q.members().into_iter().collect();
                    assert_eq!(distinct.len(), 4);
                }
            }
        }
    }

    #[test]
    fn reflectable_enumeration_small_cases() {
        let z5 = ring(&[5]);
        let e = reflectable_enumeration(&z5);
        assert_eq!(e.u, el(&z5, &[4]));
        let values: Vec<u64> = e.z.iter().map(|x| x.residues()[0]).collect();
        assert_eq!(values, vec![0, 1, 2, 3, 4]);

        let z4 = ring(&[4]);
        let e = reflectable_enumeration(&z4);
        let values: Vec<u64> = e.z.iter().map(|x| x.residues()[0]).collect();
        assert_eq!(values, vec![0, 1, 2, 3]);

        let z33 = ring(&[3, 3]);
        let e = reflectable_enumeration(&z33);
        // The self-mirrored element (1,1) lands exactly in the middle.
        assert_eq!(e.z[4], el(&z33, &[1, 1]));
        for (i, x) in e.z.iter().enumerate() {
            assert_eq!(&z33.sub(&e.u, x), &e.z[8 - i]);
        }
    }
}
