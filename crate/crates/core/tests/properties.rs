//! Randomized invariants: algebraic laws for permutations and rings, line
//! census coherence, and format round-trips.

use std::collections::HashSet;

use proptest::prelude::*;

use latin_packing::constructions::PackingSet;
use latin_packing::corpus::{self, MatrixCorpus};
use latin_packing::perm::Permutation;
use latin_packing::ring::{find_quartet, reflectable_enumeration, Ring};
use latin_packing::square::{apply_entrywise, SquareMatrix};
use latin_packing::verify::{classify_symmetry, is_latin, verify_packing};

/// A permutation of degree `n` as the argsort of random keys.
fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    prop::collection::vec(any::<u32>(), n).prop_map(move |keys| {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| (keys[i], i));
        let mut seq = vec![0u8; n];
        for (image, &position) in order.iter().enumerate() {
            seq[position] = image as u8 + 1;
        }
        Permutation::from_seq(seq).expect("argsort yields a permutation")
    })
}

/// A Latin square of order `n`: the cyclic square with rows permuted and
/// symbols relabeled.
fn latin_square(n: usize) -> impl Strategy<Value = SquareMatrix> {
    (permutation(n), permutation(n)).prop_map(move |(rows, relabel)| {
        SquareMatrix::from_fn(n, |i, j| {
            let shifted = (rows.apply(i as u8 + 1) as usize - 1 + j) % n;
            relabel.apply(shifted as u8 + 1)
        })
        .expect("cyclic construction is Latin")
    })
}

/// Any matrix over `{1..n}`, Latin or not.
fn any_matrix(n: usize) -> impl Strategy<Value = SquareMatrix> {
    prop::collection::vec(1..=n as u8, n * n).prop_map(move |cells| {
        SquareMatrix::from_fn(n, |i, j| cells[i * n + j]).expect("entries are in range")
    })
}

fn small_ring() -> impl Strategy<Value = Ring> {
    prop::collection::vec(1u64..=9, 1..=3)
        .prop_map(|moduli| Ring::new(moduli).expect("moduli are positive"))
}

proptest! {
    #[test]
    fn composition_is_associative((a, b, c) in (1usize..=8).prop_flat_map(|n| {
        (permutation(n), permutation(n), permutation(n))
    })) {
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn inverses_cancel(p in (1usize..=8).prop_flat_map(permutation)) {
        let n = p.n();
        prop_assert!(p.compose(&p.inverse()).unwrap().is_identity());
        prop_assert!(p.inverse().compose(&p).unwrap().is_identity());
        let id = Permutation::identity(n);
        prop_assert_eq!(p.compose(&id).unwrap(), p.clone());
        prop_assert_eq!(id.compose(&p).unwrap(), p);
    }

    #[test]
    fn lines_come_in_reversed_pairs(m in (2usize..=7).prop_flat_map(any_matrix)) {
        let n = m.n();
        let lines = m.lines();
        prop_assert_eq!(lines.len(), 4 * n);
        // Reverse rows mirror rows, reverse columns mirror columns,
        // in the same index order.
        for i in 0..n {
            let mut fwd = lines[i].seq.clone();
            fwd.reverse();
            prop_assert_eq!(&fwd, &lines[2 * n + i].seq);
            let mut fwd = lines[n + i].seq.clone();
            fwd.reverse();
            prop_assert_eq!(&fwd, &lines[3 * n + i].seq);
        }
    }

    #[test]
    fn relabeling_preserves_latin_and_line_census(
        (m, r) in (3usize..=7).prop_flat_map(|n| (latin_square(n), permutation(n)))
    ) {
        prop_assert!(is_latin(&m));
        let relabeled = apply_entrywise(&r, &m).unwrap();
        prop_assert!(is_latin(&relabeled));
        // Relabeling acts on each line by composition, so distinct-line
        // counts are preserved.
        let census = |sq: &SquareMatrix| -> usize {
            sq.lines().into_iter().map(|l| l.seq).collect::<HashSet<_>>().len()
        };
        prop_assert_eq!(census(&m), census(&relabeled));
        for (line, relabeled_line) in m.lines().into_iter().zip(relabeled.lines()) {
            let expected = r.compose(&line.as_permutation().unwrap()).unwrap();
            prop_assert_eq!(relabeled_line.as_permutation().unwrap(), expected);
        }
    }

    #[test]
    fn packing_verdict_matches_census(
        (pool, picks) in (3usize..=6).prop_flat_map(|n| {
            (prop::collection::vec(latin_square(n), 1..=3),
             prop::collection::vec(0usize..3, 1..=4))
        })
    ) {
        let matrices: Vec<SquareMatrix> = picks
            .into_iter()
            .map(|i| pool[i % pool.len()].clone())
            .collect();
        let set = PackingSet::new(matrices).unwrap();
        let report = verify_packing(&set);
        prop_assert_eq!(report.total_lines, 4 * report.n * report.matrix_count);
        prop_assert_eq!(
            report.distinct_lines + report.violations.len(),
            report.total_lines
        );
        prop_assert_eq!(
            report.is_packing,
            report.all_latin && report.distinct_lines == report.total_lines
        );
        for v in &report.violations {
            let earlier = (v.duplicate_of.matrix, v.duplicate_of.kind, v.duplicate_of.index)
                < (v.matrix, v.kind, v.index);
            let same_spot = v.duplicate_of.matrix == v.matrix
                && v.duplicate_of.kind == v.kind
                && v.duplicate_of.index == v.index;
            prop_assert!(earlier || !same_spot);
        }
    }

    #[test]
    fn two_symmetries_imply_the_third(m in (2usize..=6).prop_flat_map(any_matrix)) {
        let report = classify_symmetry(&m);
        let flags =
            [report.symmetric, report.centrosymmetric, report.hankel_symmetric];
        let count = flags.iter().filter(|&&f| f).count();
        prop_assert_ne!(count, 2);
    }

    #[test]
    fn corpus_round_trip(mats in (1usize..=6).prop_flat_map(|n| {
        prop::collection::vec(any_matrix(n), 1..=4)
    })) {
        let corpus = MatrixCorpus::new(mats);
        let parsed = corpus::parse(&corpus::render(&corpus)).unwrap();
        prop_assert_eq!(parsed, corpus);
    }

    #[test]
    fn ring_laws(ring in small_ring(), seeds in prop::collection::vec(any::<u64>(), 3)) {
        let pick = |seed: u64| {
            let idx = (seed % ring.size() as u64) as usize;
            ring.elements().nth(idx).unwrap()
        };
        let (a, b, c) = (pick(seeds[0]), pick(seeds[1]), pick(seeds[2]));
        prop_assert_eq!(ring.add(&a, &b), ring.add(&b, &a));
        prop_assert_eq!(ring.mul(&a, &b), ring.mul(&b, &a));
        prop_assert_eq!(
            ring.add(&ring.add(&a, &b), &c),
            ring.add(&a, &ring.add(&b, &c))
        );
        prop_assert_eq!(
            ring.mul(&ring.mul(&a, &b), &c),
            ring.mul(&a, &ring.mul(&b, &c))
        );
        prop_assert_eq!(
            ring.mul(&a, &ring.add(&b, &c)),
            ring.add(&ring.mul(&a, &b), &ring.mul(&a, &c))
        );
        prop_assert_eq!(ring.add(&a, &ring.neg(&a)), ring.zero());
        prop_assert_eq!(ring.mul(&a, &ring.one()), a.clone());
        prop_assert_eq!(ring.sub(&a, &b), ring.add(&a, &ring.neg(&b)));
    }

    #[test]
    fn ring_elements_rank_and_unrank(ring in small_ring()) {
        let all: Vec<_> = ring.elements().collect();
        prop_assert_eq!(all.len(), ring.size());
        for (i, x) in all.iter().enumerate() {
            prop_assert_eq!(ring.index_of(x), i);
        }
        let mut sorted = all.clone();
        sorted.sort();
        prop_assert_eq!(all, sorted);
    }

    #[test]
    fn reflectable_enumeration_reflects(ring in small_ring()) {
        let e = reflectable_enumeration(&ring);
        let n = ring.size();
        prop_assert_eq!(e.z.len(), n);
        prop_assert_eq!(&e.u, &ring.neg(&ring.one()));
        let distinct: HashSet<_> = e.z.iter().cloned().collect();
        prop_assert_eq!(distinct.len(), n);
        for i in 0..n {
            prop_assert_eq!(&ring.sub(&e.u, &e.z[i]), &e.z[n - 1 - i]);
        }
    }

    #[test]
    fn quartets_found_are_quartets(ring in small_ring()) {
        if let Some(q) = find_quartet(&ring) {
            prop_assert_eq!(&q.one, &ring.one());
            prop_assert_eq!(&q.minus_one, &ring.neg(&ring.one()));
            prop_assert_eq!(&q.minus_c, &ring.neg(&q.c));
            prop_assert!(q.members().iter().all(|x| ring.is_unit(x)));
            let c2 = ring.mul(&q.c, &q.c);
            prop_assert!(c2 == q.one || c2 == q.minus_one);
            let distinct: HashSet<_> = q.members().into_iter().collect();
            prop_assert_eq!(distinct.len(), 4);
        }
    }
}
