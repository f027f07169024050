mod common;

use std::collections::BTreeMap;

use clover::canon::canonicalize_diagram;
use clover::color::{colors, Color};
use clover::enumerate::{enumerate, enumerate_with, EnumerationOptions};
use clover::graph::shapes;
use common::{all_raw, oracle_counts};

fn alphabet(k: usize) -> Vec<Color> {
    colors(&["x", "y"][..k])
}

#[test]
fn counts_match_brute_force() {
    for n in 0..=3 {
        for k in 0..=2 {
            if n == 3 && k == 2 {
                continue; // covered by the slow test below
            }
            let lib = enumerate(n, &alphabet(k)).unwrap();
            let oracle = oracle_counts(n, k, false);
            assert_eq!(
                (lib.generators.len(), lib.degenerates.len()),
                oracle,
                "degree {n}, {k} colors"
            );
        }
    }
}

#[test]
fn counts_match_brute_force_degree_three_two_colors() {
    let lib = enumerate(3, &alphabet(2)).unwrap();
    assert_eq!(
        (lib.generators.len(), lib.degenerates.len()),
        oracle_counts(3, 2, false)
    );
}

#[test]
fn connected_counts_match_brute_force() {
    let opts = EnumerationOptions {
        connected_only: true,
        ..Default::default()
    };
    for n in 0..=3 {
        for k in 0..=1 {
            let lib = enumerate_with(n, &alphabet(k), &opts).unwrap();
            assert_eq!(
                (lib.generators.len(), lib.degenerates.len()),
                oracle_counts(n, k, true),
                "degree {n}"
            );
        }
    }
}

/// The library and oracle canonical forms induce the same partition and the
/// same relative AS signs.
#[test]
fn canonical_classes_and_signs_agree() {
    for (n, k) in [(1, 2), (2, 1), (2, 2), (3, 1)] {
        let alpha = alphabet(k);
        let mut lib_of: BTreeMap<Vec<usize>, (String, i32)> = BTreeMap::new();
        let mut oracle_of: BTreeMap<String, Vec<usize>> = BTreeMap::new();
        for g in all_raw(n, k) {
            let o = g.canonical();
            let (c, s) = canonicalize_diagram(&g.to_diagram(&alpha));
            assert_eq!(c.is_degenerate(), o.degenerate);
            let rel = s.to_i32() * o.sign;
            match lib_of.get(&o.code) {
                None => {
                    lib_of.insert(o.code.clone(), (c.key().to_string(), rel));
                }
                Some((key, r)) => {
                    assert_eq!(key, c.key());
                    if !o.degenerate {
                        assert_eq!(*r, rel, "relative sign for {}", c.key());
                    }
                }
            }
            let prev = oracle_of
                .entry(c.key().to_string())
                .or_insert_with(|| o.code.clone());
            assert_eq!(*prev, o.code);
        }
    }
}

#[test]
fn degree_zero_is_the_empty_graph() {
    for k in 0..=2 {
        let b = enumerate(0, &alphabet(k)).unwrap();
        assert_eq!(b.generators.len(), 1);
        assert_eq!(b.generators[0].diagram().leg_count(), 0);
    }
}

#[test]
fn degree_two_contains_theta_and_dumbbell() {
    let b = enumerate(2, &[]).unwrap();
    let theta = canonicalize_diagram(&shapes::theta()).0;
    let dumbbell = canonicalize_diagram(&shapes::dumbbell()).0;
    assert!(b.contains(&theta) && !theta.is_degenerate());
    assert!(b.contains(&dumbbell));
    assert_eq!(b.len(), 2);
}

#[test]
fn parity_and_alphabet_embedding() {
    let small = enumerate(2, &alphabet(1)).unwrap();
    let big = enumerate(2, &alphabet(2)).unwrap();
    assert!(small.all().all(|g| big.contains(g)));
    for n in 0..=3 {
        for g in enumerate(n, &alphabet(2)).unwrap().all() {
            assert_eq!(g.diagram().leg_count() % 2, n % 2);
        }
    }
}

#[test]
fn lists_are_sorted_and_duplicate_free() {
    let b = enumerate(3, &alphabet(2)).unwrap();
    for list in [&b.generators, &b.degenerates] {
        assert!(list.windows(2).all(|w| w[0] < w[1]));
    }
}

#[test]
fn degree_bound_is_a_resource_limit() {
    let err = enumerate(5, &[]).unwrap_err();
    assert!(matches!(err, clover::error::CloverError::ResourceLimit(_)));
}
