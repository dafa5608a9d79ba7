#![allow(dead_code)]

use finito::enumerate::{EnumConfig, PosetCatalog};
use finito::FinitePoset;
use proptest::prelude::*;
use proptest::sample::subsequence;

/// Every isomorphism class with at most `k` points.
pub fn classes_up_to(k: usize) -> Vec<FinitePoset> {
    PosetCatalog::new(EnumConfig::default()).up_to(k).unwrap()
}

/// A poset on at most `max` points: random pairs `i < j` closed
/// transitively, then relabelled by a random permutation.
pub fn arb_poset(max: usize) -> impl Strategy<Value = FinitePoset> {
    (1..=max)
        .prop_flat_map(|n| {
            let pairs = n * (n - 1) / 2;
            (
                Just(n),
                proptest::collection::vec(any::<bool>(), pairs),
                Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
            )
        })
        .prop_map(|(n, bits, perm)| {
            let mut covers = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if bits[k] {
                        covers.push((i, j));
                    }
                    k += 1;
                }
            }
            FinitePoset::from_cover_pairs(n, &covers)
                .unwrap()
                .permuted(&perm)
        })
}

/// A random permutation of `0..n`.
pub fn arb_permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

/// A random nonempty subset of `0..n`.
pub fn arb_subset(n: usize) -> impl Strategy<Value = Vec<usize>> {
    subsequence((0..n).collect::<Vec<_>>(), 1..=n)
}
