//! Benchmark-only package; shared input builders live here so the bench
//! targets stay small.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vartin_core::{ArtinLetter, ArtinWord, CoxWord, CoxeterGraph, GroupContext, Label};

pub fn a3() -> std::sync::Arc<GroupContext> {
    let graph = CoxeterGraph::from_parts(
        &["s", "t", "u"],
        &[("s", "t", Label::Finite(3)), ("t", "u", Label::Finite(3))],
    )
    .unwrap();
    GroupContext::new(graph).unwrap()
}

pub fn b2() -> std::sync::Arc<GroupContext> {
    let graph = CoxeterGraph::from_parts(&["s", "t"], &[("s", "t", Label::Finite(4))]).unwrap();
    GroupContext::new(graph).unwrap()
}

pub fn a2_graph() -> CoxeterGraph {
    CoxeterGraph::from_parts(&["s", "t"], &[("s", "t", Label::Finite(3))]).unwrap()
}

pub fn cox_words(rank: usize, n: usize, max_len: usize, seed: u64) -> Vec<CoxWord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let len = rng.gen_range(0..=max_len);
            CoxWord((0..len).map(|_| rng.gen_range(0..rank)).collect())
        })
        .collect()
}

pub fn artin_words(rank: usize, n: usize, max_len: usize, seed: u64) -> Vec<ArtinWord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let len = rng.gen_range(0..=max_len);
            ArtinWord(
                (0..len)
                    .map(|_| ArtinLetter {
                        vertex: rng.gen_range(0..rank),
                        inverse: rng.gen(),
                    })
                    .collect(),
            )
        })
        .collect()
}
