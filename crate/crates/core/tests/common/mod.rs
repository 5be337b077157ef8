//! Shared fixtures for the integration suites. Each test binary uses its
//! own subset.
#![allow(dead_code)]

use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use vartin_core::{
    ArtinLetter, ArtinWord, CoxWord, CoxeterGraph, GroupContext, Label, VaLetter, VaWord,
};

pub fn graph(names: &[&str], edges: &[(&str, &str, Label)]) -> CoxeterGraph {
    CoxeterGraph::from_parts(names, edges).unwrap()
}

pub fn ctx(names: &[&str], edges: &[(&str, &str, Label)]) -> Arc<GroupContext> {
    GroupContext::new(graph(names, edges)).unwrap()
}

pub fn a2() -> Arc<GroupContext> {
    ctx(&["s", "t"], &[("s", "t", Label::Finite(3))])
}

pub fn b2() -> Arc<GroupContext> {
    ctx(&["s", "t"], &[("s", "t", Label::Finite(4))])
}

pub fn a3() -> Arc<GroupContext> {
    ctx(
        &["s", "t", "u"],
        &[("s", "t", Label::Finite(3)), ("t", "u", Label::Finite(3))],
    )
}

pub fn i2(m: u32) -> Arc<GroupContext> {
    ctx(&["s", "t"], &[("s", "t", Label::Finite(m))])
}

pub fn a1a1() -> Arc<GroupContext> {
    ctx(&["s", "t"], &[])
}

/// Spherical + one infinite edge: {m_st = 3, m_su = 2, m_tu = ∞}.
pub fn fc_with_infinite_edge() -> Arc<GroupContext> {
    ctx(
        &["s", "t", "u"],
        &[
            ("s", "t", Label::Finite(3)),
            ("s", "u", Label::Finite(2)),
            ("t", "u", Label::Infinite),
        ],
    )
}

pub fn random_cox_word(rng: &mut ChaCha8Rng, rank: usize, max_len: usize) -> CoxWord {
    let len = rng.gen_range(0..=max_len);
    CoxWord((0..len).map(|_| rng.gen_range(0..rank)).collect())
}

pub fn random_artin_word(rng: &mut ChaCha8Rng, rank: usize, max_len: usize) -> ArtinWord {
    let len = rng.gen_range(0..=max_len);
    ArtinWord(
        (0..len)
            .map(|_| ArtinLetter {
                vertex: rng.gen_range(0..rank),
                inverse: rng.gen(),
            })
            .collect(),
    )
}

pub fn random_va_word(rng: &mut ChaCha8Rng, rank: usize, max_len: usize) -> VaWord {
    let len = rng.gen_range(0..=max_len);
    VaWord(
        (0..len)
            .map(|_| {
                let vertex = rng.gen_range(0..rank);
                match rng.gen_range(0..3) {
                    0 => VaLetter::Sigma {
                        vertex,
                        inverse: false,
                    },
                    1 => VaLetter::Sigma {
                        vertex,
                        inverse: true,
                    },
                    _ => VaLetter::Tau { vertex },
                }
            })
            .collect(),
    )
}
