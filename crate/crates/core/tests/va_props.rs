//! End-to-end properties of the virtual-Artin engine: split choice does not
//! change verdicts, certificates never contradict the decision procedure,
//! and external oracles plug into recursion.

mod common;

use std::sync::Arc;

use common::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use vartin_core::oracles::fuzz_relator_words;
use vartin_core::vartin::{abelian_certificate, pi_k_star, VaContext, VaOracle};
use vartin_core::{CoxeterGraph, EngineError, Label, Verdict};

#[test]
fn verdicts_do_not_depend_on_the_splitting_edge() {
    // Two infinite edges: {m_st = ∞, m_tu = ∞, m_su = 2}.
    let graph = graph(
        &["s", "t", "u"],
        &[("s", "t", Label::Infinite), ("t", "u", Label::Infinite)],
    );
    let edges = graph.infinite_edges();
    assert_eq!(edges.len(), 2);
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..200 {
        let word = random_va_word(&mut rng, 3, 10);
        let mut verdicts = Vec::new();
        for &edge in &edges {
            // A fresh context per edge keeps the memo from leaking the
            // first verdict into the second run.
            let va = VaContext::new(graph.clone()).unwrap();
            let mut trace = Vec::new();
            let verdict = va
                .word_problem_at_edge(&word, Some(edge), &mut trace)
                .unwrap();
            verdicts.push(verdict.is_trivial());
        }
        assert_eq!(
            verdicts[0],
            verdicts[1],
            "verdict depends on the split for {}",
            word.display(&graph)
        );
    }
}

#[test]
fn certificates_never_contradict_the_engine() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for ctx in [a2(), a1a1(), fc_with_infinite_edge()] {
        let va = VaContext::new(ctx.graph().clone()).unwrap();
        // Constructed-trivial words are accepted.
        for word in fuzz_relator_words(&ctx, 100, 13) {
            assert!(va.word_problem(&word).unwrap().is_trivial());
            assert!(abelian_certificate(ctx.graph(), &word)
                .iter()
                .all(|&v| v == 0));
        }
        // Arbitrary words: a nonzero abelianization or a nontrivial Coxeter
        // projection forces a nontrivial verdict.
        for _ in 0..100 {
            let word = random_va_word(&mut rng, ctx.rank(), 8);
            let verdict = va.word_problem(&word).unwrap();
            let abelian_nonzero = abelian_certificate(ctx.graph(), &word)
                .iter()
                .any(|&v| v != 0);
            let projection_nontrivial = !ctx.element_of(&pi_k_star(&word)).is_identity();
            if abelian_nonzero || projection_nontrivial {
                assert!(!verdict.is_trivial(), "{}", word.display(ctx.graph()));
            }
            if verdict.is_trivial() {
                assert!(!projection_nontrivial);
            }
        }
    }
}

#[test]
fn memoization_is_transparent() {
    let va = VaContext::new(
        CoxeterGraph::from_parts(&["s", "t"], &[("s", "t", Label::Finite(3))]).unwrap(),
    )
    .unwrap();
    let word = vartin_core::VaWord::parse(va.graph(), "tau:s sigma:s tau:s sigma:s").unwrap();
    let first = va.word_problem(&word).unwrap();
    let mut trace = Vec::new();
    let second = va.word_problem_traced(&word, &mut trace).unwrap();
    assert_eq!(first, second);
    assert!(trace.iter().any(|line| line.contains("memoized")));
}

#[test]
fn registered_oracles_serve_recursive_base_cases() {
    // Attach an affine triangle to a fourth vertex through an infinite edge.
    // Queries that land in the triangle factor need an external engine.
    let g = graph(
        &["s", "t", "u", "v"],
        &[
            ("s", "t", Label::Finite(3)),
            ("t", "u", Label::Finite(3)),
            ("s", "u", Label::Finite(3)),
            ("s", "v", Label::Infinite),
        ],
    );
    let va = VaContext::new(g.clone()).unwrap();
    let word = vartin_core::VaWord::parse(&g, "sigma:v sigma:t sigma^-1:v sigma:s").unwrap();
    match va.word_problem(&word) {
        Err(EngineError::Unsupported(msg)) => {
            assert!(msg.contains("affine"), "unexpected message: {msg}")
        }
        other => panic!("expected an unsupported error, got {other:?}"),
    }

    struct CountFree;
    impl VaOracle for CountFree {
        fn name(&self) -> &str {
            "sigma-exponent-sum"
        }
        fn word_problem(
            &self,
            graph: &CoxeterGraph,
            word: &vartin_core::VaWord,
        ) -> vartin_core::Result<Verdict> {
            // Deliberately crude stand-in for a real affine engine; good
            // enough for the words this test sends its way.
            let mut sum = 0i64;
            for letter in &word.0 {
                if let vartin_core::VaLetter::Sigma { inverse, .. } = letter {
                    sum += if *inverse { -1 } else { 1 };
                }
            }
            let image = pi_k_star(word);
            let nontrivial_projection = !vartin_core::GroupContext::new(graph.clone())
                .unwrap()
                .element_of(&image)
                .is_identity();
            if sum == 0 && !nontrivial_projection {
                Ok(Verdict::Trivial)
            } else {
                Ok(Verdict::Nontrivial(vartin_core::Certificate::Oracle {
                    name: "sigma-exponent-sum".into(),
                }))
            }
        }
    }

    // The triangle reached during recursion is the induced subgraph on
    // {s, t, u}; registering the oracle for it unblocks the query.
    let triangle = g.induced(&vartin_core::VertexSet::new(vec![0, 1, 2]));
    let va = VaContext::new(g.clone()).unwrap();
    va.register_oracle(&triangle, Arc::new(CountFree));
    let verdict = va.word_problem(&word).unwrap();
    assert!(!verdict.is_trivial());
}

#[test]
fn contexts_are_shareable_across_threads() {
    // Queries on one shared context from several threads return the same
    // verdicts as sequential runs; the caches behave as concurrent maps.
    let va = VaContext::new(fc_with_infinite_edge().graph().clone()).unwrap();
    let words = fuzz_relator_words(va.group(), 40, 99);
    let mut extra = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(100);
    for _ in 0..40 {
        extra.push(random_va_word(&mut rng, 3, 6));
    }
    let sequential: Vec<bool> = words
        .iter()
        .chain(&extra)
        .map(|w| match va.word_problem(w) {
            Ok(v) => v.is_trivial(),
            Err(_) => false,
        })
        .collect();
    let fresh = VaContext::new(fc_with_infinite_edge().graph().clone()).unwrap();
    let all_words: Vec<_> = words.iter().chain(&extra).cloned().collect();
    let results: Vec<bool> = std::thread::scope(|scope| {
        let handles: Vec<_> = all_words
            .chunks(20)
            .map(|chunk| {
                let fresh = fresh.clone();
                scope.spawn(move || {
                    chunk
                        .iter()
                        .map(|w| match fresh.word_problem(w) {
                            Ok(v) => v.is_trivial(),
                            Err(_) => false,
                        })
                        .collect::<Vec<bool>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().unwrap())
            .collect()
    });
    assert_eq!(sequential, results);
}
