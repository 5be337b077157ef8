//! Independent brute-force ground truth: finite-group enumeration,
//! depth-bounded root BFS, exhaustive pair-orbit decisions, and relator
//! fuzzers. These live in the shipped library (not just in tests) so the CLI
//! can cross-check production answers at small scale with `--verify`.

use std::collections::HashMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coxeter::{CoxElement, GraphType, GroupContext};
use crate::error::{EngineError, Result};
use crate::graph::Label;
use crate::roots::{root_sign, Root, RootSign};
use crate::word::{va_relators, VaLetter, VaWord};

/// All elements of a finite Coxeter group, with a right-multiplication table.
/// Elements hash by their matrices; the interior mutability clippy would
/// flag is only the cached reduced word, which equality ignores.
#[allow(clippy::mutable_key_type)]
pub struct EnumeratedGroup {
    pub elements: Vec<CoxElement>,
    index: HashMap<CoxElement, usize>,
    /// `successors[e][s]` is the index of `elements[e] · s`.
    pub successors: Vec<Vec<usize>>,
}

impl EnumeratedGroup {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, el: &CoxElement) -> Option<usize> {
        self.index.get(el).copied()
    }
}

/// BFS closure over the generators with matrix equality. Requires a
/// spherical graph; the result is cached on the context.
#[allow(clippy::mutable_key_type)]
pub fn enumerate_w(ctx: &GroupContext) -> Result<Arc<EnumeratedGroup>> {
    ctx.enumeration_cache
        .get_or_init(|| {
            if ctx.classify() != GraphType::Spherical {
                return Err(EngineError::Precondition(
                    "enumeration requires a spherical graph".into(),
                ));
            }
            const CAP: usize = 200_000;
            let mut elements = vec![ctx.identity()];
            let mut index = HashMap::new();
            index.insert(ctx.identity(), 0usize);
            let mut successors: Vec<Vec<usize>> = Vec::new();
            let mut next = 0;
            while next < elements.len() {
                let el = elements[next].clone();
                let mut row = Vec::with_capacity(ctx.rank());
                for s in 0..ctx.rank() {
                    let prod = el.mul(&ctx.generator(s));
                    let id = match index.get(&prod) {
                        Some(&i) => i,
                        None => {
                            let i = elements.len();
                            if i >= CAP {
                                return Err(EngineError::CapExceeded(format!(
                                    "group enumeration exceeded {CAP} elements"
                                )));
                            }
                            index.insert(prod.clone(), i);
                            elements.push(prod);
                            i
                        }
                    };
                    row.push(id);
                }
                successors.push(row);
                next += 1;
            }
            Ok(Arc::new(EnumeratedGroup {
                elements,
                index,
                successors,
            }))
        })
        .clone()
}

/// All positive roots of depth at most `depth_cap`, with their true BFS
/// depths. Ground truth for the greedy depth computation.
#[allow(clippy::mutable_key_type)]
pub fn roots_bfs(ctx: &GroupContext, depth_cap: u32) -> Vec<(Root, u32)> {
    assert!(depth_cap >= 1);
    let mut seen: HashMap<Root, u32> = HashMap::new();
    let mut out = Vec::new();
    let mut frontier: Vec<Root> = (0..ctx.rank()).map(|s| ctx.simple_root(s)).collect();
    for r in &frontier {
        seen.insert(r.clone(), 1);
        out.push((r.clone(), 1));
    }
    let mut d = 1;
    while d < depth_cap && !frontier.is_empty() {
        let mut next = Vec::new();
        for r in &frontier {
            for s in 0..ctx.rank() {
                let image = ctx.apply_generator(s, r);
                if root_sign(&image).expect("orbit of roots") == RootSign::Negative {
                    continue;
                }
                if !seen.contains_key(&image) {
                    seen.insert(image.clone(), d + 1);
                    out.push((image.clone(), d + 1));
                    next.push(image);
                }
            }
        }
        frontier = next;
        d += 1;
    }
    out
}

/// Scan all (w, s, t) triples of a finite group for a simultaneous
/// realization w(α_s) = β, w(α_t) = γ with a finite label; the validation
/// oracle for the pair-label decision.
pub fn pair_orbit_bruteforce(ctx: &GroupContext, beta: &Root, gamma: &Root) -> Result<Label> {
    if beta == gamma {
        return Ok(Label::Finite(1));
    }
    let group = enumerate_w(ctx)?;
    for w in &group.elements {
        for s in 0..ctx.rank() {
            if &ctx.act_on_simple(w, s) != beta {
                continue;
            }
            for t in 0..ctx.rank() {
                if t == s {
                    continue;
                }
                let m = ctx.graph().label(s, t);
                if m.is_infinite() {
                    continue;
                }
                if &ctx.act_on_simple(w, t) == gamma {
                    return Ok(m);
                }
            }
        }
    }
    Ok(Label::Infinite)
}

/// Words that are trivial by construction: built from relator insertions,
/// cancelling-pair insertions, and conjugation. Deterministic per seed.
pub fn fuzz_relator_words(ctx: &GroupContext, n: usize, seed: u64) -> Vec<VaWord> {
    const MAX_LEN: usize = 48;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut relators = va_relators(ctx.graph());
    let inverses: Vec<VaWord> = relators.iter().map(VaWord::inverse).collect();
    relators.extend(inverses);
    let rank = ctx.rank();
    let random_letter = |rng: &mut ChaCha8Rng| -> VaLetter {
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
    };
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let mut word: Vec<VaLetter> = Vec::new();
        let ops = rng.gen_range(1..=5);
        for _ in 0..ops {
            match rng.gen_range(0..3) {
                0 => {
                    let relator = &relators[rng.gen_range(0..relators.len())];
                    if word.len() + relator.len() > MAX_LEN {
                        continue;
                    }
                    let at = rng.gen_range(0..=word.len());
                    word.splice(at..at, relator.0.iter().cloned());
                }
                1 => {
                    if word.len() + 2 > MAX_LEN {
                        continue;
                    }
                    let letter = random_letter(&mut rng);
                    let at = rng.gen_range(0..=word.len());
                    word.splice(at..at, [letter, letter.inverse()]);
                }
                _ => {
                    if word.len() + 2 > MAX_LEN {
                        continue;
                    }
                    let letter = random_letter(&mut rng);
                    word.insert(0, letter);
                    word.push(letter.inverse());
                }
            }
        }
        out.push(VaWord(word));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::tests::{a2, a3, b2, ctx};

    #[test]
    fn enumeration_sizes() {
        assert_eq!(enumerate_w(&a2()).unwrap().len(), 6);
        assert_eq!(enumerate_w(&a3()).unwrap().len(), 24);
        assert_eq!(enumerate_w(&b2()).unwrap().len(), 8);
        let a1 = ctx(&["s"], &[]);
        assert_eq!(enumerate_w(&a1).unwrap().len(), 2);
    }

    #[test]
    fn enumeration_requires_spherical() {
        let inf = ctx(&["s", "t"], &[("s", "t", Label::Infinite)]);
        assert!(matches!(
            enumerate_w(&inf),
            Err(EngineError::Precondition(_))
        ));
    }

    #[test]
    fn positive_root_counts() {
        assert_eq!(roots_bfs(&a2(), 16).len(), 3);
        assert_eq!(roots_bfs(&b2(), 16).len(), 4);
        assert_eq!(roots_bfs(&a3(), 16).len(), 6);
        let i25 = ctx(&["s", "t"], &[("s", "t", Label::Finite(5))]);
        assert_eq!(roots_bfs(&i25, 16).len(), 5);
    }

    #[test]
    fn bfs_depth_one_is_the_simple_roots() {
        let ctx = a3();
        let depth1: Vec<_> = roots_bfs(&ctx, 1);
        assert_eq!(depth1.len(), 3);
        for (i, (root, d)) in depth1.iter().enumerate() {
            assert_eq!(*d, 1);
            assert_eq!(root, &ctx.simple_root(i));
        }
    }

    #[test]
    fn pair_orbit_examples() {
        let ctx = a2();
        let alpha_s = ctx.simple_root(0);
        let alpha_t = ctx.simple_root(1);
        assert_eq!(
            pair_orbit_bruteforce(&ctx, &alpha_s, &alpha_t).unwrap(),
            Label::Finite(3)
        );
        assert_eq!(
            pair_orbit_bruteforce(&ctx, &alpha_s, &alpha_s.negated()).unwrap(),
            Label::Infinite
        );
        assert_eq!(
            pair_orbit_bruteforce(&ctx, &alpha_s, &alpha_s).unwrap(),
            Label::Finite(1)
        );
    }

    #[test]
    fn fuzzer_is_deterministic() {
        let ctx = a2();
        assert!(fuzz_relator_words(&ctx, 0, 0).is_empty());
        let a = fuzz_relator_words(&ctx, 25, 42);
        let b = fuzz_relator_words(&ctx, 25, 42);
        assert_eq!(a, b);
        let c = fuzz_relator_words(&ctx, 25, 43);
        assert_ne!(a, c);
    }
}
