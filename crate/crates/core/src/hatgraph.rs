//! The Coxeter graph on roots: pair labels, kernel generators, and the
//! conversion of kernel words to words in the delta generators.
//!
//! Two roots β, γ get the label m_{s,t} when some group element carries
//! (α_s, α_t) onto (β, γ) with m_{s,t} finite, and ∞ otherwise. The full
//! graph on the root system is never materialized; only the finite
//! restriction spanned by the roots appearing in one word is built.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Mutex;

use crate::coxeter::{GraphType, GroupContext};
use crate::error::{EngineError, Result};
use crate::graph::{CoxeterGraph, Label, VertexSet};
use crate::oracles::enumerate_w;
use crate::roots::{depth_signed, express_root, Root};
use crate::word::{DeltaLetter, DeltaWord, VaLetter, VaWord};

/// Tuning for the pair-label decision.
#[derive(Debug, Clone, Copy)]
pub struct HatOptions {
    /// Extra search depth beyond the combined root depths in the witness
    /// search on infinite groups.
    pub slack: u32,
    /// In strict mode a search exhausted only by the depth bound is an
    /// `Inconclusive` error instead of an ∞ verdict.
    pub strict: bool,
}

impl Default for HatOptions {
    fn default() -> Self {
        HatOptions {
            slack: 4,
            strict: false,
        }
    }
}

/// Per-graph cache of decided pair labels, keyed symmetrically. Root keys
/// hash by coordinates only; the interior mutability clippy sees is the
/// field-spec enclosure cache, which equality ignores.
#[derive(Default)]
pub struct HatCache {
    #[allow(clippy::mutable_key_type)]
    labels: Mutex<HashMap<(Root, Root), Label>>,
}

impl HatCache {
    fn key(beta: &Root, gamma: &Root) -> (Root, Root) {
        if beta <= gamma {
            (beta.clone(), gamma.clone())
        } else {
            (gamma.clone(), beta.clone())
        }
    }

    fn get(&self, beta: &Root, gamma: &Root) -> Option<Label> {
        self.labels
            .lock()
            .unwrap()
            .get(&Self::key(beta, gamma))
            .copied()
    }

    fn insert(&self, beta: &Root, gamma: &Root, label: Label) {
        self.labels
            .lock()
            .unwrap()
            .insert(Self::key(beta, gamma), label);
    }
}

/// The label attached to a pair of roots.
///
/// Decision stages: equal roots give 1 and opposite roots give ∞; next, a
/// witness would carry the inner product of a simple pair, so a form value
/// matching no finite label of the graph settles ∞ and otherwise pins the
/// unique candidate m. On a finite group the candidate is confirmed or
/// refuted by exhausting all (w, s, t); otherwise a breadth-first witness
/// search over simultaneous images of the pair runs up to the combined root
/// depths plus `slack`.
pub fn hat_label(
    ctx: &GroupContext,
    cache: &HatCache,
    opts: HatOptions,
    beta: &Root,
    gamma: &Root,
) -> Result<Label> {
    if beta == gamma {
        return Ok(Label::Finite(1));
    }
    if *beta == gamma.negated() {
        // Opposite roots define the same reflection, so no witness can send
        // two distinct generators onto them.
        return Ok(Label::Infinite);
    }
    if let Some(label) = cache.get(beta, gamma) {
        return Ok(label);
    }
    let label = hat_label_uncached(ctx, opts, beta, gamma)?;
    cache.insert(beta, gamma, label);
    Ok(label)
}

/// Form filter: the action preserves the form, and distinct labels give
/// distinct values −2cos(π/m), so at most one m can be realized by a
/// witness.
fn form_candidate(ctx: &GroupContext, beta: &Root, gamma: &Root) -> Result<Option<u32>> {
    let value = ctx.inner(beta, gamma);
    for m in ctx.graph().finite_labels() {
        let cos = crate::field::two_cos_pi_over(ctx.field(), Label::Finite(m))?;
        if value == -&cos {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

#[allow(clippy::mutable_key_type)] // Root keys hash by coordinates only
fn hat_label_uncached(
    ctx: &GroupContext,
    opts: HatOptions,
    beta: &Root,
    gamma: &Root,
) -> Result<Label> {
    let Some(m) = form_candidate(ctx, beta, gamma)? else {
        return Ok(Label::Infinite);
    };

    if ctx.classify() == GraphType::Spherical {
        let group = enumerate_w(ctx)?;
        for w in &group.elements {
            for s in 0..ctx.rank() {
                if &ctx.act_on_simple(w, s) != beta {
                    continue;
                }
                for t in 0..ctx.rank() {
                    if t != s
                        && ctx.graph().label(s, t) == Label::Finite(m)
                        && &ctx.act_on_simple(w, t) == gamma
                    {
                        return Ok(Label::Finite(m));
                    }
                }
            }
        }
        return Ok(Label::Infinite);
    }

    bounded_pair_search(ctx, opts, beta, gamma, m)
}

/// The bounded witness search on its own, skipping the exhaustive branch;
/// exposed so the search bound can be validated against the exhaustive
/// decision on finite groups.
pub fn hat_label_by_search(
    ctx: &GroupContext,
    opts: HatOptions,
    beta: &Root,
    gamma: &Root,
) -> Result<Label> {
    if beta == gamma {
        return Ok(Label::Finite(1));
    }
    if *beta == gamma.negated() {
        return Ok(Label::Infinite);
    }
    let Some(m) = form_candidate(ctx, beta, gamma)? else {
        return Ok(Label::Infinite);
    };
    bounded_pair_search(ctx, opts, beta, gamma, m)
}

/// Walk the pair simultaneously with simple reflections, looking for a
/// simple pair carrying the candidate label.
#[allow(clippy::mutable_key_type)] // Root keys hash by coordinates only
fn bounded_pair_search(
    ctx: &GroupContext,
    opts: HatOptions,
    beta: &Root,
    gamma: &Root,
    m: u32,
) -> Result<Label> {
    let bound = depth_signed(ctx, beta)? + depth_signed(ctx, gamma)? + opts.slack;
    let is_target = |b: &Root, g: &Root| -> bool {
        match (b.simple_index(), g.simple_index()) {
            (Some(s), Some(t)) => ctx.graph().label(s, t) == Label::Finite(m),
            _ => false,
        }
    };
    let mut visited: HashSet<(Root, Root)> = HashSet::new();
    let mut queue: VecDeque<(Root, Root, u32)> = VecDeque::new();
    visited.insert((beta.clone(), gamma.clone()));
    queue.push_back((beta.clone(), gamma.clone(), 0));
    let mut truncated = false;
    while let Some((b, g, d)) = queue.pop_front() {
        if is_target(&b, &g) {
            return Ok(Label::Finite(m));
        }
        if d == bound {
            truncated = true;
            continue;
        }
        for u in 0..ctx.rank() {
            let next = (ctx.apply_generator(u, &b), ctx.apply_generator(u, &g));
            if !visited.contains(&next) {
                visited.insert(next.clone());
                queue.push_back((next.0, next.1, d + 1));
            }
        }
    }
    if truncated && opts.strict {
        return Err(EngineError::Inconclusive(format!(
            "pair-label search exhausted the depth bound {bound} without a witness"
        )));
    }
    Ok(Label::Infinite)
}

/// The kernel generator attached to a root, spelled as a word: with
/// β = η(α_s), ξ(β) = ι(η) σ_s ι(η)⁻¹. With `within` set, η is taken over
/// that subset only, so the word stays inside the parabolic alphabet.
pub fn xi(ctx: &GroupContext, root: &Root, within: Option<&VertexSet>) -> Result<VaWord> {
    let expr = express_root(ctx, root, within)?;
    let mut letters: Vec<VaLetter> = expr
        .eta
        .0
        .iter()
        .map(|&v| VaLetter::Tau { vertex: v })
        .collect();
    letters.push(VaLetter::Sigma {
        vertex: expr.vertex,
        inverse: false,
    });
    letters.extend(
        expr.eta
            .0
            .iter()
            .rev()
            .map(|&v| VaLetter::Tau { vertex: v }),
    );
    Ok(VaWord(letters))
}

/// A finite list of distinct roots together with the label matrix of the
/// graph they span.
#[derive(Debug, Clone)]
pub struct RootList {
    pub roots: Vec<Root>,
    pub labels: Vec<Vec<Label>>,
}

impl RootList {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// The spanned Coxeter graph, with vertices named d0, d1, ... in list
    /// order (matching the delta-word token grammar).
    pub fn to_graph(&self) -> CoxeterGraph {
        let names: Vec<String> = (0..self.roots.len()).map(|i| format!("d{i}")).collect();
        let mut edges = Vec::new();
        for i in 0..self.roots.len() {
            for j in i + 1..self.roots.len() {
                if self.labels[i][j] != Label::Finite(2) {
                    edges.push((names[i].clone(), names[j].clone(), self.labels[i][j]));
                }
            }
        }
        CoxeterGraph::from_parts(&names, &edges).expect("root list spans a valid graph")
    }
}

/// Convert a kernel word to a word in the delta generators: sweep left to
/// right maintaining the Coxeter image u of the tau-prefix; a sigma letter
/// at prefix u contributes the generator of the root u(α_s). The delta word
/// is freely reduced, the surviving roots are listed in order of first
/// occurrence, and their label matrix is computed pairwise. The word must
/// actually lie in the kernel.
#[allow(clippy::mutable_key_type)] // Root keys hash by coordinates only
pub fn kva_to_delta(
    ctx: &GroupContext,
    cache: &HatCache,
    opts: HatOptions,
    word: &VaWord,
) -> Result<(RootList, DeltaWord)> {
    let mut u = ctx.identity();
    let mut emitted: Vec<(Root, bool)> = Vec::new();
    for letter in &word.0 {
        match *letter {
            VaLetter::Sigma { vertex, inverse } => {
                let root = ctx.act_on_simple(&u, vertex);
                // Free reduction keeps the spanned root list as small as
                // possible, which keeps the spanned graph decidable more
                // often.
                match emitted.last() {
                    Some((top, top_inverse)) if *top == root && *top_inverse != inverse => {
                        emitted.pop();
                    }
                    _ => emitted.push((root, inverse)),
                }
            }
            VaLetter::Tau { vertex } => {
                u = u.mul(&ctx.generator(vertex));
            }
        }
    }
    if !u.is_identity() {
        return Err(EngineError::Precondition(
            "word is not in the kernel: its Coxeter image is nontrivial".into(),
        ));
    }
    let mut roots: Vec<Root> = Vec::new();
    let mut index: HashMap<Root, usize> = HashMap::new();
    let mut letters = Vec::with_capacity(emitted.len());
    for (root, inverse) in emitted {
        let id = match index.get(&root) {
            Some(&i) => i,
            None => {
                let i = roots.len();
                index.insert(root.clone(), i);
                roots.push(root);
                i
            }
        };
        letters.push(DeltaLetter { root: id, inverse });
    }
    let n = roots.len();
    let mut labels = vec![vec![Label::Finite(1); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let label = hat_label(ctx, cache, opts, &roots[i], &roots[j])?;
            labels[i][j] = label;
            labels[j][i] = label;
        }
    }
    Ok((RootList { roots, labels }, DeltaWord(letters)))
}
