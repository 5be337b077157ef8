//! Words in the four alphabets used across the engines.
//!
//! Token grammar (whitespace separated):
//! - Coxeter words: `s`
//! - Artin words: `s`, `s^-1`
//! - virtual-Artin words: `sigma:s`, `sigma^-1:s`, `tau:s`
//! - delta words: `d0`, `d0^-1`, indexing an attached root list
//!
//! The tau generators are involutions, so they carry no formal inverse token.

use std::fmt::Write as _;

use crate::error::{EngineError, Result};
use crate::graph::{CoxeterGraph, Label, VertexSet};

/// A word over the Coxeter generating set S.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct CoxWord(pub Vec<usize>);

/// One Artin letter: a generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ArtinLetter {
    pub vertex: usize,
    pub inverse: bool,
}

/// A word over S ⊔ S⁻¹.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ArtinWord(pub Vec<ArtinLetter>);

/// One virtual-Artin letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VaLetter {
    Sigma { vertex: usize, inverse: bool },
    Tau { vertex: usize },
}

impl VaLetter {
    pub fn vertex(&self) -> usize {
        match *self {
            VaLetter::Sigma { vertex, .. } | VaLetter::Tau { vertex } => vertex,
        }
    }

    pub fn inverse(&self) -> VaLetter {
        match *self {
            VaLetter::Sigma { vertex, inverse } => VaLetter::Sigma {
                vertex,
                inverse: !inverse,
            },
            tau @ VaLetter::Tau { .. } => tau,
        }
    }
}

/// A word over the virtual-Artin alphabet 𝒮 ⊔ 𝒮⁻¹ ⊔ 𝒯.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct VaWord(pub Vec<VaLetter>);

/// One delta letter: an index into a root list, possibly inverted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DeltaLetter {
    pub root: usize,
    pub inverse: bool,
}

/// A word over the kernel generators attached to a finite root list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct DeltaWord(pub Vec<DeltaLetter>);

impl CoxWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn display(&self, graph: &CoxeterGraph) -> String {
        self.0
            .iter()
            .map(|&s| graph.vertex_name(s))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn parse(graph: &CoxeterGraph, text: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            let vertex = graph
                .vertex_index(token)
                .ok_or_else(|| EngineError::Parse(format!("unknown generator {token:?}")))?;
            letters.push(vertex);
        }
        Ok(CoxWord(letters))
    }

    /// Letters used, as a vertex set.
    pub fn letter_set(&self) -> VertexSet {
        VertexSet::new(self.0.clone())
    }
}

impl ArtinWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> ArtinWord {
        ArtinWord(
            self.0
                .iter()
                .rev()
                .map(|l| ArtinLetter {
                    vertex: l.vertex,
                    inverse: !l.inverse,
                })
                .collect(),
        )
    }

    /// Iterated removal of adjacent cancelling pairs.
    pub fn free_reduced(&self) -> ArtinWord {
        let mut stack: Vec<ArtinLetter> = Vec::with_capacity(self.0.len());
        for &letter in &self.0 {
            match stack.last() {
                Some(top) if top.vertex == letter.vertex && top.inverse != letter.inverse => {
                    stack.pop();
                }
                _ => stack.push(letter),
            }
        }
        ArtinWord(stack)
    }

    /// Letters used, as a vertex set.
    pub fn letter_set(&self) -> VertexSet {
        VertexSet::new(self.0.iter().map(|l| l.vertex).collect())
    }

    /// Free reduction followed by stripping cancelling end pairs. The result
    /// is a conjugate of the input, so it is only a valid replacement where
    /// conjugation-invariant questions (like triviality) are asked.
    pub fn cyclically_reduced(&self) -> ArtinWord {
        let mut letters = self.free_reduced().0;
        while letters.len() >= 2 {
            let first = letters[0];
            let last = *letters.last().unwrap();
            if first.vertex == last.vertex && first.inverse != last.inverse {
                letters.pop();
                letters.remove(0);
            } else {
                break;
            }
        }
        ArtinWord(letters)
    }

    pub fn concat(&self, other: &ArtinWord) -> ArtinWord {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        ArtinWord(letters)
    }

    pub fn display(&self, graph: &CoxeterGraph) -> String {
        let mut out = String::new();
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(graph.vertex_name(l.vertex));
            if l.inverse {
                out.push_str("^-1");
            }
        }
        out
    }

    pub fn parse(graph: &CoxeterGraph, text: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            let (name, inverse) = match token.strip_suffix("^-1") {
                Some(base) => (base, true),
                None => (token, false),
            };
            let vertex = graph
                .vertex_index(name)
                .ok_or_else(|| EngineError::Parse(format!("unknown generator {name:?}")))?;
            letters.push(ArtinLetter { vertex, inverse });
        }
        Ok(ArtinWord(letters))
    }

    /// Forget exponents, giving the Coxeter image word (generators are
    /// involutions in W).
    pub fn cox_image(&self) -> CoxWord {
        CoxWord(self.0.iter().map(|l| l.vertex).collect())
    }
}

impl VaWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> VaWord {
        VaWord(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// Iterated removal of adjacent cancelling pairs: σ_v σ_v⁻¹, σ_v⁻¹ σ_v,
    /// and τ_v τ_v (the taus are involutions).
    pub fn free_reduced(&self) -> VaWord {
        let mut stack: Vec<VaLetter> = Vec::with_capacity(self.0.len());
        for &letter in &self.0 {
            let cancels = match (stack.last(), &letter) {
                (
                    Some(VaLetter::Sigma {
                        vertex: a,
                        inverse: ia,
                    }),
                    VaLetter::Sigma {
                        vertex: b,
                        inverse: ib,
                    },
                ) => a == b && ia != ib,
                (Some(VaLetter::Tau { vertex: a }), VaLetter::Tau { vertex: b }) => a == b,
                _ => false,
            };
            if cancels {
                stack.pop();
            } else {
                stack.push(letter);
            }
        }
        VaWord(stack)
    }

    /// Letters used, as a vertex set.
    pub fn letter_set(&self) -> VertexSet {
        VertexSet::new(self.0.iter().map(|l| l.vertex()).collect())
    }

    /// Free reduction followed by stripping cancelling end pairs. The result
    /// is a conjugate of the input; use only for conjugation-invariant
    /// questions such as triviality.
    pub fn cyclically_reduced(&self) -> VaWord {
        let mut letters = self.free_reduced().0;
        while letters.len() >= 2 {
            let cancels = match (&letters[0], letters.last().unwrap()) {
                (
                    VaLetter::Sigma {
                        vertex: a,
                        inverse: ia,
                    },
                    VaLetter::Sigma {
                        vertex: b,
                        inverse: ib,
                    },
                ) => a == b && ia != ib,
                (VaLetter::Tau { vertex: a }, VaLetter::Tau { vertex: b }) => a == b,
                _ => false,
            };
            if cancels {
                letters.pop();
                letters.remove(0);
            } else {
                break;
            }
        }
        VaWord(letters)
    }

    pub fn concat(&self, other: &VaWord) -> VaWord {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        VaWord(letters)
    }

    pub fn display(&self, graph: &CoxeterGraph) -> String {
        let mut out = String::new();
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            match *l {
                VaLetter::Sigma { vertex, inverse } => {
                    let _ = write!(
                        out,
                        "sigma{}:{}",
                        if inverse { "^-1" } else { "" },
                        graph.vertex_name(vertex)
                    );
                }
                VaLetter::Tau { vertex } => {
                    let _ = write!(out, "tau:{}", graph.vertex_name(vertex));
                }
            }
        }
        out
    }

    pub fn parse(graph: &CoxeterGraph, text: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            let (kind, name) = token
                .split_once(':')
                .ok_or_else(|| EngineError::Parse(format!("bad letter {token:?}")))?;
            let vertex = graph
                .vertex_index(name)
                .ok_or_else(|| EngineError::Parse(format!("unknown generator {name:?}")))?;
            let letter = match kind {
                "sigma" => VaLetter::Sigma {
                    vertex,
                    inverse: false,
                },
                "sigma^-1" => VaLetter::Sigma {
                    vertex,
                    inverse: true,
                },
                "tau" => VaLetter::Tau { vertex },
                other => {
                    return Err(EngineError::Parse(format!("bad letter kind {other:?}")));
                }
            };
            letters.push(letter);
        }
        Ok(VaWord(letters))
    }
}

impl DeltaWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn display(&self) -> String {
        let mut out = String::new();
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            let _ = write!(out, "d{}{}", l.root, if l.inverse { "^-1" } else { "" });
        }
        out
    }

    pub fn parse(text: &str, roots: usize) -> Result<Self> {
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            let (base, inverse) = match token.strip_suffix("^-1") {
                Some(b) => (b, true),
                None => (token, false),
            };
            let idx: usize = base
                .strip_prefix('d')
                .and_then(|n| n.parse().ok())
                .ok_or_else(|| EngineError::Parse(format!("bad delta letter {token:?}")))?;
            if idx >= roots {
                return Err(EngineError::Parse(format!(
                    "delta index {idx} out of range (root list has {roots})"
                )));
            }
            letters.push(DeltaLetter { root: idx, inverse });
        }
        Ok(DeltaWord(letters))
    }
}

/// The alternating product a b a ... of length `m`.
pub fn alt_product<T: Clone>(a: T, b: T, m: u32) -> Vec<T> {
    assert!(m >= 1, "alternating product needs positive length");
    (0..m)
        .map(|i| if i % 2 == 0 { a.clone() } else { b.clone() })
        .collect()
}

fn sigma(vertex: usize) -> VaLetter {
    VaLetter::Sigma {
        vertex,
        inverse: false,
    }
}

fn tau(vertex: usize) -> VaLetter {
    VaLetter::Tau { vertex }
}

/// Formal inverse of a letter sequence.
fn inverted(letters: &[VaLetter]) -> Vec<VaLetter> {
    letters.iter().rev().map(|l| l.inverse()).collect()
}

/// The defining relators of the virtual Artin group of `graph`, each written
/// as a word equal to the identity (left side times inverted right side):
///
/// - braid relations among the sigma generators,
/// - tau involutions and braid relations among the tau generators,
/// - the mixed relation σ_s Π(τ_t, τ_s, m−1) = Π(τ_t, τ_s, m−1) σ_r with
///   r = s for even m and r = t for odd m.
pub fn va_relators(graph: &CoxeterGraph) -> Vec<VaWord> {
    let mut out = Vec::new();
    for s in 0..graph.rank() {
        out.push(VaWord(vec![tau(s), tau(s)]));
    }
    for s in 0..graph.rank() {
        for t in s + 1..graph.rank() {
            let m = match graph.label(s, t) {
                Label::Finite(m) => m,
                Label::Infinite => continue,
            };
            // Braid relation on sigmas.
            let lhs = alt_product(sigma(s), sigma(t), m);
            let rhs = alt_product(sigma(t), sigma(s), m);
            let mut word = lhs;
            word.extend(inverted(&rhs));
            out.push(VaWord(word));
            // Braid relation on taus.
            let lhs = alt_product(tau(s), tau(t), m);
            let rhs = alt_product(tau(t), tau(s), m);
            let mut word = lhs;
            word.extend(inverted(&rhs));
            out.push(VaWord(word));
            // Mixed relation, both orientations of the pair.
            for (a, b) in [(s, t), (t, s)] {
                let pi = alt_product(tau(b), tau(a), m - 1);
                let r = if m % 2 == 0 { a } else { b };
                let mut word = vec![sigma(a)];
                word.extend(pi.iter().cloned());
                let mut rhs = pi;
                rhs.push(sigma(r));
                word.extend(inverted(&rhs));
                out.push(VaWord(word));
            }
        }
    }
    out
}
