//! Root-system computations over the exact field: sign classification,
//! depth, root expressions, reflections, and parabolic membership.
//!
//! The root system is the orbit of the simple roots under the canonical
//! representation. It is never materialized (it may be infinite); depth is
//! computed greedily, descending with any generator that has positive inner
//! product with the root.

use num_traits::Zero;

use crate::coxeter::{CoxElement, GroupContext};
use crate::error::{EngineError, Result};
use crate::field::FieldElement;
use crate::graph::VertexSet;
use crate::word::CoxWord;

/// A vector in the root basis. Instances produced by the engines are genuine
/// roots (orbit elements of simple roots); the sign classifier rejects
/// anything else.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    coords: Vec<FieldElement>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootSign {
    Positive,
    Negative,
}

/// A pair (η, s) with η(α_s) equal to a given root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootExpression {
    pub eta: CoxWord,
    pub vertex: usize,
}

impl Root {
    pub fn new(coords: Vec<FieldElement>) -> Self {
        Root { coords }
    }

    pub fn coords(&self) -> &[FieldElement] {
        &self.coords
    }

    pub fn negated(&self) -> Root {
        Root {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    /// If this is a simple root α_s, return s.
    pub fn simple_index(&self) -> Option<usize> {
        let mut found = None;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if found.is_some()
                || c.as_rational()
                    .map(|r| r.is_integer() && *r.numer() == 1.into())
                    != Some(true)
            {
                return None;
            }
            found = Some(i);
        }
        found
    }

    /// Human-readable coordinates, e.g. `1*a + 1*b`.
    pub fn display(&self, ctx: &GroupContext) -> String {
        let mut parts = Vec::new();
        for (i, c) in self.coords.iter().enumerate() {
            if !c.is_zero() {
                parts.push(format!(
                    "{}*{}",
                    render_field(c),
                    ctx.graph().vertex_name(i)
                ));
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

fn render_field(c: &FieldElement) -> String {
    if let Some(r) = c.as_rational() {
        return r.to_string();
    }
    let one: num_rational::BigRational = num_traits::One::one();
    let terms: Vec<String> = c
        .coords()
        .iter()
        .enumerate()
        .filter(|(_, q)| !q.is_zero())
        .map(|(k, q)| {
            let power = match k {
                0 => return q.to_string(),
                1 => "th".to_string(),
                _ => format!("th^{k}"),
            };
            if *q == one {
                power
            } else if *q == -&one {
                format!("-{power}")
            } else {
                format!("{q}{power}")
            }
        })
        .collect();
    format!("({})", terms.join("+"))
}

/// Positive iff every coordinate is ≥ 0, negative iff every coordinate is
/// ≤ 0. Mixed signs mean the vector is not a root and signal an upstream bug.
pub fn root_sign(root: &Root) -> Result<RootSign> {
    let mut sign = 0i8;
    for c in root.coords() {
        let s = c.sign();
        if s == 0 {
            continue;
        }
        if sign == 0 {
            sign = s;
        } else if sign != s {
            return Err(EngineError::Precondition(
                "mixed-sign vector is not a root".into(),
            ));
        }
    }
    match sign {
        1 => Ok(RootSign::Positive),
        -1 => Ok(RootSign::Negative),
        _ => Err(EngineError::Precondition(
            "zero vector is not a root".into(),
        )),
    }
}

/// Depth of a positive root: 1 for simple roots, otherwise one more than the
/// depth after applying a generator with ⟨β, α_s⟩ > 0 (such a generator
/// always exists, and the step lowers depth by exactly one).
pub fn depth(ctx: &GroupContext, root: &Root) -> Result<u32> {
    if root_sign(root)? != RootSign::Positive {
        return Err(EngineError::Precondition(
            "depth is defined for positive roots".into(),
        ));
    }
    let expr = express_root(ctx, root, None)?;
    Ok(expr.eta.len() as u32 + 1)
}

/// Depth extended to negative roots: dpt(−β) + 1, used for search bounds.
pub fn depth_signed(ctx: &GroupContext, root: &Root) -> Result<u32> {
    match root_sign(root)? {
        RootSign::Positive => depth(ctx, root),
        RootSign::Negative => Ok(depth(ctx, &root.negated())? + 1),
    }
}

/// Find a word η and a vertex s with η(α_s) equal to the given root.
///
/// For a positive root the word is built by greedy depth descent, taking the
/// least vertex with positive inner product at each step. For a negative
/// root, express the opposite root as η′(α_s) and append s. With `within`
/// set, only vertices of that subset are used, so the output is a word over
/// the subset; the root must then lie in the corresponding parabolic root
/// system.
pub fn express_root(
    ctx: &GroupContext,
    root: &Root,
    within: Option<&VertexSet>,
) -> Result<RootExpression> {
    if let Some(x) = within {
        if !root_in_parabolic(root, x) {
            return Err(EngineError::Precondition(
                "root has support outside the requested subset".into(),
            ));
        }
    }
    match root_sign(root)? {
        RootSign::Positive => express_positive(ctx, root, within),
        RootSign::Negative => {
            let mut expr = express_positive(ctx, &root.negated(), within)?;
            expr.eta.0.push(expr.vertex);
            Ok(expr)
        }
    }
}

fn express_positive(
    ctx: &GroupContext,
    root: &Root,
    within: Option<&VertexSet>,
) -> Result<RootExpression> {
    let candidates: Vec<usize> = match within {
        Some(x) => x.members().to_vec(),
        None => (0..ctx.rank()).collect(),
    };
    let mut letters = Vec::new();
    let mut current = root.clone();
    loop {
        if let Some(s) = current.simple_index() {
            return Ok(RootExpression {
                eta: CoxWord(letters),
                vertex: s,
            });
        }
        let alpha = |t: usize| ctx.simple_root(t);
        let descent = candidates
            .iter()
            .copied()
            .find(|&t| ctx.inner(&current, &alpha(t)).sign() > 0);
        let t = descent.ok_or_else(|| {
            EngineError::Precondition("vector admits no depth descent; not a positive root".into())
        })?;
        letters.push(t);
        current = ctx.apply_generator(t, &current);
    }
}

/// Membership in the parabolic root subsystem: every coordinate outside X
/// vanishes.
pub fn root_in_parabolic(root: &Root, x: &VertexSet) -> bool {
    root.coords()
        .iter()
        .enumerate()
        .all(|(i, c)| x.contains(i) || c.is_zero())
}

/// The reflection r_β = η s η⁻¹ attached to a root.
pub fn reflection_of(ctx: &GroupContext, root: &Root) -> Result<CoxElement> {
    let expr = express_root(ctx, root, None)?;
    let w = ctx.element_of(&expr.eta);
    Ok(w.mul(&ctx.generator(expr.vertex)).mul(&w.inverse()))
}
