//! Word problem in an amalgamated product G₁ *_H G₂, given word-problem and
//! strong-membership oracles for the factors.
//!
//! The input is a sequence of blocks, each a word in one factor. The engine
//! merges adjacent same-factor blocks, answers directly for zero or one
//! block, and otherwise either finds a block lying in H and rewrites it into
//! the opposite factor (strictly reducing the block count), or certifies the
//! word nontrivial: an alternating product of elements outside H is never
//! the identity. No transversal normal forms are computed.

use crate::error::Result;
use crate::verdict::{Certificate, Verdict};

/// One factor of an amalgam, with the subgroup-H interface it shares with
/// the other factor.
pub trait AmalgamFactor {
    type Letter: Clone;
    /// Letters of the shared subgroup's generating set.
    type HLetter: Clone;

    fn word_problem(&self, word: &[Self::Letter]) -> Result<Verdict>;

    /// Strong membership of the word's element in H: `Some` carries a word
    /// over the H generators representing the same element.
    fn h_membership(&self, word: &[Self::Letter]) -> Result<Option<Vec<Self::HLetter>>>;

    /// Spell an H-word in this factor's own letters.
    fn embed_h(&self, word: &[Self::HLetter]) -> Vec<Self::Letter>;
}

/// A block of the input word, tagged with its factor.
#[derive(Debug, Clone)]
pub enum Block<L1, L2> {
    One(Vec<L1>),
    Two(Vec<L2>),
}

fn normalize<L1: Clone, L2: Clone>(blocks: Vec<Block<L1, L2>>) -> Vec<Block<L1, L2>> {
    let mut out: Vec<Block<L1, L2>> = Vec::with_capacity(blocks.len());
    for block in blocks {
        let empty = match &block {
            Block::One(w) => w.is_empty(),
            Block::Two(w) => w.is_empty(),
        };
        if empty {
            continue;
        }
        match (out.last_mut(), block) {
            (Some(Block::One(tail)), Block::One(w)) => tail.extend(w),
            (Some(Block::Two(tail)), Block::Two(w)) => tail.extend(w),
            (_, block) => out.push(block),
        }
    }
    out
}

/// Decide triviality of the element given by `blocks` in G₁ *_H G₂.
pub fn amalgam_wp<F1, F2>(
    factor1: &F1,
    factor2: &F2,
    blocks: Vec<Block<F1::Letter, F2::Letter>>,
    trace: &mut Vec<String>,
) -> Result<Verdict>
where
    F1: AmalgamFactor,
    F2: AmalgamFactor<HLetter = F1::HLetter>,
{
    let mut blocks = blocks;
    let mut prev_len: Option<usize> = None;
    loop {
        blocks = normalize(blocks);
        let n = blocks.len();
        if let Some(prev) = prev_len {
            // Each rewrite must enable a merge; this is the termination
            // measure of the induction.
            assert!(
                n < prev,
                "amalgam block count failed to decrease: {prev} -> {n}"
            );
        }
        match n {
            0 => {
                trace.push("amalgam: empty block list".into());
                return Ok(Verdict::Trivial);
            }
            1 => {
                trace.push("amalgam: single block, deferring to factor".into());
                return match &blocks[0] {
                    Block::One(w) => factor1.word_problem(w),
                    Block::Two(w) => factor2.word_problem(w),
                };
            }
            _ => {}
        }
        // Blocks now alternate strictly. Rewrite the leftmost H-block into
        // the opposite factor, if any.
        let mut rewritten = None;
        for (i, block) in blocks.iter().enumerate() {
            match block {
                Block::One(w) => {
                    if let Some(h) = factor1.h_membership(w)? {
                        trace.push(format!("amalgam: block {i} lies in H, moving to factor 2"));
                        rewritten = Some((i, Block::Two(factor2.embed_h(&h))));
                        break;
                    }
                }
                Block::Two(w) => {
                    if let Some(h) = factor2.h_membership(w)? {
                        trace.push(format!("amalgam: block {i} lies in H, moving to factor 1"));
                        rewritten = Some((i, Block::One(factor1.embed_h(&h))));
                        break;
                    }
                }
            }
        }
        if let Some((i, replacement)) = rewritten {
            blocks[i] = replacement;
        } else {
            trace.push(format!(
                "amalgam: {n} alternating blocks all outside H, word is nontrivial"
            ));
            return Ok(Verdict::Nontrivial(Certificate::AmalgamAlternation {
                blocks: n,
            }));
        }
        prev_len = Some(n);
    }
}
