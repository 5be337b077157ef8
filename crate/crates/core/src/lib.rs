//! Decision procedures for Coxeter groups, Artin groups, and virtual Artin
//! groups: word problems, strong parabolic membership, exact root-system
//! arithmetic, and the amalgamated-product recursion that ties them together.
//!
//! The engines share one exact number field per graph and one canonical
//! element representation (the matrix of the geometric representation), so
//! every verdict is backed by exact arithmetic and, where nontrivial, by a
//! machine-checkable certificate.

pub mod amalgam;
pub mod artin;
pub mod coxeter;
pub mod error;
pub mod field;
pub mod graph;
pub mod hatgraph;
pub mod oracles;
pub mod roots;
pub mod vartin;
pub mod verdict;
pub mod word;

pub use coxeter::{CoxElement, GraphType, GroupContext, MinimalCosetDecomposition};
pub use error::{EngineError, Result};
pub use field::{two_cos_pi_over, FieldElement, FieldSpec};
pub use graph::{CoxeterGraph, Label, VertexSet};
pub use roots::{Root, RootExpression, RootSign};
pub use verdict::{Certificate, Membership, Verdict};
pub use word::{
    alt_product, va_relators, ArtinLetter, ArtinWord, CoxWord, DeltaLetter, DeltaWord, VaLetter,
    VaWord,
};
