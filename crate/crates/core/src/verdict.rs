use serde::Serialize;

/// Outcome of a word-problem query.
///
/// A nontrivial verdict always carries a machine-checkable certificate so
/// that external scripts can re-verify the answer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Trivial,
    Nontrivial(Certificate),
}

impl Verdict {
    pub fn is_trivial(&self) -> bool {
        matches!(self, Verdict::Trivial)
    }
}

/// Why a word is not the identity. Words inside certificates are rendered as
/// token strings in the same grammar the parsers accept.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// The Coxeter-group image of the word is a nontrivial element; the
    /// reduced word is a witness.
    CoxeterImage { reduced_word: String },
    /// A non-identity Garside normal form in a spherical-type Artin group.
    GarsideNormalForm {
        delta_power: i64,
        factors: Vec<String>,
    },
    /// The word is an alternating product of factor elements outside the
    /// amalgamated subgroup, hence nontrivial in the amalgam.
    AmalgamAlternation { blocks: usize },
    /// Verdict delegated to a registered external oracle.
    Oracle { name: String },
}

/// Strong-membership outcome for a standard parabolic subgroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership<W> {
    /// The element lies in the subgroup; `rewrite` is a word over the
    /// subgroup's own generators representing the same element.
    In { rewrite: W },
    /// Not a member; `stage` names the pipeline stage that refuted it.
    Out { stage: String },
}

impl<W> Membership<W> {
    pub fn is_in(&self) -> bool {
        matches!(self, Membership::In { .. })
    }

    pub fn rewrite(&self) -> Option<&W> {
        match self {
            Membership::In { rewrite } => Some(rewrite),
            Membership::Out { .. } => None,
        }
    }
}
