//! Resolution refutations: proof objects, the checker, restriction and the
//! split of refutations of variable-disjoint conjunctions.

mod check;
mod restrict;
mod split;
pub mod text;

use thiserror::Error;

use crate::formula::Clause;

pub use check::{check_refutation, CheckMode, CheckReport, InvalidReason, Verdict};
pub use restrict::restrict_proof;
pub use split::{split_disjoint_refutation, Side};

/// How a proof line is obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Justification {
    /// A (weakening of) clause `l` of the refuted CNF.
    Axiom(usize),
    /// Resolution of lines `left ∋ x_pivot` and `right ∋ ¬x_pivot`.
    Resolve { left: usize, right: usize, pivot: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProofLine {
    pub clause: Clause,
    pub just: Justification,
}

impl ProofLine {
    pub fn axiom(clause: Clause, l: usize) -> Self {
        ProofLine { clause, just: Justification::Axiom(l) }
    }

    pub fn resolve(clause: Clause, left: usize, right: usize, pivot: u32) -> Self {
        ProofLine { clause, just: Justification::Resolve { left, right, pivot } }
    }
}

/// A line-justified Resolution refutation. Its length is the number of
/// lines, axiom lines included.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ResolutionProof {
    lines: Vec<ProofLine>,
}

impl ResolutionProof {
    pub fn new(lines: Vec<ProofLine>) -> Self {
        ResolutionProof { lines }
    }

    pub fn lines(&self) -> &[ProofLine] {
        &self.lines
    }

    pub fn line(&self, j: usize) -> &ProofLine {
        &self.lines[j]
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn push(&mut self, line: ProofLine) -> usize {
        self.lines.push(line);
        self.lines.len() - 1
    }

    pub fn into_lines(self) -> Vec<ProofLine> {
        self.lines
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ResolutionError {
    #[error("input proof is not a valid refutation: {0}")]
    InvalidInput(String),
    #[error("restriction trivializes: the partial assignment satisfies every clause")]
    RestrictionTrivializes,
    #[error("the two sides share variable {0}")]
    SharedVariable(usize),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("neither side could be refuted: {0}")]
    SplitFailed(String),
}
