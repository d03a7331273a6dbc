use std::fmt;

use serde::Serialize;

use super::{text, Justification, ResolutionProof};
use crate::formula::{Cnf, Lit};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckMode {
    /// Derived clauses must equal the axiom or the resolvent.
    Strict,
    /// Derived clauses may be supersets of the axiom or the resolvent.
    Weakening,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InvalidReason {
    EmptyProof,
    AxiomOutOfRange,
    ForwardReference,
    PivotOutOfRange,
    PivotMissing,
    LiteralOutOfRange,
    MissingLiteral,
    NotEqual,
    NonEmptyFinalClause,
}

impl fmt::Display for InvalidReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InvalidReason::EmptyProof => "empty proof",
            InvalidReason::AxiomOutOfRange => "axiom index out of range",
            InvalidReason::ForwardReference => "forward reference",
            InvalidReason::PivotOutOfRange => "pivot out of range",
            InvalidReason::PivotMissing => "pivot missing",
            InvalidReason::LiteralOutOfRange => "literal out of range",
            InvalidReason::MissingLiteral => "missing literal",
            InvalidReason::NotEqual => "clause differs from derived clause",
            InvalidReason::NonEmptyFinalClause => "non-empty final clause",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Valid,
    Invalid { step: usize, reason: InvalidReason },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CheckReport {
    pub verdict: Verdict,
    pub lines: usize,
    /// Byte length of the proof in the textual proof format.
    pub bit_size: usize,
}

impl CheckReport {
    pub fn is_valid(&self) -> bool {
        self.verdict == Verdict::Valid
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.verdict {
            Verdict::Valid => write!(f, "valid, {} lines, {} bytes", self.lines, self.bit_size),
            Verdict::Invalid { step, reason } => {
                write!(f, "invalid at step {step}: {reason} ({} lines, {} bytes)", self.lines, self.bit_size)
            }
        }
    }
}

pub fn check_refutation(f: &Cnf, p: &ResolutionProof, mode: CheckMode) -> CheckReport {
    CheckReport { verdict: verdict(f, p, mode), lines: p.len(), bit_size: text::emit(p, f).len() }
}

fn verdict(f: &Cnf, p: &ResolutionProof, mode: CheckMode) -> Verdict {
    let n = f.num_vars();
    let invalid = |step, reason| Verdict::Invalid { step, reason };
    if p.is_empty() {
        return invalid(0, InvalidReason::EmptyProof);
    }
    for (step, line) in p.lines().iter().enumerate() {
        if line.clause.max_var().is_some_and(|v| v as usize >= n) {
            return invalid(step, InvalidReason::LiteralOutOfRange);
        }
        let derived = match line.just {
            Justification::Axiom(l) => {
                if l >= f.num_clauses() {
                    return invalid(step, InvalidReason::AxiomOutOfRange);
                }
                f.clause(l).clone()
            }
            Justification::Resolve { left, right, pivot } => {
                if left >= step || right >= step {
                    return invalid(step, InvalidReason::ForwardReference);
                }
                if pivot as usize >= n {
                    return invalid(step, InvalidReason::PivotOutOfRange);
                }
                let (pos, neg) = (Lit::pos(pivot), Lit::neg(pivot));
                let (cl, cr) = (&p.line(left).clause, &p.line(right).clause);
                if !cl.contains(pos) || !cr.contains(neg) {
                    return invalid(step, InvalidReason::PivotMissing);
                }
                cl.without(pos).union(&cr.without(neg))
            }
        };
        let ok = match mode {
            CheckMode::Weakening => derived.is_subset_of(&line.clause),
            CheckMode::Strict => derived == line.clause,
        };
        if !ok {
            let reason = match mode {
                CheckMode::Weakening => InvalidReason::MissingLiteral,
                CheckMode::Strict => InvalidReason::NotEqual,
            };
            return invalid(step, reason);
        }
    }
    let last = p.len() - 1;
    if !p.line(last).clause.is_empty() {
        return invalid(last, InvalidReason::NonEmptyFinalClause);
    }
    Verdict::Valid
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::Clause;
    use crate::resolution::ProofLine;

    fn cl(lits: &[i64]) -> Clause {
        lits.iter().map(|&v| Lit::from_dimacs(v).unwrap()).collect()
    }

    fn pair() -> (Cnf, ResolutionProof) {
        let f = Cnf::from_dimacs_clauses(1, &[&[1], &[-1]]).unwrap();
        let p = ResolutionProof::new(vec![
            ProofLine::axiom(cl(&[1]), 0),
            ProofLine::axiom(cl(&[-1]), 1),
            ProofLine::resolve(cl(&[]), 0, 1, 0),
        ]);
        (f, p)
    }

    #[test]
    fn smallest_resolvable_pair() {
        let (f, p) = pair();
        for mode in [CheckMode::Strict, CheckMode::Weakening] {
            let r = check_refutation(&f, &p, mode);
            assert!(r.is_valid());
            assert_eq!(r.lines, 3);
        }
    }

    #[test]
    fn php_two_pigeons_one_hole() {
        let f = Cnf::from_dimacs_clauses(2, &[&[1], &[2], &[-1, -2]]).unwrap();
        let p = ResolutionProof::new(vec![
            ProofLine::axiom(cl(&[1]), 0),
            ProofLine::axiom(cl(&[-1, -2]), 2),
            ProofLine::resolve(cl(&[-2]), 0, 1, 0),
            ProofLine::axiom(cl(&[2]), 1),
            ProofLine::resolve(cl(&[]), 3, 2, 1),
        ]);
        assert!(check_refutation(&f, &p, CheckMode::Strict).is_valid());
    }

    #[test]
    fn pivot_missing() {
        let f = Cnf::from_dimacs_clauses(2, &[&[1], &[-1]]).unwrap();
        let p = ResolutionProof::new(vec![
            ProofLine::axiom(cl(&[1]), 0),
            ProofLine::axiom(cl(&[-1]), 1),
            ProofLine::resolve(cl(&[]), 0, 1, 1),
        ]);
        let r = check_refutation(&f, &p, CheckMode::Weakening);
        assert_eq!(r.verdict, Verdict::Invalid { step: 2, reason: InvalidReason::PivotMissing });
        assert_eq!(InvalidReason::PivotMissing.to_string(), "pivot missing");
    }

    #[test]
    fn weakening_versus_strict() {
        let f = Cnf::from_dimacs_clauses(2, &[&[1], &[-1]]).unwrap();
        let p = ResolutionProof::new(vec![
            ProofLine::axiom(cl(&[1, 2]), 0),
            ProofLine::axiom(cl(&[-1]), 1),
            ProofLine::resolve(cl(&[2]), 0, 1, 0),
        ]);
        let weak = check_refutation(&f, &p, CheckMode::Weakening);
        assert_eq!(weak.verdict, Verdict::Invalid { step: 2, reason: InvalidReason::NonEmptyFinalClause });
        let strict = check_refutation(&f, &p, CheckMode::Strict);
        assert_eq!(strict.verdict, Verdict::Invalid { step: 0, reason: InvalidReason::NotEqual });
    }

    #[test]
    fn structural_errors() {
        let (f, mut p) = pair();
        assert_eq!(
            check_refutation(&f, &ResolutionProof::default(), CheckMode::Strict).verdict,
            Verdict::Invalid { step: 0, reason: InvalidReason::EmptyProof }
        );
        p.lines[1].just = Justification::Axiom(5);
        assert_eq!(
            check_refutation(&f, &p, CheckMode::Strict).verdict,
            Verdict::Invalid { step: 1, reason: InvalidReason::AxiomOutOfRange }
        );
        let (f, mut p) = pair();
        p.lines[2].just = Justification::Resolve { left: 2, right: 1, pivot: 0 };
        assert_eq!(
            check_refutation(&f, &p, CheckMode::Strict).verdict,
            Verdict::Invalid { step: 2, reason: InvalidReason::ForwardReference }
        );
    }
}
