use serde::Serialize;

use super::{check_refutation, restrict_proof, CheckMode, Justification, ProofLine, ResolutionError, ResolutionProof};
use crate::formula::{Clause, Cnf, Lit, PartialAssignment};
use crate::oracle::{dpll_sat, SatResult, SearchBudget};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    A,
    B,
}

/// Given a refutation of `a ∧ b` (clauses of `a` first) where `a` and `b`
/// share no variable, returns a refutation of one side.
///
/// If one side is satisfiable, the proof is restricted by a satisfying
/// assignment of it, which leaves exactly the other side. If neither side is
/// found satisfiable, the proof is split line by line instead.
pub fn split_disjoint_refutation(
    a: &Cnf,
    b: &Cnf,
    p: &ResolutionProof,
) -> Result<(Side, ResolutionProof), ResolutionError> {
    let f = a
        .conjoin(b)
        .map_err(|_| ResolutionError::Dimension(format!("{} vs {} variables", a.num_vars(), b.num_vars())))?;
    let (in_a, in_b) = (a.occurring_vars(), b.occurring_vars());
    if let Some(v) = (0..f.num_vars()).find(|&v| in_a[v] && in_b[v]) {
        return Err(ResolutionError::SharedVariable(v));
    }
    let report = check_refutation(&f, p, CheckMode::Weakening);
    if !report.is_valid() {
        return Err(ResolutionError::InvalidInput(report.to_string()));
    }

    let budget = SearchBudget::default();
    for (side, satisfiable, vars) in [(Side::A, b, &in_b), (Side::B, a, &in_a)] {
        if let SatResult::Sat(beta) = dpll_sat(satisfiable, &budget) {
            let pairs: Vec<(usize, bool)> =
                (0..f.num_vars()).filter(|&v| vars[v]).map(|v| (v, beta.get(v))).collect();
            let rho = PartialAssignment::from_pairs(f.num_vars(), &pairs);
            // The restriction deletes every clause of the satisfied side and
            // leaves the other side untouched, in order.
            let (_, q) = restrict_proof(&f, p, &rho)?;
            return Ok((side, q));
        }
    }
    Ok(structural_split(a.num_clauses(), &in_a, p))
}

/// Splits every line `D` into its part over the variables of `a` and the
/// rest; each line maps to a line of the refutation of one side whose
/// clause is contained in the matching part of `D`.
fn structural_split(ka: usize, in_a: &[bool], p: &ResolutionProof) -> (Side, ResolutionProof) {
    let part = |c: &Clause, side: Side| -> Clause {
        c.iter().filter(|l| in_a[l.var() as usize] == (side == Side::A)).collect()
    };
    let mut out: [Vec<ProofLine>; 2] = [Vec::new(), Vec::new()];
    let slot = |s: Side| s as usize;
    let mut image: Vec<(Side, usize)> = Vec::with_capacity(p.len());
    for line in p.lines() {
        let img = match line.just {
            Justification::Axiom(l) => {
                let (side, idx) = if l < ka { (Side::A, l) } else { (Side::B, l - ka) };
                out[slot(side)].push(ProofLine::axiom(part(&line.clause, side), idx));
                (side, out[slot(side)].len() - 1)
            }
            Justification::Resolve { left, right, pivot } => {
                let side = if in_a[pivot as usize] { Side::A } else { Side::B };
                let (l, r) = (image[left], image[right]);
                if l.0 != side {
                    l
                } else if r.0 != side {
                    r
                } else {
                    let lines = &mut out[slot(side)];
                    if !lines[l.1].clause.contains(Lit::pos(pivot)) {
                        l
                    } else if !lines[r.1].clause.contains(Lit::neg(pivot)) {
                        r
                    } else {
                        lines.push(ProofLine::resolve(part(&line.clause, side), l.1, r.1, pivot));
                        (side, lines.len() - 1)
                    }
                }
            }
        };
        image.push(img);
    }
    let (side, last) = *image.last().expect("valid refutations are non-empty");
    let mut lines = std::mem::take(&mut out[slot(side)]);
    lines.truncate(last + 1);
    (side, ResolutionProof::new(lines))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cl(lits: &[i64]) -> Clause {
        lits.iter().map(|&v| Lit::from_dimacs(v).unwrap()).collect()
    }

    #[test]
    fn satisfiable_second_side() {
        let a = Cnf::from_dimacs_clauses(2, &[&[1], &[-1]]).unwrap();
        let b = Cnf::from_dimacs_clauses(2, &[&[2]]).unwrap();
        let p = ResolutionProof::new(vec![
            ProofLine::axiom(cl(&[1, 2]), 0),
            ProofLine::axiom(cl(&[-1]), 1),
            ProofLine::resolve(cl(&[2]), 0, 1, 0),
            ProofLine::axiom(cl(&[2]), 2),
            ProofLine::resolve(cl(&[2]), 2, 1, 0),
        ]);
        // Not a refutation: last line is not empty.
        assert!(matches!(split_disjoint_refutation(&a, &b, &p), Err(ResolutionError::InvalidInput(_))));
        let p = ResolutionProof::new(vec![
            ProofLine::axiom(cl(&[1]), 0),
            ProofLine::axiom(cl(&[-1]), 1),
            ProofLine::resolve(cl(&[]), 0, 1, 0),
        ]);
        let (side, q) = split_disjoint_refutation(&a, &b, &p).unwrap();
        assert_eq!(side, Side::A);
        assert!(check_refutation(&a, &q, CheckMode::Weakening).is_valid());
    }

    #[test]
    fn satisfiable_first_side() {
        let a = Cnf::from_dimacs_clauses(2, &[&[1]]).unwrap();
        let b = Cnf::from_dimacs_clauses(2, &[&[2], &[-2]]).unwrap();
        let p = ResolutionProof::new(vec![
            ProofLine::axiom(cl(&[2]), 1),
            ProofLine::axiom(cl(&[-2]), 2),
            ProofLine::resolve(cl(&[]), 0, 1, 1),
        ]);
        let (side, q) = split_disjoint_refutation(&a, &b, &p).unwrap();
        assert_eq!(side, Side::B);
        assert!(check_refutation(&b, &q, CheckMode::Weakening).is_valid());
    }

    #[test]
    fn structural_split_on_mixed_proof() {
        // Both sides unsatisfiable; the proof mixes weakened lines of both.
        let a = Cnf::from_dimacs_clauses(2, &[&[1], &[-1]]).unwrap();
        let b = Cnf::from_dimacs_clauses(2, &[&[2], &[-2]]).unwrap();
        let f = a.conjoin(&b).unwrap();
        let p = ResolutionProof::new(vec![
            ProofLine::axiom(cl(&[1, 2]), 0),
            ProofLine::axiom(cl(&[-2]), 3),
            ProofLine::resolve(cl(&[1]), 0, 1, 1),
            ProofLine::axiom(cl(&[-1, 2]), 1),
            ProofLine::resolve(cl(&[2]), 2, 3, 0),
            ProofLine::resolve(cl(&[]), 4, 1, 1),
        ]);
        assert!(check_refutation(&f, &p, CheckMode::Weakening).is_valid());
        let (side, q) = structural_split(2, &a.occurring_vars(), &p);
        let target = if side == Side::A { &a } else { &b };
        assert!(check_refutation(target, &q, CheckMode::Weakening).is_valid());
        let (side, q) = split_disjoint_refutation(&a, &b, &p).unwrap();
        let target = if side == Side::A { &a } else { &b };
        assert!(check_refutation(target, &q, CheckMode::Weakening).is_valid());
    }

    #[test]
    fn shared_variable_rejected() {
        let a = Cnf::from_dimacs_clauses(1, &[&[1]]).unwrap();
        let b = Cnf::from_dimacs_clauses(1, &[&[-1]]).unwrap();
        let p = ResolutionProof::default();
        assert_eq!(split_disjoint_refutation(&a, &b, &p), Err(ResolutionError::SharedVariable(0)));
    }
}
