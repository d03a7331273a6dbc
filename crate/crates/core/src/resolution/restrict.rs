use super::{check_refutation, CheckMode, Justification, ProofLine, ResolutionError, ResolutionProof};
use crate::formula::{Clause, Cnf, Lit, PartialAssignment};

/// Where a line of the input proof lives in the output proof.
#[derive(Clone, Copy)]
enum Image {
    /// The line's clause is satisfied by ρ.
    Top,
    /// Output line whose clause is a subset of the line's restricted clause.
    Line(usize),
}

/// Restricts a weakening-mode refutation of `f` by ρ, giving a refutation of
/// `f|ρ` (returned alongside the proof) that is no longer than the input.
///
/// Each input line maps either to ⊤ or to an output line whose clause is
/// contained in the restricted input clause. A resolution step whose pivot is
/// set by ρ, or whose pivot literal vanished from a premise image, aliases
/// the surviving premise instead of emitting a line; the output is cut at
/// the image of the final line.
pub fn restrict_proof(
    f: &Cnf,
    p: &ResolutionProof,
    rho: &PartialAssignment,
) -> Result<(Cnf, ResolutionProof), ResolutionError> {
    if rho.len() != f.num_vars() {
        return Err(ResolutionError::Dimension(format!(
            "assignment has {} variables, formula {}",
            rho.len(),
            f.num_vars()
        )));
    }
    let (g, origin) = f.restrict(rho);
    if g.num_clauses() == 0 {
        return Err(ResolutionError::RestrictionTrivializes);
    }
    let report = check_refutation(f, p, CheckMode::Weakening);
    if !report.is_valid() {
        return Err(ResolutionError::InvalidInput(report.to_string()));
    }
    let mut new_index = vec![usize::MAX; f.num_clauses()];
    for (new, &old) in origin.iter().enumerate() {
        new_index[old] = new;
    }

    let mut out: Vec<ProofLine> = Vec::new();
    let mut image: Vec<Image> = Vec::with_capacity(p.len());
    for line in p.lines() {
        let Some(d) = rho.restrict_clause(&line.clause) else {
            image.push(Image::Top);
            continue;
        };
        let img = match line.just {
            Justification::Axiom(l) => {
                // C_l ⊆ D and D is not satisfied, so C_l survives in f|ρ.
                out.push(ProofLine::axiom(d, new_index[l]));
                Image::Line(out.len() - 1)
            }
            Justification::Resolve { left, right, pivot } => {
                // Premises that matter are never ⊤: their surviving literals
                // all occur in the unsatisfied resolvent.
                match (rho.get(pivot as usize), image[left], image[right]) {
                    (Some(true), _, img) | (Some(false), img, _) => img,
                    (None, Image::Line(a), Image::Line(b)) => {
                        if !out[a].clause.contains(Lit::pos(pivot)) {
                            Image::Line(a)
                        } else if !out[b].clause.contains(Lit::neg(pivot)) {
                            Image::Line(b)
                        } else {
                            out.push(ProofLine::resolve(d, a, b, pivot));
                            Image::Line(out.len() - 1)
                        }
                    }
                    _ => unreachable!("premise of an unsatisfied resolvent is satisfied"),
                }
            }
        };
        image.push(img);
    }
    let Some(&Image::Line(last)) = image.last() else {
        unreachable!("the empty clause is never satisfied")
    };
    out.truncate(last + 1);
    debug_assert!(out[last].clause == Clause::empty());
    Ok((g, ResolutionProof::new(out)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cl(lits: &[i64]) -> Clause {
        lits.iter().map(|&v| Lit::from_dimacs(v).unwrap()).collect()
    }

    fn chain() -> (Cnf, ResolutionProof) {
        let f = Cnf::from_dimacs_clauses(2, &[&[1, 2], &[-1], &[-2]]).unwrap();
        let p = ResolutionProof::new(vec![
            ProofLine::axiom(cl(&[1, 2]), 0),
            ProofLine::axiom(cl(&[-1]), 1),
            ProofLine::resolve(cl(&[2]), 0, 1, 0),
            ProofLine::axiom(cl(&[-2]), 2),
            ProofLine::resolve(cl(&[]), 2, 3, 1),
        ]);
        (f, p)
    }

    #[test]
    fn restrict_by_second_variable() {
        let (f, p) = chain();
        let rho = PartialAssignment::from_pairs(2, &[(1, false)]);
        let (g, q) = restrict_proof(&f, &p, &rho).unwrap();
        assert_eq!(g, Cnf::from_dimacs_clauses(2, &[&[1], &[-1]]).unwrap());
        assert!(check_refutation(&g, &q, CheckMode::Weakening).is_valid());
        assert!(q.len() <= p.len());
    }

    #[test]
    fn empty_restriction_is_identity() {
        let (f, p) = chain();
        let (g, q) = restrict_proof(&f, &p, &PartialAssignment::empty(2)).unwrap();
        assert_eq!(g, f);
        assert_eq!(q, p);
    }

    #[test]
    fn satisfying_restriction_trivializes() {
        let f = Cnf::from_dimacs_clauses(2, &[&[1, 2], &[-1, 2]]).unwrap();
        let p = ResolutionProof::new(vec![ProofLine::axiom(cl(&[1, 2]), 0)]);
        let rho = PartialAssignment::from_pairs(2, &[(1, true)]);
        assert_eq!(restrict_proof(&f, &p, &rho), Err(ResolutionError::RestrictionTrivializes));
    }

    #[test]
    fn falsified_axiom_collapses_to_one_line() {
        let f = Cnf::from_dimacs_clauses(1, &[&[1], &[-1]]).unwrap();
        let p = ResolutionProof::new(vec![
            ProofLine::axiom(cl(&[1]), 0),
            ProofLine::axiom(cl(&[-1]), 1),
            ProofLine::resolve(cl(&[]), 0, 1, 0),
        ]);
        let rho = PartialAssignment::from_pairs(1, &[(0, true)]);
        let (g, q) = restrict_proof(&f, &p, &rho).unwrap();
        assert_eq!(g.num_clauses(), 1);
        assert!(check_refutation(&g, &q, CheckMode::Weakening).is_valid());
        assert_eq!(q.len(), 1);
    }

    #[test]
    fn rejects_invalid_input() {
        let (f, mut p) = chain();
        let mut lines = std::mem::take(&mut p).into_lines();
        lines.pop();
        let p = ResolutionProof::new(lines);
        assert!(matches!(
            restrict_proof(&f, &p, &PartialAssignment::empty(2)),
            Err(ResolutionError::InvalidInput(_))
        ));
    }
}
