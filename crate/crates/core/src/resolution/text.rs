//! The textual proof format.
//!
//! One proof line per text line: `A <l>` for an axiom line whose clause is
//! clause `l` of the target, `A <l> : <lits>` for a weakened axiom line, and
//! `R <j1> <j2> <v> : <lits>` for a resolution step on variable `v`
//! (1-based, as in DIMACS). Line indices are 0-based; literals are signed
//! DIMACS integers. Blank lines and lines starting with `c ` are ignored.

use std::fmt::Write as _;

use thiserror::Error;

use super::{Justification, ProofLine, ResolutionProof};
use crate::formula::{Clause, Cnf, Lit};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ProofTextError {
    #[error("line {line}: malformed proof line: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: reference to proof line {target}, which does not precede it")]
    ForwardReference { line: usize, target: usize },
    #[error("line {line}: axiom {axiom} out of range for {clauses} clauses")]
    AxiomOutOfRange { line: usize, axiom: usize, clauses: usize },
    #[error("line {line}: literal or pivot {value} out of range for {num_vars} variables")]
    OutOfRange { line: usize, value: i64, num_vars: usize },
}

pub fn emit(p: &ResolutionProof, f: &Cnf) -> String {
    let mut out = String::new();
    for line in p.lines() {
        match line.just {
            Justification::Axiom(l) => {
                write!(out, "A {l}").unwrap();
                if l < f.num_clauses() && *f.clause(l) == line.clause {
                    out.push('\n');
                    continue;
                }
            }
            Justification::Resolve { left, right, pivot } => {
                write!(out, "R {left} {right} {}", pivot + 1).unwrap();
            }
        }
        out.push_str(" :");
        for lit in line.clause.iter() {
            write!(out, " {}", lit.to_dimacs()).unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn parse(text: &str, f: &Cnf) -> Result<ResolutionProof, ProofTextError> {
    let n = f.num_vars();
    let mut lines = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line == "c" || line.starts_with("c ") {
            continue;
        }
        let malformed = |m: &str| ProofTextError::Malformed { line: lineno, message: m.into() };
        let (head, lits) = match line.split_once(':') {
            Some((h, l)) => (h, Some(l)),
            None => (line, None),
        };
        let toks: Vec<&str> = head.split_whitespace().collect();
        let num = |t: &str| t.parse::<usize>().map_err(|_| malformed(&format!("`{t}` is not an index")));
        let clause = match lits {
            Some(l) => Some(parse_lits(l, n, lineno)?),
            None => None,
        };
        let here = lines.len();
        let proof_line = match toks.as_slice() {
            ["A", l] => {
                let l = num(l)?;
                if l >= f.num_clauses() {
                    return Err(ProofTextError::AxiomOutOfRange { line: lineno, axiom: l, clauses: f.num_clauses() });
                }
                ProofLine::axiom(clause.unwrap_or_else(|| f.clause(l).clone()), l)
            }
            ["R", j1, j2, v] => {
                let (j1, j2) = (num(j1)?, num(j2)?);
                for target in [j1, j2] {
                    if target >= here {
                        return Err(ProofTextError::ForwardReference { line: lineno, target });
                    }
                }
                let v: i64 = v.parse().map_err(|_| malformed("pivot is not a number"))?;
                if v < 1 || v as usize > n {
                    return Err(ProofTextError::OutOfRange { line: lineno, value: v, num_vars: n });
                }
                let clause = clause.ok_or_else(|| malformed("resolution line needs `: <literals>`"))?;
                ProofLine::resolve(clause, j1, j2, (v - 1) as u32)
            }
            _ => return Err(malformed("expected `A <l>` or `R <j1> <j2> <v> : <lits>`")),
        };
        lines.push(proof_line);
    }
    Ok(ResolutionProof::new(lines))
}

fn parse_lits(text: &str, n: usize, lineno: usize) -> Result<Clause, ProofTextError> {
    let mut lits = Vec::new();
    for tok in text.split_whitespace() {
        let v: i64 = tok
            .parse()
            .map_err(|_| ProofTextError::Malformed { line: lineno, message: format!("`{tok}` is not a literal") })?;
        match Lit::from_dimacs(v) {
            Some(l) if (l.var() as usize) < n => lits.push(l),
            _ => return Err(ProofTextError::OutOfRange { line: lineno, value: v, num_vars: n }),
        }
    }
    Ok(Clause::new(lits))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resolution::{check_refutation, CheckMode};

    #[test]
    fn format_definition_example() {
        let f = Cnf::from_dimacs_clauses(1, &[&[1], &[-1]]).unwrap();
        let text = "A 0\nA 1\nR 0 1 1 :\n";
        let p = parse(text, &f).unwrap();
        assert_eq!(p.len(), 3);
        assert!(check_refutation(&f, &p, CheckMode::Strict).is_valid());
        assert_eq!(emit(&p, &f), text);
    }

    #[test]
    fn weakened_axiom_round_trip() {
        let f = Cnf::from_dimacs_clauses(2, &[&[1], &[-1]]).unwrap();
        let text = "A 0 : 1 -2\nA 1\nR 0 1 1 : -2\n";
        let p = parse(text, &f).unwrap();
        assert_eq!(p.line(0).clause.len(), 2);
        assert_eq!(emit(&p, &f), text);
    }

    #[test]
    fn forward_reference_rejected() {
        let f = Cnf::from_dimacs_clauses(1, &[&[1], &[-1]]).unwrap();
        assert_eq!(parse("R 2 1 1 :\n", &f), Err(ProofTextError::ForwardReference { line: 1, target: 2 }));
    }

    #[test]
    fn malformed_lines() {
        let f = Cnf::from_dimacs_clauses(1, &[&[1], &[-1]]).unwrap();
        assert!(matches!(parse("X 0\n", &f), Err(ProofTextError::Malformed { .. })));
        assert!(matches!(parse("A 7\n", &f), Err(ProofTextError::AxiomOutOfRange { .. })));
        assert!(matches!(parse("A 0 : 2\n", &f), Err(ProofTextError::OutOfRange { .. })));
        assert!(matches!(parse("A 0\nA 1\nR 0 1 1\n", &f), Err(ProofTextError::Malformed { line: 3, .. })));
    }
}
