//! DIMACS CNF reading and canonical writing.
//!
//! Emission is canonical: the header, then one clause per line with literals
//! in ascending variable order (positive before negative) and clauses in
//! their original order. Parsing accepts comments, clauses spread across
//! lines and several clauses per line.

use std::fmt::Write as _;

use thiserror::Error;

use super::{Clause, Cnf, Lit};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DimacsError {
    #[error("line {line}: malformed header: {message}")]
    MalformedHeader { line: usize, message: String },
    #[error("missing `p cnf` header")]
    MissingHeader,
    #[error("line {line}: invalid token `{token}`")]
    BadToken { line: usize, token: String },
    #[error("line {line}: literal {literal} out of range for {num_vars} variables")]
    LiteralOutOfRange { line: usize, literal: i64, num_vars: usize },
    #[error("line {line}: clause is missing its terminating 0")]
    MissingTerminator { line: usize },
    #[error("line {line}: header declares {declared} clauses but {found} were read")]
    ClauseCountMismatch { line: usize, declared: usize, found: usize },
}

pub fn parse(text: &str) -> Result<Cnf, DimacsError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<Lit> = Vec::new();
    let mut open_since = 0;
    let mut last_line = 0;
    'lines: for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        last_line = lineno;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('%') {
            break;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(DimacsError::MalformedHeader { line: lineno, message: "duplicate header".into() });
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            let bad = |m: &str| DimacsError::MalformedHeader { line: lineno, message: m.into() };
            if toks.len() != 4 || toks[0] != "p" || toks[1] != "cnf" {
                return Err(bad("expected `p cnf <vars> <clauses>`"));
            }
            let n = toks[2].parse().map_err(|_| bad("variable count is not a number"))?;
            let k = toks[3].parse().map_err(|_| bad("clause count is not a number"))?;
            header = Some((n, k, lineno));
            continue;
        }
        let Some((n, _, _)) = header else {
            return Err(DimacsError::MissingHeader);
        };
        for tok in line.split_whitespace() {
            if tok.starts_with('%') {
                break 'lines;
            }
            let v: i64 = tok.parse().map_err(|_| DimacsError::BadToken { line: lineno, token: tok.into() })?;
            if v == 0 {
                clauses.push(Clause::new(std::mem::take(&mut current)));
                continue;
            }
            if v.unsigned_abs() as usize > n {
                return Err(DimacsError::LiteralOutOfRange { line: lineno, literal: v, num_vars: n });
            }
            if current.is_empty() {
                open_since = lineno;
            }
            current.push(Lit::from_dimacs(v).expect("nonzero literal"));
        }
    }
    let (n, k, header_line) = header.ok_or(DimacsError::MissingHeader)?;
    if !current.is_empty() {
        return Err(DimacsError::MissingTerminator { line: open_since.max(1).min(last_line.max(1)) });
    }
    if clauses.len() != k {
        return Err(DimacsError::ClauseCountMismatch { line: header_line, declared: k, found: clauses.len() });
    }
    Ok(Cnf::new(n, clauses).expect("literals were range-checked"))
}

pub fn emit(f: &Cnf) -> String {
    let mut out = String::with_capacity(16 + f.num_literals() * 4);
    writeln!(out, "p cnf {} {}", f.num_vars(), f.num_clauses()).unwrap();
    for c in f.clauses() {
        for l in c.iter() {
            write!(out, "{} ", l.to_dimacs()).unwrap();
        }
        out.push_str("0\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_format_definition_example() {
        let f = parse("p cnf 1 2\n1 0\n-1 0\n").unwrap();
        assert_eq!(f, Cnf::from_dimacs_clauses(1, &[&[1], &[-1]]).unwrap());
    }

    #[test]
    fn comments_and_split_clauses() {
        let f = parse("c hello\np cnf 3 2\n1 -3\n 2 0 -1\n0\n").unwrap();
        assert_eq!(f, Cnf::from_dimacs_clauses(3, &[&[1, 2, -3], &[-1]]).unwrap());
    }

    #[test]
    fn emission_is_canonical() {
        let f = parse("p cnf 3 1\n-3 1 2 0\n").unwrap();
        assert_eq!(emit(&f), "p cnf 3 1\n1 2 -3 0\n");
        assert_eq!(emit(&parse(&emit(&f)).unwrap()), emit(&f));
    }

    #[test]
    fn header_count_mismatch_names_header_line() {
        let err = parse("c x\np cnf 1 3\n1 0\n").unwrap_err();
        assert_eq!(err, DimacsError::ClauseCountMismatch { line: 2, declared: 3, found: 1 });
        assert!(err.to_string().contains("line 2"));
    }

    #[test]
    fn error_cases() {
        assert!(matches!(parse("p cnf x 1\n"), Err(DimacsError::MalformedHeader { line: 1, .. })));
        assert!(matches!(parse("p dnf 1 1\n1 0\n"), Err(DimacsError::MalformedHeader { .. })));
        assert!(matches!(parse("p cnf 1 1\n2 0\n"), Err(DimacsError::LiteralOutOfRange { line: 2, .. })));
        assert!(matches!(parse("p cnf 2 1\n1 2\n"), Err(DimacsError::MissingTerminator { line: 2 })));
        assert!(matches!(parse("1 0\n"), Err(DimacsError::MissingHeader)));
        assert!(matches!(parse("p cnf 1 1\n1 a 0\n"), Err(DimacsError::BadToken { line: 2, .. })));
    }

    #[test]
    fn empty_clause_and_empty_formula() {
        let f = parse("p cnf 2 1\n0\n").unwrap();
        assert!(f.clause(0).is_empty());
        assert_eq!(emit(&f), "p cnf 2 1\n0\n");
        assert_eq!(parse("p cnf 0 0\n").unwrap().num_clauses(), 0);
    }
}
