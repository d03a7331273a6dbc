use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{build_prf, EncodeError, EncodingArtifact, Formula, PrfCode, PrfLayout};
use crate::formula::{Cnf, CnfCode};

/// A polynomial with nonnegative integer coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Poly(pub Vec<u64>);

impl Poly {
    pub fn eval(&self, s: u64) -> u64 {
        self.0.iter().rev().fold(0u64, |acc, &c| acc.saturating_mul(s).saturating_add(c))
    }

    pub fn degree(&self) -> usize {
        self.0.iter().rposition(|&c| c != 0).unwrap_or(0)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (d, &c) in self.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coef = if c == 1 && d > 0 { String::new() } else { c.to_string() };
            terms.push(match d {
                0 => coef,
                1 => format!("{coef}s"),
                _ => format!("{coef}s^{d}"),
            });
        }
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join("+"))
        }
    }
}

/// Parses sums of terms `c`, `cs`, `cs^d` (e.g. `4s`, `s^3`, `2s^2+1`).
impl FromStr for Poly {
    type Err = String;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut coefs: Vec<u64> = Vec::new();
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err("empty polynomial".into());
        }
        for term in cleaned.split('+') {
            let bad = || format!("bad term `{term}`");
            let (coef, deg) = match term.split_once('s') {
                None => (term.parse::<u64>().map_err(|_| bad())?, 0),
                Some((c, rest)) => {
                    let coef = if c.is_empty() { 1 } else { c.trim_end_matches('*').parse().map_err(|_| bad())? };
                    let deg = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^').ok_or_else(bad)?.parse::<usize>().map_err(|_| bad())?
                    };
                    (coef, deg)
                }
            };
            if coefs.len() <= deg {
                coefs.resize(deg + 1, 0);
            }
            coefs[deg] += coef;
        }
        Ok(Poly(coefs))
    }
}

/// The length bound `m = p(size)` of the reduction and the refutation
/// length budget `q(m)` for its satisfiable side.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PolyBudget {
    pub p: Poly,
    pub q: Poly,
}

impl Default for PolyBudget {
    fn default() -> Self {
        PolyBudget { p: Poly(vec![0, 4]), q: Poly(vec![0, 0, 0, 1]) }
    }
}

impl PolyBudget {
    pub fn new(p: Poly, q: Poly) -> Result<Self, EncodeError> {
        if p.degree() < 1 || q.degree() < 1 {
            return Err(EncodeError::Parameter("budget polynomials need degree ≥ 1".into()));
        }
        Ok(PolyBudget { p, q })
    }
}

/// Size of a CNF for the reduction: the length `2nk` of its code.
pub fn code_size(phi: &Cnf) -> usize {
    2 * phi.num_vars() * phi.num_clauses()
}

/// `ρ_{φ,m}`: the instance proof formula for `⌈φ⌉` with `m = p(|⌈φ⌉|)`
/// (at least 1). Satisfiable iff `φ` has a refutation of at most `m` lines.
pub fn am_reduce(phi: &Cnf, budget: &PolyBudget) -> Result<EncodingArtifact, EncodeError> {
    if !phi.is_normalized() {
        return Err(EncodeError::Parameter("the reduction expects a normalized CNF".into()));
    }
    let size = code_size(phi);
    let m = budget.p.eval(size as u64).max(1);
    let m = usize::try_from(m).map_err(|_| EncodeError::Overflow)?;
    let lay = PrfLayout::new(m, phi.num_vars(), phi.num_clauses(), false)?;
    let code = CnfCode::encode(phi, true).map_err(EncodeError::Formula)?;
    let rho = build_prf(&lay, PrfCode::Instantiated(&code))?;
    let q = budget.q.eval(m as u64);
    Ok(EncodingArtifact::new(
        "am",
        vec![("n", phi.num_vars()), ("k", phi.num_clauses()), ("size", size), ("m", m), ("q", q as usize)],
        Formula::Cnf(rho),
        Some(lay),
        lay.var_map(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_parsing() {
        assert_eq!("4s".parse::<Poly>().unwrap(), Poly(vec![0, 4]));
        assert_eq!("s^3".parse::<Poly>().unwrap(), Poly(vec![0, 0, 0, 1]));
        assert_eq!("2s^2 + 3s + 1".parse::<Poly>().unwrap(), Poly(vec![1, 3, 2]));
        assert_eq!(Poly(vec![1, 3, 2]).to_string(), "2s^2+3s+1");
        assert_eq!(Poly(vec![1, 3, 2]).eval(2), 15);
        assert!("4t".parse::<Poly>().is_err());
        assert!(PolyBudget::new(Poly(vec![3]), Poly(vec![0, 1])).is_err());
    }

    #[test]
    fn reduction_parameters() {
        let phi = Cnf::from_dimacs_clauses(1, &[&[1], &[-1]]).unwrap();
        let art = am_reduce(&phi, &PolyBudget::default()).unwrap();
        assert_eq!(art.param("m"), Some(16));
        assert_eq!(art.num_vars(), PrfLayout::instance_vars(16, 1, 2));
    }
}
