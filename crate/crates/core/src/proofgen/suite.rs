use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use super::{length_bound, refute_prf_nontaut};
use crate::encoder::{build_prf, code_size, PolyBudget, PrfCode, PrfLayout};
use crate::formula::{Assignment, Clause, Cnf, CnfCode, Lit};
use crate::oracle::{dpll_sat, SatResult, SearchBudget};
use crate::resolution::{check_refutation, CheckMode};

/// One run of the generator on a satisfiable CNF.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteRecord {
    pub n: usize,
    pub k: usize,
    pub m: usize,
    pub lines: Option<usize>,
    pub bound: usize,
    pub valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
}

impl SuiteRecord {
    pub fn margin(&self) -> Option<usize> {
        self.lines.map(|l| self.bound.saturating_sub(l))
    }
}

/// Finds a satisfying assignment, generates the refutation of the
/// `m`-line proof formula and checks it against the formula.
pub fn lrfn_nontaut_at(f: &Cnf, m: usize, search: &SearchBudget) -> SuiteRecord {
    let (n, k) = (f.num_vars(), f.num_clauses());
    let mut rec = SuiteRecord { n, k, m, lines: None, bound: length_bound(m, n, k), valid: false, skipped: None };
    let a = match dpll_sat(f, search) {
        SatResult::Sat(a) => a,
        SatResult::Unsat => {
            rec.skipped = Some("unsatisfiable input".into());
            return rec;
        }
        SatResult::Exhausted => {
            rec.skipped = Some("satisfiability search exhausted its budget".into());
            return rec;
        }
    };
    let proof = match refute_prf_nontaut(f, &a, m) {
        Ok(p) => p,
        Err(e) => {
            rec.skipped = Some(e.to_string());
            return rec;
        }
    };
    rec.lines = Some(proof.len());
    let target = CnfCode::encode(f, false)
        .map_err(Into::into)
        .and_then(|code| PrfLayout::new(m, n, k, false).and_then(|lay| build_prf(&lay, PrfCode::Instantiated(&code))));
    match target {
        Ok(prf) => rec.valid = check_refutation(&prf, &proof, CheckMode::Weakening).is_valid(),
        Err(e) => rec.skipped = Some(e.to_string()),
    }
    rec
}

/// The generator at `m = p(|⌈f⌉|)` (at least 1).
pub fn lrfn_nontaut_suite(f: &Cnf, budget: &PolyBudget, search: &SearchBudget) -> SuiteRecord {
    let m = usize::try_from(budget.p.eval(code_size(f) as u64)).unwrap_or(usize::MAX).max(1);
    lrfn_nontaut_at(f, m, search)
}

/// A random CNF with `n ≥ 1` variables and `k` clauses of one to three
/// literals, satisfied by a planted assignment.
pub fn random_satisfiable_cnf<R: Rng>(n: usize, k: usize, rng: &mut R) -> Cnf {
    assert!(n >= 1, "needs a variable");
    let planted = Assignment::new((0..n).map(|_| rng.gen()).collect());
    let vars: Vec<usize> = (0..n).collect();
    let clauses = (0..k)
        .map(|_| {
            let width = rng.gen_range(1..=n.min(3));
            let chosen: Vec<usize> = vars.choose_multiple(rng, width).copied().collect();
            let mut lits: Vec<Lit> = chosen.iter().map(|&v| Lit::new(v as u32, rng.gen())).collect();
            // Make the first literal true under the planted assignment.
            lits[0] = Lit::new(chosen[0] as u32, planted.get(chosen[0]));
            Clause::new(lits)
        })
        .collect();
    Cnf::new(n, clauses).expect("variables in range")
}
