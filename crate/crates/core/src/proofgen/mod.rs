//! Short refutations of proof formulas for satisfiable CNFs, and witness
//! assignments of proof formulas built from refutations.

mod suite;

use rustc_hash::FxHashMap;
use thiserror::Error;

use crate::encoder::{prf_clauses, ClauseKind, EncodeError, PrfCode, PrfLayout};
use crate::formula::{Assignment, Clause, Cnf, CnfCode, Lit};
use crate::resolution::{check_refutation, CheckMode, Justification, ProofLine, ResolutionProof};

pub use suite::{lrfn_nontaut_at, lrfn_nontaut_suite, random_satisfiable_cnf, SuiteRecord};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ProofGenError {
    #[error("the assignment does not satisfy the CNF")]
    NotSatisfying,
    #[error("generated {lines} lines, above the bound {bound}")]
    BoundExceeded { lines: usize, bound: usize },
    #[error("the proof has {lines} lines, more than m = {m}")]
    ProofTooLong { lines: usize, m: usize },
    #[error("padding needs an axiom line but the CNF has no clauses")]
    NoPaddingAxiom,
    #[error("input proof is not a valid refutation: {0}")]
    InvalidProof(String),
    #[error(transparent)]
    Encode(#[from] EncodeError),
}

/// Constant of the length bound `L(m, n, k) = C0 · m² · (m + n + k)`.
///
/// The construction uses at most
/// `m(2k+1) + 2 + (m−1)(2nm + m + 4 + n + n²/2) + 2n` lines, which is
/// below the bound whenever `n ≤ 8m`.
pub const C0: usize = 4;

pub fn length_bound(m: usize, n: usize, k: usize) -> usize {
    C0 * m * m * (m + n + k)
}

/// Builds the refutation line by line, remembering where every axiom of
/// the target sits.
struct Builder {
    axiom_index: FxHashMap<ClauseKind, usize>,
    clauses: Vec<Clause>,
    lines: Vec<ProofLine>,
}

impl Builder {
    fn axiom(&mut self, kind: ClauseKind) -> usize {
        let l = self.axiom_index[&kind];
        self.lines.push(ProofLine::axiom(self.clauses[l].clone(), l));
        self.lines.len() - 1
    }

    /// An axiom line weakened to `clause`.
    fn weak_axiom(&mut self, kind: ClauseKind, clause: Clause) -> usize {
        let l = self.axiom_index[&kind];
        debug_assert!(self.clauses[l].is_subset_of(&clause));
        self.lines.push(ProofLine::axiom(clause, l));
        self.lines.len() - 1
    }

    /// Resolves line `left ∋ v` with line `right ∋ ¬v`.
    fn resolve(&mut self, left: usize, right: usize, v: usize) -> usize {
        let v = v as u32;
        let c = self.lines[left].clause.without(Lit::pos(v)).union(&self.lines[right].clause.without(Lit::neg(v)));
        self.lines.push(ProofLine::resolve(c, left, right, v));
        self.lines.len() - 1
    }

    /// Resolves `cur` against each line of `others` on the positive
    /// variable of `cur` given with it; `cur` is always the positive side.
    fn chain_pos(&mut self, mut cur: usize, others: &[(usize, usize)]) -> usize {
        for &(other, v) in others {
            cur = self.resolve(cur, other, v);
        }
        cur
    }
}

/// Refutes the instance proof formula for `⌈f⌉` with `m` lines, given an
/// assignment `a` satisfying `f`.
///
/// With `S_j = ⋁_i y[a_i][i][j]` ("line `j` contains a literal true under
/// `a`"), each `S_j` is derived from the earlier ones: the axiom case from
/// the inclusion clauses of a true literal of every clause; the resolution
/// case from the carry clauses of every possible premise, up to the pivot
/// excuses, which the pivot uniqueness clauses cancel. The last `S_{m−1}` is
/// refuted by the final-line units.
pub fn refute_prf_nontaut(f: &Cnf, a: &Assignment, m: usize) -> Result<ResolutionProof, ProofGenError> {
    if a.len() != f.num_vars() || !f.eval(a).unwrap_or(false) {
        return Err(ProofGenError::NotSatisfying);
    }
    let (n, k) = (f.num_vars(), f.num_clauses());
    let lay = PrfLayout::new(m, n, k, false)?;
    let code = CnfCode::encode(f, false).map_err(EncodeError::Formula)?;
    let target = prf_clauses(&lay, PrfCode::Instantiated(&code))?;
    let mut b = Builder {
        axiom_index: target.iter().enumerate().map(|(idx, (kind, _))| (*kind, idx)).collect(),
        clauses: target.into_iter().map(|(_, c)| c).collect(),
        lines: Vec::new(),
    };
    let bit = |i: usize| usize::from(a.get(i));
    let s_clause = |j: usize| -> Clause { (0..n).map(|i| Lit::pos(lay.y(bit(i), i, j) as u32)).collect() };
    // A true literal of every clause of f.
    let witness: Vec<usize> = f
        .clauses()
        .iter()
        .map(|c| c.iter().find(|l| l.eval(a.bits())).expect("a satisfies f").var() as usize)
        .collect();
    let exc_l: Vec<usize> = (0..n).filter(|&i| bit(i) == 1).collect();
    let exc_r: Vec<usize> = (0..n).filter(|&i| bit(i) == 0).collect();

    let mut s_line: Vec<usize> = Vec::with_capacity(m);
    for j in 0..m {
        let sj = s_clause(j);
        // Axiom case: ¬ax[j] ∨ S_j.
        let alo = b.axiom(ClauseKind::AxiomSelect { j });
        let mut incl = Vec::with_capacity(k);
        for (l, &i) in witness.iter().enumerate() {
            let mut lits: Vec<Lit> = sj.iter().collect();
            lits.push(Lit::neg(lay.s(l, j) as u32));
            let line = b.weak_axiom(ClauseKind::Inclusion { j, l, e: bit(i), i }, Clause::new(lits));
            incl.push((line, lay.s(l, j)));
        }
        // ALO holds the positive selectors, so it is the left side.
        let mut ax_case = alo;
        for &(line, v) in &incl {
            ax_case = b.resolve(ax_case, line, v);
        }
        if j == 0 {
            let unit = b.axiom(ClauseKind::FirstIsAxiom);
            let first = b.resolve(unit, ax_case, lay.ax(0));
            if b.lines[first].clause.is_empty() {
                // No clauses (k = 0) or no variables: line 0 cannot exist.
                return finish(b.lines, m, n, k);
            }
            s_line.push(first);
            continue;
        }
        // Resolution case, once per premise side.
        let mut sides = [0usize; 2];
        for (slot, left_side) in [(0usize, true), (1, false)] {
            let mut premise = Vec::with_capacity(j);
            for bb in 0..j {
                let sel = if left_side { lay.left(bb, j) } else { lay.right(bb, j) };
                let mut carries = Vec::with_capacity(n);
                for i in 0..n {
                    let kind = if left_side {
                        ClauseKind::LeftCarry { j, a: bb, e: bit(i), i }
                    } else {
                        ClauseKind::RightCarry { j, a: bb, e: bit(i), i }
                    };
                    carries.push((b.axiom(kind), lay.y(bit(i), i, bb)));
                }
                let cur = b.chain_pos(s_line[bb], &carries);
                premise.push((cur, sel));
            }
            let select = b.axiom(if left_side { ClauseKind::LeftSelect { j } } else { ClauseKind::RightSelect { j } });
            let mut cur = select;
            for &(line, v) in &premise {
                cur = b.resolve(cur, line, v);
            }
            // cur = ax[j] ∨ S_j ∨ Exc; the axiom case removes ax[j].
            sides[slot] = b.resolve(cur, ax_case, lay.ax(j));
        }
        let [with_l, with_r] = sides;
        // Cancel the excuses: (S_j ∨ ExcL) and (S_j ∨ ExcR) with pivot uniqueness.
        let sj_line = if exc_l.is_empty() {
            with_l
        } else if exc_r.is_empty() {
            with_r
        } else {
            let mut not_q = Vec::with_capacity(exc_r.len());
            for &q in &exc_r {
                let mut cur = with_l;
                for &p in &exc_l {
                    let amo = b.axiom(ClauseKind::PivotUnique { j, i: p.min(q), i2: p.max(q) });
                    cur = b.resolve(cur, amo, lay.piv(p, j));
                }
                not_q.push((cur, q));
            }
            let mut cur = with_r;
            for &(line, q) in &not_q {
                cur = b.resolve(cur, line, lay.piv(q, j));
            }
            cur
        };
        debug_assert_eq!(b.lines[sj_line].clause, sj);
        s_line.push(sj_line);
    }
    let mut cur = s_line[m - 1];
    for i in 0..n {
        let unit = b.axiom(ClauseKind::LastEmpty { e: bit(i), i });
        cur = b.resolve(cur, unit, lay.y(bit(i), i, m - 1));
    }
    debug_assert!(b.lines[cur].clause.is_empty());
    finish(b.lines, m, n, k)
}

fn finish(lines: Vec<ProofLine>, m: usize, n: usize, k: usize) -> Result<ResolutionProof, ProofGenError> {
    let bound = length_bound(m, n, k);
    if lines.len() > bound {
        return Err(ProofGenError::BoundExceeded { lines: lines.len(), bound });
    }
    Ok(ResolutionProof::new(lines))
}

/// An assignment of the instance proof formula for `⌈f⌉` with `m` lines
/// encoding the refutation `p`. Shorter proofs are padded at the front with
/// copies of their first (axiom) line.
pub fn encode_witness(f: &Cnf, p: &ResolutionProof, m: usize) -> Result<Assignment, ProofGenError> {
    let report = check_refutation(f, p, CheckMode::Weakening);
    if !report.is_valid() {
        return Err(ProofGenError::InvalidProof(report.to_string()));
    }
    if p.len() > m {
        return Err(ProofGenError::ProofTooLong { lines: p.len(), m });
    }
    let pad = m - p.len();
    if pad > 0 && f.num_clauses() == 0 {
        return Err(ProofGenError::NoPaddingAxiom);
    }
    let lay = PrfLayout::new(m, f.num_vars(), f.num_clauses(), false)?;
    let mut lines: Vec<ProofLine> = vec![p.line(0).clone(); pad];
    lines.extend(p.lines().iter().map(|line| match line.just {
        Justification::Axiom(_) => line.clone(),
        Justification::Resolve { left, right, pivot } => {
            ProofLine::resolve(line.clause.clone(), left + pad, right + pad, pivot)
        }
    }));
    let mut a = Assignment::zeros(lay.num_vars());
    for (j, line) in lines.iter().enumerate() {
        for lit in line.clause.iter() {
            a.set(lay.y(lit.polarity(), lit.var() as usize, j), true);
        }
        match line.just {
            Justification::Axiom(l) => {
                a.set(lay.ax(j), true);
                a.set(lay.s(l, j), true);
            }
            Justification::Resolve { left, right, pivot } => {
                a.set(lay.left(left, j), true);
                a.set(lay.right(right, j), true);
                a.set(lay.piv(pivot as usize, j), true);
            }
        }
    }
    Ok(a)
}
