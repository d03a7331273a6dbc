use rustc_hash::FxHashSet;

use super::{dpll_sat, Deadline, SearchBudget};
use crate::formula::{Clause, Cnf, Lit};
use crate::resolution::{CheckMode, ProofLine, ResolutionProof};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MinRefutation {
    /// The minimal length and a refutation attaining it.
    Found { length: usize, proof: ResolutionProof },
    /// Exhaustively: no refutation with at most `max_lines` lines.
    NoneUpTo { max_lines: usize, satisfiable: bool },
    /// The budget ran out; no refutation has fewer than `complete_below` lines.
    Exhausted { complete_below: usize },
}

/// Iterative deepening over the proof length, counting axiom lines.
///
/// A shortest refutation can be taken to list its (distinct) axioms first
/// and to use every line, so a proof with `a` axioms has at least `2a − 1`
/// lines, its axioms form an unsatisfiable set without pure literals, and at
/// every point the number of unused lines is at most one more than the
/// number of steps left. Resolvents are never tautological or repeated, and
/// only the final line is empty. Weakening never shortens a refutation, so
/// the minimum is the same in both modes; witnesses are strict (hence valid
/// in either mode).
pub fn min_refutation_length(f: &Cnf, max_lines: usize, _mode: CheckMode, budget: &SearchBudget) -> MinRefutation {
    if dpll_sat(f, budget).is_sat() {
        return MinRefutation::NoneUpTo { max_lines, satisfiable: true };
    }
    // Distinct non-tautological clauses, remembering their first index.
    let mut seen = FxHashSet::default();
    let mut axioms: Vec<(Clause, usize)> = Vec::new();
    for (idx, c) in f.clauses().iter().enumerate() {
        if !c.is_tautological() && seen.insert(c.clone()) {
            axioms.push((c.clone(), idx));
        }
    }
    if let Some(&(_, idx)) = axioms.iter().find(|(c, _)| c.is_empty()) {
        if max_lines == 0 {
            return MinRefutation::NoneUpTo { max_lines, satisfiable: false };
        }
        let proof = ResolutionProof::new(vec![ProofLine::axiom(Clause::empty(), idx)]);
        return MinRefutation::Found { length: 1, proof };
    }

    let mut search = Search {
        deadline: budget.deadline(),
        nodes: 0,
        max_nodes: budget.max_assignments,
        memo: FxHashSet::default(),
        lines: Vec::new(),
        used: Vec::new(),
        steps: Vec::new(),
    };
    let mut candidates: Vec<Option<Vec<Vec<usize>>>> = vec![None; max_lines / 2 + 2];
    for length in 1..=max_lines {
        for a in 1..=(length + 1) / 2 {
            if a > axioms.len() {
                break;
            }
            if candidates[a].is_none() {
                match unsat_subsets(&axioms, a, &mut search, budget) {
                    Some(list) => candidates[a] = Some(list),
                    None => return MinRefutation::Exhausted { complete_below: length },
                }
            }
            for subset in candidates[a].as_ref().unwrap() {
                search.reset(subset.iter().map(|&i| axioms[i].0.clone()).collect());
                match search.dfs(length - a) {
                    Outcome::Found => {
                        let mut lines: Vec<ProofLine> =
                            subset.iter().map(|&i| ProofLine::axiom(axioms[i].0.clone(), axioms[i].1)).collect();
                        for &(left, right, pivot) in &search.steps {
                            let clause = search.lines[lines.len()].clone();
                            lines.push(ProofLine::resolve(clause, left, right, pivot));
                        }
                        return MinRefutation::Found { length, proof: ResolutionProof::new(lines) };
                    }
                    Outcome::Exhausted => return MinRefutation::Exhausted { complete_below: length },
                    Outcome::Fail => {}
                }
            }
        }
    }
    MinRefutation::NoneUpTo { max_lines, satisfiable: false }
}

/// All `a`-subsets of the axioms that are unsatisfiable and have no pure
/// literal, in lexicographic order. `None` when the budget runs out.
fn unsat_subsets(
    axioms: &[(Clause, usize)],
    a: usize,
    search: &mut Search,
    budget: &SearchBudget,
) -> Option<Vec<Vec<usize>>> {
    let k = axioms.len();
    let num_vars = axioms.iter().filter_map(|(c, _)| c.max_var()).max().map_or(0, |v| v as usize + 1);
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..a).collect();
    loop {
        search.nodes += 1;
        if search.nodes % 1024 == 0 && search.out_of_budget() {
            return None;
        }
        let clauses: Vec<&Clause> = idx.iter().map(|&i| &axioms[i].0).collect();
        if !has_pure_literal(&clauses) {
            let cnf = Cnf::new(num_vars, clauses.iter().map(|c| (*c).clone()).collect()).expect("in range");
            if dpll_sat(&cnf, budget).is_unsat() {
                out.push(idx.clone());
            }
        }
        // Next combination.
        let mut t = a;
        loop {
            if t == 0 {
                return Some(out);
            }
            t -= 1;
            if idx[t] < k - a + t {
                idx[t] += 1;
                for u in t + 1..a {
                    idx[u] = idx[u - 1] + 1;
                }
                break;
            }
        }
    }
}

fn has_pure_literal(clauses: &[&Clause]) -> bool {
    let mut lits = FxHashSet::default();
    for c in clauses {
        lits.extend(c.iter());
    }
    lits.iter().any(|l| !lits.contains(&l.negated()))
}

enum Outcome {
    Found,
    Fail,
    Exhausted,
}

struct Search {
    deadline: Deadline,
    nodes: u64,
    max_nodes: u64,
    /// Failed states: the set of lines with their used flags and the
    /// number of steps left.
    memo: FxHashSet<(usize, Vec<(Clause, bool)>)>,
    lines: Vec<Clause>,
    used: Vec<bool>,
    steps: Vec<(usize, usize, u32)>,
}

impl Search {
    fn out_of_budget(&self) -> bool {
        self.nodes > self.max_nodes || self.deadline.passed()
    }

    fn reset(&mut self, axioms: Vec<Clause>) {
        self.used = vec![false; axioms.len()];
        self.lines = axioms;
        self.steps.clear();
        self.memo.clear();
    }

    fn unused(&self) -> usize {
        self.used.iter().filter(|&&u| !u).count()
    }

    fn key(&self, left: usize) -> (usize, Vec<(Clause, bool)>) {
        let mut state: Vec<(Clause, bool)> = self.lines.iter().cloned().zip(self.used.iter().copied()).collect();
        state.sort_unstable();
        (left, state)
    }

    fn dfs(&mut self, left: usize) -> Outcome {
        let unused = self.unused();
        if left == 0 {
            return if unused == 1 && self.lines.last().is_some_and(|c| c.is_empty()) {
                Outcome::Found
            } else {
                Outcome::Fail
            };
        }
        if unused > left + 1 {
            return Outcome::Fail;
        }
        self.nodes += 1;
        if self.nodes % 1024 == 0 && self.out_of_budget() {
            return Outcome::Exhausted;
        }
        let key = self.key(left);
        if self.memo.contains(&key) {
            return Outcome::Fail;
        }
        let len = self.lines.len();
        for i in 0..len {
            for j in i + 1..len {
                let Some((left_idx, right_idx, pivot)) = clash(&self.lines[i], &self.lines[j], i, j) else {
                    continue;
                };
                let fresh = usize::from(!self.used[i]) + usize::from(!self.used[j]);
                if unused + 1 - fresh > left {
                    continue;
                }
                let resolvent = self.lines[left_idx]
                    .without(Lit::pos(pivot))
                    .union(&self.lines[right_idx].without(Lit::neg(pivot)));
                if resolvent.is_tautological()
                    || resolvent.is_empty() != (left == 1)
                    || self.lines.contains(&resolvent)
                {
                    continue;
                }
                let (ui, uj) = (self.used[i], self.used[j]);
                self.used[i] = true;
                self.used[j] = true;
                self.lines.push(resolvent);
                self.used.push(false);
                self.steps.push((left_idx, right_idx, pivot));
                match self.dfs(left - 1) {
                    Outcome::Fail => {}
                    other => return other,
                }
                self.steps.pop();
                self.used.pop();
                self.lines.pop();
                self.used[i] = ui;
                self.used[j] = uj;
            }
        }
        self.memo.insert(key);
        Outcome::Fail
    }
}

/// The unique clashing variable of two clauses, oriented so the first
/// returned index holds the positive literal.
fn clash(a: &Clause, b: &Clause, i: usize, j: usize) -> Option<(usize, usize, u32)> {
    let mut found = None;
    for l in a.iter() {
        if b.contains(l.negated()) {
            if found.is_some() {
                return None;
            }
            found = Some(if l.is_positive() { (i, j, l.var()) } else { (j, i, l.var()) });
        }
    }
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resolution::check_refutation;

    fn run(f: &Cnf, max: usize) -> MinRefutation {
        min_refutation_length(f, max, CheckMode::Weakening, &SearchBudget::default())
    }

    #[test]
    fn contradictory_pair() {
        let f = Cnf::from_dimacs_clauses(1, &[&[1], &[-1]]).unwrap();
        match run(&f, 6) {
            MinRefutation::Found { length, proof } => {
                assert_eq!(length, 3);
                assert!(check_refutation(&f, &proof, CheckMode::Strict).is_valid());
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(run(&f, 2), MinRefutation::NoneUpTo { max_lines: 2, satisfiable: false });
    }

    #[test]
    fn two_pigeons_one_hole() {
        let f = Cnf::from_dimacs_clauses(2, &[&[1], &[2], &[-1, -2]]).unwrap();
        match run(&f, 8) {
            MinRefutation::Found { length, proof } => {
                assert_eq!(length, 5);
                assert!(check_refutation(&f, &proof, CheckMode::Strict).is_valid());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn satisfiable_input_is_flagged() {
        let f = Cnf::from_dimacs_clauses(1, &[&[1]]).unwrap();
        assert_eq!(run(&f, 9), MinRefutation::NoneUpTo { max_lines: 9, satisfiable: true });
    }

    #[test]
    fn dag_shaped_minimum() {
        // Every assignment of two variables falsifies one clause; the
        // shortest refutation has 7 lines.
        let f = Cnf::from_dimacs_clauses(2, &[&[1, 2], &[1, -2], &[-1, 2], &[-1, -2]]).unwrap();
        match run(&f, 9) {
            MinRefutation::Found { length, proof } => {
                assert_eq!(length, 7);
                assert!(check_refutation(&f, &proof, CheckMode::Strict).is_valid());
            }
            other => panic!("{other:?}"),
        }
    }
}
