use super::SearchBudget;
use crate::formula::{Assignment, Cnf};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SatResult {
    Sat(Assignment),
    Unsat,
    Exhausted,
}

impl SatResult {
    pub fn is_sat(&self) -> bool {
        matches!(self, SatResult::Sat(_))
    }

    pub fn is_unsat(&self) -> bool {
        matches!(self, SatResult::Unsat)
    }
}

// Literal code: 2·var + (1 if negative).
fn code(var: u32, neg: bool) -> usize {
    2 * var as usize + neg as usize
}

struct Level {
    var: usize,
    trail_pos: usize,
    flipped: bool,
}

struct Solver {
    clauses: Vec<Vec<usize>>,
    /// `watches[l]`: clauses watching literal `l` in one of their first two slots.
    watches: Vec<Vec<usize>>,
    /// Per variable: 0 unassigned, 1 true, -1 false.
    value: Vec<i8>,
    trail: Vec<usize>,
    head: usize,
}

impl Solver {
    fn lit_value(&self, l: usize) -> i8 {
        let v = self.value[l / 2];
        if l & 1 == 1 {
            -v
        } else {
            v
        }
    }

    fn assign(&mut self, l: usize) {
        self.value[l / 2] = if l & 1 == 1 { -1 } else { 1 };
        self.trail.push(l);
    }

    /// Unit propagation; false on conflict.
    fn propagate(&mut self) -> bool {
        while self.head < self.trail.len() {
            let falsified = self.trail[self.head] ^ 1;
            self.head += 1;
            let mut ws = std::mem::take(&mut self.watches[falsified]);
            let mut keep = 0;
            let mut ok = true;
            let mut idx = 0;
            while idx < ws.len() {
                let ci = ws[idx];
                idx += 1;
                if !ok {
                    ws[keep] = ci;
                    keep += 1;
                    continue;
                }
                let c = &mut self.clauses[ci];
                if c[0] == falsified {
                    c.swap(0, 1);
                }
                let other = c[0];
                let other_val = {
                    let v = self.value[other / 2];
                    if other & 1 == 1 {
                        -v
                    } else {
                        v
                    }
                };
                if other_val == 1 {
                    ws[keep] = ci;
                    keep += 1;
                    continue;
                }
                let mut moved = false;
                for t in 2..c.len() {
                    let l = c[t];
                    let v = self.value[l / 2];
                    let lv = if l & 1 == 1 { -v } else { v };
                    if lv != -1 {
                        c.swap(1, t);
                        self.watches[c[1]].push(ci);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                ws[keep] = ci;
                keep += 1;
                if other_val == 0 {
                    self.assign(other);
                } else {
                    ok = false;
                }
            }
            ws.truncate(keep);
            self.watches[falsified] = ws;
            if !ok {
                return false;
            }
        }
        true
    }

    fn undo_to(&mut self, pos: usize) {
        for &l in &self.trail[pos..] {
            self.value[l / 2] = 0;
        }
        self.trail.truncate(pos);
        self.head = pos;
    }
}

/// DPLL with unit propagation on two watched literals, branching on the
/// first unassigned variable, false branch first, chronological
/// backtracking. The decision count is bounded by `max_assignments`.
pub fn dpll_sat(f: &Cnf, budget: &SearchBudget) -> SatResult {
    let n = f.num_vars();
    let mut s = Solver {
        clauses: Vec::new(),
        watches: vec![Vec::new(); 2 * n],
        value: vec![0; n],
        trail: Vec::new(),
        head: 0,
    };
    let mut units = Vec::new();
    for c in f.clauses() {
        if c.is_tautological() {
            continue;
        }
        let lits: Vec<usize> = c.iter().map(|l| code(l.var(), !l.is_positive())).collect();
        match lits.len() {
            0 => return SatResult::Unsat,
            1 => units.push(lits[0]),
            _ => {
                let ci = s.clauses.len();
                s.watches[lits[0]].push(ci);
                s.watches[lits[1]].push(ci);
                s.clauses.push(lits);
            }
        }
    }
    for u in units {
        match s.lit_value(u) {
            1 => {}
            -1 => return SatResult::Unsat,
            _ => s.assign(u),
        }
    }
    if !s.propagate() {
        return SatResult::Unsat;
    }

    let deadline = budget.deadline();
    let mut levels: Vec<Level> = Vec::new();
    let mut next = 0usize;
    let mut decisions = 0u64;
    loop {
        while next < n && s.value[next] != 0 {
            next += 1;
        }
        if next == n {
            return SatResult::Sat(Assignment::new(s.value.iter().map(|&v| v == 1).collect()));
        }
        decisions += 1;
        if decisions > budget.max_assignments || (decisions % 4096 == 0 && deadline.passed()) {
            return SatResult::Exhausted;
        }
        levels.push(Level { var: next, trail_pos: s.trail.len(), flipped: false });
        s.assign(code(next as u32, true));
        while !s.propagate() {
            loop {
                let Some(top) = levels.last_mut() else {
                    return SatResult::Unsat;
                };
                if top.flipped {
                    levels.pop();
                    continue;
                }
                top.flipped = true;
                let (var, pos) = (top.var, top.trail_pos);
                s.undo_to(pos);
                s.assign(code(var as u32, false));
                next = var;
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{Clause, Lit};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn contradiction_and_satisfiable() {
        let b = SearchBudget::default();
        let f = Cnf::from_dimacs_clauses(1, &[&[1], &[-1]]).unwrap();
        assert_eq!(dpll_sat(&f, &b), SatResult::Unsat);
        let f = Cnf::from_dimacs_clauses(2, &[&[1, 2]]).unwrap();
        match dpll_sat(&f, &b) {
            SatResult::Sat(a) => assert!(f.eval(&a).unwrap()),
            other => panic!("{other:?}"),
        }
    }

    fn exhaustive_sat(f: &Cnf) -> bool {
        (0..1u64 << f.num_vars()).any(|i| f.eval(&Assignment::from_index(i, f.num_vars())).unwrap())
    }

    #[test]
    fn agrees_with_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let b = SearchBudget::default();
        for _ in 0..2000 {
            let n = rng.gen_range(1..=8usize);
            let k = rng.gen_range(0..=4 * n);
            let clauses = (0..k)
                .map(|_| {
                    let w = rng.gen_range(1..=3usize);
                    Clause::new((0..w).map(|_| Lit::new(rng.gen_range(0..n as u32), rng.gen())).collect())
                })
                .collect();
            let f = Cnf::new(n, clauses).unwrap();
            match dpll_sat(&f, &b) {
                SatResult::Sat(a) => assert!(f.eval(&a).unwrap()),
                SatResult::Unsat => assert!(!exhaustive_sat(&f)),
                SatResult::Exhausted => panic!("budget"),
            }
        }
    }
}
