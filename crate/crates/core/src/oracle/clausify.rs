use crate::formula::{Circuit, Clause, Cnf, Gate, Lit};

/// Definitional clausification of `¬c`: one fresh variable `n + g` per gate,
/// clauses forcing it to equal the gate, and a unit asserting the output
/// false. Satisfiable iff `c` is not a tautology (equisatisfiable, not
/// equivalent).
pub fn clausify_negation(c: &Circuit) -> Cnf {
    let n = c.num_vars();
    let g = |i: u32| Lit::pos(n as u32 + i);
    let mut clauses = Vec::new();
    let mut add = |lits: Vec<Lit>| clauses.push(Clause::new(lits));
    for (i, gate) in c.gates().iter().enumerate() {
        let o = g(i as u32);
        match *gate {
            Gate::Var(k) => {
                let x = Lit::pos(k);
                add(vec![o.negated(), x]);
                add(vec![o, x.negated()]);
            }
            Gate::Const(b) => add(vec![if b { o } else { o.negated() }]),
            Gate::Not(a) => {
                let a = g(a);
                add(vec![o, a]);
                add(vec![o.negated(), a.negated()]);
            }
            Gate::And(a, b) => {
                let (a, b) = (g(a), g(b));
                add(vec![o.negated(), a]);
                add(vec![o.negated(), b]);
                add(vec![o, a.negated(), b.negated()]);
            }
            Gate::Or(a, b) => {
                let (a, b) = (g(a), g(b));
                add(vec![o, a.negated()]);
                add(vec![o, b.negated()]);
                add(vec![o.negated(), a, b]);
            }
            Gate::Imp(a, b) => {
                let (a, b) = (g(a), g(b));
                add(vec![o, a]);
                add(vec![o, b.negated()]);
                add(vec![o.negated(), a.negated(), b]);
            }
        }
    }
    add(vec![g(c.output() as u32).negated()]);
    Cnf::new(n + c.size(), clauses).expect("definition variables are in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::Dag;
    use crate::oracle::{dpll_sat, is_tautology, SearchBudget};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Tautology by enumeration agrees with unsatisfiability of the
    /// clausified negation on random circuits.
    #[test]
    fn clausification_cross_check() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let b = SearchBudget::default();
        for round in 0..400 {
            let n = rng.gen_range(1..=6u32);
            let mut d = Dag::new();
            let mut pool: Vec<_> = (0..n).map(|i| d.var(i)).collect();
            pool.push(d.konst(round % 2 == 0));
            for _ in 0..rng.gen_range(1..12) {
                let a = pool[rng.gen_range(0..pool.len())];
                let c = pool[rng.gen_range(0..pool.len())];
                let node = match rng.gen_range(0..4) {
                    0 => d.not(a),
                    1 => d.and(a, c),
                    2 => d.or(a, c),
                    _ => d.imp(a, c),
                };
                pool.push(node);
            }
            // Bias towards tautologies by closing with x ∨ ¬x sometimes.
            let mut root = *pool.last().unwrap();
            if round % 3 == 0 {
                let nr = d.not(root);
                root = d.or(root, nr);
            }
            let c = d.to_circuit(root, n as usize);
            let taut = is_tautology(&c, &b).is_yes();
            assert_eq!(taut, dpll_sat(&clausify_negation(&c), &b).is_unsat());
        }
    }
}
