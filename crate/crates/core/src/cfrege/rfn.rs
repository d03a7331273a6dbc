//! Soundness of Resolution inside Circuit Frege: a proof of
//! `prf(x, y) → ¬sat(y, z)` by induction over the proof lines.
//!
//! Under the hypothesis `prf ∧ sat`, every line `j` gets the fact
//! `T_j = ⋁_{e,i} (y[e][i][j] ∧ z_i^e)`: line `j` contains a literal true
//! under `z`. Axiom lines inherit it from the selected clause of `sat`;
//! resolvents inherit it from a premise, except when the true literal is
//! the pivot, in which case the two premises force `z_i` and `¬z_i`. The
//! last line is empty, which contradicts `T_{m−1}`.

use rustc_hash::FxHashMap;

use super::lemmas::Lemma;
use super::prover::{Fact, Prover};
use super::{CfError, CfProof};
use crate::encoder::reflect::rfn_dag;
use crate::encoder::{symbolic_clauses, ClauseKind, PrfLayout};
use crate::formula::{clause_node, Node, NodeId};

/// Degree of the fitted polynomial bounding the line count of
/// [`cf_prove_rfn_res`] in `m + n + k`. The construction performs
/// `O(m²n + mn² + mnk)` lemma applications and extracts `O(m(m² + n² + k² + mn + nk))`
/// clause facts, so the count is cubic.
pub const RFN_DEGREE: usize = 3;

struct Ctx {
    lay: PrfLayout,
    z: Vec<NodeId>,
    nz: Vec<NodeId>,
}

impl Ctx {
    fn zl(&self, e: usize, i: usize) -> NodeId {
        if e == 1 {
            self.z[i]
        } else {
            self.nz[i]
        }
    }

    fn var(&self, p: &mut Prover, v: usize) -> NodeId {
        p.dag.var(v as u32)
    }

    /// The terms `y[e][i][j] ∧ z_i^e` of `T_j`, `i` ascending, `e = 1, 0`.
    fn t_terms(&self, p: &mut Prover, j: usize) -> Vec<(usize, usize, NodeId)> {
        let mut out = Vec::with_capacity(2 * self.lay.n);
        for i in 0..self.lay.n {
            for e in [1, 0] {
                let y = self.var(p, self.lay.y(e, i, j));
                let t = p.and(y, self.zl(e, i));
                out.push((e, i, t));
            }
        }
        out
    }
}

/// Splits the right-nested conjunction `fact` into `count` facts.
fn split_and(p: &mut Prover, fact: Fact, count: usize) -> Vec<Fact> {
    let mut out = Vec::with_capacity(count);
    let mut cur = fact;
    for _ in 1..count {
        let (a, b) = match p.dag.node(p.formula(cur)) {
            Node::And(a, b) => (a, b),
            _ => unreachable!("conjunction chain"),
        };
        let l = p.axiom(4, &[a, b]);
        out.push(p.mp(l, cur));
        let r = p.axiom(5, &[a, b]);
        cur = p.mp(r, cur);
    }
    out.push(cur);
    out
}

/// Proves `rfn(x, y, z)` for refutations with `m` lines of CNFs with `n`
/// variables and `k` clauses, over the variables of the reflection circuit.
pub fn cf_prove_rfn_res(m: usize, n: usize, k: usize) -> Result<CfProof, CfError> {
    if m == 0 || n == 0 || k == 0 {
        return Err(CfError::Parameter("m, n and k must be at least 1".into()));
    }
    let mut p = Prover::new(0);
    let (lay, parts) = rfn_dag(&mut p.dag, m, n, k).map_err(|e| CfError::Parameter(e.to_string()))?;
    p.set_num_vars(lay.num_vars() + n);
    let z: Vec<NodeId> = (0..n).map(|i| p.dag.var((lay.num_vars() + i) as u32)).collect();
    let nz: Vec<NodeId> = z.iter().map(|&v| p.dag.not(v)).collect();
    let cx = Ctx { lay, z, nz };
    let (prf, sat) = (parts.prf, parts.sat);
    let h = p.and(prf, sat);
    let not_sat = p.not(sat);

    let body = p.deduce(h, |p, hyp| {
        let l4 = p.axiom(4, &[prf, sat]);
        let prf_fact = p.mp(l4, hyp);
        let l5 = p.axiom(5, &[prf, sat]);
        let sat_fact = p.mp(l5, hyp);
        let kinds = symbolic_clauses(&cx.lay);
        let clause_facts = split_and(p, prf_fact, kinds.len());
        let mut clauses: FxHashMap<ClauseKind, Fact> = FxHashMap::default();
        for ((kind, c), f) in kinds.iter().zip(clause_facts) {
            debug_assert_eq!(p.formula(f), clause_node(&mut p.dag, c, 0));
            clauses.insert(*kind, f);
        }
        let q = split_and(p, sat_fact, k);
        let mut last = None;
        let mut t_facts: Vec<Fact> = Vec::with_capacity(m);
        for j in 0..m {
            let t = line_fact(p, &cx, &clauses, &q, &t_facts, j);
            t_facts.push(t);
            last = Some(t);
        }
        let t_last = last.expect("m ≥ 1");
        // The last line is empty: every term of T_{m−1} is refuted.
        let terms = cx.t_terms(p, m - 1);
        let mut cases = Vec::with_capacity(terms.len());
        for &(e, i, _) in &terms {
            let y = cx.var(p, cx.lay.y(e, i, m - 1));
            let ne = clauses[&ClauseKind::LastEmpty { e, i }];
            cases.push(p.apply(Lemma::NotAndFalse, &[y, cx.zl(e, i), not_sat], &[ne]));
        }
        let nodes: Vec<NodeId> = terms.iter().map(|t| t.2).collect();
        let elim = p.or_elim(&nodes, not_sat, &cases);
        p.mp(elim, t_last)
    });
    let res = p.apply(Lemma::Final, &[prf, sat], &[body]);
    if p.formula(res) != parts.root {
        return Err(CfError::WrongConclusion("reflection circuit".into()));
    }
    Ok(p.finish(res))
}

/// `T_j` under the hypothesis, from the facts `T_a` for `a < j`.
fn line_fact(
    p: &mut Prover,
    cx: &Ctx,
    clauses: &FxHashMap<ClauseKind, Fact>,
    q: &[Fact],
    t_prev: &[Fact],
    j: usize,
) -> Fact {
    let lay = &cx.lay;
    let terms = cx.t_terms(p, j);
    let t_nodes: Vec<NodeId> = terms.iter().map(|t| t.2).collect();
    let t = p.dag.or_chain_raw(&t_nodes);
    let intros = p.or_intros(&t_nodes);
    let ax = cx.var(p, lay.ax(j));

    // Axiom case: ax → T_j.
    let s_nodes: Vec<NodeId> = (0..lay.k).map(|l| cx.var(p, lay.s(l, j))).collect();
    let mut s_cases = Vec::with_capacity(lay.k);
    for (l, &s) in s_nodes.iter().enumerate() {
        let s_to_t = p.imp(s, t);
        let mut q_terms = Vec::with_capacity(2 * lay.n);
        let mut q_cases = Vec::with_capacity(2 * lay.n);
        for (idx, &(e, i, _)) in terms.iter().enumerate() {
            let c = cx.var(p, lay.c(e, i, l));
            let zl = cx.zl(e, i);
            let cz = p.and(c, zl);
            let y = cx.var(p, lay.y(e, i, j));
            let incl = clauses[&ClauseKind::Inclusion { j, l, e, i }];
            let step = p.apply(Lemma::Incl, &[s, y, c, zl], &[incl]);
            let lift = p.apply(Lemma::Wk2, &[cz, s, terms[idx].2, t], &[intros[idx]]);
            q_terms.push(cz);
            q_cases.push(p.mp(lift, step));
        }
        let elim = p.or_elim(&q_terms, s_to_t, &q_cases);
        s_cases.push(p.mp(elim, q[l]));
    }
    let s_or = p.dag.or_chain_raw(&s_nodes);
    let s_elim = p.or_elim(&s_nodes, t, &s_cases);
    let alo = clauses[&ClauseKind::AxiomSelect { j }];
    let ax_case = p.apply(Lemma::OrDsImp, &[ax, s_or, t], &[alo, s_elim]);
    if j == 0 {
        let first = clauses[&ClauseKind::FirstIsAxiom];
        return p.mp(ax_case, first);
    }

    // Resolution case: ¬ax → T_j ∨ E1 and ¬ax → T_j ∨ E0.
    let piv: Vec<NodeId> = (0..lay.n).map(|i| cx.var(p, lay.piv(i, j))).collect();
    let e1_terms: Vec<NodeId> = (0..lay.n).map(|i| p.and(piv[i], cx.z[i])).collect();
    let e0_terms: Vec<NodeId> = (0..lay.n).map(|i| p.and(piv[i], cx.nz[i])).collect();
    let e1 = p.dag.or_chain_raw(&e1_terms);
    let e0 = p.dag.or_chain_raw(&e0_terms);
    let mut sides = Vec::with_capacity(2);
    for (left, excuse_e, e_node, e_terms) in [(true, 1, e1, &e1_terms), (false, 0, e0, &e0_terms)] {
        let w = p.or(t, e_node);
        let to_w_t = p.axiom(7, &[t, e_node]);
        let to_w_e = p.axiom(8, &[t, e_node]);
        let e_intros = p.or_intros(e_terms);
        let sel: Vec<NodeId> =
            (0..j).map(|a| cx.var(p, if left { lay.left(a, j) } else { lay.right(a, j) })).collect();
        let mut sel_cases = Vec::with_capacity(j);
        for (a, &sa) in sel.iter().enumerate() {
            let s_to_w = p.imp(sa, w);
            let prev = cx.t_terms(p, a);
            let mut cases = Vec::with_capacity(prev.len());
            for (idx, &(e, i, ta)) in prev.iter().enumerate() {
                let zl = cx.zl(e, i);
                let ya = cx.var(p, lay.y(e, i, a));
                let yj = cx.var(p, lay.y(e, i, j));
                let kind = if left { ClauseKind::LeftCarry { j, a, e, i } } else { ClauseKind::RightCarry { j, a, e, i } };
                let carry = clauses[&kind];
                let to_w_term = p.trans(intros[idx], to_w_t);
                let case = if e == excuse_e {
                    let step = p.apply(Lemma::CarryEx, &[ya, piv[i], sa, yj, zl], &[carry]);
                    // (yj ∧ zl) ∨ (piv ∧ zl) → W
                    let pe = e_terms[i];
                    let pe_to_w = p.trans(e_intros[i], to_w_e);
                    let pair = [terms[idx].2, pe];
                    let pair_or = p.or(pair[0], pair[1]);
                    let join = p.or_elim(&pair, w, &[to_w_term, pe_to_w]);
                    debug_assert_eq!(p.formula(join), p.imp(pair_or, w));
                    let lift = p.apply(Lemma::Wk2, &[ta, sa, pair_or, w], &[join]);
                    p.mp(lift, step)
                } else {
                    let step = p.apply(Lemma::Carry, &[ya, sa, yj, zl], &[carry]);
                    let lift = p.apply(Lemma::Wk2, &[ta, sa, terms[idx].2, w], &[to_w_term]);
                    p.mp(lift, step)
                };
                cases.push(case);
            }
            let nodes: Vec<NodeId> = prev.iter().map(|x| x.2).collect();
            let elim = p.or_elim(&nodes, s_to_w, &cases);
            sel_cases.push(p.mp(elim, t_prev[a]));
        }
        let sel_or = p.dag.or_chain_raw(&sel);
        let sel_elim = p.or_elim(&sel, w, &sel_cases);
        let select = clauses[&if left { ClauseKind::LeftSelect { j } } else { ClauseKind::RightSelect { j } }];
        sides.push(p.apply(Lemma::OrDsPosImp, &[ax, sel_or, w], &[select, sel_elim]));
    }

    // E1 → (E0 → T_j): a pivot cannot be both true and false, and at most
    // one pivot is selected.
    let e0_to_t = p.imp(e0, t);
    let mut outer = Vec::with_capacity(lay.n);
    for i in 0..lay.n {
        let goal = p.imp(e1_terms[i], t);
        let mut inner = Vec::with_capacity(lay.n);
        for i2 in 0..lay.n {
            // e0_{i2} → (e1_i → T)
            let f = if i == i2 {
                p.lemma(Lemma::ZClash, &[piv[i], cx.z[i], t])
            } else {
                let (lo, hi) = (i.min(i2), i.max(i2));
                let amo = clauses[&ClauseKind::PivotUnique { j, i: lo, i2: hi }];
                let zlo = if lo == i { cx.z[lo] } else { cx.nz[lo] };
                let zhi = if hi == i { cx.z[hi] } else { cx.nz[hi] };
                // Antecedent order e1_i, e0_i2; swapped when the higher
                // index comes first.
                let f = p.apply(Lemma::Amo { swapped: i > i2 }, &[piv[lo], piv[hi], zlo, zhi, t], &[amo]);
                p.apply(Lemma::Swap, &[e1_terms[i], e0_terms[i2], t], &[f])
            };
            inner.push(f);
        }
        let elim = p.or_elim(&e0_terms, goal, &inner);
        outer.push(p.apply(Lemma::Swap, &[e0, e1_terms[i], t], &[elim]));
    }
    let clash = p.or_elim(&e1_terms, e0_to_t, &outer);
    let res_case = p.apply(Lemma::Combine, &[ax, t, e1, e0], &[sides[0], sides[1], clash]);
    p.apply(Lemma::Cases, &[ax, t], &[ax_case, res_case])
}
