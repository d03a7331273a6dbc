//! Proof transformations: substitution, explosion, the satisfaction
//! equivalence and local reflection from reflection.

use rustc_hash::FxHashMap;

use super::fold::Folder;
use super::lemmas::Lemma;
use super::prover::Prover;
use super::{CfError, CfJust, CfLine, CfProof};
use crate::encoder::reflect::{code_var_bits, lrfn_dag, rfn_dag, sat_node};
use crate::encoder::PrfLayout;
use crate::formula::{cnf_node, Assignment, Circuit, Cnf, CnfCode, Dag, NodeId};

/// Substitutes `gammas[i]` for variable `i` in every line. Schema and
/// extension instances stay instances and MP/canonical steps keep their
/// shape, so the result is valid whenever `p` is; the line count is
/// unchanged.
pub fn cf_substitute(p: &CfProof, gammas: &[Circuit]) -> Result<CfProof, CfError> {
    if gammas.len() != p.num_vars {
        return Err(CfError::Arity { expected: p.num_vars, found: gammas.len() });
    }
    let mut dag = Dag::new();
    let images: Vec<NodeId> = gammas.iter().map(|g| dag.import(g)).collect();
    let num_vars = gammas.iter().map(Circuit::num_vars).max().unwrap_or(0);
    let mut out_of_range = None;
    let mut subst = |v: u32, d: &mut Dag| match images.get(v as usize) {
        Some(&x) => Some(x),
        None => {
            out_of_range = Some(v);
            Some(d.var(v))
        }
    };
    let mut memo = FxHashMap::default();
    let mut lines = Vec::with_capacity(p.lines.len());
    for line in &p.lines {
        let formula = dag.transfer(&p.dag, line.formula, &mut subst, &mut memo);
        let mut map = |args: &[NodeId]| -> Vec<NodeId> {
            args.iter().map(|&a| dag.transfer(&p.dag, a, &mut subst, &mut memo)).collect()
        };
        let just = match &line.just {
            CfJust::Schema { id, args } => CfJust::Schema { id: *id, args: map(args) },
            CfJust::Ext { name, args } => CfJust::Ext { name: name.clone(), args: map(args) },
            j => j.clone(),
        };
        lines.push(CfLine { formula, just });
    }
    if let Some(v) = out_of_range {
        return Err(CfError::Arity { expected: p.num_vars, found: v as usize + 1 });
    }
    Ok(CfProof { dag, num_vars, lines })
}

/// From a proof of `α` and an assignment falsifying `α`, a proof of `β`:
/// substitute the assignment, fold the ground conclusion to `0`, and
/// derive `β` from `0`. The extra lines depend only on `size(α)` and
/// `size(β)`.
pub fn cf_explode(p: &CfProof, a: &Assignment, beta: &Circuit) -> Result<CfProof, CfError> {
    let concl = p.conclusion().ok_or(CfError::Empty)?;
    if a.len() < p.num_vars {
        return Err(CfError::Arity { expected: p.num_vars, found: a.len() });
    }
    if p.dag.eval(concl, a.bits()) {
        return Err(CfError::NotFalsifying);
    }
    let consts: Vec<Circuit> = (0..p.num_vars).map(|i| constant(a.get(i))).collect();
    let ground = cf_substitute(p, &consts)?;
    let (mut pr, alpha) = Prover::from_proof(ground);
    let alpha = alpha.ok_or(CfError::Empty)?;
    pr.set_num_vars(beta.num_vars());
    let root = pr.formula(alpha);
    let (folded, eq) = Folder::default().fold(&mut pr, root);
    debug_assert_eq!(pr.dag.const_value(folded), Some(false));
    let bottom = match eq {
        Some((fwd, _)) => pr.mp(fwd, alpha),
        None => alpha,
    };
    let b = pr.dag.import(beta);
    let from_false = pr.lemma(Lemma::FromFalse, &[b]);
    let res = pr.mp(from_false, bottom);
    Ok(pr.finish(res))
}

fn constant(b: bool) -> Circuit {
    Circuit::new(0, vec![crate::formula::Gate::Const(b)], 0).expect("constant circuit")
}

/// Upper bound on the lines of [`cf_prove_sat_equiv`] per code bit
/// (`2nk` bits for `n` variables and `k` clauses), plus a fixed overhead of
/// the same size for the lemma library.
pub const SAT_EQUIV_LINES_PER_BIT: usize = 200;

/// `sat_n(⌈φ⌉, z)` with the code bits of `φ` as unfolded constants, over
/// variables `z = [z_offset, z_offset + n)`.
pub(super) fn coded_sat_node(dag: &mut Dag, phi: &Cnf, z_offset: usize) -> Result<NodeId, CfError> {
    let (n, k) = (phi.num_vars(), phi.num_clauses());
    let code = CnfCode::encode(phi, false)?;
    // Code bits first as fresh variables above everything else, then
    // replaced by constants without folding.
    let base = z_offset + n;
    let mut bits = code_var_bits(n, k, base);
    let sym = sat_node(dag, n, k, &mut bits, z_offset);
    let mut subst = |v: u32, d: &mut Dag| {
        let v = v as usize;
        (v >= base).then(|| {
            d.konst(code.bits()[v - base])
        })
    };
    Ok(dag.substitute(sym, &mut subst, false, &mut FxHashMap::default()))
}

/// Proves `(φ(z) → sat_n(⌈φ⌉, z)) ∧ (sat_n(⌈φ⌉, z) → φ(z))` for the circuit
/// of the CNF `φ` over `z = [0, n)`.
pub fn cf_prove_sat_equiv(phi: &Cnf) -> Result<CfProof, CfError> {
    let mut pr = Prover::new(phi.num_vars());
    let sat = coded_sat_node(&mut pr.dag, phi, 0)?;
    let target = cnf_node(&mut pr.dag, phi, 0);
    let (folded, eq) = Folder::default().fold(&mut pr, sat);
    if folded != target {
        return Err(CfError::WrongConclusion("folded satisfaction circuit differs from the CNF circuit".into()));
    }
    let (fwd, bwd) = match eq {
        Some(fb) => fb,
        None => {
            let id = pr.lemma(Lemma::Id, &[sat]);
            (id, id)
        }
    };
    let (to_sat, from_sat) = (pr.formula(bwd), pr.formula(fwd));
    let and = pr.axiom(6, &[to_sat, from_sat]);
    let res = pr.mps(and, &[bwd, fwd]);
    Ok(pr.finish(res))
}

/// Turns a proof of `rfn(x, y, z)` for `m`-line refutations into a proof of
/// `lrfn_φ(x)`: substitute the code of `φ` for `y` and move `z` next to the
/// proof variables, then fold both sides and glue.
pub fn lrfn_from_rfn(p: &CfProof, m: usize, phi: &Cnf) -> Result<CfProof, CfError> {
    let (n, k) = (phi.num_vars(), phi.num_clauses());
    let lay = PrfLayout::new(m, n, k, true).map_err(|e| CfError::Parameter(e.to_string()))?;
    let v_inst = lay.num_instance_vars();
    let expected = lay.num_vars() + n;
    if p.num_vars != expected {
        return Err(CfError::Arity { expected, found: p.num_vars });
    }
    {
        let mut scratch = p.dag.clone();
        let (_, parts) = rfn_dag(&mut scratch, m, n, k).map_err(|e| CfError::Parameter(e.to_string()))?;
        if p.conclusion() != Some(parts.root) {
            return Err(CfError::WrongConclusion("input does not prove the reflection circuit".into()));
        }
    }
    let code = CnfCode::encode(phi, false)?;
    let gammas: Vec<Circuit> = (0..expected)
        .map(|v| {
            if v < v_inst {
                Circuit::new(v_inst + n, vec![crate::formula::Gate::Var(v as u32)], 0)
            } else if v < lay.num_vars() {
                Ok(constant(code.bits()[v - v_inst]))
            } else {
                Circuit::new(v_inst + n, vec![crate::formula::Gate::Var((v_inst + v - lay.num_vars()) as u32)], 0)
            }
        })
        .collect::<Result<_, _>>()?;
    let sub = cf_substitute(p, &gammas)?;
    let (mut pr, main) = Prover::from_proof(sub);
    let main = main.ok_or(CfError::Empty)?;
    pr.set_num_vars(v_inst + n);
    let (prf1, sat1) = match pr.dag.node(pr.formula(main)) {
        crate::formula::Node::Imp(a, b) => match pr.dag.node(b) {
            crate::formula::Node::Not(s) => (a, s),
            _ => unreachable!("reflection shape"),
        },
        _ => unreachable!("reflection shape"),
    };
    let mut folder = Folder::default();
    let (prf2, eq_prf) = folder.fold(&mut pr, prf1);
    let (sat2, eq_sat) = folder.fold(&mut pr, sat1);
    let back = |pr: &mut Prover, x: NodeId, eq: Option<(super::Fact, super::Fact)>| match eq {
        Some((_, b)) => b,
        None => pr.lemma(Lemma::Id, &[x]),
    };
    let bp = back(&mut pr, prf1, eq_prf);
    let bs = back(&mut pr, sat1, eq_sat);
    let res = pr.apply(Lemma::LrfnGlue, &[prf1, sat1, prf2, sat2], &[main, bp, bs]);
    let (_, target) = lrfn_dag(&mut pr.dag, phi, m).map_err(|e| CfError::Parameter(e.to_string()))?;
    if pr.formula(res) != target {
        return Err(CfError::WrongConclusion("glued formula differs from the local reflection circuit".into()));
    }
    Ok(pr.finish(res))
}
