//! Satisfaction, reflection, local reflection and consistency circuits.

use super::{build_prf, EncodeError, PrfCode, PrfLayout};
use crate::formula::{cnf_node, Cnf, CnfCode, Dag, NodeId};

/// `⋁_{i, e} (bit(e, i, l) ∧ z_i^e)` over `i` ascending and `e = 1, 0`,
/// where `z_i^1 = z_i` and `z_i^0 = ¬z_i`. Terms are folded, so constant
/// bits give exactly the circuit of the coded clause.
pub fn clause_sat_node(
    dag: &mut Dag,
    n: usize,
    l: usize,
    bit: &mut dyn FnMut(&mut Dag, usize, usize, usize) -> NodeId,
    z_offset: usize,
) -> NodeId {
    let mut terms = Vec::with_capacity(2 * n);
    for i in 0..n {
        for e in [1, 0] {
            let b = bit(dag, e, i, l);
            let z = dag.var((z_offset + i) as u32);
            let zl = if e == 1 { z } else { dag.not(z) };
            terms.push(dag.s_and(b, zl));
        }
    }
    dag.or_chain(&terms)
}

/// `sat(y, z)`: every coded clause has a literal true under `z`.
pub fn sat_node(
    dag: &mut Dag,
    n: usize,
    k: usize,
    bit: &mut dyn FnMut(&mut Dag, usize, usize, usize) -> NodeId,
    z_offset: usize,
) -> NodeId {
    let clauses: Vec<NodeId> = (0..k).map(|l| clause_sat_node(dag, n, l, bit, z_offset)).collect();
    dag.and_chain(&clauses)
}

/// Code bits as variables starting at `offset`, in code order.
pub fn code_var_bits(n: usize, k: usize, offset: usize) -> impl FnMut(&mut Dag, usize, usize, usize) -> NodeId {
    move |dag, e, i, l| dag.var((offset + CnfCode::bit_index(n, k, e, i, l)) as u32)
}

/// Code bits as constants.
pub fn code_const_bits(code: &CnfCode) -> impl FnMut(&mut Dag, usize, usize, usize) -> NodeId + '_ {
    move |dag, e, i, l| dag.konst(code.get(e, i, l))
}

/// The parts of the reflection circuit `prf(x, y) → ¬sat(y, z)`.
#[derive(Clone, Copy, Debug)]
pub struct RfnParts {
    pub prf: NodeId,
    pub sat: NodeId,
    pub root: NodeId,
}

/// Reflection for `m`-line refutations of CNFs with `n` variables and `k`
/// clauses. Inputs: proof variables `x = [0, V)`, code `y = [V, V + 2nk)`,
/// assignment `z = [V + 2nk, V + 2nk + n)`.
pub fn rfn_dag(dag: &mut Dag, m: usize, n: usize, k: usize) -> Result<(PrfLayout, RfnParts), EncodeError> {
    let lay = PrfLayout::new(m, n, k, true)?;
    let prf = cnf_node(dag, &build_prf(&lay, PrfCode::Symbolic)?, 0);
    let mut bits = code_var_bits(n, k, lay.num_instance_vars());
    let sat = sat_node(dag, n, k, &mut bits, lay.num_vars());
    let not_sat = dag.not(sat);
    let root = dag.imp(prf, not_sat);
    Ok((lay, RfnParts { prf, sat, root }))
}

/// Local reflection `¬prf(x, ⌈φ⌉) ∨ ¬φ(z)`: inputs `x = [0, V)`, `z = [V, V + n)`.
pub fn lrfn_dag(dag: &mut Dag, phi: &Cnf, m: usize) -> Result<(PrfLayout, NodeId), EncodeError> {
    let code = CnfCode::encode(phi, false).map_err(EncodeError::Formula)?;
    let lay = PrfLayout::new(m, phi.num_vars(), phi.num_clauses(), false)?;
    let prf = cnf_node(dag, &build_prf(&lay, PrfCode::Instantiated(&code))?, 0);
    let holds = cnf_node(dag, phi, lay.num_instance_vars());
    let (a, b) = (dag.not(prf), dag.not(holds));
    Ok((lay, dag.or(a, b)))
}

/// Consistency `¬prf(x, ⌈∅⌉)` for the empty CNF over `n` variables.
pub fn con_dag(dag: &mut Dag, m: usize, n: usize) -> Result<(PrfLayout, NodeId), EncodeError> {
    let lay = PrfLayout::new(m, n, 0, false)?;
    let code = CnfCode::zeros(n, 0);
    let prf = cnf_node(dag, &build_prf(&lay, PrfCode::Instantiated(&code))?, 0);
    Ok((lay, dag.not(prf)))
}
