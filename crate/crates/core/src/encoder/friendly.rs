use rustc_hash::FxHashMap;

use super::prf::symbolic_clauses;
use super::reflect::sat_node;
use super::{build_prf_template, EncodeError, PolyBudget, PrfLayout};
use crate::formula::{cnf_node, Circuit, Cnf, CnfCode, Dag, NodeId, TemplateBit, TemplateCode};

/// Parameters of the strongly friendly disjunction: the inner formula
/// speaks about `m`-line refutations of CNFs with `n` variables and `k`
/// clauses, the outer one about `m_outer`-line refutations of the inner
/// formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FriendlyParams {
    pub n: usize,
    pub k: usize,
    pub m: usize,
    pub m_outer: usize,
}

/// Refuse to build formulas with more clauses than this.
pub const MAX_CLAUSES: usize = 50_000_000;

impl FriendlyParams {
    /// `m = p(n)` and `m_outer = p(m)`.
    pub fn from_budget(n: usize, k: usize, budget: &PolyBudget) -> Result<Self, EncodeError> {
        let m = usize::try_from(budget.p.eval(n as u64)).map_err(|_| EncodeError::Overflow)?.max(1);
        let m_outer = usize::try_from(budget.p.eval(m as u64)).map_err(|_| EncodeError::Overflow)?.max(1);
        Ok(FriendlyParams { n, k, m, m_outer })
    }

    /// Fails before anything is allocated when the outer formula would be
    /// too large.
    fn check_size(&self) -> Result<(PrfLayout, PrfLayout), EncodeError> {
        let inner = PrfLayout::new(self.m, self.n, self.k, false)?;
        let slots = inner.checked_num_clauses().ok_or(EncodeError::Overflow)?;
        let outer = PrfLayout::new(self.m_outer, inner.num_instance_vars(), slots, true)?;
        let bound = outer.checked_num_clauses().ok_or(EncodeError::Overflow)?;
        if bound > MAX_CLAUSES {
            return Err(EncodeError::TooLarge { what: "outer proof formula clauses", size: bound, limit: MAX_CLAUSES });
        }
        Ok((inner, outer))
    }
}

/// `¬prf'(x, T(y)) ∨ ¬sat(T(y), u)`, where `T(y)` is the template code of the
/// inner proof formula as a function of the code `y` of the refuted CNF.
///
/// Inputs: `x = [0, V')` (outer proof), `y = [V', V' + 2nk)`,
/// `u = [V' + 2nk, V' + 2nk + n')` with `n' = V(m, n, k)`.
#[derive(Clone, Debug)]
pub struct StronglyFriendly {
    pub params: FriendlyParams,
    pub template: TemplateCode,
    pub inner: PrfLayout,
    /// Instance layout of the outer proof formula (code bits are `T(y)`).
    pub outer: PrfLayout,
    pub dag: Dag,
    pub d1: NodeId,
    pub d2: NodeId,
    pub root: NodeId,
}

fn template_node(dag: &mut Dag, bit: TemplateBit, y_offset: usize) -> NodeId {
    match bit {
        TemplateBit::Const(b) => dag.konst(b),
        TemplateBit::Ref(q) => dag.var((y_offset + q) as u32),
        TemplateBit::NegRef(q) => {
            let v = dag.var((y_offset + q) as u32);
            dag.not(v)
        }
    }
}

pub fn build_strongly_friendly(params: FriendlyParams) -> Result<StronglyFriendly, EncodeError> {
    let (inner, _) = params.check_size()?;
    let template = build_prf_template(params.m, params.n, params.k)?;
    let (n1, k1) = (template.num_vars(), template.num_clauses());
    let outer_sym = PrfLayout::new(params.m_outer, n1, k1, true)?;
    let outer = PrfLayout { symbolic: false, ..outer_sym };
    let vx = outer.num_instance_vars();
    let y_offset = vx;
    let u_offset = vx + 2 * params.n * params.k;

    let mut dag = Dag::new();
    let clauses: Vec<_> = symbolic_clauses(&outer_sym).into_iter().map(|(_, c)| c).collect();
    let prf_sym = Cnf::new(outer_sym.num_vars(), clauses).expect("in range");
    let prf_node = cnf_node(&mut dag, &prf_sym, 0);
    let mut memo = FxHashMap::default();
    let mut subst = |v: u32, d: &mut Dag| {
        let v = v as usize;
        (v >= vx).then(|| {
            let idx = v - vx;
            template_node(d, template.entries()[idx], y_offset)
        })
    };
    let prf = dag.substitute(prf_node, &mut subst, true, &mut memo);
    let mut bit = |d: &mut Dag, e, i, l| template_node(d, template.entry(e, i, l), y_offset);
    let sat = sat_node(&mut dag, n1, k1, &mut bit, u_offset);
    let d1 = dag.not(prf);
    let d2 = dag.not(sat);
    let root = dag.or(d1, d2);
    Ok(StronglyFriendly { params, template, inner, outer, dag, d1, d2, root })
}

impl StronglyFriendly {
    pub fn num_vars(&self) -> usize {
        self.outer.num_instance_vars() + 2 * self.params.n * self.params.k + self.template.num_vars()
    }

    pub fn circuit(&self) -> Circuit {
        self.dag.to_circuit(self.root, self.num_vars())
    }

    /// The two disjuncts with `y := ⌈ψ⌉`: the first over the outer proof
    /// variables, the second over `u` renumbered from 0.
    pub fn disjuncts_at(&self, psi: &CnfCode) -> Result<(Circuit, Circuit), EncodeError> {
        let (n, k) = (self.params.n, self.params.k);
        if (psi.num_vars(), psi.num_clauses()) != (n, k) {
            return Err(EncodeError::Parameter("code dimensions differ from the template's".into()));
        }
        let vx = self.outer.num_instance_vars();
        let u_offset = vx + 2 * n * k;
        let mut dag = Dag::new();
        let mut fix = |v: u32, d: &mut Dag| {
            let v = v as usize;
            if v >= u_offset {
                Some(d.var((v - u_offset) as u32))
            } else if v >= vx {
                Some(d.konst(psi.bits()[v - vx]))
            } else {
                None
            }
        };
        let mut memo = FxHashMap::default();
        let d1 = dag.transfer(&self.dag, self.d1, &mut fix, &mut memo);
        let d2 = dag.transfer(&self.dag, self.d2, &mut fix, &mut memo);
        let mut fold_memo = FxHashMap::default();
        let d1 = dag.substitute(d1, &mut |_, _| None, true, &mut fold_memo);
        let d2 = dag.substitute(d2, &mut |_, _| None, true, &mut fold_memo);
        Ok((dag.to_circuit(d1, vx), dag.to_circuit(d2, self.template.num_vars())))
    }

    /// The outer proof formula with its code fixed to `T(⌈ψ⌉)`: its
    /// satisfying assignments are the short refutations of the inner
    /// formula for `ψ`.
    pub fn outer_prf_at(&self, psi: &CnfCode) -> Result<Cnf, EncodeError> {
        let code = self.template.instantiate(psi.bits()).map_err(EncodeError::Formula)?;
        super::build_prf(&self.outer, super::PrfCode::Instantiated(&code))
    }
}
