//! The formula families: proof formulas, satisfaction, reflection, local
//! reflection, consistency, the reduction `φ ↦ ρ_{φ,m}`, PHP,
//! Clique-Coloring and the strongly friendly disjunction.
//!
//! Everything is refutation-oriented: a proof formula says "x is a
//! refutation of the coded CNF", and the reflection principles are
//! rendered as tautological circuits over that reading.

mod am;
mod families;
mod friendly;
mod layout;
mod prf;
pub mod reflect;

use serde::Serialize;
use thiserror::Error;

use crate::formula::{dimacs, Circuit, Cnf, CnfCode, Dag, FormulaError};

pub use am::{am_reduce, code_size, Poly, PolyBudget};
pub use families::{build_clique_color, build_php, CliqueColor};
pub use friendly::{build_strongly_friendly, FriendlyParams, StronglyFriendly, MAX_CLAUSES};
pub use layout::{render_var_map, PrfLayout};
pub use prf::{
    build_prf, build_prf_template, decode_prf_assignment, prf_clauses, symbolic_clauses, ClauseKind, DecodeError,
    PrfCode,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EncodeError {
    #[error("invalid parameters: {0}")]
    Parameter(String),
    #[error("parameters overflow the variable or clause count")]
    Overflow,
    #[error("{what} would be {size}, above the limit {limit}")]
    TooLarge { what: &'static str, size: usize, limit: usize },
    #[error(transparent)]
    Formula(#[from] FormulaError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Formula {
    Cnf(Cnf),
    Circuit(Circuit),
}

/// A built formula with its provenance and variable map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EncodingArtifact {
    pub family: String,
    pub params: Vec<(String, usize)>,
    #[serde(skip)]
    pub formula: Formula,
    pub layout: Option<PrfLayout>,
    #[serde(skip)]
    pub var_map: Vec<(&'static str, String, usize)>,
}

impl EncodingArtifact {
    pub fn new(
        family: &str,
        params: Vec<(&str, usize)>,
        formula: Formula,
        layout: Option<PrfLayout>,
        var_map: Vec<(&'static str, String, usize)>,
    ) -> Self {
        EncodingArtifact {
            family: family.into(),
            params: params.into_iter().map(|(k, v)| (k.into(), v)).collect(),
            formula,
            layout,
            var_map,
        }
    }

    pub fn param(&self, name: &str) -> Option<usize> {
        self.params.iter().find(|(k, _)| k == name).map(|&(_, v)| v)
    }

    pub fn num_vars(&self) -> usize {
        match &self.formula {
            Formula::Cnf(f) => f.num_vars(),
            Formula::Circuit(c) => c.num_vars(),
        }
    }

    pub fn cnf(&self) -> Option<&Cnf> {
        match &self.formula {
            Formula::Cnf(f) => Some(f),
            Formula::Circuit(_) => None,
        }
    }

    pub fn circuit(&self) -> Option<&Circuit> {
        match &self.formula {
            Formula::Circuit(c) => Some(c),
            Formula::Cnf(_) => None,
        }
    }

    /// DIMACS for CNFs, the gate list for circuits.
    pub fn render(&self) -> String {
        match &self.formula {
            Formula::Cnf(f) => dimacs::emit(f),
            Formula::Circuit(c) => c.to_gate_list(),
        }
    }

    pub fn render_var_map(&self) -> String {
        render_var_map(&self.var_map)
    }
}

fn block(name: &'static str, prefix: &str, offset: usize, len: usize) -> Vec<(&'static str, String, usize)> {
    (0..len).map(|i| (name, format!("{prefix}[{i}]"), offset + i)).collect()
}

fn code_block(n: usize, k: usize, offset: usize) -> Vec<(&'static str, String, usize)> {
    let mut out = Vec::new();
    for e in 0..2 {
        for i in 0..n {
            for l in 0..k {
                out.push(("code", format!("c[{e}][{i}][{l}]"), offset + CnfCode::bit_index(n, k, e, i, l)));
            }
        }
    }
    out.sort_by_key(|t| t.2);
    out
}

/// The proof formula as a CNF; symbolic when `code` is `None`.
pub fn build_prf_artifact(m: usize, n: usize, k: usize, code: Option<&CnfCode>) -> Result<EncodingArtifact, EncodeError> {
    let lay = PrfLayout::new(m, n, k, code.is_none())?;
    let f = match code {
        None => build_prf(&lay, PrfCode::Symbolic)?,
        Some(c) => build_prf(&lay, PrfCode::Instantiated(c))?,
    };
    Ok(EncodingArtifact::new("prf", vec![("m", m), ("n", n), ("k", k)], Formula::Cnf(f), Some(lay), lay.var_map()))
}

/// `sat(y, z)` over code `y = [0, 2nk)` and assignment `z = [2nk, 2nk + n)`.
pub fn build_sat(n: usize, k: usize) -> Result<EncodingArtifact, EncodeError> {
    let mut dag = Dag::new();
    let mut bits = reflect::code_var_bits(n, k, 0);
    let root = reflect::sat_node(&mut dag, n, k, &mut bits, 2 * n * k);
    let nv = 2 * n * k + n;
    let mut map = code_block(n, k, 0);
    map.extend(block("assignment", "z", 2 * n * k, n));
    Ok(EncodingArtifact::new("sat", vec![("n", n), ("k", k)], Formula::Circuit(dag.to_circuit(root, nv)), None, map))
}

pub fn build_rfn(m: usize, n: usize, k: usize) -> Result<EncodingArtifact, EncodeError> {
    let mut dag = Dag::new();
    let (lay, parts) = reflect::rfn_dag(&mut dag, m, n, k)?;
    let nv = lay.num_vars() + n;
    let mut map = lay.var_map();
    map.extend(block("assignment", "z", lay.num_vars(), n));
    let c = dag.to_circuit(parts.root, nv);
    Ok(EncodingArtifact::new("rfn", vec![("m", m), ("n", n), ("k", k)], Formula::Circuit(c), Some(lay), map))
}

pub fn build_lrfn(phi: &Cnf, m: usize) -> Result<EncodingArtifact, EncodeError> {
    let mut dag = Dag::new();
    let (lay, root) = reflect::lrfn_dag(&mut dag, phi, m)?;
    let nv = lay.num_vars() + phi.num_vars();
    let mut map = lay.var_map();
    map.extend(block("assignment", "z", lay.num_vars(), phi.num_vars()));
    let c = dag.to_circuit(root, nv);
    let params = vec![("m", m), ("n", phi.num_vars()), ("k", phi.num_clauses())];
    Ok(EncodingArtifact::new("lrfn", params, Formula::Circuit(c), Some(lay), map))
}

pub fn build_con(m: usize, n: usize) -> Result<EncodingArtifact, EncodeError> {
    let mut dag = Dag::new();
    let (lay, root) = reflect::con_dag(&mut dag, m, n)?;
    let c = dag.to_circuit(root, lay.num_vars());
    Ok(EncodingArtifact::new("con", vec![("m", m), ("n", n)], Formula::Circuit(c), Some(lay), lay.var_map()))
}

pub fn build_strongly_friendly_artifact(params: FriendlyParams) -> Result<EncodingArtifact, EncodeError> {
    let sf = build_strongly_friendly(params)?;
    let vx = sf.outer.num_instance_vars();
    let mut map: Vec<_> = sf.outer.var_map().into_iter().map(|(b, name, i)| (b, format!("outer.{name}"), i)).collect();
    map.extend(code_block(params.n, params.k, vx));
    map.extend(block("inner-assignment", "u", vx + 2 * params.n * params.k, sf.template.num_vars()));
    let p = vec![("n", params.n), ("k", params.k), ("m", params.m), ("m_outer", params.m_outer)];
    Ok(EncodingArtifact::new("strongly-friendly", p, Formula::Circuit(sf.circuit()), Some(sf.outer), map))
}
