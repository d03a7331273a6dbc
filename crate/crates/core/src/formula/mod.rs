//! Formulas, circuits, CNFs, assignments and formula codes.

mod circuit;
mod cnf;
mod code;
mod dag;
pub mod dimacs;

use thiserror::Error;

pub use circuit::{Circuit, Gate};
pub use cnf::{Assignment, Clause, Cnf, Lit, PartialAssignment};
pub use code::{CnfCode, TemplateBit, TemplateCode};
pub use dag::{Dag, FoldRule, Node, NodeId};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormulaError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("variable {var} out of range for {num_vars} variables (item {clause})")]
    VarOutOfRange { var: usize, num_vars: usize, clause: usize },
    #[error("literal 0 is not a literal")]
    ZeroLiteral,
    #[error("clause {clause} is tautological; strict encoding requires normalized input")]
    NotNormalized { clause: usize },
    #[error("gate {gate} references a gate that does not precede it")]
    ForwardGate { gate: usize },
    #[error("output gate {output} out of range for {size} gates")]
    BadOutput { output: usize, size: usize },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
}

/// The literal `x_v` or `¬x_v` as a dag node, with `v` shifted by `offset`.
pub fn lit_node(dag: &mut Dag, lit: Lit, offset: usize) -> NodeId {
    let v = dag.var(lit.var() + offset as u32);
    if lit.is_positive() {
        v
    } else {
        dag.not(v)
    }
}

/// The circuit of a clause: right-nested disjunction of its literals in
/// stored order; the empty clause is `0`.
pub fn clause_node(dag: &mut Dag, c: &Clause, offset: usize) -> NodeId {
    let lits: Vec<NodeId> = c.iter().map(|l| lit_node(dag, l, offset)).collect();
    dag.or_chain(&lits)
}

/// The circuit of a CNF: right-nested conjunction of its clause circuits;
/// the empty CNF is `1`.
pub fn cnf_node(dag: &mut Dag, f: &Cnf, offset: usize) -> NodeId {
    let clauses: Vec<NodeId> = f.clauses().iter().map(|c| clause_node(dag, c, offset)).collect();
    dag.and_chain(&clauses)
}

impl Circuit {
    /// The circuit of a CNF built clause by clause.
    pub fn from_cnf(f: &Cnf) -> Circuit {
        let mut dag = Dag::new();
        let root = cnf_node(&mut dag, f, 0);
        dag.to_circuit(root, f.num_vars())
    }
}
