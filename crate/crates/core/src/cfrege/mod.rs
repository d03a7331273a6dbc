//! A Circuit Frege kernel and proof generators.
//!
//! Proofs are lines of circuits in one shared hash-consed [`Dag`]; each line
//! is an instance of a basis schema or of a declared extension schema,
//! follows by modus ponens, or has the canonical form of an earlier line.
//!
//! Basis (metavariables `p, q, r`):
//! 1. `p→(q→p)`
//! 2. `(p→(q→r))→((p→q)→(p→r))`
//! 3. `(¬p→¬q)→(q→p)`
//! 4. `p∧q→p`  5. `p∧q→q`  6. `p→(q→p∧q)`
//! 7. `p→p∨q`  8. `q→p∨q`  9. `(p→r)→((q→r)→(p∨q→r))`
//! 10. `1` and `¬0`

mod fold;
mod kernel;
mod lemmas;
mod ops;
mod prover;
mod rfn;
mod text;

use rustc_hash::FxHashMap;
use thiserror::Error;

use crate::formula::{Circuit, Dag, FormulaError, Gate, Node, NodeId};

pub use kernel::{cf_check, schema_shape, CfInvalid, CfReport, Canonizer, SCHEMA_ARITY};
pub use lemmas::Lemma;
pub use ops::{cf_explode, cf_prove_sat_equiv, cf_substitute, lrfn_from_rfn, SAT_EQUIV_LINES_PER_BIT};
pub use prover::{Fact, Prover};
pub use rfn::{cf_prove_rfn_res, RFN_DEGREE};
pub use text::{emit, parse};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CfError {
    #[error("arity mismatch: expected {expected} circuits, got {found}")]
    Arity { expected: usize, found: usize },
    #[error("the assignment does not falsify the proven formula")]
    NotFalsifying,
    #[error("the proof does not prove the expected formula: {0}")]
    WrongConclusion(String),
    #[error("invalid parameters: {0}")]
    Parameter(String),
    #[error("the proof is empty")]
    Empty,
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Formula(#[from] FormulaError),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CfJust {
    /// Basis schema `id` with its metavariables in order `p, q, r`.
    Schema { id: u8, args: Vec<NodeId> },
    /// Instance of a declared extension schema.
    Ext { name: String, args: Vec<NodeId> },
    /// From `j₁ : A → B` and `j₂ : A`.
    Mp(usize, usize),
    /// Same canonical form as line `j`.
    Canon(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CfLine {
    pub formula: NodeId,
    pub just: CfJust,
}

/// A Circuit Frege proof over object variables `0..num_vars`; it proves the
/// formula of its last line.
#[derive(Clone, Debug, Default)]
pub struct CfProof {
    pub dag: Dag,
    pub num_vars: usize,
    pub lines: Vec<CfLine>,
}

impl CfProof {
    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn conclusion(&self) -> Option<NodeId> {
        self.lines.last().map(|l| l.formula)
    }

    pub fn conclusion_circuit(&self) -> Option<Circuit> {
        self.conclusion().map(|c| self.dag.to_circuit(c, self.num_vars))
    }

    fn roots(&self) -> Vec<NodeId> {
        let mut roots = Vec::new();
        for line in &self.lines {
            roots.push(line.formula);
            if let CfJust::Schema { args, .. } | CfJust::Ext { args, .. } = &line.just {
                roots.extend(args.iter().copied());
            }
        }
        roots
    }

    /// Distinct gates reachable from the lines.
    pub fn gate_count(&self) -> usize {
        let roots: Vec<NodeId> = self.roots().into_iter().filter(|r| r.index() < self.dag.len()).collect();
        self.dag.postorder(&roots).len()
    }

    /// Lines plus gates: the size measure used for growth fits.
    pub fn size(&self) -> usize {
        self.lines.len() + self.gate_count()
    }
}

/// An extension axiom schema: every variable of `template` is a
/// metavariable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtSchema {
    pub name: String,
    pub template: Circuit,
}

impl ExtSchema {
    pub fn arity(&self) -> usize {
        self.template.num_vars()
    }

    fn instantiate(&self, mk: &mut dyn FnMut(Node) -> Option<NodeId>, args: &[NodeId]) -> Option<NodeId> {
        if args.len() != self.arity() {
            return None;
        }
        let mut ids: Vec<NodeId> = Vec::with_capacity(self.template.size());
        for g in self.template.gates() {
            let p = |i: u32| ids[i as usize];
            let id = match *g {
                Gate::Var(v) => args[v as usize],
                Gate::Const(b) => mk(Node::Const(b))?,
                Gate::Not(a) => mk(Node::Not(p(a)))?,
                Gate::And(a, b) => mk(Node::And(p(a), p(b)))?,
                Gate::Or(a, b) => mk(Node::Or(p(a), p(b)))?,
                Gate::Imp(a, b) => mk(Node::Imp(p(a), p(b)))?,
            };
            ids.push(id);
        }
        Some(ids[self.template.output()])
    }

    /// The instance with `args`, if all its gates exist in `dag`.
    pub fn instance_in(&self, dag: &Dag, args: &[NodeId]) -> Option<NodeId> {
        self.instantiate(&mut |n| dag.find(n), args)
    }

    pub fn build(&self, dag: &mut Dag, args: &[NodeId]) -> Option<NodeId> {
        self.instantiate(&mut |n| Some(dag.mk(n)), args)
    }
}

/// A declared set of extension schemas, possibly unsound.
#[derive(Clone, Debug, Default)]
pub struct SchemaSet {
    schemas: FxHashMap<String, ExtSchema>,
}

impl SchemaSet {
    pub fn new(schemas: Vec<ExtSchema>) -> Self {
        SchemaSet { schemas: schemas.into_iter().map(|s| (s.name.clone(), s)).collect() }
    }

    pub fn get(&self, name: &str) -> Option<&ExtSchema> {
        self.schemas.get(name)
    }
}
