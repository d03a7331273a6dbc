use std::fmt;

use rustc_hash::FxHashMap;
use serde::Serialize;

use super::{CfJust, CfProof, SchemaSet};
use crate::formula::{Dag, Node, NodeId};

/// Number of metavariables of each basis schema (index = schema id).
pub const SCHEMA_ARITY: [usize; 11] = [0, 2, 3, 2, 2, 2, 2, 2, 2, 3, 0];

/// Builds (or, with a lookup-only `mk`, finds) the instance of basis schema
/// `id` with metavariables `args`. Schema 10 has two shapes; `alt` selects
/// `¬0` instead of `1`.
pub fn schema_shape(id: u8, args: &[NodeId], alt: bool, mk: &mut dyn FnMut(Node) -> Option<NodeId>) -> Option<NodeId> {
    use Node::*;
    if SCHEMA_ARITY.get(id as usize).copied() != Some(args.len()) || id == 0 {
        return None;
    }
    let p = args.first().copied();
    let q = args.get(1).copied();
    let r = args.get(2).copied();
    match id {
        1 => {
            let (p, q) = (p?, q?);
            let qp = mk(Imp(q, p))?;
            mk(Imp(p, qp))
        }
        2 => {
            let (p, q, r) = (p?, q?, r?);
            let qr = mk(Imp(q, r))?;
            let pqr = mk(Imp(p, qr))?;
            let pq = mk(Imp(p, q))?;
            let pr = mk(Imp(p, r))?;
            let right = mk(Imp(pq, pr))?;
            mk(Imp(pqr, right))
        }
        3 => {
            let (p, q) = (p?, q?);
            let np = mk(Not(p))?;
            let nq = mk(Not(q))?;
            let l = mk(Imp(np, nq))?;
            let rr = mk(Imp(q, p))?;
            mk(Imp(l, rr))
        }
        4 | 5 => {
            let (p, q) = (p?, q?);
            let pq = mk(And(p, q))?;
            mk(Imp(pq, if id == 4 { p } else { q }))
        }
        6 => {
            let (p, q) = (p?, q?);
            let pq = mk(And(p, q))?;
            let qpq = mk(Imp(q, pq))?;
            mk(Imp(p, qpq))
        }
        7 | 8 => {
            let (p, q) = (p?, q?);
            let pq = mk(Or(p, q))?;
            mk(Imp(if id == 7 { p } else { q }, pq))
        }
        9 => {
            let (p, q, r) = (p?, q?, r?);
            let pr = mk(Imp(p, r))?;
            let qr = mk(Imp(q, r))?;
            let pq = mk(Or(p, q))?;
            let pqr = mk(Imp(pq, r))?;
            let inner = mk(Imp(qr, pqr))?;
            mk(Imp(pr, inner))
        }
        10 => {
            if alt {
                let f = mk(Const(false))?;
                mk(Not(f))
            } else {
                mk(Const(true))
            }
        }
        _ => None,
    }
}

/// Canonical forms: a hash-consed table in which the children of `∧` and
/// `∨` are ordered. Equal canonical ids imply equal formulas up to
/// commutativity, so they are sound for the canonicalization rule.
#[derive(Debug, Default)]
pub struct Canonizer {
    table: FxHashMap<(u8, u32, u32), u32>,
    memo: FxHashMap<NodeId, u32>,
}

impl Canonizer {
    fn key(node: Node, c: &dyn Fn(NodeId) -> u32) -> (u8, u32, u32) {
        match node {
            Node::Var(v) => (0, v, 0),
            Node::Const(b) => (1, u32::from(b), 0),
            Node::Not(a) => (2, c(a), 0),
            Node::And(a, b) => {
                let (x, y) = (c(a), c(b));
                (3, x.min(y), x.max(y))
            }
            Node::Or(a, b) => {
                let (x, y) = (c(a), c(b));
                (4, x.min(y), x.max(y))
            }
            Node::Imp(a, b) => (5, c(a), c(b)),
        }
    }

    pub fn canon(&mut self, dag: &Dag, root: NodeId) -> u32 {
        if let Some(&c) = self.memo.get(&root) {
            return c;
        }
        let mut stack = vec![(root, false)];
        while let Some((id, expanded)) = stack.pop() {
            if self.memo.contains_key(&id) {
                continue;
            }
            let node = dag.node(id);
            if !expanded {
                stack.push((id, true));
                let (a, b) = node.children();
                for ch in [a, b].into_iter().flatten() {
                    if !self.memo.contains_key(&ch) {
                        stack.push((ch, false));
                    }
                }
                continue;
            }
            let memo = &self.memo;
            let key = Self::key(node, &|x| memo[&x]);
            let next = self.table.len() as u32;
            let c = *self.table.entry(key).or_insert(next);
            self.memo.insert(id, c);
        }
        self.memo[&root]
    }

    /// Canonical id of `a → b` if it exists.
    fn imp_of(&mut self, dag: &Dag, a: NodeId, b: NodeId) -> Option<u32> {
        let (x, y) = (self.canon(dag, a), self.canon(dag, b));
        self.table.get(&(5, x, y)).copied()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CfInvalid {
    pub line: usize,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CfReport {
    pub invalid: Option<CfInvalid>,
    pub lines: usize,
    /// Distinct gates reachable from the proof's formulas.
    pub gates: usize,
}

impl CfReport {
    pub fn is_valid(&self) -> bool {
        self.invalid.is_none()
    }
}

impl fmt::Display for CfReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.invalid {
            None => write!(f, "valid ({} lines, {} gates)", self.lines, self.gates),
            Some(e) => write!(f, "invalid at line {}: {} ({} lines)", e.line, e.reason, self.lines),
        }
    }
}

/// Checks every line against the basis schemas, the extension schemas
/// `ext`, modus ponens and the canonicalization rule.
pub fn cf_check(p: &CfProof, ext: &SchemaSet) -> CfReport {
    let gates = p.gate_count();
    let mut canon = Canonizer::default();
    let dag = &p.dag;
    let mut find = |n: Node| dag.find(n);
    let invalid = |line: usize, reason: &str| Some(CfInvalid { line, reason: reason.into() });
    let mut bad = None;
    for (j, line) in p.lines.iter().enumerate() {
        let f = line.formula;
        if f.index() >= dag.len() {
            bad = invalid(j, "formula outside the gate table");
            break;
        }
        let ok = match &line.just {
            CfJust::Schema { id, args } => {
                if *id == 0 || *id as usize >= SCHEMA_ARITY.len() || SCHEMA_ARITY[*id as usize] != args.len() {
                    bad = invalid(j, "unknown schema or wrong arity");
                    break;
                }
                schema_shape(*id, args, false, &mut find) == Some(f)
                    || (*id == 10 && schema_shape(*id, args, true, &mut find) == Some(f))
            }
            CfJust::Ext { name, args } => match ext.get(name) {
                None => {
                    bad = invalid(j, "unknown extension schema");
                    break;
                }
                Some(s) => s.instance_in(dag, args) == Some(f),
            },
            CfJust::Mp(a, b) => {
                if *a >= j || *b >= j {
                    bad = invalid(j, "forward reference");
                    break;
                }
                let (fa, fb) = (p.lines[*a].formula, p.lines[*b].formula);
                dag.find(Node::Imp(fb, f)) == Some(fa) || canon.imp_of(dag, fb, f) == Some(canon.canon(dag, fa))
            }
            CfJust::Canon(a) => {
                if *a >= j {
                    bad = invalid(j, "forward reference");
                    break;
                }
                canon.canon(dag, p.lines[*a].formula) == canon.canon(dag, f)
            }
        };
        if !ok {
            let reason = match line.just {
                CfJust::Schema { .. } => "schema mismatch",
                CfJust::Ext { .. } => "extension schema mismatch",
                CfJust::Mp(..) => "MP shape",
                CfJust::Canon(_) => "canonical forms differ",
            };
            bad = invalid(j, reason);
            break;
        }
    }
    CfReport { invalid: bad, lines: p.lines.len(), gates }
}
