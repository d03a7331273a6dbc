//! Proofs that constant folding preserves meaning: for a circuit `x` with
//! folded form `x'`, facts `x → x'` and `x' → x`.

use rustc_hash::FxHashMap;

use super::lemmas::Lemma;
use super::prover::{Fact, Prover};
use crate::formula::{FoldRule, Node, NodeId};

/// Folded node with forward and backward implications; `None` when folding
/// leaves the node unchanged.
pub(super) type Equiv = Option<(NodeId, Fact, Fact)>;

#[derive(Default)]
pub(super) struct Folder {
    memo: FxHashMap<NodeId, Equiv>,
}

impl Folder {
    /// Folds `root`, returning its folded form and, if it changed, the
    /// implications in both directions.
    pub fn fold(&mut self, p: &mut Prover, root: NodeId) -> (NodeId, Option<(Fact, Fact)>) {
        for id in p.dag.postorder(&[root]) {
            if self.memo.contains_key(&id) {
                continue;
            }
            let e = self.step(p, id);
            self.memo.insert(id, e);
        }
        match self.memo[&root] {
            None => (root, None),
            Some((r, f, b)) => (r, Some((f, b))),
        }
    }

    fn new_of(&self, x: NodeId) -> NodeId {
        self.memo[&x].map_or(x, |(n, _, _)| n)
    }

    /// Forward and backward facts for `x ↔ x'`, identity when unchanged.
    fn both(&self, p: &mut Prover, x: NodeId) -> (Fact, Fact) {
        match self.memo[&x] {
            Some((_, f, b)) => (f, b),
            None => {
                let id = p.lemma(Lemma::Id, &[x]);
                (id, id)
            }
        }
    }

    fn step(&self, p: &mut Prover, id: NodeId) -> Equiv {
        let node = p.dag.node(id);
        let (a, b) = node.children();
        if a.is_none() {
            return None;
        }
        let changed = [a, b].into_iter().flatten().any(|c| self.memo[&c].is_some());
        let mapped = node.map_children(|c| self.new_of(c));
        // Congruence: id ↔ mid.
        let mut acc: Option<(NodeId, Fact, Fact)> = None;
        let mid = if changed {
            let mid = p.dag.mk(mapped);
            let (f, b) = self.congruence(p, node, mapped);
            acc = Some((mid, f, b));
            mid
        } else {
            id
        };
        let (out, rule) = p.dag.fold(mapped);
        if rule == FoldRule::Keep {
            debug_assert_eq!(out, mid);
            return acc;
        }
        let (f2, b2) = rule_facts(p, mapped, out);
        Some(match acc {
            None => (out, f2, b2),
            Some((_, f1, b1)) => {
                let f = p.trans(f1, f2);
                let b = p.trans(b2, b1);
                (out, f, b)
            }
        })
    }

    fn congruence(&self, p: &mut Prover, old: Node, new: Node) -> (Fact, Fact) {
        use Lemma::*;
        match (old, new) {
            (Node::Not(a), Node::Not(a2)) => {
                let (fa, ba) = self.both(p, a);
                let f = p.apply(Contra, &[a2, a], &[ba]);
                let b = p.apply(Contra, &[a, a2], &[fa]);
                (f, b)
            }
            (Node::And(a, b), Node::And(a2, b2)) | (Node::Or(a, b), Node::Or(a2, b2)) => {
                let l = if matches!(old, Node::And(..)) { CongAnd } else { CongOr };
                let (fa, ba) = self.both(p, a);
                let (fb, bb) = self.both(p, b);
                let f = p.apply(l, &[a, b, a2, b2], &[fa, fb]);
                let bk = p.apply(l, &[a2, b2, a, b], &[ba, bb]);
                (f, bk)
            }
            (Node::Imp(a, b), Node::Imp(a2, b2)) => {
                let (fa, ba) = self.both(p, a);
                let (fb, bb) = self.both(p, b);
                let f = p.apply(CongImp, &[a, b, a2, b2], &[ba, fb]);
                let bk = p.apply(CongImp, &[a2, b2, a, b], &[fa, bb]);
                (f, bk)
            }
            _ => unreachable!("congruence on leaves"),
        }
    }
}

/// Facts `x → y` and `y → x` for the single folding step from the gate
/// `node` (whose node id is `x`) to `y`, mirroring [`crate::formula::Dag::fold`].
fn rule_facts(p: &mut Prover, node: Node, y: NodeId) -> (Fact, Fact) {
    use Lemma::*;
    let x = p.dag.mk(node);
    let c = |p: &Prover, v: NodeId| p.dag.const_value(v);
    let to_true = |p: &mut Prover| p.lemma(ToTrue, &[x]);
    match node {
        Node::Not(a) => match c(p, a) {
            Some(true) => (p.lemma(NotTrue, &[]), p.lemma(FromFalse, &[x])),
            _ => {
                // ¬0 ↔ 1
                let nf = p.not_false();
                let back = p.lift(y, nf);
                (to_true(p), back)
            }
        },
        Node::And(a, b) => match (c(p, a), c(p, b)) {
            (Some(false), _) => (p.axiom(4, &[a, b]), p.lemma(FromFalse, &[x])),
            (_, Some(false)) => (p.axiom(5, &[a, b]), p.lemma(FromFalse, &[x])),
            (Some(true), _) => (p.axiom(5, &[a, b]), p.lemma(AndTrueL, &[b])),
            _ => (p.axiom(4, &[a, b]), p.lemma(AndTrueR, &[a])),
        },
        Node::Or(a, b) => match (c(p, a), c(p, b)) {
            (Some(true), _) => (to_true(p), p.axiom(7, &[a, b])),
            (_, Some(true)) => (to_true(p), p.axiom(8, &[a, b])),
            (Some(false), _) => (p.lemma(OrFalseL, &[b]), p.axiom(8, &[a, b])),
            _ => (p.lemma(OrFalseR, &[a]), p.axiom(7, &[a, b])),
        },
        Node::Imp(a, b) => match (c(p, a), c(p, b)) {
            (Some(false), _) => {
                let t = p.konst(true);
                (to_true(p), p.lemma(ImpFromFalse, &[t, b]))
            }
            (_, Some(true)) => (to_true(p), p.axiom(1, &[b, a])),
            (Some(true), _) => (p.lemma(ImpTrueL, &[b]), p.axiom(1, &[b, a])),
            _ => (p.lemma(ImpFalseR, &[a]), p.lemma(ExFalso, &[a, b])),
        },
        Node::Var(_) | Node::Const(_) => unreachable!("leaves do not fold"),
    }
}
