//! Hash-consed circuit arena.
//!
//! Structurally identical subcircuits share one node, so circuits built in a
//! [`Dag`] are compared by id. Every circuit family in the crate is built
//! here and exported to a standalone [`Circuit`] at the boundary.

use rustc_hash::FxHashMap;

use super::{Circuit, Gate};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub u32);

impl NodeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    Var(u32),
    Const(bool),
    Not(NodeId),
    And(NodeId, NodeId),
    Or(NodeId, NodeId),
    Imp(NodeId, NodeId),
}

impl Node {
    pub fn children(self) -> (Option<NodeId>, Option<NodeId>) {
        match self {
            Node::Var(_) | Node::Const(_) => (None, None),
            Node::Not(a) => (Some(a), None),
            Node::And(a, b) | Node::Or(a, b) | Node::Imp(a, b) => (Some(a), Some(b)),
        }
    }

    pub fn map_children(self, mut f: impl FnMut(NodeId) -> NodeId) -> Node {
        match self {
            Node::Var(_) | Node::Const(_) => self,
            Node::Not(a) => Node::Not(f(a)),
            Node::And(a, b) => Node::And(f(a), f(b)),
            Node::Or(a, b) => Node::Or(f(a), f(b)),
            Node::Imp(a, b) => Node::Imp(f(a), f(b)),
        }
    }
}

/// Which constant-folding rule a smart constructor applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FoldRule {
    /// No rule applied; the gate was built as is.
    Keep,
    /// `¬c` for a constant `c`.
    NotConst,
    /// A constant operand absorbed the gate (`0∧x`, `1∨x`, `0→x`, `x→1`, ...).
    Absorb,
    /// A neutral constant operand was dropped (`1∧x`, `0∨x`, `1→x`, ...).
    Neutral,
    /// `x→0` rewritten to `¬x`.
    ImpFalse,
}

#[derive(Clone, Debug, Default)]
pub struct Dag {
    nodes: Vec<Node>,
    index: FxHashMap<Node, NodeId>,
}

impl Dag {
    pub fn new() -> Self {
        Dag::default()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, id: NodeId) -> Node {
        self.nodes[id.index()]
    }

    pub fn mk(&mut self, node: Node) -> NodeId {
        if let Some(&id) = self.index.get(&node) {
            return id;
        }
        let id = NodeId(u32::try_from(self.nodes.len()).expect("dag exceeds u32 nodes"));
        self.nodes.push(node);
        self.index.insert(node, id);
        id
    }

    /// Looks a node up without inserting it.
    pub fn find(&self, node: Node) -> Option<NodeId> {
        self.index.get(&node).copied()
    }

    pub fn var(&mut self, i: u32) -> NodeId {
        self.mk(Node::Var(i))
    }

    pub fn konst(&mut self, b: bool) -> NodeId {
        self.mk(Node::Const(b))
    }

    pub fn not(&mut self, a: NodeId) -> NodeId {
        self.mk(Node::Not(a))
    }

    pub fn and(&mut self, a: NodeId, b: NodeId) -> NodeId {
        self.mk(Node::And(a, b))
    }

    pub fn or(&mut self, a: NodeId, b: NodeId) -> NodeId {
        self.mk(Node::Or(a, b))
    }

    pub fn imp(&mut self, a: NodeId, b: NodeId) -> NodeId {
        self.mk(Node::Imp(a, b))
    }

    pub fn const_value(&self, id: NodeId) -> Option<bool> {
        match self.node(id) {
            Node::Const(b) => Some(b),
            _ => None,
        }
    }

    /// Builds `node` with constant folding, reporting the rule used.
    pub fn fold(&mut self, node: Node) -> (NodeId, FoldRule) {
        let c = |d: &Dag, x: NodeId| d.const_value(x);
        match node {
            Node::Not(a) => match c(self, a) {
                Some(b) => (self.konst(!b), FoldRule::NotConst),
                None => (self.mk(node), FoldRule::Keep),
            },
            Node::And(a, b) => match (c(self, a), c(self, b)) {
                (Some(false), _) => (a, FoldRule::Absorb),
                (_, Some(false)) => (b, FoldRule::Absorb),
                (Some(true), _) => (b, FoldRule::Neutral),
                (_, Some(true)) => (a, FoldRule::Neutral),
                _ => (self.mk(node), FoldRule::Keep),
            },
            Node::Or(a, b) => match (c(self, a), c(self, b)) {
                (Some(true), _) => (a, FoldRule::Absorb),
                (_, Some(true)) => (b, FoldRule::Absorb),
                (Some(false), _) => (b, FoldRule::Neutral),
                (_, Some(false)) => (a, FoldRule::Neutral),
                _ => (self.mk(node), FoldRule::Keep),
            },
            Node::Imp(a, b) => match (c(self, a), c(self, b)) {
                (Some(false), _) => (self.konst(true), FoldRule::Absorb),
                (_, Some(true)) => (b, FoldRule::Absorb),
                (Some(true), _) => (b, FoldRule::Neutral),
                (_, Some(false)) => (self.not(a), FoldRule::ImpFalse),
                _ => (self.mk(node), FoldRule::Keep),
            },
            Node::Var(_) | Node::Const(_) => (self.mk(node), FoldRule::Keep),
        }
    }

    pub fn s_not(&mut self, a: NodeId) -> NodeId {
        self.fold(Node::Not(a)).0
    }

    pub fn s_and(&mut self, a: NodeId, b: NodeId) -> NodeId {
        self.fold(Node::And(a, b)).0
    }

    pub fn s_or(&mut self, a: NodeId, b: NodeId) -> NodeId {
        self.fold(Node::Or(a, b)).0
    }

    pub fn s_imp(&mut self, a: NodeId, b: NodeId) -> NodeId {
        self.fold(Node::Imp(a, b)).0
    }

    /// Right-nested conjunction `a₁ ∧ (a₂ ∧ (… ∧ aₖ))` with constant folding;
    /// the empty conjunction is `1`.
    pub fn and_chain(&mut self, items: &[NodeId]) -> NodeId {
        match items.split_last() {
            None => self.konst(true),
            Some((&last, rest)) => rest.iter().rev().fold(last, |acc, &x| self.s_and(x, acc)),
        }
    }

    /// Right-nested disjunction with constant folding; the empty disjunction is `0`.
    pub fn or_chain(&mut self, items: &[NodeId]) -> NodeId {
        match items.split_last() {
            None => self.konst(false),
            Some((&last, rest)) => rest.iter().rev().fold(last, |acc, &x| self.s_or(x, acc)),
        }
    }

    /// Right-nested disjunction without folding.
    pub fn or_chain_raw(&mut self, items: &[NodeId]) -> NodeId {
        match items.split_last() {
            None => self.konst(false),
            Some((&last, rest)) => rest.iter().rev().fold(last, |acc, &x| self.or(x, acc)),
        }
    }

    /// Nodes reachable from `roots`, children before parents.
    pub fn postorder(&self, roots: &[NodeId]) -> Vec<NodeId> {
        let mut seen = vec![false; self.nodes.len()];
        let mut order = Vec::new();
        let mut stack: Vec<(NodeId, bool)> = roots.iter().rev().map(|&r| (r, false)).collect();
        while let Some((id, expanded)) = stack.pop() {
            if expanded {
                order.push(id);
                continue;
            }
            if seen[id.index()] {
                continue;
            }
            seen[id.index()] = true;
            stack.push((id, true));
            let (a, b) = self.node(id).children();
            for ch in [b, a].into_iter().flatten() {
                if !seen[ch.index()] {
                    stack.push((ch, false));
                }
            }
        }
        order
    }

    /// Number of distinct nodes reachable from `root`.
    pub fn size(&self, root: NodeId) -> usize {
        self.postorder(&[root]).len()
    }

    /// Largest variable index reachable from `roots`, plus one.
    pub fn var_bound(&self, roots: &[NodeId]) -> usize {
        self.postorder(roots)
            .into_iter()
            .filter_map(|id| match self.node(id) {
                Node::Var(v) => Some(v as usize + 1),
                _ => None,
            })
            .max()
            .unwrap_or(0)
    }

    pub fn to_circuit(&self, root: NodeId, num_vars: usize) -> Circuit {
        let order = self.postorder(&[root]);
        let mut pos = FxHashMap::default();
        let mut gates = Vec::with_capacity(order.len());
        for id in order {
            let p = |x: NodeId| pos[&x];
            let g = match self.node(id) {
                Node::Var(v) => Gate::Var(v),
                Node::Const(b) => Gate::Const(b),
                Node::Not(a) => Gate::Not(p(a)),
                Node::And(a, b) => Gate::And(p(a), p(b)),
                Node::Or(a, b) => Gate::Or(p(a), p(b)),
                Node::Imp(a, b) => Gate::Imp(p(a), p(b)),
            };
            pos.insert(id, gates.len() as u32);
            gates.push(g);
        }
        let out = gates.len() - 1;
        Circuit::new(num_vars, gates, out).expect("dag export produces a well-formed circuit")
    }

    pub fn import(&mut self, c: &Circuit) -> NodeId {
        let mut ids: Vec<NodeId> = Vec::with_capacity(c.size());
        for g in c.gates() {
            let p = |x: u32| ids[x as usize];
            let node = match *g {
                Gate::Var(v) => Node::Var(v),
                Gate::Const(b) => Node::Const(b),
                Gate::Not(a) => Node::Not(p(a)),
                Gate::And(a, b) => Node::And(p(a), p(b)),
                Gate::Or(a, b) => Node::Or(p(a), p(b)),
                Gate::Imp(a, b) => Node::Imp(p(a), p(b)),
            };
            let id = self.mk(node);
            ids.push(id);
        }
        ids[c.output()]
    }

    /// Replaces variables by circuits inside this dag. `subst(v)` returning
    /// `None` keeps the variable. With `fold` set, constants are propagated.
    pub fn substitute(
        &mut self,
        root: NodeId,
        subst: &mut dyn FnMut(u32, &mut Dag) -> Option<NodeId>,
        fold: bool,
        memo: &mut FxHashMap<NodeId, NodeId>,
    ) -> NodeId {
        for id in self.postorder(&[root]) {
            if memo.contains_key(&id) {
                continue;
            }
            let node = self.node(id);
            let new = match node {
                Node::Var(v) => subst(v, self).unwrap_or(id),
                Node::Const(_) => id,
                _ => {
                    let mapped = node.map_children(|c| memo[&c]);
                    if fold {
                        self.fold(mapped).0
                    } else {
                        self.mk(mapped)
                    }
                }
            };
            memo.insert(id, new);
        }
        memo[&root]
    }

    /// Copies `root` from `src` into this dag, substituting variables.
    pub fn transfer(
        &mut self,
        src: &Dag,
        root: NodeId,
        subst: &mut dyn FnMut(u32, &mut Dag) -> Option<NodeId>,
        memo: &mut FxHashMap<NodeId, NodeId>,
    ) -> NodeId {
        for id in src.postorder(&[root]) {
            if memo.contains_key(&id) {
                continue;
            }
            let node = src.node(id);
            let new = match node {
                Node::Var(v) => match subst(v, self) {
                    Some(x) => x,
                    None => self.var(v),
                },
                _ => {
                    let mapped = node.map_children(|c| memo[&c]);
                    self.mk(mapped)
                }
            };
            memo.insert(id, new);
        }
        memo[&root]
    }

    pub fn eval(&self, root: NodeId, inputs: &[bool]) -> bool {
        let mut val: FxHashMap<NodeId, bool> = FxHashMap::default();
        for id in self.postorder(&[root]) {
            let v = match self.node(id) {
                Node::Var(i) => inputs[i as usize],
                Node::Const(b) => b,
                Node::Not(a) => !val[&a],
                Node::And(a, b) => val[&a] && val[&b],
                Node::Or(a, b) => val[&a] || val[&b],
                Node::Imp(a, b) => !val[&a] || val[&b],
            };
            val.insert(id, v);
        }
        val[&root]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hash_consing_shares_nodes() {
        let mut d = Dag::new();
        let x = d.var(0);
        let y = d.var(1);
        let a = d.and(x, y);
        let b = d.and(x, y);
        assert_eq!(a, b);
        assert_ne!(d.and(y, x), a);
    }

    #[test]
    fn folding_rules() {
        let mut d = Dag::new();
        let x = d.var(0);
        let t = d.konst(true);
        let f = d.konst(false);
        assert_eq!(d.s_and(t, x), x);
        assert_eq!(d.s_and(x, f), f);
        assert_eq!(d.s_or(f, x), x);
        assert_eq!(d.s_or(x, t), t);
        assert_eq!(d.s_imp(f, x), t);
        assert_eq!(d.s_imp(t, x), x);
        let nx = d.not(x);
        assert_eq!(d.s_imp(x, f), nx);
        assert_eq!(d.s_not(f), t);
    }

    #[test]
    fn chains() {
        let mut d = Dag::new();
        let xs: Vec<_> = (0..3).map(|i| d.var(i)).collect();
        let c = d.or_chain(&xs);
        let inner = d.or(xs[1], xs[2]);
        assert_eq!(d.node(c), Node::Or(xs[0], inner));
        assert_eq!(d.and_chain(&[]), d.find(Node::Const(true)).unwrap());
    }

    #[test]
    fn export_import_round_trip() {
        let mut d = Dag::new();
        let x = d.var(0);
        let y = d.var(1);
        let nx = d.not(x);
        let a = d.imp(nx, y);
        let root = d.or(a, x);
        let c = d.to_circuit(root, 2);
        let mut e = Dag::new();
        let r2 = e.import(&c);
        assert_eq!(e.to_circuit(r2, 2), c);
        for idx in 0..4 {
            let bits = [idx & 1 == 1, idx & 2 == 2];
            assert_eq!(d.eval(root, &bits), c.eval_bits(&bits));
        }
    }

    #[test]
    fn substitution_folds_constants() {
        let mut d = Dag::new();
        let x = d.var(0);
        let y = d.var(1);
        let ny = d.not(y);
        let root = d.or(ny, x);
        let mut memo = FxHashMap::default();
        let r = d.substitute(root, &mut |v, d| (v == 1).then(|| d.konst(true)), true, &mut memo);
        assert_eq!(r, x);
    }
}
