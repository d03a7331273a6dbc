//! Proof construction with hypotheses.
//!
//! A [`Fact`] is a formula derived under the first `depth` open hypotheses.
//! Depth-0 facts are proof lines; deeper facts live in their scope until
//! [`Prover::discharge`] turns the scope into implications with the
//! deduction theorem. Lemmas are proved once over metavariables and
//! replayed by substitution.

use std::cell::RefCell;
use std::rc::Rc;

use rustc_hash::FxHashMap;

use super::kernel::schema_shape;
use super::lemmas::Lemma;
use super::{CfJust, CfLine, CfProof};
use crate::formula::{Dag, Node, NodeId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fact {
    depth: u32,
    idx: u32,
}

impl Fact {
    pub fn depth(self) -> usize {
        self.depth as usize
    }

    fn top(idx: usize) -> Self {
        Fact { depth: 0, idx: idx as u32 }
    }
}

#[derive(Clone, Copy, Debug)]
enum ScopeJust {
    Hyp,
    Mp(Fact, Fact),
}

struct Scope {
    hyp: NodeId,
    lines: Vec<(NodeId, ScopeJust)>,
    proven: FxHashMap<NodeId, u32>,
}

/// A lemma proved over metavariables `0..arity`.
pub(super) struct LemmaProof {
    dag: Dag,
    lines: Vec<CfLine>,
}

pub(super) type LemmaCache = Rc<RefCell<FxHashMap<Lemma, Rc<LemmaProof>>>>;

pub struct Prover {
    pub dag: Dag,
    num_vars: usize,
    lines: Vec<CfLine>,
    proven: FxHashMap<NodeId, u32>,
    scopes: Vec<Scope>,
    cache: LemmaCache,
}

impl Prover {
    pub fn new(num_vars: usize) -> Self {
        Prover::with_dag(Dag::new(), num_vars)
    }

    pub fn with_dag(dag: Dag, num_vars: usize) -> Self {
        Prover {
            dag,
            num_vars,
            lines: Vec::new(),
            proven: FxHashMap::default(),
            scopes: Vec::new(),
            cache: Rc::default(),
        }
    }

    /// Continues an existing proof; also returns the fact of its conclusion.
    pub fn from_proof(p: CfProof) -> (Self, Option<Fact>) {
        let mut pr = Prover::with_dag(p.dag, p.num_vars);
        // Repeated formulas collapse onto their first line.
        let mut renum: Vec<usize> = Vec::with_capacity(p.lines.len());
        for line in p.lines {
            let just = match line.just {
                CfJust::Mp(a, b) => CfJust::Mp(renum[a], renum[b]),
                CfJust::Canon(a) => CfJust::Canon(renum[a]),
                j => j,
            };
            let f = pr.push_line(line.formula, just);
            renum.push(f.idx as usize);
        }
        let concl = renum.last().map(|&i| Fact::top(i));
        (pr, concl)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn set_num_vars(&mut self, n: usize) {
        self.num_vars = self.num_vars.max(n);
    }

    pub fn depth(&self) -> usize {
        self.scopes.len()
    }

    pub fn lines_so_far(&self) -> usize {
        self.lines.len()
    }

    /// The fact at line `idx` of the proof.
    pub fn line(&self, idx: usize) -> Fact {
        assert!(idx < self.lines.len());
        Fact::top(idx)
    }

    pub fn formula(&self, f: Fact) -> NodeId {
        if f.depth == 0 {
            self.lines[f.idx as usize].formula
        } else {
            self.scopes[f.depth as usize - 1].lines[f.idx as usize].0
        }
    }

    fn lookup(&self, f: NodeId, upto: usize) -> Option<Fact> {
        if let Some(&i) = self.proven.get(&f) {
            return Some(Fact { depth: 0, idx: i });
        }
        (0..upto).find_map(|d| self.scopes[d].proven.get(&f).map(|&i| Fact { depth: d as u32 + 1, idx: i }))
    }

    fn push_line(&mut self, formula: NodeId, just: CfJust) -> Fact {
        if let Some(&i) = self.proven.get(&formula) {
            return Fact { depth: 0, idx: i };
        }
        let idx = self.lines.len() as u32;
        self.lines.push(CfLine { formula, just });
        self.proven.insert(formula, idx);
        Fact { depth: 0, idx }
    }

    // Node shorthands.
    pub fn imp(&mut self, a: NodeId, b: NodeId) -> NodeId {
        self.dag.imp(a, b)
    }
    pub fn and(&mut self, a: NodeId, b: NodeId) -> NodeId {
        self.dag.and(a, b)
    }
    pub fn or(&mut self, a: NodeId, b: NodeId) -> NodeId {
        self.dag.or(a, b)
    }
    pub fn not(&mut self, a: NodeId) -> NodeId {
        self.dag.not(a)
    }
    pub fn konst(&mut self, b: bool) -> NodeId {
        self.dag.konst(b)
    }

    /// Basis schema instance.
    pub fn axiom(&mut self, id: u8, args: &[NodeId]) -> Fact {
        let dag = &mut self.dag;
        let f = schema_shape(id, args, false, &mut |n| Some(dag.mk(n))).expect("schema id and arity");
        self.push_line(f, CfJust::Schema { id, args: args.to_vec() })
    }

    /// `1`.
    pub fn truth(&mut self) -> Fact {
        self.axiom(10, &[])
    }

    /// `¬0`.
    pub fn not_false(&mut self) -> Fact {
        let dag = &mut self.dag;
        let f = schema_shape(10, &[], true, &mut |n| Some(dag.mk(n))).expect("schema 10");
        self.push_line(f, CfJust::Schema { id: 10, args: vec![] })
    }

    /// A line justified by an extension schema; the caller builds `formula`.
    pub fn ext(&mut self, name: &str, args: &[NodeId], formula: NodeId) -> Fact {
        self.push_line(formula, CfJust::Ext { name: name.into(), args: args.to_vec() })
    }

    /// A line with the canonical form of `of`.
    pub fn canon(&mut self, of: Fact, formula: NodeId) -> Fact {
        assert_eq!(of.depth, 0, "canonicalization of a hypothetical fact");
        self.push_line(formula, CfJust::Canon(of.idx as usize))
    }

    /// Modus ponens from `imp : A → B` and `ant : A`.
    pub fn mp(&mut self, imp: Fact, ant: Fact) -> Fact {
        let (fi, fa) = (self.formula(imp), self.formula(ant));
        let b = match self.dag.node(fi) {
            Node::Imp(a, b) if a == fa => b,
            _ => panic!("modus ponens on a non-matching implication"),
        };
        let depth = imp.depth.max(ant.depth);
        if depth == 0 {
            return self.push_line(b, CfJust::Mp(imp.idx as usize, ant.idx as usize));
        }
        if let Some(f) = self.lookup(b, depth as usize) {
            return f;
        }
        let scope = &mut self.scopes[depth as usize - 1];
        let idx = scope.lines.len() as u32;
        scope.lines.push((b, ScopeJust::Mp(imp, ant)));
        scope.proven.insert(b, idx);
        Fact { depth, idx }
    }

    /// Modus ponens chain: `imp` applied to each premise in turn.
    pub fn mps(&mut self, mut imp: Fact, premises: &[Fact]) -> Fact {
        for &p in premises {
            imp = self.mp(imp, p);
        }
        imp
    }

    pub fn assume(&mut self, h: NodeId) -> Fact {
        let mut proven = FxHashMap::default();
        proven.insert(h, 0);
        self.scopes.push(Scope { hyp: h, lines: vec![(h, ScopeJust::Hyp)], proven });
        Fact { depth: self.scopes.len() as u32, idx: 0 }
    }

    /// Closes the innermost scope with hypothesis `h`, returning `h → φ`
    /// for the fact `concl : φ`.
    pub fn discharge(&mut self, concl: Fact) -> Fact {
        let e = self.scopes.len() as u32;
        assert!(e > 0 && concl.depth <= e, "no scope to discharge");
        let scope = self.scopes.pop().expect("open scope");
        let h = scope.hyp;
        if concl.depth < e {
            return self.lift(h, concl);
        }
        let n = scope.lines.len();
        let mut needed = vec![false; n];
        needed[concl.idx as usize] = true;
        for i in (0..n).rev() {
            if !needed[i] {
                continue;
            }
            if let ScopeJust::Mp(a, b) = scope.lines[i].1 {
                for f in [a, b] {
                    if f.depth == e {
                        needed[f.idx as usize] = true;
                    }
                }
            }
        }
        let mut out: Vec<Option<Fact>> = vec![None; n];
        for i in 0..n {
            if !needed[i] {
                continue;
            }
            let fact = match scope.lines[i].1 {
                ScopeJust::Hyp => self.lemma(Lemma::Id, &[h]),
                ScopeJust::Mp(a, b) => {
                    let fa = if a.depth == e { out[a.idx as usize].expect("ordered") } else { self.lift(h, a) };
                    let fb = if b.depth == e { out[b.idx as usize].expect("ordered") } else { self.lift(h, b) };
                    let ab = if a.depth == e { scope.lines[a.idx as usize].0 } else { self.formula(a) };
                    let (x, y) = match self.dag.node(ab) {
                        Node::Imp(x, y) => (x, y),
                        _ => unreachable!("checked when recorded"),
                    };
                    let s2 = self.axiom(2, &[h, x, y]);
                    self.mps(s2, &[fa, fb])
                }
            };
            out[i] = Some(fact);
        }
        out[concl.idx as usize].expect("conclusion compiled")
    }

    /// `h → φ` from `φ`, at the depth of `φ`.
    pub fn lift(&mut self, h: NodeId, f: Fact) -> Fact {
        let phi = self.formula(f);
        let s1 = self.axiom(1, &[phi, h]);
        self.mp(s1, f)
    }

    /// Proves `h → φ` where `body` derives `φ` under `h`.
    pub fn deduce(&mut self, h: NodeId, body: impl FnOnce(&mut Prover, Fact) -> Fact) -> Fact {
        let hyp = self.assume(h);
        let c = body(self, hyp);
        self.discharge(c)
    }

    /// An instance of `lemma` with metavariables `args`.
    pub fn lemma(&mut self, lemma: Lemma, args: &[NodeId]) -> Fact {
        assert_eq!(args.len(), lemma.arity(), "{lemma:?} arity");
        let proof = self.lemma_proof(lemma);
        self.replay(&proof, args)
    }

    /// An instance of `lemma` applied to `premises` by modus ponens.
    pub fn apply(&mut self, lemma: Lemma, args: &[NodeId], premises: &[Fact]) -> Fact {
        let l = self.lemma(lemma, args);
        self.mps(l, premises)
    }

    fn lemma_proof(&mut self, lemma: Lemma) -> Rc<LemmaProof> {
        if let Some(p) = self.cache.borrow().get(&lemma) {
            return p.clone();
        }
        let mut sub = Prover::with_dag(Dag::new(), lemma.arity());
        sub.cache = self.cache.clone();
        let args: Vec<NodeId> = (0..lemma.arity()).map(|i| sub.dag.var(i as u32)).collect();
        let concl = lemma.prove(&mut sub, &args);
        let proof = sub.finish(concl);
        let lp = Rc::new(LemmaProof { dag: proof.dag, lines: proof.lines });
        self.cache.borrow_mut().insert(lemma, lp.clone());
        lp
    }

    fn replay(&mut self, lp: &LemmaProof, args: &[NodeId]) -> Fact {
        let mut memo = FxHashMap::default();
        let mut map: Vec<Fact> = Vec::with_capacity(lp.lines.len());
        let mut subst = |v: u32, _: &mut Dag| Some(args[v as usize]);
        for line in &lp.lines {
            let f = self.dag.transfer(&lp.dag, line.formula, &mut subst, &mut memo);
            let just = match &line.just {
                CfJust::Schema { id, args: a } => CfJust::Schema {
                    id: *id,
                    args: a.iter().map(|&x| self.dag.transfer(&lp.dag, x, &mut subst, &mut memo)).collect(),
                },
                CfJust::Mp(i, j) => CfJust::Mp(map[*i].idx as usize, map[*j].idx as usize),
                other => unreachable!("lemma proofs use schemas and MP only: {other:?}"),
            };
            map.push(self.push_line(f, just));
        }
        *map.last().expect("nonempty lemma proof")
    }

    /// `a → c` from `a → b` and `b → c`.
    pub fn trans(&mut self, ab: Fact, bc: Fact) -> Fact {
        let (fab, fbc) = (self.formula(ab), self.formula(bc));
        let (a, b, c) = match (self.dag.node(fab), self.dag.node(fbc)) {
            (Node::Imp(a, b), Node::Imp(b2, c)) if b == b2 => (a, b, c),
            _ => panic!("trans on non-chaining implications"),
        };
        let s1 = self.axiom(1, &[fbc, a]);
        let abc = self.mp(s1, bc);
        let s2 = self.axiom(2, &[a, b, c]);
        self.mps(s2, &[abc, ab])
    }

    /// `(t₀ ∨ (t₁ ∨ … ∨ t_{r−1})) → goal` from the facts `tᵢ → goal`,
    /// for the right-nested disjunction of `terms`.
    pub fn or_elim(&mut self, terms: &[NodeId], goal: NodeId, cases: &[Fact]) -> Fact {
        assert!(!terms.is_empty() && terms.len() == cases.len());
        let r = terms.len();
        let mut acc = cases[r - 1];
        let mut rest = terms[r - 1];
        for p in (0..r - 1).rev() {
            let s9 = self.axiom(9, &[terms[p], rest, goal]);
            acc = self.mps(s9, &[cases[p], acc]);
            rest = self.dag.or(terms[p], rest);
        }
        acc
    }

    /// `tᵢ → (t₀ ∨ … ∨ t_{r−1})` for every `i`, as depth-0 facts.
    pub fn or_intros(&mut self, terms: &[NodeId]) -> Vec<Fact> {
        let r = terms.len();
        assert!(r > 0);
        // rests[p] = t_p ∨ … ∨ t_{r−1}
        let mut rests = vec![terms[r - 1]; r];
        for p in (0..r - 1).rev() {
            rests[p] = self.dag.or(terms[p], rests[p + 1]);
        }
        let mut out = Vec::with_capacity(r);
        // to_top: rests[p] → rests[0]
        let mut to_top: Option<Fact> = None;
        for p in 0..r {
            let fact = if p + 1 < r {
                let intro = self.axiom(7, &[terms[p], rests[p + 1]]);
                match to_top {
                    None => intro,
                    Some(t) => self.trans(intro, t),
                }
            } else {
                match to_top {
                    None => self.lemma(Lemma::Id, &[terms[p]]),
                    Some(t) => t,
                }
            };
            out.push(fact);
            if p + 1 < r {
                let step = self.axiom(8, &[terms[p], rests[p + 1]]);
                to_top = Some(match to_top {
                    None => step,
                    Some(t) => self.trans(step, t),
                });
            }
        }
        out
    }

    /// Ends construction: keeps the lines `concl` depends on, in order, so
    /// that `concl` is the last line.
    pub fn finish(self, concl: Fact) -> CfProof {
        assert!(self.scopes.is_empty() && concl.depth == 0, "open hypotheses");
        let n = concl.idx as usize + 1;
        let mut needed = vec![false; n];
        needed[n - 1] = true;
        for i in (0..n).rev() {
            if !needed[i] {
                continue;
            }
            match self.lines[i].just {
                CfJust::Mp(a, b) => {
                    needed[a] = true;
                    needed[b] = true;
                }
                CfJust::Canon(a) => needed[a] = true,
                _ => {}
            }
        }
        let mut renum = vec![usize::MAX; n];
        let mut lines = Vec::with_capacity(needed.iter().filter(|&&b| b).count());
        for (i, line) in self.lines.into_iter().take(n).enumerate() {
            if !needed[i] {
                continue;
            }
            renum[i] = lines.len();
            let just = match line.just {
                CfJust::Mp(a, b) => CfJust::Mp(renum[a], renum[b]),
                CfJust::Canon(a) => CfJust::Canon(renum[a]),
                j => j,
            };
            lines.push(CfLine { formula: line.formula, just });
        }
        CfProof { dag: self.dag, num_vars: self.num_vars, lines }
    }
}
