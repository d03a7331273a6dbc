//! Text format for Circuit Frege proofs.
//!
//! ```text
//! cf vars 2
//! g0 := var 0
//! g1 := var 1
//! g2 := imp g1 g0
//! g3 := imp g0 g2
//! S 1 p:=g0 q:=g1 : g3
//! ```
//!
//! A shared gate table comes first; each proof line then names its formula
//! by gate. Lines are `S id p:=gA q:=gB r:=gC : gF` (basis schema),
//! `X name gA gB … : gF` (extension schema), `MP j1 j2 : gF` and
//! `C j : gF`, numbered from 0 in order. `#` starts a comment.

use std::fmt::Write as _;

use rustc_hash::FxHashMap;

use super::{CfError, CfJust, CfLine, CfProof};
use crate::formula::{Dag, Node, NodeId};

const META: [&str; 3] = ["p", "q", "r"];

pub fn emit(p: &CfProof) -> String {
    let mut out = String::new();
    let roots = {
        let mut r = Vec::new();
        for line in &p.lines {
            r.push(line.formula);
            if let CfJust::Schema { args, .. } | CfJust::Ext { args, .. } = &line.just {
                r.extend(args.iter().copied());
            }
        }
        r
    };
    let order = p.dag.postorder(&roots);
    let mut pos: FxHashMap<NodeId, usize> = FxHashMap::default();
    let _ = writeln!(out, "cf vars {}", p.num_vars);
    for (g, &id) in order.iter().enumerate() {
        let q = |x: NodeId| pos[&x];
        let _ = match p.dag.node(id) {
            Node::Var(v) => writeln!(out, "g{g} := var {v}"),
            Node::Const(b) => writeln!(out, "g{g} := const {}", u8::from(b)),
            Node::Not(a) => writeln!(out, "g{g} := not g{}", q(a)),
            Node::And(a, b) => writeln!(out, "g{g} := and g{} g{}", q(a), q(b)),
            Node::Or(a, b) => writeln!(out, "g{g} := or g{} g{}", q(a), q(b)),
            Node::Imp(a, b) => writeln!(out, "g{g} := imp g{} g{}", q(a), q(b)),
        };
        pos.insert(id, g);
    }
    for line in &p.lines {
        let f = pos[&line.formula];
        let _ = match &line.just {
            CfJust::Schema { id, args } => {
                let a: Vec<String> = args.iter().zip(META).map(|(x, m)| format!(" {m}:=g{}", pos[x])).collect();
                writeln!(out, "S {id}{} : g{f}", a.concat())
            }
            CfJust::Ext { name, args } => {
                let a: Vec<String> = args.iter().map(|x| format!(" g{}", pos[x])).collect();
                writeln!(out, "X {name}{} : g{f}", a.concat())
            }
            CfJust::Mp(a, b) => writeln!(out, "MP {a} {b} : g{f}"),
            CfJust::Canon(a) => writeln!(out, "C {a} : g{f}"),
        };
    }
    out
}

pub fn parse(text: &str) -> Result<CfProof, CfError> {
    let mut dag = Dag::new();
    let mut gates: Vec<NodeId> = Vec::new();
    let mut num_vars = None;
    let mut lines = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: &str| CfError::Syntax { line: no + 1, message: message.into() };
        let toks: Vec<&str> = line.split_whitespace().collect();
        if num_vars.is_none() {
            match toks.as_slice() {
                ["cf", "vars", n] => num_vars = Some(n.parse::<usize>().map_err(|_| err("bad variable count"))?),
                _ => return Err(err("expected `cf vars N`")),
            }
            continue;
        }
        let gate = |t: &str| -> Result<NodeId, CfError> {
            t.strip_prefix('g')
                .and_then(|x| x.parse::<usize>().ok())
                .and_then(|i| gates.get(i).copied())
                .ok_or_else(|| err(&format!("unknown gate `{t}`")))
        };
        if toks.len() >= 3 && toks[1] == ":=" {
            if toks[0] != format!("g{}", gates.len()) {
                return Err(err("gates must be numbered consecutively"));
            }
            let node = match &toks[2..] {
                ["var", v] => Node::Var(v.parse().map_err(|_| err("bad variable"))?),
                ["const", "0"] => Node::Const(false),
                ["const", "1"] => Node::Const(true),
                ["not", a] => Node::Not(gate(a)?),
                ["and", a, b] => Node::And(gate(a)?, gate(b)?),
                ["or", a, b] => Node::Or(gate(a)?, gate(b)?),
                ["imp", a, b] => Node::Imp(gate(a)?, gate(b)?),
                _ => return Err(err("bad gate")),
            };
            let id = dag.mk(node);
            gates.push(id);
            continue;
        }
        let colon = toks.iter().position(|&t| t == ":").ok_or_else(|| err("missing `: gF`"))?;
        if colon + 2 != toks.len() {
            return Err(err("expected a single formula gate after `:`"));
        }
        let formula = gate(toks[colon + 1])?;
        let body = &toks[..colon];
        let index = |t: &str| t.parse::<usize>().map_err(|_| err("bad line index"));
        let just = match body {
            ["S", id, args @ ..] => {
                let id: u8 = id.parse().map_err(|_| err("bad schema id"))?;
                let mut out = Vec::with_capacity(args.len());
                for (k, a) in args.iter().enumerate() {
                    let (m, g) = a.split_once(":=").ok_or_else(|| err("expected `p:=gA`"))?;
                    if META.get(k) != Some(&m) {
                        return Err(err("metavariables must be p, q, r in order"));
                    }
                    out.push(gate(g)?);
                }
                CfJust::Schema { id, args: out }
            }
            ["X", name, args @ ..] => {
                CfJust::Ext { name: (*name).into(), args: args.iter().map(|a| gate(a)).collect::<Result<_, _>>()? }
            }
            ["MP", a, b] => CfJust::Mp(index(a)?, index(b)?),
            ["C", a] => CfJust::Canon(index(a)?),
            _ => return Err(err("unknown justification")),
        };
        lines.push(CfLine { formula, just });
    }
    let num_vars = num_vars.ok_or(CfError::Syntax { line: 0, message: "empty input".into() })?;
    Ok(CfProof { dag, num_vars, lines })
}
