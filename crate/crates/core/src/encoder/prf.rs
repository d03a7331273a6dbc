use super::{EncodeError, PrfLayout};
use crate::formula::{Assignment, Clause, Cnf, CnfCode, Lit, TemplateBit, TemplateCode};
use crate::resolution::{ProofLine, ResolutionProof};

/// Which constraint a clause of the proof formula comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClauseKind {
    /// `ax[0]`.
    FirstIsAxiom,
    /// `¬ax[j] ∨ ⋁_l s[l][j]`.
    AxiomSelect { j: usize },
    /// `¬s[l][j] ∨ ¬s[l2][j]`.
    AxiomUnique { j: usize, l: usize, l2: usize },
    /// `ax[j] ∨ ¬s[l][j]`.
    AxiomOnlyInMode { j: usize, l: usize },
    /// `ax[j] ∨ ⋁_a L[a][j]`.
    LeftSelect { j: usize },
    RightSelect { j: usize },
    /// `ax[j] ∨ ⋁_i piv[i][j]`.
    PivotSelect { j: usize },
    LeftUnique { j: usize, a: usize, b: usize },
    RightUnique { j: usize, a: usize, b: usize },
    PivotUnique { j: usize, i: usize, i2: usize },
    /// `¬ax[j] ∨ ¬L[a][j]`.
    LeftOff { j: usize, a: usize },
    RightOff { j: usize, a: usize },
    /// `¬ax[j] ∨ ¬piv[i][j]`.
    PivotOff { j: usize, i: usize },
    /// `¬s[l][j] ∨ ¬c[e][i][l] ∨ y[e][i][j]`; the code literal is absent
    /// (or the clause dropped) when the code is a constant.
    Inclusion { j: usize, l: usize, e: usize, i: usize },
    /// `¬L[a][j] ∨ ¬piv[i][j] ∨ y[1][i][a]`.
    LeftPivot { j: usize, a: usize, i: usize },
    /// `¬R[a][j] ∨ ¬piv[i][j] ∨ y[0][i][a]`.
    RightPivot { j: usize, a: usize, i: usize },
    /// `¬L[a][j] ∨ ¬y[e][i][a] ∨ y[e][i][j]`, plus `piv[i][j]` when `e = 1`.
    LeftCarry { j: usize, a: usize, e: usize, i: usize },
    /// `¬R[a][j] ∨ ¬y[e][i][a] ∨ y[e][i][j]`, plus `piv[i][j]` when `e = 0`.
    RightCarry { j: usize, a: usize, e: usize, i: usize },
    /// `¬y[e][i][m−1]`.
    LastEmpty { e: usize, i: usize },
}

/// The code a proof formula refers to.
#[derive(Clone, Copy, Debug)]
pub enum PrfCode<'a> {
    /// Code bits are variables of the formula.
    Symbolic,
    Instantiated(&'a CnfCode),
}

fn pos(v: usize) -> Lit {
    Lit::pos(v as u32)
}

fn neg(v: usize) -> Lit {
    Lit::neg(v as u32)
}

/// Every clause of the proof formula over the symbolic layout, in emission
/// order. Inclusion clauses carry the code literal `¬c[e][i][l]`.
pub fn symbolic_clauses(lay: &PrfLayout) -> Vec<(ClauseKind, Clause)> {
    let sym = PrfLayout { symbolic: true, ..*lay };
    let (m, n, k) = (lay.m, lay.n, lay.k);
    let mut out = Vec::new();
    let mut add = |kind: ClauseKind, lits: Vec<Lit>| out.push((kind, Clause::new(lits)));
    for j in 0..m {
        let ax = sym.ax(j);
        if j == 0 {
            add(ClauseKind::FirstIsAxiom, vec![pos(ax)]);
        }
        let mut alo = vec![neg(ax)];
        alo.extend((0..k).map(|l| pos(sym.s(l, j))));
        add(ClauseKind::AxiomSelect { j }, alo);
        for l in 0..k {
            for l2 in l + 1..k {
                add(ClauseKind::AxiomUnique { j, l, l2 }, vec![neg(sym.s(l, j)), neg(sym.s(l2, j))]);
            }
        }
        for l in 0..k {
            add(ClauseKind::AxiomOnlyInMode { j, l }, vec![pos(ax), neg(sym.s(l, j))]);
        }
        if j >= 1 {
            let mut left = vec![pos(ax)];
            left.extend((0..j).map(|a| pos(sym.left(a, j))));
            add(ClauseKind::LeftSelect { j }, left);
            let mut right = vec![pos(ax)];
            right.extend((0..j).map(|a| pos(sym.right(a, j))));
            add(ClauseKind::RightSelect { j }, right);
            let mut piv = vec![pos(ax)];
            piv.extend((0..n).map(|i| pos(sym.piv(i, j))));
            add(ClauseKind::PivotSelect { j }, piv);
            for a in 0..j {
                for b in a + 1..j {
                    add(ClauseKind::LeftUnique { j, a, b }, vec![neg(sym.left(a, j)), neg(sym.left(b, j))]);
                }
            }
            for a in 0..j {
                for b in a + 1..j {
                    add(ClauseKind::RightUnique { j, a, b }, vec![neg(sym.right(a, j)), neg(sym.right(b, j))]);
                }
            }
            for i in 0..n {
                for i2 in i + 1..n {
                    add(ClauseKind::PivotUnique { j, i, i2 }, vec![neg(sym.piv(i, j)), neg(sym.piv(i2, j))]);
                }
            }
            for a in 0..j {
                add(ClauseKind::LeftOff { j, a }, vec![neg(ax), neg(sym.left(a, j))]);
            }
            for a in 0..j {
                add(ClauseKind::RightOff { j, a }, vec![neg(ax), neg(sym.right(a, j))]);
            }
        }
        for i in 0..n {
            add(ClauseKind::PivotOff { j, i }, vec![neg(ax), neg(sym.piv(i, j))]);
        }
        for l in 0..k {
            for e in 0..2 {
                for i in 0..n {
                    add(
                        ClauseKind::Inclusion { j, l, e, i },
                        vec![neg(sym.s(l, j)), neg(sym.c(e, i, l)), pos(sym.y(e, i, j))],
                    );
                }
            }
        }
        for a in 0..j {
            for i in 0..n {
                add(
                    ClauseKind::LeftPivot { j, a, i },
                    vec![neg(sym.left(a, j)), neg(sym.piv(i, j)), pos(sym.y(1, i, a))],
                );
                add(
                    ClauseKind::RightPivot { j, a, i },
                    vec![neg(sym.right(a, j)), neg(sym.piv(i, j)), pos(sym.y(0, i, a))],
                );
            }
        }
        for a in 0..j {
            for e in 0..2 {
                for i in 0..n {
                    let mut lits = vec![neg(sym.left(a, j)), neg(sym.y(e, i, a)), pos(sym.y(e, i, j))];
                    if e == 1 {
                        lits.push(pos(sym.piv(i, j)));
                    }
                    add(ClauseKind::LeftCarry { j, a, e, i }, lits);
                    let mut lits = vec![neg(sym.right(a, j)), neg(sym.y(e, i, a)), pos(sym.y(e, i, j))];
                    if e == 0 {
                        lits.push(pos(sym.piv(i, j)));
                    }
                    add(ClauseKind::RightCarry { j, a, e, i }, lits);
                }
            }
        }
    }
    for e in 0..2 {
        for i in 0..n {
            add(ClauseKind::LastEmpty { e, i }, vec![neg(sym.y(e, i, m - 1))]);
        }
    }
    out
}

/// The proof formula with its clause kinds. Instantiating the code removes
/// the code literal of inclusion clauses whose bit is 1 and drops those
/// whose bit is 0.
pub fn prf_clauses(lay: &PrfLayout, code: PrfCode<'_>) -> Result<Vec<(ClauseKind, Clause)>, EncodeError> {
    let all = symbolic_clauses(lay);
    match code {
        PrfCode::Symbolic => {
            if !lay.symbolic {
                return Err(EncodeError::Parameter("symbolic code needs a symbolic layout".into()));
            }
            Ok(all)
        }
        PrfCode::Instantiated(c) => {
            if lay.symbolic {
                return Err(EncodeError::Parameter("instantiated code needs an instance layout".into()));
            }
            if (c.num_vars(), c.num_clauses()) != (lay.n, lay.k) {
                return Err(EncodeError::Parameter(format!(
                    "code has n={}, k={}, layout n={}, k={}",
                    c.num_vars(),
                    c.num_clauses(),
                    lay.n,
                    lay.k
                )));
            }
            let code_lit = |e, i, l| neg(lay.num_instance_vars() + CnfCode::bit_index(lay.n, lay.k, e, i, l));
            Ok(all
                .into_iter()
                .filter_map(|(kind, clause)| match kind {
                    ClauseKind::Inclusion { l, e, i, .. } => {
                        c.get(e, i, l).then(|| (kind, clause.without(code_lit(e, i, l))))
                    }
                    _ => Some((kind, clause)),
                })
                .collect())
        }
    }
}

pub fn build_prf(lay: &PrfLayout, code: PrfCode<'_>) -> Result<Cnf, EncodeError> {
    let clauses = prf_clauses(lay, code)?.into_iter().map(|(_, c)| c).collect();
    Ok(Cnf::new(lay.num_vars(), clauses).expect("layout variables are in range"))
}

/// The code of the instance proof formula as a function of the refuted
/// CNF's code: one clause slot per symbolic clause. Inclusion slots keep
/// `¬s ∨ y` and add `s` with bit `¬c`, so a zero code bit makes the slot a
/// tautology instead of removing it.
pub fn build_prf_template(m: usize, n: usize, k: usize) -> Result<TemplateCode, EncodeError> {
    let lay = PrfLayout::new(m, n, k, false)?;
    let clauses = symbolic_clauses(&lay);
    let nv = lay.num_instance_vars();
    let kk = clauses.len();
    let mut entries = vec![TemplateBit::Const(false); 2 * nv * kk];
    for (slot, (kind, clause)) in clauses.iter().enumerate() {
        let param = match *kind {
            ClauseKind::Inclusion { l, e, i, .. } => Some(CnfCode::bit_index(n, k, e, i, l)),
            _ => None,
        };
        for lit in clause.iter() {
            let v = lit.var() as usize;
            if v >= nv {
                continue;
            }
            entries[CnfCode::bit_index(nv, kk, lit.polarity(), v, slot)] = TemplateBit::Const(true);
        }
        if let Some(q) = param {
            let first = clause.lits()[0];
            debug_assert!((first.var() as usize) < nv);
            let idx = CnfCode::bit_index(nv, kk, first.negated().polarity(), first.var() as usize, slot);
            entries[idx] = TemplateBit::NegRef(q);
        }
    }
    Ok(TemplateCode::new(nv, kk, 2 * n * k, entries).expect("template entries are consistent"))
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum DecodeError {
    #[error("assignment has {found} variables, layout needs {expected}")]
    Dimension { expected: usize, found: usize },
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
}

/// Reads an `m`-line proof off an assignment. Fails unless the mode and
/// selector bits of every line have the shape the formula enforces.
pub fn decode_prf_assignment(lay: &PrfLayout, a: &Assignment) -> Result<ResolutionProof, DecodeError> {
    if a.len() != lay.num_vars() {
        return Err(DecodeError::Dimension { expected: lay.num_vars(), found: a.len() });
    }
    let bad = |line: usize, message: &str| DecodeError::Malformed { line, message: message.into() };
    let one_hot = |vars: Vec<usize>, line: usize, what: &str| -> Result<usize, DecodeError> {
        let set: Vec<usize> = vars.iter().enumerate().filter(|(_, &v)| a.get(v)).map(|(t, _)| t).collect();
        match set.as_slice() {
            [t] => Ok(*t),
            [] => Err(bad(line, &format!("no {what} selected"))),
            _ => Err(bad(line, &format!("several {what}s selected"))),
        }
    };
    let none = |vars: Vec<usize>, line: usize, what: &str| -> Result<(), DecodeError> {
        if vars.into_iter().any(|v| a.get(v)) {
            Err(bad(line, &format!("{what} selected on a line of the other mode")))
        } else {
            Ok(())
        }
    };
    let (n, k) = (lay.n, lay.k);
    let mut lines = Vec::with_capacity(lay.m);
    for j in 0..lay.m {
        let clause: Clause = (0..n)
            .flat_map(|i| [(1, i), (0, i)])
            .filter(|&(e, i)| a.get(lay.y(e, i, j)))
            .map(|(e, i)| Lit::new(i as u32, e == 1))
            .collect();
        let lefts = || (0..j).map(|t| lay.left(t, j)).collect::<Vec<_>>();
        let rights = || (0..j).map(|t| lay.right(t, j)).collect::<Vec<_>>();
        let pivs = || (0..n).map(|i| lay.piv(i, j)).collect::<Vec<_>>();
        let sels = || (0..k).map(|l| lay.s(l, j)).collect::<Vec<_>>();
        if a.get(lay.ax(j)) {
            let l = one_hot(sels(), j, "axiom")?;
            none(lefts(), j, "left premise")?;
            none(rights(), j, "right premise")?;
            none(pivs(), j, "pivot")?;
            lines.push(ProofLine::axiom(clause, l));
        } else {
            if j == 0 {
                return Err(bad(0, "first line is not an axiom line"));
            }
            none(sels(), j, "axiom")?;
            let left = one_hot(lefts(), j, "left premise")?;
            let right = one_hot(rights(), j, "right premise")?;
            let pivot = one_hot(pivs(), j, "pivot")?;
            lines.push(ProofLine::resolve(clause, left, right, pivot as u32));
        }
    }
    Ok(ResolutionProof::new(lines))
}
