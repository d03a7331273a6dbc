//! Tautology schemas derived from the basis, proved once over
//! metavariables. Each variant documents its statement over its arguments
//! in order.

use super::prover::{Fact, Prover};
use crate::formula::NodeId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Lemma {
    /// `a → a`
    Id,
    /// `¬a → (a → b)`
    ExFalso,
    /// `¬¬a → a`
    Dne,
    /// `a → ¬¬a`
    Dni,
    /// `(a → b) → (¬b → ¬a)`
    Contra,
    /// `(¬a → b) → ((¬a → ¬b) → a)`
    Reductio,
    /// `(a → t) → ((¬a → t) → t)`
    Cases,
    /// `(a → (b → c)) → (b → (a → c))`
    Swap,
    /// `(¬a ∨ b) → (a → b)`
    OrDs,
    /// `(a ∨ b) → (¬a → b)`
    OrDsPos,
    /// `(b ∨ ¬a) → (a → b)`
    OrDsLast,
    /// `(x → y) → ((a → (b → x)) → (a → (b → y)))`
    Wk2,
    /// `(¬s ∨ (y ∨ ¬c)) → ((c ∧ l) → (s → (y ∧ l)))`
    Incl,
    /// `(¬u ∨ (¬s ∨ v)) → ((u ∧ l) → (s → (v ∧ l)))`
    Carry,
    /// `(¬u ∨ (p ∨ (¬s ∨ v))) → ((u ∧ l) → (s → ((v ∧ l) ∨ (p ∧ l))))`
    CarryEx,
    /// `(p ∧ ¬z) → ((p ∧ z) → x)`
    ZClash,
    /// `(¬a ∨ ¬b) → ((a ∧ za) → ((b ∧ zb) → x))`, or with the two middle
    /// antecedents exchanged when `swapped`.
    Amo { swapped: bool },
    /// `(¬a ∨ x) → ((x → w) → (a → w))`
    OrDsImp,
    /// `(a ∨ x) → ((x → w) → (¬a → w))`
    OrDsPosImp,
    /// `(¬a → (t ∨ e)) → ((¬a → (t ∨ f)) → ((e → (f → t)) → (¬a → t)))`
    Combine,
    /// `¬y → ((y ∧ l) → x)`
    NotAndFalse,
    /// `(s → ¬s) → ¬s`
    SelfNeg,
    /// `((p ∧ s) → ¬s) → (p → ¬s)`
    Final,
    /// `(a → c) → ((b → d) → ((a ∧ b) → (c ∧ d)))`
    CongAnd,
    /// `(a → c) → ((b → d) → ((a ∨ b) → (c ∨ d)))`
    CongOr,
    /// `(c → a) → ((b → d) → ((a → b) → (c → d)))`
    CongImp,
    /// `0 → x`
    FromFalse,
    /// `x → 1`
    ToTrue,
    /// `¬1 → 0`
    NotTrue,
    /// `x → (x ∧ 1)`
    AndTrueR,
    /// `(0 ∨ x) → x`
    OrFalseL,
    /// `(x ∨ 0) → x`
    OrFalseR,
    /// `(1 → x) → x`
    ImpTrueL,
    /// `(x → 0) → ¬x`
    ImpFalseR,
    /// `x → (1 ∧ x)`
    AndTrueL,
    /// `x → (0 → y)`
    ImpFromFalse,
    /// `(u → ¬s) → ((f → u) → ((g → s) → (¬f ∨ ¬g)))`
    LrfnGlue,
}

impl Lemma {
    pub fn arity(self) -> usize {
        use Lemma::*;
        match self {
            NotTrue => 0,
            Id | Dne | Dni | SelfNeg | FromFalse | ToTrue | AndTrueR | OrFalseL | OrFalseR | ImpTrueL | ImpFalseR
            | AndTrueL => 1,
            ExFalso | Contra | Reductio | Cases | OrDs | OrDsPos | OrDsLast | Final | ImpFromFalse => 2,
            Swap | ZClash | OrDsImp | OrDsPosImp | NotAndFalse => 3,
            Wk2 | Incl | Carry | Combine | CongAnd | CongOr | CongImp | LrfnGlue => 4,
            CarryEx | Amo { .. } => 5,
        }
    }

    /// Proves the lemma in `p` over `a` (fresh metavariables).
    pub(super) fn prove(self, p: &mut Prover, a: &[NodeId]) -> Fact {
        use Lemma::*;
        match self {
            Id => {
                let x = a[0];
                let xx = p.imp(x, x);
                let s1 = p.axiom(1, &[x, xx]);
                let s2 = p.axiom(2, &[x, xx, x]);
                let s1b = p.axiom(1, &[x, x]);
                let t = p.mp(s2, s1);
                p.mp(t, s1b)
            }
            ExFalso => {
                let (x, y) = (a[0], a[1]);
                let (nx, ny) = (p.not(x), p.not(y));
                p.deduce(nx, |p, h| {
                    let s1 = p.axiom(1, &[nx, ny]);
                    let t = p.mp(s1, h);
                    let s3 = p.axiom(3, &[y, x]);
                    p.mp(s3, t)
                })
            }
            Dne => {
                let x = a[0];
                let nx = p.not(x);
                let nnx = p.not(nx);
                let nnnx = p.not(nnx);
                p.deduce(nnx, |p, h| {
                    let ef = p.apply(ExFalso, &[nx, nnnx], &[h]);
                    let s3 = p.axiom(3, &[x, nnx]);
                    let t = p.mp(s3, ef);
                    p.mp(t, h)
                })
            }
            Dni => {
                let x = a[0];
                let nx = p.not(x);
                let nnx = p.not(nx);
                let s3 = p.axiom(3, &[nnx, x]);
                let d = p.lemma(Dne, &[nx]);
                p.mp(s3, d)
            }
            Contra => {
                let (x, y) = (a[0], a[1]);
                let xy = p.imp(x, y);
                let (nx, ny) = (p.not(x), p.not(y));
                let nnx = p.not(nx);
                p.deduce(xy, |p, f| {
                    let inner = p.deduce(nnx, |p, h| {
                        let xv = p.apply(Dne, &[x], &[h]);
                        let yv = p.mp(f, xv);
                        p.apply(Dni, &[y], &[yv])
                    });
                    let s3 = p.axiom(3, &[nx, ny]);
                    p.mp(s3, inner)
                })
            }
            Reductio => {
                let (x, y) = (a[0], a[1]);
                let nx = p.not(x);
                let ny = p.not(y);
                let (f1, f2) = (p.imp(nx, y), p.imp(nx, ny));
                let t = p.imp(x, x);
                let nt = p.not(t);
                p.deduce(f1, |p, g1| {
                    p.deduce(f2, |p, g2| {
                        let to_nt = p.deduce(nx, |p, h| {
                            let yv = p.mp(g1, h);
                            let nyv = p.mp(g2, h);
                            p.apply(ExFalso, &[y, nt], &[nyv, yv])
                        });
                        let s3 = p.axiom(3, &[x, t]);
                        let id = p.lemma(Id, &[x]);
                        p.mps(s3, &[to_nt, id])
                    })
                })
            }
            Cases => {
                let (x, t) = (a[0], a[1]);
                let nx = p.not(x);
                let (f1, f2) = (p.imp(x, t), p.imp(nx, t));
                p.deduce(f1, |p, g1| {
                    p.deduce(f2, |p, g2| {
                        let c1 = p.apply(Contra, &[x, t], &[g1]);
                        let c2 = p.apply(Contra, &[nx, t], &[g2]);
                        p.apply(Reductio, &[t, nx], &[c1, c2])
                    })
                })
            }
            Swap => {
                let (x, y, z) = (a[0], a[1], a[2]);
                let yz = p.imp(y, z);
                let f = p.imp(x, yz);
                p.deduce(f, |p, g| p.deduce(y, |p, hy| p.deduce(x, |p, hx| {
                    let t = p.mp(g, hx);
                    p.mp(t, hy)
                })))
            }
            OrDs => {
                let (x, y) = (a[0], a[1]);
                let nx = p.not(x);
                let xy = p.imp(x, y);
                let s9 = p.axiom(9, &[nx, y, xy]);
                let ef = p.lemma(ExFalso, &[x, y]);
                let s1 = p.axiom(1, &[y, x]);
                p.mps(s9, &[ef, s1])
            }
            OrDsPos => {
                let (x, y) = (a[0], a[1]);
                let nx = p.not(x);
                let nxy = p.imp(nx, y);
                let s9 = p.axiom(9, &[x, y, nxy]);
                let ef = p.lemma(ExFalso, &[x, y]);
                let xnxy = p.imp(x, nxy);
                let _ = xnxy;
                let sw = p.apply(Swap, &[nx, x, y], &[ef]);
                let s1 = p.axiom(1, &[y, nx]);
                p.mps(s9, &[sw, s1])
            }
            OrDsLast => {
                let (y, x) = (a[0], a[1]);
                let nx = p.not(x);
                let xy = p.imp(x, y);
                let s9 = p.axiom(9, &[y, nx, xy]);
                let s1 = p.axiom(1, &[y, x]);
                let ef = p.lemma(ExFalso, &[x, y]);
                p.mps(s9, &[s1, ef])
            }
            Wk2 => {
                let (x1, x2, x, y) = (a[0], a[1], a[2], a[3]);
                let xy = p.imp(x, y);
                let bx = p.imp(x2, x);
                let abx = p.imp(x1, bx);
                p.deduce(xy, |p, f| {
                    p.deduce(abx, |p, g| {
                        p.deduce(x1, |p, ha| {
                            p.deduce(x2, |p, hb| {
                                let t = p.mps(g, &[ha, hb]);
                                p.mp(f, t)
                            })
                        })
                    })
                })
            }
            Incl => {
                let (s, y, c, l) = (a[0], a[1], a[2], a[3]);
                let (ns, nc) = (p.not(s), p.not(c));
                let ync = p.or(y, nc);
                let clause = p.or(ns, ync);
                let cl = p.and(c, l);
                p.deduce(clause, |p, hc| {
                    p.deduce(cl, |p, hq| {
                        p.deduce(s, |p, hs| {
                            let a4 = p.axiom(4, &[c, l]);
                            let cv = p.mp(a4, hq);
                            let a5 = p.axiom(5, &[c, l]);
                            let lv = p.mp(a5, hq);
                            let r = p.apply(OrDs, &[s, ync], &[hc, hs]);
                            let yv = p.apply(OrDsLast, &[y, c], &[r, cv]);
                            let a6 = p.axiom(6, &[y, l]);
                            p.mps(a6, &[yv, lv])
                        })
                    })
                })
            }
            Carry => {
                let (u, s, v, l) = (a[0], a[1], a[2], a[3]);
                let (nu, ns) = (p.not(u), p.not(s));
                let nsv = p.or(ns, v);
                let clause = p.or(nu, nsv);
                let ul = p.and(u, l);
                p.deduce(clause, |p, hc| {
                    p.deduce(ul, |p, hq| {
                        p.deduce(s, |p, hs| {
                            let a4 = p.axiom(4, &[u, l]);
                            let uv = p.mp(a4, hq);
                            let a5 = p.axiom(5, &[u, l]);
                            let lv = p.mp(a5, hq);
                            let r = p.apply(OrDs, &[u, nsv], &[hc, uv]);
                            let vv = p.apply(OrDs, &[s, v], &[r, hs]);
                            let a6 = p.axiom(6, &[v, l]);
                            p.mps(a6, &[vv, lv])
                        })
                    })
                })
            }
            CarryEx => {
                let (u, pv, s, v, l) = (a[0], a[1], a[2], a[3], a[4]);
                let (nu, ns) = (p.not(u), p.not(s));
                let nsv = p.or(ns, v);
                let rest = p.or(pv, nsv);
                let clause = p.or(nu, rest);
                let ul = p.and(u, l);
                let (vl, pl) = (p.and(v, l), p.and(pv, l));
                let goal = p.or(vl, pl);
                p.deduce(clause, |p, hc| {
                    p.deduce(ul, |p, hq| {
                        p.deduce(s, |p, hs| {
                            let a4 = p.axiom(4, &[u, l]);
                            let uv = p.mp(a4, hq);
                            let a5 = p.axiom(5, &[u, l]);
                            let lv = p.mp(a5, hq);
                            let r = p.apply(OrDs, &[u, rest], &[hc, uv]);
                            // p ∨ (¬s ∨ v), with l and s known.
                            let case_p = p.deduce(pv, |p, hp| {
                                let a6 = p.axiom(6, &[pv, l]);
                                let plv = p.mps(a6, &[hp, lv]);
                                let a8 = p.axiom(8, &[vl, pl]);
                                p.mp(a8, plv)
                            });
                            let case_v = p.deduce(nsv, |p, hd| {
                                let vv = p.apply(OrDs, &[s, v], &[hd, hs]);
                                let a6 = p.axiom(6, &[v, l]);
                                let vlv = p.mps(a6, &[vv, lv]);
                                let a7 = p.axiom(7, &[vl, pl]);
                                p.mp(a7, vlv)
                            });
                            let s9 = p.axiom(9, &[pv, nsv, goal]);
                            p.mps(s9, &[case_p, case_v, r])
                        })
                    })
                })
            }
            ZClash => {
                let (pv, z, x) = (a[0], a[1], a[2]);
                let nz = p.not(z);
                let (first, second) = (p.and(pv, nz), p.and(pv, z));
                p.deduce(first, |p, h1| {
                    p.deduce(second, |p, h2| {
                        let a5 = p.axiom(5, &[pv, nz]);
                        let nzv = p.mp(a5, h1);
                        let a5b = p.axiom(5, &[pv, z]);
                        let zv = p.mp(a5b, h2);
                        p.apply(ExFalso, &[z, x], &[nzv, zv])
                    })
                })
            }
            Amo { swapped } => {
                let (x1, x2, za, zb, x) = (a[0], a[1], a[2], a[3], a[4]);
                let (na, nb) = (p.not(x1), p.not(x2));
                let clause = p.or(na, nb);
                let (ta, tb) = (p.and(x1, za), p.and(x2, zb));
                let (first, second) = if swapped { (tb, ta) } else { (ta, tb) };
                p.deduce(clause, |p, hc| {
                    p.deduce(first, |p, h1| {
                        p.deduce(second, |p, h2| {
                            let (ha, hb) = if swapped { (h2, h1) } else { (h1, h2) };
                            let a4 = p.axiom(4, &[x1, za]);
                            let av = p.mp(a4, ha);
                            let a4b = p.axiom(4, &[x2, zb]);
                            let bv = p.mp(a4b, hb);
                            let nbv = p.apply(OrDs, &[x1, nb], &[hc, av]);
                            p.apply(ExFalso, &[x2, x], &[nbv, bv])
                        })
                    })
                })
            }
            OrDsImp => {
                let (x, y, w) = (a[0], a[1], a[2]);
                let nx = p.not(x);
                let clause = p.or(nx, y);
                let yw = p.imp(y, w);
                p.deduce(clause, |p, hc| {
                    p.deduce(yw, |p, hf| {
                        p.deduce(x, |p, hx| {
                            let yv = p.apply(OrDs, &[x, y], &[hc, hx]);
                            p.mp(hf, yv)
                        })
                    })
                })
            }
            OrDsPosImp => {
                let (x, y, w) = (a[0], a[1], a[2]);
                let nx = p.not(x);
                let clause = p.or(x, y);
                let yw = p.imp(y, w);
                p.deduce(clause, |p, hc| {
                    p.deduce(yw, |p, hf| {
                        p.deduce(nx, |p, hx| {
                            let yv = p.apply(OrDsPos, &[x, y], &[hc, hx]);
                            p.mp(hf, yv)
                        })
                    })
                })
            }
            Combine => {
                let (x, t, e, f) = (a[0], a[1], a[2], a[3]);
                let nx = p.not(x);
                let (te, tf) = (p.or(t, e), p.or(t, f));
                let (g1, g2) = (p.imp(nx, te), p.imp(nx, tf));
                let ft = p.imp(f, t);
                let g3 = p.imp(e, ft);
                p.deduce(g1, |p, h1| {
                    p.deduce(g2, |p, h2| {
                        p.deduce(g3, |p, h3| {
                            p.deduce(nx, |p, hn| {
                                let w1 = p.mp(h1, hn);
                                let w0 = p.mp(h2, hn);
                                let id = p.lemma(Id, &[t]);
                                let e_to_t = p.deduce(e, |p, he| {
                                    let inner = p.mp(h3, he);
                                    let s9 = p.axiom(9, &[t, f, t]);
                                    p.mps(s9, &[id, inner, w0])
                                });
                                let s9 = p.axiom(9, &[t, e, t]);
                                p.mps(s9, &[id, e_to_t, w1])
                            })
                        })
                    })
                })
            }
            NotAndFalse => {
                let (y, l, x) = (a[0], a[1], a[2]);
                let ny = p.not(y);
                let yl = p.and(y, l);
                p.deduce(ny, |p, hn| {
                    p.deduce(yl, |p, hq| {
                        let a4 = p.axiom(4, &[y, l]);
                        let yv = p.mp(a4, hq);
                        p.apply(ExFalso, &[y, x], &[hn, yv])
                    })
                })
            }
            SelfNeg => {
                let s = a[0];
                let ns = p.not(s);
                let f = p.imp(s, ns);
                p.deduce(f, |p, h| {
                    let id = p.lemma(Id, &[ns]);
                    p.apply(Cases, &[s, ns], &[h, id])
                })
            }
            Final => {
                let (x, s) = (a[0], a[1]);
                let ns = p.not(s);
                let xs = p.and(x, s);
                let f = p.imp(xs, ns);
                p.deduce(f, |p, hf| {
                    p.deduce(x, |p, hx| {
                        let s_to_ns = p.deduce(s, |p, hs| {
                            let a6 = p.axiom(6, &[x, s]);
                            let xsv = p.mps(a6, &[hx, hs]);
                            p.mp(hf, xsv)
                        });
                        p.apply(SelfNeg, &[s], &[s_to_ns])
                    })
                })
            }
            CongAnd => {
                let (x, y, c, d) = (a[0], a[1], a[2], a[3]);
                let (xc, yd, xy) = (p.imp(x, c), p.imp(y, d), p.and(x, y));
                p.deduce(xc, |p, f| {
                    p.deduce(yd, |p, g| {
                        p.deduce(xy, |p, h| {
                            let a4 = p.axiom(4, &[x, y]);
                            let xv = p.mp(a4, h);
                            let a5 = p.axiom(5, &[x, y]);
                            let yv = p.mp(a5, h);
                            let cv = p.mp(f, xv);
                            let dv = p.mp(g, yv);
                            let a6 = p.axiom(6, &[c, d]);
                            p.mps(a6, &[cv, dv])
                        })
                    })
                })
            }
            CongOr => {
                let (x, y, c, d) = (a[0], a[1], a[2], a[3]);
                let (xc, yd) = (p.imp(x, c), p.imp(y, d));
                let cd = p.or(c, d);
                p.deduce(xc, |p, f| {
                    p.deduce(yd, |p, g| {
                        let a7 = p.axiom(7, &[c, d]);
                        let l = p.trans(f, a7);
                        let a8 = p.axiom(8, &[c, d]);
                        let r = p.trans(g, a8);
                        let s9 = p.axiom(9, &[x, y, cd]);
                        p.mps(s9, &[l, r])
                    })
                })
            }
            CongImp => {
                let (x, y, c, d) = (a[0], a[1], a[2], a[3]);
                let (cx, yd, xy) = (p.imp(c, x), p.imp(y, d), p.imp(x, y));
                p.deduce(cx, |p, f| {
                    p.deduce(yd, |p, g| {
                        p.deduce(xy, |p, h| {
                            p.deduce(c, |p, hc| {
                                let xv = p.mp(f, hc);
                                let yv = p.mp(h, xv);
                                p.mp(g, yv)
                            })
                        })
                    })
                })
            }
            FromFalse => {
                let x = a[0];
                let f = p.konst(false);
                let nf = p.not_false();
                p.apply(ExFalso, &[f, x], &[nf])
            }
            ToTrue => {
                let x = a[0];
                let t = p.konst(true);
                let s1 = p.axiom(1, &[t, x]);
                let tv = p.truth();
                p.mp(s1, tv)
            }
            NotTrue => {
                let (t, f) = (p.konst(true), p.konst(false));
                let nt = p.not(t);
                let ef = p.lemma(ExFalso, &[t, f]);
                let sw = p.apply(Swap, &[nt, t, f], &[ef]);
                let tv = p.truth();
                p.mp(sw, tv)
            }
            AndTrueR => {
                let x = a[0];
                let t = p.konst(true);
                p.deduce(x, |p, h| {
                    let a6 = p.axiom(6, &[x, t]);
                    let tv = p.truth();
                    p.mps(a6, &[h, tv])
                })
            }
            AndTrueL => {
                let x = a[0];
                let t = p.konst(true);
                let a6 = p.axiom(6, &[t, x]);
                let tv = p.truth();
                p.mp(a6, tv)
            }
            OrFalseL => {
                let x = a[0];
                let f = p.konst(false);
                let s9 = p.axiom(9, &[f, x, x]);
                let ff = p.lemma(FromFalse, &[x]);
                let id = p.lemma(Id, &[x]);
                p.mps(s9, &[ff, id])
            }
            OrFalseR => {
                let x = a[0];
                let f = p.konst(false);
                let s9 = p.axiom(9, &[x, f, x]);
                let ff = p.lemma(FromFalse, &[x]);
                let id = p.lemma(Id, &[x]);
                p.mps(s9, &[id, ff])
            }
            ImpTrueL => {
                let x = a[0];
                let t = p.konst(true);
                let tx = p.imp(t, x);
                p.deduce(tx, |p, h| {
                    let tv = p.truth();
                    p.mp(h, tv)
                })
            }
            ImpFalseR => {
                let x = a[0];
                let f = p.konst(false);
                let xf = p.imp(x, f);
                p.deduce(xf, |p, h| {
                    let c = p.apply(Contra, &[x, f], &[h]);
                    let nf = p.not_false();
                    p.mp(c, nf)
                })
            }
            ImpFromFalse => {
                let (x, y) = (a[0], a[1]);
                let f = p.konst(false);
                let fy = p.imp(f, y);
                let s1 = p.axiom(1, &[fy, x]);
                let ff = p.lemma(FromFalse, &[y]);
                p.mp(s1, ff)
            }
            LrfnGlue => {
                let (u, s, f, g) = (a[0], a[1], a[2], a[3]);
                let ns = p.not(s);
                let (nf, ng) = (p.not(f), p.not(g));
                let goal = p.or(nf, ng);
                let (h1f, h2f, h3f) = (p.imp(u, ns), p.imp(f, u), p.imp(g, s));
                p.deduce(h1f, |p, h1| {
                    p.deduce(h2f, |p, h2| {
                        p.deduce(h3f, |p, h3| {
                            let pos = p.deduce(f, |p, hf| {
                                let uv = p.mp(h2, hf);
                                let nsv = p.mp(h1, uv);
                                let ngv = p.apply(Contra, &[g, s], &[h3, nsv]);
                                let a8 = p.axiom(8, &[nf, ng]);
                                p.mp(a8, ngv)
                            });
                            let neg = p.axiom(7, &[nf, ng]);
                            p.apply(Cases, &[f, goal], &[pos, neg])
                        })
                    })
                })
            }
        }
    }
}
