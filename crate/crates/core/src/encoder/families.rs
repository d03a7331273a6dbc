use super::EncodeError;
use crate::formula::{Clause, Cnf, Lit};

/// Pigeonhole principle: pigeon `i` sits in hole `h` iff `p[i·holes + h]`.
/// Pigeon clauses come first, then one clause per hole and pigeon pair.
pub fn build_php(pigeons: usize, holes: usize) -> Result<Cnf, EncodeError> {
    if holes == 0 || pigeons <= holes {
        return Err(EncodeError::Parameter("PHP needs pigeons > holes ≥ 1".into()));
    }
    let p = |i: usize, h: usize| (i * holes + h) as u32;
    let mut clauses: Vec<Clause> = (0..pigeons).map(|i| (0..holes).map(|h| Lit::pos(p(i, h))).collect()).collect();
    for h in 0..holes {
        for i in 0..pigeons {
            for i2 in i + 1..pigeons {
                clauses.push(Clause::new(vec![Lit::neg(p(i, h)), Lit::neg(p(i2, h))]));
            }
        }
    }
    Ok(Cnf::new(pigeons * holes, clauses).expect("in range"))
}

/// The Clique-Coloring pair over a common space of variables: graph edges
/// `e[u][v]` (`u < v`) first, then the clique side's `q[r][u]` (slot `r` of a
/// `(k+1)`-clique is vertex `u`), then the color side's `col[u][c]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueColor {
    pub k: usize,
    pub vertices: usize,
    /// "The graph has a `(k+1)`-clique."
    pub clique: Cnf,
    /// "The graph is `k`-colorable."
    pub color: Cnf,
    pub num_graph_vars: usize,
}

impl CliqueColor {
    pub fn edge_var(vertices: usize, u: usize, v: usize) -> usize {
        let (u, v) = if u < v { (u, v) } else { (v, u) };
        // Rows of the strict upper triangle.
        u * vertices - u * (u + 1) / 2 + (v - u - 1)
    }
}

pub fn build_clique_color(k: usize, vertices: usize) -> Result<CliqueColor, EncodeError> {
    if k == 0 || vertices < 2 {
        return Err(EncodeError::Parameter("clique-color needs k ≥ 1 and at least two vertices".into()));
    }
    let nv = vertices;
    let edges = nv * (nv - 1) / 2;
    let slots = k + 1;
    let q = |r: usize, u: usize| (edges + r * nv + u) as u32;
    let col = |u: usize, c: usize| (edges + slots * nv + u * k + c) as u32;
    let total = edges + slots * nv + nv * k;
    let e = |u: usize, v: usize| CliqueColor::edge_var(nv, u, v) as u32;

    let mut clique = Vec::new();
    for r in 0..slots {
        clique.push((0..nv).map(|u| Lit::pos(q(r, u))).collect());
    }
    for u in 0..nv {
        for r in 0..slots {
            for r2 in r + 1..slots {
                clique.push(Clause::new(vec![Lit::neg(q(r, u)), Lit::neg(q(r2, u))]));
            }
        }
    }
    for r in 0..slots {
        for r2 in r + 1..slots {
            for u in 0..nv {
                for v in 0..nv {
                    if u != v {
                        clique.push(Clause::new(vec![Lit::neg(q(r, u)), Lit::neg(q(r2, v)), Lit::pos(e(u, v))]));
                    }
                }
            }
        }
    }

    let mut color = Vec::new();
    for u in 0..nv {
        color.push((0..k).map(|c| Lit::pos(col(u, c))).collect());
    }
    for u in 0..nv {
        for v in u + 1..nv {
            for c in 0..k {
                color.push(Clause::new(vec![Lit::neg(e(u, v)), Lit::neg(col(u, c)), Lit::neg(col(v, c))]));
            }
        }
    }
    Ok(CliqueColor {
        k,
        vertices,
        clique: Cnf::new(total, clique).expect("in range"),
        color: Cnf::new(total, color).expect("in range"),
        num_graph_vars: edges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{dpll_sat, SearchBudget};

    #[test]
    fn php_two_one() {
        assert_eq!(build_php(2, 1).unwrap(), Cnf::from_dimacs_clauses(2, &[&[1], &[2], &[-1, -2]]).unwrap());
        assert!(build_php(1, 1).is_err());
    }

    #[test]
    fn php_unsatisfiable() {
        for h in 1..=3 {
            assert!(dpll_sat(&build_php(h + 1, h).unwrap(), &SearchBudget::default()).is_unsat());
        }
    }

    #[test]
    fn edge_numbering_is_dense() {
        let nv = 5;
        let mut seen = vec![false; nv * (nv - 1) / 2];
        for u in 0..nv {
            for v in u + 1..nv {
                let idx = CliqueColor::edge_var(nv, u, v);
                assert!(!seen[idx]);
                seen[idx] = true;
            }
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn clique_color_sides() {
        let b = SearchBudget::default();
        let cc = build_clique_color(1, 2).unwrap();
        assert!(dpll_sat(&cc.clique.conjoin(&cc.color).unwrap(), &b).is_unsat());
        // With the edge present the clique side is satisfiable; without it
        // the color side is.
        let with_edge = |f: &Cnf, present: bool| {
            let mut clauses = f.clauses().to_vec();
            clauses.push(Clause::new(vec![Lit::new(0, present)]));
            Cnf::new(f.num_vars(), clauses).unwrap()
        };
        assert!(dpll_sat(&with_edge(&cc.clique, true), &b).is_sat());
        assert!(dpll_sat(&with_edge(&cc.color, false), &b).is_sat());
        assert!(dpll_sat(&with_edge(&cc.color, true), &b).is_unsat());
        assert!(dpll_sat(&with_edge(&cc.clique, false), &b).is_unsat());
    }
}
