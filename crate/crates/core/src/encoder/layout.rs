use std::fmt::Write as _;

use serde::Serialize;

use super::EncodeError;
use crate::formula::CnfCode;

/// Variable layout of the proof formula for `m`-line refutations of CNFs with
/// `n` variables and `k` clauses.
///
/// Variables are grouped per line `j`, in this order: the mode bit `ax[j]`,
/// axiom selectors `s[l][j]`, pivot selectors `piv[i][j]`, left premise
/// selectors `L[a][j]` and right premise selectors `R[a][j]` for `a < j`, and
/// the content bits `y[e][i][j]` (`e = 1`: `x_i ∈ D_j`, `e = 0`: `¬x_i ∈ D_j`).
/// When the code is symbolic, the `2nk` code bits `c[e][i][l]` follow all
/// line blocks in [`CnfCode`] order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PrfLayout {
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub symbolic: bool,
}

impl PrfLayout {
    pub fn new(m: usize, n: usize, k: usize, symbolic: bool) -> Result<Self, EncodeError> {
        if m == 0 {
            return Err(EncodeError::Parameter("m must be at least 1".into()));
        }
        let layout = PrfLayout { m, n, k, symbolic };
        // Everything else is bounded by the clause count.
        layout.checked_num_clauses().ok_or(EncodeError::Overflow)?;
        if layout.checked_num_vars().is_none_or(|v| v > u32::MAX as usize) {
            return Err(EncodeError::Overflow);
        }
        Ok(layout)
    }

    /// `V_inst(m, n, k) = m(3n + k + 1) + m(m − 1)`.
    pub fn instance_vars(m: usize, n: usize, k: usize) -> usize {
        m * (3 * n + k + 1) + m * (m - 1)
    }

    fn checked_num_vars(&self) -> Option<usize> {
        let per_line = (3usize.checked_mul(self.n)?).checked_add(self.k)?.checked_add(1)?;
        let inst = self.m.checked_mul(per_line)?.checked_add(self.m.checked_mul(self.m - 1)?)?;
        let code = if self.symbolic { 2usize.checked_mul(self.n)?.checked_mul(self.k)? } else { 0 };
        inst.checked_add(code)
    }

    /// Upper bound on the clause count of the symbolic formula.
    pub(crate) fn checked_num_clauses(&self) -> Option<usize> {
        let (m, n, k) = (self.m, self.n, self.k);
        let sel = m.checked_mul(m)?;
        let per_line = k
            .checked_mul(k)?
            .checked_add(n.checked_mul(n)?)?
            .checked_add(sel)?
            .checked_add(2usize.checked_mul(n)?.checked_mul(k.max(1))?)?
            .checked_add(4usize.checked_mul(m)?.checked_mul(n)?)?
            .checked_add(8)?;
        m.checked_mul(per_line)?.checked_add(2 * n)
    }

    pub fn num_instance_vars(&self) -> usize {
        Self::instance_vars(self.m, self.n, self.k)
    }

    pub fn num_code_bits(&self) -> usize {
        2 * self.n * self.k
    }

    pub fn num_vars(&self) -> usize {
        self.num_instance_vars() + if self.symbolic { self.num_code_bits() } else { 0 }
    }

    fn line_base(&self, j: usize) -> usize {
        j * (1 + self.k + 3 * self.n) + j * j.saturating_sub(1)
    }

    pub fn ax(&self, j: usize) -> usize {
        self.line_base(j)
    }

    pub fn s(&self, l: usize, j: usize) -> usize {
        self.line_base(j) + 1 + l
    }

    pub fn piv(&self, i: usize, j: usize) -> usize {
        self.line_base(j) + 1 + self.k + i
    }

    pub fn left(&self, a: usize, j: usize) -> usize {
        debug_assert!(a < j);
        self.line_base(j) + 1 + self.k + self.n + a
    }

    pub fn right(&self, a: usize, j: usize) -> usize {
        debug_assert!(a < j);
        self.line_base(j) + 1 + self.k + self.n + j + a
    }

    pub fn y(&self, e: usize, i: usize, j: usize) -> usize {
        self.line_base(j) + 1 + self.k + self.n + 2 * j + e * self.n + i
    }

    /// Code bit `c[e][i][l]`; only meaningful for symbolic layouts.
    pub fn c(&self, e: usize, i: usize, l: usize) -> usize {
        self.num_instance_vars() + CnfCode::bit_index(self.n, self.k, e, i, l)
    }

    /// Every variable with its block and name, in index order.
    pub fn var_map(&self) -> Vec<(&'static str, String, usize)> {
        let mut out = Vec::with_capacity(self.num_vars());
        for j in 0..self.m {
            out.push(("mode", format!("ax[{j}]"), self.ax(j)));
            for l in 0..self.k {
                out.push(("axiom", format!("s[{l}][{j}]"), self.s(l, j)));
            }
            for i in 0..self.n {
                out.push(("pivot", format!("piv[{i}][{j}]"), self.piv(i, j)));
            }
            for a in 0..j {
                out.push(("left", format!("L[{a}][{j}]"), self.left(a, j)));
            }
            for a in 0..j {
                out.push(("right", format!("R[{a}][{j}]"), self.right(a, j)));
            }
            for e in 0..2 {
                for i in 0..self.n {
                    out.push(("content", format!("y[{e}][{i}][{j}]"), self.y(e, i, j)));
                }
            }
        }
        if self.symbolic {
            for e in 0..2 {
                for i in 0..self.n {
                    for l in 0..self.k {
                        out.push(("code", format!("c[{e}][{i}][{l}]"), self.c(e, i, l)));
                    }
                }
            }
        }
        out.sort_by_key(|t| t.2);
        out
    }
}

/// Sidecar variable map: one `name index` line per variable (1-based, as in
/// DIMACS), under a `[block]` header whenever the block changes.
pub fn render_var_map(entries: &[(&str, String, usize)]) -> String {
    let mut out = String::new();
    let mut block = "";
    for (b, name, idx) in entries {
        if *b != block {
            writeln!(out, "[{b}]").unwrap();
            block = b;
        }
        writeln!(out, "{name} {}", idx + 1).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_small() {
        assert_eq!(PrfLayout::instance_vars(2, 1, 1), 12);
        let l = PrfLayout::new(2, 1, 1, false).unwrap();
        assert_eq!(l.num_vars(), 12);
        assert_eq!(PrfLayout::new(2, 1, 1, true).unwrap().num_vars(), 14);
    }

    /// The named variables are exactly `0..V` without collisions.
    #[test]
    fn variable_map_is_a_bijection() {
        for m in 1..=5 {
            for n in 0..=3 {
                for k in 0..=3 {
                    for symbolic in [false, true] {
                        let l = PrfLayout::new(m, n, k, symbolic).unwrap();
                        let map = l.var_map();
                        assert_eq!(map.len(), l.num_vars());
                        for (idx, entry) in map.iter().enumerate() {
                            assert_eq!(entry.2, idx);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn overflow_detected() {
        assert_eq!(PrfLayout::new(1 << 40, 1 << 20, 1, true), Err(EncodeError::Overflow));
        assert!(PrfLayout::new(0, 1, 1, false).is_err());
    }
}
