use std::fmt;

use super::FormulaError;

/// A propositional literal over a 0-based variable index.
///
/// Literals order by variable first and put the positive literal before the
/// negative one, which is the order clauses are stored and emitted in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit {
    var: u32,
    neg: bool,
}

impl Lit {
    pub fn new(var: u32, positive: bool) -> Self {
        Lit { var, neg: !positive }
    }

    pub fn pos(var: u32) -> Self {
        Lit { var, neg: false }
    }

    pub fn neg(var: u32) -> Self {
        Lit { var, neg: true }
    }

    pub fn var(self) -> u32 {
        self.var
    }

    pub fn is_positive(self) -> bool {
        !self.neg
    }

    /// Polarity bit `e`: 1 for `x`, 0 for `¬x`.
    pub fn polarity(self) -> usize {
        usize::from(!self.neg)
    }

    pub fn negated(self) -> Self {
        Lit { var: self.var, neg: !self.neg }
    }

    pub fn from_dimacs(value: i64) -> Option<Self> {
        if value == 0 {
            return None;
        }
        let var = u32::try_from(value.unsigned_abs() - 1).ok()?;
        Some(Lit::new(var, value > 0))
    }

    pub fn to_dimacs(self) -> i64 {
        let v = i64::from(self.var) + 1;
        if self.neg {
            -v
        } else {
            v
        }
    }

    pub fn eval(self, bits: &[bool]) -> bool {
        bits[self.var as usize] != self.neg
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

/// A clause as a set of literals, kept sorted and free of duplicates.
///
/// A clause may contain both polarities of a variable; such clauses are
/// tautological and excluded from the normalized form.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Clause(Vec<Lit>);

impl Clause {
    pub fn new(mut lits: Vec<Lit>) -> Self {
        lits.sort_unstable();
        lits.dedup();
        Clause(lits)
    }

    pub fn empty() -> Self {
        Clause(Vec::new())
    }

    pub fn lits(&self) -> &[Lit] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, lit: Lit) -> bool {
        self.0.binary_search(&lit).is_ok()
    }

    pub fn is_tautological(&self) -> bool {
        self.0
            .windows(2)
            .any(|w| w[0].var == w[1].var && w[0].neg != w[1].neg)
    }

    pub fn is_subset_of(&self, other: &Clause) -> bool {
        let mut it = other.0.iter();
        self.0.iter().all(|l| it.any(|o| o == l))
    }

    pub fn without(&self, lit: Lit) -> Clause {
        Clause(self.0.iter().copied().filter(|&l| l != lit).collect())
    }

    pub fn union(&self, other: &Clause) -> Clause {
        let mut lits = self.0.clone();
        lits.extend_from_slice(&other.0);
        Clause::new(lits)
    }

    pub fn max_var(&self) -> Option<u32> {
        self.0.iter().map(|l| l.var).max()
    }

    pub fn eval(&self, bits: &[bool]) -> bool {
        self.0.iter().any(|l| l.eval(bits))
    }

    pub fn iter(&self) -> impl Iterator<Item = Lit> + '_ {
        self.0.iter().copied()
    }
}

impl FromIterator<Lit> for Clause {
    fn from_iter<T: IntoIterator<Item = Lit>>(iter: T) -> Self {
        Clause::new(iter.into_iter().collect())
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, ")")
    }
}

/// A CNF over `num_vars` variables. Clause order is significant: axiom
/// indices in refutations refer to it.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Cnf {
    num_vars: usize,
    clauses: Vec<Clause>,
}

impl Cnf {
    pub fn new(num_vars: usize, clauses: Vec<Clause>) -> Result<Self, FormulaError> {
        for (idx, c) in clauses.iter().enumerate() {
            if let Some(v) = c.max_var() {
                if v as usize >= num_vars {
                    return Err(FormulaError::VarOutOfRange { var: v as usize, num_vars, clause: idx });
                }
            }
        }
        Ok(Cnf { num_vars, clauses })
    }

    /// Builds a CNF from DIMACS-style signed literals.
    pub fn from_dimacs_clauses(num_vars: usize, clauses: &[&[i64]]) -> Result<Self, FormulaError> {
        let clauses = clauses
            .iter()
            .map(|c| {
                c.iter()
                    .map(|&v| Lit::from_dimacs(v).ok_or(FormulaError::ZeroLiteral))
                    .collect::<Result<Vec<_>, _>>()
                    .map(Clause::new)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Cnf::new(num_vars, clauses)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn clause(&self, idx: usize) -> &Clause {
        &self.clauses[idx]
    }

    pub fn into_clauses(self) -> Vec<Clause> {
        self.clauses
    }

    pub fn is_normalized(&self) -> bool {
        self.clauses.iter().all(|c| !c.is_tautological())
    }

    /// Total literal occurrences.
    pub fn num_literals(&self) -> usize {
        self.clauses.iter().map(Clause::len).sum()
    }

    pub fn eval(&self, a: &Assignment) -> Result<bool, FormulaError> {
        if a.len() != self.num_vars {
            return Err(FormulaError::DimensionMismatch { expected: self.num_vars, found: a.len() });
        }
        Ok(self.clauses.iter().all(|c| c.eval(a.bits())))
    }

    /// Index of the first clause falsified by `a`, if any.
    pub fn first_falsified(&self, a: &Assignment) -> Option<usize> {
        self.clauses.iter().position(|c| !c.eval(a.bits()))
    }

    pub fn without_tautologies(&self) -> Cnf {
        Cnf {
            num_vars: self.num_vars,
            clauses: self.clauses.iter().filter(|c| !c.is_tautological()).cloned().collect(),
        }
    }

    /// The CNF with variables shifted by `offset` into a space of `num_vars` variables.
    pub fn shifted(&self, offset: usize, num_vars: usize) -> Result<Cnf, FormulaError> {
        let clauses = self
            .clauses
            .iter()
            .map(|c| c.iter().map(|l| Lit::new(l.var + offset as u32, l.is_positive())).collect())
            .collect();
        Cnf::new(num_vars, clauses)
    }

    /// Conjunction of two CNFs over the same variable space; clause order is `self` then `other`.
    pub fn conjoin(&self, other: &Cnf) -> Result<Cnf, FormulaError> {
        if self.num_vars != other.num_vars {
            return Err(FormulaError::DimensionMismatch { expected: self.num_vars, found: other.num_vars });
        }
        let mut clauses = self.clauses.clone();
        clauses.extend(other.clauses.iter().cloned());
        Ok(Cnf { num_vars: self.num_vars, clauses })
    }

    /// Variables that occur in some clause.
    pub fn occurring_vars(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_vars];
        for c in &self.clauses {
            for l in c.iter() {
                seen[l.var as usize] = true;
            }
        }
        seen
    }

    /// Applies a partial assignment: satisfied clauses are deleted and
    /// falsified literals removed. Returns the restricted CNF together with
    /// the map from new clause index to original clause index.
    pub fn restrict(&self, rho: &PartialAssignment) -> (Cnf, Vec<usize>) {
        let mut clauses = Vec::new();
        let mut origin = Vec::new();
        for (idx, c) in self.clauses.iter().enumerate() {
            if let Some(restricted) = rho.restrict_clause(c) {
                clauses.push(restricted);
                origin.push(idx);
            }
        }
        (Cnf { num_vars: self.num_vars, clauses }, origin)
    }
}

/// A total assignment `a₁…aₙ`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Assignment(Vec<bool>);

impl Assignment {
    pub fn new(bits: Vec<bool>) -> Self {
        Assignment(bits)
    }

    pub fn zeros(n: usize) -> Self {
        Assignment(vec![false; n])
    }

    /// Little-endian bits of `index`: variable `i` gets bit `i`.
    pub fn from_index(index: u64, n: usize) -> Self {
        Assignment((0..n).map(|i| i < 64 && (index >> i) & 1 == 1).collect())
    }

    pub fn from_bits01(bits: &[u8]) -> Self {
        Assignment(bits.iter().map(|&b| b != 0).collect())
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn bits_mut(&mut self) -> &mut [bool] {
        &mut self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, var: usize) -> bool {
        self.0[var]
    }

    pub fn set(&mut self, var: usize, value: bool) {
        self.0[var] = value;
    }

    pub fn into_bits(self) -> Vec<bool> {
        self.0
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            write!(f, "{}", u8::from(b))?;
        }
        Ok(())
    }
}

/// A partial assignment ρ; unassigned variables are `None`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PartialAssignment(Vec<Option<bool>>);

impl PartialAssignment {
    pub fn empty(n: usize) -> Self {
        PartialAssignment(vec![None; n])
    }

    pub fn from_pairs(n: usize, pairs: &[(usize, bool)]) -> Self {
        let mut rho = PartialAssignment::empty(n);
        for &(v, b) in pairs {
            rho.0[v] = Some(b);
        }
        rho
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(Option::is_none)
    }

    pub fn get(&self, var: usize) -> Option<bool> {
        self.0.get(var).copied().flatten()
    }

    pub fn set(&mut self, var: usize, value: Option<bool>) {
        self.0[var] = value;
    }

    pub fn lit_value(&self, lit: Lit) -> Option<bool> {
        self.get(lit.var as usize).map(|b| b == lit.is_positive())
    }

    /// `None` when ρ satisfies the clause, otherwise the clause with
    /// falsified literals removed.
    pub fn restrict_clause(&self, c: &Clause) -> Option<Clause> {
        let mut kept = Vec::with_capacity(c.len());
        for l in c.iter() {
            match self.lit_value(l) {
                Some(true) => return None,
                Some(false) => {}
                None => kept.push(l),
            }
        }
        Some(Clause(kept))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clause_sorted_and_deduplicated() {
        let c = Clause::new(vec![Lit::neg(2), Lit::pos(0), Lit::neg(2), Lit::pos(2)]);
        assert_eq!(c.lits(), &[Lit::pos(0), Lit::pos(2), Lit::neg(2)]);
        assert!(c.is_tautological());
    }

    #[test]
    fn eval_cnf_examples() {
        let f = Cnf::from_dimacs_clauses(2, &[&[1, -2]]).unwrap();
        assert!(f.eval(&Assignment::from_bits01(&[0, 0])).unwrap());
        assert!(!f.eval(&Assignment::from_bits01(&[0, 1])).unwrap());

        let g = Cnf::from_dimacs_clauses(1, &[&[1], &[-1]]).unwrap();
        for idx in 0..2 {
            assert!(!g.eval(&Assignment::from_index(idx, 1)).unwrap());
        }
    }

    #[test]
    fn eval_rejects_dimension_mismatch() {
        let f = Cnf::from_dimacs_clauses(2, &[&[1, -2]]).unwrap();
        assert!(matches!(
            f.eval(&Assignment::zeros(1)),
            Err(FormulaError::DimensionMismatch { expected: 2, found: 1 })
        ));
    }

    #[test]
    fn var_out_of_range_rejected() {
        assert!(Cnf::from_dimacs_clauses(1, &[&[2]]).is_err());
    }

    #[test]
    fn restriction_deletes_and_shrinks() {
        let f = Cnf::from_dimacs_clauses(2, &[&[1, 2], &[-1], &[-2]]).unwrap();
        let rho = PartialAssignment::from_pairs(2, &[(1, false)]);
        let (g, origin) = f.restrict(&rho);
        assert_eq!(g, Cnf::from_dimacs_clauses(2, &[&[1], &[-1]]).unwrap());
        assert_eq!(origin, vec![0, 1]);
    }

    #[test]
    fn subset_checks() {
        let a = Clause::new(vec![Lit::pos(0)]);
        let b = Clause::new(vec![Lit::pos(0), Lit::neg(1)]);
        assert!(a.is_subset_of(&b));
        assert!(!b.is_subset_of(&a));
        assert!(Clause::empty().is_subset_of(&a));
    }
}
