//! Bit-string codes of CNFs and code templates with parameter references.

use super::{Clause, Cnf, FormulaError, Lit};

/// The code of a CNF with `k` clauses over `n` variables: bit `c[e][i][l]`
/// is set iff clause `l` contains literal `x_i` (`e = 1`) or `¬x_i` (`e = 0`).
///
/// Bits are stored in the order `e`, then `i`, then `l`; [`CnfCode::bit_index`]
/// is the single source of truth for that layout.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CnfCode {
    n: usize,
    k: usize,
    bits: Vec<bool>,
}

impl CnfCode {
    pub fn zeros(n: usize, k: usize) -> Self {
        CnfCode { n, k, bits: vec![false; 2 * n * k] }
    }

    pub fn from_bits(n: usize, k: usize, bits: Vec<bool>) -> Result<Self, FormulaError> {
        if bits.len() != 2 * n * k {
            return Err(FormulaError::DimensionMismatch { expected: 2 * n * k, found: bits.len() });
        }
        Ok(CnfCode { n, k, bits })
    }

    pub fn bit_index(n: usize, k: usize, e: usize, i: usize, l: usize) -> usize {
        (e * n + i) * k + l
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn num_clauses(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn get(&self, e: usize, i: usize, l: usize) -> bool {
        self.bits[Self::bit_index(self.n, self.k, e, i, l)]
    }

    pub fn set(&mut self, e: usize, i: usize, l: usize, value: bool) {
        let idx = Self::bit_index(self.n, self.k, e, i, l);
        self.bits[idx] = value;
    }

    /// True when no clause slot has both polarities of a variable.
    pub fn is_normalized(&self) -> bool {
        (0..self.n).all(|i| (0..self.k).all(|l| !(self.get(0, i, l) && self.get(1, i, l))))
    }

    /// Encodes a CNF. In strict mode tautological clauses are rejected.
    pub fn encode(f: &Cnf, strict: bool) -> Result<Self, FormulaError> {
        let mut code = CnfCode::zeros(f.num_vars(), f.num_clauses());
        for (l, c) in f.clauses().iter().enumerate() {
            if strict && c.is_tautological() {
                return Err(FormulaError::NotNormalized { clause: l });
            }
            for lit in c.iter() {
                code.set(lit.polarity(), lit.var() as usize, l, true);
            }
        }
        Ok(code)
    }

    pub fn decode(&self) -> Cnf {
        let clauses = (0..self.k)
            .map(|l| {
                let mut lits = Vec::new();
                for i in 0..self.n {
                    for e in [1, 0] {
                        if self.get(e, i, l) {
                            lits.push(Lit::new(i as u32, e == 1));
                        }
                    }
                }
                Clause::new(lits)
            })
            .collect();
        Cnf::new(self.n, clauses).expect("decoded literals are in range")
    }
}

/// One entry of a template code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TemplateBit {
    Const(bool),
    /// The value of parameter `j`.
    Ref(usize),
    /// The negated value of parameter `j`.
    NegRef(usize),
}

impl TemplateBit {
    pub fn eval(self, values: &[bool]) -> bool {
        match self {
            TemplateBit::Const(b) => b,
            TemplateBit::Ref(j) => values[j],
            TemplateBit::NegRef(j) => !values[j],
        }
    }
}

/// A code whose bits are constants or (possibly negated) references to
/// parameter variables; instantiating the parameters yields a [`CnfCode`]
/// with the declared dimensions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TemplateCode {
    n: usize,
    k: usize,
    params: usize,
    entries: Vec<TemplateBit>,
}

impl TemplateCode {
    pub fn new(n: usize, k: usize, params: usize, entries: Vec<TemplateBit>) -> Result<Self, FormulaError> {
        if entries.len() != 2 * n * k {
            return Err(FormulaError::DimensionMismatch { expected: 2 * n * k, found: entries.len() });
        }
        for e in &entries {
            if let TemplateBit::Ref(j) | TemplateBit::NegRef(j) = *e {
                if j >= params {
                    return Err(FormulaError::VarOutOfRange { var: j, num_vars: params, clause: 0 });
                }
            }
        }
        Ok(TemplateCode { n, k, params, entries })
    }

    /// The all-constant template of a concrete code.
    pub fn from_code(code: &CnfCode) -> Self {
        TemplateCode {
            n: code.n,
            k: code.k,
            params: 0,
            entries: code.bits.iter().map(|&b| TemplateBit::Const(b)).collect(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn num_clauses(&self) -> usize {
        self.k
    }

    pub fn num_params(&self) -> usize {
        self.params
    }

    pub fn entries(&self) -> &[TemplateBit] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entry(&self, e: usize, i: usize, l: usize) -> TemplateBit {
        self.entries[CnfCode::bit_index(self.n, self.k, e, i, l)]
    }

    pub fn instantiate(&self, values: &[bool]) -> Result<CnfCode, FormulaError> {
        if values.len() != self.params {
            return Err(FormulaError::DimensionMismatch { expected: self.params, found: values.len() });
        }
        Ok(CnfCode { n: self.n, k: self.k, bits: self.entries.iter().map(|b| b.eval(values)).collect() })
    }

    /// Substitutes all parameters, leaving an all-constant template.
    pub fn partially_evaluate(&self, values: &[bool]) -> Result<TemplateCode, FormulaError> {
        Ok(TemplateCode::from_code(&self.instantiate(values)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_literal_code() {
        let f = Cnf::from_dimacs_clauses(1, &[&[1]]).unwrap();
        let code = CnfCode::encode(&f, true).unwrap();
        assert!(code.get(1, 0, 0));
        assert!(!code.get(0, 0, 0));
    }

    #[test]
    fn empty_cnf_code() {
        let f = Cnf::new(3, vec![]).unwrap();
        let code = CnfCode::encode(&f, true).unwrap();
        assert_eq!((code.num_vars(), code.num_clauses(), code.len()), (3, 0, 0));
        assert_eq!(code.decode(), f);
    }

    #[test]
    fn strict_mode_rejects_tautology() {
        let f = Cnf::from_dimacs_clauses(1, &[&[1, -1]]).unwrap();
        assert!(CnfCode::encode(&f, true).is_err());
        let code = CnfCode::encode(&f, false).unwrap();
        assert!(!code.is_normalized());
        assert_eq!(code.decode(), f);
    }

    /// Every normalized CNF with n ≤ 2, k ≤ 2 round-trips, and every
    /// normalized code round-trips the other way.
    #[test]
    fn exhaustive_round_trip_small() {
        for n in 0..=2usize {
            for k in 0..=2usize {
                let width = 2 * n * k;
                for idx in 0..(1u64 << width) {
                    let bits: Vec<bool> = (0..width).map(|b| (idx >> b) & 1 == 1).collect();
                    let code = CnfCode::from_bits(n, k, bits).unwrap();
                    if !code.is_normalized() {
                        continue;
                    }
                    let f = code.decode();
                    assert!(f.is_normalized());
                    assert_eq!(CnfCode::encode(&f, true).unwrap(), code);
                    assert_eq!(CnfCode::encode(&f, true).unwrap().decode(), f);
                }
            }
        }
    }

    #[test]
    fn template_instantiation() {
        let t = TemplateCode::new(1, 1, 0, vec![TemplateBit::Const(false), TemplateBit::Const(true)]).unwrap();
        assert_eq!(t.instantiate(&[]).unwrap(), CnfCode::from_bits(1, 1, vec![false, true]).unwrap());

        let t = TemplateCode::new(1, 1, 1, vec![TemplateBit::Const(false), TemplateBit::Ref(0)]).unwrap();
        let code = t.instantiate(&[true]).unwrap();
        assert!(code.get(1, 0, 0));
        assert!(t.instantiate(&[]).is_err());

        let t = TemplateCode::new(1, 1, 1, vec![TemplateBit::NegRef(0), TemplateBit::Ref(0)]).unwrap();
        assert_eq!(t.instantiate(&[false]).unwrap().bits(), &[true, false]);
    }

    #[test]
    fn template_rejects_bad_reference() {
        assert!(TemplateCode::new(1, 1, 1, vec![TemplateBit::Ref(1), TemplateBit::Const(true)]).is_err());
    }
}
