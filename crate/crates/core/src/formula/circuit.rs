use std::fmt::Write as _;

use super::{Assignment, FormulaError};

/// One gate of a circuit. Operands are indices of earlier gates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gate {
    Var(u32),
    Const(bool),
    Not(u32),
    And(u32, u32),
    Or(u32, u32),
    Imp(u32, u32),
}

impl Gate {
    pub fn operands(self) -> impl Iterator<Item = u32> {
        let (a, b) = match self {
            Gate::Var(_) | Gate::Const(_) => (None, None),
            Gate::Not(a) => (Some(a), None),
            Gate::And(a, b) | Gate::Or(a, b) | Gate::Imp(a, b) => (Some(a), Some(b)),
        };
        a.into_iter().chain(b)
    }

    fn apply(self, values: &[bool], inputs: &[bool]) -> bool {
        match self {
            Gate::Var(i) => inputs[i as usize],
            Gate::Const(b) => b,
            Gate::Not(a) => !values[a as usize],
            Gate::And(a, b) => values[a as usize] && values[b as usize],
            Gate::Or(a, b) => values[a as usize] || values[b as usize],
            Gate::Imp(a, b) => !values[a as usize] || values[b as usize],
        }
    }

    fn apply_words(self, values: &[u64], inputs: &[u64]) -> u64 {
        match self {
            Gate::Var(i) => inputs[i as usize],
            Gate::Const(b) => {
                if b {
                    u64::MAX
                } else {
                    0
                }
            }
            Gate::Not(a) => !values[a as usize],
            Gate::And(a, b) => values[a as usize] & values[b as usize],
            Gate::Or(a, b) => values[a as usize] | values[b as usize],
            Gate::Imp(a, b) => !values[a as usize] | values[b as usize],
        }
    }
}

/// A Boolean circuit: a gate list in which every operand precedes its user.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Circuit {
    num_vars: usize,
    gates: Vec<Gate>,
    output: usize,
}

impl Circuit {
    pub fn new(num_vars: usize, gates: Vec<Gate>, output: usize) -> Result<Self, FormulaError> {
        for (idx, g) in gates.iter().enumerate() {
            if let Gate::Var(v) = *g {
                if v as usize >= num_vars {
                    return Err(FormulaError::VarOutOfRange { var: v as usize, num_vars, clause: idx });
                }
            }
            if g.operands().any(|o| o as usize >= idx) {
                return Err(FormulaError::ForwardGate { gate: idx });
            }
        }
        if output >= gates.len() {
            return Err(FormulaError::BadOutput { output, size: gates.len() });
        }
        Ok(Circuit { num_vars, gates, output })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn output(&self) -> usize {
        self.output
    }

    pub fn size(&self) -> usize {
        self.gates.len()
    }

    pub fn eval(&self, a: &Assignment) -> Result<bool, FormulaError> {
        if a.len() < self.num_vars {
            return Err(FormulaError::DimensionMismatch { expected: self.num_vars, found: a.len() });
        }
        Ok(self.eval_bits(a.bits()))
    }

    pub(crate) fn eval_bits(&self, inputs: &[bool]) -> bool {
        let mut values = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            let v = g.apply(&values, inputs);
            values.push(v);
        }
        values[self.output]
    }

    /// Evaluates 64 assignments at once; bit `t` of every input word belongs
    /// to assignment `t`.
    pub fn eval_words(&self, inputs: &[u64], scratch: &mut Vec<u64>) -> u64 {
        scratch.clear();
        for g in &self.gates {
            let v = g.apply_words(scratch, inputs);
            scratch.push(v);
        }
        scratch[self.output]
    }

    /// Line-oriented gate list: `vars <n>`, one `g<i> := ...` per gate, `out g<j>`.
    pub fn to_gate_list(&self) -> String {
        let mut out = String::new();
        writeln!(out, "vars {}", self.num_vars).unwrap();
        for (i, g) in self.gates.iter().enumerate() {
            write!(out, "g{i} := ").unwrap();
            write_gate(&mut out, *g);
            out.push('\n');
        }
        writeln!(out, "out g{}", self.output).unwrap();
        out
    }

    pub fn parse_gate_list(text: &str) -> Result<Self, FormulaError> {
        let mut num_vars: Option<usize> = None;
        let mut gates = Vec::new();
        let mut output = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let lineno = lineno + 1;
            let bad = |msg: &str| FormulaError::Syntax { line: lineno, message: msg.to_string() };
            if line.is_empty() || line == "c" || line.starts_with("c ") {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks.as_slice() {
                ["vars", n] => num_vars = Some(n.parse().map_err(|_| bad("bad variable count"))?),
                ["out", g] => output = Some(parse_gate_ref(g).ok_or_else(|| bad("bad output reference"))?),
                [name, ":=", rest @ ..] => {
                    let idx = parse_gate_ref(name).ok_or_else(|| bad("bad gate name"))?;
                    if idx as usize != gates.len() {
                        return Err(bad("gates must be numbered consecutively from g0"));
                    }
                    let r = |t: &str| parse_gate_ref(t).ok_or_else(|| bad("bad operand"));
                    let gate = match rest {
                        ["var", k] => Gate::Var(k.parse().map_err(|_| bad("bad variable"))?),
                        ["const", b] => match *b {
                            "0" => Gate::Const(false),
                            "1" => Gate::Const(true),
                            _ => return Err(bad("constant must be 0 or 1")),
                        },
                        ["not", a] => Gate::Not(r(a)?),
                        ["and", a, b] => Gate::And(r(a)?, r(b)?),
                        ["or", a, b] => Gate::Or(r(a)?, r(b)?),
                        ["imp", a, b] => Gate::Imp(r(a)?, r(b)?),
                        _ => return Err(bad("unknown gate kind")),
                    };
                    gates.push(gate);
                }
                _ => return Err(bad("unrecognized line")),
            }
        }
        let output = output.ok_or(FormulaError::Syntax { line: 0, message: "missing `out` line".into() })?;
        let inferred = gates
            .iter()
            .filter_map(|g| if let Gate::Var(v) = g { Some(*v as usize + 1) } else { None })
            .max()
            .unwrap_or(0);
        Circuit::new(num_vars.unwrap_or(inferred), gates, output as usize)
    }
}

fn write_gate(out: &mut String, g: Gate) {
    match g {
        Gate::Var(k) => write!(out, "var {k}"),
        Gate::Const(b) => write!(out, "const {}", u8::from(b)),
        Gate::Not(a) => write!(out, "not g{a}"),
        Gate::And(a, b) => write!(out, "and g{a} g{b}"),
        Gate::Or(a, b) => write!(out, "or g{a} g{b}"),
        Gate::Imp(a, b) => write!(out, "imp g{a} g{b}"),
    }
    .unwrap();
}

pub(crate) fn parse_gate_ref(tok: &str) -> Option<u32> {
    tok.strip_prefix('g')?.parse().ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circ(n: usize, gates: Vec<Gate>) -> Circuit {
        let out = gates.len() - 1;
        Circuit::new(n, gates, out).unwrap()
    }

    #[test]
    fn eval_examples() {
        let id = circ(1, vec![Gate::Var(0)]);
        assert!(id.eval(&Assignment::from_bits01(&[1])).unwrap());

        let contra = circ(1, vec![Gate::Var(0), Gate::Not(0), Gate::And(0, 1)]);
        for idx in 0..2 {
            assert!(!contra.eval(&Assignment::from_index(idx, 1)).unwrap());
        }

        let ex_falso = circ(1, vec![Gate::Const(false), Gate::Var(0), Gate::Imp(0, 1)]);
        assert!(ex_falso.eval(&Assignment::from_bits01(&[0])).unwrap());
    }

    #[test]
    fn eval_dimension_mismatch() {
        let c = circ(2, vec![Gate::Var(1)]);
        assert!(c.eval(&Assignment::zeros(1)).is_err());
    }

    #[test]
    fn forward_reference_rejected() {
        assert!(matches!(
            Circuit::new(1, vec![Gate::Not(1), Gate::Var(0)], 0),
            Err(FormulaError::ForwardGate { gate: 0 })
        ));
        assert!(Circuit::new(1, vec![Gate::Var(0)], 3).is_err());
    }

    #[test]
    fn gate_list_round_trip() {
        let c = circ(
            2,
            vec![Gate::Var(0), Gate::Var(1), Gate::Not(1), Gate::Imp(0, 2), Gate::Const(true), Gate::Or(3, 4)],
        );
        let text = c.to_gate_list();
        let back = Circuit::parse_gate_list(&text).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.to_gate_list(), text);
    }

    #[test]
    fn words_agree_with_scalar() {
        let c = circ(3, vec![Gate::Var(0), Gate::Var(1), Gate::Var(2), Gate::And(0, 1), Gate::Imp(3, 2)]);
        let inputs = [0xAAAA_AAAA_AAAA_AAAAu64, 0xCCCC_CCCC_CCCC_CCCC, 0xF0F0_F0F0_F0F0_F0F0];
        let mut scratch = Vec::new();
        let w = c.eval_words(&inputs, &mut scratch);
        for t in 0..8u64 {
            let a = Assignment::from_index(t, 3);
            assert_eq!(c.eval(&a).unwrap(), (w >> t) & 1 == 1);
        }
    }
}
