use rayon::prelude::*;

use super::SearchBudget;
use crate::formula::{Assignment, Circuit};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TautologyResult {
    Yes,
    /// The first falsifying assignment in little-endian index order.
    No(Assignment),
    Exhausted,
}

impl TautologyResult {
    pub fn is_yes(&self) -> bool {
        matches!(self, TautologyResult::Yes)
    }
}

/// Low six variables vary within a 64-bit word.
const LANE: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

/// Exhaustive check over all `2ⁿ` assignments, 64 at a time, blocks in
/// parallel.
pub fn is_tautology(c: &Circuit, budget: &SearchBudget) -> TautologyResult {
    let n = c.num_vars();
    if n >= 64 || (1u128 << n) > budget.max_assignments as u128 {
        return TautologyResult::Exhausted;
    }
    let deadline = budget.deadline();
    let total = 1u64 << n;
    let blocks = total.div_ceil(64);
    let valid_mask = if total >= 64 { u64::MAX } else { (1u64 << total) - 1 };
    let found = (0..blocks).into_par_iter().map_init(Vec::new, |scratch, block| {
        if block % 256 == 0 && deadline.passed() {
            return Some(None);
        }
        let inputs: Vec<u64> = (0..n)
            .map(|v| if v < 6 { LANE[v] } else if (block >> (v - 6)) & 1 == 1 { u64::MAX } else { 0 })
            .collect();
        let falsified = !c.eval_words(&inputs, scratch) & valid_mask;
        (falsified != 0).then(|| Some(block * 64 + falsified.trailing_zeros() as u64))
    });
    match found.find_map_first(|r| r) {
        None => TautologyResult::Yes,
        Some(None) => TautologyResult::Exhausted,
        Some(Some(index)) => TautologyResult::No(Assignment::from_index(index, n)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::Dag;

    #[test]
    fn excluded_middle_and_variable() {
        let mut d = Dag::new();
        let x = d.var(0);
        let nx = d.not(x);
        let em = d.or(x, nx);
        let b = SearchBudget::default();
        assert_eq!(is_tautology(&d.to_circuit(em, 1), &b), TautologyResult::Yes);
        assert_eq!(is_tautology(&d.to_circuit(x, 1), &b), TautologyResult::No(Assignment::zeros(1)));
    }

    #[test]
    fn counterexample_in_high_block() {
        // ¬(x0 ∧ … ∧ x9) fails only on the all-ones assignment.
        let mut d = Dag::new();
        let vars: Vec<_> = (0..10).map(|i| d.var(i)).collect();
        let all = d.and_chain(&vars);
        let root = d.not(all);
        match is_tautology(&d.to_circuit(root, 10), &SearchBudget::default()) {
            TautologyResult::No(a) => assert!(a.bits().iter().all(|&b| b)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn budget_exhaustion() {
        let mut d = Dag::new();
        let x = d.var(20);
        let b = SearchBudget { max_assignments: 1 << 10, ..SearchBudget::default() };
        assert_eq!(is_tautology(&d.to_circuit(x, 21), &b), TautologyResult::Exhausted);
    }
}
