use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashMap;

use prfkit::encoder::{build_prf, decode_prf_assignment, PrfCode, PrfLayout};
use prfkit::formula::{dimacs, Assignment, Circuit, Clause, Cnf, CnfCode, Dag, Gate, Lit, PartialAssignment};
use prfkit::oracle::{clausify_negation, dpll_sat, is_tautology, min_refutation_length, MinRefutation, SatResult, SearchBudget};
use prfkit::proofgen::{encode_witness, random_satisfiable_cnf, refute_prf_nontaut};
use prfkit::resolution::{check_refutation, restrict_proof, text, CheckMode};

fn cnf_strategy(max_vars: usize, max_clauses: usize) -> impl Strategy<Value = Cnf> {
    (1..=max_vars).prop_flat_map(move |n| {
        let lit = (0..n as u32, any::<bool>()).prop_map(|(v, s)| Lit::new(v, s));
        let clause = prop::collection::vec(lit, 0..=3).prop_map(Clause::new);
        prop::collection::vec(clause, 0..=max_clauses).prop_map(move |cs| Cnf::new(n, cs).unwrap())
    })
}

fn circuit_strategy(max_vars: usize) -> impl Strategy<Value = Circuit> {
    (1..=max_vars, prop::collection::vec((0u8..6, any::<u32>(), any::<u32>()), 1..24)).prop_map(|(n, raw)| {
        let mut gates = Vec::new();
        for (kind, a, b) in raw {
            let len = gates.len() as u32;
            gates.push(match (kind, len) {
                (_, 0) | (0, _) => Gate::Var(a % n as u32),
                (1, _) => Gate::Const(a % 2 == 0),
                (2, _) => Gate::Not(a % len),
                (3, _) => Gate::And(a % len, b % len),
                (4, _) => Gate::Or(a % len, b % len),
                _ => Gate::Imp(a % len, b % len),
            });
        }
        let out = gates.len() - 1;
        Circuit::new(n, gates, out).unwrap()
    })
}

fn brute_sat(f: &Cnf) -> bool {
    (0..1u64 << f.num_vars()).any(|i| f.eval(&Assignment::from_index(i, f.num_vars())).unwrap())
}

/// DPLL agrees with enumeration on ten thousand random CNFs.
#[test]
fn dpll_matches_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let budget = SearchBudget::default();
    for _ in 0..10_000 {
        let n = rng.gen_range(1..=10);
        let clauses = (0..rng.gen_range(0..=4 * n))
            .map(|_| {
                let w = rng.gen_range(1..=3);
                Clause::new((0..w).map(|_| Lit::new(rng.gen_range(0..n as u32), rng.gen())).collect())
            })
            .collect();
        let f = Cnf::new(n, clauses).unwrap();
        match dpll_sat(&f, &budget) {
            SatResult::Sat(a) => assert!(f.eval(&a).unwrap()),
            SatResult::Unsat => assert!(!brute_sat(&f)),
            SatResult::Exhausted => panic!("budget"),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn dimacs_round_trip(f in cnf_strategy(8, 10)) {
        let text = dimacs::emit(&f);
        let g = dimacs::parse(&text).unwrap();
        prop_assert_eq!(&g, &f);
        prop_assert_eq!(dimacs::emit(&g), text);
    }

    #[test]
    fn gate_list_round_trip(c in circuit_strategy(6)) {
        let text = c.to_gate_list();
        prop_assert_eq!(Circuit::parse_gate_list(&text).unwrap().to_gate_list(), text);
    }

    /// Tautology by enumeration iff the clausified negation is unsatisfiable.
    #[test]
    fn tautology_agrees_with_clausification(c in circuit_strategy(8)) {
        let b = SearchBudget::default();
        prop_assert_eq!(is_tautology(&c, &b).is_yes(), dpll_sat(&clausify_negation(&c), &b).is_unsat());
    }

    /// Folding constants and hash-consing keep the function.
    #[test]
    fn dag_folding_preserves_evaluation(c in circuit_strategy(5)) {
        let mut dag = Dag::new();
        let root = dag.import(&c);
        let folded = dag.substitute(root, &mut |_, _| None, true, &mut FxHashMap::default());
        let d = dag.to_circuit(folded, c.num_vars());
        for i in 0..1u64 << c.num_vars() {
            let a = Assignment::from_index(i, c.num_vars());
            prop_assert_eq!(c.eval(&a).unwrap(), d.eval(&a).unwrap());
        }
    }

    /// Minimal refutations exist exactly for unsatisfiable CNFs, and the
    /// witnesses pass the checker and the text round trip.
    #[test]
    fn minimal_refutations_are_sound(f in cnf_strategy(3, 6)) {
        let b = SearchBudget::default();
        match min_refutation_length(&f, 9, CheckMode::Weakening, &b) {
            MinRefutation::Found { length, proof } => {
                prop_assert!(!brute_sat(&f));
                prop_assert_eq!(proof.len(), length);
                prop_assert!(check_refutation(&f, &proof, CheckMode::Strict).is_valid());
                let t = text::emit(&proof, &f);
                prop_assert_eq!(text::emit(&text::parse(&t, &f).unwrap(), &f), t);
                // Nothing shorter.
                let shorter = min_refutation_length(&f, length - 1, CheckMode::Weakening, &b);
                let none_shorter = matches!(shorter, MinRefutation::NoneUpTo { .. });
                prop_assert!(none_shorter);
            }
            MinRefutation::NoneUpTo { satisfiable, .. } => prop_assert!(satisfiable || !brute_sat(&f)),
            MinRefutation::Exhausted { .. } => {}
        }
    }

    /// Restricting a refutation by any partial assignment leaves a
    /// refutation of the restricted CNF.
    #[test]
    fn restriction_keeps_refutations(f in cnf_strategy(3, 6), mask in any::<u8>(), vals in any::<u8>()) {
        let b = SearchBudget::default();
        if let MinRefutation::Found { proof, .. } = min_refutation_length(&f, 9, CheckMode::Weakening, &b) {
            let pairs: Vec<(usize, bool)> =
                (0..f.num_vars()).filter(|v| mask >> v & 1 == 1).map(|v| (v, vals >> v & 1 == 1)).collect();
            let rho = PartialAssignment::from_pairs(f.num_vars(), &pairs);
            let (g, q) = restrict_proof(&f, &proof, &rho).unwrap();
            prop_assert!(check_refutation(&g, &q, CheckMode::Weakening).is_valid());
        }
    }

    /// Encoding a refutation and decoding the assignment gives the padded proof.
    #[test]
    fn witness_decodes_to_the_padded_proof(f in cnf_strategy(3, 5), extra in 0usize..3) {
        let b = SearchBudget::default();
        if let MinRefutation::Found { proof, .. } = min_refutation_length(&f, 9, CheckMode::Weakening, &b) {
            let m = proof.len() + extra;
            let w = encode_witness(&f, &proof, m).unwrap();
            let lay = PrfLayout::new(m, f.num_vars(), f.num_clauses(), false).unwrap();
            let rho = build_prf(&lay, PrfCode::Instantiated(&CnfCode::encode(&f, false).unwrap())).unwrap();
            prop_assert!(rho.eval(&w).unwrap());
            let back = decode_prf_assignment(&lay, &w).unwrap();
            prop_assert_eq!(back.len(), m);
            prop_assert_eq!(&back.lines()[extra..].iter().map(|l| l.clause.clone()).collect::<Vec<_>>(),
                            &proof.lines().iter().map(|l| l.clause.clone()).collect::<Vec<_>>());
            prop_assert!(check_refutation(&f, &back, CheckMode::Weakening).is_valid());
        }
    }

    /// Generated refutations are valid and never get shorter as m grows.
    #[test]
    fn generator_is_monotone_in_m(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=4);
        let k = rng.gen_range(1..=5);
        let f = random_satisfiable_cnf(n, k, &mut rng);
        let SatResult::Sat(a) = dpll_sat(&f, &SearchBudget::default()) else { unreachable!() };
        let mut prev = 0;
        for m in 1..=6 {
            let p = refute_prf_nontaut(&f, &a, m).unwrap();
            let lay = PrfLayout::new(m, n, k, false).unwrap();
            let rho = build_prf(&lay, PrfCode::Instantiated(&CnfCode::encode(&f, false).unwrap())).unwrap();
            prop_assert!(check_refutation(&rho, &p, CheckMode::Weakening).is_valid());
            prop_assert!(p.len() >= prev);
            prev = p.len();
        }
    }
}
