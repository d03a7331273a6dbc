use prfkit::encoder::{build_prf, decode_prf_assignment, PrfCode, PrfLayout};
use prfkit::formula::{Assignment, Cnf, CnfCode};
use prfkit::oracle::SearchBudget;
use prfkit::proofgen::*;
use prfkit::resolution::{check_refutation, CheckMode, ProofLine, ResolutionProof};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn prf_of(f: &Cnf, m: usize) -> (PrfLayout, Cnf) {
    let lay = PrfLayout::new(m, f.num_vars(), f.num_clauses(), false).unwrap();
    let code = CnfCode::encode(f, false).unwrap();
    (lay, build_prf(&lay, PrfCode::Instantiated(&code)).unwrap())
}

fn assert_refutes(f: &Cnf, a: &[u8], m: usize) -> usize {
    let p = refute_prf_nontaut(f, &Assignment::from_bits01(a), m).unwrap();
    let (_, prf) = prf_of(f, m);
    let report = check_refutation(&prf, &p, CheckMode::Weakening);
    assert!(report.is_valid(), "{report}");
    assert!(p.len() <= length_bound(m, f.num_vars(), f.num_clauses()));
    p.len()
}

#[test]
fn unit_clause_two_lines() {
    let f = Cnf::from_dimacs_clauses(1, &[&[1]]).unwrap();
    let len = assert_refutes(&f, &[1], 2);
    assert!(len <= length_bound(2, 1, 1));
}

#[test]
fn binary_clause_three_lines() {
    let f = Cnf::from_dimacs_clauses(2, &[&[1, 2]]).unwrap();
    assert_refutes(&f, &[1, 0], 3);
    assert_refutes(&f, &[0, 1], 3);
    assert_refutes(&f, &[1, 1], 3);
}

#[test]
fn empty_cnf_and_wide_inputs() {
    assert_refutes(&Cnf::new(0, vec![]).unwrap(), &[], 3);
    assert_refutes(&Cnf::new(2, vec![]).unwrap(), &[0, 1], 2);
    // More variables than lines.
    let f = Cnf::from_dimacs_clauses(5, &[&[1, -5], &[2, 3]]).unwrap();
    assert_refutes(&f, &[1, 0, 1, 0, 0], 1);
}

#[test]
fn non_satisfying_assignment_is_rejected() {
    let f = Cnf::from_dimacs_clauses(1, &[&[1]]).unwrap();
    let err = refute_prf_nontaut(&f, &Assignment::from_bits01(&[0]), 2).unwrap_err();
    assert_eq!(err, ProofGenError::NotSatisfying);
    let unsat = Cnf::from_dimacs_clauses(1, &[&[1], &[-1]]).unwrap();
    for a in [[0u8], [1]] {
        assert!(refute_prf_nontaut(&unsat, &Assignment::from_bits01(&a), 2).is_err());
    }
}

#[test]
fn random_satisfiable_batch() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for round in 0..12 {
        let n = 1 + round % 6;
        let k = 1 + (round * 5) % 8;
        let f = random_satisfiable_cnf(n, k, &mut rng);
        let rec = lrfn_nontaut_at(&f, 8, &SearchBudget::default());
        assert!(rec.valid && rec.skipped.is_none(), "{rec:?}");
        assert!(rec.lines.unwrap() <= rec.bound);
    }
}

#[test]
fn suite_skips_unsatisfiable_input() {
    let f = Cnf::from_dimacs_clauses(1, &[&[1], &[-1]]).unwrap();
    let rec = lrfn_nontaut_suite(&f, &Default::default(), &SearchBudget::default());
    assert!(!rec.valid);
    assert_eq!(rec.skipped.as_deref(), Some("unsatisfiable input"));
    assert_eq!(rec.m, 16);
}

fn contradiction_proof() -> (Cnf, ResolutionProof) {
    let f = Cnf::from_dimacs_clauses(1, &[&[1], &[-1]]).unwrap();
    let p = ResolutionProof::new(vec![
        ProofLine::axiom(f.clause(0).clone(), 0),
        ProofLine::axiom(f.clause(1).clone(), 1),
        ProofLine::resolve(prfkit::formula::Clause::empty(), 0, 1, 0),
    ]);
    (f, p)
}

#[test]
fn witness_satisfies_proof_formula() {
    let (f, p) = contradiction_proof();
    for m in [3, 5] {
        let a = encode_witness(&f, &p, m).unwrap();
        let (lay, prf) = prf_of(&f, m);
        assert_eq!(prf.first_falsified(&a), None, "m = {m}");
        let back = decode_prf_assignment(&lay, &a).unwrap();
        assert_eq!(back.len(), m);
        assert_eq!(back.line(m - 1).clause, prfkit::formula::Clause::empty());
    }
    assert_eq!(encode_witness(&f, &p, 2), Err(ProofGenError::ProofTooLong { lines: 3, m: 2 }));
}

#[test]
fn witness_rejects_invalid_proofs() {
    let (f, mut p) = contradiction_proof();
    p.push(ProofLine::axiom(f.clause(0).clone(), 0));
    assert!(matches!(encode_witness(&f, &p, 4), Err(ProofGenError::InvalidProof(_))));
}

/// Decoding a satisfying assignment and encoding it again is the identity.
#[test]
fn witness_round_trip_on_tiny_grid() {
    let cnfs = [
        Cnf::from_dimacs_clauses(1, &[&[1], &[-1]]).unwrap(),
        Cnf::from_dimacs_clauses(0, &[&[]]).unwrap(),
        Cnf::from_dimacs_clauses(1, &[&[]]).unwrap(),
    ];
    for f in cnfs {
        for m in 1..=3 {
            let (lay, prf) = prf_of(&f, m);
            let nv = lay.num_vars();
            if nv > 22 {
                continue;
            }
            let mut seen = 0;
            for idx in 0..1u64 << nv {
                let a = Assignment::from_index(idx, nv);
                if prf.first_falsified(&a).is_some() {
                    continue;
                }
                seen += 1;
                let p = decode_prf_assignment(&lay, &a).unwrap();
                assert_eq!(encode_witness(&f, &p, m).unwrap(), a);
            }
            assert!(seen > 0 || m < 3, "f = {f:?} m = {m}");
        }
    }
}
