use prfkit::cfrege::*;
use prfkit::encoder::reflect::{lrfn_dag, rfn_dag};
use prfkit::formula::{Assignment, Circuit, Cnf, Dag, Gate, Node};
use prfkit::oracle::{is_tautology, SearchBudget};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn assert_valid(p: &CfProof) {
    let r = cf_check(p, &SchemaSet::default());
    assert!(r.is_valid(), "{r}");
}

fn taut(c: &Circuit) -> bool {
    is_tautology(c, &SearchBudget::default()).is_yes()
}

fn var(i: u32, n: usize) -> Circuit {
    Circuit::new(n, vec![Gate::Var(i)], 0).unwrap()
}

#[test]
fn schema_one_instance_is_valid() {
    let mut dag = Dag::new();
    let (p, q) = (dag.var(0), dag.var(1));
    let qp = dag.imp(q, p);
    let f = dag.imp(p, qp);
    let proof = CfProof { dag, num_vars: 2, lines: vec![CfLine { formula: f, just: CfJust::Schema { id: 1, args: vec![p, q] } }] };
    assert_valid(&proof);
}

#[test]
fn mismatched_modus_ponens_is_rejected() {
    let mut dag = Dag::new();
    let (p, q) = (dag.var(0), dag.var(1));
    let qp = dag.imp(q, p);
    let f = dag.imp(p, qp);
    let lines = vec![
        CfLine { formula: f, just: CfJust::Schema { id: 1, args: vec![p, q] } },
        CfLine { formula: q, just: CfJust::Mp(0, 0) },
    ];
    let r = cf_check(&CfProof { dag, num_vars: 2, lines }, &SchemaSet::default());
    assert_eq!(r.invalid, Some(CfInvalid { line: 1, reason: "MP shape".into() }));
}

#[test]
fn canonical_step_reorders_conjunctions() {
    let mut dag = Dag::new();
    let (p, q) = (dag.var(0), dag.var(1));
    let pq = dag.and(p, q);
    let qp = dag.and(q, p);
    let a = dag.imp(pq, p);
    let b = dag.imp(qp, p);
    let lines = vec![
        CfLine { formula: a, just: CfJust::Schema { id: 4, args: vec![p, q] } },
        CfLine { formula: b, just: CfJust::Canon(0) },
    ];
    let proof = CfProof { dag, num_vars: 2, lines };
    assert_valid(&proof);
    let mut bad = proof.clone();
    let c = bad.dag.imp(qp, q);
    bad.lines[1].formula = c;
    assert_eq!(cf_check(&bad, &SchemaSet::default()).invalid.unwrap().reason, "canonical forms differ");
}

/// A proof of `x₀ ∨ ¬x₀` built with the lemma library.
fn excluded_middle() -> CfProof {
    let mut p = Prover::new(1);
    let x = p.dag.var(0);
    let nx = p.not(x);
    let goal = p.or(x, nx);
    let pos = p.axiom(7, &[x, nx]);
    let neg = p.axiom(8, &[x, nx]);
    let c = p.apply(Lemma::Cases, &[x, goal], &[pos, neg]);
    p.finish(c)
}

#[test]
fn substitution_examples() {
    let p = excluded_middle();
    assert_valid(&p);
    let same = cf_substitute(&p, &[var(0, 1)]).unwrap();
    assert_valid(&same);
    assert_eq!(same.len(), p.len());
    assert_eq!(emit(&same), emit(&p));
    let one = Circuit::new(0, vec![Gate::Const(true)], 0).unwrap();
    let q = cf_substitute(&p, &[one]).unwrap();
    assert_valid(&q);
    let concl = q.conclusion().unwrap();
    match q.dag.node(concl) {
        Node::Or(a, b) => {
            assert_eq!(q.dag.node(a), Node::Const(true));
            assert_eq!(q.dag.node(b), Node::Not(a));
        }
        other => panic!("unexpected conclusion {other:?}"),
    }
    assert_eq!(cf_substitute(&p, &[]).unwrap_err(), CfError::Arity { expected: 1, found: 0 });
}

fn random_circuit(rng: &mut ChaCha8Rng, n: usize, gates: usize) -> Circuit {
    let mut g = Vec::new();
    for _ in 0..gates {
        let len = g.len() as u32;
        let pick = |rng: &mut ChaCha8Rng| rng.gen_range(0..len);
        let gate = if len == 0 || rng.gen_bool(0.3) {
            if n > 0 && rng.gen_bool(0.8) {
                Gate::Var(rng.gen_range(0..n as u32))
            } else {
                Gate::Const(rng.gen())
            }
        } else {
            match rng.gen_range(0..4) {
                0 => Gate::Not(pick(rng)),
                1 => Gate::And(pick(rng), pick(rng)),
                2 => Gate::Or(pick(rng), pick(rng)),
                _ => Gate::Imp(pick(rng), pick(rng)),
            }
        };
        g.push(gate);
    }
    let out = g.len() - 1;
    Circuit::new(n, g, out).unwrap()
}

#[test]
fn random_substitutions_stay_valid_and_commute_with_eval() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let base = [excluded_middle(), cf_prove_sat_equiv(&Cnf::from_dimacs_clauses(2, &[&[1, -2], &[2]]).unwrap()).unwrap()];
    for round in 0..100 {
        let p = &base[round % 2];
        let n = rng.gen_range(0..=3);
        let gammas: Vec<Circuit> = (0..p.num_vars).map(|_| {
                let size = rng.gen_range(1..6);
                random_circuit(&mut rng, n, size)
            }).collect();
        let q = cf_substitute(p, &gammas).unwrap();
        assert_valid(&q);
        assert_eq!(q.len(), p.len());
        let (c, alpha) = (q.conclusion().unwrap(), p.conclusion().unwrap());
        for idx in 0..1u64 << n {
            let a = Assignment::from_index(idx, n);
            let inner: Vec<bool> = gammas.iter().map(|g| g.eval(&a).unwrap()).collect();
            assert_eq!(q.dag.eval(c, a.bits()), p.dag.eval(alpha, &inner));
        }
    }
}

fn chained(k: usize) -> Cnf {
    let clauses: Vec<Vec<i64>> = (0..k).map(|i| vec![-(i as i64 + 1), i as i64 + 2]).collect();
    let refs: Vec<&[i64]> = clauses.iter().map(Vec::as_slice).collect();
    Cnf::from_dimacs_clauses(k + 1, &refs).unwrap()
}

fn sat_equiv_bound(phi: &Cnf) -> usize {
    SAT_EQUIV_LINES_PER_BIT * (2 * phi.num_vars() * phi.num_clauses()).max(1) + SAT_EQUIV_LINES_PER_BIT
}

#[test]
fn sat_equivalence_examples() {
    let unit = Cnf::from_dimacs_clauses(1, &[&[1]]).unwrap();
    let p = cf_prove_sat_equiv(&unit).unwrap();
    assert_valid(&p);
    assert!(p.len() <= sat_equiv_bound(&unit));
    let contra = Cnf::from_dimacs_clauses(1, &[&[1], &[-1]]).unwrap();
    let q = cf_prove_sat_equiv(&contra).unwrap();
    assert_valid(&q);
    let c = q.conclusion_circuit().unwrap();
    for a in [[false], [true]] {
        assert!(c.eval(&Assignment::new(a.to_vec())).unwrap());
    }
    let one = Circuit::new(0, vec![Gate::Const(true)], 0).unwrap();
    let ground = cf_substitute(&q, &[one]).unwrap();
    assert_valid(&ground);
    assert!(ground.dag.eval(ground.conclusion().unwrap(), &[]));
}

#[test]
fn sat_equivalence_grows_linearly() {
    let mut ratios = Vec::new();
    for k in 1..=20 {
        let phi = chained(k);
        let p = cf_prove_sat_equiv(&phi).unwrap();
        assert_valid(&p);
        assert!(p.len() <= sat_equiv_bound(&phi), "k = {k}: {} lines", p.len());
        ratios.push(p.len() as f64 / (2 * phi.num_vars() * phi.num_clauses()) as f64);
    }
    assert!(ratios.iter().all(|&r| r <= SAT_EQUIV_LINES_PER_BIT as f64 * 2.0), "{ratios:?}");
}

#[test]
fn sat_equivalence_on_random_cnfs() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let n = rng.gen_range(1..=4);
        let k = rng.gen_range(0..=4);
        let clauses: Vec<Vec<i64>> = (0..k)
            .map(|_| {
                (0..rng.gen_range(0..=3)).map(|_| rng.gen_range(1..=n as i64) * if rng.gen() { 1 } else { -1 }).collect()
            })
            .collect();
        let refs: Vec<&[i64]> = clauses.iter().map(Vec::as_slice).collect();
        let phi = Cnf::from_dimacs_clauses(n, &refs).unwrap();
        let p = cf_prove_sat_equiv(&phi).unwrap();
        assert_valid(&p);
        assert!(p.len() <= sat_equiv_bound(&phi));
        assert!(taut(&p.conclusion_circuit().unwrap()));
    }
}

#[test]
fn explosion_from_an_unsound_schema() {
    // Unsound schema: every circuit is an axiom.
    let ext = SchemaSet::new(vec![ExtSchema { name: "any".into(), template: var(0, 1) }]);
    let mut dag = Dag::new();
    let x = dag.var(0);
    let p = CfProof { dag, num_vars: 1, lines: vec![CfLine { formula: x, just: CfJust::Ext { name: "any".into(), args: vec![x] } }] };
    assert!(cf_check(&p, &ext).is_valid());
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..10 {
        let beta = random_circuit(&mut rng, 3, 8);
        let q = cf_explode(&p, &Assignment::from_bits01(&[0]), &beta).unwrap();
        let r = cf_check(&q, &ext);
        assert!(r.is_valid(), "{r}");
        assert!(q.len() <= p.len() + 40, "{} lines", q.len());
        let c = q.conclusion_circuit().unwrap();
        assert_eq!(c.to_gate_list(), {
            let mut d = Dag::new();
            let root = d.import(&beta);
            d.to_circuit(root, c.num_vars()).to_gate_list()
        });
    }
    let one = Circuit::new(0, vec![Gate::Const(true)], 0).unwrap();
    assert!(cf_check(&cf_explode(&p, &Assignment::from_bits01(&[0]), &one).unwrap(), &ext).is_valid());
    assert_eq!(cf_explode(&p, &Assignment::from_bits01(&[1]), &one).unwrap_err(), CfError::NotFalsifying);
}

#[test]
fn reflection_smallest_case() {
    let p = cf_prove_rfn_res(1, 1, 1).unwrap();
    assert_valid(&p);
    let mut dag = p.dag.clone();
    let (_, parts) = rfn_dag(&mut dag, 1, 1, 1).unwrap();
    assert_eq!(p.conclusion(), Some(parts.root));
    assert!(taut(&p.conclusion_circuit().unwrap()));
    assert!(cf_prove_rfn_res(0, 1, 1).is_err());
}

#[test]
fn reflection_two_lines_is_a_tautology() {
    let p = cf_prove_rfn_res(2, 1, 1).unwrap();
    assert_valid(&p);
    let c = p.conclusion_circuit().unwrap();
    assert!(c.num_vars() <= 16);
    assert!(taut(&c));
}

#[test]
fn local_reflection_from_reflection() {
    let contra = Cnf::from_dimacs_clauses(1, &[&[1], &[-1]]).unwrap();
    let rfn = cf_prove_rfn_res(3, 1, 2).unwrap();
    let l = lrfn_from_rfn(&rfn, 3, &contra).unwrap();
    assert_valid(&l);
    let mut dag = l.dag.clone();
    let (_, target) = lrfn_dag(&mut dag, &contra, 3).unwrap();
    assert_eq!(l.conclusion(), Some(target));

    let unit = Cnf::from_dimacs_clauses(1, &[&[1]]).unwrap();
    let small = cf_prove_rfn_res(2, 1, 1).unwrap();
    assert_valid(&lrfn_from_rfn(&small, 2, &unit).unwrap());
    let wide = Cnf::from_dimacs_clauses(2, &[&[1]]).unwrap();
    assert!(matches!(lrfn_from_rfn(&small, 2, &wide), Err(CfError::Arity { .. })));
}

#[test]
fn text_round_trip() {
    let p = cf_prove_rfn_res(1, 1, 1).unwrap();
    let text = emit(&p);
    let q = parse(&text).unwrap();
    assert_valid(&q);
    assert_eq!(q.len(), p.len());
    assert_eq!(emit(&q), text);
    assert!(matches!(parse("cf vars 1\ng0 := var 0\nMP 0 0 : g1\n"), Err(CfError::Syntax { line: 3, .. })));
}
