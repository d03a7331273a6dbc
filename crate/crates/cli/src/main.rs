use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode, Stdio};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use prfkit::encoder::{
    am_reduce, build_clique_color, build_con, build_lrfn, build_php, build_prf_artifact, build_rfn, build_sat,
    build_strongly_friendly_artifact, render_var_map, CliqueColor, FriendlyParams, Poly, PolyBudget,
};
use prfkit::experiment;
use prfkit::formula::{dimacs, Assignment, Cnf, CnfCode};
use prfkit::oracle::{dpll_sat, SatResult, SearchBudget};
use prfkit::proofgen::{encode_witness, refute_prf_nontaut};
use prfkit::resolution::{check_refutation, text, CheckMode};

/// Environment variable holding the default wall-clock ceiling (seconds)
/// of every oracle search.
const BUDGET_ENV: &str = "PRFKIT_BUDGET_SECS";

#[derive(Parser)]
#[command(name = "prfkit", version, about = "Proof-existence encodings, reflection principles and proof generators")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a formula family and write it with a variable-map sidecar.
    Encode(EncodeArgs),
    /// Check a Resolution refutation; exit 0 iff valid.
    Check(CheckArgs),
    /// Refute the m-line proof formula of a satisfiable CNF.
    Generate(GenerateArgs),
    /// Encode a refutation as a satisfying assignment of the proof formula.
    Witness(WitnessArgs),
    /// Decide satisfiability, internally or with an external solver.
    Solve(SolveArgs),
    /// Run an experiment suite and emit a JSON report.
    Experiment(ExperimentArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Prf,
    Sat,
    Rfn,
    Lrfn,
    Con,
    Am,
    Php,
    CliqueColor,
    StronglyFriendly,
}

#[derive(Args)]
struct EncodeArgs {
    family: Family,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// Input CNF in DIMACS (prf, lrfn, am).
    #[arg(long)]
    cnf: Option<PathBuf>,
    /// Length polynomial in `s`, e.g. `4s` (am, strongly-friendly).
    #[arg(long, default_value = "4s")]
    p: String,
    /// Refutation budget polynomial, e.g. `s^3` (am).
    #[arg(long, default_value = "s^3")]
    q: String,
    #[arg(long)]
    pigeons: Option<usize>,
    #[arg(long)]
    holes: Option<usize>,
    #[arg(long)]
    vertices: Option<usize>,
    /// Output file; standard output when absent (no sidecar then).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Variable-map sidecar; defaults to `<out>.vars`.
    #[arg(long)]
    vars: Option<PathBuf>,
    /// Color side of clique-color; defaults to `<out>.color`.
    #[arg(long)]
    color_out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Strict,
    Weakening,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long)]
    cnf: PathBuf,
    #[arg(long)]
    proof: PathBuf,
    #[arg(long, value_enum, default_value = "weakening")]
    mode: Mode,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    cnf: PathBuf,
    #[arg(long)]
    m: usize,
    /// Writes the proof formula the refutation refers to.
    #[arg(long)]
    prf_out: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct WitnessArgs {
    #[arg(long)]
    cnf: PathBuf,
    #[arg(long)]
    proof: PathBuf,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    cnf: PathBuf,
    /// External solver reading DIMACS on standard input. Only models are
    /// trusted (after checking them); its UNSAT answers are advisory.
    #[arg(long)]
    solver: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExperimentName {
    LrfnNontaut,
    AmRoundtrip,
    LowerboundTrend,
    RfnCfSizes,
}

#[derive(Args)]
struct ExperimentArgs {
    name: ExperimentName,
    #[arg(long)]
    count: Option<usize>,
    /// Maximum variable count (lrfn-nontaut) or ladder, e.g. `1..3`
    /// (lowerbound-trend).
    #[arg(long)]
    n: Option<String>,
    /// Maximum clause count (lrfn-nontaut).
    #[arg(long)]
    k: Option<usize>,
    /// Proof lengths, e.g. `32` or `8,16,32`; the ladder uses one value.
    #[arg(long)]
    m: Option<String>,
    #[arg(long, default_value = "unsat-pairs")]
    family: String,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Grid size (rfn-cf-sizes).
    #[arg(long, default_value_t = 6)]
    max: usize,
    /// Longest refutation searched (lowerbound-trend).
    #[arg(long, default_value_t = 20)]
    max_lines: usize,
    #[arg(long, default_value = "4s")]
    p: String,
    #[arg(long, default_value = "s^3")]
    q: String,
    /// Write the JSON report here instead of standard output.
    #[arg(long)]
    report: Option<PathBuf>,
}

/// A failure of the checked property, as opposed to a usage or I/O error.
struct Semantic(String);

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.cmd {
        Cmd::Encode(a) => encode(a),
        Cmd::Check(a) => check(a),
        Cmd::Generate(a) => generate(a),
        Cmd::Witness(a) => witness(a),
        Cmd::Solve(a) => solve(a),
        Cmd::Experiment(a) => run_experiment(a),
    };
    match result {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(Semantic(msg))) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

type Outcome = Result<std::result::Result<(), Semantic>>;

fn search_budget() -> Result<SearchBudget> {
    match std::env::var(BUDGET_ENV) {
        Ok(s) => {
            let secs: f64 = s.trim().parse().with_context(|| format!("{BUDGET_ENV}={s} is not a number"))?;
            if !(secs > 0.0) {
                bail!("{BUDGET_ENV} must be positive");
            }
            Ok(SearchBudget::with_seconds(secs))
        }
        Err(_) => Ok(SearchBudget::default()),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_cnf(path: &Path) -> Result<Cnf> {
    dimacs::parse(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn need(v: Option<usize>, name: &str) -> Result<usize> {
    v.ok_or_else(|| anyhow!("--{name} is required for this family"))
}

fn budget(p: &str, q: &str) -> Result<PolyBudget> {
    let p: Poly = p.parse().map_err(|e| anyhow!("--p: {e}"))?;
    let q: Poly = q.parse().map_err(|e| anyhow!("--q: {e}"))?;
    Ok(PolyBudget::new(p, q)?)
}

fn encode(a: EncodeArgs) -> Outcome {
    let cnf = a.cnf.as_deref().map(read_cnf).transpose()?;
    let need_cnf = || cnf.as_ref().ok_or_else(|| anyhow!("--cnf is required for this family"));
    let (text, map) = match a.family {
        Family::Php => {
            let (p, h) = (need(a.pigeons, "pigeons")?, need(a.holes, "holes")?);
            let f = build_php(p, h)?;
            let map: Vec<_> = (0..p)
                .flat_map(|i| (0..h).map(move |j| ("pigeon", format!("p[{i}][{j}]"), i * h + j)))
                .collect();
            (dimacs::emit(&f), render_var_map(&map))
        }
        Family::CliqueColor => {
            let (k, nv) = (need(a.k, "k")?, need(a.vertices, "vertices")?);
            let cc = build_clique_color(k, nv)?;
            let color_path = a.color_out.clone().or_else(|| a.out.as_deref().map(|p| with_suffix(p, ".color")));
            if let Some(cp) = &color_path {
                fs::write(cp, dimacs::emit(&cc.color)).with_context(|| format!("writing {}", cp.display()))?;
            }
            (dimacs::emit(&cc.clique), render_var_map(&clique_color_map(&cc)))
        }
        family => {
            let art = match family {
                Family::Prf => match &cnf {
                    Some(f) => {
                        let code = CnfCode::encode(f, true)?;
                        build_prf_artifact(need(a.m, "m")?, f.num_vars(), f.num_clauses(), Some(&code))?
                    }
                    None => build_prf_artifact(need(a.m, "m")?, need(a.n, "n")?, need(a.k, "k")?, None)?,
                },
                Family::Sat => build_sat(need(a.n, "n")?, need(a.k, "k")?)?,
                Family::Rfn => build_rfn(need(a.m, "m")?, need(a.n, "n")?, need(a.k, "k")?)?,
                Family::Lrfn => build_lrfn(need_cnf()?, need(a.m, "m")?)?,
                Family::Con => build_con(need(a.m, "m")?, need(a.n, "n")?)?,
                Family::Am => {
                    let art = am_reduce(need_cnf()?, &budget(&a.p, &a.q)?)?;
                    eprintln!("m = {}, q(m) = {}", art.param("m").unwrap_or(0), art.param("q").unwrap_or(0));
                    art
                }
                Family::StronglyFriendly => {
                    let params = FriendlyParams::from_budget(need(a.n, "n")?, need(a.k, "k")?, &budget(&a.p, &a.q)?)?;
                    build_strongly_friendly_artifact(params)?
                }
                Family::Php | Family::CliqueColor => unreachable!(),
            };
            (art.render(), art.render_var_map())
        }
    };
    write_out(a.out.as_deref(), &text)?;
    if let Some(out) = &a.out {
        let vars = a.vars.clone().unwrap_or_else(|| with_suffix(out, ".vars"));
        fs::write(&vars, map).with_context(|| format!("writing {}", vars.display()))?;
    }
    Ok(Ok(()))
}

fn clique_color_map(cc: &CliqueColor) -> Vec<(&'static str, String, usize)> {
    let (nv, k) = (cc.vertices, cc.k);
    let mut map = Vec::new();
    for u in 0..nv {
        for v in u + 1..nv {
            map.push(("graph", format!("e[{u}][{v}]"), CliqueColor::edge_var(nv, u, v)));
        }
    }
    let edges = cc.num_graph_vars;
    for r in 0..=k {
        for u in 0..nv {
            map.push(("clique", format!("q[{r}][{u}]"), edges + r * nv + u));
        }
    }
    for u in 0..nv {
        for c in 0..k {
            map.push(("color", format!("col[{u}][{c}]"), edges + (k + 1) * nv + u * k + c));
        }
    }
    map
}

fn check(a: CheckArgs) -> Outcome {
    let f = read_cnf(&a.cnf)?;
    let p = text::parse(&read(&a.proof)?, &f).with_context(|| format!("parsing {}", a.proof.display()))?;
    let mode = match a.mode {
        Mode::Strict => CheckMode::Strict,
        Mode::Weakening => CheckMode::Weakening,
    };
    let report = check_refutation(&f, &p, mode);
    if report.is_valid() {
        println!("{report}");
        Ok(Ok(()))
    } else {
        Ok(Err(Semantic(report.to_string())))
    }
}

fn generate(a: GenerateArgs) -> Outcome {
    let f = read_cnf(&a.cnf)?;
    let assignment = match dpll_sat(&f, &search_budget()?) {
        SatResult::Sat(x) => x,
        SatResult::Unsat => return Ok(Err(Semantic("the CNF is unsatisfiable; its proof formula is not refutable".into()))),
        SatResult::Exhausted => bail!("satisfiability search exhausted its budget"),
    };
    let proof = refute_prf_nontaut(&f, &assignment, a.m)?;
    let prf = build_prf_artifact(a.m, f.num_vars(), f.num_clauses(), Some(&CnfCode::encode(&f, false)?))?;
    let rho = prf.cnf().expect("proof formulas are CNFs");
    if let Some(path) = &a.prf_out {
        fs::write(path, prf.render()).with_context(|| format!("writing {}", path.display()))?;
    }
    write_out(a.out.as_deref(), &text::emit(&proof, rho))?;
    eprintln!("{}", check_refutation(rho, &proof, CheckMode::Weakening));
    Ok(Ok(()))
}

fn witness(a: WitnessArgs) -> Outcome {
    let f = read_cnf(&a.cnf)?;
    let p = text::parse(&read(&a.proof)?, &f).with_context(|| format!("parsing {}", a.proof.display()))?;
    let w = encode_witness(&f, &p, a.m)?;
    let bits: String = w.bits().iter().map(|&b| if b { '1' } else { '0' }).collect();
    write_out(a.out.as_deref(), &format!("{bits}\n"))?;
    Ok(Ok(()))
}

fn solve(a: SolveArgs) -> Outcome {
    let f = read_cnf(&a.cnf)?;
    if let Some(solver) = &a.solver {
        let mut child = Command::new(solver)
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .spawn()
            .with_context(|| format!("starting {}", solver.display()))?;
        child.stdin.take().expect("piped").write_all(dimacs::emit(&f).as_bytes())?;
        let out = child.wait_with_output()?;
        let out = String::from_utf8_lossy(&out.stdout);
        let status = out.lines().find_map(|l| l.strip_prefix("s ")).map(str::trim);
        match status {
            Some("SATISFIABLE") => {
                let mut bits = vec![false; f.num_vars()];
                for lit in out.lines().filter_map(|l| l.strip_prefix("v ")).flat_map(str::split_whitespace) {
                    let v: i64 = lit.parse().with_context(|| format!("bad model literal `{lit}`"))?;
                    if v != 0 && (v.unsigned_abs() as usize) <= bits.len() {
                        bits[v.unsigned_abs() as usize - 1] = v > 0;
                    }
                }
                if f.eval(&Assignment::new(bits))? {
                    println!("sat (external model verified)");
                    return Ok(Ok(()));
                }
                eprintln!("external model does not satisfy the CNF; falling back to the internal solver");
            }
            Some("UNSATISFIABLE") => eprintln!("external solver: unsat (advisory only)"),
            _ => eprintln!("external solver gave no usable answer"),
        }
    }
    match dpll_sat(&f, &search_budget()?) {
        SatResult::Sat(_) => println!("sat"),
        SatResult::Unsat => println!("unsat"),
        SatResult::Exhausted => bail!("satisfiability search exhausted its budget"),
    }
    Ok(Ok(()))
}

/// `a..b` (inclusive), `a,b,c` or `a`.
fn parse_list(s: &str) -> Result<Vec<usize>> {
    let num = |t: &str| t.trim().parse::<usize>().with_context(|| format!("`{t}` is not a number"));
    if let Some((lo, hi)) = s.split_once("..") {
        let (lo, hi) = (num(lo)?, num(hi.trim_start_matches('='))?);
        if lo > hi {
            bail!("empty range `{s}`");
        }
        return Ok((lo..=hi).collect());
    }
    s.split(',').map(num).collect()
}

fn single(s: &str, name: &str) -> Result<usize> {
    match parse_list(s)?.as_slice() {
        [x] => Ok(*x),
        _ => bail!("--{name} takes a single value here"),
    }
}

fn run_experiment(a: ExperimentArgs) -> Outcome {
    let search = search_budget()?;
    let report = match a.name {
        ExperimentName::LrfnNontaut => {
            let ms = parse_list(a.m.as_deref().unwrap_or("8,16,32"))?;
            let n = single(a.n.as_deref().unwrap_or("6"), "n")?;
            experiment::lrfn_nontaut(a.count.unwrap_or(100), n, a.k.unwrap_or(8), &ms, a.seed, &search)
        }
        ExperimentName::AmRoundtrip => {
            experiment::am_roundtrip(a.count.unwrap_or(50), a.seed, &budget(&a.p, &a.q)?, &search)
        }
        ExperimentName::LowerboundTrend => {
            if a.family != "unsat-pairs" {
                bail!("unknown family `{}` (available: unsat-pairs)", a.family);
            }
            let ns = parse_list(a.n.as_deref().unwrap_or("1..3"))?;
            if ns.contains(&0) {
                bail!("ladder rungs start at n = 1");
            }
            let m = single(a.m.as_deref().unwrap_or("1"), "m")?;
            experiment::lowerbound_trend(&ns, m, a.max_lines, &search)
        }
        ExperimentName::RfnCfSizes => experiment::rfn_cf_sizes(a.max),
    };
    let json = report.to_json();
    match &a.report {
        Some(p) => fs::write(p, &json).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{json}"),
    }
    let summary = format!("{}: {}/{} passed, ok = {}", report.experiment, report.passed, report.total, report.ok);
    if report.ok {
        eprintln!("{summary}");
        Ok(Ok(()))
    } else {
        Ok(Err(Semantic(summary)))
    }
}
