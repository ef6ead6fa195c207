mod io;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use pseudotour::contraction::{contract, contract_digraph, ContractError};
use pseudotour::decomposition::{decompose, replay};
use pseudotour::exec::Exec;
use pseudotour::generators;
use pseudotour::probability::{self as prob, Tail};
use pseudotour::solver::{solve, solve_portfolio, Algorithm, Outcome, SolveConfig, SolveResult};
use pseudotour::tour::{parse_tour, serialize_tour};
use pseudotour::tsp::{tour_weight, tsp_improve, TspConfig};
use pseudotour::verify::{verify, verify_sequence};
use pseudotour::{parse_graph, serialize_graph, Graph, Tour};

use io::{emit, write_atomic, Inputs, RunManifest};

const TRACE_SCHEMA: &str = "pseudotour.trace/1";
const DIAGNOSTICS_SCHEMA: &str = "pseudotour.diagnostics/1";
const TSP_SCHEMA: &str = "pseudotour.tsp/1";

#[derive(Parser)]
#[command(
    name = "pseudotour",
    version,
    about = "Hamilton circuits by admissible permutations of pseudo-Hamilton tours"
)]
struct Cli {
    /// Write a run manifest (JSON) to this path.
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a random graph.
    Gen(GenArgs),
    /// Collapse degree-2 chains into r-vertices.
    Contract(ContractArgs),
    /// Search for a Hamilton circuit.
    Solve(SolveArgs),
    /// Express the change from one tour to another as admissible moves.
    Decompose(DecomposeArgs),
    /// Evaluate an exact probability or a bound.
    Prob(ProbArgs),
    /// Improve a weighted tour.
    Tsp(TspArgs),
    /// Check that a tour is a Hamilton circuit of a graph.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Family {
    Gnm,
    Boll,
    Frieze,
    R3out,
    Dkinout,
    Planted,
}

#[derive(Args, Serialize)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long)]
    n: usize,
    /// Edge count for gnm.
    #[arg(long)]
    m: Option<usize>,
    /// Out- and in-degree for dkinout.
    #[arg(long)]
    k: Option<usize>,
    /// Non-circuit edges for planted.
    #[arg(long)]
    extra: Option<usize>,
    /// Planted digraph instead of graph.
    #[arg(long)]
    directed: bool,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Planted circuit; defaults to `<out>.tour`.
    #[arg(long)]
    tour_out: Option<PathBuf>,
}

#[derive(Args, Serialize)]
struct ContractArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    /// r-vertex map; defaults to `<out>.map`, or stderr without `--out`.
    #[arg(long)]
    map: Option<PathBuf>,
}

#[derive(Args, Serialize)]
struct SolveArgs {
    #[arg(long, default_value = "g")]
    algorithm: Algorithm,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 1)]
    budget_mult: u64,
    /// Phase budget `⌈6 n³ ln n⌉` instead of `⌈2 n ln n⌉`.
    #[arg(long)]
    extended: bool,
    #[arg(long)]
    contract: bool,
    /// Start from a tour sharing no arc with the graph.
    #[arg(long)]
    complement_start: bool,
    #[arg(long)]
    fanout: Option<usize>,
    #[arg(long)]
    depth: Option<usize>,
    /// Run K seeds concurrently; the lowest successful seed wins.
    #[arg(long, default_value_t = 1)]
    portfolio: usize,
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Keep the whole trace instead of the newest events.
    #[arg(long)]
    full_trace: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Serialize)]
struct DecomposeArgs {
    #[arg(long)]
    start: PathBuf,
    #[arg(long)]
    target: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Formula {
    T11,
    T15,
    T16,
    Occupancy,
    Hoeffding,
    Tv,
    Powersum,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Side {
    Lower,
    Upper,
}

#[derive(Args, Serialize)]
struct ProbArgs {
    #[arg(long, value_enum)]
    formula: Formula,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    r: Option<u64>,
    #[arg(long)]
    m: Option<u64>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    a: Option<f64>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long, value_enum, default_value = "lower")]
    side: Side,
    /// Also estimate by Monte Carlo with this many trials.
    #[arg(long)]
    mc: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args, Serialize)]
struct TspArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Start tour; a seeded random tour otherwise.
    #[arg(long)]
    start: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    stagnation: Option<u64>,
    #[arg(long)]
    fanout: Option<usize>,
    #[arg(long)]
    max_iters: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// JSON summary with the improvement history.
    #[arg(long)]
    summary: Option<PathBuf>,
}

#[derive(Args, Serialize)]
struct VerifyArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    tour: PathBuf,
}

/// What a finished subcommand reports back to the manifest.
struct Done {
    code: u8,
    seed: Option<u64>,
    outcome: Value,
}

impl Done {
    fn ok(seed: Option<u64>, outcome: Value) -> Done {
        Done { code: 0, seed, outcome }
    }
}

fn seed_or_auto(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(|| {
        let s = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_nanos() as u64)
            .unwrap_or(0);
        eprintln!("seed {s}");
        s
    })
}

fn read_graph(inputs: &mut Inputs, path: &Path) -> Result<Graph, String> {
    parse_graph(&inputs.read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn read_tour(inputs: &mut Inputs, path: &Path) -> Result<Tour, String> {
    parse_tour(&inputs.read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn sibling(path: &Path, ext: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(ext);
    PathBuf::from(s)
}

fn run_gen(a: &GenArgs) -> Result<Done, String> {
    let seed = seed_or_auto(a.seed);
    let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| format!("--family needs --{flag}"));
    let mut tour = None;
    let g = match a.family {
        Family::Gnm => generators::gnm(a.n, need(a.m, "m")?, seed),
        Family::Boll => generators::boll_graph(a.n, seed),
        Family::Frieze => generators::frieze_boll_digraph(a.n, seed),
        Family::R3out => generators::r3_out(a.n, seed),
        Family::Dkinout => generators::d_k_in_k_out(a.n, need(a.k, "k")?, seed),
        Family::Planted => {
            let extra = need(a.extra, "extra")?;
            let r = if a.directed {
                generators::planted_directed(a.n, extra, seed)
            } else {
                generators::planted(a.n, extra, seed)
            };
            r.map(|(g, t)| {
                tour = Some(t);
                g
            })
        }
    }
    .map_err(|e| e.to_string())?;
    emit(a.out.as_deref(), &serialize_graph(&g))?;
    if let Some(t) = &tour {
        match (a.tour_out.clone(), &a.out) {
            (Some(p), _) => write_atomic(&p, &serialize_tour(t))?,
            (None, Some(out)) => write_atomic(&sibling(out, ".tour"), &serialize_tour(t))?,
            (None, None) => eprint!("planted tour {}", serialize_tour(t)),
        }
    }
    Ok(Done::ok(
        Some(seed),
        json!({ "n": g.n(), "edges": g.edge_count(), "directed": g.is_directed() }),
    ))
}

fn run_contract(a: &ContractArgs, inputs: &mut Inputs) -> Result<Done, String> {
    let g = read_graph(inputs, &a.input)?;
    let r = if g.is_directed() {
        contract_digraph(&g)
    } else {
        contract(&g)
    };
    let cg = match r {
        Ok(cg) => cg,
        Err(ContractError::TriviallyHamiltonian(cycle)) => {
            eprintln!("graph is a single cycle");
            let t = Tour::new(&cycle).map_err(|e| e.to_string())?;
            emit(a.out.as_deref(), &serialize_tour(&t))?;
            return Ok(Done::ok(None, json!({ "trivial": true })));
        }
        Err(e) => return Err(e.to_string()),
    };
    emit(a.out.as_deref(), &serialize_graph(&cg.g_prime))?;
    let map = cg.map_text();
    match (&a.map, &a.out) {
        (Some(p), _) => write_atomic(p, &map)?,
        (None, Some(out)) => write_atomic(&sibling(out, ".map"), &map)?,
        (None, None) => eprint!("{map}"),
    }
    Ok(Done::ok(
        None,
        json!({ "trivial": false, "n": cg.g_prime.n(), "edges": cg.g_prime.edge_count(), "r_vertices": cg.r_map.len() }),
    ))
}

fn trace_json(r: &SolveResult, winner_seed: u64) -> Value {
    let events: Vec<Value> = r
        .trace
        .iter()
        .map(|e| {
            json!({
                "iter": e.iter,
                "move": e.mv.map(|m| m.to_string()),
                "score": e.score,
                "pseudo": e.pseudo,
                "backtracked": e.backtracked,
                "restart": e.restart,
            })
        })
        .collect();
    json!({
        "schema": TRACE_SCHEMA,
        "seed": winner_seed,
        "initial_pseudo": r.initial_pseudo,
        "working_ids": r.working_ids,
        "events": events,
    })
}

fn run_solve(a: &SolveArgs, inputs: &mut Inputs) -> Result<Done, String> {
    let g = read_graph(inputs, &a.input)?;
    let seed = seed_or_auto(a.seed);
    let mut cfg = SolveConfig::new(a.algorithm, seed);
    cfg.budget_mult = a.budget_mult;
    cfg.extended = a.extended;
    cfg.contract = a.contract;
    cfg.complement_start = a.complement_start;
    cfg.fanout = a.fanout;
    cfg.depth = a.depth;
    cfg.trace = a.trace.is_some();
    cfg.full_trace = a.full_trace;
    cfg.apply_env()?;
    let (offset, r) = if a.portfolio > 1 {
        solve_portfolio(&g, &cfg, a.portfolio, Exec::default())
    } else {
        solve(&g, &cfg).map(|r| (0, r))
    }
    .map_err(|e| e.to_string())?;
    let winner = seed.wrapping_add(offset as u64);
    if let Some(p) = &a.trace {
        write_atomic(
            p,
            &format!(
                "{}\n",
                serde_json::to_string_pretty(&trace_json(&r, winner)).expect("json")
            ),
        )?;
    }
    let summary = json!({
        "algorithm": a.algorithm,
        "winner_seed": winner,
        "iterations": r.iterations,
        "restarts": r.restarts,
        "initial_pseudo": r.initial_pseudo,
        "fanout": cfg.fanout_for(g.n()),
        "depth": cfg.depth_for(g.n()),
        "phase_budget": cfg.phase_budget(g.n()),
    });
    match &r.outcome {
        Outcome::Found(t) => {
            if verify(&g, t) != Ok(true) {
                return Err("internal error: solver output failed verification".into());
            }
            emit(a.out.as_deref(), &serialize_tour(t))?;
            let mut s = summary;
            s["status"] = json!("found");
            Ok(Done::ok(Some(seed), s))
        }
        Outcome::BudgetExhausted(d) => {
            let diag = json!({
                "schema": DIAGNOSTICS_SCHEMA,
                "status": "budget-exhausted",
                "reason": d.reason,
                "iterations": r.iterations,
                "restarts": r.restarts,
                "failed_iterations": d.failed_iterations,
                "pseudo_remaining": d.pseudo_remaining,
                "suspects": d.suspects,
                "failures": d.failures,
            });
            eprintln!("{}", serde_json::to_string_pretty(&diag).expect("json"));
            let mut s = summary;
            s["status"] = json!("budget-exhausted");
            s["pseudo_remaining"] = json!(d.pseudo_remaining);
            Ok(Done {
                code: 2,
                seed: Some(seed),
                outcome: s,
            })
        }
    }
}

fn run_decompose(a: &DecomposeArgs, inputs: &mut Inputs) -> Result<Done, String> {
    let start = read_tour(inputs, &a.start)?;
    let target = read_tour(inputs, &a.target)?;
    let d = decompose(&start, &target).map_err(|e| e.to_string())?;
    let verified = replay(&start, &d.moves).is_ok_and(|t| t == target);
    let mut text: String = d.moves.iter().map(|m| format!("{m}\n")).collect();
    text.push_str(&format!("# replay-verified {verified}\n"));
    emit(a.out.as_deref(), &text)?;
    if !verified {
        return Err("replay did not reach the target".into());
    }
    Ok(Done::ok(
        None,
        json!({ "moves": d.moves.len(), "replay_verified": verified, "spent": d.spent }),
    ))
}

fn run_prob(a: &ProbArgs) -> Result<Done, String> {
    let need = |v: Option<u64>, flag: &str| v.ok_or_else(|| format!("--formula needs --{flag}"));
    let needf = |v: Option<f64>, flag: &str| v.ok_or_else(|| format!("--formula needs --{flag}"));
    let err = |e: prob::ProbError| e.to_string();
    let mut lines = Vec::new();
    let mut outcome = json!({});
    let exact = match a.formula {
        Formula::T11 => Some(prob::p_admissible_3cycle(need(a.n, "n")?).map_err(err)?),
        Formula::T15 => Some(prob::p_proper_intersection(need(a.n, "n")?).map_err(err)?),
        Formula::T16 => {
            let n = need(a.n, "n")?;
            let c = prob::counts_theorem_1_6(n).map_err(err)?;
            lines.push(format!(
                "counts total={} cases12={} case4={}",
                c.total, c.count_cases_1_2, c.count_case_4
            ));
            Some(prob::p_at_least_two(n).map_err(err)?)
        }
        Formula::Occupancy => {
            let r = u32::try_from(need(a.r, "r")?).map_err(|_| "--r too large".to_string())?;
            let n = u32::try_from(need(a.n, "n")?).map_err(|_| "--n too large".to_string())?;
            Some(prob::occupancy_all_occupied(r, n).map_err(err)?)
        }
        Formula::Powersum => {
            let k = a.k.ok_or("--formula needs --k")?;
            let v = prob::power_sum(k, need(a.n, "n")?).map_err(err)?;
            lines.insert(0, v.to_string());
            outcome["value"] = json!(v.to_string());
            None
        }
        Formula::Hoeffding => {
            let side = match a.side {
                Side::Lower => Tail::Lower,
                Side::Upper => Tail::Upper,
            };
            let v = prob::hoeffding_tail(needf(a.a, "a")?, needf(a.p, "p")?, needf(a.alpha, "alpha")?, side)
                .map_err(err)?;
            lines.insert(0, format!("{v:.6e}"));
            outcome["value"] = json!(v);
            None
        }
        Formula::Tv => {
            let v = prob::poisson_occupancy_tv_bound(need(a.r, "r")?, need(a.n, "n")?, need(a.m, "m")?).map_err(err)?;
            lines.insert(0, format!("{v:.6e}"));
            outcome["value"] = json!(v);
            None
        }
    };
    if let Some(q) = &exact {
        lines.insert(0, prob::describe(q));
        outcome["exact"] = json!(q.to_string());
        outcome["decimal"] = json!(prob::to_f64(q));
    }
    let mut seed = None;
    if let Some(trials) = a.mc {
        let s = seed_or_auto(a.seed);
        seed = Some(s);
        let exec = Exec::default();
        let n = need(a.n, "n")?;
        let est = match a.formula {
            Formula::T11 => prob::mc_admissible_3cycle(n, trials, s, exec),
            Formula::T15 => prob::mc_proper_intersection(n, trials, s, exec),
            Formula::T16 => prob::mc_two_admissible_with(n, trials, s, exec),
            _ => return Err("--mc is only available for t11, t15 and t16".into()),
        }
        .map_err(err)?;
        lines.push(format!("mc {est:.6} (trials {trials}, seed {s})"));
        outcome["mc"] = json!(est);
    }
    println!("{}", lines.join("\n"));
    Ok(Done::ok(seed, outcome))
}

fn run_tsp(a: &TspArgs, inputs: &mut Inputs) -> Result<Done, String> {
    let g = read_graph(inputs, &a.input)?;
    let seed = seed_or_auto(a.seed);
    let start = match &a.start {
        Some(p) => read_tour(inputs, p)?,
        None => generators::random_tour_seeded(g.n(), seed),
    };
    let cfg = TspConfig {
        seed,
        fanout: a.fanout,
        stagnation: a.stagnation,
        max_iters: a.max_iters,
    };
    let start_weight = tour_weight(&start, &g).map_err(|e| e.to_string())?;
    let r = tsp_improve(&g, &start, &cfg).map_err(|e| e.to_string())?;
    emit(a.out.as_deref(), &serialize_tour(&r.best.tour))?;
    println!("weight {}", r.best.weight);
    let summary = json!({
        "schema": TSP_SCHEMA,
        "seed": seed,
        "start_weight": start_weight,
        "best_weight": r.best.weight,
        "best_iteration": r.best.iteration,
        "iterations": r.iterations,
        "moves_applied": r.moves_applied,
        "history": r.history,
        "tour": r.best.tour.order(),
    });
    if let Some(p) = &a.summary {
        write_atomic(
            p,
            &format!("{}\n", serde_json::to_string_pretty(&summary).expect("json")),
        )?;
    }
    Ok(Done::ok(
        Some(seed),
        json!({ "start_weight": start_weight, "best_weight": r.best.weight, "iterations": r.iterations }),
    ))
}

fn run_verify(a: &VerifyArgs, inputs: &mut Inputs) -> Result<Done, String> {
    let g = read_graph(inputs, &a.graph)?;
    let text = inputs.read(&a.tour)?;
    let seq: Vec<usize> = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(str::split_whitespace)
        .map(|t| t.parse().map_err(|_| format!("{}: bad vertex `{t}`", a.tour.display())))
        .collect::<Result<_, _>>()?;
    let ok = verify_sequence(&g, &seq).map_err(|e| e.to_string())?;
    println!("{}", if ok { "valid" } else { "invalid" });
    Ok(Done {
        code: u8::from(!ok),
        seed: None,
        outcome: json!({ "valid": ok }),
    })
}

fn params<T: Serialize>(a: &T) -> Value {
    serde_json::to_value(a).expect("args serialize")
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let mut inputs = Inputs::new();
    let (name, p, res) = match &cli.cmd {
        Cmd::Gen(a) => ("gen", params(a), run_gen(a)),
        Cmd::Contract(a) => ("contract", params(a), run_contract(a, &mut inputs)),
        Cmd::Solve(a) => ("solve", params(a), run_solve(a, &mut inputs)),
        Cmd::Decompose(a) => ("decompose", params(a), run_decompose(a, &mut inputs)),
        Cmd::Prob(a) => ("prob", params(a), run_prob(a)),
        Cmd::Tsp(a) => ("tsp", params(a), run_tsp(a, &mut inputs)),
        Cmd::Verify(a) => ("verify", params(a), run_verify(a, &mut inputs)),
    };
    let done = match res {
        Ok(d) => d,
        Err(msg) => {
            eprintln!("error: {msg}");
            Done {
                code: 1,
                seed: None,
                outcome: json!({ "error": msg }),
            }
        }
    };
    if let Some(path) = &cli.manifest {
        let mut m = RunManifest::new(name, argv[1..].to_vec(), p, done.seed, inputs);
        m.exit_code = done.code;
        m.outcome = done.outcome;
        if let Err(e) = m.write(path) {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    ExitCode::from(done.code)
}
