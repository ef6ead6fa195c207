//! SCORE-guided search for a Hamilton circuit over pseudo-Hamilton tours.
//!
//! A run starts from a random tour of the working graph and repeatedly applies
//! the best admissible move found around up to three pseudo-arc vertices. Four
//! variants differ in what they do when no move helps:
//!
//! - `G` falls back to rotations and never backtracks.
//! - `D` has no rotations and reverts the newest move instead.
//! - `GNoR` works on the raw graph, uses only the rotation forced by a degree-2
//!   vertex, and otherwise reverts.
//! - `GHeuristic` is `G` with rotations chosen by successor degree.
//!
//! Once a single pseudo-arc vertex is left the search first tries 3-cycles whose
//! three new arcs all lie in the graph, then [`probe_segment_potdtc`].

use std::collections::hash_map::DefaultHasher;
use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};

use rand::seq::{index, SliceRandom};
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::contraction::{contract, contract_digraph, ContractError, TerminalGraph};
use crate::exec::{rng, sub_seed, Exec, StdRng};
use crate::generators::complement_tour;
use crate::graph::{Graph, VertexId};
use crate::tour::{arc_changes, pseudo_count, score, BacktrackQueue, Move, Tour};
use crate::verify::verify;

/// Overrides the default fanout when set to a positive integer.
pub const FANOUT_ENV: &str = "PSEUDOTOUR_FANOUT";
/// Overrides the default depth cap when set to a positive integer.
pub const DEPTH_ENV: &str = "PSEUDOTOUR_DEPTH";
pub const TRACE_RING: usize = 100_000;
pub const MAX_RESTARTS: u32 = 10;
const MAX_PIVOTS: usize = 3;
const SUSPECTS: usize = 5;
/// Keeps solver streams apart from generator streams that share a seed.
const STREAM_TAG: u64 = 0x736f_6c76_6572;

fn solver_rng(seed: u64, restart: u32) -> StdRng {
    rng(sub_seed(seed ^ STREAM_TAG, u64::from(restart)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    G,
    D,
    GNoR,
    GHeuristic,
}

impl Algorithm {
    fn rotates(self) -> bool {
        matches!(self, Algorithm::G | Algorithm::GHeuristic)
    }

    fn reverts(self) -> bool {
        matches!(self, Algorithm::D | Algorithm::GNoR)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Algorithm::G => "g",
            Algorithm::D => "d",
            Algorithm::GNoR => "g-no-r",
            Algorithm::GHeuristic => "g-heuristic",
        })
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Algorithm, String> {
        match s {
            "g" => Ok(Algorithm::G),
            "d" => Ok(Algorithm::D),
            "g-no-r" => Ok(Algorithm::GNoR),
            "g-heuristic" => Ok(Algorithm::GHeuristic),
            _ => Err(format!("unknown algorithm `{s}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveConfig {
    pub algorithm: Algorithm,
    pub seed: u64,
    /// Arcs sampled per vertex; defaults to `max(3, ⌈ln n⌉)`.
    pub fanout: Option<usize>,
    /// Candidates examined per pivot; defaults to `⌈ln n⌉²`.
    pub depth: Option<usize>,
    /// Iterations per phase before the multiplier; defaults to `⌈2 n ln n⌉`.
    pub budget: Option<u64>,
    pub budget_mult: u64,
    /// Default phase budget becomes `⌈6 n³ ln n⌉`.
    pub extended: bool,
    /// Collapse degree-2 chains first. Ignored by `GNoR`, which needs them.
    pub contract: bool,
    /// Start from a tour sharing no arc with the graph when one can be found.
    pub complement_start: bool,
    pub trace: bool,
    /// Keep every trace event instead of the newest [`TRACE_RING`].
    pub full_trace: bool,
}

fn ln_ceil(n: usize) -> usize {
    (n.max(2) as f64).ln().ceil() as usize
}

impl SolveConfig {
    pub fn new(algorithm: Algorithm, seed: u64) -> SolveConfig {
        SolveConfig {
            algorithm,
            seed,
            fanout: None,
            depth: None,
            budget: None,
            budget_mult: 1,
            extended: false,
            contract: false,
            complement_start: false,
            trace: false,
            full_trace: false,
        }
    }

    /// Fills unset fanout and depth from [`FANOUT_ENV`] and [`DEPTH_ENV`].
    pub fn apply_env(&mut self) -> Result<(), String> {
        for (name, slot) in [(FANOUT_ENV, &mut self.fanout), (DEPTH_ENV, &mut self.depth)] {
            if slot.is_some() {
                continue;
            }
            if let Ok(v) = std::env::var(name) {
                match v.trim().parse::<usize>() {
                    Ok(k) if k > 0 => *slot = Some(k),
                    _ => return Err(format!("{name} must be a positive integer, got `{v}`")),
                }
            }
        }
        Ok(())
    }

    pub fn fanout_for(&self, n: usize) -> usize {
        self.fanout.unwrap_or_else(|| ln_ceil(n).max(3)).max(1)
    }

    pub fn depth_for(&self, n: usize) -> usize {
        self.depth.unwrap_or_else(|| ln_ceil(n).pow(2)).max(1)
    }

    pub fn phase_budget(&self, n: usize) -> u64 {
        let nf = n.max(2) as f64;
        let base = self.budget.unwrap_or_else(|| {
            if self.extended {
                (6.0 * nf.powi(3) * nf.ln()).ceil() as u64
            } else {
                (2.0 * nf * nf.ln()).ceil() as u64
            }
        });
        base.saturating_mul(self.budget_mult.max(1)).max(1)
    }
}

/// One applied move, revert or restart. Vertex ids are those of the working graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEvent {
    pub iter: u64,
    #[serde(rename = "move")]
    pub mv: Option<Move>,
    pub score: i64,
    /// Pseudo-arc count after the event.
    pub pseudo: usize,
    pub backtracked: bool,
    pub restart: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureDiagnostics {
    pub reason: String,
    /// Failed iterations per original vertex id (index 0 unused).
    pub failures: Vec<u64>,
    pub failed_iterations: u64,
    /// Vertices with the most failures, most first.
    pub suspects: Vec<(VertexId, u64)>,
    pub pseudo_remaining: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Found(Tour),
    BudgetExhausted(FailureDiagnostics),
}

#[derive(Debug, Clone)]
pub struct SolveResult {
    pub outcome: Outcome,
    pub iterations: u64,
    pub restarts: u32,
    pub initial_pseudo: usize,
    pub trace: Vec<TraceEvent>,
    /// Start tour of the last restart, over the working graph.
    pub h0: Option<Tour>,
    /// Moves applied since `h0` with reverted ones removed.
    pub net_moves: Vec<Move>,
    /// Final tour over the working graph.
    pub working_tour: Option<Tour>,
    /// Working id to original id.
    pub working_ids: Vec<VertexId>,
}

impl SolveResult {
    pub fn tour(&self) -> Option<&Tour> {
        match &self.outcome {
            Outcome::Found(t) => Some(t),
            Outcome::BudgetExhausted(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("no Hamilton circuit: vertex {vertex} {reason}")]
    NotHamiltonian { vertex: VertexId, reason: String },
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph has {0} vertices, at least 3 are needed")]
    TooSmall(usize),
    #[error("algorithm {0} needs an undirected graph")]
    NeedsUndirected(Algorithm),
    #[error("internal error: {0}")]
    Internal(String),
}

/// A scored move together with the data used to break ties.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Candidate {
    pub mv: Move,
    pub score: i64,
    pub pivot_degree: usize,
    pub touches_degree_two: bool,
}

impl Candidate {
    pub fn new(t: &Tour, g: &Graph, mv: Move, pivot_degree: usize) -> Candidate {
        Candidate {
            mv,
            score: score(t, g, &mv),
            pivot_degree,
            touches_degree_two: touches_degree_two(t, g, &mv),
        }
    }
}

/// Whether `m` removes a pseudo-arc out of a degree-2 vertex or adds a graph arc into one.
pub fn touches_degree_two(t: &Tour, g: &Graph, m: &Move) -> bool {
    let (removed, added) = arc_changes(t, m);
    removed.iter().any(|&(u, v)| !g.arc(u, v) && g.degree(u) == 2)
        || added
            .iter()
            .any(|&(u, v)| g.arc(u, v) && (g.degree(v) == 2 || (!g.is_directed() && g.degree(u) == 2)))
}

/// Highest SCORE, then a degree-2 touch, then pivot degree, then the smallest move.
pub fn select(cands: &[Candidate]) -> Option<&Candidate> {
    cands.iter().max_by(|x, y| {
        (x.score, x.touches_degree_two, x.pivot_degree)
            .cmp(&(y.score, y.touches_degree_two, y.pivot_degree))
            .then_with(|| y.mv.cmp(&x.mv))
    })
}

fn sample<R: Rng>(rng: &mut R, xs: &[VertexId], k: usize) -> Vec<VertexId> {
    if xs.len() <= k {
        let mut v = xs.to_vec();
        v.shuffle(rng);
        v
    } else {
        index::sample(rng, xs.len(), k).into_iter().map(|i| xs[i]).collect()
    }
}

/// Searches the shorter tour segment between `a` and `b` for an admissible
/// `(a c)(x d)` with `c = pred b`, so the graph arc `(a, b)` enters the tour.
/// Up to `fanout` interior vertices `x` and `fanout` arcs out of each are tried;
/// the best move with SCORE ≥ 0 is returned, ties broken uniformly by `rng`.
pub fn probe_segment_potdtc<R: Rng>(
    t: &Tour,
    g: &Graph,
    a: VertexId,
    b: VertexId,
    fanout: usize,
    rng: &mut R,
) -> Option<Move> {
    probe_filtered(t, g, a, b, fanout, rng, |_| true)
}

fn probe_filtered<R: Rng>(
    t: &Tour,
    g: &Graph,
    a: VertexId,
    b: VertexId,
    fanout: usize,
    rng: &mut R,
    allowed: impl Fn(&Move) -> bool,
) -> Option<Move> {
    if a == b {
        return None;
    }
    let c = t.pred(b);
    if c == a {
        return None;
    }
    let (from, to) = if t.distance(a, b) <= t.distance(b, a) {
        (a, b)
    } else {
        (b, a)
    };
    let seg = t.segment(from, to);
    let interior = &seg[1..seg.len() - 1];
    if interior.is_empty() {
        return None;
    }
    let mut best: Option<(i64, Move)> = None;
    let mut ties = 0u32;
    for x in sample(rng, interior, fanout) {
        for y in sample(rng, g.out_neighbors(x), fanout) {
            let m = Move::Potdtc {
                a,
                c,
                b: x,
                d: t.pred(y),
            };
            if !t.is_admissible(&m) || !allowed(&m) {
                continue;
            }
            let s = score(t, g, &m);
            if s < 0 {
                continue;
            }
            // uniform among equal scores; a fixed order walks plateaus in circles
            match best {
                Some((bs, _)) if s < bs => {}
                Some((bs, _)) if s == bs => {
                    ties += 1;
                    if rng.gen_range(0..ties) == 0 {
                        best = Some((s, m));
                    }
                }
                _ => {
                    best = Some((s, m));
                    ties = 1;
                }
            }
        }
    }
    best.map(|(_, m)| m)
}

/// What one call of [`Search::iterate_once`] did.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    Moved,
    /// No move was possible; the iteration still counts.
    Failed,
    /// A revert was needed but neither history nor restarts were left.
    Stuck,
    /// The tour is a Hamilton circuit of the working graph.
    Done,
}

/// Mutable state of one run over a working graph.
pub struct Search<'a> {
    tg: &'a TerminalGraph,
    cfg: SolveConfig,
    fanout: usize,
    depth: usize,
    rng: StdRng,
    tour: Tour,
    h0: Tour,
    backtrack: BacktrackQueue,
    applied: Vec<Move>,
    dead: HashSet<(u64, Move)>,
    /// Tours already seen with a single pseudo-arc vertex.
    plateau: HashSet<u64>,
    failures: Vec<u64>,
    failed: u64,
    restarts: u32,
    iter: u64,
    pseudo: usize,
    initial_pseudo: usize,
    trace: VecDeque<TraceEvent>,
}

fn tour_hash(t: &Tour) -> u64 {
    let mut h = DefaultHasher::new();
    for v in 1..=t.n() {
        t.succ(v).hash(&mut h);
    }
    h.finish()
}

impl<'a> Search<'a> {
    pub fn new(tg: &'a TerminalGraph, cfg: &SolveConfig) -> Result<Search<'a>, SolveError> {
        let n = tg.graph.n();
        if n < 3 {
            return Err(SolveError::TooSmall(n));
        }
        if cfg.algorithm.rotates() && tg.graph.is_directed() {
            return Err(SolveError::NeedsUndirected(cfg.algorithm));
        }
        let backtrack = if cfg.algorithm.reverts() {
            BacktrackQueue::new()
        } else {
            BacktrackQueue::with_capacity(1)
        };
        let mut rng = solver_rng(cfg.seed, 0);
        let tour = initial_tour(tg, cfg, &mut rng);
        let pseudo = pseudo_count(&tour, &tg.graph);
        Ok(Search {
            tg,
            cfg: cfg.clone(),
            fanout: cfg.fanout_for(n),
            depth: cfg.depth_for(n),
            rng,
            h0: tour.clone(),
            tour,
            backtrack,
            applied: Vec::new(),
            dead: HashSet::new(),
            plateau: HashSet::new(),
            failures: vec![0; n + 1],
            failed: 0,
            restarts: 0,
            iter: 0,
            pseudo,
            initial_pseudo: pseudo,
            trace: VecDeque::new(),
        })
    }

    pub fn tour(&self) -> &Tour {
        &self.tour
    }

    pub fn pseudo(&self) -> usize {
        self.pseudo
    }

    pub fn iterations(&self) -> u64 {
        self.iter
    }

    fn g(&self) -> &'a Graph {
        &self.tg.graph
    }

    fn locked(&self, m: &Move) -> bool {
        m.removed_tails()
            .into_iter()
            .any(|x| self.tg.is_forced(x, self.tour.succ(x)))
    }

    fn record(&mut self, mv: Option<Move>, score: i64, backtracked: bool, restart: bool) {
        if !self.cfg.trace {
            return;
        }
        if !self.cfg.full_trace && self.trace.len() == TRACE_RING {
            self.trace.pop_front();
        }
        self.trace.push_back(TraceEvent {
            iter: self.iter,
            mv,
            score,
            pseudo: self.pseudo,
            backtracked,
            restart,
        });
    }

    fn apply(&mut self, m: Move) {
        let s = score(&self.tour, self.g(), &m);
        let inv = m.inverse_on(&self.tour);
        self.tour.apply(&m).expect("candidate moves are admissible");
        self.pseudo = pseudo_count(&self.tour, self.g());
        self.backtrack.push(inv);
        self.applied.push(m);
        self.record(Some(m), s, false, false);
    }

    fn revert_or_restart(&mut self) -> Step {
        match self.backtrack.pop() {
            Ok(inv) => {
                let fwd = self.applied.pop().expect("history and stack agree");
                let s = score(&self.tour, self.g(), &inv);
                self.tour.apply(&inv).expect("inverse of an applied move");
                self.pseudo = pseudo_count(&self.tour, self.g());
                self.dead.insert((tour_hash(&self.tour), fwd.canonical()));
                self.record(Some(inv), s, true, false);
                Step::Moved
            }
            Err(_) if self.restarts < MAX_RESTARTS => {
                self.restarts += 1;
                self.rng = solver_rng(self.cfg.seed, self.restarts);
                self.tour = initial_tour(self.tg, &self.cfg, &mut self.rng);
                self.h0 = self.tour.clone();
                self.backtrack.clear();
                self.applied.clear();
                self.dead.clear();
                self.plateau.clear();
                self.pseudo = pseudo_count(&self.tour, self.g());
                self.record(None, 0, false, true);
                Step::Moved
            }
            Err(_) => Step::Stuck,
        }
    }

    /// Up to three pseudo-arc vertices, highest degree first with random ties.
    /// `GNoR` puts degree-2 vertices first.
    fn pivots(&mut self) -> Vec<VertexId> {
        let g = self.g();
        let t = &self.tour;
        let no_r = self.cfg.algorithm == Algorithm::GNoR;
        let mut keyed: Vec<(bool, std::cmp::Reverse<usize>, u64, VertexId)> = (1..=t.n())
            .filter(|&v| !g.arc(v, t.succ(v)))
            .map(|v| {
                let d = g.degree(v);
                (no_r && d != 2, std::cmp::Reverse(d), self.rng.gen::<u64>(), v)
            })
            .collect();
        keyed.sort_unstable();
        keyed.into_iter().take(MAX_PIVOTS).map(|k| k.3).collect()
    }

    fn allowed(&self, m: &Move, head: Option<Move>, hash: Option<u64>) -> bool {
        self.tour.is_admissible(m)
            && head.map(|h| h.canonical()) != Some(m.canonical())
            && !self.locked(m)
            && hash.is_none_or(|h| !self.dead.contains(&(h, m.canonical())))
    }

    /// Sampled 3-cycles and POTDTCs around each pivot with SCORE ≥ 0.
    pub fn candidates(&mut self, pivots: &[VertexId]) -> Vec<Candidate> {
        let g = self.g();
        let head = self.backtrack.peek().copied();
        let hash = (!self.dead.is_empty()).then(|| tour_hash(&self.tour));
        let l = self.fanout;
        let mut out = Vec::new();
        for &a in pivots {
            let t = &self.tour;
            let mut raw = Vec::new();
            let xs = sample(&mut self.rng, g.out_neighbors(a), l);
            for &x in &xs {
                let b = t.pred(x);
                if b == a {
                    continue;
                }
                for y in sample(&mut self.rng, g.out_neighbors(b), l) {
                    raw.push(Move::ThreeCycle { a, b, c: t.pred(y) });
                }
            }
            let ins = sample(&mut self.rng, g.in_neighbors(t.succ(a)), l);
            for &x in &xs {
                for &c in &ins {
                    raw.push(Move::ThreeCycle { a, b: t.pred(x), c });
                }
            }
            for &v in pivots.iter().filter(|&&v| v != a) {
                for &x in &xs {
                    for y in sample(&mut self.rng, g.out_neighbors(v), l) {
                        raw.push(Move::Potdtc {
                            a,
                            c: t.pred(x),
                            b: v,
                            d: t.pred(y),
                        });
                    }
                }
            }
            raw.shuffle(&mut self.rng);
            let pd = g.degree(a);
            let mut got = 0;
            for m in raw {
                if got == self.depth {
                    break;
                }
                if !self.allowed(&m, head, hash) {
                    continue;
                }
                got += 1;
                let c = Candidate::new(&self.tour, g, m, pd);
                if c.score >= 0 {
                    out.push(c);
                }
            }
        }
        out
    }

    /// A 3-cycle through the last pseudo-arc vertex whose new arcs all lie in the graph.
    fn closure(&self, a: VertexId) -> Option<Move> {
        let g = self.g();
        let t = &self.tour;
        let ha = t.succ(a);
        for &x in g.out_neighbors(a) {
            let b = t.pred(x);
            for &y in g.out_neighbors(b) {
                let c = t.pred(y);
                if !g.arc(c, ha) {
                    continue;
                }
                let m = Move::ThreeCycle { a, b, c };
                if t.is_admissible(&m) && !self.locked(&m) && score(t, g, &m) == 1 {
                    return Some(m);
                }
            }
        }
        None
    }

    fn probe(&mut self, a: VertexId) -> Option<Move> {
        let g = self.g();
        let head = self.backtrack.peek().copied();
        let hash = (!self.dead.is_empty()).then(|| tour_hash(&self.tour));
        let bs = sample(&mut self.rng, g.out_neighbors(a), self.fanout);
        let mut rng = self.rng.clone();
        let mut best: Option<(i64, Move)> = None;
        for b in bs {
            let found = probe_filtered(&self.tour, g, a, b, self.fanout, &mut rng, |m| {
                self.allowed(m, head, hash)
            });
            if let Some(m) = found {
                let s = score(&self.tour, g, &m);
                if best.is_none_or(|(bs, _)| s > bs) {
                    best = Some((s, m));
                }
            }
        }
        self.rng = rng;
        best.map(|(_, m)| m)
    }

    fn rotations_from(&self, a: VertexId) -> Vec<Move> {
        let head = self.backtrack.peek().copied();
        self.g()
            .out_neighbors(a)
            .iter()
            .map(|&w| Move::Rotation { v: a, w })
            .filter(|m| self.allowed(m, head, None))
            .collect()
    }

    /// The best rotation from a pivot with SCORE > 0, if any.
    fn positive_rotation(&self, pivots: &[VertexId]) -> Option<Move> {
        let g = self.g();
        pivots
            .iter()
            .flat_map(|&a| self.rotations_from(a))
            .map(|m| (score(&self.tour, g, &m), m))
            .filter(|&(s, _)| s > 0)
            .max_by(|x, y| x.0.cmp(&y.0).then_with(|| y.1.cmp(&x.1)))
            .map(|(_, m)| m)
    }

    /// A positive rotation, else a random one (`G`) or the one whose new
    /// successor has the highest degree (`GHeuristic`).
    fn rotation(&mut self, a: VertexId) -> Option<Move> {
        if let Some(m) = self.positive_rotation(&[a]) {
            return Some(m);
        }
        let rots = self.rotations_from(a);
        if rots.is_empty() {
            return None;
        }
        match self.cfg.algorithm {
            Algorithm::GHeuristic => {
                let g = self.g();
                let t = &self.tour;
                let deg = |m: &Move| match *m {
                    Move::Rotation { w, .. } => g.degree(t.succ(w)),
                    _ => unreachable!(),
                };
                let top = rots.iter().map(deg).max()?;
                // random among ties, otherwise regular graphs cycle through the same rotations
                let best: Vec<Move> = rots.iter().copied().filter(|m| deg(m) == top).collect();
                best.choose(&mut self.rng).copied()
            }
            _ => rots.choose(&mut self.rng).copied(),
        }
    }

    /// `Rotation(b, a)` when the degree-2 vertex `a` has a single graph edge `[a, b]` off the tour.
    fn forced_rotation(&self, a: VertexId) -> Option<Move> {
        let g = self.g();
        let t = &self.tour;
        if g.degree(a) != 2 {
            return None;
        }
        let off: Vec<VertexId> = g
            .out_neighbors(a)
            .iter()
            .copied()
            .filter(|&b| b != t.pred(a) && b != t.succ(a))
            .collect();
        match off[..] {
            [b] => {
                let m = Move::Rotation { v: b, w: a };
                (t.is_admissible(&m) && !self.locked(&m)).then_some(m)
            }
            _ => None,
        }
    }

    pub fn iterate_once(&mut self) -> Step {
        if self.pseudo == 0 {
            return Step::Done;
        }
        self.iter += 1;
        let pivots = self.pivots();
        let a = pivots[0];
        let alg = self.cfg.algorithm;
        if self.pseudo == 1 {
            // a revisited tour means the probe is walking a cycle; leave it to the fallbacks
            let revisit = !self.plateau.insert(tour_hash(&self.tour));
            let found = match self.closure(a) {
                Some(m) => Some(m),
                None if revisit && alg.reverts() => return self.revert_or_restart(),
                None if revisit => None,
                None => self.probe(a),
            };
            let found = match found {
                None if alg.rotates() => self.rotation(a),
                other => other,
            };
            if let Some(m) = found {
                self.apply(m);
                return Step::Moved;
            }
        }
        let cands = self.candidates(&pivots);
        if let Some(best) = select(&cands) {
            let mut m = best.mv;
            if best.score == 0 && alg.rotates() {
                if let Some(r) = self.positive_rotation(&pivots) {
                    m = r;
                }
            }
            self.apply(m);
            return Step::Moved;
        }
        self.failures[a] += 1;
        self.failed += 1;
        let fallback = match alg {
            Algorithm::G | Algorithm::GHeuristic => self.rotation(a),
            Algorithm::GNoR => self.forced_rotation(a),
            Algorithm::D => None,
        };
        match fallback {
            Some(m) => {
                self.apply(m);
                Step::Moved
            }
            None if alg.reverts() => self.revert_or_restart(),
            None => Step::Failed,
        }
    }

    fn diagnostics(&self, reason: &str) -> FailureDiagnostics {
        let n_orig = self.tg.original_id.iter().copied().max().unwrap_or(0);
        let mut failures = vec![0; n_orig + 1];
        for (v, &c) in self.failures.iter().enumerate().skip(1) {
            failures[self.tg.original_id[v]] += c;
        }
        let mut suspects: Vec<(VertexId, u64)> = failures
            .iter()
            .enumerate()
            .skip(1)
            .filter(|p| *p.1 > 0)
            .map(|(v, &c)| (v, c))
            .collect();
        suspects.sort_by_key(|&(v, c)| (std::cmp::Reverse(c), v));
        suspects.truncate(SUSPECTS);
        FailureDiagnostics {
            reason: reason.to_string(),
            failures,
            failed_iterations: self.failed,
            suspects,
            pseudo_remaining: self.pseudo,
        }
    }

    /// Runs both phases. `stop` is polled between iterations.
    pub fn run(&mut self, stop: &dyn Fn() -> bool) -> Outcome {
        let b = self.cfg.phase_budget(self.tg.graph.n());
        let mut reason = "budget exhausted";
        let mut step = |s: &mut Search, limit: u64, floor: usize| -> bool {
            while s.pseudo > floor && s.iter < limit {
                if stop() {
                    reason = "cancelled";
                    return false;
                }
                if s.iterate_once() == Step::Stuck {
                    reason = "search stuck";
                    return false;
                }
            }
            true
        };
        if step(self, b, 1) {
            let end = self.iter + b;
            step(self, end, 0);
        }
        if self.pseudo == 0 {
            Outcome::Found(self.tour.clone())
        } else {
            Outcome::BudgetExhausted(self.diagnostics(reason))
        }
    }
}

fn initial_tour(tg: &TerminalGraph, cfg: &SolveConfig, rng: &mut StdRng) -> Tour {
    let g = &tg.graph;
    if cfg.complement_start && !tg.has_forced() {
        if let Ok(t) = complement_tour(g, rng.gen()) {
            return t;
        }
    }
    let mut units: Vec<Vec<VertexId>> = Vec::new();
    for v in 1..=g.n() {
        match tg.forced[v] {
            None => units.push(vec![v]),
            Some(w) if v < w => {
                let forward = if g.is_directed() {
                    tg.is_forced(v, w)
                } else {
                    rng.gen_bool(0.5)
                };
                units.push(if forward { vec![v, w] } else { vec![w, v] });
            }
            Some(_) => {}
        }
    }
    units.shuffle(rng);
    Tour::new(&units.concat()).expect("units cover the working graph")
}

fn precheck(g: &Graph) -> Result<(), SolveError> {
    if g.n() < 3 {
        return Err(SolveError::TooSmall(g.n()));
    }
    for v in 1..=g.n() {
        let reason = if g.is_directed() {
            match (g.in_degree(v), g.out_degree(v)) {
                (0, _) => Some("has in-degree 0".to_string()),
                (_, 0) => Some("has out-degree 0".to_string()),
                _ => None,
            }
        } else {
            (g.degree(v) < 2).then(|| format!("has degree {}", g.degree(v)))
        };
        if let Some(reason) = reason {
            return Err(SolveError::NotHamiltonian { vertex: v, reason });
        }
    }
    if !g.is_connected() {
        return Err(SolveError::Disconnected);
    }
    Ok(())
}

enum Prepared {
    Trivial(Tour),
    Search(TerminalGraph),
}

fn prepare(g: &Graph, cfg: &SolveConfig) -> Result<Prepared, SolveError> {
    precheck(g)?;
    if cfg.algorithm.rotates() && g.is_directed() {
        return Err(SolveError::NeedsUndirected(cfg.algorithm));
    }
    if !cfg.contract || cfg.algorithm == Algorithm::GNoR {
        return Ok(Prepared::Search(TerminalGraph::plain(g)));
    }
    let cg = if g.is_directed() {
        contract_digraph(g)
    } else {
        contract(g)
    };
    match cg {
        Ok(cg) => Ok(Prepared::Search(cg.terminal_graph())),
        Err(ContractError::TriviallyHamiltonian(cycle)) => Tour::new(&cycle)
            .map(Prepared::Trivial)
            .map_err(|e| SolveError::Internal(e.to_string())),
        Err(ContractError::NotHamiltonian { vertex, reason }) => Err(SolveError::NotHamiltonian { vertex, reason }),
        Err(ContractError::Degenerate(_)) => Ok(Prepared::Search(TerminalGraph::plain(g))),
        Err(e) => Err(SolveError::Internal(e.to_string())),
    }
}

fn run_prepared(
    g: &Graph,
    prepared: &Prepared,
    cfg: &SolveConfig,
    stop: &dyn Fn() -> bool,
) -> Result<SolveResult, SolveError> {
    let tg = match prepared {
        Prepared::Trivial(t) => {
            return Ok(SolveResult {
                outcome: Outcome::Found(t.clone()),
                iterations: 0,
                restarts: 0,
                initial_pseudo: 0,
                trace: Vec::new(),
                h0: None,
                net_moves: Vec::new(),
                working_tour: None,
                working_ids: (0..=g.n()).collect(),
            })
        }
        Prepared::Search(tg) => tg,
    };
    let mut s = Search::new(tg, cfg)?;
    let outcome = match s.run(stop) {
        Outcome::Found(t) => {
            let full = tg.expand(&t).map_err(|e| SolveError::Internal(e.to_string()))?;
            if verify(g, &full) != Ok(true) {
                return Err(SolveError::Internal("expanded tour failed verification".into()));
            }
            Outcome::Found(full)
        }
        other => other,
    };
    Ok(SolveResult {
        outcome,
        iterations: s.iter,
        restarts: s.restarts,
        initial_pseudo: s.initial_pseudo,
        trace: s.trace.into_iter().collect(),
        h0: Some(s.h0),
        net_moves: s.applied,
        working_tour: Some(s.tour),
        working_ids: tg.original_id.clone(),
    })
}

/// Runs the configured algorithm. A found tour is over `g` and has passed [`verify`].
pub fn solve(g: &Graph, cfg: &SolveConfig) -> Result<SolveResult, SolveError> {
    let prepared = prepare(g, cfg)?;
    run_prepared(g, &prepared, cfg, &|| false)
}

/// Runs `k` instances with seeds `seed, seed+1, ..`; the lowest seed that finds a
/// circuit wins. Instances are cancelled once a lower seed has succeeded, so the
/// answer does not depend on scheduling. Returns the winning offset.
pub fn solve_portfolio(g: &Graph, cfg: &SolveConfig, k: usize, exec: Exec) -> Result<(usize, SolveResult), SolveError> {
    let prepared = prepare(g, cfg)?;
    let best = AtomicUsize::new(usize::MAX);
    let results = exec.map((0..k.max(1)).collect(), |i| {
        let mut c = cfg.clone();
        c.seed = cfg.seed.wrapping_add(i as u64);
        let r = run_prepared(g, &prepared, &c, &|| best.load(Ordering::Relaxed) < i);
        if matches!(
            r,
            Ok(SolveResult {
                outcome: Outcome::Found(_),
                ..
            })
        ) {
            best.fetch_min(i, Ordering::Relaxed);
        }
        r
    });
    let mut first = None;
    for (i, r) in results.into_iter().enumerate() {
        let r = r?;
        if r.tour().is_some() {
            return Ok((i, r));
        }
        first.get_or_insert((i, r));
    }
    Ok(first.expect("at least one instance"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn petersen_prism() -> Graph {
        // the 5-prism: two 5-cycles joined by a matching
        let mut e = Vec::new();
        for i in 1..=5 {
            e.push((i, i % 5 + 1));
            e.push((i + 5, (i % 5) + 6));
            e.push((i, i + 5));
        }
        Graph::from_edges(10, false, &e).unwrap()
    }

    #[test]
    fn defaults() {
        let c = SolveConfig::new(Algorithm::G, 1);
        assert_eq!(c.fanout_for(64), 5);
        assert_eq!(c.fanout_for(10), 3);
        assert_eq!(c.depth_for(64), 25);
        assert_eq!(c.phase_budget(64), 533);
        let mut e = c.clone();
        e.extended = true;
        assert_eq!(e.phase_budget(10), (6000.0 * 10f64.ln()).ceil() as u64);
    }

    #[test]
    fn algorithm_names_round_trip() {
        for a in [Algorithm::G, Algorithm::D, Algorithm::GNoR, Algorithm::GHeuristic] {
            assert_eq!(a.to_string().parse::<Algorithm>(), Ok(a));
        }
    }

    #[test]
    fn select_tie_breaks() {
        let c = |mv, score, pivot_degree, touches_degree_two| Candidate {
            mv,
            score,
            pivot_degree,
            touches_degree_two,
        };
        let m1 = Move::ThreeCycle { a: 1, b: 2, c: 3 };
        let m2 = Move::ThreeCycle { a: 1, b: 3, c: 5 };
        assert_eq!(select(&[c(m1, 1, 3, false), c(m2, 2, 3, false)]).unwrap().mv, m2);
        assert_eq!(select(&[c(m1, 2, 3, false), c(m2, 2, 3, true)]).unwrap().mv, m2);
        assert_eq!(select(&[c(m1, 2, 3, false), c(m2, 2, 4, false)]).unwrap().mv, m2);
        assert_eq!(select(&[c(m2, 2, 3, false), c(m1, 2, 3, false)]).unwrap().mv, m1);
        assert!(select(&[]).is_none());
    }

    #[test]
    fn every_algorithm_solves_the_prism() {
        let g = petersen_prism();
        for alg in [Algorithm::G, Algorithm::D, Algorithm::GNoR, Algorithm::GHeuristic] {
            let mut cfg = SolveConfig::new(alg, 3);
            cfg.budget_mult = 4;
            let r = solve(&g, &cfg).unwrap();
            let t = r.tour().unwrap_or_else(|| panic!("{alg} failed"));
            assert_eq!(verify(&g, t), Ok(true));
        }
    }

    #[test]
    fn star_is_rejected() {
        let g = Graph::from_edges(4, false, &[(1, 2), (1, 3), (1, 4)]).unwrap();
        let err = solve(&g, &SolveConfig::new(Algorithm::G, 0)).unwrap_err();
        assert!(matches!(
            err,
            SolveError::NotHamiltonian { vertex: 1, .. } | SolveError::NotHamiltonian { vertex: 2, .. }
        ));
    }

    #[test]
    fn rotations_need_undirected() {
        let d = Graph::from_edges(3, true, &[(1, 2), (2, 3), (3, 1)]).unwrap();
        assert_eq!(
            solve(&d, &SolveConfig::new(Algorithm::G, 0)).unwrap_err(),
            SolveError::NeedsUndirected(Algorithm::G)
        );
    }

    #[test]
    fn probe_without_interior() {
        let g = petersen_prism();
        let t = Tour::identity(10).unwrap();
        let mut r = rng(0);
        assert_eq!(probe_segment_potdtc(&t, &g, 1, 2, 3, &mut r), None);
        assert_eq!(probe_segment_potdtc(&t, &g, 1, 3, 3, &mut r), None);
    }
}
