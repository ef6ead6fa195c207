//! Weight-decreasing rotations and 3-cycles for the symmetric TSP.
//!
//! A run alternates two steps. Good rotations (2-opt exchanges) are applied
//! through every vertex until none is left. Then one random pivot is searched
//! for a good 3-cycle, or a 3-cycle followed by one rotation whose combined
//! weight change is negative. The run stops after `⌈n ln n⌉` consecutive pivots
//! without a new best tour.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exec::{below, rng, StdRng};
use crate::graph::{Graph, VertexId};
use crate::tour::{arc_changes, Move, Tour};

/// Improvements smaller than this are treated as rounding noise by the search.
const EPS: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TspError {
    #[error("no weight for arc {0} {1}")]
    MissingWeight(VertexId, VertexId),
    #[error("instance is not weighted")]
    Unweighted,
    #[error("instance is directed; only the symmetric TSP is supported")]
    Directed,
    #[error("tour has {tour} vertices, instance has {inst}")]
    SizeMismatch { tour: usize, inst: usize },
    #[error("instance has {0} vertices, at least 3 are needed")]
    TooSmall(usize),
}

fn check(g: &Graph) -> Result<(), TspError> {
    if g.is_directed() {
        return Err(TspError::Directed);
    }
    if !g.is_weighted() {
        return Err(TspError::Unweighted);
    }
    if g.n() < 3 {
        return Err(TspError::TooSmall(g.n()));
    }
    Ok(())
}

fn w(g: &Graph, u: VertexId, v: VertexId) -> Result<f64, TspError> {
    g.weight(u, v).ok_or(TspError::MissingWeight(u, v))
}

fn sum_w(g: &Graph, arcs: &[(VertexId, VertexId)]) -> Result<f64, TspError> {
    arcs.iter().map(|&(u, v)| w(g, u, v)).sum()
}

pub fn tour_weight(t: &Tour, g: &Graph) -> Result<f64, TspError> {
    if t.n() != g.n() {
        return Err(TspError::SizeMismatch {
            tour: t.n(),
            inst: g.n(),
        });
    }
    (1..=t.n()).map(|v| w(g, v, t.succ(v))).sum()
}

/// `w[x,y] + w[hx,hy] < w[x,hx] + w[y,hy]`; false when `y` is `x` or its successor.
pub fn is_good_rotation(t: &Tour, g: &Graph, x: VertexId, y: VertexId) -> Result<bool, TspError> {
    if x == y || y == t.succ(x) {
        return Ok(false);
    }
    let (hx, hy) = (t.succ(x), t.succ(y));
    Ok(w(g, x, y)? + w(g, hx, hy)? < w(g, x, hx)? + w(g, y, hy)?)
}

/// New arcs weigh strictly less than the arcs they replace.
pub fn is_good_move(t: &Tour, g: &Graph, m: &Move) -> Result<bool, TspError> {
    let (removed, added) = arc_changes(t, m);
    Ok(sum_w(g, &added)? < sum_w(g, &removed)?)
}

/// Greedy tour from `start`, always moving to the lightest unvisited neighbour.
pub fn nearest_neighbor(g: &Graph, start: VertexId) -> Result<Tour, TspError> {
    check(g)?;
    let n = g.n();
    let mut seen = vec![false; n + 1];
    let mut order = vec![start];
    seen[start] = true;
    let mut cur = start;
    for _ in 1..n {
        let next = g
            .out_neighbors(cur)
            .iter()
            .copied()
            .filter(|&v| !seen[v])
            .map(|v| (g.weight(cur, v).unwrap_or(f64::INFINITY), v))
            .min_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)))
            .map(|p| p.1)
            .ok_or(TspError::MissingWeight(cur, 0))?;
        seen[next] = true;
        order.push(next);
        cur = next;
    }
    w(g, cur, start)?;
    Ok(Tour::new(&order).expect("every vertex visited once"))
}

/// Complete graph on `n` uniform points of the unit square with Euclidean weights.
pub fn random_euclidean(n: usize, seed: u64) -> (Graph, Vec<(f64, f64)>) {
    let mut r = rng(seed);
    let pts: Vec<(f64, f64)> = (0..n).map(|_| (r.gen::<f64>(), r.gen::<f64>())).collect();
    let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            let d = ((pts[i].0 - pts[j].0).powi(2) + (pts[i].1 - pts[j].1).powi(2)).sqrt();
            edges.push((i + 1, j + 1, d));
        }
    }
    (
        Graph::from_weighted_edges(n, false, &edges).expect("complete graph"),
        pts,
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TspConfig {
    pub seed: u64,
    /// Nearest neighbours tried per vertex; defaults to `max(3, ⌈ln n⌉)`.
    pub fanout: Option<usize>,
    /// Pivots without a new best before stopping; defaults to `⌈n ln n⌉`.
    pub stagnation: Option<u64>,
    /// Hard cap on iterations; defaults to `100·n·⌈ln n⌉`.
    pub max_iters: Option<u64>,
}

impl TspConfig {
    pub fn new(seed: u64) -> TspConfig {
        TspConfig {
            seed,
            fanout: None,
            stagnation: None,
            max_iters: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BestTourRecord {
    pub tour: Tour,
    pub weight: f64,
    pub iteration: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HistoryEntry {
    pub iteration: u64,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TspResult {
    pub best: BestTourRecord,
    /// Every new best, in order; weights strictly decrease.
    pub history: Vec<HistoryEntry>,
    pub iterations: u64,
    pub moves_applied: u64,
}

/// A 3-cycle, optionally followed by one rotation on the resulting tour.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Compound {
    pub first: Move,
    pub then: Option<Move>,
}

/// Instances up to this size get a dense weight table.
const DENSE_LIMIT: usize = 2000;

struct Improver<'a> {
    g: &'a Graph,
    near: Vec<Vec<VertexId>>,
    dense: Option<Vec<f64>>,
}

impl Improver<'_> {
    #[inline]
    fn wt(&self, u: VertexId, v: VertexId) -> Option<f64> {
        match &self.dense {
            Some(d) => {
                let x = d[u * (self.g.n() + 1) + v];
                (!x.is_nan()).then_some(x)
            }
            None => self.g.weight(u, v),
        }
    }

    /// Weight change of a rotation given a successor function.
    fn rotation_delta(&self, succ: impl Fn(VertexId) -> VertexId, x: VertexId, y: VertexId) -> Option<f64> {
        let (hx, hy) = (succ(x), succ(y));
        if x == y || y == hx {
            return None;
        }
        Some(self.wt(x, y)? + self.wt(hx, hy)? - self.wt(x, hx)? - self.wt(y, hy)?)
    }

    /// Applies good rotations through every vertex until none is left.
    fn rotate_to_fixpoint(&self, t: &mut Tour) -> u64 {
        let mut applied = 0;
        loop {
            let mut improved = false;
            for x in 1..=t.n() {
                let mut best: Option<(f64, VertexId)> = None;
                for &y in self.g.out_neighbors(x) {
                    if let Some(d) = self.rotation_delta(|v| t.succ(v), x, y) {
                        if d < -EPS && best.is_none_or(|(bd, _)| d < bd) {
                            best = Some((d, y));
                        }
                    }
                }
                if let Some((_, y)) = best {
                    t.apply(&Move::Rotation { v: x, w: y }).expect("rotation is admissible");
                    applied += 1;
                    improved = true;
                }
            }
            if !improved {
                return applied;
            }
        }
    }

    fn three_cycle_delta(&self, t: &Tour, m: &Move) -> Option<f64> {
        let (removed, added) = arc_changes(t, m);
        let s = |arcs: &[(VertexId, VertexId)]| arcs.iter().map(|&(u, v)| self.wt(u, v)).sum::<Option<f64>>();
        Some(s(&added)? - s(&removed)?)
    }

    /// Best improving compound at pivot `a`: largest decrease, then smallest encoding.
    fn best_compound(&self, t: &Tour, a: VertexId) -> Option<(f64, Compound)> {
        let mut best: Option<(f64, Compound)> = None;
        let mut offer = |d: f64, c: Compound| {
            if d < -EPS && best.is_none_or(|(bd, bc)| d < bd || (d == bd && c < bc)) {
                best = Some((d, c));
            }
        };
        for &x in &self.near[a] {
            let b = t.pred(x);
            for &y in &self.near[b] {
                let c = t.pred(y);
                let m = Move::ThreeCycle { a, b, c };
                if !t.is_admissible(&m) {
                    continue;
                }
                let Some(d3) = self.three_cycle_delta(t, &m) else {
                    continue;
                };
                offer(d3, Compound { first: m, then: None });
                // successors after the 3-cycle, without touching the tour
                let (sa, sb, sc) = (t.succ(a), t.succ(b), t.succ(c));
                let succ = |v: VertexId| match v {
                    v if v == a => sb,
                    v if v == b => sc,
                    v if v == c => sa,
                    v => t.succ(v),
                };
                for v in [a, b, c] {
                    for &z in &self.near[v] {
                        if let Some(dr) = self.rotation_delta(succ, v, z) {
                            offer(
                                d3 + dr,
                                Compound {
                                    first: m,
                                    then: Some(Move::Rotation { v, w: z }),
                                },
                            );
                        }
                    }
                }
            }
        }
        best
    }
}

/// Improves `start` and returns the best tour seen.
pub fn tsp_improve(g: &Graph, start: &Tour, cfg: &TspConfig) -> Result<TspResult, TspError> {
    check(g)?;
    let n = g.n();
    let w0 = tour_weight(start, g)?;
    let ln = (n as f64).ln();
    let l = cfg.fanout.unwrap_or_else(|| (ln.ceil() as usize).max(3)).max(1);
    let stagnation = cfg.stagnation.unwrap_or_else(|| (n as f64 * ln).ceil() as u64).max(1);
    let cap = cfg.max_iters.unwrap_or(100 * n as u64 * ln.ceil() as u64);
    let near = (0..=n)
        .map(|v| {
            if v == 0 {
                return Vec::new();
            }
            let mut ns: Vec<(f64, VertexId)> = g
                .out_neighbors(v)
                .iter()
                .filter_map(|&u| g.weight(v, u).map(|x| (x, u)))
                .collect();
            ns.sort_by(|p, q| p.0.total_cmp(&q.0).then(p.1.cmp(&q.1)));
            ns.into_iter().take(l).map(|p| p.1).collect()
        })
        .collect();
    let dense = (n <= DENSE_LIMIT).then(|| {
        let mut d = vec![f64::NAN; (n + 1) * (n + 1)];
        for (u, v, x) in g.weighted_edges() {
            d[u * (n + 1) + v] = x;
            d[v * (n + 1) + u] = x;
        }
        d
    });
    let imp = Improver { g, near, dense };
    let mut r: StdRng = rng(cfg.seed);
    let mut t = start.clone();
    let mut best = BestTourRecord {
        tour: t.clone(),
        weight: w0,
        iteration: 0,
    };
    let mut history = vec![HistoryEntry {
        iteration: 0,
        weight: w0,
    }];
    let mut iter = 0;
    let mut idle = 0;
    let mut moves = 0;
    let mut pivots: Vec<VertexId> = Vec::new();
    while idle < stagnation && iter < cap {
        iter += 1;
        moves += imp.rotate_to_fixpoint(&mut t);
        if pivots.is_empty() {
            pivots = (1..=n).collect();
            pivots.shuffle(&mut r);
        }
        let a = pivots.swap_remove(below(&mut r, pivots.len()));
        if let Some((_, c)) = imp.best_compound(&t, a) {
            t.apply(&c.first).expect("admissible 3-cycle");
            moves += 1;
            if let Some(rot) = c.then {
                t.apply(&rot).expect("admissible rotation");
                moves += 1;
            }
        }
        let wt = tour_weight(&t, g)?;
        if wt < best.weight {
            best = BestTourRecord {
                tour: t.clone(),
                weight: wt,
                iteration: iter,
            };
            history.push(HistoryEntry {
                iteration: iter,
                weight: wt,
            });
            idle = 0;
        } else {
            idle += 1;
        }
    }
    Ok(TspResult {
        best,
        history,
        iterations: iter,
        moves_applied: moves,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Graph {
        let d = 2f64.sqrt();
        Graph::from_weighted_edges(
            4,
            false,
            &[(1, 2, 1.0), (2, 3, 1.0), (3, 4, 1.0), (1, 4, 1.0), (1, 3, d), (2, 4, d)],
        )
        .unwrap()
    }

    #[test]
    fn weights() {
        let g = square();
        assert_eq!(tour_weight(&Tour::identity(4).unwrap(), &g), Ok(4.0));
        let tri = Graph::from_weighted_edges(3, false, &[(1, 2, 1.0), (2, 3, 2.0), (1, 3, 3.0)]).unwrap();
        assert_eq!(tour_weight(&Tour::identity(3).unwrap(), &tri), Ok(6.0));
        let sparse = Graph::from_weighted_edges(4, false, &[(1, 2, 1.0), (2, 3, 1.0), (3, 4, 1.0)]).unwrap();
        assert_eq!(
            tour_weight(&Tour::identity(4).unwrap(), &sparse),
            Err(TspError::MissingWeight(4, 1))
        );
    }

    #[test]
    fn crossed_square_uncrosses() {
        let g = square();
        let crossed = Tour::new(&[1, 3, 2, 4]).unwrap();
        assert!(is_good_rotation(&crossed, &g, 1, 2).unwrap());
        assert!(!is_good_rotation(&crossed, &g, 1, 3).unwrap());
        let r = tsp_improve(&g, &crossed, &TspConfig::new(0)).unwrap();
        assert_eq!(r.best.weight, 4.0);
    }

    #[test]
    fn equal_weights_are_never_good() {
        let mut e = Vec::new();
        for i in 1..=5 {
            for j in i + 1..=5 {
                e.push((i, j, 1.0));
            }
        }
        let g = Graph::from_weighted_edges(5, false, &e).unwrap();
        let t = Tour::identity(5).unwrap();
        assert!(!is_good_rotation(&t, &g, 1, 3).unwrap());
        assert!(!is_good_move(&t, &g, &Move::ThreeCycle { a: 1, b: 2, c: 4 }).unwrap());
        let r = tsp_improve(&g, &t, &TspConfig::new(0)).unwrap();
        assert_eq!(r.best.tour, t);
        assert_eq!(r.history.len(), 1);
    }

    #[test]
    fn nearest_neighbor_on_square() {
        let t = nearest_neighbor(&square(), 1).unwrap();
        assert_eq!(tour_weight(&t, &square()), Ok(4.0));
    }
}
