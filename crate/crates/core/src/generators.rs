//! Seeded random graph families, planted Hamiltonian instances and complement tours.
//!
//! All generators draw from [`crate::exec::rng`], so identical parameters and
//! seed give an identical graph on every 64-bit platform.

use std::collections::HashSet;

use rand::seq::{index, SliceRandom};
use rand::Rng;
use thiserror::Error;

use crate::exec::{below, rng};
use crate::graph::{Graph, VertexId};
use crate::tour::Tour;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("no complement tour found after {0} attempts")]
    NoComplementTour(usize),
}

fn pairs(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Maps an index in `0..n(n-1)/2` to the pair `u < v` in row-major order.
fn pair_at(n: usize, mut k: usize) -> (VertexId, VertexId) {
    let mut u = 1;
    while k >= n - u {
        k -= n - u;
        u += 1;
    }
    (u, u + 1 + k)
}

/// Uniform random graph with exactly `m` edges.
pub fn gnm(n: usize, m: usize, seed: u64) -> Result<Graph, GenError> {
    if m > pairs(n) {
        return Err(GenError::OutOfRange(format!("m={m} exceeds {} pairs", pairs(n))));
    }
    let mut r = rng(seed);
    let mut edges: Vec<_> = index::sample(&mut r, pairs(n), m)
        .into_iter()
        .map(|k| pair_at(n, k))
        .collect();
    edges.sort_unstable();
    Ok(Graph::from_edges(n, false, &edges).expect("distinct pairs"))
}

fn random_pair<R: Rng>(r: &mut R, n: usize) -> (VertexId, VertexId) {
    let u = below(r, n) + 1;
    let mut v = below(r, n - 1) + 1;
    if v >= u {
        v += 1;
    }
    (u, v)
}

/// Edge order of the random graph process, stopped at the first moment the
/// minimum degree reaches 2.
pub fn boll_process(n: usize, seed: u64) -> Result<Vec<(VertexId, VertexId)>, GenError> {
    if n < 3 {
        return Err(GenError::OutOfRange(format!("n={n} < 3")));
    }
    let mut r = rng(seed);
    let mut deg = vec![0usize; n + 1];
    let mut short = n;
    let mut used = HashSet::new();
    let mut order = Vec::new();
    while short > 0 {
        let (u, v) = random_pair(&mut r, n);
        let key = (u.min(v), u.max(v));
        if !used.insert(key) {
            continue;
        }
        order.push(key);
        for x in [u, v] {
            deg[x] += 1;
            if deg[x] == 2 {
                short -= 1;
            }
        }
    }
    Ok(order)
}

/// The random graph process stopped at minimum degree 2.
pub fn boll_graph(n: usize, seed: u64) -> Result<Graph, GenError> {
    let order = boll_process(n, seed)?;
    Ok(Graph::from_edges(n, false, &order).expect("distinct pairs"))
}

/// The random digraph process stopped once every in- and out-degree is at least 1.
pub fn frieze_boll_digraph(n: usize, seed: u64) -> Result<Graph, GenError> {
    if n < 3 {
        return Err(GenError::OutOfRange(format!("n={n} < 3")));
    }
    let mut r = rng(seed);
    let (mut outd, mut ind) = (vec![0usize; n + 1], vec![0usize; n + 1]);
    let mut missing = 2 * n;
    let mut used = HashSet::new();
    let mut arcs = Vec::new();
    while missing > 0 {
        let (u, v) = random_pair(&mut r, n);
        if !used.insert((u, v)) {
            continue;
        }
        arcs.push((u, v));
        outd[u] += 1;
        ind[v] += 1;
        missing -= usize::from(outd[u] == 1) + usize::from(ind[v] == 1);
    }
    Ok(Graph::from_edges(n, true, &arcs).expect("distinct arcs"))
}

/// `k` distinct vertices other than `v`.
fn choose_others<R: Rng>(r: &mut R, n: usize, v: VertexId, k: usize) -> Vec<VertexId> {
    index::sample(r, n - 1, k)
        .into_iter()
        .map(|i| if i + 1 >= v { i + 2 } else { i + 1 })
        .collect()
}

/// Symmetrized 3-out graph: every vertex picks 3 distinct neighbours.
pub fn r3_out(n: usize, seed: u64) -> Result<Graph, GenError> {
    if n < 5 {
        return Err(GenError::OutOfRange(format!("n={n} < 5")));
    }
    let mut r = rng(seed);
    let mut edges = HashSet::new();
    for v in 1..=n {
        for u in choose_others(&mut r, n, v, 3) {
            edges.insert((u.min(v), u.max(v)));
        }
    }
    let mut edges: Vec<_> = edges.into_iter().collect();
    edges.sort_unstable();
    Ok(Graph::from_edges(n, false, &edges).expect("distinct pairs"))
}

/// Digraph where each vertex picks `k` out-neighbours and `k` in-neighbours.
pub fn d_k_in_k_out(n: usize, k: usize, seed: u64) -> Result<Graph, GenError> {
    if n <= 2 * k || k == 0 {
        return Err(GenError::OutOfRange(format!("need n > 2k and k > 0, got n={n}, k={k}")));
    }
    let mut r = rng(seed);
    let mut arcs = HashSet::new();
    for v in 1..=n {
        for u in choose_others(&mut r, n, v, k) {
            arcs.insert((v, u));
        }
        for u in choose_others(&mut r, n, v, k) {
            arcs.insert((u, v));
        }
    }
    let mut arcs: Vec<_> = arcs.into_iter().collect();
    arcs.sort_unstable();
    Ok(Graph::from_edges(n, true, &arcs).expect("distinct arcs"))
}

fn random_tour<R: Rng>(r: &mut R, n: usize) -> Tour {
    let mut order: Vec<VertexId> = (1..=n).collect();
    order.shuffle(r);
    Tour::new(&order).expect("permutation")
}

/// A random tour of `1..=n`.
pub fn random_tour_seeded(n: usize, seed: u64) -> Tour {
    random_tour(&mut rng(seed), n)
}

fn planted_impl(n: usize, extra_m: usize, seed: u64, directed: bool) -> Result<(Graph, Tour), GenError> {
    if n < 3 {
        return Err(GenError::OutOfRange(format!("n={n} < 3")));
    }
    let slots = if directed { n * (n - 1) - n } else { pairs(n) - n };
    if extra_m > slots {
        return Err(GenError::OutOfRange(format!("extra_m={extra_m} exceeds {slots}")));
    }
    let mut r = rng(seed);
    let tour = random_tour(&mut r, n);
    let key = |u: VertexId, v: VertexId| if directed { (u, v) } else { (u.min(v), u.max(v)) };
    let mut used: HashSet<_> = (1..=n).map(|v| key(v, tour.succ(v))).collect();
    let mut edges: Vec<_> = used.iter().copied().collect();
    if extra_m * 2 <= slots {
        while edges.len() < n + extra_m {
            let (u, v) = random_pair(&mut r, n);
            if used.insert(key(u, v)) {
                edges.push(key(u, v));
            }
        }
    } else {
        let mut free = Vec::with_capacity(slots);
        for u in 1..=n {
            for v in 1..=n {
                if u != v && (directed || u < v) && !used.contains(&(u, v)) {
                    free.push((u, v));
                }
            }
        }
        for i in index::sample(&mut r, free.len(), extra_m) {
            edges.push(free[i]);
        }
        used.clear();
    }
    edges.sort_unstable();
    Ok((Graph::from_edges(n, directed, &edges).expect("distinct"), tour))
}

/// A random Hamilton circuit plus `extra_m` random non-circuit edges.
pub fn planted(n: usize, extra_m: usize, seed: u64) -> Result<(Graph, Tour), GenError> {
    planted_impl(n, extra_m, seed, false)
}

/// Directed analogue of [`planted`].
pub fn planted_directed(n: usize, extra_m: usize, seed: u64) -> Result<(Graph, Tour), GenError> {
    planted_impl(n, extra_m, seed, true)
}

/// Attempts made by [`complement_tour`] before giving up.
pub const COMPLEMENT_RESTARTS: usize = 100;

/// A tour none of whose arcs is an arc of `g`, by randomized greedy extension.
pub fn complement_tour(g: &Graph, seed: u64) -> Result<Tour, GenError> {
    let n = g.n();
    if n < 3 {
        return Err(GenError::OutOfRange(format!("n={n} < 3")));
    }
    let mut r = rng(seed);
    'attempt: for _ in 0..COMPLEMENT_RESTARTS {
        let mut visited = vec![false; n + 1];
        let first = below(&mut r, n) + 1;
        let mut order = vec![first];
        visited[first] = true;
        let mut cur = first;
        while order.len() < n {
            let options: Vec<VertexId> = (1..=n).filter(|&u| !visited[u] && !g.arc(cur, u)).collect();
            if options.is_empty() {
                continue 'attempt;
            }
            cur = options[below(&mut r, options.len())];
            visited[cur] = true;
            order.push(cur);
        }
        if !g.arc(cur, first) {
            return Ok(Tour::new(&order).expect("permutation"));
        }
    }
    Err(GenError::NoComplementTour(COMPLEMENT_RESTARTS))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_indexing_covers_all_pairs() {
        let all: Vec<_> = (0..pairs(5)).map(|k| pair_at(5, k)).collect();
        assert_eq!(all.len(), 10);
        assert_eq!(all[0], (1, 2));
        assert_eq!(all[9], (4, 5));
        let set: HashSet<_> = all.into_iter().collect();
        assert_eq!(set.len(), 10);
    }

    #[test]
    fn gnm_extremes() {
        assert_eq!(gnm(4, 6, 1).unwrap().edge_count(), 6);
        assert_eq!(gnm(4, 0, 1).unwrap().edge_count(), 0);
        assert!(gnm(4, 7, 1).is_err());
        assert_eq!(gnm(10, 20, 3).unwrap(), gnm(10, 20, 3).unwrap());
        assert_ne!(gnm(10, 20, 3).unwrap(), gnm(10, 20, 4).unwrap());
    }

    #[test]
    fn boll_stops_at_min_degree_two() {
        for seed in 0..20 {
            let order = boll_process(30, seed).unwrap();
            let g = Graph::from_edges(30, false, &order).unwrap();
            assert!(g.min_degree() >= 2);
            let shorter = Graph::from_edges(30, false, &order[..order.len() - 1]).unwrap();
            assert!(shorter.min_degree() < 2);
        }
    }

    #[test]
    fn frieze_boll_degrees() {
        for seed in 0..10 {
            let d = frieze_boll_digraph(25, seed).unwrap();
            let p = d.degrees();
            assert!(p.out_deg[1..].iter().all(|&x| x >= 1));
            assert!(p.in_deg[1..].iter().all(|&x| x >= 1));
        }
        assert_eq!(frieze_boll_digraph(12, 9).unwrap(), frieze_boll_digraph(12, 9).unwrap());
    }

    #[test]
    fn k_out_degrees() {
        for seed in 0..10 {
            assert!(r3_out(40, seed).unwrap().min_degree() >= 3);
            let d = d_k_in_k_out(40, 3, seed).unwrap();
            let p = d.degrees();
            assert!(p.out_deg[1..].iter().all(|&x| x >= 3));
            assert!(p.in_deg[1..].iter().all(|&x| x >= 3));
            assert!(d.edge_count() <= 2 * 3 * 40);
        }
        assert!(d_k_in_k_out(6, 3, 0).is_err());
    }

    #[test]
    fn planted_contains_its_tour() {
        for directed in [false, true] {
            let (g, t) = planted_impl(30, 45, 7, directed).unwrap();
            assert_eq!(g.edge_count(), 75);
            assert!((1..=30).all(|v| g.arc(v, t.succ(v))));
        }
        // dense branch
        let (g, _) = planted(8, 20, 1).unwrap();
        assert_eq!(g.edge_count(), 28);
        assert!(planted(8, 21, 1).is_err());
    }

    #[test]
    fn complement_tours() {
        let empty = Graph::empty(6, false);
        assert!(complement_tour(&empty, 1).is_ok());
        let (g, _) = planted(20, 20, 2).unwrap();
        let t = complement_tour(&g, 3).unwrap();
        assert!((1..=20).all(|v| !g.arc(v, t.succ(v))));
        let k5 = gnm(5, 10, 0).unwrap();
        assert_eq!(complement_tour(&k5, 0), Err(GenError::NoComplementTour(100)));
    }
}
