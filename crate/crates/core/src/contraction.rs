//! Collapsing chains of degree-2 vertices into r-vertices.
//!
//! Every edge at a degree-2 vertex lies on every Hamilton circuit, so such
//! edges are *forced*. A maximal path of forced edges becomes one r-vertex
//! `v1 .. vr` of the contracted graph G′. Edges that can no longer lie on a
//! Hamilton circuit are deleted: the other edges of a vertex that already has
//! two forced edges, and the shortcut `[v1, vr]`. Undirected graphs are reduced
//! to a fixpoint; digraphs get a single pass over the vertices with in- and
//! out-degree 1, with the arcs out of `v1` and into `vr` deleted.
//!
//! The solver does not search G′ directly. It works on the [`TerminalGraph`],
//! which keeps both ends of every r-vertex and joins them by a forced edge, so
//! the orientation of an r-vertex is simply the order of its ends on the tour.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::graph::{Graph, VertexId};
use crate::tour::Tour;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ContractError {
    #[error("graph is a single cycle and trivially Hamiltonian")]
    TriviallyHamiltonian(Vec<VertexId>),
    #[error("no Hamilton circuit: vertex {vertex} {reason}")]
    NotHamiltonian { vertex: VertexId, reason: String },
    #[error("degenerate after contraction: {0} vertices remain")]
    Degenerate(usize),
    #[error("unexpandable tour: {0}")]
    Unexpandable(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Orientation {
    Forward,
    Reversed,
}

/// A collapsed chain `v1 .. vr` with its id in G′.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RVertex {
    pub id: VertexId,
    pub path: Vec<VertexId>,
}

impl RVertex {
    pub fn endpoints(&self) -> (VertexId, VertexId) {
        (self.path[0], *self.path.last().expect("nonempty path"))
    }

    pub fn label(&self) -> String {
        let parts: Vec<String> = self.path.iter().map(|v| v.to_string()).collect();
        parts.join("-")
    }
}

#[derive(Debug, Clone)]
pub struct ContractedGraph {
    pub original: Graph,
    /// The original vertex set with all deletions applied.
    pub reduced: Graph,
    pub g_prime: Graph,
    pub r_map: BTreeMap<VertexId, RVertex>,
    /// Original id to G′ id for vertices outside every chain.
    pub passthrough: BTreeMap<VertexId, VertexId>,
    /// Display names indexed by G′ id (index 0 unused).
    pub labels: Vec<String>,
}

/// The search graph: passthrough vertices plus both ends of every r-vertex.
#[derive(Debug, Clone)]
pub struct TerminalGraph {
    pub graph: Graph,
    /// Partner across a forced edge, if any.
    pub forced: Vec<Option<VertexId>>,
    /// Terminal id to original id.
    pub original_id: Vec<VertexId>,
    /// For each terminal that starts a chain (in its stored orientation), the full path.
    chains: BTreeMap<VertexId, Vec<VertexId>>,
    original: Graph,
}

fn not_ham(vertex: VertexId, reason: &str) -> ContractError {
    ContractError::NotHamiltonian {
        vertex,
        reason: reason.to_string(),
    }
}

/// Walks the forced structure into paths and cycles.
fn forced_components(
    n: usize,
    next: impl Fn(VertexId) -> Vec<VertexId>,
    starts: &[VertexId],
) -> (Vec<Vec<VertexId>>, Vec<Vec<VertexId>>) {
    let mut seen = vec![false; n + 1];
    let mut paths = Vec::new();
    for &s in starts {
        if seen[s] {
            continue;
        }
        let mut path = vec![s];
        seen[s] = true;
        let mut prev = 0;
        let mut cur = s;
        loop {
            let step = next(cur).into_iter().find(|&x| x != prev && !seen[x]);
            match step {
                Some(x) => {
                    seen[x] = true;
                    path.push(x);
                    prev = cur;
                    cur = x;
                }
                None => break,
            }
        }
        paths.push(path);
    }
    let mut cycles = Vec::new();
    for v in 1..=n {
        if seen[v] || next(v).is_empty() {
            continue;
        }
        let mut cyc = vec![v];
        seen[v] = true;
        let mut prev = 0;
        let mut cur = v;
        while let Some(x) = next(cur).into_iter().find(|&x| x != prev && !seen[x]) {
            seen[x] = true;
            cyc.push(x);
            prev = cur;
            cur = x;
        }
        cycles.push(cyc);
    }
    (paths, cycles)
}

/// Contracts an undirected graph.
pub fn contract(g: &Graph) -> Result<ContractedGraph, ContractError> {
    assert!(!g.is_directed(), "contract expects an undirected graph");
    let n = g.n();
    let mut adj: Vec<BTreeSet<VertexId>> = (0..=n)
        .map(|v| {
            if v == 0 {
                BTreeSet::new()
            } else {
                g.out_neighbors(v).iter().copied().collect()
            }
        })
        .collect();
    let remove = |adj: &mut Vec<BTreeSet<VertexId>>, u: VertexId, v: VertexId| {
        adj[u].remove(&v);
        adj[v].remove(&u);
    };

    let chains = loop {
        for v in 1..=n {
            if adj[v].len() < 2 {
                return Err(not_ham(v, &format!("has degree {}", adj[v].len())));
            }
        }
        let forced: Vec<BTreeSet<VertexId>> = (0..=n)
            .map(|v| {
                if v == 0 {
                    return BTreeSet::new();
                }
                adj[v]
                    .iter()
                    .copied()
                    .filter(|&u| adj[u].len() == 2 || adj[v].len() == 2)
                    .collect()
            })
            .collect();
        let mut changed = false;
        for v in 1..=n {
            if forced[v].len() > 2 {
                return Err(not_ham(v, "has more than two forced edges"));
            }
            if forced[v].len() == 2 && adj[v].len() > 2 {
                let extra: Vec<_> = adj[v].difference(&forced[v]).copied().collect();
                for u in extra {
                    remove(&mut adj, v, u);
                }
                changed = true;
            }
        }
        if changed {
            continue;
        }
        let starts: Vec<VertexId> = (1..=n).filter(|&v| forced[v].len() == 1).collect();
        let (paths, cycles) = forced_components(n, |v| forced[v].iter().copied().collect(), &starts);
        if let Some(c) = cycles.first() {
            return Err(if c.len() == n {
                ContractError::TriviallyHamiltonian(c.clone())
            } else {
                not_ham(c[0], "closes a forced cycle that misses other vertices")
            });
        }
        for p in &paths {
            let (a, b) = (p[0], *p.last().expect("path"));
            if p.len() == n {
                return Err(if adj[a].contains(&b) {
                    ContractError::TriviallyHamiltonian(p.clone())
                } else {
                    not_ham(a, "ends a forced path through every vertex that cannot close")
                });
            }
            if adj[a].contains(&b) {
                remove(&mut adj, a, b);
                changed = true;
            }
        }
        if !changed {
            break paths;
        }
    };

    let mut reduced_edges = Vec::new();
    for u in 1..=n {
        for &v in &adj[u] {
            if u < v {
                reduced_edges.push((u, v));
            }
        }
    }
    let reduced = Graph::from_edges(n, false, &reduced_edges).expect("subgraph");
    let chains = chains
        .into_iter()
        .map(|p| {
            if p[0] > *p.last().expect("path") {
                p.into_iter().rev().collect()
            } else {
                p
            }
        })
        .collect();
    assemble(g, reduced, chains)
}

/// Contracts a digraph: one pass over vertices with in- and out-degree 1.
pub fn contract_digraph(d: &Graph) -> Result<ContractedGraph, ContractError> {
    assert!(d.is_directed(), "contract_digraph expects a digraph");
    let n = d.n();
    let interior: Vec<bool> = (0..=n)
        .map(|v| v > 0 && d.in_degree(v) == 1 && d.out_degree(v) == 1)
        .collect();
    let mut fout: Vec<Vec<VertexId>> = vec![Vec::new(); n + 1];
    let mut fin: Vec<Vec<VertexId>> = vec![Vec::new(); n + 1];
    for v in 1..=n {
        for &w in d.out_neighbors(v) {
            if interior[v] || interior[w] {
                fout[v].push(w);
                fin[w].push(v);
            }
        }
    }
    for v in 1..=n {
        if fout[v].len() > 1 {
            return Err(not_ham(v, "has more than one forced out-arc"));
        }
        if fin[v].len() > 1 {
            return Err(not_ham(v, "has more than one forced in-arc"));
        }
    }
    let mut keep: BTreeSet<(VertexId, VertexId)> = d.edges().into_iter().collect();
    for v in 1..=n {
        if let Some(&w) = fout[v].first() {
            for &x in d.out_neighbors(v) {
                if x != w {
                    keep.remove(&(v, x));
                }
            }
        }
        if let Some(&u) = fin[v].first() {
            for &x in d.in_neighbors(v) {
                if x != u {
                    keep.remove(&(x, v));
                }
            }
        }
    }
    let starts: Vec<VertexId> = (1..=n).filter(|&v| fin[v].is_empty() && !fout[v].is_empty()).collect();
    let (paths, cycles) = forced_components(n, |v| fout[v].clone(), &starts);
    if let Some(c) = cycles.first() {
        return Err(if c.len() == n {
            ContractError::TriviallyHamiltonian(c.clone())
        } else {
            not_ham(c[0], "closes a forced cycle that misses other vertices")
        });
    }
    for p in &paths {
        let (a, b) = (p[0], *p.last().expect("path"));
        if p.len() == n {
            return Err(if keep.contains(&(b, a)) {
                ContractError::TriviallyHamiltonian(p.clone())
            } else {
                not_ham(a, "starts a forced path through every vertex that cannot close")
            });
        }
        keep.remove(&(b, a));
    }
    let arcs: Vec<_> = keep.into_iter().collect();
    let reduced = Graph::from_edges(n, true, &arcs).expect("subgraph");
    for v in 1..=n {
        if reduced.in_degree(v) == 0 || reduced.out_degree(v) == 0 {
            return Err(not_ham(v, "loses all in- or out-arcs"));
        }
    }
    assemble(d, reduced, paths)
}

fn assemble(
    original: &Graph,
    reduced: Graph,
    mut chains: Vec<Vec<VertexId>>,
) -> Result<ContractedGraph, ContractError> {
    let n = original.n();
    let directed = original.is_directed();
    chains.sort_by_key(|p| *p.iter().min().expect("path"));
    let mut unit = vec![0; n + 1];
    let mut in_chain = vec![false; n + 1];
    for p in &chains {
        for &v in p {
            in_chain[v] = true;
        }
    }
    let mut passthrough = BTreeMap::new();
    let mut labels = vec![String::new()];
    for v in 1..=n {
        if !in_chain[v] {
            let id = passthrough.len() + 1;
            passthrough.insert(v, id);
            unit[v] = id;
            labels.push(v.to_string());
        }
    }
    let mut r_map = BTreeMap::new();
    for p in chains {
        let id = labels.len();
        for &v in &p {
            unit[v] = id;
        }
        let rv = RVertex { id, path: p };
        labels.push(rv.label());
        r_map.insert(id, rv);
    }
    let np = labels.len() - 1;
    if np < 2 {
        return Err(ContractError::Degenerate(np));
    }
    let mut edges = BTreeSet::new();
    for (u, v) in reduced.edges() {
        let (a, b) = (unit[u], unit[v]);
        if a != b {
            edges.insert(if directed { (a, b) } else { (a.min(b), a.max(b)) });
        }
    }
    let edges: Vec<_> = edges.into_iter().collect();
    let g_prime = Graph::from_edges(np, directed, &edges).expect("contracted edges");
    Ok(ContractedGraph {
        original: original.clone(),
        reduced,
        g_prime,
        r_map,
        passthrough,
        labels,
    })
}

impl ContractedGraph {
    /// G′ id of an original vertex.
    pub fn unit_of(&self, v: VertexId) -> VertexId {
        if let Some(&id) = self.passthrough.get(&v) {
            return id;
        }
        self.r_map
            .values()
            .find(|r| r.path.contains(&v))
            .map(|r| r.id)
            .expect("every vertex is passthrough or in a chain")
    }

    pub fn is_trivial(&self) -> bool {
        self.r_map.is_empty() && self.reduced.edge_count() == self.original.edge_count()
    }

    /// Sidecar map text: one `id: v1,v2,...` line per G′ vertex.
    pub fn map_text(&self) -> String {
        let mut s = String::new();
        for id in 1..self.labels.len() {
            let path: Vec<String> = match self.r_map.get(&id) {
                Some(r) => r.path.iter().map(|v| v.to_string()).collect(),
                None => vec![self.labels[id].clone()],
            };
            s.push_str(&format!("{id}: {}\n", path.join(",")));
        }
        s
    }

    /// Maps a Hamilton circuit of G onto G′, recording each r-vertex's direction.
    pub fn project(&self, t: &Tour) -> Result<(Tour, BTreeMap<VertexId, Orientation>), ContractError> {
        let order = t.order();
        let n = order.len();
        // rotate so that the walk starts on a unit boundary
        let shift = (0..n)
            .find(|&i| self.unit_of(order[i]) != self.unit_of(order[(i + n - 1) % n]))
            .ok_or_else(|| ContractError::Unexpandable("tour stays inside one unit".into()))?;
        let mut units = Vec::new();
        let mut orient = BTreeMap::new();
        let mut i = 0;
        while i < n {
            let v = order[(shift + i) % n];
            let u = self.unit_of(v);
            if let Some(r) = self.r_map.get(&u) {
                let len = r.path.len();
                let run: Vec<VertexId> = (0..len).map(|k| order[(shift + i + k) % n]).collect();
                let o = if run == r.path {
                    Orientation::Forward
                } else if run.iter().rev().eq(r.path.iter()) {
                    Orientation::Reversed
                } else {
                    return Err(ContractError::Unexpandable(format!("r-vertex {} is split", r.label())));
                };
                orient.insert(u, o);
                i += len;
            } else {
                i += 1;
            }
            units.push(u);
        }
        let t = Tour::new(&units).map_err(|e| ContractError::Unexpandable(e.to_string()))?;
        Ok((t, orient))
    }

    /// The search graph with forced edges between chain ends.
    pub fn terminal_graph(&self) -> TerminalGraph {
        let n = self.original.n();
        let directed = self.original.is_directed();
        let mut keep = vec![false; n + 1];
        for &v in self.passthrough.keys() {
            keep[v] = true;
        }
        for r in self.r_map.values() {
            let (a, b) = r.endpoints();
            keep[a] = true;
            keep[b] = true;
        }
        let mut tid = vec![0; n + 1];
        let mut original_id = vec![0];
        for v in 1..=n {
            if keep[v] {
                tid[v] = original_id.len();
                original_id.push(v);
            }
        }
        let nt = original_id.len() - 1;
        let mut edges = BTreeSet::new();
        for (u, v) in self.reduced.edges() {
            if keep[u] && keep[v] {
                edges.insert((tid[u], tid[v]));
            }
        }
        let mut forced = vec![None; nt + 1];
        let mut chains = BTreeMap::new();
        for r in self.r_map.values() {
            let (a, b) = r.endpoints();
            let (ta, tb) = (tid[a], tid[b]);
            edges.insert(if directed { (ta, tb) } else { (ta.min(tb), ta.max(tb)) });
            forced[ta] = Some(tb);
            forced[tb] = Some(ta);
            chains.insert(ta, r.path.clone());
            if !directed {
                chains.insert(tb, r.path.iter().rev().copied().collect());
            }
        }
        let edges: Vec<_> = edges.into_iter().collect();
        TerminalGraph {
            graph: Graph::from_edges(nt, directed, &edges).expect("terminal edges"),
            forced,
            original_id,
            chains,
            original: self.original.clone(),
        }
    }
}

/// Replaces each r-vertex of a G′ tour by its path in the given direction.
pub fn expand_tour(
    cg: &ContractedGraph,
    t: &Tour,
    orientations: &BTreeMap<VertexId, Orientation>,
) -> Result<Tour, ContractError> {
    if t.n() != cg.g_prime.n() {
        return Err(ContractError::Unexpandable(format!(
            "tour has {} vertices, G′ has {}",
            t.n(),
            cg.g_prime.n()
        )));
    }
    let mut order = Vec::with_capacity(cg.original.n());
    for u in t.order() {
        match cg.r_map.get(&u) {
            Some(r) => match orientations.get(&u).copied().unwrap_or(Orientation::Forward) {
                Orientation::Forward => order.extend(r.path.iter().copied()),
                Orientation::Reversed => order.extend(r.path.iter().rev().copied()),
            },
            None => order.push(cg.labels[u].parse().expect("passthrough label is the original id")),
        }
    }
    let out = Tour::new(&order).map_err(|e| ContractError::Unexpandable(e.to_string()))?;
    check_circuit(&cg.original, &out)?;
    Ok(out)
}

fn check_circuit(g: &Graph, t: &Tour) -> Result<(), ContractError> {
    for v in 1..=t.n() {
        if !g.arc(v, t.succ(v)) {
            return Err(ContractError::Unexpandable(format!(
                "arc {} {} is not in the graph",
                v,
                t.succ(v)
            )));
        }
    }
    Ok(())
}

impl TerminalGraph {
    /// A terminal graph without forced edges.
    pub fn plain(g: &Graph) -> TerminalGraph {
        TerminalGraph {
            graph: g.clone(),
            forced: vec![None; g.n() + 1],
            original_id: (0..=g.n()).collect(),
            chains: BTreeMap::new(),
            original: g.clone(),
        }
    }

    pub fn has_forced(&self) -> bool {
        self.forced.iter().any(Option::is_some)
    }

    /// Whether the tour arc `(u, v)` may not be removed.
    #[inline]
    pub fn is_forced(&self, u: VertexId, v: VertexId) -> bool {
        self.forced[u] == Some(v) && (!self.graph.is_directed() || self.chains.contains_key(&u))
    }

    /// Expands a tour of the terminal graph into a tour of the original graph.
    pub fn expand(&self, t: &Tour) -> Result<Tour, ContractError> {
        let order = t.order();
        let n = order.len();
        let is_chain_tail = |i: usize| {
            let prev = order[(i + n - 1) % n];
            self.chains.contains_key(&prev) && self.forced[prev] == Some(order[i])
        };
        let shift = (0..n).find(|&i| !is_chain_tail(i)).unwrap_or(0);
        let mut out = Vec::with_capacity(self.original.n());
        let mut i = 0;
        while i < n {
            let v = order[(shift + i) % n];
            let next = order[(shift + i + 1) % n];
            match self.chains.get(&v) {
                Some(path) if self.forced[v] == Some(next) => {
                    out.extend(path.iter().copied());
                    i += 2;
                }
                Some(_) => {
                    return Err(ContractError::Unexpandable(format!(
                        "forced edge at {} is not on the tour",
                        self.original_id[v]
                    )))
                }
                None if self.forced[v].is_some() => {
                    return Err(ContractError::Unexpandable(format!(
                        "chain end {} entered from the wrong side",
                        self.original_id[v]
                    )))
                }
                None => {
                    out.push(self.original_id[v]);
                    i += 1;
                }
            }
        }
        let t = Tour::new(&out).map_err(|e| ContractError::Unexpandable(e.to_string()))?;
        check_circuit(&self.original, &t)?;
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ug(n: usize, e: &[(VertexId, VertexId)]) -> Graph {
        Graph::from_edges(n, false, e).unwrap()
    }

    #[test]
    fn single_chain_collapses() {
        let g = ug(5, &[(1, 2), (2, 3), (1, 4), (3, 4), (1, 5), (3, 5), (4, 5)]);
        let cg = contract(&g).unwrap();
        assert_eq!(cg.g_prime.n(), 3);
        let r = cg.r_map.values().next().unwrap();
        assert_eq!(r.path, vec![1, 2, 3]);
        assert_eq!(r.label(), "1-2-3");
        let (p4, p5) = (cg.passthrough[&4], cg.passthrough[&5]);
        let mut want = vec![(p4.min(r.id), p4.max(r.id)), (p5.min(r.id), p5.max(r.id)), (p4, p5)];
        want.sort();
        assert_eq!(cg.g_prime.edges(), want);
        assert!(!cg.reduced.arc(1, 3));
    }

    #[test]
    fn nothing_to_contract() {
        let mut e = Vec::new();
        for u in 1..=5 {
            for v in u + 1..=5 {
                e.push((u, v));
            }
        }
        let g = ug(5, &e);
        let cg = contract(&g).unwrap();
        assert!(cg.r_map.is_empty());
        assert_eq!(cg.g_prime, g);
        assert!(cg.is_trivial());
    }

    #[test]
    fn shortcut_between_chain_ends_is_deleted() {
        // chain a=1, 2, 3, b=4 with [4,1]; 1 and 4 also reach K_3 on {5,6,7}
        let g = ug(
            7,
            &[
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 1),
                (1, 5),
                (1, 6),
                (4, 6),
                (4, 7),
                (5, 6),
                (5, 7),
                (6, 7),
            ],
        );
        let cg = contract(&g).unwrap();
        assert!(!cg.reduced.arc(1, 4));
        assert_eq!(cg.r_map.values().next().unwrap().path, vec![1, 2, 3, 4]);
    }

    #[test]
    fn shared_endpoint_merges_chains() {
        // 1-2-3 and 3-4-5 share 3, whose edge to 6 must go
        let g = ug(
            7,
            &[
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 5),
                (3, 6),
                (1, 6),
                (1, 7),
                (5, 6),
                (5, 7),
                (6, 7),
            ],
        );
        let cg = contract(&g).unwrap();
        assert!(!cg.reduced.arc(3, 6));
        let paths: Vec<_> = cg.r_map.values().map(|r| r.path.clone()).collect();
        assert_eq!(paths, vec![vec![1, 2, 3, 4, 5]]);
    }

    #[test]
    fn cycle_and_dead_ends() {
        let c5 = ug(5, &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 1)]);
        assert!(matches!(contract(&c5), Err(ContractError::TriviallyHamiltonian(_))));
        let star = ug(4, &[(1, 2), (1, 3), (1, 4)]);
        assert!(matches!(
            contract(&star),
            Err(ContractError::NotHamiltonian { vertex: 2, .. })
        ));
    }

    #[test]
    fn digraph_chain() {
        let d = Graph::from_edges(4, true, &[(1, 2), (2, 3), (3, 4), (4, 1), (4, 3), (1, 4)]).unwrap();
        let cg = contract_digraph(&d).unwrap();
        let r = cg.r_map.values().next().unwrap();
        assert_eq!(r.path, vec![1, 2, 3]);
        let p4 = cg.passthrough[&4];
        assert_eq!(cg.g_prime.edges(), {
            let mut e = vec![(r.id, p4), (p4, r.id)];
            e.sort();
            e
        });
        assert!(!cg.reduced.arc(1, 4) && !cg.reduced.arc(4, 3));
    }

    #[test]
    fn digraph_back_arc_deleted() {
        // chain 1 -> 2 -> 3 with back arc 3 -> 1; 4, 5 give the rest
        let d = Graph::from_edges(
            5,
            true,
            &[(1, 2), (2, 3), (3, 1), (3, 4), (4, 5), (5, 1), (5, 4), (4, 1), (3, 5)],
        )
        .unwrap();
        let cg = contract_digraph(&d).unwrap();
        assert!(!cg.reduced.arc(3, 1));
    }

    #[test]
    fn expansion_round_trip() {
        let g = ug(5, &[(1, 2), (2, 3), (1, 4), (3, 4), (1, 5), (3, 5), (4, 5)]);
        let cg = contract(&g).unwrap();
        let circuit = Tour::new(&[3, 2, 1, 4, 5]).unwrap();
        let (t, orient) = cg.project(&circuit).unwrap();
        let back = expand_tour(&cg, &t, &orient).unwrap();
        assert_eq!(back.order().len(), 5);
        assert!((1..=5).all(|v| g.arc(v, back.succ(v))));

        let tg = cg.terminal_graph();
        assert_eq!(tg.graph.n(), 4);
        let ends: Vec<_> = (1..=4).filter(|&v| tg.forced[v].is_some()).collect();
        assert_eq!(ends.len(), 2);
    }

    #[test]
    fn identity_expansion_without_chains() {
        let mut e = Vec::new();
        for u in 1..=4 {
            for v in u + 1..=4 {
                e.push((u, v));
            }
        }
        let cg = contract(&ug(4, &e)).unwrap();
        let t = Tour::new(&[2, 4, 1, 3]).unwrap();
        assert_eq!(expand_tour(&cg, &t, &BTreeMap::new()).unwrap(), t);
    }
}
