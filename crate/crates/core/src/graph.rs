//! Graphs, digraphs and weighted graphs over the dense vertex set `1..=n`.
//!
//! Undirected graphs keep each edge as a pair of symmetric arcs, so every
//! query is phrased in terms of arcs. Adjacency lists are sorted, which makes
//! `arc` a binary search and keeps iteration order deterministic.

use std::fmt::Write as _;

use thiserror::Error;

/// A 1-based vertex index.
pub type VertexId = usize;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("vertex {0} out of range 1..={1}")]
    OutOfRange(VertexId, usize),
    #[error("loop at vertex {0}")]
    Loop(VertexId),
    #[error("duplicate edge {0}-{1}")]
    Duplicate(VertexId, VertexId),
    #[error("invalid weight {2} on {0}-{1}")]
    BadWeight(VertexId, VertexId, f64),
    #[error("weights must be given for every edge or for none")]
    MixedWeights,
}

#[derive(Debug, Error, Clone, PartialEq)]
#[error("line {line}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    n: usize,
    directed: bool,
    weighted: bool,
    m: usize,
    out_adj: Vec<Vec<VertexId>>,
    in_adj: Vec<Vec<VertexId>>,
    // aligned with out_adj when weighted
    out_w: Vec<Vec<f64>>,
}

/// Per-vertex degree counts; index 0 is unused.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile {
    pub deg: Vec<usize>,
    pub out_deg: Vec<usize>,
    pub in_deg: Vec<usize>,
}

impl Graph {
    pub fn empty(n: usize, directed: bool) -> Graph {
        Graph {
            n,
            directed,
            weighted: false,
            m: 0,
            out_adj: vec![Vec::new(); n + 1],
            in_adj: vec![Vec::new(); n + 1],
            out_w: Vec::new(),
        }
    }

    /// Builds a graph from an edge (or arc) list. Loops and duplicates are rejected.
    pub fn from_edges(n: usize, directed: bool, edges: &[(VertexId, VertexId)]) -> Result<Graph, GraphError> {
        let triples: Vec<_> = edges.iter().map(|&(u, v)| (u, v, None)).collect();
        Self::build(n, directed, false, &triples)
    }

    pub fn from_weighted_edges(
        n: usize,
        directed: bool,
        edges: &[(VertexId, VertexId, f64)],
    ) -> Result<Graph, GraphError> {
        let triples: Vec<_> = edges.iter().map(|&(u, v, w)| (u, v, Some(w))).collect();
        Self::build(n, directed, true, &triples)
    }

    fn build(
        n: usize,
        directed: bool,
        weighted: bool,
        edges: &[(VertexId, VertexId, Option<f64>)],
    ) -> Result<Graph, GraphError> {
        let mut arcs: Vec<(VertexId, VertexId, f64)> = Vec::with_capacity(edges.len() * 2);
        for &(u, v, w) in edges {
            for x in [u, v] {
                if x == 0 || x > n {
                    return Err(GraphError::OutOfRange(x, n));
                }
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            if w.is_some() != weighted {
                return Err(GraphError::MixedWeights);
            }
            let w = w.unwrap_or(0.0);
            if !(w.is_finite() && w >= 0.0) {
                return Err(GraphError::BadWeight(u, v, w));
            }
            arcs.push((u, v, w));
            if !directed {
                arcs.push((v, u, w));
            }
        }
        arcs.sort_by_key(|a| (a.0, a.1));
        for pair in arcs.windows(2) {
            if pair[0].0 == pair[1].0 && pair[0].1 == pair[1].1 {
                let (u, v) = (pair[0].0, pair[0].1);
                return Err(if directed {
                    GraphError::Duplicate(u, v)
                } else {
                    GraphError::Duplicate(u.min(v), u.max(v))
                });
            }
        }
        let mut g = Graph::empty(n, directed);
        g.weighted = weighted;
        if weighted {
            g.out_w = vec![Vec::new(); n + 1];
        }
        for &(u, v, w) in &arcs {
            g.out_adj[u].push(v);
            g.in_adj[v].push(u);
            if weighted {
                g.out_w[u].push(w);
            }
        }
        for list in g.in_adj.iter_mut() {
            list.sort_unstable();
        }
        g.m = if directed { arcs.len() } else { arcs.len() / 2 };
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn is_weighted(&self) -> bool {
        self.weighted
    }

    /// Number of edges (undirected) or arcs (directed).
    pub fn edge_count(&self) -> usize {
        self.m
    }

    fn check(&self, v: VertexId) -> Result<(), GraphError> {
        if v == 0 || v > self.n {
            Err(GraphError::OutOfRange(v, self.n))
        } else {
            Ok(())
        }
    }

    /// Checked arc query. Asking about a loop `(u, u)` is an input error:
    /// loops can never be stored, so the question is always a caller bug.
    pub fn has_arc(&self, u: VertexId, v: VertexId) -> Result<bool, GraphError> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(GraphError::Loop(u));
        }
        Ok(self.arc(u, v))
    }

    /// Unchecked arc query for hot loops; ids must be in range.
    #[inline]
    pub fn arc(&self, u: VertexId, v: VertexId) -> bool {
        self.out_adj[u].binary_search(&v).is_ok()
    }

    pub fn weight(&self, u: VertexId, v: VertexId) -> Option<f64> {
        if !self.weighted || u == 0 || u > self.n {
            return None;
        }
        let i = self.out_adj[u].binary_search(&v).ok()?;
        Some(self.out_w[u][i])
    }

    pub fn out_neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.out_adj[v]
    }

    pub fn in_neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.in_adj[v]
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.out_adj[v].len()
    }

    pub fn in_degree(&self, v: VertexId) -> usize {
        self.in_adj[v].len()
    }

    /// Degree for undirected graphs, total degree (in + out) for digraphs.
    pub fn degree(&self, v: VertexId) -> usize {
        if self.directed {
            self.out_adj[v].len() + self.in_adj[v].len()
        } else {
            self.out_adj[v].len()
        }
    }

    pub fn degrees(&self) -> DegreeProfile {
        let out_deg: Vec<usize> = self.out_adj.iter().map(Vec::len).collect();
        let in_deg: Vec<usize> = self.in_adj.iter().map(Vec::len).collect();
        let deg = if self.directed {
            out_deg.iter().zip(&in_deg).map(|(a, b)| a + b).collect()
        } else {
            out_deg.clone()
        };
        DegreeProfile { deg, out_deg, in_deg }
    }

    pub fn min_degree(&self) -> usize {
        (1..=self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// Canonical edge list: `u < v` for undirected graphs, sorted.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 1..=self.n {
            for &v in &self.out_adj[u] {
                if self.directed || u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn weighted_edges(&self) -> Vec<(VertexId, VertexId, f64)> {
        self.edges()
            .into_iter()
            .map(|(u, v)| (u, v, self.weight(u, v).unwrap_or(0.0)))
            .collect()
    }

    /// Same arcs with weights dropped.
    pub fn unweighted(&self) -> Graph {
        let mut g = self.clone();
        g.weighted = false;
        g.out_w.clear();
        g
    }

    /// True when every vertex can reach every other (strongly, for digraphs).
    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let reach = |adj: &Vec<Vec<VertexId>>| {
            let mut seen = vec![false; self.n + 1];
            let mut stack = vec![1];
            seen[1] = true;
            let mut count = 1;
            while let Some(u) = stack.pop() {
                for &v in &adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        count += 1;
                        stack.push(v);
                    }
                }
            }
            count == self.n
        };
        reach(&self.out_adj) && (!self.directed || reach(&self.in_adj))
    }
}

fn flags(g: &Graph) -> &'static str {
    match (g.directed, g.weighted) {
        (false, false) => "U",
        (true, false) => "D",
        (false, true) => "UW",
        (true, true) => "DW",
    }
}

/// Parses the `n m FLAGS` text format. `#` starts a comment; blank lines are skipped.
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let err = |line: usize, msg: String| ParseError { line, msg };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hline, header) = lines.next().ok_or_else(|| err(1, "missing header".into()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 3 {
        return Err(err(hline, format!("expected `n m FLAGS`, got `{header}`")));
    }
    let n: usize = fields[0]
        .parse()
        .map_err(|_| err(hline, format!("bad vertex count `{}`", fields[0])))?;
    let m: usize = fields[1]
        .parse()
        .map_err(|_| err(hline, format!("bad edge count `{}`", fields[1])))?;
    let (directed, weighted) = match fields[2] {
        "U" => (false, false),
        "D" => (true, false),
        "UW" => (false, true),
        "DW" => (true, true),
        f => return Err(err(hline, format!("unknown flags `{f}`"))),
    };

    let mut edges = Vec::with_capacity(m);
    let mut seen = std::collections::HashSet::with_capacity(m);
    let mut last_line = hline;
    for (ln, line) in lines {
        last_line = ln;
        let toks: Vec<&str> = line.split_whitespace().collect();
        let want = if weighted { 3 } else { 2 };
        if toks.len() != want {
            return Err(err(ln, format!("expected {want} fields, got {}", toks.len())));
        }
        let id = |t: &str| -> Result<VertexId, ParseError> {
            let v: VertexId = t.parse().map_err(|_| err(ln, format!("bad vertex `{t}`")))?;
            if v == 0 || v > n {
                return Err(err(ln, format!("vertex {v} out of range 1..={n}")));
            }
            Ok(v)
        };
        let (u, v) = (id(toks[0])?, id(toks[1])?);
        if u == v {
            return Err(err(ln, format!("loop at vertex {u}")));
        }
        let key = if directed { (u, v) } else { (u.min(v), u.max(v)) };
        if !seen.insert(key) {
            return Err(err(ln, format!("duplicate edge {u} {v}")));
        }
        let w = if weighted {
            let w: f64 = toks[2]
                .parse()
                .map_err(|_| err(ln, format!("bad weight `{}`", toks[2])))?;
            if !(w.is_finite() && w >= 0.0) {
                return Err(err(ln, format!("invalid weight {w}")));
            }
            w
        } else {
            0.0
        };
        edges.push((u, v, w));
    }
    if edges.len() != m {
        return Err(err(
            last_line,
            format!("header declares {m} edges, found {}", edges.len()),
        ));
    }
    if weighted {
        Graph::from_weighted_edges(n, directed, &edges)
    } else {
        let plain: Vec<_> = edges.iter().map(|&(u, v, _)| (u, v)).collect();
        Graph::from_edges(n, directed, &plain)
    }
    .map_err(|e| err(hline, e.to_string()))
}

/// Canonical text form: header, then sorted edge lines.
pub fn serialize_graph(g: &Graph) -> String {
    let mut s = format!("{} {} {}\n", g.n, g.m, flags(g));
    for (u, v) in g.edges() {
        if g.weighted {
            let _ = writeln!(s, "{u} {v} {}", g.weight(u, v).unwrap_or(0.0));
        } else {
            let _ = writeln!(s, "{u} {v}");
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> Graph {
        let mut e = Vec::new();
        for u in 1..=4 {
            for v in u + 1..=4 {
                e.push((u, v));
            }
        }
        Graph::from_edges(4, false, &e).unwrap()
    }

    #[test]
    fn complete_graph_queries() {
        let g = k4();
        assert_eq!(g.has_arc(1, 3), Ok(true));
        assert_eq!(g.has_arc(3, 1), Ok(true));
        assert!(g.degrees().deg[1..].iter().all(|&d| d == 3));
    }

    #[test]
    fn loop_query_is_an_error() {
        assert_eq!(k4().has_arc(2, 2), Err(GraphError::Loop(2)));
        assert!(matches!(k4().has_arc(0, 2), Err(GraphError::OutOfRange(0, 4))));
        assert!(matches!(k4().has_arc(1, 5), Err(GraphError::OutOfRange(5, 4))));
    }

    #[test]
    fn empty_graph_degrees() {
        let g = Graph::empty(3, false);
        assert_eq!(g.degrees().deg, vec![0, 0, 0, 0]);
    }

    #[test]
    fn parse_examples() {
        let g = parse_graph("3 2 U\n1 2\n2 3").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edges(), vec![(1, 2), (2, 3)]);
        let d = parse_graph("2 1 D\n1 2").unwrap();
        assert!(d.is_directed());
        assert!(d.arc(1, 2) && !d.arc(2, 1));
        let e = parse_graph("3 1 U\n1 1").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.msg.contains("loop"));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        assert_eq!(parse_graph("3 2 U\n1 2\n# c\n2 1").unwrap_err().line, 4);
        assert_eq!(parse_graph("3 1 U\n1 4").unwrap_err().line, 2);
        assert_eq!(parse_graph("3 1 U\n1 x").unwrap_err().line, 2);
        assert!(parse_graph("3 2 U\n1 2").is_err());
        assert!(parse_graph("3 1 Q\n1 2").is_err());
        assert!(parse_graph("3 1 UW\n1 2 -1").is_err());
    }

    #[test]
    fn comments_and_weights() {
        let g = parse_graph("# tri\n3 3 UW\n1 2 1.5 # a\n2 3 2\n\n3 1 0.25\n").unwrap();
        assert_eq!(g.weight(2, 1), Some(1.5));
        assert_eq!(g.weight(1, 3), Some(0.25));
        let again = parse_graph(&serialize_graph(&g)).unwrap();
        assert_eq!(again, g);
    }

    #[test]
    fn strong_connectivity() {
        let d = Graph::from_edges(3, true, &[(1, 2), (2, 3)]).unwrap();
        assert!(!d.is_connected());
        let c = Graph::from_edges(3, true, &[(1, 2), (2, 3), (3, 1)]).unwrap();
        assert!(c.is_connected());
    }
}
