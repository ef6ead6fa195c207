//! Tours as n-cycles with ordinal indexing, and the admissible moves on them.
//!
//! A move `s` acts on a tour `h` by composition `h' = h∘s` (apply `s` first),
//! so a 3-cycle `(a b c)` replaces the arc `(a, h(a))` by `(a, h(b))`, and so
//! on around the cycle. Clockwise means increasing ordinal, with the build
//! time start vertex at ordinal 1.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, VertexId};
use crate::perm::Permutation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TourError {
    #[error("tour needs at least 3 vertices, got {0}")]
    TooSmall(usize),
    #[error("vertex {0} appears more than once")]
    Duplicate(VertexId),
    #[error("vertex {0} out of range 1..={1}")]
    OutOfRange(VertexId, usize),
    #[error("vertices must be distinct")]
    NotDistinct,
    #[error("move {0} is not admissible on this tour")]
    Inadmissible(Move),
    #[error("no history to backtrack")]
    NoHistory,
    #[error("bad tour text: {0}")]
    Parse(String),
}

/// A pseudo-Hamilton tour: a single n-cycle over `1..=n`.
///
/// Equality compares the cycles only; two tours with different start
/// vertices but the same successor map are equal.
#[derive(Debug, Clone)]
pub struct Tour {
    start: VertexId,
    succ: Vec<VertexId>,
    pred: Vec<VertexId>,
    ord: Vec<usize>,
    ord_inv: Vec<VertexId>,
}

impl PartialEq for Tour {
    fn eq(&self, other: &Tour) -> bool {
        self.succ == other.succ
    }
}

impl Eq for Tour {}

/// One improvement step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Move {
    /// The 3-cycle `(a b c)`.
    ThreeCycle { a: VertexId, b: VertexId, c: VertexId },
    /// The product of transpositions `(a c)(b d)`.
    Potdtc {
        a: VertexId,
        c: VertexId,
        b: VertexId,
        d: VertexId,
    },
    /// Reverse `succ(v) ..= w` and put the arc `(v, w)` on the tour.
    Rotation { v: VertexId, w: VertexId },
}

impl Tour {
    /// Builds the cycle visiting `order` in sequence. `order[0]` gets ordinal 1.
    pub fn new(order: &[VertexId]) -> Result<Tour, TourError> {
        let n = order.len();
        if n < 3 {
            return Err(TourError::TooSmall(n));
        }
        let mut seen = vec![false; n + 1];
        for &v in order {
            if v == 0 || v > n {
                return Err(TourError::OutOfRange(v, n));
            }
            if seen[v] {
                return Err(TourError::Duplicate(v));
            }
            seen[v] = true;
        }
        let mut succ = vec![0; n + 1];
        for i in 0..n {
            succ[order[i]] = order[(i + 1) % n];
        }
        let mut t = Tour {
            start: order[0],
            succ,
            pred: vec![0; n + 1],
            ord: vec![0; n + 1],
            ord_inv: vec![0; n + 1],
        };
        t.rebuild();
        Ok(t)
    }

    /// The tour `(1 2 ... n)`.
    pub fn identity(n: usize) -> Result<Tour, TourError> {
        Tour::new(&(1..=n).collect::<Vec<_>>())
    }

    fn rebuild(&mut self) {
        let n = self.n();
        let mut v = self.start;
        for p in 1..=n {
            self.ord[v] = p;
            self.ord_inv[p] = v;
            let s = self.succ[v];
            self.pred[s] = v;
            v = s;
        }
        debug_assert_eq!(v, self.start, "successor map is not a single cycle");
    }

    pub fn n(&self) -> usize {
        self.succ.len() - 1
    }

    pub fn start(&self) -> VertexId {
        self.start
    }

    #[inline]
    pub fn succ(&self, v: VertexId) -> VertexId {
        self.succ[v]
    }

    #[inline]
    pub fn pred(&self, v: VertexId) -> VertexId {
        self.pred[v]
    }

    /// Position of `v`, 1-based.
    #[inline]
    pub fn ord(&self, v: VertexId) -> usize {
        self.ord[v]
    }

    /// Vertex at position `p`, 1-based.
    #[inline]
    pub fn at(&self, p: usize) -> VertexId {
        self.ord_inv[p]
    }

    /// Vertices in cycle order from the start vertex.
    pub fn order(&self) -> Vec<VertexId> {
        self.ord_inv[1..].to_vec()
    }

    /// The successor function as a permutation.
    pub fn as_permutation(&self) -> Permutation {
        Permutation::from_map(self.succ.clone()).expect("successor map is a bijection")
    }

    fn check_distinct(&self, vs: &[VertexId]) -> Result<(), TourError> {
        let n = self.n();
        for (i, &v) in vs.iter().enumerate() {
            if v == 0 || v > n {
                return Err(TourError::OutOfRange(v, n));
            }
            if vs[..i].contains(&v) {
                return Err(TourError::NotDistinct);
            }
        }
        Ok(())
    }

    /// Whether `a, b, c` occur in cyclically increasing ordinal order.
    pub fn cyclic_clockwise(&self, a: VertexId, b: VertexId, c: VertexId) -> Result<bool, TourError> {
        self.check_distinct(&[a, b, c])?;
        Ok(self.clockwise(a, b, c))
    }

    /// Unchecked form of [`Tour::cyclic_clockwise`].
    #[inline]
    pub fn clockwise(&self, a: VertexId, b: VertexId, c: VertexId) -> bool {
        let (x, y, z) = (self.ord[a], self.ord[b], self.ord[c]);
        (x < y && y < z) || (y < z && z < x) || (z < x && x < y)
    }

    /// Whether the chords `{a, b}` and `{c, d}` of the tour circle properly cross.
    pub fn interlaced(&self, a: VertexId, b: VertexId, c: VertexId, d: VertexId) -> Result<bool, TourError> {
        self.check_distinct(&[a, b, c, d])?;
        Ok(self.crossing(a, b, c, d))
    }

    /// Unchecked form of [`Tour::interlaced`].
    #[inline]
    pub fn crossing(&self, a: VertexId, b: VertexId, c: VertexId, d: VertexId) -> bool {
        self.clockwise(a, c, b) != self.clockwise(a, d, b)
    }

    /// Whether applying `m` leaves a single n-cycle. Malformed moves are not admissible.
    pub fn is_admissible(&self, m: &Move) -> bool {
        if !m.is_well_formed(self.n()) {
            return false;
        }
        match *m {
            Move::ThreeCycle { a, b, c } => self.clockwise(a, b, c),
            Move::Potdtc { a, c, b, d } => self.crossing(a, c, b, d),
            Move::Rotation { v, w } => w != self.succ[v],
        }
    }

    /// Applies an admissible move in place.
    pub fn apply(&mut self, m: &Move) -> Result<(), TourError> {
        if !self.is_admissible(m) {
            return Err(TourError::Inadmissible(*m));
        }
        match *m {
            Move::ThreeCycle { a, b, c } => {
                let (sa, sb, sc) = (self.succ[a], self.succ[b], self.succ[c]);
                self.succ[a] = sb;
                self.succ[b] = sc;
                self.succ[c] = sa;
            }
            Move::Potdtc { a, c, b, d } => {
                let (sa, sc, sb, sd) = (self.succ[a], self.succ[c], self.succ[b], self.succ[d]);
                self.succ[a] = sc;
                self.succ[c] = sa;
                self.succ[b] = sd;
                self.succ[d] = sb;
            }
            Move::Rotation { v, w } => {
                let s1 = self.succ[v];
                let x = self.succ[w];
                let seg = self.segment(s1, w);
                self.succ[v] = w;
                for pair in seg.windows(2) {
                    self.succ[pair[1]] = pair[0];
                }
                self.succ[s1] = x;
            }
        }
        self.rebuild();
        Ok(())
    }

    /// Vertices from `from` to `to` inclusive, following successors.
    pub fn segment(&self, from: VertexId, to: VertexId) -> Vec<VertexId> {
        let mut out = vec![from];
        let mut v = from;
        while v != to {
            v = self.succ[v];
            out.push(v);
        }
        out
    }

    /// Number of arcs from `from` to `to` going clockwise.
    pub fn distance(&self, from: VertexId, to: VertexId) -> usize {
        let n = self.n();
        (self.ord[to] + n - self.ord[from]) % n
    }
}

/// Free-function form of [`Tour::new`].
pub fn build_tour(order: &[VertexId]) -> Result<Tour, TourError> {
    Tour::new(order)
}

/// Returns `h∘s` as a new tour, leaving `t` untouched.
pub fn apply_move(t: &Tour, m: &Move) -> Result<Tour, TourError> {
    let mut out = t.clone();
    out.apply(m)?;
    Ok(out)
}

impl Move {
    pub fn vertices(&self) -> Vec<VertexId> {
        match *self {
            Move::ThreeCycle { a, b, c } => vec![a, b, c],
            Move::Potdtc { a, c, b, d } => vec![a, c, b, d],
            Move::Rotation { v, w } => vec![v, w],
        }
    }

    pub fn is_well_formed(&self, n: usize) -> bool {
        let vs = self.vertices();
        vs.iter()
            .enumerate()
            .all(|(i, &v)| v >= 1 && v <= n && !vs[..i].contains(&v))
    }

    pub fn is_rotation(&self) -> bool {
        matches!(self, Move::Rotation { .. })
    }

    /// The move undoing `self` when `self` is applied to `before`.
    pub fn inverse_on(&self, before: &Tour) -> Move {
        match *self {
            Move::ThreeCycle { a, b, c } => Move::ThreeCycle { a, b: c, c: b },
            Move::Potdtc { .. } => *self,
            Move::Rotation { v, .. } => Move::Rotation { v, w: before.succ(v) },
        }
    }

    /// One spelling per permutation: 3-cycles start at their smallest point and
    /// POTDTC pairs are sorted inside and between.
    pub fn canonical(&self) -> Move {
        match *self {
            Move::ThreeCycle { a, b, c } => {
                if a < b && a < c {
                    *self
                } else if b < c {
                    Move::ThreeCycle { a: b, b: c, c: a }
                } else {
                    Move::ThreeCycle { a: c, b: a, c: b }
                }
            }
            Move::Potdtc { a, c, b, d } => {
                let (p, q) = ((a.min(c), a.max(c)), (b.min(d), b.max(d)));
                let ((a, c), (b, d)) = if p < q { (p, q) } else { (q, p) };
                Move::Potdtc { a, c, b, d }
            }
            Move::Rotation { .. } => *self,
        }
    }

    /// Tails of the tour arcs the move removes.
    pub fn removed_tails(&self) -> Vec<VertexId> {
        self.vertices()
    }

    /// As a permutation `s` with `h∘s` the moved tour.
    pub fn as_permutation(&self, t: &Tour) -> Permutation {
        match *self {
            Move::ThreeCycle { a, b, c } => Permutation::from_cycles(t.n(), &[&[a, b, c]]),
            Move::Potdtc { a, c, b, d } => Permutation::from_cycles(t.n(), &[&[a, c], &[b, d]]),
            Move::Rotation { v, w } => Some(rotation_as_permutation(t, v, w)),
        }
        .expect("well-formed move")
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Move::ThreeCycle { a, b, c } => write!(f, "3C {a} {b} {c}"),
            Move::Potdtc { a, c, b, d } => write!(f, "P2 {a} {c} {b} {d}"),
            Move::Rotation { v, w } => write!(f, "ROT {v} {w}"),
        }
    }
}

impl FromStr for Move {
    type Err = TourError;

    fn from_str(s: &str) -> Result<Move, TourError> {
        let toks: Vec<&str> = s.split_whitespace().collect();
        let bad = || TourError::Parse(format!("bad move `{s}`"));
        let nums: Vec<VertexId> = toks
            .iter()
            .skip(1)
            .map(|t| t.parse().map_err(|_| bad()))
            .collect::<Result<_, _>>()?;
        match (toks.first().copied(), nums.as_slice()) {
            (Some("3C"), &[a, b, c]) => Ok(Move::ThreeCycle { a, b, c }),
            (Some("P2"), &[a, c, b, d]) => Ok(Move::Potdtc { a, c, b, d }),
            (Some("ROT"), &[v, w]) => Ok(Move::Rotation { v, w }),
            _ => Err(bad()),
        }
    }
}

/// The permutation `r` with `t∘r` equal to the rotated tour. Identity when `w = succ(v)`.
pub fn rotation_as_permutation(t: &Tour, v: VertexId, w: VertexId) -> Permutation {
    if w == t.succ(v) || v == w {
        return Permutation::identity(t.n());
    }
    let after = apply_move(t, &Move::Rotation { v, w }).expect("rotation is always admissible");
    let map = (0..=t.n())
        .map(|x| if x == 0 { 0 } else { t.pred(after.succ(x)) })
        .collect();
    Permutation::from_map(map).expect("rotation permutation")
}

/// Whether `v` starts a pseudo-arc, i.e. `(v, succ v)` is not an arc of `g`.
#[inline]
pub fn is_pseudo(t: &Tour, g: &Graph, v: VertexId) -> bool {
    !g.arc(v, t.succ(v))
}

pub fn pseudo_count(t: &Tour, g: &Graph) -> usize {
    (1..=t.n()).filter(|&v| is_pseudo(t, g, v)).count()
}

/// Arcs `(tail, head)` that `m` removes from and adds to `t`, excluding
/// the interior of a reversed rotation segment.
pub fn arc_changes(t: &Tour, m: &Move) -> (Vec<(VertexId, VertexId)>, Vec<(VertexId, VertexId)>) {
    let h = |x| t.succ(x);
    match *m {
        Move::ThreeCycle { a, b, c } => (
            vec![(a, h(a)), (b, h(b)), (c, h(c))],
            vec![(a, h(b)), (b, h(c)), (c, h(a))],
        ),
        Move::Potdtc { a, c, b, d } => (
            vec![(a, h(a)), (c, h(c)), (b, h(b)), (d, h(d))],
            vec![(a, h(c)), (c, h(a)), (b, h(d)), (d, h(b))],
        ),
        Move::Rotation { v, w } => (vec![(v, h(v)), (w, h(w))], vec![(v, w), (h(v), h(w))]),
    }
}

/// Net decrease in pseudo-arc count caused by applying `m` to `t`.
pub fn score(t: &Tour, g: &Graph, m: &Move) -> i64 {
    let (removed, added) = arc_changes(t, m);
    let pseudo = |&(u, v): &(VertexId, VertexId)| !g.arc(u, v) as i64;
    let mut s: i64 = removed.iter().map(pseudo).sum::<i64>() - added.iter().map(pseudo).sum::<i64>();
    if let (Move::Rotation { v, w }, true) = (*m, g.is_directed()) {
        // reversed interior arcs change status in a digraph
        let seg = t.segment(t.succ(v), w);
        for pair in seg.windows(2) {
            s += pseudo(&(pair[0], pair[1])) - pseudo(&(pair[1], pair[0]));
        }
    }
    s
}

/// Pseudo-arc vertices ordered by descending degree, ties by ascending id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PseudoRegistry {
    items: Vec<VertexId>,
}

impl PseudoRegistry {
    pub fn new(t: &Tour, g: &Graph) -> PseudoRegistry {
        let mut items: Vec<VertexId> = (1..=t.n()).filter(|&v| is_pseudo(t, g, v)).collect();
        items.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
        PseudoRegistry { items }
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.items.contains(&v)
    }

    pub fn as_slice(&self) -> &[VertexId] {
        &self.items
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.items.iter().copied()
    }
}

pub fn pseudo_registry(t: &Tour, g: &Graph) -> PseudoRegistry {
    PseudoRegistry::new(t, g)
}

/// Inverse moves, newest first. Unbounded unless a capacity is given.
#[derive(Debug, Clone, Default)]
pub struct BacktrackQueue {
    items: VecDeque<Move>,
    cap: Option<usize>,
}

impl BacktrackQueue {
    pub fn new() -> BacktrackQueue {
        BacktrackQueue::default()
    }

    pub fn with_capacity(cap: usize) -> BacktrackQueue {
        BacktrackQueue {
            items: VecDeque::new(),
            cap: Some(cap.max(1)),
        }
    }

    pub fn push(&mut self, inverse: Move) {
        self.items.push_front(inverse);
        if let Some(cap) = self.cap {
            self.items.truncate(cap);
        }
    }

    pub fn pop(&mut self) -> Result<Move, TourError> {
        self.items.pop_front().ok_or(TourError::NoHistory)
    }

    pub fn peek(&self) -> Option<&Move> {
        self.items.front()
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn clear(&mut self) {
        self.items.clear();
    }
}

pub fn parse_tour(text: &str) -> Result<Tour, TourError> {
    let ids: Vec<VertexId> = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(str::split_whitespace)
        .map(|t| t.parse().map_err(|_| TourError::Parse(format!("bad vertex `{t}`"))))
        .collect::<Result<_, _>>()?;
    Tour::new(&ids)
}

pub fn serialize_tour(t: &Tour) -> String {
    let ids: Vec<String> = t.order().iter().map(|v| v.to_string()).collect();
    format!("{}\n", ids.join(" "))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(n: usize) -> Tour {
        Tour::identity(n).unwrap()
    }

    #[test]
    fn ordinals_follow_build_order() {
        let t = Tour::new(&[1, 14, 8, 4, 3, 12, 7, 13, 10, 6, 11, 5, 15, 9, 2]).unwrap();
        assert_eq!(t.ord(2), 15);
        assert_eq!(t.ord(5), 12);
        assert_eq!(t.at(12), 5);
        let small = Tour::new(&[1, 2, 3]).unwrap();
        assert_eq!(small.succ(3), 1);
        assert_eq!(small.ord(2), 2);
        assert_eq!(Tour::new(&[1, 1, 2]), Err(TourError::Duplicate(1)));
        assert_eq!(Tour::new(&[1, 2]), Err(TourError::TooSmall(2)));
    }

    #[test]
    fn clockwise_and_crossing() {
        let t = id(10);
        assert_eq!(t.cyclic_clockwise(3, 7, 9), Ok(true));
        assert_eq!(t.cyclic_clockwise(5, 3, 8), Ok(false));
        assert_eq!(t.cyclic_clockwise(9, 2, 5), Ok(true));
        assert_eq!(t.cyclic_clockwise(9, 2, 2), Err(TourError::NotDistinct));
        assert_eq!(t.interlaced(3, 7, 4, 9), Ok(true));
        assert_eq!(t.interlaced(1, 2, 3, 4), Ok(false));
        assert_eq!(id(12).interlaced(2, 6, 3, 7), Ok(true));
    }

    #[test]
    fn three_cycle_result() {
        let t = apply_move(&id(12), &Move::ThreeCycle { a: 1, b: 4, c: 8 }).unwrap();
        assert_eq!(t.order(), vec![1, 5, 6, 7, 8, 2, 3, 4, 9, 10, 11, 12]);
    }

    #[test]
    fn potdtc_result() {
        let t = apply_move(&id(12), &Move::Potdtc { a: 2, c: 6, b: 3, d: 7 }).unwrap();
        assert_eq!(t.order(), vec![1, 2, 7, 4, 5, 6, 3, 8, 9, 10, 11, 12]);
    }

    #[test]
    fn inadmissible_moves_are_rejected() {
        let t = id(10);
        let m = Move::ThreeCycle { a: 5, b: 3, c: 8 };
        assert!(!t.is_admissible(&m));
        assert_eq!(apply_move(&t, &m), Err(TourError::Inadmissible(m)));
        assert!(!t.is_admissible(&Move::Rotation { v: 4, w: 5 }));
        assert!(!t.is_admissible(&Move::ThreeCycle { a: 1, b: 1, c: 2 }));
    }

    #[test]
    fn rotation_permutations() {
        let t = id(8);
        assert_eq!(rotation_as_permutation(&t, 1, 3).to_string(), "(1 2 3)");
        assert_eq!(rotation_as_permutation(&t, 1, 4).to_string(), "(1 3)(2 4)");
        assert!(rotation_as_permutation(&t, 1, 2).is_identity());
        let r = apply_move(&t, &Move::Rotation { v: 1, w: 4 }).unwrap();
        assert_eq!(r.order(), vec![1, 4, 3, 2, 5, 6, 7, 8]);
    }

    #[test]
    fn rotation_across_the_start() {
        let t = id(6);
        let r = apply_move(&t, &Move::Rotation { v: 5, w: 2 }).unwrap();
        // 5 -> 2 -> 1 -> 6 -> 3 -> 4 -> 5
        assert_eq!(r.order(), vec![1, 6, 3, 4, 5, 2]);
        assert_eq!(r.start(), 1);
        let back = apply_move(&r, &Move::Rotation { v: 5, w: 6 }).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn move_text_round_trip() {
        for m in [
            Move::ThreeCycle { a: 1, b: 2, c: 3 },
            Move::Potdtc {
                a: 4,
                c: 9,
                b: 6,
                d: 11,
            },
            Move::Rotation { v: 7, w: 2 },
        ] {
            assert_eq!(m.to_string().parse::<Move>(), Ok(m));
        }
        assert!("3C 1 2".parse::<Move>().is_err());
        assert!("XX 1 2".parse::<Move>().is_err());
    }

    #[test]
    fn backtrack_queue() {
        let t = id(9);
        let m = Move::ThreeCycle { a: 2, b: 5, c: 8 };
        let mut q = BacktrackQueue::new();
        q.push(m.inverse_on(&t));
        assert_eq!(q.pop(), Ok(Move::ThreeCycle { a: 2, b: 8, c: 5 }));
        assert_eq!(q.pop(), Err(TourError::NoHistory));

        let p = Move::Potdtc { a: 2, c: 6, b: 4, d: 8 };
        let after = apply_move(&t, &p).unwrap();
        q.push(p.inverse_on(&t));
        assert_eq!(apply_move(&after, &q.pop().unwrap()).unwrap(), t);

        let mut bounded = BacktrackQueue::with_capacity(1);
        bounded.push(m);
        bounded.push(p);
        assert_eq!(bounded.len(), 1);
        assert_eq!(bounded.peek(), Some(&p));
    }

    #[test]
    fn score_cases() {
        // the tour 1..6 lies in the 6-cycle graph: nothing is pseudo
        let edges: Vec<_> = (1..=6).map(|i| (i, i % 6 + 1)).collect();
        let g = Graph::from_edges(6, false, &edges).unwrap();
        let t = id(6);
        assert!(PseudoRegistry::new(&t, &g).is_empty());
        let m = Move::ThreeCycle { a: 1, b: 3, c: 5 };
        assert_eq!(score(&t, &g, &m), -3);

        // every arc pseudo: the complement of a 6-cycle
        let empty = Graph::empty(6, false);
        assert_eq!(PseudoRegistry::new(&t, &empty).len(), 6);
        assert_eq!(score(&t, &empty, &m), 0);
    }

    #[test]
    fn tour_text() {
        let t = parse_tour("3 1 2\n").unwrap();
        assert_eq!(serialize_tour(&t), "3 1 2\n");
        assert!(parse_tour("1 2 x").is_err());
    }

    #[test]
    fn canonical_spellings_share_a_permutation() {
        let t = id(12);
        let spellings = [
            [
                Move::ThreeCycle { a: 2, b: 5, c: 9 },
                Move::ThreeCycle { a: 5, b: 9, c: 2 },
                Move::ThreeCycle { a: 9, b: 2, c: 5 },
            ],
            [
                Move::Potdtc { a: 2, c: 6, b: 3, d: 9 },
                Move::Potdtc { a: 9, c: 3, b: 6, d: 2 },
                Move::Potdtc { a: 6, c: 2, b: 3, d: 9 },
            ],
        ];
        for group in spellings {
            for m in group {
                assert_eq!(m.canonical(), group[0].canonical());
                assert_eq!(m.as_permutation(&t), group[0].as_permutation(&t));
                assert_eq!(m.canonical().canonical(), m.canonical());
            }
        }
        let other = Move::ThreeCycle { a: 2, b: 9, c: 5 };
        assert_ne!(other.canonical(), spellings[0][0].canonical());
    }
}
