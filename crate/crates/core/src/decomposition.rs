//! Constructive decomposition of a target tour into admissible moves.
//!
//! With `σ = current⁻¹∘target`, the points moved by σ are exactly the tails of
//! tour arcs not shared with the target. Each emitted move fixes at least two
//! more points of σ: either a 3-cycle through three consecutive points of a
//! cycle of σ that already run clockwise, or a pair of interlacing σ-arcs.

use num_bigint::BigUint;
use thiserror::Error;

use crate::graph::VertexId;
use crate::perm::Permutation;
use crate::tour::{Move, Tour, TourError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecompError {
    #[error("tours have different sizes ({0} and {1})")]
    SizeMismatch(usize, usize),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

/// Moves transforming a start tour into a target, plus the start-shared
/// vertices that were touched along the way.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub moves: Vec<Move>,
    pub spent: Vec<VertexId>,
}

/// The permutation `σ` with `target = current∘σ`.
pub fn sigma(current: &Tour, target: &Tour) -> Permutation {
    let map = (0..=current.n())
        .map(|x| if x == 0 { 0 } else { current.pred(target.succ(x)) })
        .collect();
    Permutation::from_map(map).expect("composition of bijections")
}

/// An admissible move that fixes at least two more points of `s`.
pub fn next_move(t: &Tour, s: &Permutation) -> Result<Move, DecompError> {
    let cycles = s.cycles();
    for c in &cycles {
        let k = c.len();
        if k < 3 {
            continue;
        }
        for i in 0..k {
            let (a, b, cc) = (c[i], c[(i + 1) % k], c[(i + 2) % k]);
            if t.clockwise(a, b, cc) {
                return Ok(Move::ThreeCycle { a, b, c: cc });
            }
        }
    }

    let mut order: Vec<&Vec<VertexId>> = cycles.iter().collect();
    order.sort_by_key(|c| (std::cmp::Reverse(c.len()), c[0]));
    let moved: Vec<VertexId> = (1..=s.n()).filter(|&x| s.apply(x) != x).collect();
    for cyc in order {
        let mut tails = cyc.clone();
        tails.sort_unstable();
        for a in tails {
            let c = s.apply(a);
            for &b in &moved {
                let d = s.apply(b);
                if [a, c].contains(&b) || [a, c].contains(&d) {
                    continue;
                }
                if t.crossing(a, c, b, d) {
                    return Ok(Move::Potdtc { a, c, b, d });
                }
            }
        }
    }
    Err(DecompError::Invariant(format!("no admissible move for σ = {s}")))
}

/// Moves taking `start` to `target`, each admissible and each fixing at least two points of σ.
pub fn decompose(start: &Tour, target: &Tour) -> Result<Decomposition, DecompError> {
    if start.n() != target.n() {
        return Err(DecompError::SizeMismatch(start.n(), target.n()));
    }
    let n = start.n();
    let mut t = start.clone();
    let mut s = sigma(&t, target);
    let shared: Vec<bool> = (0..=n).map(|x| x > 0 && s.apply(x) == x).collect();
    let mut spent = vec![false; n + 1];
    let mut moves = Vec::new();
    while !s.is_identity() {
        if !s.is_even() {
            return Err(DecompError::Invariant(format!("σ = {s} is odd")));
        }
        let m = next_move(&t, &s)?;
        for v in m.vertices() {
            if shared[v] {
                spent[v] = true;
            }
        }
        t.apply(&m).map_err(|e| DecompError::Invariant(e.to_string()))?;
        let next = sigma(&t, target);
        if next.moved() + 2 > s.moved() {
            return Err(DecompError::Invariant(format!("{m} fixed fewer than two points")));
        }
        s = next;
        moves.push(m);
    }
    Ok(Decomposition {
        moves,
        spent: (1..=n).filter(|&v| spent[v]).collect(),
    })
}

/// Applies `moves` in order, failing on the first inadmissible one.
pub fn replay(start: &Tour, moves: &[Move]) -> Result<Tour, TourError> {
    let mut t = start.clone();
    for m in moves {
        t.apply(m)?;
    }
    Ok(t)
}

fn square_pyramid(f: u64) -> BigUint {
    let f = BigUint::from(f);
    (BigUint::from(2u32) * &f * &f * &f + BigUint::from(3u32) * &f * &f + &f) / BigUint::from(6u32)
}

/// Both move-count expressions, `Σ i²` up to `⌊n/2⌋` and up to `⌊n/3⌋`.
/// Which one bounds which is left to the caller.
pub fn move_count_bounds(n: u64) -> (BigUint, BigUint) {
    (square_pyramid(n / 2), square_pyramid(n / 3))
}
