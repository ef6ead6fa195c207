//! Hamilton circuit check that does not trust the tour data structure.

use crate::graph::{Graph, VertexId};
use crate::tour::Tour;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VerifyError {
    #[error("tour has {tour} vertices, graph has {graph}")]
    SizeMismatch { tour: usize, graph: usize },
}

/// Whether visiting `seq` in order and returning to its head is a Hamilton circuit of `g`.
pub fn verify_sequence(g: &Graph, seq: &[VertexId]) -> Result<bool, VerifyError> {
    let n = g.n();
    if seq.len() != n {
        return Err(VerifyError::SizeMismatch {
            tour: seq.len(),
            graph: n,
        });
    }
    if n < 3 {
        return Ok(false);
    }
    let mut seen = vec![false; n + 1];
    for &v in seq {
        if v == 0 || v > n || seen[v] {
            return Ok(false);
        }
        seen[v] = true;
    }
    Ok((0..n).all(|i| g.arc(seq[i], seq[(i + 1) % n])))
}

/// Walks successors from one vertex and checks a single orbit of length n made of graph arcs.
pub fn verify(g: &Graph, t: &Tour) -> Result<bool, VerifyError> {
    let n = g.n();
    if t.n() != n {
        return Err(VerifyError::SizeMismatch { tour: t.n(), graph: n });
    }
    let mut seq = Vec::with_capacity(n);
    let mut v = 1;
    for _ in 0..n {
        seq.push(v);
        v = t.succ(v);
    }
    Ok(v == 1 && verify_sequence(g, &seq)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square() {
        let g = Graph::from_edges(4, false, &[(1, 2), (2, 3), (3, 4), (1, 4), (1, 3)]).unwrap();
        assert_eq!(verify_sequence(&g, &[1, 2, 3, 4]), Ok(true));
        assert_eq!(verify_sequence(&g, &[1, 3, 2, 4]), Ok(false));
        assert_eq!(verify_sequence(&g, &[1, 2, 2, 4]), Ok(false));
        assert!(verify_sequence(&g, &[1, 2, 3]).is_err());
        assert_eq!(verify(&g, &Tour::new(&[3, 4, 1, 2]).unwrap()), Ok(true));
    }

    #[test]
    fn direction_matters_in_digraphs() {
        let d = Graph::from_edges(3, true, &[(1, 2), (2, 3), (3, 1)]).unwrap();
        assert_eq!(verify_sequence(&d, &[1, 2, 3]), Ok(true));
        assert_eq!(verify_sequence(&d, &[1, 3, 2]), Ok(false));
    }
}
