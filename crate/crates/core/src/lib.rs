//! Hamilton circuit search by admissible permutations of pseudo-Hamilton tours.

pub mod contraction;
pub mod decomposition;
pub mod exec;
pub mod generators;
pub mod graph;
pub mod perm;
pub mod probability;
pub mod solver;
pub mod tour;
pub mod tsp;
pub mod verify;

pub use graph::{parse_graph, serialize_graph, DegreeProfile, Graph, GraphError, ParseError, VertexId};
pub use perm::Permutation;
pub use tour::{apply_move, build_tour, Move, PseudoRegistry, Tour, TourError};
