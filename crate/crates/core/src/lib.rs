//! Diagonal distance of graphs and multigraphs over prime fields, and the
//! distance of graph codes given a set of codeword labellings.
//!
//! The distance is the minimum χ-weight over nonzero vectors `k = (z | x)` of
//! the nullspace of `Λ = [I | Γ]`, where Γ is the adjacency matrix mod p and
//! the χ-weight counts vertices `i` with `zᵢ ≠ 0` or `xᵢ ≠ 0`. The [`oracle`]
//! module computes the same quantity by exhaustive application of the Z/X
//! colouring rules and serves as a cross-check.
//!
//! ```
//! use diagdist::{distance, graph, PrimeField};
//!
//! let f = PrimeField::new(2).unwrap();
//! let cycle = graph::generate(graph::Family::Cycle, 5).unwrap();
//! let report = distance::diagonal_distance(&cycle, &f, &distance::SearchConfig::for_field(&f)).unwrap();
//! assert_eq!(report.distance, 3);
//! ```

pub mod cli;
pub mod distance;
pub mod field;
pub mod graph;
pub mod oracle;

pub use distance::{
    build_lambda, chi_weight, code_distance, diagonal_distance, kernel_point, pairwise_distance,
    CodeDistance, DistanceError, DistanceReport, SearchConfig, SymplecticVector,
};
pub use field::{kernel_basis, rref, solve, FieldMatrix, FieldVector, PrimeField};
pub use graph::{generate, parse_codewords, parse_graph, Family, GraphLabelling, Multigraph};
pub use oracle::{brute_force_distance, brute_force_pairwise, OperatorWord};
