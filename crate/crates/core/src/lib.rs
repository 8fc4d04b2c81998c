//! Mixed stack/queue linear layouts of graphs.
//!
//! * [`layout`]: vertex orders, page assignments, the exact verifier and a
//!   brute-force existence oracle.
//! * [`sat`]: CNF encoding of layout existence, an embedded CDCL solver,
//!   DIMACS export and an external-solver backend.
//! * [`concentric`]: BFS-level representations of plane graphs and the
//!   1-stack 1-queue layout of a subdivision with one division vertex per
//!   subdivided edge.
//! * [`generators`]: gadget graphs, the 19-copy counterexample, the
//!   Goldner–Harary graph and random triangulations.

pub mod bfs;
pub mod concentric;
pub mod embedding;
pub mod formats;
pub mod generators;
pub mod graph;
pub mod layout;
pub mod numbers;
pub mod sat;

pub use bfs::{bfs_levels, BfsLayering};
pub use embedding::{planar_embed, planar_embed_with_outer, Dart, NotPlanar, RotationSystem};
pub use graph::{Edge, Graph, GraphError, Vertex};
pub use layout::{
    brute_force_solve, relation, verify_mixed, BruteOutcome, LayoutError, MixedLayout, PageAssignment,
    PageKind, Relation, VerifyReport, VertexOrder, Violation,
};
pub use numbers::{queue_number, stack_number, NumberError};
pub use sat::{solve_layout, Backend, LayoutOutcome, SolveError, SolveOptions};
