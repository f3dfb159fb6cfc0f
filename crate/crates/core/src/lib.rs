//! Acyclic edge colourings of cartesian products of graphs.
//!
//! An edge colouring is acyclic when it is proper and no two colour classes
//! together contain a cycle. This crate builds cartesian products, composes
//! acyclic colourings of two factors into one for their product with at
//! most the sum of the factors' colours, computes the exact acyclic
//! chromatic index of small graphs, and verifies every colouring it
//! produces with an independent checker.

pub mod colouring;
pub mod compose;
pub mod enumerate;
pub mod graph;
pub mod io;
pub mod solver;
pub mod union_find;
pub mod vertex;

pub use colouring::{
    check_acyclic, check_proper_edge, check_proper_vertex, colours_used, find_bichromatic_cycle, Colour,
    ColouringError, EdgeColouring, Palette, VerifyError, VertexColouring, Violation,
};
pub use compose::{
    compose, compose_many, compose_or_solve, hypercube_colouring, sigma, ComposeError, ComposeInput, Composition,
    ShiftPermutation,
};
pub use graph::{cartesian_product, Graph, GraphError, Product, ProductEdgeKind, ProductVertex};
pub use solver::{exact_aci, greedy_acyclic, lower_bound, AciResult, SearchBudget, SolveError};
pub use vertex::{brooks_colouring, d_of};
