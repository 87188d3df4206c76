//! Structural and algebraic computations for directed graphs and their
//! Leavitt path algebras over the rationals.
//!
//! The crate covers the vertex-set machinery of a graph (hereditary and
//! saturated sets, breaking vertices, line points), boundary paths and their
//! shift-tail classes, ideal and quotient graphs, exact symbolic arithmetic,
//! the boundary-path representation, and the decision of whether the algebra
//! is a single matrix algebra.

pub mod boundary;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod ideal;
pub mod linalg;
pub mod lpa;
pub mod naimark;
pub mod repn;
pub mod sweep;

pub use error::{Error, Result};
pub use graph::{
    Bundle, BundleId, Component, Cycle, EdgeRef, Graph, GraphBuilder, Multiplicity, Path,
    VertexClass, VertexId, VertexSet,
};
