//! Restricted numerical range of directed graphs.
//!
//! The Laplacian matrix `L` of a simple digraph, compressed onto the
//! orthogonal complement of the all-ones vector by a restrictor matrix
//! `Q`, has numerical range `W(QᵀLQ)` — the *restricted numerical range*
//! of the digraph. Its minimum and maximum real parts are the algebraic
//! connectivity `alpha` and its counterpart `beta`. This crate computes
//! that range, decides whether it is a convex polygon, and sorts
//! polygonal digraphs into three classes:
//!
//! * **normal** — `L` itself is a normal matrix,
//! * **restricted-normal** — `L` is not normal but `QᵀLQ` is,
//! * **pseudo-normal** — neither is normal yet the range is a polygon.
//!
//! The class tests are exact integer identities on the adjacency matrix;
//! floating point decides only the pseudo-normal / non-polygonal
//! boundary, via supporting-line checks against the eigenvalue hull.
//!
//! Top-level layout:
//!
//! * [`digraph`] — the [`Digraph`](digraph::Digraph) value type, degree
//!   and connectivity queries, constructors, join decomposition.
//! * [`linalg`] — dense matrices, eigensolvers, planar convex hulls.
//! * [`range`] — boundary sampling, polygonality, classification.
//! * [`survey`] — isomorph-free enumeration and the per-class census.
//! * [`io`] — digraph6 and edge-list file formats.

#![forbid(unsafe_code)]

pub mod digraph;
pub mod error;
pub mod io;
pub mod linalg;
pub mod range;
pub mod survey;

pub use digraph::Digraph;
pub use error::{Error, Result};
pub use range::ClassLabel;
