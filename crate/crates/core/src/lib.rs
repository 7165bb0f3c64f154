//! Exact path polytopes of trees.
//!
//! The path polytope of a tree is the convex hull of the 0/1 edge-indicator
//! vectors of its leaf-to-leaf paths. This crate builds it in vertex form,
//! writes down its closed-form halfspace description and facets, rebuilds it
//! as a toric fiber product of smaller path polytopes, and checks all of that
//! against an independent facet-enumeration oracle. All arithmetic is exact.

pub mod certify;
pub mod error;
pub mod linalg;
pub mod oracle;
pub mod path_polytope;
pub mod polytope;
pub mod tfp;
pub mod tree;

pub use error::{Error, ErrorKind, Result};
pub use polytope::{Basis, ConstraintKind, HRep, LinearConstraint, RationalVector, VRep};
pub use tree::{Edge, LeafEdge, NodeId, Tree};
