//! Exact analysis of central plane arrangements in C^3, viewed as line
//! arrangements in the projective plane over a quadratic number field.
//!
//! The crate computes intersection lattices and their invariants, decides
//! freeness by independent methods (characteristic-polynomial roots with the
//! big-intersection test, combinatorial classification of balanced lattices,
//! and the Ziegler-restriction criterion), searches for inductive-freeness
//! filtrations, and emits exhaustive certificates that an arrangement has no
//! free neighbor, which rules out recursive freeness. All arithmetic is
//! exact over Q or Q(sqrt(d)).

pub mod catalog;
pub mod exactnum;
pub mod format;
pub mod freeness;
pub mod geometry;
mod linalg;
pub mod multiarr;
pub mod report;
pub mod search;
pub mod verify;
