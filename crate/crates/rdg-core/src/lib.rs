//! Rectangular diagrams on the cylinder `r = 1`.
//!
//! A diagram is a grid of `n` oriented horizontal arcs (one per z-level) and
//! `n` derived vertical arcs (one per angular level), alternating at corners.
//! This crate validates the defining axioms, computes the classical
//! Legendrian/transverse invariants (`tb`, `rot`, `sl`), applies the
//! elementary moves (flip, commutations, corner stabilizations, cyclic
//! rotation), braids any diagram by flipping its backward arcs, searches
//! move-equivalence with a bounded bidirectional BFS over canonical keys, and
//! realizes diagrams as piecewise curves tangent to `ker(dz + r^2 dθ)`.
//!
//! The `parallel` feature (default) routes batch evaluation and search
//! frontier expansion through rayon; without it everything runs sequentially.

pub mod batch;
pub mod diagram;
pub mod generators;
pub mod geometry;
pub mod invariants;
pub mod io;
pub mod moves;
pub mod render;
pub mod search;

pub use diagram::{
    CanonicalKey, Corner, CornerKind, HorizArc, RawDiagram, RectDiagram, Sweep, ValidationReport,
    VertArc, VertDir,
};
pub use invariants::{Crossing, InvariantReport};
pub use moves::{Move, MoveClass, MoveError, MoveLabel, Quadrant};
pub use search::{
    EquivalenceCertificate, MoveSet, NotFoundReason, Obstruction, SearchConfig, SearchError,
    Verdict,
};
