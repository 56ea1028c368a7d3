//! Exact set-list-coloring engine.
//!
//! The crate is `no_std` and only needs `alloc`. It provides color sets and
//! graphs, an exact `(L:b)`-coloring search, canonical enumeration and
//! sampling of half-list assignments, the relaxedness checker for gadgets,
//! and constructors for the gadget family culminating in a 4-choosable graph
//! that is not `(8:2)`-choosable.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod canon;
pub mod choosability;
pub mod color;
pub mod error;
pub mod gadgets;
pub mod graph;
pub mod model;
pub mod solver;
pub mod theorem;

pub use canon::{canonicalize, canonicalize_natural, enumerate_half_lists, HalfListEnumerator, ListConstraint};
pub use choosability::{
    check_colorable, check_relaxed_at, relaxed_branches, sample_half_lists, structured_cases, verify_relaxed,
    verify_sampled_colorability, verify_universal_colorability, Counterexample, RelaxedBranch, RelaxedStats,
    RelaxedVerdict, UniversalStats, VerifyMode,
};
pub use color::ColorSet;
pub use error::{Error, Result};
pub use graph::{Graph, GraphBuilder, Vertex};
pub use model::{half_list_valid, is_proper, respects_lists, Gadget, ListAssignment, SetColoring};
pub use solver::{
    count_colorings, find_coloring, forced_value_check, CountResult, DomainConstraint, SolveResult, Solver, Status,
    VertexConstraint,
};
