//! Plane graphs, DP-coloring covers, transversal search, structural
//! classification and exact discharging audits.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod cover;
pub mod discharging;
pub mod embed;
pub mod families;
pub mod graph;
pub mod plane_graph;
pub mod solver;
pub mod structure;

pub use cover::{Color, Cover, CoverError, CoverGraph};
pub use graph::{edge, Edge, Graph, GraphError};
pub use plane_graph::{enumerate_cycles, Cycle, Face, FaceId, PlaneGraph, PlaneGraphError};
