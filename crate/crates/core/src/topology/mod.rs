//! Finite-resolution topology of cell covers.
//!
//! Everything here works on a [`CellSet`](crate::attractor::CellSet) and
//! decides exactly: two closed cells are adjacent iff they share at least a
//! point, a level is disconnected iff the cell adjacency graph is, and a
//! positive minimum gap is a clopen-split witness. One caveat is inherent
//! and deliberate: these are statements about the level-`k` cover, offered
//! as evidence about the limit set, never as a proof.

mod adjacency;
mod arcs;
mod properties;
mod report;
mod scaled;
mod windows;

pub use adjacency::{build_adjacency, connected_components, AdjacencyGraph, Components};
pub use arcs::{find_arc, Polyline};
pub use properties::{
    check_conditions, clopen_partition, min_gap, perfectness_proxy, ConditionReport, Gap,
    PerfectnessReport,
};
pub use report::{nested_connectivity_report, LevelConnectivity, PropertyReport};
pub use windows::count_windows;
