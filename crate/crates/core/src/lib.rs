//! Multigraph edge coloring within `max{Δ + 1, ⌈Γ⌉}` colors.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`]: multigraphs with stable edge ids and a text format.
//! * [`coloring`]: partial colorings, Kempe chains, set predicates, stable
//!   colorings and exit paths.
//! * [`density`]: exact density `Γ`, the bound family, and brute-force
//!   oracles for the chromatic index, criticality and tree order.
//! * [`tashkinov`]: tree sequences, the augmentation closure, extended tree
//!   series and good hierarchies.
//! * [`engine`]: the coloring driver and result verification.
//! * [`generate`]: deterministic instance generators.

pub mod color_set;
pub mod coloring;
pub mod density;
pub mod engine;
pub mod generate;
pub mod graph;
pub mod tashkinov;

pub use color_set::{Color, ColorSet};
pub use graph::{EdgeId, Multigraph, VertexSet};
