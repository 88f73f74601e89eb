//! Tree sequences, Tashkinov trees and their closures, extended tree series
//! and good hierarchies.

mod hierarchy;
mod search;
mod series;
mod taa;
mod tree;

pub use hierarchy::{
    build_hierarchy, build_hierarchy_at, condition_i, condition_ii, condition_iii, condition_iv,
    condition_v, failed_conditions, is_c_closed, is_c_minus_closed, GammaLevel, Hierarchy,
    HierarchyError, Shortfall,
};
pub use series::{
    build_series, check_iteration, max_defective_vertex, series_step, DefectiveChoice, Extension,
    Rung, SeriesBudget, SeriesError, SeriesOutcome, SeriesState, StepOutcome,
};
pub use taa::{elementary_audit, is_tashkinov_tree, taa_close, Audit, PaletteRule};
pub use tree::{TreeError, TreeSequence};
