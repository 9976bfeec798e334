//! Kochen-Specker contextuality: the Peres ray set and its colouring search,
//! and the Mermin square with its value-assignment refutation.

mod ks;
mod mermin;
mod rayfile;
mod rays;

pub use ks::{ks_color, verify_coloring, Color, KsColoring, KsOutcome, KsVerdict, Violation};
pub use mermin::{
    mermin_assignment_ok, mermin_assignment_search, mermin_assignment_search_with, mermin_square, mermin_verify,
    AssignmentSearch, MerminReport, MerminSquare, COL_LABELS, COL_SIGNS, ROW_LABELS, ROW_SIGNS,
};
pub use rayfile::{format_rays, parse_rays};
pub use rays::{
    orthogonality_structure, peres_rays, rays_from_squares, OrthogonalityStructure, Ray3, PERES_SQUARED_FAMILIES,
};
