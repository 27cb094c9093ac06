//! Block designs: parameters, incidence structures, generators, file I/O,
//! certification, and the bipartite incidence graph.

mod generate;
mod graph;
mod incidence;
mod io;
mod params;
mod validate;

pub use generate::{fano, gen_complete, gen_paley_design, gen_projective_plane, is_prime};
pub use graph::{to_bipartite, BipartiteGraph, Part};
pub use incidence::IncidenceStructure;
pub use io::{format_incidence, load_incidence, parse_incidence, save_incidence};
pub use params::{lambda_i, DesignParams};
pub use validate::{
    validate_design, validate_design_with_budget, LevelReport, SubsetViolation, SumCheck,
    ValidationReport, DEFAULT_SUBSET_BUDGET,
};
