//! Quantum-walk search on incidence graphs of symmetric block designs.
//!
//! * [`design`]: parameters, generators, file I/O, certification, and the
//!   bipartite incidence graph.
//! * [`spectral`]: the four-eigenvalue decomposition of the incidence graph.
//! * [`marking`]: marked-vertex configurations and their classification.
//! * [`predictor`]: closed-form coupling, gap, optimal time and success
//!   probability for each configuration.
//! * [`dynamics`]: dense simulation of the walk used as ground truth.

pub mod design;
pub mod dynamics;
mod error;
pub mod marking;
mod numeric;
pub mod predictor;
pub mod spectral;

pub use error::{Error, Result};
