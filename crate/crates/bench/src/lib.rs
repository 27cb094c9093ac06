//! Shared fixtures for the benchmarks.

use designwalk::design::{gen_projective_plane, IncidenceStructure};

/// Projective planes used as benchmark inputs, smallest first.
pub fn planes(orders: &[u64]) -> Vec<(u64, IncidenceStructure)> {
    orders
        .iter()
        .map(|&q| (q, gen_projective_plane(q).expect("prime order")))
        .collect()
}
