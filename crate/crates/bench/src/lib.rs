//! Fixtures shared by the criterion benches.

use mnsample::{dirichlet_uniform, RngStream, WeightTable};

/// Dirichlet(1, ..., 1) table with `m` components.
pub fn dirichlet_table(m: usize, seed: u64) -> WeightTable {
    let raw = dirichlet_uniform(m, &mut RngStream::new(seed));
    WeightTable::build(raw.as_slice()).expect("exponential weights are valid")
}
