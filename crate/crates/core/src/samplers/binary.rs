use crate::cdf::WeightTable;
use crate::rng::UniformSource;

use super::{OpStats, Recorder, SampleIndices, SearchEvent};

/// `n` independent draws, each located by a full-range binary search.
/// Output follows draw order.
pub fn binary_sample<S: UniformSource + ?Sized>(
    table: &WeightTable,
    n: usize,
    src: &mut S,
) -> SampleIndices {
    let mut out = Vec::with_capacity(n);
    binary_into(table, n, src, &mut out, &mut super::NoStats);
    SampleIndices::from(out)
}

pub fn binary_sample_with_stats<S: UniformSource + ?Sized>(
    table: &WeightTable,
    n: usize,
    src: &mut S,
) -> (SampleIndices, OpStats) {
    let mut out = Vec::with_capacity(n);
    let mut stats = OpStats::default();
    binary_into(table, n, src, &mut out, &mut stats);
    (SampleIndices::from(out), stats)
}

pub(crate) fn binary_into<S: UniformSource + ?Sized, R: Recorder>(
    table: &WeightTable,
    n: usize,
    src: &mut S,
    out: &mut Vec<usize>,
    rec: &mut R,
) {
    out.clear();
    let hi = table.len() - 1;
    for i in 0..n {
        let x = src.uniform_open();
        let found = table.search(0, hi, x, rec);
        rec.search(SearchEvent {
            uniform: i,
            lo: 0,
            hi,
            found,
            depth: 0,
        });
        out.push(found);
    }
}
