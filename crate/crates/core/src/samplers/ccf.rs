use crate::cdf::WeightTable;
use crate::rng::{sorted_uniforms_into, SortedUniforms, UniformSource};

use super::{NoStats, OpStats, Recorder, SampleIndices};

/// Linear sweep matching sorted uniforms against the cumulative weights
/// with a cursor that only moves forward.
pub fn ccf_match(u: &SortedUniforms, table: &WeightTable) -> (SampleIndices, OpStats) {
    let mut stats = OpStats::default();
    let out = ccf_match_with(u, table, &mut stats);
    (out, stats)
}

pub fn ccf_match_with<R: Recorder>(
    u: &SortedUniforms,
    table: &WeightTable,
    rec: &mut R,
) -> SampleIndices {
    let mut out = Vec::with_capacity(u.len());
    ccf_into(u.as_slice(), table, &mut out, rec);
    SampleIndices::from(out)
}

pub fn ccf_sample<S: UniformSource + ?Sized>(
    table: &WeightTable,
    n: usize,
    src: &mut S,
) -> SampleIndices {
    let mut u = Vec::with_capacity(n);
    sorted_uniforms_into(src, n, &mut u);
    let mut out = Vec::with_capacity(n);
    ccf_into(&u, table, &mut out, &mut NoStats);
    SampleIndices::from(out)
}

pub fn ccf_sample_with_stats<S: UniformSource + ?Sized>(
    table: &WeightTable,
    n: usize,
    src: &mut S,
) -> (SampleIndices, OpStats) {
    let u = crate::rng::sorted_uniforms(src, n);
    ccf_match(&u, table)
}

/// `u` must be sorted and bounded by 1; the pinned last weight then stops
/// the cursor before it runs off the table.
pub(crate) fn ccf_into<R: Recorder>(
    u: &[f64],
    table: &WeightTable,
    out: &mut Vec<usize>,
    rec: &mut R,
) {
    out.clear();
    let cum = table.as_slice();
    let mut j = 0;
    for &x in u {
        while {
            rec.compare();
            cum[j] < x
        } {
            j += 1;
        }
        out.push(j);
    }
}
