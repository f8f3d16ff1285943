use crate::cdf::{upper_bound_in, WeightTable};
use crate::rng::{sorted_uniforms_into, SortedUniforms, UniformSource};

use super::{NoStats, OpStats, Recorder, SampleIndices, SearchEvent};

/// A pending subproblem: uniforms `a_u..=b_u` against weights `a_w..=b_w`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Frame {
    a_u: usize,
    b_u: usize,
    a_w: usize,
    b_w: usize,
    depth: u32,
}

/// Divide-and-conquer matching of sorted uniforms against the cumulative
/// weights.
///
/// The middle uniform of the current scope is located by a binary search
/// restricted to the scope's weight range. Uniforms left of it can only
/// land at or before that weight and uniforms right of it at or after, so
/// both halves recurse on the split weight range, sharing the boundary
/// index. A scope with a single weight is filled without searching.
pub fn dac_match(u: &SortedUniforms, table: &WeightTable) -> (SampleIndices, OpStats) {
    let mut stats = OpStats::default();
    let out = dac_match_with(u, table, &mut stats);
    (out, stats)
}

pub fn dac_match_with<R: Recorder>(
    u: &SortedUniforms,
    table: &WeightTable,
    rec: &mut R,
) -> SampleIndices {
    let mut out = Vec::new();
    let mut stack = Vec::new();
    dac_into(u.as_slice(), table, &mut out, &mut stack, rec);
    SampleIndices::from(out)
}

pub fn dac_sample<S: UniformSource + ?Sized>(
    table: &WeightTable,
    n: usize,
    src: &mut S,
) -> SampleIndices {
    let mut u = Vec::with_capacity(n);
    sorted_uniforms_into(src, n, &mut u);
    let mut out = Vec::new();
    let mut stack = Vec::new();
    dac_into(&u, table, &mut out, &mut stack, &mut NoStats);
    SampleIndices::from(out)
}

pub fn dac_sample_with_stats<S: UniformSource + ?Sized>(
    table: &WeightTable,
    n: usize,
    src: &mut S,
) -> (SampleIndices, OpStats) {
    let u = crate::rng::sorted_uniforms(src, n);
    dac_match(&u, table)
}

pub(crate) fn dac_into<R: Recorder>(
    u: &[f64],
    table: &WeightTable,
    out: &mut Vec<usize>,
    stack: &mut Vec<Frame>,
    rec: &mut R,
) {
    out.clear();
    out.resize(u.len(), 0);
    stack.clear();
    if u.is_empty() {
        return;
    }
    let cum = table.as_slice();
    stack.push(Frame {
        a_u: 0,
        b_u: u.len() - 1,
        a_w: 0,
        b_w: cum.len() - 1,
        depth: 1,
    });

    while let Some(Frame {
        a_u,
        b_u,
        a_w,
        b_w,
        depth,
    }) = stack.pop()
    {
        rec.enter(depth);
        if a_u == b_u {
            let found = upper_bound_in(cum, a_w, b_w, u[a_u], rec);
            rec.search(SearchEvent {
                uniform: a_u,
                lo: a_w,
                hi: b_w,
                found,
                depth,
            });
            out[a_u] = found;
        } else if a_w == b_w {
            out[a_u..=b_u].fill(a_w);
        } else {
            let m_u = a_u + (b_u - a_u) / 2;
            let m_w = upper_bound_in(cum, a_w, b_w, u[m_u], rec);
            rec.search(SearchEvent {
                uniform: m_u,
                lo: a_w,
                hi: b_w,
                found: m_w,
                depth,
            });
            out[m_u] = m_w;
            // Right first so the left half is popped next.
            if m_u < b_u {
                stack.push(Frame {
                    a_u: m_u + 1,
                    b_u,
                    a_w: m_w,
                    b_w,
                    depth: depth + 1,
                });
            }
            if m_u > a_u {
                stack.push(Frame {
                    a_u,
                    b_u: m_u - 1,
                    a_w,
                    b_w: m_w,
                    depth: depth + 1,
                });
            }
        }
    }
}
