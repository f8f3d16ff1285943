//! Multinomial resampling from a discrete distribution.
//!
//! Three samplers turn a table of cumulative weights into `n` sampled
//! indices:
//!
//! * [`binary_sample`]: one full binary search per independent uniform,
//!   `O(n log m)`.
//! * [`ccf_sample`]: a single merge-style sweep over sorted uniforms
//!   (Carpenter, Clifford and Fearnhead), `O(n + m)`.
//! * [`dac_sample`]: divide and conquer over sorted uniforms, matching the
//!   median uniform with a range-restricted binary search and splitting
//!   both arrays around it, `O(n log(m/n + 1))`.
//!
//! Each sorted sampler has a deterministic matcher form ([`ccf_match`],
//! [`dac_match`]) taking pre-generated [`SortedUniforms`], and every
//! sampler can be run with a [`Recorder`] that tallies comparisons and
//! probes. The no-op recorder [`NoStats`] compiles away.
//!
//! Indices are zero-based throughout.

mod error;

pub mod cdf;
pub mod rng;
pub mod samplers;
pub mod weightgen;

pub use cdf::WeightTable;
pub use error::{Error, Result};
pub use rng::{sorted_uniforms, Replay, RngStream, SortedUniforms, UniformSource};
pub use samplers::{
    binary_sample, binary_sample_with_stats, ccf_match, ccf_match_with, ccf_sample,
    ccf_sample_with_stats, dac_match, dac_match_with, dac_sample, dac_sample_with_stats,
    linear_oracle, NoStats, OpStats, Recorder, SampleIndices, Sampler, Scratch, SearchEvent, Trace,
};
pub use weightgen::{
    dirichlet_uniform, engmf_weights, geometric_decay, RawWeights, ScenarioParams,
};
