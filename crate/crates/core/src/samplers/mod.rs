//! The three multinomial samplers and the linear-scan reference.

mod binary;
mod ccf;
mod dac;
mod stats;

use std::fmt;
use std::str::FromStr;

use crate::cdf::WeightTable;
use crate::error::{Error, Result};
use crate::rng::{sorted_uniforms_into, UniformSource};

pub use binary::{binary_sample, binary_sample_with_stats};
pub use ccf::{ccf_match, ccf_match_with, ccf_sample, ccf_sample_with_stats};
pub use dac::{dac_match, dac_match_with, dac_sample, dac_sample_with_stats};
pub use stats::{NoStats, OpStats, Recorder, SearchEvent, Trace};

/// Sampled component indices, zero-based.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SampleIndices(Vec<usize>);

impl SampleIndices {
    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<usize> {
        self.0
    }

    /// Occurrence count of each index in `0..m`.
    pub fn counts(&self, m: usize) -> Vec<u64> {
        let mut counts = vec![0u64; m];
        for &i in &self.0 {
            counts[i] += 1;
        }
        counts
    }
}

impl From<Vec<usize>> for SampleIndices {
    fn from(v: Vec<usize>) -> Self {
        SampleIndices(v)
    }
}

/// Smallest `j` with `cum[j] >= u`, by scanning from the front.
pub fn linear_oracle(table: &WeightTable, u: f64) -> Result<usize> {
    if !(u > 0.0 && u <= 1.0) {
        return Err(Error::UniformOutOfRange(u));
    }
    let cum = table.as_slice();
    Ok(cum.iter().position(|&w| w >= u).unwrap_or(cum.len() - 1))
}

/// Reusable buffers so repeated sampling does not reallocate.
#[derive(Debug, Default)]
pub struct Scratch {
    uniforms: Vec<f64>,
    stack: Vec<dac::Frame>,
}

impl Scratch {
    pub fn new() -> Self {
        Self::default()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sampler {
    Dac,
    Ccf,
    Binary,
}

impl Sampler {
    pub const ALL: [Sampler; 3] = [Sampler::Dac, Sampler::Ccf, Sampler::Binary];

    /// Short tag used in CSV column names.
    pub fn tag(self) -> &'static str {
        match self {
            Sampler::Dac => "dc",
            Sampler::Ccf => "ccf",
            Sampler::Binary => "b",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Sampler::Dac => "dac",
            Sampler::Ccf => "ccf",
            Sampler::Binary => "binary",
        }
    }

    pub fn sample<S: UniformSource + ?Sized>(
        self,
        table: &WeightTable,
        n: usize,
        src: &mut S,
    ) -> SampleIndices {
        let mut out = Vec::with_capacity(n);
        self.sample_into(table, n, src, &mut Scratch::new(), &mut out, &mut NoStats);
        SampleIndices::from(out)
    }

    pub fn sample_with_stats<S: UniformSource + ?Sized>(
        self,
        table: &WeightTable,
        n: usize,
        src: &mut S,
    ) -> (SampleIndices, OpStats) {
        let mut out = Vec::with_capacity(n);
        let mut stats = OpStats::default();
        self.sample_into(table, n, src, &mut Scratch::new(), &mut out, &mut stats);
        (SampleIndices::from(out), stats)
    }

    /// Draw `n` indices into `out`, reusing `scratch`. Uniform generation is
    /// part of the call.
    pub fn sample_into<S: UniformSource + ?Sized, R: Recorder>(
        self,
        table: &WeightTable,
        n: usize,
        src: &mut S,
        scratch: &mut Scratch,
        out: &mut Vec<usize>,
        rec: &mut R,
    ) {
        match self {
            Sampler::Binary => binary::binary_into(table, n, src, out, rec),
            Sampler::Ccf => {
                sorted_uniforms_into(src, n, &mut scratch.uniforms);
                ccf::ccf_into(&scratch.uniforms, table, out, rec);
            }
            Sampler::Dac => {
                sorted_uniforms_into(src, n, &mut scratch.uniforms);
                dac::dac_into(&scratch.uniforms, table, out, &mut scratch.stack, rec);
            }
        }
    }
}

impl fmt::Display for Sampler {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Sampler {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dac" | "dc" => Ok(Sampler::Dac),
            "ccf" => Ok(Sampler::Ccf),
            "binary" | "b" => Ok(Sampler::Binary),
            other => Err(Error::InvalidParameter(format!(
                "unknown sampler {other:?}"
            ))),
        }
    }
}
