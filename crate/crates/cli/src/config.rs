use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use mnsample::{
    dirichlet_uniform, engmf_weights, geometric_decay, RawWeights, RngStream, ScenarioParams,
};

use crate::{HarnessError, Result};

/// Where benchmark weight fields come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightSource {
    Dirichlet,
    Geometric,
    Engmf,
}

/// Decay ratio used by the geometric weight source.
pub const GEOMETRIC_RHO: f64 = 0.999;

impl WeightSource {
    /// A weight field of `n * ratio` components. For the filter scenario the
    /// ratio is the number of likelihood samples.
    pub fn generate(self, n: usize, ratio: usize, stream: &mut RngStream) -> Result<RawWeights> {
        let m = n * ratio;
        Ok(match self {
            WeightSource::Dirichlet => dirichlet_uniform(m, stream),
            WeightSource::Geometric => geometric_decay(m, GEOMETRIC_RHO)?,
            WeightSource::Engmf => engmf_weights(&ScenarioParams::new(n, ratio), stream)?,
        })
    }
}

impl FromStr for WeightSource {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dirichlet" => Ok(WeightSource::Dirichlet),
            "geometric" => Ok(WeightSource::Geometric),
            "engmf" => Ok(WeightSource::Engmf),
            other => Err(HarnessError::Config(format!(
                "unknown weight source {other:?}"
            ))),
        }
    }
}

impl fmt::Display for WeightSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WeightSource::Dirichlet => "dirichlet",
            WeightSource::Geometric => "geometric",
            WeightSource::Engmf => "engmf",
        })
    }
}

/// A timing sweep over logarithmically spaced sample counts and table
/// size ratios.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub n_min: usize,
    pub n_max: usize,
    pub n_points: usize,
    /// Table size multipliers `M / N`.
    pub ratios: Vec<usize>,
    pub trials: usize,
    /// Leading trials discarded from the mean.
    pub warmup: usize,
    pub seed: u64,
    pub weight_source: WeightSource,
    pub output_path: Option<PathBuf>,
    /// Also run a separate, untimed pass that counts probes.
    pub instrument: bool,
    /// Cells whose table would exceed this many entries are skipped.
    pub max_table_len: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            n_min: 100,
            n_max: 10_000,
            n_points: 21,
            ratios: vec![1, 100, 1000],
            trials: 1000,
            warmup: 0,
            seed: 0,
            weight_source: WeightSource::Engmf,
            output_path: None,
            instrument: false,
            max_table_len: 1 << 27,
        }
    }
}

impl BenchConfig {
    /// Short preset for CI: 20 trials over 5 sample counts.
    pub fn quick() -> Self {
        BenchConfig {
            trials: 20,
            n_points: 5,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: &str| Err(HarnessError::Config(msg.to_string()));
        if self.n_min == 0 {
            return fail("n_min must be at least 1");
        }
        if self.n_max < self.n_min {
            return fail("n_max must not be below n_min");
        }
        if self.n_points == 0 {
            return fail("n_points must be at least 1");
        }
        if self.trials == 0 {
            return fail("trials must be at least 1");
        }
        if self.ratios.is_empty() || self.ratios.contains(&0) {
            return fail("ratios must be a non-empty list of positive integers");
        }
        Ok(())
    }

    /// Sample counts spaced evenly in log between `n_min` and `n_max`.
    pub fn n_values(&self) -> Vec<usize> {
        if self.n_points == 1 {
            return vec![self.n_min];
        }
        let (lo, hi) = ((self.n_min as f64).ln(), (self.n_max as f64).ln());
        let steps = (self.n_points - 1) as f64;
        (0..self.n_points)
            .map(|k| (lo + (hi - lo) * k as f64 / steps).exp().round() as usize)
            .map(|n| n.clamp(self.n_min, self.n_max))
            .collect()
    }
}

/// Settings for the goodness-of-fit and operation-count checks.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Independent seeded goodness-of-fit runs per sampler.
    pub gof_runs: usize,
    pub gof_draws: usize,
    pub gof_components: usize,
    /// Significance level of each goodness-of-fit test.
    pub gof_alpha: f64,
    /// Smallest acceptable fraction of passing runs.
    pub gof_min_pass_rate: f64,
    pub complexity_ns: Vec<usize>,
    pub complexity_ratios: Vec<usize>,
    pub complexity_trials: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 0,
            gof_runs: 100,
            gof_draws: 1_000_000,
            gof_components: 16,
            gof_alpha: 0.001,
            gof_min_pass_rate: 0.98,
            complexity_ns: vec![100, 1000],
            complexity_ratios: vec![1, 100, 1000],
            complexity_trials: 50,
        }
    }
}

impl VerifyConfig {
    pub fn quick() -> Self {
        VerifyConfig {
            gof_runs: 10,
            complexity_trials: 10,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.gof_runs == 0 || self.gof_draws == 0 || self.gof_components < 2 {
            return Err(HarnessError::Config(
                "goodness-of-fit needs at least one run, one draw and two components".into(),
            ));
        }
        if !(self.gof_alpha > 0.0 && self.gof_alpha < 1.0) {
            return Err(HarnessError::Config(
                "significance level must be in (0, 1)".into(),
            ));
        }
        if self.complexity_trials == 0
            || self.complexity_ns.contains(&0)
            || self.complexity_ratios.contains(&0)
        {
            return Err(HarnessError::Config(
                "complexity cells need positive sizes and at least one trial".into(),
            ));
        }
        Ok(())
    }
}
