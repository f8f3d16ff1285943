//! Goodness-of-fit and operation-count verification.

use std::fmt;

use mnsample::{dirichlet_uniform, RngStream, Sampler, WeightTable};
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::config::VerifyConfig;
use crate::Result;

/// Pearson statistic of observed counts against expected counts.
pub fn chi_square(observed: &[u64], expected: &[f64]) -> f64 {
    observed
        .iter()
        .zip(expected)
        .map(|(&o, &e)| {
            let d = o as f64 - e;
            d * d / e
        })
        .sum()
}

/// Upper `alpha` quantile of chi-square with `dof` degrees of freedom.
pub fn chi_square_critical(dof: usize, alpha: f64) -> f64 {
    ChiSquared::new(dof as f64)
        .expect("positive degrees of freedom")
        .inverse_cdf(1.0 - alpha)
}

#[derive(Debug, Clone, PartialEq)]
pub struct GofReport {
    pub sampler: Sampler,
    pub seed: u64,
    pub m: usize,
    pub n: usize,
    pub chi_square: f64,
    pub dof: usize,
    pub critical: f64,
    pub pass: bool,
}

#[derive(Debug, Clone)]
pub struct StatisticsReport {
    pub runs: Vec<GofReport>,
    pub min_pass_rate: f64,
}

impl StatisticsReport {
    pub fn pass_rate(&self, sampler: Sampler) -> f64 {
        let runs: Vec<_> = self.runs.iter().filter(|r| r.sampler == sampler).collect();
        runs.iter().filter(|r| r.pass).count() as f64 / runs.len().max(1) as f64
    }

    pub fn passed(&self) -> bool {
        Sampler::ALL
            .iter()
            .all(|&s| self.pass_rate(s) >= self.min_pass_rate)
    }
}

impl fmt::Display for StatisticsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for sampler in Sampler::ALL {
            let runs: Vec<_> = self.runs.iter().filter(|r| r.sampler == sampler).collect();
            let Some(first) = runs.first() else { continue };
            let worst = runs.iter().map(|r| r.chi_square).fold(0.0, f64::max);
            let rate = self.pass_rate(sampler);
            writeln!(
                f,
                "gof {:<6} m={} n={} runs={} dof={} critical={:.3} worst={:.3} pass_rate={:.2} {}",
                sampler.name(),
                first.m,
                first.n,
                runs.len(),
                first.dof,
                first.critical,
                worst,
                rate,
                if rate >= self.min_pass_rate {
                    "PASS"
                } else {
                    "FAIL"
                }
            )?;
        }
        Ok(())
    }
}

/// Chi-square goodness of fit for every sampler over seeded runs, each with
/// its own Dirichlet(1, ..., 1) table.
pub fn verify_statistics(config: &VerifyConfig) -> Result<StatisticsReport> {
    config.validate()?;
    let m = config.gof_components;
    let dof = m - 1;
    let critical = chi_square_critical(dof, config.gof_alpha);
    let mut runs = Vec::with_capacity(config.gof_runs * 3);
    for run in 0..config.gof_runs as u64 {
        let seed = config.seed.wrapping_add(run);
        let raw = dirichlet_uniform(m, &mut RngStream::substream(seed, 0));
        let table = WeightTable::build(raw.as_slice())?;
        let expected: Vec<f64> = (0..m)
            .map(|j| config.gof_draws as f64 * table.weight(j))
            .collect();
        for (slot, sampler) in Sampler::ALL.into_iter().enumerate() {
            let mut stream = RngStream::substream(seed, 1 + slot as u64);
            let counts = sampler
                .sample(&table, config.gof_draws, &mut stream)
                .counts(m);
            let stat = chi_square(&counts, &expected);
            runs.push(GofReport {
                sampler,
                seed,
                m,
                n: config.gof_draws,
                chi_square: stat,
                dof,
                critical,
                pass: stat < critical,
            });
        }
    }
    Ok(StatisticsReport {
        runs,
        min_pass_rate: config.gof_min_pass_rate,
    })
}

fn ceil_log2(x: usize) -> u64 {
    if x <= 1 {
        0
    } else {
        (usize::BITS - (x - 1).leading_zeros()) as u64
    }
}

/// Operation counts of one `(n, ratio)` cell over uniform weights.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexityCell {
    pub n: usize,
    pub ratio: usize,
    pub m: usize,
    pub trials: usize,
    pub ccf_max_comparisons: u64,
    /// `n + m - 1`.
    pub ccf_bound: u64,
    pub binary_max_probes: u64,
    pub dac_max_probes: u64,
    /// `n * (ceil(log2 m) + 1)`.
    pub probe_bound: u64,
    pub dac_max_depth: u32,
    /// `ceil(log2 n) + 1`.
    pub depth_bound: u32,
    pub ccf_mean_comparisons: f64,
    pub binary_mean_probes: f64,
    pub dac_mean_probes: f64,
    /// `4 n (1 + log2(m / n + 1))`.
    pub dac_mean_bound: f64,
}

impl ComplexityCell {
    pub fn violations(&self) -> Vec<String> {
        let mut v = Vec::new();
        let cell = format!("n={} ratio={}", self.n, self.ratio);
        if self.ccf_max_comparisons > self.ccf_bound {
            v.push(format!(
                "{cell}: ccf comparisons {} > {}",
                self.ccf_max_comparisons, self.ccf_bound
            ));
        }
        if self.binary_max_probes > self.probe_bound {
            v.push(format!(
                "{cell}: binary probes {} > {}",
                self.binary_max_probes, self.probe_bound
            ));
        }
        if self.dac_max_probes > self.probe_bound {
            v.push(format!(
                "{cell}: dac probes {} > {}",
                self.dac_max_probes, self.probe_bound
            ));
        }
        if self.dac_max_depth > self.depth_bound {
            v.push(format!(
                "{cell}: dac depth {} > {}",
                self.dac_max_depth, self.depth_bound
            ));
        }
        if self.dac_mean_probes > self.dac_mean_bound {
            v.push(format!(
                "{cell}: dac mean probes {:.1} > {:.1}",
                self.dac_mean_probes, self.dac_mean_bound
            ));
        }
        v
    }
}

#[derive(Debug, Clone)]
pub struct ComplexityReport {
    pub cells: Vec<ComplexityCell>,
}

impl ComplexityReport {
    pub fn violations(&self) -> Vec<String> {
        self.cells.iter().flat_map(|c| c.violations()).collect()
    }

    pub fn passed(&self) -> bool {
        self.violations().is_empty()
    }
}

impl fmt::Display for ComplexityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cells {
            writeln!(
                f,
                "ops n={} ratio={} m={} trials={} ccf_cmp={}/{} bin_probes={}/{} dac_probes={}/{} \
                 dac_depth={}/{} dac_mean={:.1}/{:.1} (per sample: ccf {:.2}, bin {:.2}, dac {:.2}) {}",
                c.n,
                c.ratio,
                c.m,
                c.trials,
                c.ccf_max_comparisons,
                c.ccf_bound,
                c.binary_max_probes,
                c.probe_bound,
                c.dac_max_probes,
                c.probe_bound,
                c.dac_max_depth,
                c.depth_bound,
                c.dac_mean_probes,
                c.dac_mean_bound,
                c.ccf_mean_comparisons / c.n as f64,
                c.binary_mean_probes / c.n as f64,
                c.dac_mean_probes / c.n as f64,
                if c.violations().is_empty() { "PASS" } else { "FAIL" }
            )?;
        }
        Ok(())
    }
}

/// Instrumented runs on uniform-weight tables checking the hard operation
/// bounds of each sampler and the average divide-and-conquer probe count.
pub fn verify_complexity(config: &VerifyConfig) -> Result<ComplexityReport> {
    config.validate()?;
    let mut cells = Vec::new();
    for &n in &config.complexity_ns {
        for &ratio in &config.complexity_ratios {
            cells.push(complexity_cell(
                n,
                ratio,
                config.complexity_trials,
                config.seed,
            )?);
        }
    }
    Ok(ComplexityReport { cells })
}

pub fn complexity_cell(n: usize, ratio: usize, trials: usize, seed: u64) -> Result<ComplexityCell> {
    let m = n * ratio;
    let table = WeightTable::build(&vec![1.0; m])?;
    let mut cell = ComplexityCell {
        n,
        ratio,
        m,
        trials,
        ccf_max_comparisons: 0,
        ccf_bound: (n + m - 1) as u64,
        binary_max_probes: 0,
        dac_max_probes: 0,
        probe_bound: n as u64 * (ceil_log2(m) + 1),
        dac_max_depth: 0,
        depth_bound: ceil_log2(n) as u32 + 1,
        ccf_mean_comparisons: 0.0,
        binary_mean_probes: 0.0,
        dac_mean_probes: 0.0,
        dac_mean_bound: 4.0 * n as f64 * (1.0 + (m as f64 / n as f64 + 1.0).log2()),
    };
    for trial in 0..trials as u64 {
        let id = ((n as u64) << 32) ^ ((ratio as u64) << 16) ^ trial;
        let stream = || RngStream::substream(seed, id);
        let (_, ccf) = Sampler::Ccf.sample_with_stats(&table, n, &mut stream());
        let (_, bin) = Sampler::Binary.sample_with_stats(&table, n, &mut stream());
        let (_, dac) = Sampler::Dac.sample_with_stats(&table, n, &mut stream());
        cell.ccf_max_comparisons = cell.ccf_max_comparisons.max(ccf.comparisons);
        cell.binary_max_probes = cell.binary_max_probes.max(bin.probes);
        cell.dac_max_probes = cell.dac_max_probes.max(dac.probes);
        cell.dac_max_depth = cell.dac_max_depth.max(dac.max_depth);
        cell.ccf_mean_comparisons += ccf.comparisons as f64;
        cell.binary_mean_probes += bin.probes as f64;
        cell.dac_mean_probes += dac.probes as f64;
    }
    let t = trials as f64;
    cell.ccf_mean_comparisons /= t;
    cell.binary_mean_probes /= t;
    cell.dac_mean_probes /= t;
    Ok(cell)
}
