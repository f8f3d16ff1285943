//! Cumulative weight tables and the range-restricted upper-bound search.

use crate::error::{Error, Result};
use crate::samplers::{NoStats, Recorder};

/// Largest tolerated drift of the normalized total before it is pinned to 1.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-9;

/// Normalized cumulative weights `W_1..W_M` of a discrete distribution.
///
/// Non-decreasing, finite, non-negative, and the last entry is exactly 1
/// so that every `u <= 1` falls in some bucket.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightTable {
    cum: Vec<f64>,
}

impl WeightTable {
    /// Normalize raw weights and accumulate them in one pass.
    pub fn build(raw: &[f64]) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::EmptyDistribution);
        }
        let mut cum = Vec::with_capacity(raw.len());
        let mut acc = 0.0f64;
        for (index, &value) in raw.iter().enumerate() {
            if !value.is_finite() || value < 0.0 {
                return Err(Error::InvalidWeight { index, value });
            }
            acc += value;
            cum.push(acc);
        }
        if acc == 0.0 {
            return Err(Error::DegenerateDistribution);
        }
        let scale = 1.0 / acc;
        for c in cum.iter_mut() {
            *c *= scale;
        }
        Self::pin_total(cum)
    }

    /// Wrap an already cumulative array, validating it.
    pub fn from_cumulative(cum: Vec<f64>) -> Result<Self> {
        if cum.is_empty() {
            return Err(Error::EmptyDistribution);
        }
        let mut prev = 0.0;
        for (index, &value) in cum.iter().enumerate() {
            if !value.is_finite() || value < 0.0 {
                return Err(Error::InvalidWeight { index, value });
            }
            if value < prev {
                return Err(Error::NotMonotone { index });
            }
            prev = value;
        }
        Self::pin_total(cum)
    }

    fn pin_total(mut cum: Vec<f64>) -> Result<Self> {
        let last = cum.len() - 1;
        let total = cum[last];
        if !total.is_finite() || (total - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(Error::AccumulationOverflow { total });
        }
        cum[last] = 1.0;
        // The pinned total may undercut a predecessor that rounded above 1.
        for c in cum[..last].iter_mut().rev() {
            if *c <= 1.0 {
                break;
            }
            *c = 1.0;
        }
        Ok(WeightTable { cum })
    }

    pub fn len(&self) -> usize {
        self.cum.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cum.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.cum
    }

    /// Normalized weight of component `j`.
    pub fn weight(&self, j: usize) -> f64 {
        match j {
            0 => self.cum[0],
            _ => self.cum[j] - self.cum[j - 1],
        }
    }

    /// Smallest `j` in `lo..=hi` with `cum[j] >= x`, or `hi` when no entry
    /// in range qualifies.
    pub fn upper_bound(&self, lo: usize, hi: usize, x: f64) -> Result<usize> {
        if lo > hi {
            return Err(Error::EmptyRange { lo, hi });
        }
        if hi >= self.cum.len() {
            return Err(Error::OutOfBounds {
                index: hi,
                len: self.cum.len(),
            });
        }
        Ok(self.search(lo, hi, x, &mut NoStats))
    }

    #[inline]
    pub(crate) fn search<R: Recorder>(&self, lo: usize, hi: usize, x: f64, rec: &mut R) -> usize {
        upper_bound_in(&self.cum, lo, hi, x, rec)
    }
}

#[inline]
pub(crate) fn upper_bound_in<R: Recorder>(
    cum: &[f64],
    lo: usize,
    hi: usize,
    x: f64,
    rec: &mut R,
) -> usize {
    let (mut a, mut b) = (lo, hi);
    while a != b {
        let m = a + (b - a) / 2;
        rec.probe();
        if cum[m] < x {
            a = m + 1;
        } else {
            b = m;
        }
    }
    a
}
