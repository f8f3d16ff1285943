//! Weight fields for tests and benchmarks.
//!
//! Besides two synthetic shapes this module reproduces the posterior weight
//! field of an ensemble Gaussian mixture filter update: a Gaussian prior
//! ensemble in 40 dimensions, a scalar range measurement, and a Laplace
//! likelihood approximated by a Gaussian kernel density estimate. Each
//! prior kernel paired with each likelihood kernel yields one weight, for
//! `M = N * N_Y` in total.

use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::rng::{RngStream, UniformSource};

/// Unnormalized, non-negative, finite weights.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RawWeights(Vec<f64>);

impl RawWeights {
    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

/// Unnormalized Dirichlet(1, ..., 1): `m` iid standard exponentials.
pub fn dirichlet_uniform<S: UniformSource + ?Sized>(m: usize, src: &mut S) -> RawWeights {
    RawWeights((0..m).map(|_| -src.uniform_open().ln()).collect())
}

/// `rho^j` for `j = 0..m`.
pub fn geometric_decay(m: usize, rho: f64) -> Result<RawWeights> {
    if !(rho > 0.0 && rho < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "geometric ratio {rho} outside (0, 1)"
        )));
    }
    let mut v = Vec::with_capacity(m);
    let mut w = 1.0;
    for _ in 0..m {
        v.push(w);
        w *= rho;
    }
    Ok(RawWeights(v))
}

/// Mean offset of the prior along one coordinate.
pub const PRIOR_SHIFTED_COORD: usize = 19;
pub const PRIOR_SHIFT: f64 = -3.5;
/// Off-diagonal entries of the tridiagonal prior covariance; the diagonal is 1.
pub const PRIOR_OFF_DIAGONAL: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScenarioParams {
    /// Prior ensemble size `N`.
    pub n_particles: usize,
    /// Likelihood samples `N_Y`.
    pub n_likelihood: usize,
    pub state_dim: usize,
    /// Observed range `y`.
    pub measurement: f64,
    /// Measurement variance `R`.
    pub meas_variance: f64,
}

impl ScenarioParams {
    pub fn new(n_particles: usize, n_likelihood: usize) -> Self {
        ScenarioParams {
            n_particles,
            n_likelihood,
            state_dim: 40,
            measurement: 1.0,
            meas_variance: 1e-2,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_particles == 0 || self.n_likelihood == 0 {
            return Err(Error::InvalidParameter(
                "scenario needs at least one particle and one likelihood sample".into(),
            ));
        }
        if self.state_dim == 0 {
            return Err(Error::InvalidParameter(
                "state dimension must be positive".into(),
            ));
        }
        if !(self.meas_variance > 0.0 && self.meas_variance.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "measurement variance {} must be positive",
                self.meas_variance
            )));
        }
        if !self.measurement.is_finite() {
            return Err(Error::InvalidParameter("measurement must be finite".into()));
        }
        Ok(())
    }

    /// Total weight count `N * N_Y`.
    pub fn components(&self) -> usize {
        self.n_particles * self.n_likelihood
    }
}

/// Lower bidiagonal Cholesky factor of the tridiagonal prior covariance:
/// `(diag, sub)` with `sub[0]` unused.
fn prior_factor(d: usize) -> (Vec<f64>, Vec<f64>) {
    let mut diag = vec![0.0; d];
    let mut sub = vec![0.0; d];
    diag[0] = 1.0;
    for k in 1..d {
        sub[k] = PRIOR_OFF_DIAGONAL / diag[k - 1];
        diag[k] = (1.0 - sub[k] * sub[k]).sqrt();
    }
    (diag, sub)
}

/// `n` prior particles, row-major `n x d`.
pub fn prior_particles(params: &ScenarioParams, stream: &mut RngStream) -> Vec<f64> {
    let d = params.state_dim;
    let (diag, sub) = prior_factor(d);
    let mut xs = Vec::with_capacity(params.n_particles * d);
    let mut xi = vec![0.0f64; d];
    for _ in 0..params.n_particles {
        for v in xi.iter_mut() {
            *v = StandardNormal.sample(stream);
        }
        for k in 0..d {
            let mut x = diag[k] * xi[k];
            if k > 0 {
                x += sub[k] * xi[k - 1];
            }
            if k == PRIOR_SHIFTED_COORD {
                x += PRIOR_SHIFT;
            }
            xs.push(x);
        }
    }
    xs
}

/// `N_Y` draws from the Laplace likelihood centred on the measurement with
/// variance `R`, by inverse CDF.
pub fn laplace_samples<S: UniformSource + ?Sized>(
    params: &ScenarioParams,
    src: &mut S,
) -> Vec<f64> {
    let scale = (params.meas_variance / 2.0).sqrt();
    (0..params.n_likelihood)
        .map(|_| {
            let v = src.uniform_open() - 0.5;
            params.measurement - scale * v.signum() * (1.0 - 2.0 * v.abs()).ln()
        })
        .collect()
}

/// Squared Silverman factor for a `d`-dimensional Gaussian kernel estimate
/// from `n` samples.
pub fn silverman_sq(d: usize, n: usize) -> f64 {
    let d = d as f64;
    (4.0 / ((d + 2.0) * n as f64)).powf(2.0 / (d + 4.0))
}

fn sample_variance(v: &[f64]) -> f64 {
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    v.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0)
}

/// Posterior component weights of the Gaussian-sum update, unnormalized.
///
/// Particle `i` and likelihood sample `j` give weight index `i * N_Y + j`,
/// proportional to `N(y_j; |x_i|, s_i)` where
/// `s_i = bY^2 Rt + bX^2 H_i S H_i^T`, `H_i = x_i^T / |x_i|`, `S` the
/// ensemble sample covariance, `Rt` the sample variance of the likelihood
/// draws (`R` when there is only one) and `bX^2`, `bY^2` the squared
/// Silverman factors. Weights are scaled so the largest is 1.
pub fn engmf_weights(params: &ScenarioParams, stream: &mut RngStream) -> Result<RawWeights> {
    params.validate()?;
    let n = params.n_particles;
    let ny = params.n_likelihood;
    let d = params.state_dim;

    let xs = prior_particles(params, stream);
    let ys = laplace_samples(params, stream);

    let mut mean = vec![0.0; d];
    for x in xs.chunks_exact(d) {
        for (m, v) in mean.iter_mut().zip(x) {
            *m += v;
        }
    }
    for m in mean.iter_mut() {
        *m /= n as f64;
    }
    // Upper triangle of the sample covariance, row-major d x d.
    let mut cov = vec![0.0; d * d];
    let mut centred = vec![0.0; d];
    for x in xs.chunks_exact(d) {
        for k in 0..d {
            centred[k] = x[k] - mean[k];
        }
        for a in 0..d {
            let ca = centred[a];
            let row = &mut cov[a * d..(a + 1) * d];
            for b in a..d {
                row[b] += ca * centred[b];
            }
        }
    }
    let denom = if n > 1 { (n - 1) as f64 } else { 1.0 };
    for a in 0..d {
        for b in a..d {
            let v = cov[a * d + b] / denom;
            cov[a * d + b] = v;
            cov[b * d + a] = v;
        }
    }

    let bx2 = silverman_sq(d, n);
    let by2 = silverman_sq(1, ny);
    let r_tilde = if ny > 1 {
        sample_variance(&ys)
    } else {
        params.meas_variance
    };
    let lik_var = by2 * r_tilde;

    let mut logw = Vec::with_capacity(n * ny);
    let mut max_log = f64::NEG_INFINITY;
    for x in xs.chunks_exact(d) {
        let norm_sq: f64 = x.iter().map(|v| v * v).sum();
        let h = norm_sq.sqrt();
        let proj = if norm_sq > 0.0 {
            let mut q = 0.0;
            for a in 0..d {
                let row = &cov[a * d..(a + 1) * d];
                let sa: f64 = row.iter().zip(x).map(|(c, v)| c * v).sum();
                q += x[a] * sa;
            }
            q / norm_sq
        } else {
            0.0
        };
        let s = lik_var + bx2 * proj;
        if !(s > 0.0 && s.is_finite()) {
            return Err(Error::ScenarioDegenerate(format!(
                "innovation variance {s} is not positive and finite"
            )));
        }
        let log_norm = -0.5 * (2.0 * std::f64::consts::PI * s).ln();
        let inv_two_s = 0.5 / s;
        for &y in &ys {
            let r = y - h;
            let lw = log_norm - r * r * inv_two_s;
            max_log = max_log.max(lw);
            logw.push(lw);
        }
    }
    if !max_log.is_finite() {
        return Err(Error::ScenarioDegenerate(format!(
            "largest log weight {max_log} is not finite"
        )));
    }
    for lw in logw.iter_mut() {
        *lw = (*lw - max_log).exp();
        if !lw.is_finite() {
            return Err(Error::ScenarioDegenerate("non-finite weight".into()));
        }
    }
    Ok(RawWeights(logw))
}
