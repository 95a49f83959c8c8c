//! Stationary degree laws, the single-node transition matrix, and the
//! divergences used to compare distributions.

use alloc::vec;
use alloc::vec::Vec;

use crate::distribution::DegreeDistribution;
use crate::error::{Error, Result};
use crate::params::ModelParams;

/// Single-node degree transition matrix over degrees `1..n`, stored as its
/// three diagonals. Row `i` is degree `i + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionMatrix {
    lower: Vec<f64>,
    diag: Vec<f64>,
    upper: Vec<f64>,
}

impl TransitionMatrix {
    /// Interior rows are `((1-S)/2, S, (1-S)/2)`; the end rows fold the
    /// blocked move onto the diagonal, `(S + 1)/2`.
    pub fn from_params(p: &ModelParams) -> Result<Self> {
        let size = p.n() - 1;
        let mut lower = vec![0.0; size];
        let mut diag = vec![0.0; size];
        let mut upper = vec![0.0; size];
        for i in 0..size {
            let k = i + 1;
            let s = p.stay_probability(k);
            let off = (1.0 - s) / 2.0;
            if !(off > 0.0) {
                return Err(Error::NotErgodic { degree: k });
            }
            diag[i] = s;
            if i == 0 {
                diag[i] += off;
            } else {
                lower[i] = off;
            }
            if i + 1 == size {
                diag[i] += off;
            } else {
                upper[i] = off;
            }
        }
        Ok(Self { lower, diag, upper })
    }

    pub fn size(&self) -> usize {
        self.diag.len()
    }

    /// Entry at row `i`, column `j` (zero-based).
    pub fn get(&self, i: usize, j: usize) -> f64 {
        if i == j {
            self.diag[i]
        } else if j + 1 == i {
            self.lower[i]
        } else if i + 1 == j {
            self.upper[i]
        } else {
            0.0
        }
    }

    pub fn row_sum(&self, i: usize) -> f64 {
        self.lower[i] + self.diag[i] + self.upper[i]
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let n = self.size();
        (0..n).map(|i| (0..n).map(|j| self.get(i, j)).collect()).collect()
    }

    /// `x P` for a row vector `x`.
    pub fn left_multiply(&self, x: &[f64]) -> Vec<f64> {
        let n = self.size();
        let mut y = vec![0.0; n];
        for i in 0..n {
            y[i] += x[i] * self.diag[i];
            if i > 0 {
                y[i - 1] += x[i] * self.lower[i];
            }
            if i + 1 < n {
                y[i + 1] += x[i] * self.upper[i];
            }
        }
        y
    }
}

/// Builds the transition matrix for discrete-time parameters.
pub fn transition_matrix(p: &ModelParams) -> Result<TransitionMatrix> {
    TransitionMatrix::from_params(p)
}

fn with_isolate_slot(mass_from_one: Vec<f64>) -> DegreeDistribution {
    let mut weights = Vec::with_capacity(mass_from_one.len() + 1);
    weights.push(0.0);
    weights.extend(mass_from_one);
    DegreeDistribution::from_weights(weights).expect("positive weights")
}

/// `π_k = π₁ ((c + 1) / (k + c))^a` on `1..n`, normalised. The same law holds
/// in both time models.
pub fn stationary_closed_form(p: &ModelParams) -> DegreeDistribution {
    let c = p.c();
    let weights = (1..p.n()).map(|k| libm::pow((c + 1.0) / (k as f64 + c), p.a())).collect();
    with_isolate_slot(weights)
}

/// Continuous-time law from the balance recursion `π_k λ(k) = π₁ λ(1)`.
pub fn stationary_balance_continuous(p: &ModelParams) -> DegreeDistribution {
    let mut weights = Vec::with_capacity(p.n() - 1);
    let mut pi = 1.0;
    weights.push(pi);
    for k in 2..p.n() {
        // π_k = π_{k-1} λ(k-1) / λ(k)
        pi = pi * p.rate(k - 1) / p.rate(k);
        weights.push(pi);
    }
    with_isolate_slot(weights)
}

/// Tolerance and caps for [`stationary_numeric`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerIteration {
    /// Stop once successive iterates differ by less than this in L1.
    pub tolerance: f64,
    /// Cap on the number of chain steps covered.
    pub max_steps: u64,
}

impl Default for PowerIteration {
    fn default() -> Self {
        Self { tolerance: 1e-12, max_steps: 1 << 62 }
    }
}

/// Left fixed vector of `P` by power iteration from the uniform vector.
///
/// Iterates `x ← x Q` while squaring `Q` in between, so iterate `j` has seen
/// `2^j - 1` steps. Chains with rates near zero mix over millions of steps;
/// squaring reaches that after a few dozen dense products. When the diagonal
/// has entries below 1/2 the chain is made lazy, `(P + θI)/(1 + θ)`, which has
/// the same fixed vector and keeps the spectrum away from -1.
pub fn stationary_numeric(matrix: &TransitionMatrix) -> Result<DegreeDistribution> {
    stationary_numeric_with(matrix, PowerIteration::default())
}

pub fn stationary_numeric_with(matrix: &TransitionMatrix, opts: PowerIteration) -> Result<DegreeDistribution> {
    let n = matrix.size();
    let min_diag = matrix.diag.iter().copied().fold(f64::INFINITY, f64::min);
    let theta = (0.5 - min_diag).max(0.0);
    let mut q: Vec<f64> = vec![0.0; n * n];
    for i in 0..n {
        for j in i.saturating_sub(1)..(i + 2).min(n) {
            let mut v = matrix.get(i, j);
            if i == j {
                v += theta;
            }
            q[i * n + j] = v / (1.0 + theta);
        }
    }
    let mut x = vec![1.0 / n as f64; n];
    let mut steps: u64 = 0;
    let mut stride: u64 = 1;
    let mut residual = f64::INFINITY;
    let mut scratch = vec![0.0; n * n];
    while steps < opts.max_steps {
        let mut y = vec![0.0; n];
        for i in 0..n {
            let xi = x[i];
            if xi != 0.0 {
                let row = &q[i * n..(i + 1) * n];
                for (yj, qij) in y.iter_mut().zip(row) {
                    *yj += xi * qij;
                }
            }
        }
        let total: f64 = y.iter().sum();
        y.iter_mut().for_each(|v| *v /= total);
        residual = x.iter().zip(&y).map(|(a, b)| (a - b).abs()).sum();
        x = y;
        steps = steps.saturating_add(stride);
        if residual < opts.tolerance {
            return Ok(with_isolate_slot(x));
        }
        square_into(&q, &mut scratch, n);
        core::mem::swap(&mut q, &mut scratch);
        stride = stride.saturating_mul(2);
    }
    Err(Error::NoConvergence { iterations: steps, residual })
}

fn square_into(q: &[f64], out: &mut [f64], n: usize) {
    assert!(q.len() == n * n && out.len() == n * n);
    // SAFETY: both buffers hold `n * n` row-major values and do not alias.
    unsafe {
        matrixmultiply::dgemm(
            n,
            n,
            n,
            1.0,
            q.as_ptr(),
            n as isize,
            1,
            q.as_ptr(),
            n as isize,
            1,
            0.0,
            out.as_mut_ptr(),
            n as isize,
            1,
        );
    }
    // Keep rows stochastic against rounding drift.
    for i in 0..n {
        let row = &mut out[i * n..(i + 1) * n];
        let s: f64 = row.iter().sum();
        row.iter_mut().for_each(|v| *v /= s);
    }
}

/// Plain one-step power iteration `x ← x P`, capped at `max_iterations`.
/// Practical only for fast-mixing chains.
pub fn stationary_power_plain(matrix: &TransitionMatrix, tolerance: f64, max_iterations: u64) -> Result<DegreeDistribution> {
    let n = matrix.size();
    let mut x = vec![1.0 / n as f64; n];
    let mut residual = f64::INFINITY;
    for _ in 0..max_iterations {
        let y = matrix.left_multiply(&x);
        residual = x.iter().zip(&y).map(|(a, b)| (a - b).abs()).sum();
        x = y;
        if residual < tolerance {
            return Ok(with_isolate_slot(x));
        }
    }
    Err(Error::NoConvergence { iterations: max_iterations, residual })
}

/// `Σ p_x ln(p_x / q_x)` over the union of supports, in nats.
pub fn kl_divergence(p: &DegreeDistribution, q: &DegreeDistribution) -> Result<f64> {
    let len = p.len().max(q.len());
    let mut total = 0.0;
    for k in 0..len {
        let (pk, qk) = (p.get(k), q.get(k));
        if pk > 0.0 {
            if qk <= 0.0 {
                return Err(Error::UnboundedDivergence { degree: k });
            }
            total += pk * libm::log(pk / qk);
        }
    }
    Ok(total.max(0.0))
}

/// Jensen-Shannon divergence in bits, so it lies in `[0, 1]`.
pub fn js_divergence(p: &DegreeDistribution, q: &DegreeDistribution) -> f64 {
    let len = p.len().max(q.len());
    let mut total = 0.0;
    for k in 0..len {
        let (pk, qk) = (p.get(k), q.get(k));
        let m = 0.5 * (pk + qk);
        if pk > 0.0 {
            total += 0.5 * pk * libm::log2(pk / m);
        }
        if qk > 0.0 {
            total += 0.5 * qk * libm::log2(qk / m);
        }
    }
    total.clamp(0.0, 1.0)
}

/// Additive smoothing applied to empirical histograms before KL.
pub const SMOOTHING: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DivergenceReport {
    pub kl: f64,
    pub js: f64,
}

/// Compares an empirical distribution with a reference on degrees `1..n`.
///
/// Both sides are smoothed by [`SMOOTHING`] per support point and
/// renormalised, which keeps KL finite for empty high-degree bins.
pub fn compare(empirical: &DegreeDistribution, reference: &DegreeDistribution, n: usize) -> DivergenceReport {
    let len = n.max(2);
    let p = empirical.smoothed(len, SMOOTHING);
    let q = reference.smoothed(len, SMOOTHING);
    DivergenceReport {
        kl: kl_divergence(&p, &q).expect("smoothed reference has full support"),
        js: js_divergence(&p, &q),
    }
}

/// Least-squares slope of `ln π_k` against `ln(k + c)`, each bin weighted by
/// its mass. Bins with zero mass (and degree 0) are skipped.
pub fn log_log_slope(dist: &DegreeDistribution, c: f64) -> Option<f64> {
    let pts: Vec<(f64, f64, f64)> = dist
        .support()
        .filter(|(k, _)| *k >= 1 && *k as f64 + c > 0.0)
        .map(|(k, p)| (libm::log(k as f64 + c), libm::log(p), p))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let w: f64 = pts.iter().map(|p| p.2).sum();
    let mx = pts.iter().map(|p| p.2 * p.0).sum::<f64>() / w;
    let my = pts.iter().map(|p| p.2 * p.1).sum::<f64>() / w;
    let sxy: f64 = pts.iter().map(|p| p.2 * (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| p.2 * (p.0 - mx) * (p.0 - mx)).sum();
    if sxx <= 0.0 {
        None
    } else {
        Some(sxy / sxx)
    }
}
