use alloc::vec::Vec;

use super::simplex::{nelder_mead, SimplexOptions};
use crate::distribution::DegreeDistribution;
use crate::error::{Error, Result};

/// Exponents below this are reported as a degenerate (flat) fit.
pub const DEGENERATE_A: f64 = 1e-3;

const A_MIN: f64 = 1e-6;
const A_MAX: f64 = 10.0;
const C_MIN: f64 = -0.9;
const C_MAX: f64 = 50.0;
const GRID: usize = 41;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitResult {
    pub a: f64,
    pub c: f64,
    /// Model mass at degree 1 implied by normalisation over `1..n-1`.
    pub pi1: f64,
    /// Weighted sum of squared log errors at the optimum.
    pub residual: f64,
    /// The fitted exponent sits at the flat boundary.
    pub degenerate: bool,
}

struct Target {
    /// `(k, ln mass, weight)` over the observed support with `k >= 1`.
    points: Vec<(f64, f64, f64)>,
    max_degree: usize,
}

impl Target {
    fn new(dist: &DegreeDistribution) -> Result<Self> {
        let support: Vec<(usize, f64)> = dist.support().filter(|&(k, _)| k >= 1).collect();
        if support.len() < 3 {
            return Err(Error::DegenerateDistribution("fitting needs at least three non-zero degrees"));
        }
        let total: f64 = support.iter().map(|s| s.1).sum();
        let points = support.iter().map(|&(k, m)| (k as f64, libm::log(m), m / total)).collect();
        Ok(Self { points, max_degree: dist.len().saturating_sub(1).max(support[support.len() - 1].0) })
    }

    /// `ln Σ_{j=1}^{n-1} (j + c)^(-a)` by a shifted sum.
    fn log_norm(&self, a: f64, c: f64) -> f64 {
        let top = -a * libm::log(1.0 + c);
        let sum: f64 = (1..=self.max_degree).map(|j| libm::exp(-a * libm::log(j as f64 + c) - top)).sum();
        top + libm::log(sum)
    }

    fn residual(&self, a: f64, c: f64) -> f64 {
        let z = self.log_norm(a, c);
        self.points
            .iter()
            .map(|&(k, lm, w)| {
                let e = lm - (-a * libm::log(k + c) - z);
                w * e * e
            })
            .sum()
    }

    fn pi1(&self, a: f64, c: f64) -> f64 {
        libm::exp(-a * libm::log(1.0 + c) - self.log_norm(a, c))
    }
}

fn decode(p: [f64; 2]) -> (f64, f64, f64) {
    let x = p[0].clamp(libm::log(A_MIN), libm::log(A_MAX));
    let y = p[1].clamp(libm::log(1.0 + C_MIN), libm::log(1.0 + C_MAX));
    let penalty = (p[0] - x) * (p[0] - x) + (p[1] - y) * (p[1] - y);
    (libm::exp(x), libm::exp(y) - 1.0, penalty)
}

/// Weighted log-space residual of the stationary law with `(a, c)` against
/// `dist` (the same objective [`fit_params`] minimises).
pub fn model_residual(dist: &DegreeDistribution, a: f64, c: f64) -> Result<f64> {
    Ok(Target::new(dist)?.residual(a, c))
}

/// Fits `(a, c)` of the stationary degree law to an observed distribution.
///
/// Minimises mass-weighted squared log errors with the degree-1 mass fixed by
/// normalisation: a coarse logarithmic grid, then simplex refinement in
/// `(ln a, ln(1 + c))`.
pub fn fit_params(dist: &DegreeDistribution) -> Result<FitResult> {
    let target = Target::new(dist)?;
    let objective = |p: [f64; 2]| {
        let (a, c, penalty) = decode(p);
        target.residual(a, c) + penalty
    };

    let lx = (libm::log(1e-3), libm::log(A_MAX));
    let ly = (libm::log(1.0 + C_MIN + 1e-3), libm::log(1.0 + C_MAX));
    let step = |lo: f64, hi: f64, i: usize| lo + (hi - lo) * i as f64 / (GRID - 1) as f64;
    let mut grid: Vec<([f64; 2], f64)> = Vec::with_capacity(GRID * GRID);
    for i in 0..GRID {
        for j in 0..GRID {
            let p = [step(lx.0, lx.1, i), step(ly.0, ly.1, j)];
            grid.push((p, objective(p)));
        }
    }
    grid.sort_by(|a, b| a.1.total_cmp(&b.1));

    let mut best = grid[0];
    for &(start, _) in grid.iter().take(3) {
        let mut point = start;
        let mut value = objective(point);
        for restart in 0..6 {
            let opts = SimplexOptions { initial_step: 0.1 / (1 + restart) as f64, ..SimplexOptions::default() };
            let (p, v) = nelder_mead(objective, point, &opts);
            let improved = value - v;
            point = p;
            value = v;
            if improved <= 1e-18 * (1.0 + value) && restart > 0 {
                break;
            }
        }
        if value < best.1 {
            best = (point, value);
        }
    }

    let (a, c, _) = decode(best.0);
    Ok(FitResult { a, c, pi1: target.pi1(a, c), residual: target.residual(a, c), degenerate: a < DEGENERATE_A })
}
