//! Degree histograms (raw counts) and normalised degree distributions.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Raw per-degree counts, indexed by degree.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DegreeCounts {
    counts: Vec<u64>,
}

impl DegreeCounts {
    pub fn zeros(len: usize) -> Self {
        Self { counts: vec![0; len] }
    }

    pub fn from_vec(counts: Vec<u64>) -> Self {
        Self { counts }
    }

    pub fn add(&mut self, degree: usize, count: u64) {
        if degree >= self.counts.len() {
            self.counts.resize(degree + 1, 0);
        }
        self.counts[degree] += count;
    }

    /// Element-wise accumulation; grows to the longer support.
    pub fn merge(&mut self, other: &DegreeCounts) {
        if other.counts.len() > self.counts.len() {
            self.counts.resize(other.counts.len(), 0);
        }
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
    }

    pub fn get(&self, degree: usize) -> u64 {
        self.counts.get(degree).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.counts
    }
}

/// Probability mass per degree, indexed by degree.
///
/// The vector length fixes the support: a distribution for an `n`-node
/// network has length `n`, covering degrees `0..=n-1`. Stationary laws put no
/// mass on degree 0.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeDistribution {
    mass: Vec<f64>,
}

const MASS_TOLERANCE: f64 = 1e-9;

impl DegreeDistribution {
    /// Wraps masses that are non-negative and sum to one.
    pub fn new(mass: Vec<f64>) -> Result<Self> {
        if mass.iter().any(|m| !m.is_finite() || *m < 0.0) {
            return Err(Error::param("mass", "masses must be finite and non-negative"));
        }
        let total: f64 = mass.iter().sum();
        if (total - 1.0).abs() > MASS_TOLERANCE {
            return Err(Error::param("mass", alloc::format!("masses sum to {total}, not 1")));
        }
        Ok(Self { mass })
    }

    /// Normalises arbitrary non-negative weights.
    pub fn from_weights(weights: Vec<f64>) -> Result<Self> {
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::param("weights", "weights must be finite and non-negative"));
        }
        let total: f64 = weights.iter().sum();
        if total <= 0.0 {
            return Err(Error::DegenerateDistribution("total weight is zero"));
        }
        Ok(Self { mass: weights.into_iter().map(|w| w / total).collect() })
    }

    pub fn from_counts(counts: &DegreeCounts) -> Result<Self> {
        Self::from_weights(counts.as_slice().iter().map(|&c| c as f64).collect())
    }

    #[inline]
    pub fn get(&self, degree: usize) -> f64 {
        self.mass.get(degree).copied().unwrap_or(0.0)
    }

    pub fn len(&self) -> usize {
        self.mass.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mass.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.mass
    }

    pub fn mean(&self) -> f64 {
        self.mass.iter().enumerate().map(|(k, p)| k as f64 * p).sum()
    }

    /// Degrees carrying positive mass.
    pub fn support(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.mass.iter().copied().enumerate().filter(|(_, p)| *p > 0.0)
    }

    /// Restricts to degrees `1..len`, adds `epsilon` to every point and
    /// renormalises. `len` must be at least 2.
    pub fn smoothed(&self, len: usize, epsilon: f64) -> Self {
        let mut mass = vec![0.0; len];
        for (k, m) in mass.iter_mut().enumerate().skip(1) {
            *m = self.get(k) + epsilon;
        }
        let total: f64 = mass.iter().sum();
        mass.iter_mut().for_each(|m| *m /= total);
        Self { mass }
    }

    /// Drops the degree-0 mass and renormalises over degrees ≥ 1.
    pub fn without_isolates(&self) -> Result<Self> {
        let mut weights = self.mass.clone();
        if let Some(m) = weights.first_mut() {
            *m = 0.0;
        }
        Self::from_weights(weights)
    }
}
