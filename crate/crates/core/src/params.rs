use core::fmt;

use crate::error::{Error, Result};

/// Time model of the degree dynamics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Discrete,
    Continuous,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Discrete => "discrete",
            Mode::Continuous => "continuous",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl core::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "discrete" => Ok(Mode::Discrete),
            "continuous" => Ok(Mode::Continuous),
            _ => Err(Error::param("mode", alloc::format!("expected `discrete` or `continuous`, got `{s}`"))),
        }
    }
}

/// Network size `n`, nonlinearity exponent `a` and smoothing offset `c`.
///
/// Both time models share the instability `λ(k) = ((k + c) / n)^a`: it is the
/// Poisson rate in continuous time and `1 - S(k)` in discrete time. The only
/// requirement is `λ(k) > 0` on `1..n`, which makes either chain ergodic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    n: usize,
    a: f64,
    c: f64,
    mode: Mode,
}

impl ModelParams {
    pub fn new(n: usize, a: f64, c: f64, mode: Mode) -> Result<Self> {
        if n < 2 {
            return Err(Error::param("n", alloc::format!("need at least 2 nodes, got {n}")));
        }
        if !a.is_finite() || a < 0.0 {
            return Err(Error::param("a", alloc::format!("exponent must be finite and non-negative, got {a}")));
        }
        if !c.is_finite() {
            return Err(Error::param("c", "offset must be finite"));
        }
        let p = Self { n, a, c, mode };
        // λ is monotone in k, so checking both ends covers the whole range.
        for k in [1, n - 1] {
            let l = p.rate(k);
            if !(l > 0.0) || !l.is_finite() {
                return Err(Error::param(
                    "c",
                    alloc::format!("fluctuation rate at degree {k} is {l}; it must be positive (requires c > -1)"),
                ));
            }
        }
        Ok(p)
    }

    pub fn discrete(n: usize, a: f64, c: f64) -> Result<Self> {
        Self::new(n, a, c, Mode::Discrete)
    }

    pub fn continuous(n: usize, a: f64, c: f64) -> Result<Self> {
        Self::new(n, a, c, Mode::Continuous)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn with_mode(self, mode: Mode) -> Self {
        Self { mode, ..self }
    }

    /// Largest admissible degree, `n - 1`.
    pub fn max_degree(&self) -> usize {
        self.n - 1
    }

    /// `λ(k) = ((k + c) / n)^a`; zero when `k + c ≤ 0`.
    #[inline]
    pub fn rate(&self, k: usize) -> f64 {
        let base = (k as f64 + self.c) / self.n as f64;
        if self.a == 0.0 {
            1.0
        } else if base <= 0.0 {
            0.0
        } else {
            libm::pow(base, self.a)
        }
    }

    /// `S(k) = 1 - ((k + c) / n)^a`.
    ///
    /// Degrees with `k + c > n` give `S(k) < 0`; such degrees are only
    /// reachable when `c > 1` and are used unclamped, as the sweep thresholds
    /// are defined directly in terms of `S`.
    #[inline]
    pub fn stay_probability(&self, k: usize) -> f64 {
        1.0 - self.rate(k)
    }

    /// Whether `S(k)` lies in `[0, 1)` on the whole range `1..n`.
    pub fn stay_is_probability(&self) -> bool {
        self.stay_probability(self.max_degree()) >= 0.0
    }
}
