//! Parameter arithmetic shared by the coloring algorithms.
//!
//! All logarithms are base 2. Values within `1e-9` of an integer are snapped
//! to it before rounding, so `5.0 * 14.0` rounds up to 70 and not 71.

use thiserror::Error;

/// `66 / log2(e) = 66 ln 2`, the constant under which the high-probability
/// bounds hold.
pub const DEFAULT_C: f64 = 66.0 * std::f64::consts::LN_2;

const SNAP: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum ParamError {
    #[error("{name} must be positive and finite (got {value})")]
    NotPositive { name: &'static str, value: f64 },
    #[error("need at least 2 vertices (got {n})")]
    TooFewVertices { n: usize },
}

pub(crate) fn positive(name: &'static str, value: f64) -> Result<f64, ParamError> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(ParamError::NotPositive { name, value })
    }
}

pub fn ceil_snapped(x: f64) -> u64 {
    let r = x.round();
    if (x - r).abs() < SNAP {
        r as u64
    } else {
        x.ceil() as u64
    }
}

pub fn floor_snapped(x: f64) -> u64 {
    let r = x.round();
    if (x - r).abs() < SNAP {
        r as u64
    } else {
        x.floor() as u64
    }
}

fn log2_n(n: usize) -> Result<f64, ParamError> {
    if n < 2 {
        return Err(ParamError::TooFewVertices { n });
    }
    Ok((n as f64).log2())
}

/// Class count and per-class palette size for the one-pass Δ-coloring.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaParams {
    pub n: usize,
    pub delta: u32,
    pub epsilon: f64,
    pub c: f64,
    /// `ceil(eps * Delta / (2 c log n))`, at least 1.
    pub ell: u32,
    /// `ceil((1 + 2/eps) c log n) + 1`.
    pub r: u32,
}

impl DeltaParams {
    pub fn new(n: usize, delta: u32, epsilon: f64, c: f64) -> Result<Self, ParamError> {
        let epsilon = positive("epsilon", epsilon)?;
        let c = positive("c", c)?;
        let log = log2_n(n)?;
        let ell = ceil_snapped(epsilon * delta as f64 / (2.0 * c * log)).max(1) as u32;
        let r = ceil_snapped((1.0 + 2.0 / epsilon) * c * log) as u32 + 1;
        Ok(DeltaParams {
            n,
            delta,
            epsilon,
            c,
            ell,
            r,
        })
    }

    pub fn log_n(&self) -> f64 {
        (self.n as f64).log2()
    }

    /// Total palette `ell * r`; an upper bound on colors used.
    pub fn palette_size(&self) -> u64 {
        self.ell as u64 * self.r as u64
    }

    /// `(1 + 2/eps) c log n`: the per-class degree bound that makes Abort
    /// impossible.
    pub fn class_degree_bound(&self) -> f64 {
        (1.0 + 2.0 / self.epsilon) * self.c * self.log_n()
    }

    /// Whether `Delta >= (4c/eps) log n`, where `ell * r <= (1+eps) Delta`
    /// follows from the arithmetic alone.
    pub fn in_budget_regime(&self) -> bool {
        self.delta as f64 >= 4.0 * self.c / self.epsilon * self.log_n()
    }

    pub fn color_target(&self) -> f64 {
        (1.0 + self.epsilon) * self.delta as f64
    }
}

/// `floor((2+gamma) alpha)`: the peeling degree threshold.
pub fn peel_threshold(alpha: u32, gamma: f64) -> u64 {
    floor_snapped((2.0 + gamma) * alpha as f64)
}

/// `ceil(log n / log((2+gamma)/2))`, the round count guaranteed when
/// `alpha` bounds the true arboricity. At least 1.
pub fn peel_round_bound(n: usize, gamma: f64) -> u64 {
    if n < 2 {
        return 1;
    }
    ceil_snapped((n as f64).log2() / ((2.0 + gamma) / 2.0).log2()).max(1)
}

/// Derived settings for the `(2+eps)alpha` coloring.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArbParams {
    pub n: usize,
    pub alpha: u32,
    pub epsilon: f64,
    pub c: f64,
    /// `eps / 6`.
    pub epsilon_prime: f64,
    /// `eps / 3`.
    pub gamma: f64,
    /// `ceil((eps'/c) (2+gamma) alpha / log n)`, at least 1.
    pub ell: u32,
}

impl ArbParams {
    pub fn new(n: usize, alpha: u32, epsilon: f64, c: f64) -> Result<Self, ParamError> {
        let epsilon = positive("epsilon", epsilon)?;
        let c = positive("c", c)?;
        let log = log2_n(n)?;
        let epsilon_prime = epsilon / 6.0;
        let gamma = epsilon / 3.0;
        let ell =
            ceil_snapped(epsilon_prime / c * ((2.0 + gamma) * alpha as f64 / log)).max(1) as u32;
        Ok(ArbParams {
            n,
            alpha,
            epsilon,
            c,
            epsilon_prime,
            gamma,
            ell,
        })
    }

    pub fn log_n(&self) -> f64 {
        (self.n as f64).log2()
    }

    pub fn threshold(&self) -> u64 {
        peel_threshold(self.alpha, self.gamma)
    }

    pub fn round_bound(&self) -> u64 {
        peel_round_bound(self.n, self.gamma)
    }

    /// `(1 + 1/eps') c log n`: the per-class out-degree bound.
    pub fn out_degree_bound(&self) -> f64 {
        (1.0 + 1.0 / self.epsilon_prime) * self.c * self.log_n()
    }

    /// `ell * (ceil((1+1/eps') c log n) + 1)`.
    pub fn color_budget(&self) -> u64 {
        self.ell as u64 * (ceil_snapped(self.out_degree_bound()) + 1)
    }

    /// Whether `(2+gamma) alpha >= (2c/eps') log n`.
    pub fn in_budget_regime(&self) -> bool {
        (2.0 + self.gamma) * self.alpha as f64 >= 2.0 * self.c / self.epsilon_prime * self.log_n()
    }

    pub fn color_target(&self) -> f64 {
        (2.0 + self.epsilon) * self.alpha as f64
    }
}
