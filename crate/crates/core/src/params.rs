use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Drift, volatility and horizon of the stock `dZ = mu Z dt + sigma Z dB`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub mu: f64,
    pub sigma: f64,
    pub horizon: f64,
}

impl ModelParams {
    pub fn new(mu: f64, sigma: f64, horizon: f64) -> Result<Self> {
        let p = Self { mu, sigma, horizon };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.mu.is_finite() {
            return Err(Error::InvalidParams(format!("mu must be finite, got {}", self.mu)));
        }
        if !(self.sigma > 0.0) || !self.sigma.is_finite() {
            return Err(Error::InvalidParams(format!("sigma must be > 0, got {}", self.sigma)));
        }
        if !(self.horizon > 0.0) || !self.horizon.is_finite() {
            return Err(Error::InvalidParams(format!(
                "horizon must be > 0, got {}",
                self.horizon
            )));
        }
        if !self.lambda().is_finite() {
            return Err(Error::InvalidParams("drift-to-volatility ratio is not finite".into()));
        }
        Ok(())
    }

    /// Drift of the Brownian motion driving `log Z / sigma`: `(mu - sigma^2/2) / sigma`.
    pub fn lambda(&self) -> f64 {
        (self.mu - 0.5 * self.sigma * self.sigma) / self.sigma
    }

    pub(crate) fn check_time(&self, t: f64) -> Result<f64> {
        if !(t >= 0.0 && t <= self.horizon) {
            return Err(crate::error::domain(format!(
                "t = {t} outside [0, {}]",
                self.horizon
            )));
        }
        Ok(self.horizon - t)
    }
}

/// Sign applied to `sigma` in the exponent of the gain function.
///
/// `Plus` is the infimum problem `E(M_T / Z_tau)`, `Minus` the supremum
/// problem `E(Z_tau / M_T)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ExponentSign {
    Plus,
    Minus,
}

impl ExponentSign {
    pub fn value(self) -> f64 {
        match self {
            ExponentSign::Plus => 1.0,
            ExponentSign::Minus => -1.0,
        }
    }
}

/// A point `(t, x)` of the reduced state space, where `x = M_t/Z_t` on the log scale
/// divided by `sigma`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StateTimePoint {
    pub t: f64,
    pub x: f64,
}

impl StateTimePoint {
    pub fn new(t: f64, x: f64, params: &ModelParams) -> Result<Self> {
        params.check_time(t)?;
        if !(x >= 0.0) {
            return Err(crate::error::domain(format!("state x = {x} must be >= 0")));
        }
        Ok(Self { t, x })
    }
}
