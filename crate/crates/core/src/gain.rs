//! The gain function `G(t, x) = E exp(sigma' (x v S_{T-t}))`, its drift
//! `H = G_t - lambda G_x + G_xx / 2` and the zero curve `h` of `H`.

use crate::error::{domain, Error, Result};
use crate::law::{max_cdf_unchecked, max_tail};
use crate::normal::{cdf, exp_mul_cdf, pdf};
use crate::params::{ExponentSign, ModelParams};
use crate::quad::{adaptive_simpson, bisect};

/// Below this value of `|sigma' + 2 lambda|` the three-term closed forms are
/// replaced by their singular-case counterparts.
pub const SINGULAR_EPS: f64 = 1e-8;

/// Absolute tolerance of the integral representation of `G`.
pub const INTEGRAL_TOL: f64 = 1e-10;

/// Absolute tolerance of the zero curve `h`.
pub const H_ROOT_TOL: f64 = 1e-10;

/// Which formula evaluates `G` for a given exponent and drift.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GainForm {
    /// Three-term closed form.
    Closed,
    /// The zero-drift form, exact when `sigma' + 2 lambda = 0` and `sigma' > 0`.
    ZeroDrift,
    /// `e^{sigma' x} + sigma' int_x^inf e^{sigma' y} P(S >= y) dy` by adaptive quadrature.
    Integral,
}

pub fn gain_form(lambda: f64, sp: f64) -> GainForm {
    let q = sp + 2.0 * lambda;
    if q.abs() >= SINGULAR_EPS {
        GainForm::Closed
    } else if sp > 0.0 && q.abs() <= 8.0 * f64::EPSILON * sp.abs() {
        GainForm::ZeroDrift
    } else {
        GainForm::Integral
    }
}

/// `Phi` argument `num / sqrt(tau)` with the `tau = 0` limit taken as `+-inf` (or 0).
#[inline]
fn arg(num: f64, sq: f64) -> f64 {
    if sq > 0.0 {
        num / sq
    } else if num > 0.0 {
        f64::INFINITY
    } else if num < 0.0 {
        f64::NEG_INFINITY
    } else {
        0.0
    }
}

/// `G` with remaining time `tau`, drift `lambda` and signed exponent `sp`.
pub fn gain_tau(tau: f64, x: f64, lambda: f64, sp: f64) -> f64 {
    gain_tau_with(gain_form(lambda, sp), tau, x, lambda, sp)
}

pub fn gain_tau_with(form: GainForm, tau: f64, x: f64, lambda: f64, sp: f64) -> f64 {
    if tau <= 0.0 {
        return (sp * x).exp();
    }
    let sq = tau.sqrt();
    match form {
        GainForm::Closed => {
            let q = sp + 2.0 * lambda;
            2.0 * (sp + lambda) / q
                * exp_mul_cdf(0.5 * sp * q * tau, (-x + (lambda + sp) * tau) / sq)
                + exp_mul_cdf(sp * x, (x - lambda * tau) / sq)
                - sp / q * exp_mul_cdf(q * x, (-x - lambda * tau) / sq)
        }
        GainForm::ZeroDrift => {
            let half = 0.5 * sp * tau;
            sp * sq * pdf((x - half) / sq)
                + exp_mul_cdf(sp * x, (x + half) / sq)
                + (1.0 - sp * x + 0.5 * sp * sp * tau) * cdf((-x + half) / sq)
        }
        GainForm::Integral => gain_integral(tau, x, lambda, sp),
    }
}

/// Integral representation of `G`, integrated panel by panel until the tail
/// contribution drops below `1e-16` of the accumulated value.
pub fn gain_integral(tau: f64, x: f64, lambda: f64, sp: f64) -> f64 {
    if tau <= 0.0 {
        return (sp * x).exp();
    }
    let integrand = |y: f64| (sp * y).exp() * max_tail(tau, y, lambda);
    let width = tau.sqrt().max(0.25);
    let base = (sp * x).exp();
    let mut acc = 0.0;
    let mut a = x;
    for _ in 0..4096 {
        let b = a + width;
        acc += adaptive_simpson(&integrand, a, b, INTEGRAL_TOL / 64.0);
        a = b;
        let tail = integrand(a) * width;
        if tail <= 1e-16 * (base + (sp * acc).abs()) && a > x + lambda.max(0.0) * tau + sp.max(0.0) * tau {
            break;
        }
    }
    base + sp * acc
}

/// `x`-derivative of `G`: `sigma' e^{sigma' x} P(S_tau <= x)`.
pub fn gain_dx_tau(tau: f64, x: f64, lambda: f64, sp: f64) -> f64 {
    sp * (sp * x).exp() * max_cdf_unchecked(tau, x, lambda)
}

/// `H = G_t - lambda G_x + G_xx / 2` in closed form, with the `tau -> 0` limit at `tau = 0`.
pub fn drift_h_tau(tau: f64, x: f64, lambda: f64, sp: f64) -> f64 {
    let sq = tau.max(0.0).sqrt();
    let q = sp + 2.0 * lambda;
    if q.abs() < SINGULAR_EPS {
        let half = 0.5 * sp * tau;
        let s2 = sp * sp;
        return s2 * exp_mul_cdf(sp * x, arg(x + half, sq)) - s2 * cdf(arg(-x + half, sq));
    }
    0.5 * sp * (sp - 2.0 * lambda) * exp_mul_cdf(sp * x, arg(x - lambda * tau, sq))
        - 0.5 * sp * sp * exp_mul_cdf(q * x, arg(-x - lambda * tau, sq))
        - sp * (sp + lambda) * exp_mul_cdf(0.5 * sp * q * tau, arg(-x + (sp + lambda) * tau, sq))
}

fn check_state(params: &ModelParams, t: f64, x: f64) -> Result<f64> {
    let tau = params.check_time(t)?;
    if !(x >= 0.0) {
        return Err(domain(format!("state x = {x} must be >= 0")));
    }
    Ok(tau)
}

/// `G(t, x) = E exp(sigma' (x v S_{T-t}))` with `sigma' = sign * sigma`.
pub fn gain(t: f64, x: f64, params: &ModelParams, sign: ExponentSign) -> Result<f64> {
    let tau = check_state(params, t, x)?;
    Ok(gain_tau(tau, x, params.lambda(), sign.value() * params.sigma))
}

/// `G_x(t, x)`; undefined at `t = T`.
pub fn gain_dx(t: f64, x: f64, params: &ModelParams, sign: ExponentSign) -> Result<f64> {
    let tau = check_state(params, t, x)?;
    if tau <= 0.0 {
        return Err(domain("G_x is not defined at t = T"));
    }
    Ok(gain_dx_tau(tau, x, params.lambda(), sign.value() * params.sigma))
}

/// `H(t, x)`; at `t = T` the continuous limit in time is returned.
pub fn drift_h(t: f64, x: f64, params: &ModelParams, sign: ExponentSign) -> Result<f64> {
    let tau = check_state(params, t, x)?;
    Ok(drift_h_tau(tau, x, params.lambda(), sign.value() * params.sigma))
}

/// `H_t(t, x)` for the infimum problem in the boundary regime `0 < mu < sigma^2`.
pub fn drift_h_dt(t: f64, x: f64, params: &ModelParams) -> Result<f64> {
    let tau = check_state(params, t, x)?;
    if tau <= 0.0 {
        return Err(domain("H_t is evaluated for t < T only"));
    }
    let s2 = params.sigma * params.sigma;
    if !(params.mu > 0.0 && params.mu < s2) {
        return Err(domain(format!("H_t needs 0 < mu < sigma^2, got mu = {}", params.mu)));
    }
    Ok(drift_h_dt_tau(tau, x, params.lambda(), params.sigma))
}

pub(crate) fn drift_h_dt_tau(tau: f64, x: f64, lambda: f64, sigma: f64) -> f64 {
    let sq = tau.sqrt();
    let q = sigma + 2.0 * lambda;
    let s2 = sigma * sigma;
    // exp(sigma x) phi((x - lambda tau)/sq) as one exponent
    let z = (x - lambda * tau) / sq;
    let gauss = (sigma * x - 0.5 * z * z).exp() * pdf(0.0);
    0.5 * s2 * (2.0 * x + q * tau) / (tau * sq) * gauss
        + 0.5 * s2 * (sigma + lambda) * q * exp_mul_cdf(0.5 * sigma * q * tau, (-x + (sigma + lambda) * tau) / sq)
}

/// Level `h(t)` where `H(t, .)` changes sign from negative to positive.
pub fn h_curve(t: f64, params: &ModelParams, sign: ExponentSign) -> Result<f64> {
    let tau = params.check_time(t)?;
    let s2 = params.sigma * params.sigma;
    if !(params.mu > 0.0 && params.mu < s2) {
        return Err(Error::Regime(format!(
            "the zero curve h exists for 0 < mu < sigma^2 only (mu = {}, sigma^2 = {s2})",
            params.mu
        )));
    }
    if tau <= 0.0 {
        return Ok(0.0);
    }
    let lambda = params.lambda();
    let sp = sign.value() * params.sigma;
    let h = |x: f64| drift_h_tau(tau, x, lambda, sp);
    if h(0.0) >= 0.0 {
        return Ok(0.0);
    }
    let cap = 64.0 / params.sigma;
    let mut hi = 1.0_f64.min(cap);
    while h(hi) <= 0.0 {
        if hi >= cap {
            return Err(Error::Bracket { what: "zero curve h", t, cap });
        }
        hi = (2.0 * hi).min(cap);
    }
    Ok(bisect(h, 0.0, hi, H_ROOT_TOL))
}
