//! Laws of the running maximum `S_t` of `B_t + lambda t` and of the reflected
//! process `X_t^x = x v S_t - B_t`.

use crate::error::{domain, Result};
use crate::normal::{cdf, exp_mul_cdf, pdf};

const SQRT_2_OVER_PI: f64 = 0.797_884_560_802_865_4;

/// `P(S_t <= x)` for the maximum of a Brownian motion with drift `lambda`.
pub fn max_cdf(t: f64, x: f64, lambda: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(domain(format!("elapsed time must be > 0, got {t}")));
    }
    if !(x >= 0.0) {
        return Err(domain(format!("level must be >= 0, got {x}")));
    }
    Ok(max_cdf_unchecked(t, x, lambda))
}

pub(crate) fn max_cdf_unchecked(t: f64, x: f64, lambda: f64) -> f64 {
    // The two terms cancel at x = 0 only up to rounding; the maximum starts at 0.
    if x <= 0.0 {
        return 0.0;
    }
    let sq = t.sqrt();
    let v = cdf((x - lambda * t) / sq) - exp_mul_cdf(2.0 * lambda * x, (-x - lambda * t) / sq);
    v.clamp(0.0, 1.0)
}

/// `P(S_t >= y)`, evaluated directly so the far tail keeps its relative accuracy.
pub(crate) fn max_tail(t: f64, y: f64, lambda: f64) -> f64 {
    let sq = t.sqrt();
    let v = cdf((-y + lambda * t) / sq) + exp_mul_cdf(2.0 * lambda * y, (-y - lambda * t) / sq);
    v.clamp(0.0, 1.0)
}

/// Density of `S_t` at `x > 0`.
pub fn max_density(t: f64, x: f64, lambda: f64) -> f64 {
    let sq = t.sqrt();
    2.0 / sq * pdf((x - lambda * t) / sq)
        - 2.0 * lambda * exp_mul_cdf(2.0 * lambda * x, (-x - lambda * t) / sq)
}

/// Joint density of `(B_r + lambda r, S_r)` at `(b, s)`.
pub fn joint_density(r: f64, b: f64, s: f64, lambda: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(domain(format!("elapsed time must be > 0, got {r}")));
    }
    if !(s >= 0.0) || !(b <= s) {
        return Err(domain(format!("need s >= 0 and b <= s, got b = {b}, s = {s}")));
    }
    Ok(joint_density_unchecked(r, b, s, lambda))
}

#[inline]
pub(crate) fn joint_density_unchecked(r: f64, b: f64, s: f64, lambda: f64) -> f64 {
    let u = 2.0 * s - b;
    SQRT_2_OVER_PI * u / (r * r.sqrt()) * (-u * u / (2.0 * r) + lambda * (b - 0.5 * lambda * r)).exp()
}

/// Transition density of `X^x` after time `r`: a Brownian motion with drift
/// `-lambda` started at `x` and reflected at zero, evaluated at `z >= 0`.
///
/// Obtained by integrating the joint density of `(B, S)` over
/// `{x v s - b in dz}`.
#[inline]
pub fn transition_density(r: f64, x: f64, z: f64, lambda: f64) -> f64 {
    let sq = r.sqrt();
    let direct = pdf((z - x + lambda * r) / sq);
    let w = (z + x - lambda * r) / sq;
    // exp(-2 lambda z) phi(w) collapses onto a single Gaussian in (z, x)
    let mirrored = (-2.0 * lambda * z).exp() * pdf(w);
    (direct + mirrored) / sq + 2.0 * lambda * exp_mul_cdf(-2.0 * lambda * z, -w)
}
