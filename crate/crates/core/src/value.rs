//! Regimes of both selling problems, the value function of the infimum problem
//! and checks of the free-boundary conditions it satisfies.

use serde::{Deserialize, Serialize};

use crate::boundary::{j_1d, BoundaryCurve, Kernel, QuadratureSpec};
use crate::error::{domain, Error, Result};
use crate::gain::gain_tau;
use crate::params::ModelParams;

/// Optimal rule for `inf E(M_T / Z_tau)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum InfimumRegime {
    /// `mu <= 0`: sell at once, `V = G`.
    StopImmediately,
    /// `0 < mu < sigma^2`: sell when `M_t / Z_t >= e^{sigma b(t)}`.
    Boundary,
    /// `mu >= sigma^2`: hold until `T`, `V = J`.
    WaitUntilEnd,
}

/// Optimal rule for `sup E(Z_tau / M_T)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SupremumRegime {
    /// `mu < sigma^2 / 2`
    StopImmediately,
    /// `mu > sigma^2 / 2`
    WaitUntilEnd,
    /// `mu = sigma^2 / 2`: both rules are optimal.
    Tie,
}

pub fn classify_infimum(params: &ModelParams) -> InfimumRegime {
    let s2 = params.sigma * params.sigma;
    if params.mu <= 0.0 {
        InfimumRegime::StopImmediately
    } else if params.mu < s2 {
        InfimumRegime::Boundary
    } else {
        InfimumRegime::WaitUntilEnd
    }
}

pub fn classify_supremum(params: &ModelParams) -> SupremumRegime {
    let half = 0.5 * params.sigma * params.sigma;
    if params.mu < half {
        SupremumRegime::StopImmediately
    } else if params.mu > half {
        SupremumRegime::WaitUntilEnd
    } else {
        SupremumRegime::Tie
    }
}

fn check_curve(curve: &BoundaryCurve, params: &ModelParams) -> Result<()> {
    let p = &curve.params;
    if p.mu != params.mu || p.sigma != params.sigma || p.horizon != params.horizon {
        return Err(domain("the boundary curve was solved for different parameters"));
    }
    if curve.b_values.len() != curve.grid.nodes().len() {
        return Err(domain("curve and grid lengths differ"));
    }
    Ok(())
}

/// Nodes `t = s_0 < s_1 < ... < T` used for the time integral from `t`, with
/// the levels of `curve`. A grid node closer to `t` than half the local step is
/// dropped so that the first panel never degenerates.
fn path_from(curve: &BoundaryCurve, t: f64) -> (Vec<f64>, Vec<f64>) {
    let nodes = curve.grid.nodes();
    let b = &curve.b_values;
    let n = nodes.len() - 1;
    let mut k = nodes.partition_point(|&s| s <= t);
    if k > 0 && nodes[k - 1] == t {
        // On-grid start.
        let times = nodes[k - 1..].to_vec();
        let levels = b[k - 1..].to_vec();
        return (times, levels);
    }
    if k < n && nodes[k] - t < 0.5 * (nodes[k] - nodes[k - 1]) {
        k += 1;
    }
    let mut times = vec![t];
    let mut levels = vec![curve.b_at(t)];
    times.extend_from_slice(&nodes[k..]);
    levels.extend_from_slice(&b[k..]);
    (times, levels)
}

/// `V(t, x)` of the infimum problem.
///
/// `G` when `mu <= 0`, `J` when `mu >= sigma^2`, and `J - int_0^{T-t} K(t, x, s, b(t+s)) ds`
/// with the supplied curve otherwise.
pub fn value_infimum(
    t: f64,
    x: f64,
    params: &ModelParams,
    curve: Option<&BoundaryCurve>,
    quad: &QuadratureSpec,
) -> Result<f64> {
    params.validate()?;
    quad.validate()?;
    let tau = params.check_time(t)?;
    if !(x >= 0.0 && x.is_finite()) {
        return Err(domain(format!("state x = {x} must be >= 0")));
    }
    let (lam, sigma) = (params.lambda(), params.sigma);
    match classify_infimum(params) {
        InfimumRegime::StopImmediately => Ok(gain_tau(tau, x, lam, sigma)),
        InfimumRegime::WaitUntilEnd => Ok(j_1d(tau, x, lam, sigma, quad)),
        InfimumRegime::Boundary => {
            let curve = curve.ok_or(Error::MissingCurve)?;
            check_curve(curve, params)?;
            if tau <= 0.0 {
                return Ok((sigma * x).exp());
            }
            let (times, levels) = path_from(curve, t);
            let kernel = Kernel { lam, sigma, horizon: params.horizon, quad };
            Ok(j_1d(tau, x, lam, sigma, quad) - kernel.integral(x, &times, &levels))
        }
    }
}

/// `V_1 = V(0, 0)` and the selling rule that attains it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InfimumValue {
    pub value: f64,
    pub regime: InfimumRegime,
    /// `(t, e^{sigma b(t)})` on the curve grid in the boundary regime: sell the
    /// first time `M_t / Z_t` reaches the threshold.
    pub threshold: Option<Vec<(f64, f64)>>,
}

pub fn value_v1(
    params: &ModelParams,
    curve: Option<&BoundaryCurve>,
    quad: &QuadratureSpec,
) -> Result<InfimumValue> {
    let value = value_infimum(0.0, 0.0, params, curve, quad)?;
    let regime = classify_infimum(params);
    let threshold = match (regime, curve) {
        (InfimumRegime::Boundary, Some(c)) => Some(
            c.grid
                .nodes()
                .iter()
                .zip(&c.b_values)
                .map(|(&t, &b)| (t, (params.sigma * b).exp()))
                .collect(),
        ),
        _ => None,
    };
    Ok(InfimumValue { value, regime, threshold })
}

/// `V_2 = sup E(Z_tau / M_T)` with the values of both candidate rules.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SupremumValue {
    pub value: f64,
    pub regime: SupremumRegime,
    /// `E e^{-sigma S_T}`: sell at once.
    pub immediate_value: f64,
    /// `E e^{sigma (B_T - S_T)}`: hold until `T`.
    pub terminal_value: f64,
}

pub fn value_v2(params: &ModelParams) -> Result<SupremumValue> {
    params.validate()?;
    let (lam, sigma, horizon) = (params.lambda(), params.sigma, params.horizon);
    let immediate_value = gain_tau(horizon, 0.0, lam, -sigma);
    // B - S has the law of -S for the drift -lambda.
    let terminal_value = gain_tau(horizon, 0.0, -lam, -sigma);
    let regime = classify_supremum(params);
    let value = match regime {
        SupremumRegime::StopImmediately => immediate_value,
        SupremumRegime::WaitUntilEnd => terminal_value,
        SupremumRegime::Tie => {
            if (immediate_value - terminal_value).abs() > 1e-8 {
                return Err(domain(format!(
                    "tie case values disagree: {immediate_value} vs {terminal_value}"
                )));
            }
            immediate_value
        }
    };
    Ok(SupremumValue { value, regime, immediate_value, terminal_value })
}

/// Finite-difference step in `x` of the free-boundary checks.
pub const FD_STEP_X: f64 = 1e-3;
/// Finite-difference step in `t` of the free-boundary checks.
pub const FD_STEP_T: f64 = 1e-4;

/// Free-boundary conditions at one time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FbPoint {
    pub t: f64,
    pub b: f64,
    /// One-sided `V_x(t, 0+)`.
    pub normal_reflection: f64,
    /// `|V_x(t, b-) - V_x(t, b+)| / (sigma e^{sigma b})`.
    pub smooth_fit: f64,
    /// Largest `|V_t - lambda V_x + V_xx / 2|` at sampled points below `b`.
    pub pde_residual: f64,
    /// Largest `|V - G|` at sampled points on and above `b`.
    pub stopping_gap: f64,
}

/// Worst cases over all sampled times.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FbReport {
    pub points: Vec<FbPoint>,
    pub max_normal_reflection: f64,
    pub max_smooth_fit: f64,
    pub max_pde_residual: f64,
    pub max_stopping_gap: f64,
}

/// Checks the backward equation below `b`, `V = G` above it, `V_x(t, 0+) = 0`
/// and smooth fit at `b(t)`, at `n_times` grid nodes spread over `(0, T)`.
pub fn validate_fb_conditions(
    params: &ModelParams,
    curve: Option<&BoundaryCurve>,
    quad: &QuadratureSpec,
    n_times: usize,
) -> Result<FbReport> {
    let curve = curve.ok_or(Error::MissingCurve)?;
    check_curve(curve, params)?;
    if classify_infimum(params) != InfimumRegime::Boundary {
        return Err(Error::Regime("free-boundary checks need 0 < mu < sigma^2".into()));
    }
    let nodes = curve.grid.nodes();
    let n = nodes.len() - 1;
    let mut picks: Vec<usize> = (1..=n_times)
        .map(|k| {
            let target = params.horizon * k as f64 / (n_times + 1) as f64;
            nodes.partition_point(|&s| s < target).clamp(1, n - 1)
        })
        .collect();
    picks.dedup();
    let (lam, sigma) = (params.lambda(), params.sigma);
    let v = |t: f64, x: f64| value_infimum(t, x, params, Some(curve), quad);
    let h = FD_STEP_X;
    let mut points = Vec::with_capacity(picks.len());
    for i in picks {
        let t = nodes[i];
        let b = curve.b_values[i];
        let tau = params.horizon - t;
        let normal_reflection = (-3.0 * v(t, 0.0)? + 4.0 * v(t, h)? - v(t, 2.0 * h)?) / (2.0 * h);
        let vb = v(t, b)?;
        let left = (3.0 * vb - 4.0 * v(t, b - h)? + v(t, b - 2.0 * h)?) / (2.0 * h);
        let right = (-3.0 * vb + 4.0 * v(t, b + h)? - v(t, b + 2.0 * h)?) / (2.0 * h);
        let smooth_fit = (left - right).abs() / (sigma * (sigma * b).exp());
        let mut pde_residual: f64 = 0.0;
        for k in 1..=4 {
            let x = b * k as f64 / 5.0;
            if x < 2.0 * h || x > b - 2.0 * h {
                continue;
            }
            let dt = FD_STEP_T.min(0.5 * tau);
            let vt = (v(t + dt, x)? - v(t - dt, x)?) / (2.0 * dt);
            let (vm, v0, vp) = (v(t, x - h)?, v(t, x)?, v(t, x + h)?);
            let vx = (vp - vm) / (2.0 * h);
            let vxx = (vp - 2.0 * v0 + vm) / (h * h);
            pde_residual = pde_residual.max((vt - lam * vx + 0.5 * vxx).abs());
        }
        let mut stopping_gap: f64 = 0.0;
        for dx in [0.0, 0.1, 0.5] {
            let x = b + dx;
            stopping_gap = stopping_gap.max((v(t, x)? - gain_tau(tau, x, lam, sigma)).abs());
        }
        points.push(FbPoint { t, b, normal_reflection, smooth_fit, pde_residual, stopping_gap });
    }
    let worst = |f: fn(&FbPoint) -> f64| points.iter().map(f).fold(0.0, f64::max);
    Ok(FbReport {
        max_normal_reflection: worst(|p| p.normal_reflection.abs()),
        max_smooth_fit: worst(|p| p.smooth_fit),
        max_pde_residual: worst(|p| p.pde_residual),
        max_stopping_gap: worst(|p| p.stopping_gap),
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::{solve_boundary, TimeGrid};
    use crate::gain::gain;
    use crate::params::ExponentSign;

    fn params(mu: f64) -> ModelParams {
        ModelParams::new(mu, 1.0, 1.0).unwrap()
    }

    #[test]
    fn regimes() {
        assert_eq!(classify_infimum(&params(-0.1)), InfimumRegime::StopImmediately);
        assert_eq!(classify_infimum(&params(0.0)), InfimumRegime::StopImmediately);
        assert_eq!(classify_infimum(&params(0.5)), InfimumRegime::Boundary);
        assert_eq!(classify_infimum(&params(1.0)), InfimumRegime::WaitUntilEnd);
        assert_eq!(classify_supremum(&params(0.4)), SupremumRegime::StopImmediately);
        assert_eq!(classify_supremum(&params(0.5)), SupremumRegime::Tie);
        assert_eq!(classify_supremum(&params(0.6)), SupremumRegime::WaitUntilEnd);
        let p = ModelParams::new(0.5, 2.0, 1.0).unwrap();
        assert_eq!(classify_infimum(&p), InfimumRegime::Boundary);
        assert_eq!(classify_supremum(&p), SupremumRegime::StopImmediately);
    }

    #[test]
    fn supremum_values() {
        let tie = value_v2(&params(0.5)).unwrap();
        assert_eq!(tie.regime, SupremumRegime::Tie);
        assert!((tie.immediate_value - tie.terminal_value).abs() < 1e-8);
        let low = value_v2(&params(-0.3)).unwrap();
        assert_eq!(low.value, gain(0.0, 0.0, &params(-0.3), ExponentSign::Minus).unwrap());
        assert!(low.immediate_value > low.terminal_value);
        let high = value_v2(&params(1.0)).unwrap();
        assert_eq!(high.value, high.terminal_value);
        assert!(high.terminal_value > high.immediate_value);
        assert!(high.value < 1.0 && low.value < 1.0);
    }

    #[test]
    fn closed_form_branches() {
        let q = QuadratureSpec::default();
        let p = params(-0.5);
        assert_eq!(
            value_infimum(0.2, 0.4, &p, None, &q).unwrap(),
            gain(0.2, 0.4, &p, ExponentSign::Plus).unwrap()
        );
        let p = params(1.5);
        let j = crate::boundary::transition_j(0.2, 0.4, &p, &q).unwrap();
        assert_eq!(value_infimum(0.2, 0.4, &p, None, &q).unwrap(), j);
        assert_eq!(value_infimum(0.5, 0.0, &params(0.5), None, &q), Err(Error::MissingCurve));
        for mu in [-0.5, 0.5, 1.5] {
            let p = params(mu);
            let c = solve_boundary(&params(0.5), &TimeGrid::uniform(1.0, 10).unwrap(), &q).unwrap();
            assert_eq!(value_infimum(1.0, 0.7, &p, Some(&c), &q).unwrap(), 0.7f64.exp());
        }
    }

    #[test]
    fn value_below_both_trivial_rules() {
        let q = QuadratureSpec::default();
        let p = params(0.5);
        let c = solve_boundary(&p, &TimeGrid::uniform(1.0, 40).unwrap(), &q).unwrap();
        assert!(value_infimum(0.0, 0.0, &params(0.4), Some(&c), &q).is_err());
        let v1 = value_v1(&p, Some(&c), &q).unwrap();
        assert_eq!(v1.regime, InfimumRegime::Boundary);
        assert_eq!(v1.threshold.as_ref().unwrap().len(), 41);
        let g = gain(0.0, 0.0, &p, ExponentSign::Plus).unwrap();
        assert!(v1.value > 1.0 && v1.value < g - 0.1);
        for &(t, x) in &[(0.1, 0.2), (0.33, 0.5), (0.6, 1.0), (0.9, 0.05)] {
            let v = value_infimum(t, x, &p, Some(&c), &q).unwrap();
            assert!(v <= gain(t, x, &p, ExponentSign::Plus).unwrap() + 1e-4);
        }
    }

    #[test]
    fn free_boundary_conditions_hold() {
        let q = QuadratureSpec::default();
        let p = params(0.5);
        let c = solve_boundary(&p, &TimeGrid::uniform(1.0, 50).unwrap(), &q).unwrap();
        let r = validate_fb_conditions(&p, Some(&c), &q, 5).unwrap();
        assert_eq!(r.points.len(), 5);
        assert!(r.max_normal_reflection < 1e-3);
        assert!(r.max_smooth_fit < 5e-3);
        assert!(r.max_stopping_gap < 1e-3);
        assert_eq!(validate_fb_conditions(&p, None, &q, 5), Err(Error::MissingCurve));
    }
}
