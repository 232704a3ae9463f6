//! The functions `J` and `K` and the backward solution of the integral
//! equation `J(t, b(t)) = G(t, b(t)) + int_0^{T-t} K(t, b(t), s, b(t+s)) ds`.
//!
//! Two routes evaluate `J` and `K`. The tensor-product route integrates against
//! the joint density of `(B_r, S_r)` on a truncated box. The transition route
//! integrates against the density of the reflected state `X_r` in one
//! dimension; it is what the solver uses, and the two are cross-checked in
//! tests.

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::gain::{drift_h_tau, gain_tau, h_curve};
use crate::law::{joint_density_unchecked, transition_density};
use crate::params::{ExponentSign, ModelParams};
use crate::quad::{gauss_composite, gl8, simpson};

/// Absolute tolerance on the boundary level at each node.
pub const ROOT_TOL: f64 = 1e-8;

/// Time nodes `0 = t_0 < ... < t_n = T`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid {
    nodes: Vec<f64>,
}

impl TimeGrid {
    pub fn uniform(horizon: f64, n_steps: usize) -> Result<Self> {
        if n_steps < 2 {
            return Err(domain(format!("a time grid needs at least 2 steps, got {n_steps}")));
        }
        if !(horizon > 0.0 && horizon.is_finite()) {
            return Err(domain(format!("horizon must be > 0, got {horizon}")));
        }
        let mut nodes: Vec<f64> =
            (0..=n_steps).map(|i| horizon * i as f64 / n_steps as f64).collect();
        nodes[n_steps] = horizon;
        Ok(Self { nodes })
    }

    /// A grid with explicit nodes; the first must be 0 and they must increase strictly.
    pub fn from_nodes(nodes: Vec<f64>) -> Result<Self> {
        if nodes.len() < 3 {
            return Err(domain("a time grid needs at least 3 nodes"));
        }
        if nodes[0] != 0.0 {
            return Err(domain("the first grid node must be 0"));
        }
        if nodes.windows(2).any(|w| !(w[1] > w[0])) || !nodes.iter().all(|t| t.is_finite()) {
            return Err(domain("grid nodes must be finite and strictly increasing"));
        }
        Ok(Self { nodes })
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn n_steps(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn horizon(&self) -> f64 {
        self.nodes[self.nodes.len() - 1]
    }
}

/// Panel counts and truncation width of the state-space quadratures.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    /// Simpson panels in the maximum `s` (tensor-product route).
    pub s_panels: usize,
    /// Simpson panels in the endpoint `b` (tensor-product route).
    pub b_panels: usize,
    /// Half-width of the integration box in standard deviations.
    pub trunc_c: f64,
    /// 8-point Gauss-Legendre panels in the reflected state (transition route).
    pub state_panels: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self { s_panels: 64, b_panels: 64, trunc_c: 8.0, state_panels: 8 }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if self.s_panels < 4 || self.b_panels < 4 || self.state_panels < 4 {
            return Err(domain("quadrature panel counts must be at least 4"));
        }
        if !(self.trunc_c >= 4.0 && self.trunc_c.is_finite()) {
            return Err(domain(format!("trunc_c must be >= 4, got {}", self.trunc_c)));
        }
        Ok(())
    }

    /// Every panel count doubled.
    pub fn refined(&self) -> Self {
        Self {
            s_panels: 2 * self.s_panels,
            b_panels: 2 * self.b_panels,
            trunc_c: self.trunc_c,
            state_panels: 2 * self.state_panels,
        }
    }
}

/// Optimal stopping boundary on a time grid with the zero curve of `H` alongside.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryCurve {
    pub params: ModelParams,
    pub grid: TimeGrid,
    pub b_values: Vec<f64>,
    pub h_values: Vec<f64>,
    /// `|J - G - int K| / G` at each node, with the solver's own quadrature.
    pub residuals: Vec<f64>,
    pub quad: QuadratureSpec,
    /// Nodes where the monotonicity clamp was applied.
    pub warnings: Vec<String>,
}

impl BoundaryCurve {
    /// Linear interpolation of `b` at `t`.
    pub fn b_at(&self, t: f64) -> f64 {
        interpolate(self.grid.nodes(), &self.b_values, t)
    }

    /// Threshold `e^{sigma b(t)}` for the ratio `M_t / Z_t`.
    pub fn ratio_threshold(&self, t: f64) -> f64 {
        (self.params.sigma * self.b_at(t)).exp()
    }
}

pub(crate) fn interpolate(nodes: &[f64], values: &[f64], t: f64) -> f64 {
    let n = nodes.len();
    if t <= nodes[0] {
        return values[0];
    }
    if t >= nodes[n - 1] {
        return values[n - 1];
    }
    let k = nodes.partition_point(|&s| s <= t);
    let (t0, t1) = (nodes[k - 1], nodes[k]);
    let w = (t - t0) / (t1 - t0);
    values[k - 1] * (1.0 - w) + values[k] * w
}

fn check_point(params: &ModelParams, quad: &QuadratureSpec, t: f64, x: f64) -> Result<f64> {
    params.validate()?;
    quad.validate()?;
    let tau = params.check_time(t)?;
    if !(x >= 0.0 && x.is_finite()) {
        return Err(domain(format!("state x = {x} must be >= 0")));
    }
    Ok(tau)
}

/// Accepts `r` in `(0, tau]` up to rounding in `t + r`.
fn check_step(r: f64, tau: f64) -> Result<f64> {
    if !(r > 0.0 && r <= tau + 1e-12 * tau.max(1.0)) {
        return Err(domain(format!("r = {r} outside (0, {tau}]")));
    }
    Ok(r.min(tau))
}

/// `J(t, x) = E G(T, X_{T-t}^x)` by tensor-product Simpson against the joint density.
pub fn eval_j(t: f64, x: f64, params: &ModelParams, quad: &QuadratureSpec) -> Result<f64> {
    let tau = check_point(params, quad, t, x)?;
    if tau <= 0.0 {
        return Ok((params.sigma * x).exp());
    }
    let sigma = params.sigma;
    Ok(joint_expectation(tau, x, f64::NEG_INFINITY, params.lambda(), quad, |z| (sigma * z).exp()))
}

/// `K(t, x, r, y) = E H(t + r, X_r^x) 1{X_r^x > y}` by tensor-product Simpson.
pub fn eval_k(
    t: f64,
    x: f64,
    r: f64,
    y: f64,
    params: &ModelParams,
    quad: &QuadratureSpec,
) -> Result<f64> {
    let tau = check_point(params, quad, t, x)?;
    let r = check_step(r, tau)?;
    if !(y >= 0.0) {
        return Err(domain(format!("level y = {y} must be >= 0")));
    }
    let (lam, sigma) = (params.lambda(), params.sigma);
    let rest = tau - r;
    Ok(joint_expectation(r, x, y, lam, quad, |z| drift_h_tau(rest, z, lam, sigma)))
}

/// `E g(x v S_r - B_r) 1{x v S_r - B_r > y}` over the box
/// `s in [0, max(0, lambda) r + c sqrt r]`, `b in [lambda r - c sqrt r, s]`.
fn joint_expectation<F: Fn(f64) -> f64>(
    r: f64,
    x: f64,
    y: f64,
    lam: f64,
    quad: &QuadratureSpec,
    g: F,
) -> f64 {
    let sq = r.sqrt();
    let c = quad.trunc_c;
    let s_hi = lam.max(0.0) * r + c * sq;
    let b_lo = lam * r - c * sq;
    let inner = |s: f64| {
        let top = x.max(s);
        let b_hi = s.min(top - y);
        if b_hi <= b_lo {
            return 0.0;
        }
        simpson(
            |b| g(top - b) * joint_density_unchecked(r, b, s, lam),
            b_lo,
            b_hi,
            quad.b_panels,
        )
    };
    // The integrand in s has kinks at s = x (where x v s switches) and at
    // s = x - y (where the upper limit in b switches).
    let mut cuts = vec![0.0];
    for k in [x - y, x] {
        if k > *cuts.last().unwrap() && k < s_hi {
            cuts.push(k);
        }
    }
    cuts.push(s_hi);
    cuts.windows(2)
        .map(|w| {
            let share = (quad.s_panels as f64 * (w[1] - w[0]) / s_hi).ceil() as usize;
            simpson(&inner, w[0], w[1], share.max(2))
        })
        .sum()
}

/// Integration range of the transition route: the reflected state after time `r`
/// started at `x` lies here up to `exp(-c^2/2)` mass, after tilting by `e^{sigma z}`.
fn state_range(r: f64, x: f64, lam: f64, sigma: f64, c: f64) -> (f64, f64) {
    let sq = r.sqrt();
    let lo = (x - lam.abs() * r - c * sq).max(0.0);
    let hi = x + (lam.abs() + sigma) * r + c * sq;
    (lo, hi)
}

/// `J` by one-dimensional quadrature against the transition density of `X`.
pub fn transition_j(t: f64, x: f64, params: &ModelParams, quad: &QuadratureSpec) -> Result<f64> {
    let tau = check_point(params, quad, t, x)?;
    Ok(j_1d(tau, x, params.lambda(), params.sigma, quad))
}

/// `K` by one-dimensional quadrature against the transition density of `X`.
pub fn transition_k(
    t: f64,
    x: f64,
    r: f64,
    y: f64,
    params: &ModelParams,
    quad: &QuadratureSpec,
) -> Result<f64> {
    let tau = check_point(params, quad, t, x)?;
    let r = check_step(r, tau)?;
    if !(y >= 0.0) {
        return Err(domain(format!("level y = {y} must be >= 0")));
    }
    Ok(k_1d(tau - r, x, r, y, params.lambda(), params.sigma, quad))
}

pub(crate) fn j_1d(tau: f64, x: f64, lam: f64, sigma: f64, quad: &QuadratureSpec) -> f64 {
    if tau <= 0.0 {
        return (sigma * x).exp();
    }
    let (lo, hi) = state_range(tau, x, lam, sigma, quad.trunc_c);
    gauss_composite(
        |z| (sigma * z).exp() * transition_density(tau, x, z, lam),
        lo,
        hi,
        quad.state_panels,
    )
}

/// `K` with `rest = T - t - r` the time left after the step.
pub(crate) fn k_1d(
    rest: f64,
    x: f64,
    r: f64,
    y: f64,
    lam: f64,
    sigma: f64,
    quad: &QuadratureSpec,
) -> f64 {
    let (lo, hi) = state_range(r, x, lam, sigma, quad.trunc_c);
    let lo = lo.max(y);
    gauss_composite(
        |z| drift_h_tau(rest, z, lam, sigma) * transition_density(r, x, z, lam),
        lo,
        hi,
        quad.state_panels,
    )
}

/// Context for evaluating `int_0^{T-t} K(t, x, s, b(t + s)) ds` on a piecewise
/// linear curve.
pub(crate) struct Kernel<'a> {
    pub lam: f64,
    pub sigma: f64,
    pub horizon: f64,
    pub quad: &'a QuadratureSpec,
}

impl Kernel<'_> {
    /// Volterra integral from time `times[0]` and state `x` along the nodes
    /// `(times, levels)`, which must end at `T`.
    ///
    /// `K(t, x, s, .)` varies like `sqrt(s)` as `s -> 0` and `H(t + s, .)` like
    /// `sqrt(T - t - s)` as `t + s -> T`, so the first and last panels are
    /// integrated by Gauss-Legendre in those square roots with the level
    /// interpolated linearly. Interior nodes use the trapezoid rule.
    pub fn integral(&self, x: f64, times: &[f64], levels: &[f64]) -> f64 {
        let m = times.len();
        if m < 2 {
            return 0.0;
        }
        let t = times[0];
        if m == 2 {
            // A single panel ending at T: split it, with the level following
            // sqrt(T - u) throughout.
            let mid = 0.5 * (t + times[1]);
            let level = levels[1] + (levels[0] - levels[1]) * std::f64::consts::FRAC_1_SQRT_2;
            return self.root_panel(t, x, t, mid, levels[0], level, Singular::Start)
                + self.root_panel(t, x, mid, times[1], level, levels[1], Singular::End);
        }
        let first = self.root_panel(t, x, t, times[1], levels[0], levels[1], Singular::Start);
        let last =
            self.root_panel(t, x, times[m - 2], times[m - 1], levels[m - 2], levels[m - 1], Singular::End);
        if m == 3 {
            return first + last;
        }
        // Trapezoid on [times[1], times[m - 2]].
        let term = |j: usize| {
            let left = if j > 1 { times[j] - times[j - 1] } else { 0.0 };
            let right = if j < m - 2 { times[j + 1] - times[j] } else { 0.0 };
            let r = times[j] - t;
            0.5 * (left + right)
                * k_1d(self.horizon - times[j], x, r, levels[j], self.lam, self.sigma, self.quad)
        };
        #[cfg(feature = "parallel")]
        let terms: Vec<f64> = (1..m - 1).into_par_iter().map(term).collect();
        #[cfg(not(feature = "parallel"))]
        let terms: Vec<f64> = (1..m - 1).map(term).collect();
        first + terms.iter().sum::<f64>() + last
    }

    /// `int_{a}^{e} K(t, x, u - t, level(u)) du` with the substitution
    /// `u = a + v^2` (singular at the start) or `u = e - v^2` (at the end).
    #[allow(clippy::too_many_arguments)]
    fn root_panel(
        &self,
        t: f64,
        x: f64,
        a: f64,
        e: f64,
        level_a: f64,
        level_e: f64,
        singular: Singular,
    ) -> f64 {
        let (nodes, weights) = gl8();
        let d = e - a;
        let half = 0.5 * d.sqrt();
        let mut acc = 0.0;
        for (v, w) in nodes.iter().zip(weights) {
            let v = half * (v + 1.0);
            // Towards T the boundary behaves like sqrt(T - u), so the level is
            // interpolated linearly in v there.
            let (u, level) = match singular {
                Singular::Start => (a + v * v, level_a + (level_e - level_a) * v * v / d),
                Singular::End => (e - v * v, level_e + (level_a - level_e) * v / d.sqrt()),
            };
            let k = k_1d(self.horizon - u, x, u - t, level, self.lam, self.sigma, self.quad);
            acc += w * half * 2.0 * v * k;
        }
        acc
    }
}

#[derive(Clone, Copy)]
enum Singular {
    Start,
    End,
}

fn require_boundary_regime(params: &ModelParams) -> Result<()> {
    let s2 = params.sigma * params.sigma;
    if params.mu > 0.0 && params.mu < s2 {
        Ok(())
    } else if params.mu <= 0.0 {
        Err(Error::Regime("StopImmediately: V = G, no boundary to solve".into()))
    } else {
        Err(Error::Regime("WaitUntilEnd: V = J".into()))
    }
}

/// Solves the integral equation backward from `b(T) = 0`.
pub fn solve_boundary(
    params: &ModelParams,
    grid: &TimeGrid,
    quad: &QuadratureSpec,
) -> Result<BoundaryCurve> {
    params.validate()?;
    quad.validate()?;
    require_boundary_regime(params)?;
    if (grid.horizon() - params.horizon).abs() > 1e-12 * params.horizon {
        return Err(domain("the grid must end at the horizon"));
    }
    let nodes = grid.nodes();
    let n = grid.n_steps();
    let (lam, sigma, horizon) = (params.lambda(), params.sigma, params.horizon);
    let kernel = Kernel { lam, sigma, horizon, quad };
    let mut b = vec![0.0; n + 1];
    let mut h = vec![0.0; n + 1];
    let mut residuals = vec![0.0; n + 1];
    let mut warnings = Vec::new();
    for i in (0..n).rev() {
        let t = nodes[i];
        let tau = horizon - t;
        h[i] = h_curve(t, params, ExponentSign::Plus)?;
        let times = &nodes[i..];
        let mut levels = b[i..].to_vec();
        let mut f = |z: f64| {
            levels[0] = z;
            j_1d(tau, z, lam, sigma, quad) - gain_tau(tau, z, lam, sigma)
                - kernel.integral(z, times, &levels)
        };
        let dt = nodes[i + 1] - t;
        let (z, clamped) = find_root(&mut f, h[i], b[i + 1], dt.sqrt(), 64.0 / sigma, t)?;
        if clamped {
            warnings.push(format!("monotonicity clamp applied at t = {t}: level held at {z}"));
        }
        b[i] = z;
        residuals[i] = (f(z) / gain_tau(tau, z, lam, sigma)).abs();
    }
    h[n] = 0.0;
    Ok(BoundaryCurve {
        params: *params,
        grid: grid.clone(),
        b_values: b,
        h_values: h,
        residuals,
        quad: *quad,
        warnings,
    })
}

/// Root of `f` above `max(h, b_next)`. Returns the root and whether the
/// monotonicity clamp was applied.
fn find_root<F: FnMut(f64) -> f64>(
    f: &mut F,
    h: f64,
    b_next: f64,
    scale: f64,
    cap: f64,
    t: f64,
) -> Result<(f64, bool)> {
    let z0 = h.max(b_next);
    let f0 = f(z0);
    if f0 > 0.0 {
        // The root lies below max(h, b_next): keep the curve monotone and above h.
        return Ok((z0, true));
    }
    let (mut lo, mut flo) = (z0, f0);
    let mut step = 0.1 * scale;
    let mut hi = z0 + step;
    let fhi = loop {
        if hi > cap {
            return Err(Error::Bracket { what: "boundary level", t, cap });
        }
        let fz = f(hi);
        if fz > 0.0 {
            break fz;
        }
        (lo, flo) = (hi, fz);
        step *= 1.5;
        hi += step;
    };
    Ok((refine_bracket(f, (lo, flo), (hi, fhi)), false))
}

/// Anderson-Bjorck false position on a bracket with `f(lo) <= 0 < f(hi)`,
/// falling back to bisection whenever the secant step stalls.
fn refine_bracket<F: FnMut(f64) -> f64>(
    f: &mut F,
    (mut lo, mut flo): (f64, f64),
    (mut hi, mut fhi): (f64, f64),
) -> f64 {
    let mut side = 0i8;
    for _ in 0..200 {
        if hi - lo <= ROOT_TOL {
            break;
        }
        let mut z = hi - fhi * (hi - lo) / (fhi - flo);
        let width = hi - lo;
        if !(z > lo + 0.01 * ROOT_TOL && z < hi - 0.01 * ROOT_TOL) {
            z = 0.5 * (lo + hi);
        }
        let fz = f(z);
        if fz > 0.0 {
            let m = 1.0 - fz / fhi;
            hi = z;
            fhi = fz;
            if side == 1 {
                flo *= if m > 0.0 { m } else { 0.5 };
            }
            side = 1;
        } else {
            let m = 1.0 - fz / flo;
            lo = z;
            flo = fz;
            if side == -1 {
                fhi *= if m > 0.0 { m } else { 0.5 };
            }
            side = -1;
        }
        if fz == 0.0 {
            return z;
        }
        // Probe just beyond the estimate to close the bracket from both sides.
        if hi - lo > 0.5 * width && hi - lo > ROOT_TOL {
            let probe = if side == 1 { z - ROOT_TOL } else { z + ROOT_TOL };
            if probe > lo && probe < hi {
                let fp = f(probe);
                if fp > 0.0 {
                    hi = probe;
                    fhi = fp;
                } else {
                    lo = probe;
                    flo = fp;
                }
            }
        }
    }
    0.5 * (lo + hi)
}

/// Summary of the refined-quadrature residual of a curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualStats {
    pub max: f64,
    pub mean: f64,
    /// `|J - G - int K| / G(t, b(t))` per node; zero at `T`.
    pub per_node: Vec<f64>,
}

/// Recomputes both sides of the integral equation at every node of `curve`
/// with doubled state panels and every time panel halved, relative to `G(t, b(t))`.
pub fn boundary_residual(
    curve: &BoundaryCurve,
    params: &ModelParams,
    quad: &QuadratureSpec,
) -> Result<ResidualStats> {
    params.validate()?;
    quad.validate()?;
    let nodes = curve.grid.nodes();
    let n = curve.grid.n_steps();
    if curve.b_values.len() != n + 1 {
        return Err(domain("curve and grid lengths differ"));
    }
    if (curve.grid.horizon() - params.horizon).abs() > 1e-12 * params.horizon {
        return Err(domain("the curve grid must end at the horizon"));
    }
    let fine = quad.refined();
    let (lam, sigma, horizon) = (params.lambda(), params.sigma, params.horizon);
    let kernel = Kernel { lam, sigma, horizon, quad: &fine };
    let (times, levels) = halve_panels(nodes, &curve.b_values);
    let node_residual = |i: usize| {
        if i == n {
            return 0.0;
        }
        let t = nodes[i];
        let z = curve.b_values[i];
        let tau = horizon - t;
        let g = gain_tau(tau, z, lam, sigma);
        let f = j_1d(tau, z, lam, sigma, &fine) - g - kernel.integral(z, &times[2 * i..], &levels[2 * i..]);
        (f / g).abs()
    };
    #[cfg(feature = "parallel")]
    let per_node: Vec<f64> = (0..=n).into_par_iter().map(node_residual).collect();
    #[cfg(not(feature = "parallel"))]
    let per_node: Vec<f64> = (0..=n).map(node_residual).collect();
    let max = per_node.iter().copied().fold(0.0, f64::max);
    let mean = per_node[..n].iter().sum::<f64>() / n as f64;
    Ok(ResidualStats { max, mean, per_node })
}

/// Inserts the midpoint of every panel, with the level interpolated as in the
/// solver: linearly, except like `sqrt(T - t)` on the panel ending at `T`.
fn halve_panels(nodes: &[f64], levels: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let n = nodes.len() - 1;
    let mut times = Vec::with_capacity(2 * n + 1);
    let mut out = Vec::with_capacity(2 * n + 1);
    for j in 0..n {
        times.push(nodes[j]);
        out.push(levels[j]);
        times.push(0.5 * (nodes[j] + nodes[j + 1]));
        let mid = if j == n - 1 {
            levels[j + 1] + (levels[j] - levels[j + 1]) * std::f64::consts::FRAC_1_SQRT_2
        } else {
            0.5 * (levels[j] + levels[j + 1])
        };
        out.push(mid);
    }
    times.push(nodes[n]);
    out.push(levels[n]);
    (times, out)
}
