//! Numerical checks of the inequalities behind the optimal rules.
//!
//! Four inequalities compare expectations at a single time `t` with `sigma = 1`,
//! where `X_t^x = x v S_t - B_t` and `S^{-lambda}` is the maximum of the
//! Brownian motion with drift `-lambda`:
//!
//! | id         | statement                                          | range         |
//! |------------|----------------------------------------------------|---------------|
//! | `neg-high` | `E e^{B_t - x v S_t} >= E e^{-(x v S_t^{-lambda})}` | `lambda >= -1/2` |
//! | `neg-low`  | `E e^{B_t - x v S_t} <= E e^{-(x v S_t^{-lambda})}` | `lambda <= -1/2` |
//! | `pos-high` | `E e^{x v S_t^{-lambda}} >= E e^{x v S_t - B_t}`    | `lambda >= 1/2`  |
//! | `pos-low`  | `E e^{x v S_t^{-lambda}} <= E e^{x v S_t - B_t}`    | `lambda <= 1/2`  |
//!
//! The joint-law sides are integrated against the density of `(B_t, S_t)`; the
//! other sides are gain functions in closed form. The remaining four compare
//! stopping rules by Monte Carlo:
//!
//! | id              | objective | claimed optimum | range                 |
//! |-----------------|-----------|-----------------|-----------------------|
//! | `sup-terminal`  | `Z_tau / M_T` maximal | hold to `T` | `lambda >= 0`      |
//! | `sup-immediate` | `Z_tau / M_T` maximal | sell at once | `lambda <= 0`     |
//! | `inf-terminal`  | `M_T / Z_tau` minimal | hold to `T` | `lambda >= sigma/2` |
//! | `inf-immediate` | `M_T / Z_tau` minimal | sell at once | `lambda <= -sigma/2` |

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::gain::gain_tau;
use crate::law::joint_density_unchecked;
use crate::mc::{run_rules, Objective, SimConfig, StoppingRule};
use crate::params::ModelParams;
use crate::quad::gauss_composite;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InequalityId {
    SupTerminal,
    SupImmediate,
    InfTerminal,
    InfImmediate,
    NegHigh,
    PosHigh,
    NegLow,
    PosLow,
}

impl InequalityId {
    pub const ALL: [InequalityId; 8] = [
        InequalityId::SupTerminal,
        InequalityId::SupImmediate,
        InequalityId::InfTerminal,
        InequalityId::InfImmediate,
        InequalityId::NegHigh,
        InequalityId::PosHigh,
        InequalityId::NegLow,
        InequalityId::PosLow,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            InequalityId::SupTerminal => "sup-terminal",
            InequalityId::SupImmediate => "sup-immediate",
            InequalityId::InfTerminal => "inf-terminal",
            InequalityId::InfImmediate => "inf-immediate",
            InequalityId::NegHigh => "neg-high",
            InequalityId::PosHigh => "pos-high",
            InequalityId::NegLow => "neg-low",
            InequalityId::PosLow => "pos-low",
        }
    }

    pub fn method(self) -> Method {
        match self {
            InequalityId::SupTerminal
            | InequalityId::SupImmediate
            | InequalityId::InfTerminal
            | InequalityId::InfImmediate => Method::MonteCarlo,
            _ => Method::Quadrature,
        }
    }

    /// Whether `lambda` (with the given `sigma`) lies in the stated range.
    pub fn admits(self, lambda: f64, sigma: f64) -> bool {
        match self {
            InequalityId::SupTerminal => lambda >= 0.0,
            InequalityId::SupImmediate => lambda <= 0.0,
            InequalityId::InfTerminal => lambda >= 0.5 * sigma,
            InequalityId::InfImmediate => lambda <= -0.5 * sigma,
            InequalityId::NegHigh => lambda >= -0.5,
            InequalityId::PosHigh => lambda >= 0.5,
            InequalityId::NegLow => lambda <= -0.5,
            InequalityId::PosLow => lambda <= 0.5,
        }
    }

    /// Parameter value where the two sides coincide for every `(t, x)`, if any.
    pub fn equality_lambda(self) -> Option<f64> {
        match self {
            InequalityId::NegHigh | InequalityId::NegLow => Some(-0.5),
            InequalityId::PosHigh | InequalityId::PosLow => Some(0.5),
            _ => None,
        }
    }
}

impl fmt::Display for InequalityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for InequalityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        InequalityId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| domain(format!("unknown inequality id '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Quadrature,
    MonteCarlo,
}

/// One evaluation of an inequality. `margin >= 0` means the claimed direction holds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityEntry {
    pub lambda: f64,
    pub t: f64,
    pub x: f64,
    /// Competing rule for Monte Carlo checks.
    pub rule: Option<String>,
    pub left: f64,
    pub right: f64,
    pub margin: f64,
    pub error_bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub id: InequalityId,
    pub method: Method,
    pub entries: Vec<InequalityEntry>,
    pub passed: bool,
}

impl InequalityReport {
    fn new(id: InequalityId, entries: Vec<InequalityEntry>) -> Self {
        let passed = entries.iter().all(|e| e.margin >= -e.error_bound);
        Self { id, method: id.method(), entries, passed }
    }

    pub fn min_margin(&self) -> f64 {
        self.entries.iter().map(|e| e.margin).fold(f64::INFINITY, f64::min)
    }
}

/// Panel counts of the tensor-product Gauss-Legendre rule used for the
/// joint-law sides.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JointQuadrature {
    pub s_panels: usize,
    pub b_panels: usize,
    pub trunc_c: f64,
}

impl Default for JointQuadrature {
    fn default() -> Self {
        Self { s_panels: 24, b_panels: 24, trunc_c: 10.0 }
    }
}

/// `E g(x v S_t, B_t)` for drift `lam` by 8-point Gauss-Legendre panels on
/// `s in [0, max(0, lam) t + c sqrt t]` (split at `s = x`), `b in [lam t - c sqrt t, s]`.
fn joint_gl<G: Fn(f64, f64) -> f64>(t: f64, x: f64, lam: f64, q: &JointQuadrature, g: G) -> f64 {
    let sq = t.sqrt();
    let s_hi = lam.max(0.0) * t + q.trunc_c * sq + x;
    let b_lo = lam * t - q.trunc_c * sq - t;
    let inner = |s: f64| {
        let top = x.max(s);
        gauss_composite(|b| g(top, b) * joint_density_unchecked(t, b, s, lam), b_lo, s, q.b_panels)
    };
    if x > 0.0 {
        let left = ((q.s_panels as f64 * x / s_hi).ceil() as usize).max(2);
        gauss_composite(&inner, 0.0, x, left)
            + gauss_composite(&inner, x, s_hi, q.s_panels.saturating_sub(left).max(2))
    } else {
        gauss_composite(&inner, 0.0, s_hi, q.s_panels)
    }
}

/// `(E e^{B_t - x v S_t}, E e^{x v S_t - B_t})` for drift `lam`.
fn reflected_sides(t: f64, x: f64, lam: f64, q: &JointQuadrature) -> (f64, f64) {
    let neg = joint_gl(t, x, lam, q, |top, b| (b - top).exp());
    let pos = joint_gl(t, x, lam, q, |top, b| (top - b).exp());
    (neg, pos)
}

/// Checks one of the single-time inequalities on every `(lambda, t, x)`.
///
/// `tolerance` is added to the estimated quadrature error (the change when all
/// panel counts double) to form each entry's error bound.
pub fn check_key_inequality(
    id: InequalityId,
    lambdas: &[f64],
    points: &[(f64, f64)],
    quad: &JointQuadrature,
    tolerance: f64,
) -> Result<InequalityReport> {
    if id.method() != Method::Quadrature {
        return Err(domain(format!("{id} is checked by Monte Carlo")));
    }
    if quad.s_panels < 4 || quad.b_panels < 4 || !(quad.trunc_c >= 4.0) {
        return Err(domain("joint quadrature needs at least 4 panels and trunc_c >= 4"));
    }
    let fine = JointQuadrature { s_panels: 2 * quad.s_panels, b_panels: 2 * quad.b_panels, ..*quad };
    let mut entries = Vec::new();
    for &lam in lambdas {
        if !id.admits(lam, 1.0) {
            return Err(domain(format!("{id} does not hold for lambda = {lam}")));
        }
        for &(t, x) in points {
            if !(t > 0.0 && x >= 0.0 && t.is_finite() && x.is_finite()) {
                return Err(domain(format!("point (t, x) = ({t}, {x}) needs t > 0 and x >= 0")));
            }
            let (neg, pos) = reflected_sides(t, x, lam, quad);
            let (neg_f, pos_f) = reflected_sides(t, x, lam, &fine);
            let (left, right, err) = match id {
                InequalityId::NegHigh | InequalityId::NegLow => {
                    (neg_f, gain_tau(t, x, -lam, -1.0), (neg - neg_f).abs())
                }
                _ => (gain_tau(t, x, -lam, 1.0), pos_f, (pos - pos_f).abs()),
            };
            let margin = match id {
                InequalityId::NegHigh | InequalityId::PosHigh => left - right,
                _ => right - left,
            };
            entries.push(InequalityEntry {
                lambda: lam,
                t,
                x,
                rule: None,
                left,
                right,
                margin,
                error_bound: err + tolerance,
            });
        }
    }
    Ok(InequalityReport::new(id, entries))
}

/// Checks one of the stopping-rule inequalities by Monte Carlo with common
/// random numbers: the claimed optimum against every rule in `rules`.
/// Each entry's error bound is three pooled standard errors.
pub fn check_rule_inequality(
    id: InequalityId,
    params: &ModelParams,
    config: &SimConfig,
    rules: &[StoppingRule],
) -> Result<InequalityReport> {
    params.validate()?;
    let lam = params.lambda();
    if id.method() != Method::MonteCarlo {
        return Err(domain(format!("{id} is checked by quadrature")));
    }
    if !id.admits(lam, params.sigma) {
        return Err(domain(format!("{id} does not hold for lambda = {lam}")));
    }
    let (objective, optimum) = match id {
        InequalityId::SupTerminal => (Objective::RatioSup, StoppingRule::Terminal),
        InequalityId::SupImmediate => (Objective::RatioSup, StoppingRule::Immediate),
        InequalityId::InfTerminal => (Objective::RatioInf, StoppingRule::Terminal),
        _ => (Objective::RatioInf, StoppingRule::Immediate),
    };
    let mut all = vec![optimum.clone()];
    all.extend(rules.iter().filter(|r| **r != optimum).cloned());
    let run = run_rules(params, config, &all, objective)?;
    let best = run.estimates[0];
    let entries = (1..all.len())
        .map(|k| {
            let other = run.estimates[k];
            let margin = match objective {
                Objective::RatioSup => best.mean - other.mean,
                Objective::RatioInf => other.mean - best.mean,
            };
            InequalityEntry {
                lambda: lam,
                t: params.horizon,
                x: 0.0,
                rule: Some(run.labels[k].clone()),
                left: best.mean,
                right: other.mean,
                margin,
                error_bound: 3.0 * run.comparison(0, k).map_or(0.0, |c| c.pooled_se),
            }
        })
        .collect();
    Ok(InequalityReport::new(id, entries))
}
