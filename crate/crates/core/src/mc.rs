//! Monte Carlo simulation of the stock, its running maximum and stopping rules.
//!
//! Each path draws from its own ChaCha8 stream (`seed`, stream = path index) and
//! results are reduced in path order, so estimates do not depend on how paths
//! are scheduled across threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::boundary::BoundaryCurve;
use crate::error::{domain, Error, Result};
use crate::params::ModelParams;

/// Simulation settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub n_paths: usize,
    pub n_steps: usize,
    pub seed: u64,
    /// Sample the maximum of the Brownian bridge inside every step.
    pub bridge_max: bool,
    pub z0: f64,
    /// Largest number of stored values a materialized [`Ensemble`] may hold.
    pub memory_budget: usize,
}

impl Default for SimConfig {
    fn default() -> Self {
        Self {
            n_paths: 100_000,
            n_steps: 1_000,
            seed: 0,
            bridge_max: true,
            z0: 1.0,
            memory_budget: 1 << 25,
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_paths < 1 || self.n_steps < 1 {
            return Err(domain("n_paths and n_steps must be at least 1"));
        }
        if !(self.z0 > 0.0 && self.z0.is_finite()) {
            return Err(domain(format!("z0 must be > 0, got {}", self.z0)));
        }
        Ok(())
    }
}

/// Which ratio is averaged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Objective {
    /// `M_T / Z_tau`, to be minimized.
    RatioInf,
    /// `Z_tau / M_T`, to be maximized.
    RatioSup,
}

/// A stopping rule evaluated on the simulation grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum StoppingRule {
    Immediate,
    Terminal,
    /// Stop at the first grid time `>= t`.
    FixedTime(f64),
    /// Stop the first time `M_t / Z_t >= c`.
    RatioThreshold(f64),
    /// Stop the first time `M_t / Z_t >= e^{sigma b(t)}`.
    BoundaryRatio(BoundaryCurve),
}

impl StoppingRule {
    pub fn label(&self) -> String {
        match self {
            StoppingRule::Immediate => "immediate".into(),
            StoppingRule::Terminal => "terminal".into(),
            StoppingRule::FixedTime(t) => format!("fixed:{t}"),
            StoppingRule::RatioThreshold(c) => format!("ratio:{c}"),
            StoppingRule::BoundaryRatio(_) => "boundary".into(),
        }
    }
}

/// A rule reduced to a per-step test on `log(M_t / Z_t)`.
#[derive(Debug, Clone)]
enum Compiled {
    Index(usize),
    /// Stop when the log ratio reaches the level of the step.
    Levels(Vec<f64>),
}

impl Compiled {
    fn new(rule: &StoppingRule, params: &ModelParams, n_steps: usize) -> Result<Self> {
        let dt = params.horizon / n_steps as f64;
        Ok(match rule {
            StoppingRule::Immediate => Compiled::Index(0),
            StoppingRule::Terminal => Compiled::Index(n_steps),
            StoppingRule::FixedTime(t) => {
                if !(*t >= 0.0 && *t <= params.horizon) {
                    return Err(domain(format!("fixed time {t} outside [0, {}]", params.horizon)));
                }
                let k = ((t / dt) - 1e-9).ceil().max(0.0) as usize;
                Compiled::Index(k.min(n_steps))
            }
            StoppingRule::RatioThreshold(c) => {
                if !(*c >= 1.0 && c.is_finite()) {
                    return Err(domain(format!("ratio threshold must be >= 1, got {c}")));
                }
                Compiled::Levels(vec![c.ln(); n_steps + 1])
            }
            StoppingRule::BoundaryRatio(curve) => {
                if (curve.grid.horizon() - params.horizon).abs() > 1e-12 * params.horizon {
                    return Err(domain("the boundary curve horizon differs from the model horizon"));
                }
                let levels = (0..=n_steps)
                    .map(|k| params.sigma * curve.b_at(params.horizon * k as f64 / n_steps as f64))
                    .collect();
                Compiled::Levels(levels)
            }
        })
    }

    /// Whether to stop at step `k` given `log(M_k / Z_k)`; only the present is used.
    #[inline]
    fn stops(&self, k: usize, log_ratio: f64) -> bool {
        match self {
            Compiled::Index(i) => k >= *i,
            Compiled::Levels(l) => log_ratio >= l[k],
        }
    }
}

/// Generator of one path of `log Z` and its running maximum.
struct PathSim {
    rng: ChaCha8Rng,
    drift: f64,
    vol: f64,
    var: f64,
    bridge: bool,
}

impl PathSim {
    fn new(params: &ModelParams, config: &SimConfig, index: usize) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        rng.set_stream(index as u64);
        let dt = params.horizon / config.n_steps as f64;
        let vol = params.sigma * dt.sqrt();
        Self {
            rng,
            drift: (params.mu - 0.5 * params.sigma * params.sigma) * dt,
            vol,
            var: vol * vol,
            bridge: config.bridge_max,
        }
    }

    /// Advances `(log z, log m)` by one step.
    #[inline]
    fn step(&mut self, log_z: f64, log_m: f64) -> (f64, f64) {
        let xi: f64 = self.rng.sample(StandardNormal);
        let next = log_z + self.drift + self.vol * xi;
        let top = if self.bridge {
            // Maximum of a Brownian bridge from log_z to next by inversion.
            let u: f64 = self.rng.random();
            let d = next - log_z;
            0.5 * (log_z + next + (d * d - 2.0 * self.var * (1.0 - u).ln()).sqrt())
        } else {
            next
        };
        (next, log_m.max(top))
    }
}

/// Stopped log price of every rule and the final log maximum, for one path.
fn run_path(
    params: &ModelParams,
    config: &SimConfig,
    rules: &[Compiled],
    index: usize,
    stopped: &mut [f64],
) -> f64 {
    let mut sim = PathSim::new(params, config, index);
    let (mut log_z, mut log_m) = (0.0, 0.0);
    let mut open = rules.len();
    let mut done = vec![false; rules.len()];
    for k in 0..=config.n_steps {
        if k > 0 {
            (log_z, log_m) = sim.step(log_z, log_m);
        }
        if open > 0 {
            for (r, rule) in rules.iter().enumerate() {
                if !done[r] && rule.stops(k, log_m - log_z) {
                    done[r] = true;
                    stopped[r] = log_z;
                    open -= 1;
                }
            }
        }
    }
    for (r, d) in done.iter().enumerate() {
        if !d {
            stopped[r] = log_z;
        }
    }
    log_m
}

#[inline]
fn objective_value(objective: Objective, log_m: f64, log_z_tau: f64) -> f64 {
    match objective {
        Objective::RatioInf => (log_m - log_z_tau).exp(),
        Objective::RatioSup => (log_z_tau - log_m).exp(),
    }
}

/// Mean and standard error of an objective under one rule.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub n_paths: usize,
    pub seed: u64,
}

/// Difference of two rules' estimates on the same paths.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McComparison {
    pub first: usize,
    pub second: usize,
    /// Mean of `first` minus mean of `second`.
    pub difference: f64,
    /// `sqrt(se_first^2 + se_second^2)`.
    pub pooled_se: f64,
    /// Standard error of the per-path differences.
    pub paired_se: f64,
}

/// Estimates for several rules evaluated on one shared set of paths.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McRun {
    pub labels: Vec<String>,
    pub estimates: Vec<McEstimate>,
    pub comparisons: Vec<McComparison>,
}

impl McRun {
    pub fn comparison(&self, first: usize, second: usize) -> Option<&McComparison> {
        self.comparisons.iter().find(|c| c.first == first && c.second == second)
    }
}

fn mean_and_se(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
    (mean, (ss / (n - 1.0) / n).sqrt())
}

/// Per-path objective values, `values[path * rules + rule]`.
fn path_values(
    params: &ModelParams,
    config: &SimConfig,
    rules: &[Compiled],
    objective: Objective,
) -> Vec<f64> {
    let width = rules.len();
    let one = |i: usize| {
        let mut stopped = vec![0.0; width];
        let log_m = run_path(params, config, rules, i, &mut stopped);
        stopped.into_iter().map(|z| objective_value(objective, log_m, z)).collect::<Vec<f64>>()
    };
    #[cfg(feature = "parallel")]
    let rows: Vec<Vec<f64>> = (0..config.n_paths).into_par_iter().map(one).collect();
    #[cfg(not(feature = "parallel"))]
    let rows: Vec<Vec<f64>> = (0..config.n_paths).map(one).collect();
    rows.concat()
}

/// Simulates `config.n_paths` paths once, without storing them, and evaluates
/// every rule on each path.
pub fn run_rules(
    params: &ModelParams,
    config: &SimConfig,
    rules: &[StoppingRule],
    objective: Objective,
) -> Result<McRun> {
    params.validate()?;
    config.validate()?;
    if rules.is_empty() {
        return Err(domain("at least one stopping rule is required"));
    }
    let compiled: Vec<Compiled> =
        rules.iter().map(|r| Compiled::new(r, params, config.n_steps)).collect::<Result<_>>()?;
    let values = path_values(params, config, &compiled, objective);
    Ok(summarize(rules, &values, config))
}

fn summarize(rules: &[StoppingRule], values: &[f64], config: &SimConfig) -> McRun {
    let width = rules.len();
    let column = |r: usize| values.iter().skip(r).step_by(width).copied().collect::<Vec<f64>>();
    let columns: Vec<Vec<f64>> = (0..width).map(column).collect();
    let estimates: Vec<McEstimate> = columns
        .iter()
        .map(|c| {
            let (mean, std_error) = mean_and_se(c);
            McEstimate { mean, std_error, n_paths: config.n_paths, seed: config.seed }
        })
        .collect();
    let mut comparisons = Vec::new();
    for a in 0..width {
        for b in a + 1..width {
            let diffs: Vec<f64> = columns[a].iter().zip(&columns[b]).map(|(x, y)| x - y).collect();
            let (difference, paired_se) = mean_and_se(&diffs);
            let pooled_se = estimates[a].std_error.hypot(estimates[b].std_error);
            comparisons.push(McComparison { first: a, second: b, difference, pooled_se, paired_se });
        }
    }
    McRun { labels: rules.iter().map(StoppingRule::label).collect(), estimates, comparisons }
}

/// Stored paths of `Z` and of its running maximum `M` on the simulation grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Ensemble {
    pub params: ModelParams,
    pub config: SimConfig,
    /// `log(Z_k / Z_0)` row by row, `n_steps + 1` values per path.
    pub log_z: Vec<f64>,
    /// `log(M_k / Z_0)` with the same layout.
    pub log_m: Vec<f64>,
}

impl Ensemble {
    pub fn times(&self) -> Vec<f64> {
        let n = self.config.n_steps;
        (0..=n).map(|k| self.params.horizon * k as f64 / n as f64).collect()
    }

    pub fn path(&self, i: usize) -> (&[f64], &[f64]) {
        let w = self.config.n_steps + 1;
        (&self.log_z[i * w..(i + 1) * w], &self.log_m[i * w..(i + 1) * w])
    }

    /// Price `Z_k` of path `i`.
    pub fn price(&self, i: usize, k: usize) -> f64 {
        self.config.z0 * self.path(i).0[k].exp()
    }

    /// Running maximum `M_k` of path `i`.
    pub fn maximum(&self, i: usize, k: usize) -> f64 {
        self.config.z0 * self.path(i).1[k].exp()
    }
}

/// Simulates and stores every path. Fails with a resource error when the
/// ensemble would exceed `config.memory_budget` values; use [`run_rules`] then.
pub fn simulate_ensemble(params: &ModelParams, config: &SimConfig) -> Result<Ensemble> {
    params.validate()?;
    config.validate()?;
    let w = config.n_steps + 1;
    let needed = config.n_paths.checked_mul(w).and_then(|v| v.checked_mul(2));
    match needed {
        Some(v) if v <= config.memory_budget => {}
        _ => {
            return Err(Error::Resource(format!(
                "{} paths of {} steps exceed the budget of {} stored values; use streaming estimation",
                config.n_paths, config.n_steps, config.memory_budget
            )))
        }
    }
    let one = |i: usize| {
        let mut sim = PathSim::new(params, config, i);
        let mut z = Vec::with_capacity(w);
        let mut m = Vec::with_capacity(w);
        let (mut log_z, mut log_m) = (0.0, 0.0);
        z.push(log_z);
        m.push(log_m);
        for _ in 0..config.n_steps {
            (log_z, log_m) = sim.step(log_z, log_m);
            z.push(log_z);
            m.push(log_m);
        }
        (z, m)
    };
    #[cfg(feature = "parallel")]
    let rows: Vec<(Vec<f64>, Vec<f64>)> = (0..config.n_paths).into_par_iter().map(one).collect();
    #[cfg(not(feature = "parallel"))]
    let rows: Vec<(Vec<f64>, Vec<f64>)> = (0..config.n_paths).map(one).collect();
    let mut log_z = Vec::with_capacity(config.n_paths * w);
    let mut log_m = Vec::with_capacity(config.n_paths * w);
    for (z, m) in rows {
        log_z.extend(z);
        log_m.extend(m);
    }
    Ok(Ensemble { params: *params, config: *config, log_z, log_m })
}

/// Index of the grid time at which `rule` stops the stored path `(log_z, log_m)`.
pub fn stopping_index(
    rule: &StoppingRule,
    params: &ModelParams,
    log_z: &[f64],
    log_m: &[f64],
) -> Result<usize> {
    if log_z.len() < 2 || log_z.len() != log_m.len() {
        return Err(domain("a path needs matching price and maximum arrays of length >= 2"));
    }
    let n = log_z.len() - 1;
    let rule = Compiled::new(rule, params, n)?;
    Ok((0..=n).find(|&k| rule.stops(k, log_m[k] - log_z[k])).unwrap_or(n))
}

/// Estimate of the objective under `rule` on a stored ensemble. Identical to
/// the corresponding entry of [`run_rules`] with the same configuration.
pub fn estimate_objective(
    ensemble: &Ensemble,
    rule: &StoppingRule,
    objective: Objective,
) -> Result<McEstimate> {
    let n = ensemble.config.n_steps;
    let compiled = Compiled::new(rule, &ensemble.params, n)?;
    let values: Vec<f64> = (0..ensemble.config.n_paths)
        .map(|i| {
            let (z, m) = ensemble.path(i);
            let k = (0..=n).find(|&k| compiled.stops(k, m[k] - z[k])).unwrap_or(n);
            objective_value(objective, m[n], z[k])
        })
        .collect();
    let (mean, std_error) = mean_and_se(&values);
    Ok(McEstimate {
        mean,
        std_error,
        n_paths: ensemble.config.n_paths,
        seed: ensemble.config.seed,
    })
}
