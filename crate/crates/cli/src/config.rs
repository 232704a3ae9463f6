//! Run configuration: command line over config file over built-in defaults.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, ValueEnum};
use sellmax_core::mc::SimConfig;
use sellmax_core::{ModelParams, QuadratureSpec};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <Format as ValueEnum>::from_str(s, false)
    }
}

/// Flags accepted by every subcommand. Each may also be set in the config file
/// under the same name without the leading dashes.
#[derive(Debug, Default, Args)]
pub struct SharedArgs {
    /// Drift of the stock [default: 0.5]
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub mu: Option<f64>,
    /// Volatility of the stock [default: 1]
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub sigma: Option<f64>,
    /// Time horizon T [default: 1]
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub horizon: Option<f64>,
    /// Time steps of the boundary grid [default: 200]
    #[arg(long, global = true)]
    pub steps: Option<usize>,
    /// Panels of every state-space quadrature [default: 64]
    #[arg(long, global = true)]
    pub quad_panels: Option<usize>,
    /// Truncation width in standard deviations [default: 8]
    #[arg(long, global = true)]
    pub trunc_c: Option<f64>,
    /// Monte Carlo paths [default: 100000]
    #[arg(long, global = true)]
    pub paths: Option<usize>,
    /// Monte Carlo time steps [default: 1000]
    #[arg(long, global = true)]
    pub mc_steps: Option<usize>,
    /// Monte Carlo seed [default: 0]
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Largest accepted relative boundary residual [default: 1e-3]
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Output format; the default depends on the subcommand
    #[arg(long, global = true)]
    pub format: Option<Format>,
    /// Write the main output here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Flat `key = value` file supplying defaults for the flags above
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub params: ModelParams,
    /// Whether the drift was set explicitly rather than by default.
    pub mu_given: bool,
    pub steps: usize,
    pub quad: QuadratureSpec,
    pub sim: SimConfig,
    pub tol: f64,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
}

const KEYS: [&str; 12] = [
    "mu", "sigma", "horizon", "steps", "quad-panels", "trunc-c", "paths", "mc-steps", "seed", "tol",
    "format", "out",
];

/// Parses `key = value` lines; `#` starts a comment.
pub fn parse_config_file(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut map = BTreeMap::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("config line {}: expected key = value", no + 1)))?;
        let key = key.trim().replace('_', "-");
        if !KEYS.contains(&key.as_str()) {
            return Err(CliError::Usage(format!("config line {}: unknown key '{key}'", no + 1)));
        }
        map.insert(key, value.trim().to_string());
    }
    Ok(map)
}

fn pick<T: FromStr>(
    cli: Option<T>,
    file: &BTreeMap<String, String>,
    key: &str,
) -> Result<Option<T>, CliError> {
    if cli.is_some() {
        return Ok(cli);
    }
    match file.get(key) {
        None => Ok(None),
        Some(v) => v
            .parse()
            .map(Some)
            .map_err(|_| CliError::Usage(format!("config key '{key}': cannot parse '{v}'"))),
    }
}

impl RunConfig {
    pub fn resolve(args: &SharedArgs) -> Result<Self, CliError> {
        let file = match &args.config {
            Some(path) => parse_config_file(&read_text(path)?)?,
            None => BTreeMap::new(),
        };
        Self::merge(args, &file)
    }

    pub fn merge(args: &SharedArgs, file: &BTreeMap<String, String>) -> Result<Self, CliError> {
        let mu = pick(args.mu, file, "mu")?;
        let sigma = pick(args.sigma, file, "sigma")?.unwrap_or(1.0);
        let horizon = pick(args.horizon, file, "horizon")?.unwrap_or(1.0);
        let params = ModelParams::new(mu.unwrap_or(0.5), sigma, horizon)?;
        let steps = pick(args.steps, file, "steps")?.unwrap_or(200);
        if steps < 2 {
            return Err(CliError::Usage("--steps must be at least 2".into()));
        }
        let panels = pick(args.quad_panels, file, "quad-panels")?;
        let mut quad = QuadratureSpec::default();
        if let Some(p) = panels {
            quad.s_panels = p;
            quad.b_panels = p;
            quad.state_panels = (p / 8).max(4);
        }
        quad.trunc_c = pick(args.trunc_c, file, "trunc-c")?.unwrap_or(quad.trunc_c);
        quad.validate()?;
        let sim = SimConfig {
            n_paths: pick(args.paths, file, "paths")?.unwrap_or(100_000),
            n_steps: pick(args.mc_steps, file, "mc-steps")?.unwrap_or(1_000),
            seed: pick(args.seed, file, "seed")?.unwrap_or(0),
            ..SimConfig::default()
        };
        sim.validate()?;
        let tol = pick(args.tol, file, "tol")?.unwrap_or(1e-3);
        if tol.is_nan() || tol <= 0.0 {
            return Err(CliError::Usage("--tol must be positive".into()));
        }
        Ok(Self {
            params,
            mu_given: mu.is_some(),
            steps,
            quad,
            sim,
            tol,
            format: pick(args.format, file, "format")?,
            out: pick(args.out.clone(), file, "out")?,
        })
    }

    pub fn format_or(&self, default: Format, allowed: &[Format]) -> Result<Format, CliError> {
        let f = self.format.unwrap_or(default);
        if allowed.contains(&f) {
            Ok(f)
        } else {
            Err(CliError::Usage(format!("format {f:?} is not available for this subcommand")))
        }
    }
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn command_line_overrides_file_overrides_defaults() {
        let file = parse_config_file("# comment\nmu = 0.3\nsigma=2\nmc_steps = 50\n").unwrap();
        let args = SharedArgs { mu: Some(0.7), ..Default::default() };
        let c = RunConfig::merge(&args, &file).unwrap();
        assert_eq!(c.params.mu, 0.7);
        assert_eq!(c.params.sigma, 2.0);
        assert_eq!(c.sim.n_steps, 50);
        assert_eq!(c.params.horizon, 1.0);
        assert!(c.mu_given);
        let d = RunConfig::merge(&SharedArgs::default(), &BTreeMap::new()).unwrap();
        assert!(!d.mu_given);
        assert_eq!(d.steps, 200);
    }

    #[test]
    fn bad_files_are_usage_errors() {
        assert!(matches!(parse_config_file("speed = 3"), Err(CliError::Usage(_))));
        assert!(matches!(parse_config_file("mu 3"), Err(CliError::Usage(_))));
        let file = parse_config_file("sigma = abc").unwrap();
        assert!(RunConfig::merge(&SharedArgs::default(), &file).is_err());
    }
}
