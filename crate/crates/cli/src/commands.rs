use std::path::Path;

use sellmax_core::boundary::{boundary_residual, solve_boundary};
use sellmax_core::inequality::{
    check_key_inequality, check_rule_inequality, InequalityId, InequalityReport, JointQuadrature,
    Method,
};
use sellmax_core::mc::{run_rules, Objective, StoppingRule};
use sellmax_core::value::{
    classify_infimum, classify_supremum, validate_fb_conditions, value_infimum, value_v1, value_v2,
    InfimumRegime, SupremumRegime,
};
use sellmax_core::{BoundaryCurve, ModelParams, TimeGrid};
use serde_json::{json, Value};

use crate::config::{read_text, Format, RunConfig};
use crate::error::CliError;
use crate::output::{boundary_csv, boundary_json, boundary_svg, document, emit, write_to};

/// Largest accepted `|V_x(t, 0+)|`.
pub const FB_REFLECTION_TOL: f64 = 1e-3;
/// Largest accepted slope mismatch across the boundary, in units of `sigma e^{sigma b}`.
pub const FB_SMOOTH_FIT_TOL: f64 = 5e-3;

pub fn regime(c: &RunConfig) -> Result<(), CliError> {
    let p = &c.params;
    let inf = classify_infimum(p);
    let sup = classify_supremum(p);
    let half = 0.5 * p.sigma * p.sigma;
    let text = match c.format_or(Format::Text, &[Format::Text, Format::Json])? {
        Format::Json => document(
            c,
            json!({
                "infimum": inf,
                "supremum": sup,
                "thresholds": { "zero": 0.0, "half_sigma_sq": half, "sigma_sq": 2.0 * half },
            }),
        ),
        _ => format!(
            "mu = {}, sigma = {}, lambda = {}\nthresholds: 0, sigma^2/2 = {}, sigma^2 = {}\n\
             infimum: {inf:?} ({})\nsupremum: {sup:?} ({})\n",
            p.mu,
            p.sigma,
            crate::output::fmt_num(p.lambda()),
            half,
            2.0 * half,
            infimum_rule(inf),
            supremum_rule(sup),
        ),
    };
    emit(c, &text)
}

fn infimum_rule(r: InfimumRegime) -> &'static str {
    match r {
        InfimumRegime::StopImmediately => "sell at once, V = G",
        InfimumRegime::Boundary => "sell when M_t/Z_t reaches e^{sigma b(t)}",
        InfimumRegime::WaitUntilEnd => "hold until T, V = J",
    }
}

fn supremum_rule(r: SupremumRegime) -> &'static str {
    match r {
        SupremumRegime::StopImmediately => "sell at once",
        SupremumRegime::WaitUntilEnd => "hold until T",
        SupremumRegime::Tie => "selling at once and holding until T are equally good",
    }
}

fn solve(c: &RunConfig) -> Result<BoundaryCurve, CliError> {
    let grid = TimeGrid::uniform(c.params.horizon, c.steps)?;
    let curve = solve_boundary(&c.params, &grid, &c.quad)?;
    for w in &curve.warnings {
        eprintln!("warning: {w}");
    }
    Ok(curve)
}

pub fn boundary(c: &RunConfig, svg: Option<&Path>) -> Result<(), CliError> {
    let format = c.format_or(Format::Csv, &[Format::Csv, Format::Json])?;
    let curve = solve(c)?;
    let stats = boundary_residual(&curve, &c.params, &c.quad)?;
    let text = match format {
        Format::Json => document(c, boundary_json(&curve, &stats.per_node)),
        _ => boundary_csv(&curve, &stats.per_node),
    };
    emit(c, &text)?;
    if let Some(path) = svg {
        write_to(path, &boundary_svg(&curve))?;
    }
    if stats.max > c.tol {
        return Err(CliError::Verification(format!(
            "max refined residual {:e} exceeds --tol {:e}",
            stats.max, c.tol
        )));
    }
    Ok(())
}

/// Reads a curve written by `boundary` in either format.
pub fn load_curve(path: &Path, c: &RunConfig) -> Result<BoundaryCurve, CliError> {
    let text = read_text(path)?;
    let bad = |m: &str| CliError::Usage(format!("{}: {m}", path.display()));
    let (params, nodes, b, h) = if text.trim_start().starts_with('{') {
        let v: Value = serde_json::from_str(&text).map_err(|e| bad(&e.to_string()))?;
        let r = v.get("results").unwrap_or(&v);
        let floats = |key: &str| -> Result<Vec<f64>, CliError> {
            r.get(key)
                .and_then(Value::as_array)
                .and_then(|a| a.iter().map(Value::as_f64).collect::<Option<Vec<f64>>>())
                .ok_or_else(|| bad(&format!("missing numeric array '{key}'")))
        };
        let params: ModelParams = serde_json::from_value(r.get("params").cloned().unwrap_or_default())
            .map_err(|_| bad("missing params"))?;
        (params, floats("grid")?, floats("b")?, floats("h")?)
    } else {
        let mut lines = text.lines();
        if lines.next().map(str::trim) != Some("t,b,h,residual") {
            return Err(bad("expected the header t,b,h,residual"));
        }
        let (mut t, mut b, mut h) = (Vec::new(), Vec::new(), Vec::new());
        for line in lines.filter(|l| !l.trim().is_empty()) {
            let cols: Vec<f64> = line
                .split(',')
                .map(|x| x.trim().parse::<f64>())
                .collect::<Result<_, _>>()
                .map_err(|_| bad(&format!("bad row '{line}'")))?;
            if cols.len() != 4 {
                return Err(bad(&format!("bad row '{line}'")));
            }
            t.push(cols[0]);
            b.push(cols[1]);
            h.push(cols[2]);
        }
        (c.params, t, b, h)
    };
    if params != c.params {
        let close = (params.mu - c.params.mu).abs() < 1e-9
            && (params.sigma - c.params.sigma).abs() < 1e-9
            && (params.horizon - c.params.horizon).abs() < 1e-9;
        if !close {
            return Err(bad("curve was computed for different parameters"));
        }
    }
    if b.len() != nodes.len() || h.len() != nodes.len() {
        return Err(bad("columns have different lengths"));
    }
    let n = nodes.len();
    Ok(BoundaryCurve {
        params: c.params,
        grid: TimeGrid::from_nodes(nodes)?,
        b_values: b,
        h_values: h,
        residuals: vec![0.0; n],
        quad: c.quad,
        warnings: Vec::new(),
    })
}

/// The curve for the boundary regime: from a file, solved inline, or missing.
fn curve_for(
    c: &RunConfig,
    file: Option<&Path>,
    no_solve: bool,
) -> Result<Option<BoundaryCurve>, CliError> {
    if let Some(path) = file {
        return load_curve(path, c).map(Some);
    }
    if classify_infimum(&c.params) != InfimumRegime::Boundary || no_solve {
        return Ok(None);
    }
    solve(c).map(Some)
}

pub fn value(
    c: &RunConfig,
    t: f64,
    x: f64,
    file: Option<&Path>,
    no_solve: bool,
) -> Result<(), CliError> {
    c.format_or(Format::Json, &[Format::Json])?;
    let curve = curve_for(c, file, no_solve)?;
    let inf_value = if t == 0.0 && x == 0.0 {
        value_v1(&c.params, curve.as_ref(), &c.quad)?.value
    } else {
        value_infimum(t, x, &c.params, curve.as_ref(), &c.quad)?
    };
    let inf = classify_infimum(&c.params);
    let threshold: Option<Vec<[f64; 2]>> = curve.as_ref().map(|cv| {
        cv.grid.nodes().iter().map(|&s| [s, cv.ratio_threshold(s)]).collect()
    });
    let v2 = value_v2(&c.params)?;
    let results = json!({
        "infimum": {
            "t": t,
            "x": x,
            "value": inf_value,
            "regime": inf,
            "rule": infimum_rule(inf),
            "threshold": threshold,
        },
        "supremum": {
            "value": v2.value,
            "regime": v2.regime,
            "rule": supremum_rule(v2.regime),
            "immediate_value": v2.immediate_value,
            "terminal_value": v2.terminal_value,
        },
    });
    emit(c, &document(c, results))
}

/// Parses `immediate`, `terminal`, `fixed:T`, `ratio:C` and `boundary`.
pub fn parse_rules(spec: &str) -> Result<Vec<RuleSpec>, CliError> {
    spec.split(',')
        .map(|r| {
            let r = r.trim();
            let num = |v: &str| {
                v.parse::<f64>().map_err(|_| CliError::Usage(format!("bad number in rule '{r}'")))
            };
            match r.split_once(':') {
                None if r == "immediate" => Ok(RuleSpec::Immediate),
                None if r == "terminal" => Ok(RuleSpec::Terminal),
                None if r == "boundary" => Ok(RuleSpec::Boundary),
                Some(("fixed", v)) => Ok(RuleSpec::Fixed(num(v)?)),
                Some(("ratio", v)) => Ok(RuleSpec::Ratio(num(v)?)),
                _ => Err(CliError::Usage(format!(
                    "unknown rule '{r}' (expected immediate, terminal, fixed:T, ratio:C or boundary)"
                ))),
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RuleSpec {
    Immediate,
    Terminal,
    Fixed(f64),
    Ratio(f64),
    Boundary,
}

pub fn simulate(
    c: &RunConfig,
    rules: &[RuleSpec],
    objective: Objective,
    file: Option<&Path>,
) -> Result<(), CliError> {
    c.format_or(Format::Json, &[Format::Json])?;
    let needs_curve = rules.contains(&RuleSpec::Boundary);
    let curve = if needs_curve {
        match curve_for(c, file, false)? {
            Some(cv) => Some(cv),
            None => {
                return Err(CliError::Regime(format!(
                    "{:?}: the boundary rule needs 0 < mu < sigma^2 or --boundary-file",
                    classify_infimum(&c.params)
                )))
            }
        }
    } else {
        None
    };
    let compiled: Vec<StoppingRule> = rules
        .iter()
        .map(|r| match r {
            RuleSpec::Immediate => StoppingRule::Immediate,
            RuleSpec::Terminal => StoppingRule::Terminal,
            RuleSpec::Fixed(t) => StoppingRule::FixedTime(*t),
            RuleSpec::Ratio(k) => StoppingRule::RatioThreshold(*k),
            RuleSpec::Boundary => StoppingRule::BoundaryRatio(curve.clone().expect("curve loaded")),
        })
        .collect();
    let run = run_rules(&c.params, &c.sim, &compiled, objective)?;
    let results = json!({
        "objective": match objective { Objective::RatioInf => "ratio-inf", Objective::RatioSup => "ratio-sup" },
        "rules": run.labels,
        "estimates": run.estimates,
        "comparisons": run.comparisons,
    });
    emit(c, &document(c, results))
}

/// What `verify` should check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Check {
    Inequality(InequalityId),
    FreeBoundary,
}

pub fn parse_checks(spec: Option<&str>) -> Result<Vec<Check>, CliError> {
    let Some(spec) = spec else {
        let mut all: Vec<Check> = InequalityId::ALL.into_iter().map(Check::Inequality).collect();
        all.push(Check::FreeBoundary);
        return Ok(all);
    };
    spec.split(',')
        .map(|s| match s.trim() {
            "fb" => Ok(Check::FreeBoundary),
            id => id.parse().map(Check::Inequality).map_err(|e: sellmax_core::Error| {
                CliError::Usage(format!("{e}; expected an inequality id or fb"))
            }),
        })
        .collect()
}

fn default_lambdas(id: InequalityId) -> &'static [f64] {
    match id {
        InequalityId::NegHigh => &[-0.5, -0.25, 0.0, 0.5, 1.0],
        InequalityId::PosHigh => &[0.5, 1.0, 2.0],
        InequalityId::NegLow => &[-2.0, -1.0, -0.5],
        _ => &[-1.0, 0.0, 0.5],
    }
}

/// Default `lambda` for each Monte Carlo check, inside its stated range.
fn default_mc_lambda(id: InequalityId) -> f64 {
    match id {
        InequalityId::SupTerminal => 0.5,
        InequalityId::SupImmediate => -0.3,
        InequalityId::InfTerminal => 1.0,
        _ => -1.0,
    }
}

pub fn verify(
    c: &RunConfig,
    checks: &[Check],
    lambdas: Option<&[f64]>,
    fb_times: usize,
) -> Result<(), CliError> {
    c.format_or(Format::Json, &[Format::Json])?;
    let points: Vec<(f64, f64)> =
        (1..=5).flat_map(|i| (0..5).map(move |j| (0.2 * i as f64, 0.5 * j as f64))).collect();
    let mut reports: Vec<InequalityReport> = Vec::new();
    let mut fb = Value::Null;
    let mut passed = true;
    for check in checks {
        match *check {
            Check::Inequality(id) if id.method() == Method::Quadrature => {
                let lams = lambdas.unwrap_or(default_lambdas(id));
                let r = check_key_inequality(id, lams, &points, &JointQuadrature::default(), 1e-6)?;
                passed &= r.passed;
                reports.push(r);
            }
            Check::Inequality(id) => {
                let params = if c.mu_given {
                    c.params
                } else {
                    let s = c.params.sigma;
                    ModelParams::new(s * default_mc_lambda(id) + 0.5 * s * s, s, c.params.horizon)?
                };
                let h = params.horizon;
                let rules = [
                    StoppingRule::Immediate,
                    StoppingRule::FixedTime(0.5 * h),
                    StoppingRule::RatioThreshold(1.2),
                    StoppingRule::Terminal,
                ];
                let r = check_rule_inequality(id, &params, &c.sim, &rules)?;
                passed &= r.passed;
                reports.push(r);
            }
            Check::FreeBoundary => {
                let curve = solve(c)?;
                let r = validate_fb_conditions(&c.params, Some(&curve), &c.quad, fb_times)?;
                let ok = r.max_normal_reflection <= FB_REFLECTION_TOL
                    && r.max_smooth_fit <= FB_SMOOTH_FIT_TOL;
                passed &= ok;
                fb = json!({
                    "passed": ok,
                    "reflection_tol": FB_REFLECTION_TOL,
                    "smooth_fit_tol": FB_SMOOTH_FIT_TOL,
                    "report": r,
                });
            }
        }
    }
    for r in &reports {
        eprintln!("{}: {} (min margin {:.2e})", r.id, if r.passed { "pass" } else { "FAIL" }, r.min_margin());
    }
    if let Some(ok) = fb.get("passed").and_then(Value::as_bool) {
        eprintln!("fb: {}", if ok { "pass" } else { "FAIL" });
    }
    let results = json!({ "passed": passed, "inequalities": reports, "free_boundary": fb });
    emit(c, &document(c, results))?;
    if passed {
        Ok(())
    } else {
        Err(CliError::Verification("verification failed".into()))
    }
}
