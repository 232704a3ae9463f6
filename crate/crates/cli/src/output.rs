//! Serialization: 12 significant digits, '.' decimal, versioned JSON documents.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use sellmax_core::BoundaryCurve;
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;
const DIGITS: usize = 12;

/// `v` rounded to 12 significant digits.
pub fn round_sig(v: f64) -> f64 {
    if !v.is_finite() || v == 0.0 {
        return v;
    }
    format!("{:.*e}", DIGITS - 1, v).parse().unwrap_or(v)
}

/// Shortest text for `v` after rounding; plain notation for moderate magnitudes.
pub fn fmt_num(v: f64) -> String {
    let r = round_sig(v);
    if r == 0.0 {
        return "0".into();
    }
    let a = r.abs();
    if (1e-5..1e15).contains(&a) {
        format!("{r}")
    } else {
        format!("{r:e}")
    }
}

/// Rounds every float inside a JSON value.
pub fn round_json(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let f = n.as_f64().unwrap_or(f64::NAN);
            serde_json::Number::from_f64(round_sig(f)).map(Value::Number).unwrap_or(Value::Null)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(round_json).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, round_json(v))).collect()),
        other => other,
    }
}

pub fn config_json(c: &RunConfig) -> Value {
    json!({
        "steps": c.steps,
        "quad": c.quad,
        "sim": { "paths": c.sim.n_paths, "steps": c.sim.n_steps, "seed": c.sim.seed,
                 "bridge_max": c.sim.bridge_max },
        "tol": c.tol,
    })
}

/// The common document shape `{schema_version, params, config, results}`.
pub fn document(c: &RunConfig, results: Value) -> String {
    let doc = json!({
        "schema_version": SCHEMA_VERSION,
        "params": { "mu": c.params.mu, "sigma": c.params.sigma, "horizon": c.params.horizon,
                    "lambda": c.params.lambda() },
        "config": config_json(c),
        "results": results,
    });
    let mut s = serde_json::to_string_pretty(&round_json(doc)).expect("JSON values serialize");
    s.push('\n');
    s
}

pub fn boundary_json(curve: &BoundaryCurve, residuals: &[f64]) -> Value {
    json!({
        "params": curve.params,
        "grid": curve.grid.nodes(),
        "b": curve.b_values,
        "h": curve.h_values,
        "residuals": residuals,
        "solver_config": curve.quad,
        "warnings": curve.warnings,
    })
}

pub fn boundary_csv(curve: &BoundaryCurve, residuals: &[f64]) -> String {
    let mut s = String::from("t,b,h,residual\n");
    for (i, t) in curve.grid.nodes().iter().enumerate() {
        let _ = writeln!(
            s,
            "{},{},{},{}",
            fmt_num(*t),
            fmt_num(curve.b_values[i]),
            fmt_num(curve.h_values[i]),
            fmt_num(residuals[i])
        );
    }
    s
}

/// Plot of `b` and `h` over `[0, T]` with axes and a legend.
pub fn boundary_svg(curve: &BoundaryCurve) -> String {
    let (w, h, pad) = (640.0, 400.0, 50.0);
    let horizon = curve.grid.horizon();
    let top = curve.b_values.iter().chain(&curve.h_values).copied().fold(0.0, f64::max).max(1e-12);
    let px = |t: f64| pad + (w - 2.0 * pad) * t / horizon;
    let py = |y: f64| h - pad - (h - 2.0 * pad) * y / top;
    let line = |ys: &[f64]| {
        curve
            .grid
            .nodes()
            .iter()
            .zip(ys)
            .map(|(&t, &y)| format!("{:.2},{:.2}", px(t), py(y)))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" font-family="sans-serif" font-size="12">"#);
    let _ = writeln!(s, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<path d="M{pad},{y0} H{x1} M{pad},{y0} V{pad}" stroke="black" fill="none"/>"#,
        y0 = h - pad,
        x1 = w - pad
    );
    let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle">t</text>"#, w / 2.0, h - 15.0);
    let _ = writeln!(s, r#"<text x="{pad}" y="{}" text-anchor="middle">0</text>"#, h - pad + 16.0);
    let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#, w - pad, h - pad + 16.0, fmt_num(horizon));
    let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="end">{}</text>"#, pad - 6.0, pad + 4.0, fmt_num(top));
    let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="end">0</text>"#, pad - 6.0, h - pad + 4.0);
    let _ = writeln!(s, r##"<polyline points="{}" stroke="#1f5fbf" stroke-width="2" fill="none"/>"##, line(&curve.b_values));
    let _ = writeln!(s, r##"<polyline points="{}" stroke="#c0392b" stroke-width="2" stroke-dasharray="6 4" fill="none"/>"##, line(&curve.h_values));
    let (lx, ly) = (w - pad - 150.0, pad + 10.0);
    let _ = writeln!(s, r##"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="#1f5fbf" stroke-width="2"/>"##, lx + 30.0);
    let _ = writeln!(s, r#"<text x="{}" y="{}">boundary b(t)</text>"#, lx + 36.0, ly + 4.0);
    let _ = writeln!(s, r##"<line x1="{lx}" y1="{}" x2="{}" y2="{}" stroke="#c0392b" stroke-width="2" stroke-dasharray="6 4"/>"##, ly + 20.0, lx + 30.0, ly + 20.0);
    let _ = writeln!(s, r#"<text x="{}" y="{}">zero of H, h(t)</text>"#, lx + 36.0, ly + 24.0);
    s.push_str("</svg>\n");
    s
}

pub fn write_to(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text)
        .map_err(|e| CliError::Resource(format!("cannot write {}: {e}", path.display())))
}

/// Writes the main output to `--out` or stdout.
pub fn emit(c: &RunConfig, text: &str) -> Result<(), CliError> {
    match &c.out {
        Some(path) => write_to(path, text),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Resource(format!("cannot write to stdout: {e}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_use_twelve_digits() {
        assert_eq!(fmt_num(0.1 + 0.2), "0.3");
        assert_eq!(fmt_num(2.0_f64.sqrt()), "1.41421356237");
        assert_eq!(fmt_num(-1.23456789012345e-9), "-1.23456789012e-9");
        assert_eq!(fmt_num(0.0), "0");
        assert_eq!(fmt_num(200.0), "200");
    }

    #[test]
    fn json_floats_are_rounded() {
        let v = round_json(json!({"a": [std::f64::consts::PI, 1], "b": f64::NAN}));
        assert_eq!(v.to_string(), r#"{"a":[3.14159265359,1],"b":null}"#);
    }
}
