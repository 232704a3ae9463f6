//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Each export wraps a plain function returning `Result<_, String>` so the
//! logic can be tested natively.

use sellmax_core::boundary::solve_boundary;
use sellmax_core::gain::gain;
use sellmax_core::value::{classify_infimum, classify_supremum, value_v1, value_v2};
use sellmax_core::{ExponentSign, ModelParams, QuadratureSpec, TimeGrid};
use wasm_bindgen::prelude::*;

/// Largest grid the demo will solve; the solver runs single-threaded here.
pub const MAX_STEPS: usize = 200;

#[wasm_bindgen(getter_with_clone)]
#[derive(Debug, Clone)]
pub struct Regimes {
    pub lambda: f64,
    pub infimum: String,
    pub supremum: String,
}

#[wasm_bindgen(getter_with_clone)]
#[derive(Debug, Clone)]
pub struct Boundary {
    pub t: Vec<f64>,
    pub b: Vec<f64>,
    pub h: Vec<f64>,
    /// Value of the infimum problem at the start.
    pub v1: f64,
    /// Largest solver residual over the nodes.
    pub max_residual: f64,
}

#[wasm_bindgen(getter_with_clone)]
#[derive(Debug, Clone)]
pub struct Values {
    /// `G(0, 0)`: expected ratio when selling at once.
    pub gain: f64,
    pub v2: f64,
    pub v2_regime: String,
    pub v2_immediate: f64,
    pub v2_terminal: f64,
}

fn params(mu: f64, sigma: f64, horizon: f64) -> Result<ModelParams, String> {
    ModelParams::new(mu, sigma, horizon).map_err(|e| e.to_string())
}

pub fn regimes_native(mu: f64, sigma: f64) -> Result<Regimes, String> {
    let p = params(mu, sigma, 1.0)?;
    Ok(Regimes {
        lambda: p.lambda(),
        infimum: format!("{:?}", classify_infimum(&p)),
        supremum: format!("{:?}", classify_supremum(&p)),
    })
}

pub fn boundary_native(mu: f64, sigma: f64, horizon: f64, steps: usize) -> Result<Boundary, String> {
    if steps > MAX_STEPS {
        return Err(format!("at most {MAX_STEPS} steps in the browser"));
    }
    let p = params(mu, sigma, horizon)?;
    let quad = QuadratureSpec::default();
    let grid = TimeGrid::uniform(horizon, steps).map_err(|e| e.to_string())?;
    let curve = solve_boundary(&p, &grid, &quad).map_err(|e| e.to_string())?;
    let v1 = value_v1(&p, Some(&curve), &quad).map_err(|e| e.to_string())?.value;
    Ok(Boundary {
        t: curve.grid.nodes().to_vec(),
        max_residual: curve.residuals.iter().copied().fold(0.0, f64::max),
        b: curve.b_values,
        h: curve.h_values,
        v1,
    })
}

pub fn values_native(mu: f64, sigma: f64, horizon: f64) -> Result<Values, String> {
    let p = params(mu, sigma, horizon)?;
    let v2 = value_v2(&p).map_err(|e| e.to_string())?;
    Ok(Values {
        gain: gain(0.0, 0.0, &p, ExponentSign::Plus).map_err(|e| e.to_string())?,
        v2: v2.value,
        v2_regime: format!("{:?}", v2.regime),
        v2_immediate: v2.immediate_value,
        v2_terminal: v2.terminal_value,
    })
}

/// Classification of both problems for drift `mu` and volatility `sigma`.
#[wasm_bindgen]
pub fn regimes(mu: f64, sigma: f64) -> Result<Regimes, JsError> {
    regimes_native(mu, sigma).map_err(|e| JsError::new(&e))
}

/// Selling boundary `b` and the zero curve `h` on a uniform grid.
#[wasm_bindgen]
pub fn boundary(mu: f64, sigma: f64, horizon: f64, steps: usize) -> Result<Boundary, JsError> {
    boundary_native(mu, sigma, horizon, steps).map_err(|e| JsError::new(&e))
}

/// Expected ratios of the immediate sale and of the supremum problem.
#[wasm_bindgen]
pub fn values(mu: f64, sigma: f64, horizon: f64) -> Result<Values, JsError> {
    values_native(mu, sigma, horizon).map_err(|e| JsError::new(&e))
}
