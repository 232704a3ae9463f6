//! Optimal selling of a geometric Brownian motion relative to its ultimate maximum.

// `!(x >= 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod boundary;
pub mod error;
pub mod gain;
pub mod inequality;
pub mod law;
pub mod mc;
pub mod normal;
pub mod params;
pub mod quad;
pub mod value;

pub use boundary::{BoundaryCurve, QuadratureSpec, TimeGrid};
pub use error::{Error, Result};
pub use params::{ExponentSign, ModelParams, StateTimePoint};
