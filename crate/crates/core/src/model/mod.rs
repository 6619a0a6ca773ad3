//! The LPPLS model in its (C1, C2) parameterization.
//!
//! ```text
//! ln p(t) = A + B (tc - t)^m
//!             + C1 (tc - t)^m cos(omega ln(tc - t))
//!             + C2 (tc - t)^m sin(omega ln(tc - t))
//! ```
//!
//! Fitting only ever searches (tc, m, omega); the four linear parameters are
//! profiled out by [`solve_linear`]. The amplitude/phase form
//! `C (tc - t)^m cos(omega ln(tc - t) - phi)` is derived for reporting.

mod calibrated;
mod filters;
mod linear;
pub mod noise;
mod synth;

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use calibrated::LpplsFit;
pub use filters::{check_filters, FilterConfig, FilterReport, OSCILLATION_SENTINEL};
pub use linear::{cost, solve_linear, LinearSolution, WindowData, CONDITION_LIMIT, COST_SENTINEL};
pub use synth::synthesize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NonlinearParams {
    /// Critical time on the trading-day ordinal axis.
    pub tc: f64,
    pub m: f64,
    pub omega: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinearParams {
    pub a: f64,
    pub b: f64,
    pub c1: f64,
    pub c2: f64,
}

impl NonlinearParams {
    pub fn new(tc: f64, m: f64, omega: f64) -> Self {
        Self { tc, m, omega }
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.tc, self.m, self.omega]
    }

    pub fn from_slice(x: &[f64]) -> Self {
        Self::new(x[0], x[1], x[2])
    }
}

impl LinearParams {
    pub fn new(a: f64, b: f64, c1: f64, c2: f64) -> Self {
        Self { a, b, c1, c2 }
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.a, self.b, self.c1, self.c2]
    }

    /// Oscillation amplitude `sqrt(C1^2 + C2^2)`.
    pub fn amplitude(&self) -> f64 {
        self.c1.hypot(self.c2)
    }
}

/// Basis values `(f, g, h)` at time-to-critical `dt > 0`.
#[inline]
pub(crate) fn basis(nl: &NonlinearParams, dt: f64) -> (f64, f64, f64) {
    let log_dt = dt.ln();
    let f = (nl.m * log_dt).exp();
    let (s, c) = (nl.omega * log_dt).sin_cos();
    (f, f * c, f * s)
}

/// Model log-price at `t`.
pub fn evaluate(nl: &NonlinearParams, lin: &LinearParams, t: f64) -> Result<f64> {
    let dt = nl.tc - t;
    if !(dt > 0.0) {
        return Err(Error::Domain { t, tc: nl.tc });
    }
    let (f, g, h) = basis(nl, dt);
    Ok(lin.a + lin.b * f + lin.c1 * g + lin.c2 * h)
}

/// Amplitude and phase `(C, phi)` with `phi` in `[0, 2pi)`.
pub fn convert_to_original_form(lin: &LinearParams) -> (f64, f64) {
    let c = lin.amplitude();
    let mut phi = lin.c2.atan2(lin.c1);
    if phi < 0.0 {
        phi += TAU;
    }
    if phi >= TAU {
        phi -= TAU;
    }
    (c, phi)
}
