use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::{basis, LinearParams, NonlinearParams};
use crate::error::{Error, Result};
use crate::timeseries::{PriceSeries, Window};

/// Condition-number estimate above which the design is treated as singular.
pub const CONDITION_LIMIT: f64 = 1e12;

/// Cost reported for inputs where the profiled cost is undefined.
pub const COST_SENTINEL: f64 = 1e100;

/// Sample times and log-prices of one window.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WindowData {
    pub times: Vec<f64>,
    pub log_prices: Vec<f64>,
}

impl WindowData {
    pub fn new(times: Vec<f64>, log_prices: Vec<f64>) -> Self {
        assert_eq!(times.len(), log_prices.len(), "times and log-prices differ in length");
        Self { times, log_prices }
    }

    pub fn from_series(series: &PriceSeries, window: Window) -> Self {
        Self::new(window.times(), series.window_log_prices(window))
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last_time(&self) -> f64 {
        self.times.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Raw residuals `ln p - LPPLS`.
    pub fn residuals(&self, nl: &NonlinearParams, lin: &LinearParams) -> Result<Vec<f64>> {
        self.times
            .iter()
            .zip(&self.log_prices)
            .map(|(&t, &y)| super::evaluate(nl, lin, t).map(|v| y - v))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearSolution {
    pub params: LinearParams,
    pub sse: f64,
    /// 2-norm condition estimate of the design matrix.
    pub condition: f64,
}

/// Least-squares `(A, B, C1, C2)` for fixed `(tc, m, omega)`.
///
/// Solved through a Householder QR of the N x 4 design `[1, f, g, h]` rather
/// than the normal equations, which square the condition number.
pub fn solve_linear(nl: &NonlinearParams, data: &WindowData) -> Result<LinearSolution> {
    let n = data.len();
    if n < 4 {
        return Err(Error::TooFewPoints { needed: 4, have: n });
    }
    let last = data.last_time();
    if !(nl.tc > last) {
        return Err(Error::Domain { t: last, tc: nl.tc });
    }
    if !(nl.m.is_finite() && nl.omega.is_finite()) {
        return Err(Error::DegenerateBasis {
            condition: f64::INFINITY,
        });
    }

    let mut design = DMatrix::<f64>::zeros(n, 4);
    for (i, &t) in data.times.iter().enumerate() {
        let (f, g, h) = basis(nl, nl.tc - t);
        design[(i, 0)] = 1.0;
        design[(i, 1)] = f;
        design[(i, 2)] = g;
        design[(i, 3)] = h;
    }
    if design.iter().any(|v| !v.is_finite()) {
        return Err(Error::DegenerateBasis {
            condition: f64::INFINITY,
        });
    }

    let qr = design.clone().qr();
    let r = qr.r();
    let singular = r.singular_values();
    let smax = singular.max();
    let smin = singular.min();
    let condition = if smin > 0.0 { smax / smin } else { f64::INFINITY };
    if !(condition <= CONDITION_LIMIT) {
        return Err(Error::DegenerateBasis { condition });
    }

    let mut rhs = DVector::from_column_slice(&data.log_prices);
    qr.q_tr_mul(&mut rhs);
    let head = rhs.rows(0, 4).into_owned();
    let beta = r
        .solve_upper_triangular(&head)
        .ok_or(Error::DegenerateBasis { condition })?;

    let params = LinearParams::new(beta[0], beta[1], beta[2], beta[3]);
    let sse = design
        .row_iter()
        .zip(&data.log_prices)
        .map(|(row, &y)| {
            let fitted = params.a + params.b * row[1] + params.c1 * row[2] + params.c2 * row[3];
            (y - fitted).powi(2)
        })
        .sum();
    Ok(LinearSolution { params, sse, condition })
}

/// Profiled cost: the minimum over linear parameters of the squared-error sum.
///
/// Returns [`COST_SENTINEL`] whenever the linear problem cannot be solved.
pub fn cost(nl: &NonlinearParams, data: &WindowData) -> f64 {
    match solve_linear(nl, data) {
        Ok(sol) if sol.sse.is_finite() => sol.sse,
        _ => COST_SENTINEL,
    }
}
