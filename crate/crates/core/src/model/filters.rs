use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{LinearParams, NonlinearParams};
use crate::timeseries::Window;

/// Oscillation count reported when `tc <= t2` leaves it undefined.
pub const OSCILLATION_SENTINEL: f64 = -1.0;

/// Qualification thresholds for a calibrated fit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FilterConfig {
    pub m_range: (f64, f64),
    pub omega_range: (f64, f64),
    /// Upper bound of `tc` as a fraction of `t2 - t1` past `t2`.
    pub tc_horizon: f64,
    pub min_damping: f64,
    pub min_oscillations: f64,
    /// Require `B < 0`; when false only `B < 1` is required.
    pub strict_b: bool,
}

impl Default for FilterConfig {
    fn default() -> Self {
        Self {
            m_range: (0.1, 0.9),
            omega_range: (6.0, 13.0),
            tc_horizon: 1.0 / 3.0,
            min_damping: 1.0,
            min_oscillations: 2.5,
            strict_b: true,
        }
    }
}

impl FilterConfig {
    pub fn tc_range(&self, window: Window) -> (f64, f64) {
        let t2 = window.t2 as f64;
        (t2, t2 + (window.t2 - window.t1) as f64 * self.tc_horizon)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FilterReport {
    pub m_in_range: bool,
    pub omega_in_range: bool,
    pub tc_in_range: bool,
    pub damping: f64,
    pub damping_ok: bool,
    pub oscillations: f64,
    pub oscillations_ok: bool,
    pub b_negative: bool,
    /// The looser `B < 1` reading, always reported alongside `b_negative`.
    pub b_below_one: bool,
    pub qualified: bool,
}

fn within(x: f64, (lo, hi): (f64, f64)) -> bool {
    x >= lo && x <= hi
}

/// Evaluates every condition independently of the others.
pub fn check_filters(window: Window, nl: &NonlinearParams, lin: &LinearParams, cfg: &FilterConfig) -> FilterReport {
    let t1 = window.t1 as f64;
    let t2 = window.t2 as f64;

    let m_in_range = within(nl.m, cfg.m_range);
    let omega_in_range = within(nl.omega, cfg.omega_range);
    let tc_in_range = within(nl.tc, cfg.tc_range(window));

    let amplitude = lin.amplitude();
    let damping = if amplitude > 0.0 {
        nl.m * lin.b.abs() / (nl.omega * amplitude)
    } else {
        f64::MAX
    };
    let damping_ok = damping.is_finite() && damping >= cfg.min_damping;

    let (oscillations, oscillations_ok) = if nl.tc > t2 {
        let n = nl.omega / PI * ((nl.tc - t1) / (nl.tc - t2)).ln();
        (n, n >= cfg.min_oscillations)
    } else {
        (OSCILLATION_SENTINEL, false)
    };

    let b_negative = lin.b < 0.0;
    let b_below_one = lin.b < 1.0;
    let b_ok = if cfg.strict_b { b_negative } else { b_below_one };

    FilterReport {
        m_in_range,
        omega_in_range,
        tc_in_range,
        damping,
        damping_ok,
        oscillations,
        oscillations_ok,
        b_negative,
        b_below_one,
        qualified: m_in_range && omega_in_range && tc_in_range && damping_ok && oscillations_ok && b_ok,
    }
}
