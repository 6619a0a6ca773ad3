//! Residual diagnostics for calibrated fits: a Lomb periodogram of the
//! detrended residuals and unit-root tests on the raw residuals.

mod harmonic;
mod lomb;
mod unitroot;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{LpplsFit, WindowData};

pub use harmonic::{harmonic_check, harmonic_entry, HarmonicEntry, HarmonicReport, HARMONIC_BAND};
pub use lomb::{lomb, LombGrid, LombResult, MIN_LOMB_SAMPLES};
pub use unitroot::{
    adf_statistic, critical_value, pp_statistic, unit_root_report, unit_root_tests, Adf, PhillipsPerron, TestSummary,
    UnitRootOutcome, UnitRootReport, UnitRootTest, WindowUnitRoot, LEVELS, MIN_UNIT_ROOT_OBS,
};

/// Residuals with the power law divided out, sampled on `x = ln(tc - t)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetrendedResiduals {
    /// Strictly decreasing, since `t` increases toward `tc`.
    pub x: Vec<f64>,
    pub r: Vec<f64>,
}

impl DetrendedResiduals {
    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }
}

/// `r = (tc - t)^-m (ln p - A - B (tc - t)^m)`, leaving only the
/// log-periodic part and noise.
pub fn detrend(fit: &LpplsFit, data: &WindowData) -> Result<DetrendedResiduals> {
    let nl = fit.nonlinear;
    let last = data.last_time();
    if !(nl.tc > last) {
        return Err(Error::Domain { t: last, tc: nl.tc });
    }
    let (x, r) = data
        .times
        .iter()
        .zip(&data.log_prices)
        .map(|(&t, &y)| {
            let dt = nl.tc - t;
            let f = dt.powf(nl.m);
            (dt.ln(), (y - fit.linear.a - fit.linear.b * f) / f)
        })
        .unzip();
    Ok(DetrendedResiduals { x, r })
}

#[cfg(test)]
mod tests {
    use chrono::NaiveDate;

    use super::*;
    use crate::model::noise::NoiseSpec;
    use crate::model::{synthesize, FilterConfig, LinearParams, NonlinearParams};
    use crate::timeseries::{PriceSeries, Window};

    fn fit_on(lin: LinearParams) -> (LpplsFit, WindowData, PriceSeries) {
        let nl = NonlinearParams::new(230.0, 0.45, 8.0);
        let window = Window::new(0, 199).unwrap();
        let series = synthesize(
            &nl,
            &lin,
            window,
            &NoiseSpec::None,
            0,
            NaiveDate::from_ymd_opt(2014, 1, 2).unwrap(),
        )
        .unwrap();
        let fit = LpplsFit::new(&series, window, nl, lin, 0.0, 0, &FilterConfig::default());
        (fit, WindowData::from_series(&series, window), series)
    }

    #[test]
    fn pure_power_law_leaves_nothing() {
        let (fit, data, _) = fit_on(LinearParams::new(8.0, -0.5, 0.0, 0.0));
        let d = detrend(&fit, &data).unwrap();
        assert!(d.r.iter().all(|r| r.abs() <= 1e-10));
        assert!(d.x.windows(2).all(|p| p[0] > p[1]));
    }

    #[test]
    fn cosine_survives_detrending() {
        let (fit, data, _) = fit_on(LinearParams::new(8.0, -0.5, 0.05, 0.0));
        let d = detrend(&fit, &data).unwrap();
        for (x, r) in d.x.iter().zip(&d.r) {
            assert!((r - 0.05 * (8.0 * x).cos()).abs() <= 1e-8);
        }
    }

    #[test]
    fn perturbation_is_local() {
        let (fit, mut data, _) = fit_on(LinearParams::new(8.0, -0.5, 0.02, 0.01));
        let before = detrend(&fit, &data).unwrap();
        let delta = 0.01;
        data.log_prices[57] += delta;
        let after = detrend(&fit, &data).unwrap();
        let scale = (230.0f64 - 57.0).powf(-0.45);
        for i in 0..before.len() {
            let change = after.r[i] - before.r[i];
            let expected = if i == 57 { delta * scale } else { 0.0 };
            assert!((change - expected).abs() <= 1e-12, "i = {i}");
        }
    }

    #[test]
    fn tc_inside_window_is_an_error() {
        let (mut fit, data, _) = fit_on(LinearParams::new(8.0, -0.5, 0.0, 0.0));
        fit.nonlinear.tc = 199.0;
        assert!(matches!(detrend(&fit, &data), Err(Error::Domain { .. })));
    }
}
