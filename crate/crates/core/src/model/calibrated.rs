use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use super::{check_filters, convert_to_original_form, FilterConfig, FilterReport, LinearParams, NonlinearParams};
use crate::timeseries::{PriceSeries, Window};

/// One calibrated model on one window.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LpplsFit {
    pub window: Window,
    pub t1_date: NaiveDate,
    pub t2_date: NaiveDate,
    pub nonlinear: NonlinearParams,
    pub linear: LinearParams,
    /// Amplitude/phase `(C, phi)` of the oscillation, for reporting.
    pub amplitude: f64,
    pub phase: f64,
    pub sse: f64,
    pub filter: FilterReport,
    pub seed: u64,
    pub tc_date: NaiveDate,
}

impl LpplsFit {
    pub fn new(
        series: &PriceSeries,
        window: Window,
        nonlinear: NonlinearParams,
        linear: LinearParams,
        sse: f64,
        seed: u64,
        filters: &FilterConfig,
    ) -> Self {
        let (amplitude, phase) = convert_to_original_form(&linear);
        Self {
            window,
            t1_date: series.dates()[window.t1],
            t2_date: series.dates()[window.t2],
            nonlinear,
            linear,
            amplitude,
            phase,
            sse,
            filter: check_filters(window, &nonlinear, &linear, filters),
            seed,
            tc_date: series.ordinal_to_date(nonlinear.tc),
        }
    }

    pub fn qualified(&self) -> bool {
        self.filter.qualified
    }

    /// `tc - t2` in trading days.
    pub fn gap(&self) -> f64 {
        self.nonlinear.tc - self.window.t2 as f64
    }
}
