use serde::{Deserialize, Serialize};

use super::{detrend, lomb, LombGrid};
use crate::error::Result;
use crate::model::{LpplsFit, WindowData};
use crate::timeseries::PriceSeries;
use crate::windows::WindowScan;

/// Ratios inside this band count as "near 2".
pub const HARMONIC_BAND: (f64, f64) = (1.6, 2.4);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HarmonicEntry {
    /// Index of the window in the scan.
    pub index: usize,
    pub omega_lomb: f64,
    pub omega_fit: f64,
    /// `omega_fit / omega_lomb`.
    pub ratio: f64,
    /// `omega_lomb / omega_fit`.
    pub inverse_ratio: f64,
    pub p_max: f64,
    pub false_alarm: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct HarmonicReport {
    pub entries: Vec<HarmonicEntry>,
    /// `(window index, reason)` for fits whose periodogram failed.
    pub failures: Vec<(usize, String)>,
    /// Fraction of entries with `ratio` in [`HARMONIC_BAND`]; 0 when empty.
    pub fraction_near_two: f64,
    /// Same for `inverse_ratio`.
    pub inverse_fraction_near_two: f64,
}

pub fn harmonic_entry(index: usize, fit: &LpplsFit, series: &PriceSeries, grid: &LombGrid) -> Result<HarmonicEntry> {
    let data = WindowData::from_series(series, fit.window);
    let res = lomb(&detrend(fit, &data)?, grid)?;
    let omega_fit = fit.nonlinear.omega;
    Ok(HarmonicEntry {
        index,
        omega_lomb: res.omega_lomb,
        omega_fit,
        ratio: omega_fit / res.omega_lomb,
        inverse_ratio: res.omega_lomb / omega_fit,
        p_max: res.p_max,
        false_alarm: res.false_alarm,
    })
}

/// Periodogram of every qualified fit and the distribution of
/// `omega_fit / omega_lomb`.
pub fn harmonic_check(scan: &WindowScan, series: &PriceSeries, grid: &LombGrid) -> HarmonicReport {
    let mut report = HarmonicReport::default();
    for &i in &scan.qualified {
        let Some(outcome) = scan.records[i].fit.as_ref() else {
            continue;
        };
        match harmonic_entry(i, &outcome.best, series, grid) {
            Ok(e) => report.entries.push(e),
            Err(e) => report.failures.push((i, e.to_string())),
        }
    }
    let in_band = |r: f64| (HARMONIC_BAND.0..=HARMONIC_BAND.1).contains(&r);
    let n = report.entries.len();
    if n > 0 {
        report.fraction_near_two = report.entries.iter().filter(|e| in_band(e.ratio)).count() as f64 / n as f64;
        report.inverse_fraction_near_two =
            report.entries.iter().filter(|e| in_band(e.inverse_ratio)).count() as f64 / n as f64;
    }
    report
}
