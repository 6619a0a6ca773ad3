//! Fit ensembles over expanding or shrinking windows.

mod forecast;
mod indicators;

use chrono::NaiveDate;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::optimizer::{fit_window, FitConfig, FitOutcome};
use crate::timeseries::{Bound, PriceSeries, Snap, Window};

pub use forecast::{
    forecast_tc, quantile_sorted, QuantilePoint, TcForecast, DEFAULT_BOOTSTRAP_REPS, MIN_FORECAST_FITS,
};
pub use indicators::{gap_series, m_series, spearman, GapSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScanMode {
    /// `t1` fixed, `t2` moving.
    Expanding,
    /// `t2` fixed, `t1` moving.
    Shrinking,
}

impl std::str::FromStr for ScanMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "expanding" => Ok(ScanMode::Expanding),
            "shrinking" => Ok(ScanMode::Shrinking),
            other => Err(Error::UnknownName {
                kind: "scan mode",
                name: other.to_string(),
                known: "expanding, shrinking".into(),
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanSpec {
    pub mode: ScanMode,
    /// `t1` for expanding scans, `t2` for shrinking ones.
    pub fixed_end: NaiveDate,
    pub moving_start: NaiveDate,
    pub moving_end: NaiveDate,
    /// Trading days between consecutive moving endpoints.
    pub step: usize,
}

/// Outcome of one window in a scan; exactly one of `fit` and `failure` is set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WindowRecord {
    pub index: usize,
    pub window: Window,
    pub t1_date: NaiveDate,
    pub t2_date: NaiveDate,
    pub seed: u64,
    pub fit: Option<FitOutcome>,
    pub failure: Option<String>,
}

impl WindowRecord {
    pub fn qualified(&self) -> bool {
        self.fit.as_ref().is_some_and(|f| f.best.qualified())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WindowScan {
    pub spec: ScanSpec,
    pub records: Vec<WindowRecord>,
    /// Indices into `records` of the qualified fits, in window order.
    pub qualified: Vec<usize>,
    /// Critical times of the qualified fits, aligned with `qualified`.
    pub tc_samples: Vec<f64>,
}

impl WindowScan {
    pub fn n_windows(&self) -> usize {
        self.records.len()
    }

    pub fn n_qualified(&self) -> usize {
        self.qualified.len()
    }

    pub fn qualified_fits(&self) -> impl Iterator<Item = &FitOutcome> {
        self.qualified.iter().filter_map(|&i| self.records[i].fit.as_ref())
    }

    fn from_records(spec: ScanSpec, records: Vec<WindowRecord>) -> Self {
        let qualified: Vec<usize> = records.iter().filter(|r| r.qualified()).map(|r| r.index).collect();
        let tc_samples = qualified
            .iter()
            .map(|&i| {
                records[i]
                    .fit
                    .as_ref()
                    .expect("qualified implies fit")
                    .best
                    .nonlinear
                    .tc
            })
            .collect();
        Self {
            spec,
            records,
            qualified,
            tc_samples,
        }
    }
}

/// Windows of a scan, ordered by the moving endpoint.
///
/// Calendar boundaries snap inward: the moving range start forward, its end
/// backward; a fixed `t1` snaps forward and a fixed `t2` backward.
pub fn generate_windows(spec: &ScanSpec, series: &PriceSeries) -> Result<Vec<Window>> {
    if spec.step == 0 {
        return Err(Error::InvalidConfig("step must be >= 1".into()));
    }
    let start = series.resolve(Bound::Date(spec.moving_start), Snap::Forward)?;
    let end = series.resolve(Bound::Date(spec.moving_end), Snap::Backward)?;
    if start > end {
        return Err(Error::InvalidWindow(format!(
            "moving range {} .. {} contains no trading day",
            spec.moving_start, spec.moving_end
        )));
    }
    let windows: Vec<Window> = match spec.mode {
        ScanMode::Expanding => {
            let t1 = series.resolve(Bound::Date(spec.fixed_end), Snap::Forward)?;
            (start..=end)
                .step_by(spec.step)
                .filter(|&t2| t2 > t1)
                .map(|t2| Window { t1, t2 })
                .collect()
        }
        ScanMode::Shrinking => {
            let t2 = series.resolve(Bound::Date(spec.fixed_end), Snap::Backward)?;
            (start..=end)
                .step_by(spec.step)
                .filter(|&t1| t1 < t2)
                .map(|t1| Window { t1, t2 })
                .collect()
        }
    };
    if windows.is_empty() {
        return Err(Error::InvalidWindow("scan produces no windows".into()));
    }
    Ok(windows)
}

/// Seed for window `index` of a scan seeded with `base`.
///
/// SplitMix64 of `base + index`, spaced so that the consecutive restart seeds
/// of neighbouring windows do not collide.
pub fn window_seed(base: u64, index: usize) -> u64 {
    let mut z = base.wrapping_add((index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Fits every window of `spec`, on up to `jobs` threads.
///
/// Per-window errors are recorded, never propagated. The result does not
/// depend on `jobs`.
pub fn run_scan(series: &PriceSeries, spec: &ScanSpec, config: &FitConfig, jobs: usize) -> Result<WindowScan> {
    config.cmaes.validate()?;
    let windows = generate_windows(spec, series)?;
    let fit_one = |(index, window): (usize, Window)| {
        let seed = window_seed(config.cmaes.seed, index);
        let (fit, failure) = match fit_window(series, window, &config.with_seed(seed)) {
            Ok(out) => (Some(out), None),
            Err(e) => (None, Some(e.to_string())),
        };
        WindowRecord {
            index,
            window,
            t1_date: series.dates()[window.t1],
            t2_date: series.dates()[window.t2],
            seed,
            fit,
            failure,
        }
    };

    let records: Vec<WindowRecord> = if jobs <= 1 {
        windows.into_iter().enumerate().map(fit_one).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?;
        pool.install(|| windows.into_par_iter().enumerate().map(fit_one).collect())
    };
    Ok(WindowScan::from_records(*spec, records))
}
