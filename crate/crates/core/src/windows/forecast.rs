use chrono::NaiveDate;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::WindowScan;
use crate::error::{Error, Result};
use crate::timeseries::PriceSeries;

pub const DEFAULT_BOOTSTRAP_REPS: usize = 1000;
pub const MIN_FORECAST_FITS: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuantilePoint {
    pub ordinal: f64,
    pub date: NaiveDate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TcForecast {
    pub q05: QuantilePoint,
    pub q20: QuantilePoint,
    pub q50: QuantilePoint,
    pub q80: QuantilePoint,
    pub q95: QuantilePoint,
    pub n_qualified: usize,
    pub bootstrap_reps: usize,
    pub seed: u64,
}

/// Quantile `q` of ascending `sorted` by linear interpolation between order
/// statistics at position `q * (n - 1)`.
pub fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    assert!(!sorted.is_empty(), "quantile of an empty sample");
    let pos = q.clamp(0.0, 1.0) * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    let frac = pos - lo as f64;
    sorted[lo] + (sorted[hi] - sorted[lo]) * frac
}

/// Bootstrap quantiles of the critical times of the qualified fits.
///
/// The `tc` samples are resampled with replacement `reps` times; quantiles
/// are read off the pooled resampled values.
pub fn forecast_tc(scan: &WindowScan, series: &PriceSeries, reps: usize, seed: u64) -> Result<TcForecast> {
    forecast_samples(&scan.tc_samples, series, reps, seed)
}

pub(crate) fn forecast_samples(samples: &[f64], series: &PriceSeries, reps: usize, seed: u64) -> Result<TcForecast> {
    if samples.len() < MIN_FORECAST_FITS {
        return Err(Error::TooFewPoints {
            needed: MIN_FORECAST_FITS,
            have: samples.len(),
        });
    }
    if reps == 0 {
        return Err(Error::InvalidConfig("bootstrap reps must be >= 1".into()));
    }
    let n = samples.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pooled: Vec<f64> = (0..reps * n).map(|_| samples[rng.random_range(0..n)]).collect();
    pooled.sort_by(f64::total_cmp);

    let point = |q: f64| {
        let ordinal = quantile_sorted(&pooled, q);
        QuantilePoint {
            ordinal,
            date: series.ordinal_to_date(ordinal),
        }
    };
    Ok(TcForecast {
        q05: point(0.05),
        q20: point(0.20),
        q50: point(0.50),
        q80: point(0.80),
        q95: point(0.95),
        n_qualified: n,
        bootstrap_reps: reps,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::timeseries::weekday_calendar;

    fn calendar() -> PriceSeries {
        let dates = weekday_calendar(NaiveDate::from_ymd_opt(2014, 1, 1).unwrap(), 120);
        PriceSeries::from_rows(dates.into_iter().map(|d| (d, 1.0))).unwrap()
    }

    #[test]
    fn interpolated_quantiles() {
        let xs = [1.0, 2.0, 3.0, 4.0, 5.0];
        assert_eq!(quantile_sorted(&xs, 0.0), 1.0);
        assert_eq!(quantile_sorted(&xs, 0.5), 3.0);
        assert_eq!(quantile_sorted(&xs, 0.1), 1.4);
        assert_eq!(quantile_sorted(&xs, 1.0), 5.0);
        assert_eq!(quantile_sorted(&[7.0], 0.3), 7.0);
    }

    #[test]
    fn point_mass() {
        let f = forecast_samples(&[42.0; 6], &calendar(), 200, 1).unwrap();
        for q in [f.q05, f.q20, f.q50, f.q80, f.q95] {
            assert_eq!(q.ordinal, 42.0);
        }
    }

    #[test]
    fn median_of_ten_point_set() {
        // Exhaustive bootstrap: every pooled draw is uniform on the set, so
        // the pooled median converges to 55.
        let samples: Vec<f64> = (1..=10).map(|k| 10.0 * k as f64).collect();
        let f = forecast_samples(&samples, &calendar(), 5000, 9).unwrap();
        assert!((f.q50.ordinal - 55.0).abs() <= 5.0, "{}", f.q50.ordinal);
    }

    #[test]
    fn too_few_samples() {
        assert!(matches!(
            forecast_samples(&[1.0, 2.0, 3.0, 4.0], &calendar(), 10, 0),
            Err(Error::TooFewPoints { needed: 5, have: 4 })
        ));
    }

    #[test]
    fn deterministic_given_seed() {
        let samples = [10.0, 30.0, 31.0, 60.0, 61.0, 90.0];
        let a = forecast_samples(&samples, &calendar(), 300, 5).unwrap();
        let b = forecast_samples(&samples, &calendar(), 300, 5).unwrap();
        assert_eq!(a, b);
    }

    proptest! {
        #[test]
        fn quantiles_nest(samples in prop::collection::vec(0.0f64..200.0, 5..40), seed in any::<u64>()) {
            let f = forecast_samples(&samples, &calendar(), 50, seed).unwrap();
            let qs = [f.q05, f.q20, f.q50, f.q80, f.q95];
            prop_assert!(qs.windows(2).all(|p| p[0].ordinal <= p[1].ordinal));
            prop_assert!(qs.windows(2).all(|p| p[0].date <= p[1].date));
        }
    }
}
