use chrono::NaiveDate;
use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::WindowData;
use crate::registry::{Named, Registry};
use crate::timeseries::{PriceSeries, Window};
use crate::windows::WindowScan;

pub const MIN_UNIT_ROOT_OBS: usize = 25;

/// Significance levels every test is decided at.
pub const LEVELS: [f64; 2] = [0.05, 0.01];

/// MacKinnon (2010) response surface, constant but no trend:
/// `cv(T) = b0 + b1/T + b2/T^2 + b3/T^3`.
const TAU_C_01: [f64; 4] = [-3.43035, -6.5393, -16.786, -79.433];
const TAU_C_05: [f64; 4] = [-2.86154, -2.8903, -4.234, -40.040];
const TAU_C_10: [f64; 4] = [-2.56677, -1.5384, -2.809, 0.0];

/// Critical value of the intercept-only unit-root `tau` statistic at `level`
/// (0.01, 0.05 or 0.10) for `nobs` regression observations.
pub fn critical_value(level: f64, nobs: usize) -> f64 {
    let b = if (level - 0.01).abs() < 1e-12 {
        TAU_C_01
    } else if (level - 0.05).abs() < 1e-12 {
        TAU_C_05
    } else if (level - 0.10).abs() < 1e-12 {
        TAU_C_10
    } else {
        panic!("no critical values for level {level}");
    };
    let t = nobs as f64;
    b[0] + b[1] / t + b[2] / (t * t) + b[3] / (t * t * t)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitRootOutcome {
    pub statistic: f64,
    /// Observations in the test regression.
    pub nobs: usize,
    pub reject_at_05: bool,
    pub reject_at_01: bool,
}

/// A test of the unit-root null; rejection means the series is stationary.
pub trait UnitRootTest: Named + Send + Sync {
    /// `(statistic, regression observations)`.
    fn statistic(&self, y: &[f64]) -> Result<(f64, usize)>;

    fn run(&self, y: &[f64]) -> Result<UnitRootOutcome> {
        let (statistic, nobs) = self.statistic(y)?;
        Ok(UnitRootOutcome {
            statistic,
            nobs,
            reject_at_05: statistic < critical_value(0.05, nobs),
            reject_at_01: statistic < critical_value(0.01, nobs),
        })
    }
}

/// Augmented Dickey-Fuller with intercept and `lags` lagged differences.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Adf {
    pub lags: usize,
}

/// Phillips-Perron `Z_tau` with a Bartlett long-run variance. `None` picks
/// `floor(4 (T/100)^(2/9))`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct PhillipsPerron {
    pub bandwidth: Option<usize>,
}

impl Named for Adf {
    fn name(&self) -> &str {
        "adf"
    }
}

impl Named for PhillipsPerron {
    fn name(&self) -> &str {
        "pp"
    }
}

impl UnitRootTest for Adf {
    fn statistic(&self, y: &[f64]) -> Result<(f64, usize)> {
        adf_statistic(y, self.lags)
    }
}

impl UnitRootTest for PhillipsPerron {
    fn statistic(&self, y: &[f64]) -> Result<(f64, usize)> {
        pp_statistic(y, self.bandwidth)
    }
}

/// Registry of the available tests, configured with the given lag order and
/// bandwidth.
pub fn unit_root_tests(adf_lags: usize, pp_bandwidth: Option<usize>) -> Registry<dyn UnitRootTest> {
    let mut r: Registry<dyn UnitRootTest> = Registry::new("unit-root test");
    r.register(Box::new(PhillipsPerron {
        bandwidth: pp_bandwidth,
    }));
    r.register(Box::new(Adf { lags: adf_lags }));
    r
}

struct Ols {
    beta: DVector<f64>,
    se: DVector<f64>,
    residuals: DVector<f64>,
}

fn ols(x: DMatrix<f64>, y: DVector<f64>) -> Result<Ols> {
    let (n, k) = x.shape();
    let xtx_inv = (x.transpose() * &x)
        .try_inverse()
        .ok_or_else(|| Error::DegenerateInput("singular unit-root regression".into()))?;
    let beta = &xtx_inv * (x.transpose() * &y);
    let residuals = &y - &x * &beta;
    let s2 = residuals.norm_squared() / (n - k) as f64;
    if !(s2 > 0.0) || !s2.is_finite() {
        return Err(Error::DegenerateInput("unit-root regression fits exactly".into()));
    }
    let se = DVector::from_iterator(k, (0..k).map(|i| (s2 * xtx_inv[(i, i)]).sqrt()));
    Ok(Ols { beta, se, residuals })
}

fn check_input(y: &[f64]) -> Result<()> {
    if y.len() < MIN_UNIT_ROOT_OBS {
        return Err(Error::TooFewPoints {
            needed: MIN_UNIT_ROOT_OBS,
            have: y.len(),
        });
    }
    if y.iter().all(|&v| v == y[0]) {
        return Err(Error::DegenerateInput("series has zero variance".into()));
    }
    Ok(())
}

/// `t` statistic of `rho` in `dy_t = a + rho y_{t-1} + sum g_i dy_{t-i} + e_t`.
pub fn adf_statistic(y: &[f64], lags: usize) -> Result<(f64, usize)> {
    check_input(y)?;
    let dy: Vec<f64> = y.windows(2).map(|w| w[1] - w[0]).collect();
    if dy.len() <= lags + 2 + lags {
        return Err(Error::TooFewPoints {
            needed: 2 * lags + 4,
            have: y.len(),
        });
    }
    // Rows are dy[t] for t = lags..dy.len().
    let nobs = dy.len() - lags;
    let k = 2 + lags;
    let x = DMatrix::from_fn(nobs, k, |r, c| {
        let t = r + lags;
        match c {
            0 => 1.0,
            1 => y[t],
            j => dy[t - (j - 1)],
        }
    });
    let target = DVector::from_iterator(nobs, dy[lags..].iter().copied());
    let fit = ols(x, target)?;
    Ok((fit.beta[1] / fit.se[1], nobs))
}

/// `Z_tau` from `y_t = a + b y_{t-1} + u_t`.
pub fn pp_statistic(y: &[f64], bandwidth: Option<usize>) -> Result<(f64, usize)> {
    check_input(y)?;
    let nobs = y.len() - 1;
    let t = nobs as f64;
    let x = DMatrix::from_fn(nobs, 2, |r, c| if c == 0 { 1.0 } else { y[r] });
    let target = DVector::from_iterator(nobs, y[1..].iter().copied());
    let fit = ols(x, target)?;
    let u = &fit.residuals;

    let lag = bandwidth.unwrap_or_else(|| (4.0 * (t / 100.0).powf(2.0 / 9.0)).floor() as usize);
    let gamma = |j: usize| (j..nobs).map(|i| u[i] * u[i - j]).sum::<f64>() / t;
    let gamma0 = gamma(0);
    let lrv = gamma0
        + 2.0
            * (1..=lag.min(nobs - 1))
                .map(|j| (1.0 - j as f64 / (lag as f64 + 1.0)) * gamma(j))
                .sum::<f64>();
    if !(lrv > 0.0) {
        return Err(Error::DegenerateInput("non-positive long-run variance".into()));
    }
    let s = (u.norm_squared() / (t - 2.0)).sqrt();
    let se = fit.se[1];
    let t_b = (fit.beta[1] - 1.0) / se;
    let z = (gamma0 / lrv).sqrt() * t_b - 0.5 * (lrv - gamma0) / lrv.sqrt() * (t * se / s);
    Ok((z, nobs))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WindowUnitRoot {
    pub index: usize,
    pub window: Window,
    pub t1_date: NaiveDate,
    pub t2_date: NaiveDate,
    /// One per test, in report order.
    pub outcomes: Vec<UnitRootOutcome>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestSummary {
    pub test: String,
    pub level: f64,
    pub rejected: usize,
    pub total: usize,
    pub percent: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnitRootReport {
    pub tests: Vec<String>,
    pub windows: Vec<WindowUnitRoot>,
    pub failures: Vec<(usize, String)>,
    pub summary: Vec<TestSummary>,
}

impl UnitRootReport {
    pub fn percent(&self, test: &str, level: f64) -> Option<f64> {
        self.summary
            .iter()
            .find(|s| s.test == test && (s.level - level).abs() < 1e-12)
            .map(|s| s.percent)
    }

    fn build(tests: &[&dyn UnitRootTest], windows: Vec<WindowUnitRoot>, failures: Vec<(usize, String)>) -> Self {
        let mut summary = Vec::new();
        for level in LEVELS {
            for (k, test) in tests.iter().enumerate() {
                let rejected = windows
                    .iter()
                    .filter(|w| {
                        let o = &w.outcomes[k];
                        if level == 0.01 {
                            o.reject_at_01
                        } else {
                            o.reject_at_05
                        }
                    })
                    .count();
                let total = windows.len();
                summary.push(TestSummary {
                    test: test.name().to_string(),
                    level,
                    rejected,
                    total,
                    percent: if total == 0 {
                        0.0
                    } else {
                        100.0 * rejected as f64 / total as f64
                    },
                });
            }
        }
        Self {
            tests: tests.iter().map(|t| t.name().to_string()).collect(),
            windows,
            failures,
            summary,
        }
    }
}

/// Runs `tests` on the raw residuals `ln p - LPPLS` of every qualified fit.
pub fn unit_root_report(scan: &WindowScan, series: &PriceSeries, tests: &[&dyn UnitRootTest]) -> UnitRootReport {
    let mut windows = Vec::new();
    let mut failures = Vec::new();
    for &i in &scan.qualified {
        let Some(outcome) = scan.records[i].fit.as_ref() else {
            continue;
        };
        let fit = &outcome.best;
        let run = || -> Result<Vec<UnitRootOutcome>> {
            let u = WindowData::from_series(series, fit.window).residuals(&fit.nonlinear, &fit.linear)?;
            tests.iter().map(|t| t.run(&u)).collect()
        };
        match run() {
            Ok(outcomes) => windows.push(WindowUnitRoot {
                index: i,
                window: fit.window,
                t1_date: fit.t1_date,
                t2_date: fit.t2_date,
                outcomes,
            }),
            Err(e) => failures.push((i, e.to_string())),
        }
    }
    UnitRootReport::build(tests, windows, failures)
}
