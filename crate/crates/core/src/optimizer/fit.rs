use serde::{Deserialize, Serialize};

use super::{minimizers, CmaesConfig, SearchBox};
use crate::error::{Error, Result};
use crate::model::{cost, solve_linear, FilterConfig, LpplsFit, NonlinearParams, WindowData};
use crate::timeseries::{PriceSeries, Window};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitConfig {
    pub minimizer: String,
    pub cmaes: CmaesConfig,
    pub filters: FilterConfig,
}

impl Default for FitConfig {
    fn default() -> Self {
        Self {
            minimizer: "cmaes".to_string(),
            cmaes: CmaesConfig::default(),
            filters: FilterConfig::default(),
        }
    }
}

impl FitConfig {
    pub fn with_seed(&self, seed: u64) -> Self {
        let mut cfg = self.clone();
        cfg.cmaes.seed = seed;
        cfg
    }
}

/// Best point of one restart.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RestartResult {
    pub nonlinear: NonlinearParams,
    pub sse: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitOutcome {
    pub best: LpplsFit,
    pub all_restarts: Vec<RestartResult>,
    pub evaluations: usize,
}

/// Calibrates one window with `restarts` independent minimizer runs.
///
/// Run `k` uses seed `config.cmaes.seed + k`. The run with the lowest SSE
/// wins, ties going to the earlier run.
pub fn fit_window(series: &PriceSeries, window: Window, config: &FitConfig) -> Result<FitOutcome> {
    config.cmaes.validate()?;
    window.ensure_fittable()?;
    if window.t2 >= series.len() {
        return Err(Error::InvalidWindow(format!(
            "t2 = {} outside series of {} points",
            window.t2,
            series.len()
        )));
    }
    let registry = minimizers(&config.cmaes);
    let minimizer = registry.get(&config.minimizer)?;

    let data = WindowData::from_series(series, window);
    let search = SearchBox::for_window(window, &config.filters);
    let bounds = search.bounds();
    let objective = |x: &[f64]| cost(&NonlinearParams::from_slice(x), &data);

    let mut restarts = Vec::with_capacity(config.cmaes.restarts);
    let mut evaluations = 0;
    let mut best: Option<(NonlinearParams, crate::model::LinearSolution, u64)> = None;
    for k in 0..config.cmaes.restarts {
        let seed = config.cmaes.seed.wrapping_add(k as u64);
        let found = minimizer.minimize(&objective, &bounds, seed);
        evaluations += found.evaluations;
        let nl = NonlinearParams::from_slice(&found.x);
        let sse = match solve_linear(&nl, &data) {
            Ok(sol) => {
                if best.as_ref().is_none_or(|(_, b, _)| sol.sse < b.sse) {
                    best = Some((nl, sol, seed));
                }
                sol.sse
            }
            Err(_) => found.value,
        };
        restarts.push(RestartResult {
            nonlinear: nl,
            sse,
            seed,
        });
    }

    let (nl, sol, seed) = best.ok_or(Error::AllRestartsDegenerate(config.cmaes.restarts))?;
    Ok(FitOutcome {
        best: LpplsFit::new(series, window, nl, sol.params, sol.sse, seed, &config.filters),
        all_restarts: restarts,
        evaluations,
    })
}
