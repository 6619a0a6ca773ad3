//! Minimization of the profiled cost over (tc, m, omega).

mod cmaes;
mod fit;
mod landscape;

use serde::{Deserialize, Serialize};

use crate::model::FilterConfig;
use crate::registry::{Named, Registry};
use crate::timeseries::Window;

pub use cmaes::{cmaes_minimize, default_population_size, CmaesConfig, Minimum, MAX_RESAMPLES, STAGNATION_WINDOW};
pub use fit::{fit_window, FitConfig, FitOutcome, RestartResult};
pub use landscape::{grid_slice, CostGrid, ParamPair, MIN_GRID_RESOLUTION};

/// Smallest admissible `tc - t2`.
pub const TC_MARGIN: f64 = 0.01;

/// A box-constrained global minimizer.
pub trait Minimizer: Named + Send + Sync {
    fn minimize(&self, objective: &(dyn Fn(&[f64]) -> f64 + Sync), bounds: &[(f64, f64)], seed: u64) -> Minimum;
}

pub struct Cmaes {
    pub config: CmaesConfig,
}

impl Named for Cmaes {
    fn name(&self) -> &str {
        "cmaes"
    }
}

impl Minimizer for Cmaes {
    fn minimize(&self, objective: &(dyn Fn(&[f64]) -> f64 + Sync), bounds: &[(f64, f64)], seed: u64) -> Minimum {
        cmaes_minimize(objective, bounds, &CmaesConfig { seed, ..self.config })
    }
}

/// Registered minimizers, configured from `config`.
pub fn minimizers(config: &CmaesConfig) -> Registry<dyn Minimizer> {
    let mut reg: Registry<dyn Minimizer> = Registry::new("minimizer");
    reg.register(Box::new(Cmaes { config: *config }));
    reg
}

/// Search bounds for (tc, m, omega) on one window.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchBox {
    pub tc_range: (f64, f64),
    pub m_range: (f64, f64),
    pub omega_range: (f64, f64),
}

impl SearchBox {
    /// The qualification bounds, with `tc` kept strictly after `t2`.
    pub fn for_window(window: Window, filters: &FilterConfig) -> Self {
        let (lo, hi) = filters.tc_range(window);
        let lo = lo + TC_MARGIN;
        Self {
            tc_range: (lo, hi.max(lo)),
            m_range: filters.m_range,
            omega_range: filters.omega_range,
        }
    }

    pub fn bounds(&self) -> [(f64, f64); 3] {
        [self.tc_range, self.m_range, self.omega_range]
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.iter().zip(self.bounds()).all(|(v, (lo, hi))| *v >= lo && *v <= hi)
    }
}
