//! (mu/mu_w, lambda) CMA-ES with cumulative step-size adaptation and
//! rank-one plus rank-mu covariance updates.
//!
//! The search runs in box-normalized coordinates `[0, 1]^n` starting from the
//! box center. Candidates that leave the box are redrawn; after
//! [`MAX_RESAMPLES`] failed draws the last one is kept and scored as
//! [`COST_SENTINEL`] plus its squared distance to the box, so it never beats an
//! interior point.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::COST_SENTINEL;

pub const MAX_RESAMPLES: usize = 100;

/// Generations over which `tol_fun` stagnation is measured.
pub const STAGNATION_WINDOW: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CmaesConfig {
    pub population_size: usize,
    /// Initial step size as a fraction of the box width.
    pub sigma0: f64,
    pub max_iterations: usize,
    /// Relative best-value improvement below which the run stops.
    pub tol_fun: f64,
    /// Independent runs per window in `fit_window`.
    pub restarts: usize,
    pub seed: u64,
}

impl Default for CmaesConfig {
    fn default() -> Self {
        Self {
            population_size: default_population_size(3),
            sigma0: 0.3,
            max_iterations: 500,
            tol_fun: 1e-12,
            restarts: 3,
            seed: 0,
        }
    }
}

/// `4 + floor(3 ln n)`.
pub fn default_population_size(dim: usize) -> usize {
    4 + (3.0 * (dim as f64).ln()).floor() as usize
}

impl CmaesConfig {
    pub fn validate(&self) -> Result<()> {
        if self.population_size < 4 {
            return Err(Error::InvalidConfig(format!(
                "population_size must be >= 4, got {}",
                self.population_size
            )));
        }
        if self.max_iterations < 1 {
            return Err(Error::InvalidConfig("max_iterations must be >= 1".into()));
        }
        if self.restarts < 1 {
            return Err(Error::InvalidConfig("restarts must be >= 1".into()));
        }
        if !(self.sigma0 > 0.0 && self.sigma0.is_finite()) {
            return Err(Error::InvalidConfig(format!("sigma0 must be > 0, got {}", self.sigma0)));
        }
        if !(self.tol_fun >= 0.0) {
            return Err(Error::InvalidConfig("tol_fun must be >= 0".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub evaluations: usize,
    pub generations: usize,
}

struct Strategy {
    n: usize,
    weights: Vec<f64>,
    mu_eff: f64,
    c_sigma: f64,
    d_sigma: f64,
    c_c: f64,
    c_1: f64,
    c_mu: f64,
    chi_n: f64,
}

impl Strategy {
    fn new(n: usize, lambda: usize) -> Self {
        let nf = n as f64;
        let mu = lambda / 2;
        let raw: Vec<f64> = (0..mu)
            .map(|i| ((lambda as f64 + 1.0) / 2.0).ln() - ((i + 1) as f64).ln())
            .collect();
        let sum: f64 = raw.iter().sum();
        let weights: Vec<f64> = raw.iter().map(|w| w / sum).collect();
        let mu_eff = 1.0 / weights.iter().map(|w| w * w).sum::<f64>();

        let c_sigma = (mu_eff + 2.0) / (nf + mu_eff + 5.0);
        let d_sigma = 1.0 + 2.0 * (((mu_eff - 1.0) / (nf + 1.0)).sqrt() - 1.0).max(0.0) + c_sigma;
        let c_c = (4.0 + mu_eff / nf) / (nf + 4.0 + 2.0 * mu_eff / nf);
        let c_1 = 2.0 / ((nf + 1.3).powi(2) + mu_eff);
        let c_mu = (2.0 * (mu_eff - 2.0 + 1.0 / mu_eff) / ((nf + 2.0).powi(2) + mu_eff)).min(1.0 - c_1);
        let chi_n = nf.sqrt() * (1.0 - 1.0 / (4.0 * nf) + 1.0 / (21.0 * nf * nf));
        Self {
            n,
            weights,
            mu_eff,
            c_sigma,
            d_sigma,
            c_c,
            c_1,
            c_mu,
            chi_n,
        }
    }
}

fn in_unit_box(x: &DVector<f64>) -> bool {
    x.iter().all(|v| (0.0..=1.0).contains(v))
}

fn unit_box_distance2(x: &DVector<f64>) -> f64 {
    x.iter()
        .map(|&v| (v.min(0.0)).powi(2) + (v - 1.0).max(0.0).powi(2))
        .sum()
}

/// Minimizes `objective` over the box `bounds` (one `(lo, hi)` per dimension).
///
/// Deterministic for a given `config.seed`. Stops after
/// `config.max_iterations` generations, when both the per-generation best
/// values of the last [`STAGNATION_WINDOW`] generations and the current
/// generation's values lie within `tol_fun` (relative), or when the
/// distribution has collapsed below floating-point resolution.
pub fn cmaes_minimize(
    objective: &(dyn Fn(&[f64]) -> f64 + Sync),
    bounds: &[(f64, f64)],
    config: &CmaesConfig,
) -> Minimum {
    let n = bounds.len();
    assert!(n >= 1, "empty search box");
    assert!(
        bounds
            .iter()
            .all(|(lo, hi)| lo.is_finite() && hi.is_finite() && lo <= hi),
        "invalid search box {bounds:?}"
    );
    let lambda = config.population_size.max(4);
    let s = Strategy::new(n, lambda);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);

    let to_real = |u: &DVector<f64>| -> Vec<f64> {
        u.iter()
            .zip(bounds)
            .map(|(&v, &(lo, hi))| (lo + v * (hi - lo)).clamp(lo, hi))
            .collect()
    };
    let mut evaluations = 0usize;
    let score = |u: &DVector<f64>, evaluations: &mut usize| -> f64 {
        if in_unit_box(u) {
            *evaluations += 1;
            let v = objective(&to_real(u));
            if v.is_nan() {
                COST_SENTINEL
            } else {
                v
            }
        } else {
            COST_SENTINEL + unit_box_distance2(u)
        }
    };

    let mut mean = DVector::from_element(n, 0.5);
    let mut sigma = config.sigma0;
    let mut cov = DMatrix::<f64>::identity(n, n);
    let mut eig_vectors = DMatrix::<f64>::identity(n, n);
    let mut eig_sqrt = DVector::from_element(n, 1.0);
    let mut p_sigma = DVector::<f64>::zeros(n);
    let mut p_c = DVector::<f64>::zeros(n);

    let mut best_x = mean.clone();
    let mut best_value = score(&mean, &mut evaluations);
    let mut history: Vec<f64> = Vec::with_capacity(config.max_iterations);
    let mut generations = 0;

    for gen in 0..config.max_iterations {
        generations = gen + 1;

        let mut steps: Vec<DVector<f64>> = Vec::with_capacity(lambda);
        let mut values: Vec<f64> = Vec::with_capacity(lambda);
        for _ in 0..lambda {
            let mut y = DVector::zeros(n);
            let mut x = DVector::zeros(n);
            for _ in 0..=MAX_RESAMPLES {
                let z = DVector::from_fn(n, |_, _| StandardNormal.sample(&mut rng));
                y = &eig_vectors * eig_sqrt.component_mul(&z);
                x = &mean + sigma * &y;
                if in_unit_box(&x) {
                    break;
                }
            }
            let v = score(&x, &mut evaluations);
            if v < best_value {
                best_value = v;
                best_x = x.clone();
            }
            steps.push(y);
            values.push(v);
        }

        let mut order: Vec<usize> = (0..lambda).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));

        let mut y_w = DVector::<f64>::zeros(n);
        for (w, &i) in s.weights.iter().zip(&order) {
            y_w += *w * &steps[i];
        }
        mean += sigma * &y_w;

        // C^{-1/2} y_w = B D^{-1} B^T y_w
        let inv_sqrt_y = &eig_vectors * (eig_vectors.transpose() * &y_w).component_div(&eig_sqrt);
        p_sigma = (1.0 - s.c_sigma) * &p_sigma + (s.c_sigma * (2.0 - s.c_sigma) * s.mu_eff).sqrt() * inv_sqrt_y;
        let ps_norm = p_sigma.norm();
        let h_sigma = ps_norm / (1.0 - (1.0 - s.c_sigma).powi(2 * (gen as i32 + 1))).sqrt()
            < (1.4 + 2.0 / (s.n as f64 + 1.0)) * s.chi_n;
        let h = if h_sigma { 1.0 } else { 0.0 };
        p_c = (1.0 - s.c_c) * &p_c + h * (s.c_c * (2.0 - s.c_c) * s.mu_eff).sqrt() * &y_w;

        let mut rank_mu = DMatrix::<f64>::zeros(n, n);
        for (w, &i) in s.weights.iter().zip(&order) {
            rank_mu += *w * &steps[i] * steps[i].transpose();
        }
        let delta_h = (1.0 - h) * s.c_c * (2.0 - s.c_c);
        cov = (1.0 - s.c_1 - s.c_mu) * &cov + s.c_1 * (&p_c * p_c.transpose() + delta_h * &cov) + s.c_mu * rank_mu;
        cov = 0.5 * (&cov + cov.transpose());

        sigma *= ((s.c_sigma / s.d_sigma) * (ps_norm / s.chi_n - 1.0)).exp();

        let eig = SymmetricEigen::new(cov.clone());
        if eig.eigenvalues.iter().any(|v| !v.is_finite()) {
            break;
        }
        eig_vectors = eig.eigenvectors;
        eig_sqrt = eig.eigenvalues.map(|v| v.max(1e-300).sqrt());

        history.push(values[order[0]]);
        if history.len() >= STAGNATION_WINDOW {
            let recent = &history[history.len() - STAGNATION_WINDOW..];
            let lo = recent.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = recent.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            let spread = values[order[lambda - 1]] - values[order[0]];
            let tol = config.tol_fun * lo.abs();
            if hi - lo <= tol && spread <= tol {
                break;
            }
        }
        if sigma * eig_sqrt.max() < 1e-15 || !sigma.is_finite() {
            break;
        }
    }

    Minimum {
        x: to_real(&best_x),
        value: best_value,
        evaluations,
        generations,
    }
}
