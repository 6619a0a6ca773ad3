use serde::{Deserialize, Serialize};

use super::DetrendedResiduals;
use crate::error::{Error, Result};

pub const MIN_LOMB_SAMPLES: usize = 8;

/// Evenly spaced angular frequencies `min..=max`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LombGrid {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Default for LombGrid {
    fn default() -> Self {
        Self {
            min: 1.0,
            max: 25.0,
            count: 512,
        }
    }
}

impl LombGrid {
    pub fn frequencies(&self) -> Result<Vec<f64>> {
        if !(self.min > 0.0 && self.max > self.min && self.count >= 2) {
            return Err(Error::InvalidConfig(format!(
                "frequency grid needs 0 < min < max and count >= 2, got {self:?}"
            )));
        }
        let step = (self.max - self.min) / (self.count - 1) as f64;
        Ok((0..self.count).map(|i| self.min + step * i as f64).collect())
    }

    pub fn spacing(&self) -> f64 {
        (self.max - self.min) / (self.count - 1) as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LombResult {
    pub frequencies: Vec<f64>,
    pub power: Vec<f64>,
    pub omega_lomb: f64,
    pub p_max: f64,
    pub false_alarm: f64,
    /// Filled in by callers that know the fitted frequency.
    pub omega_fit: Option<f64>,
    pub ratio: Option<f64>,
}

impl LombResult {
    pub fn with_fit(mut self, omega_fit: f64) -> Self {
        self.omega_fit = Some(omega_fit);
        self.ratio = Some(omega_fit / self.omega_lomb);
        self
    }
}

/// Normalized Lomb-Scargle periodogram of `r` sampled at `x`.
///
/// The mean is removed, the power is scaled by twice the sample variance, and
/// each frequency uses the offset `tau` that makes the sine and cosine terms
/// orthogonal. The false-alarm probability of the peak `z` is
/// `1 - (1 - e^-z)^M` with `M` the grid size.
pub fn lomb(residuals: &DetrendedResiduals, grid: &LombGrid) -> Result<LombResult> {
    let (x, y) = (&residuals.x, &residuals.r);
    let n = x.len();
    if n < MIN_LOMB_SAMPLES {
        return Err(Error::TooFewPoints {
            needed: MIN_LOMB_SAMPLES,
            have: n,
        });
    }
    let frequencies = grid.frequencies()?;
    let mean = y.iter().sum::<f64>() / n as f64;
    let centered: Vec<f64> = y.iter().map(|v| v - mean).collect();
    let var = centered.iter().map(|v| v * v).sum::<f64>() / (n - 1) as f64;
    let scale = y.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    if !(var.sqrt() > 1e-12 * scale) || !var.is_finite() {
        return Err(Error::DegenerateInput("residuals have zero variance".into()));
    }

    let power: Vec<f64> = frequencies
        .iter()
        .map(|&w| {
            let (mut s2, mut c2) = (0.0, 0.0);
            for &xi in x {
                let (s, c) = (2.0 * w * xi).sin_cos();
                s2 += s;
                c2 += c;
            }
            let tau = s2.atan2(c2) / (2.0 * w);
            let (mut yc, mut ys, mut cc, mut ss) = (0.0, 0.0, 0.0, 0.0);
            for (&xi, &yi) in x.iter().zip(&centered) {
                let (s, c) = (w * (xi - tau)).sin_cos();
                yc += yi * c;
                ys += yi * s;
                cc += c * c;
                ss += s * s;
            }
            let mut p = 0.0;
            if cc > 0.0 {
                p += yc * yc / cc;
            }
            if ss > 0.0 {
                p += ys * ys / ss;
            }
            (p / (2.0 * var)).max(0.0)
        })
        .collect();

    let (k, p_max) = power.iter().enumerate().fold(
        (0, f64::NEG_INFINITY),
        |acc, (k, &p)| if p > acc.1 { (k, p) } else { acc },
    );
    let m = frequencies.len() as f64;
    // 1 - (1 - e^-z)^M without cancellation for large z.
    let false_alarm = (-(m * (-(-p_max).exp()).ln_1p()).exp_m1()).clamp(0.0, 1.0);
    Ok(LombResult {
        omega_lomb: frequencies[k],
        frequencies,
        power,
        p_max,
        false_alarm,
        omega_fit: None,
        ratio: None,
    })
}
