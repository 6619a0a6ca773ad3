//! Additive log-price noise generators for synthetic series.

use rand::RngCore;
use rand_distr::{Distribution, Normal, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::registry::{Named, Registry};

pub trait NoiseModel: Named + Send + Sync {
    /// `n` noise values drawn from `rng`.
    fn sample(&self, n: usize, rng: &mut dyn RngCore) -> Vec<f64>;
}

/// Serializable description of a noise model, as given on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum NoiseSpec {
    None,
    Gaussian {
        sigma: f64,
    },
    /// Stationary AR(1): `e[t] = phi e[t-1] + sigma z[t]`.
    Ou {
        phi: f64,
        sigma: f64,
    },
}

impl NoiseSpec {
    pub fn name(&self) -> &'static str {
        match self {
            NoiseSpec::None => "none",
            NoiseSpec::Gaussian { .. } => "gaussian",
            NoiseSpec::Ou { .. } => "ou",
        }
    }

    pub fn build(&self) -> Result<Box<dyn NoiseModel>> {
        match *self {
            NoiseSpec::None => Ok(Box::new(NoNoise)),
            NoiseSpec::Gaussian { sigma } => Ok(Box::new(Gaussian::new(sigma)?)),
            NoiseSpec::Ou { phi, sigma } => Ok(Box::new(OrnsteinUhlenbeck::new(phi, sigma)?)),
        }
    }
}

pub struct NoNoise;

impl Named for NoNoise {
    fn name(&self) -> &str {
        "none"
    }
}

impl NoiseModel for NoNoise {
    fn sample(&self, n: usize, _rng: &mut dyn RngCore) -> Vec<f64> {
        vec![0.0; n]
    }
}

pub struct Gaussian {
    dist: Normal<f64>,
}

impl Gaussian {
    pub fn new(sigma: f64) -> Result<Self> {
        if !(sigma.is_finite() && sigma >= 0.0) {
            return Err(Error::InvalidNoise(format!("sigma must be >= 0, got {sigma}")));
        }
        let dist = Normal::new(0.0, sigma).map_err(|e| Error::InvalidNoise(e.to_string()))?;
        Ok(Self { dist })
    }
}

impl Named for Gaussian {
    fn name(&self) -> &str {
        "gaussian"
    }
}

impl NoiseModel for Gaussian {
    fn sample(&self, n: usize, rng: &mut dyn RngCore) -> Vec<f64> {
        (0..n).map(|_| self.dist.sample(rng)).collect()
    }
}

/// Discretely sampled Ornstein-Uhlenbeck noise, started from its stationary law.
pub struct OrnsteinUhlenbeck {
    phi: f64,
    sigma: f64,
}

impl OrnsteinUhlenbeck {
    pub fn new(phi: f64, sigma: f64) -> Result<Self> {
        if !(phi.abs() < 1.0) {
            return Err(Error::InvalidNoise(format!("|phi| must be < 1, got {phi}")));
        }
        if !(sigma.is_finite() && sigma >= 0.0) {
            return Err(Error::InvalidNoise(format!("sigma must be >= 0, got {sigma}")));
        }
        Ok(Self { phi, sigma })
    }
}

impl Named for OrnsteinUhlenbeck {
    fn name(&self) -> &str {
        "ou"
    }
}

impl NoiseModel for OrnsteinUhlenbeck {
    fn sample(&self, n: usize, rng: &mut dyn RngCore) -> Vec<f64> {
        let mut out = Vec::with_capacity(n);
        if n == 0 {
            return out;
        }
        let stationary_sd = self.sigma / (1.0 - self.phi * self.phi).sqrt();
        let z: f64 = StandardNormal.sample(rng);
        let mut e = stationary_sd * z;
        out.push(e);
        for _ in 1..n {
            let z: f64 = StandardNormal.sample(rng);
            e = self.phi * e + self.sigma * z;
            out.push(e);
        }
        out
    }
}

/// Default-parameter instances of every generator, by name.
pub fn registry() -> Registry<dyn NoiseModel> {
    let mut reg: Registry<dyn NoiseModel> = Registry::new("noise model");
    reg.register(Box::new(NoNoise))
        .register(Box::new(Gaussian::new(0.01).expect("valid sigma")))
        .register(Box::new(OrnsteinUhlenbeck::new(0.7, 0.01).expect("valid params")));
    reg
}
