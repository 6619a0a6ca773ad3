use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::SearchBox;
use crate::error::{Error, Result};
use crate::model::{cost, FilterConfig, LpplsFit, NonlinearParams, WindowData};
use crate::timeseries::PriceSeries;

pub const MIN_GRID_RESOLUTION: usize = 8;

/// Which two nonlinear parameters vary; the third is held at its fitted value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ParamPair {
    TcM,
    TcOmega,
    MOmega,
}

impl ParamPair {
    pub const ALL: [ParamPair; 3] = [ParamPair::TcM, ParamPair::TcOmega, ParamPair::MOmega];

    /// Parameter indices `(x, y)` into `[tc, m, omega]`.
    fn axes(self) -> (usize, usize) {
        match self {
            ParamPair::TcM => (0, 1),
            ParamPair::TcOmega => (0, 2),
            ParamPair::MOmega => (1, 2),
        }
    }

    pub fn labels(self) -> (&'static str, &'static str) {
        const NAMES: [&str; 3] = ["tc", "m", "omega"];
        let (x, y) = self.axes();
        (NAMES[x], NAMES[y])
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ParamPair::TcM => "tc-m",
            ParamPair::TcOmega => "tc-omega",
            ParamPair::MOmega => "m-omega",
        }
    }
}

impl fmt::Display for ParamPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ParamPair {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tc-m" => Ok(ParamPair::TcM),
            "tc-omega" => Ok(ParamPair::TcOmega),
            "m-omega" => Ok(ParamPair::MOmega),
            other => Err(Error::UnknownName {
                kind: "parameter pair",
                name: other.to_string(),
                known: "tc-m, tc-omega, m-omega".into(),
            }),
        }
    }
}

/// Profiled cost on a rectangular grid.
///
/// `values` is row-major with `x` as the slow index:
/// `values[i * ys.len() + j]` is the cost at `(xs[i], ys[j])`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CostGrid {
    pub pair: ParamPair,
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    pub values: Vec<f64>,
    /// The fitted point the third parameter is taken from.
    pub center: NonlinearParams,
}

impl CostGrid {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.ys.len() + j]
    }

    /// `(i, j, value)` of the smallest cell; first one wins on ties.
    pub fn argmin(&self) -> (usize, usize, f64) {
        let (k, v) = self
            .values
            .iter()
            .enumerate()
            .fold((0, f64::INFINITY), |acc, (k, &v)| if v < acc.1 { (k, v) } else { acc });
        (k / self.ys.len(), k % self.ys.len(), v)
    }

    /// `(x, y, cost)` rows in storage order.
    pub fn rows(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        self.xs
            .iter()
            .flat_map(move |&x| self.ys.iter().map(move |&y| (x, y)))
            .zip(&self.values)
            .map(|((x, y), &v)| (x, y, v))
    }
}

fn linspace((lo, hi): (f64, f64), n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

/// Evaluates the profiled cost over the search box for one parameter pair,
/// holding the remaining parameter at `fit`'s value.
pub fn grid_slice(
    series: &PriceSeries,
    fit: &LpplsFit,
    pair: ParamPair,
    resolution: usize,
    filters: &FilterConfig,
) -> Result<CostGrid> {
    if resolution < MIN_GRID_RESOLUTION {
        return Err(Error::InvalidConfig(format!(
            "grid resolution must be >= {MIN_GRID_RESOLUTION}, got {resolution}"
        )));
    }
    let data = WindowData::from_series(series, fit.window);
    let bounds = SearchBox::for_window(fit.window, filters).bounds();
    let (xi, yi) = pair.axes();
    let xs = linspace(bounds[xi], resolution);
    let ys = linspace(bounds[yi], resolution);
    let center = fit.nonlinear;
    let mut values = Vec::with_capacity(resolution * resolution);
    for &x in &xs {
        for &y in &ys {
            let mut p = center.to_array();
            p[xi] = x;
            p[yi] = y;
            values.push(cost(&NonlinearParams::from_slice(&p), &data));
        }
    }
    Ok(CostGrid {
        pair,
        xs,
        ys,
        values,
        center,
    })
}
