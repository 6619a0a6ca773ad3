use serde::{Deserialize, Serialize};

use super::{ScanMode, WindowScan};
use crate::error::{Error, Result};

/// `(t2, tc - t2)` per qualified fit with its rank trend.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapSeries {
    pub points: Vec<(usize, f64)>,
    pub spearman: f64,
}

/// Ranks starting at 1, ties sharing their average rank.
fn ranks(xs: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..xs.len()).collect();
    order.sort_by(|&a, &b| xs[a].total_cmp(&xs[b]));
    let mut out = vec![0.0; xs.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && xs[order[j + 1]] == xs[order[i]] {
            j += 1;
        }
        let rank = (i + j) as f64 / 2.0 + 1.0;
        for &k in &order[i..=j] {
            out[k] = rank;
        }
        i = j + 1;
    }
    out
}

/// Spearman rank correlation; NaN when either side is constant.
pub fn spearman(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len());
    let (rx, ry) = (ranks(xs), ranks(ys));
    let n = rx.len() as f64;
    let (mx, my) = (rx.iter().sum::<f64>() / n, ry.iter().sum::<f64>() / n);
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in rx.iter().zip(&ry) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    sxy / (sxx * syy).sqrt()
}

pub fn gap_series(scan: &WindowScan) -> Result<GapSeries> {
    if scan.spec.mode != ScanMode::Expanding {
        return Err(Error::InvalidConfig("gap series needs an expanding scan".into()));
    }
    let points: Vec<(usize, f64)> = scan
        .qualified_fits()
        .map(|f| (f.best.window.t2, f.best.gap()))
        .collect();
    gap_from_points(points)
}

pub(crate) fn gap_from_points(points: Vec<(usize, f64)>) -> Result<GapSeries> {
    if points.len() < 3 {
        return Err(Error::TooFewPoints {
            needed: 3,
            have: points.len(),
        });
    }
    let t2: Vec<f64> = points.iter().map(|p| p.0 as f64).collect();
    let gap: Vec<f64> = points.iter().map(|p| p.1).collect();
    Ok(GapSeries {
        spearman: spearman(&t2, &gap),
        points,
    })
}

/// `(t2, m)` per qualified fit, in window order.
pub fn m_series(scan: &WindowScan) -> Result<Vec<(usize, f64)>> {
    let points: Vec<(usize, f64)> = scan
        .qualified_fits()
        .map(|f| (f.best.window.t2, f.best.nonlinear.m))
        .collect();
    if points.len() < 2 {
        return Err(Error::TooFewPoints {
            needed: 2,
            have: points.len(),
        });
    }
    Ok(points)
}
