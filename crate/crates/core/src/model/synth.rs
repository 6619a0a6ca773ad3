use chrono::NaiveDate;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::noise::NoiseSpec;
use super::{evaluate, LinearParams, NonlinearParams};
use crate::error::{Error, Result};
use crate::timeseries::{weekday_calendar, PriceSeries, Window};

/// Prices `exp(LPPLS(t) + noise)` for ordinals `0..=window.t2` on a weekday
/// calendar starting at `start`.
///
/// The window only fixes the end of the series and is the range callers are
/// expected to fit; the earlier ordinals are generated from the same model.
pub fn synthesize(
    nl: &NonlinearParams,
    lin: &LinearParams,
    window: Window,
    noise: &NoiseSpec,
    seed: u64,
    start: NaiveDate,
) -> Result<PriceSeries> {
    if !(nl.tc > window.t2 as f64) {
        return Err(Error::Domain {
            t: window.t2 as f64,
            tc: nl.tc,
        });
    }
    let model = noise.build()?;
    let n = window.t2 + 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let eps = model.sample(n, &mut rng);
    let dates = weekday_calendar(start, n);
    let rows = (0..n)
        .map(|t| evaluate(nl, lin, t as f64).map(|y| (dates[t], (y + eps[t]).exp())))
        .collect::<Result<Vec<_>>>()?;
    PriceSeries::from_rows(rows)
}
