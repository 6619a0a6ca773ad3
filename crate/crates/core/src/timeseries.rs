//! Daily closing prices on a trading-day ordinal axis.
//!
//! Every model time (t, tc, the sample points of a window) is a real number
//! on the ordinal axis `0..N-1`, so weekends and exchange holidays never
//! distort `ln(tc - t)`.

use std::fs::File;
use std::path::Path;

use chrono::{Datelike, Days, NaiveDate, Weekday};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Shortest window the fitter accepts.
pub const MIN_WINDOW_LEN: usize = 30;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PriceSeries {
    dates: Vec<NaiveDate>,
    prices: Vec<f64>,
}

/// An inclusive `[t1, t2]` range of trading-day ordinals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Window {
    pub t1: usize,
    pub t2: usize,
}

/// A window boundary given either as a calendar date or as an ordinal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    Date(NaiveDate),
    Ordinal(usize),
}

impl From<NaiveDate> for Bound {
    fn from(d: NaiveDate) -> Self {
        Bound::Date(d)
    }
}

impl From<usize> for Bound {
    fn from(i: usize) -> Self {
        Bound::Ordinal(i)
    }
}

impl Window {
    pub fn new(t1: usize, t2: usize) -> Result<Self> {
        if t1 >= t2 {
            return Err(Error::InvalidWindow(format!("t1 = {t1} must be < t2 = {t2}")));
        }
        Ok(Self { t1, t2 })
    }

    pub fn len(&self) -> usize {
        self.t2 - self.t1 + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Sample times `t1, t1+1, ..., t2` as reals.
    pub fn times(&self) -> Vec<f64> {
        (self.t1..=self.t2).map(|t| t as f64).collect()
    }

    pub fn ensure_fittable(&self) -> Result<()> {
        if self.len() < MIN_WINDOW_LEN {
            return Err(Error::WindowTooShort {
                len: self.len(),
                min: MIN_WINDOW_LEN,
            });
        }
        Ok(())
    }
}

/// Which way a calendar date that is not a trading day should move.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Snap {
    Forward,
    Backward,
}

impl PriceSeries {
    /// Builds a series from (date, price) rows in any order.
    pub fn from_rows(rows: impl IntoIterator<Item = (NaiveDate, f64)>) -> Result<Self> {
        let mut rows: Vec<(usize, NaiveDate, f64)> =
            rows.into_iter().enumerate().map(|(i, (d, p))| (i + 1, d, p)).collect();
        Self::from_numbered_rows(&mut rows)
    }

    fn from_numbered_rows(rows: &mut [(usize, NaiveDate, f64)]) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::EmptySeries);
        }
        for &(row, _, price) in rows.iter() {
            if !(price.is_finite() && price > 0.0) {
                return Err(Error::BadRow {
                    row: row as u64,
                    message: format!("price must be positive and finite, got {price}"),
                });
            }
        }
        rows.sort_by_key(|&(_, d, _)| d);
        for pair in rows.windows(2) {
            if pair[0].1 == pair[1].1 {
                return Err(Error::DuplicateDate {
                    row: pair[0].0.max(pair[1].0) as u64,
                    date: pair[1].1,
                });
            }
        }
        Ok(Self {
            dates: rows.iter().map(|r| r.1).collect(),
            prices: rows.iter().map(|r| r.2).collect(),
        })
    }

    /// Reads a headed, comma-delimited CSV with ISO-8601 dates.
    ///
    /// Lines starting with `#` are skipped. Row numbers in errors are file
    /// line numbers.
    pub fn load_csv(path: impl AsRef<Path>, date_column: &str, price_column: &str) -> Result<Self> {
        let path = path.as_ref();
        let file = File::open(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let mut reader = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .trim(csv::Trim::All)
            .from_reader(file);
        let headers = reader.headers()?.clone();
        let column = |name: &str| {
            headers
                .iter()
                .position(|h| h == name)
                .ok_or_else(|| Error::MissingColumn(name.to_string()))
        };
        let date_idx = column(date_column)?;
        let price_idx = column(price_column)?;

        let mut rows = Vec::new();
        for record in reader.records() {
            let record = record?;
            let line = record.position().map(|p| p.line()).unwrap_or(0);
            let bad = |message: String| Error::BadRow { row: line, message };
            let date_text = record.get(date_idx).ok_or_else(|| bad("missing date".into()))?;
            let price_text = record.get(price_idx).ok_or_else(|| bad("missing price".into()))?;
            let date = NaiveDate::parse_from_str(date_text, "%Y-%m-%d")
                .map_err(|e| bad(format!("bad date `{date_text}`: {e}")))?;
            let price: f64 = price_text
                .parse()
                .map_err(|e| bad(format!("bad price `{price_text}`: {e}")))?;
            rows.push((line as usize, date, price));
        }
        Self::from_numbered_rows(&mut rows)
    }

    pub fn len(&self) -> usize {
        self.dates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dates.is_empty()
    }

    pub fn dates(&self) -> &[NaiveDate] {
        &self.dates
    }

    pub fn prices(&self) -> &[f64] {
        &self.prices
    }

    pub fn ordinals(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    pub fn last_ordinal(&self) -> usize {
        self.len() - 1
    }

    pub fn log_prices(&self) -> Vec<f64> {
        self.prices.iter().map(|p| p.ln()).collect()
    }

    pub fn date(&self, ordinal: usize) -> Option<NaiveDate> {
        self.dates.get(ordinal).copied()
    }

    /// Ordinal of `date`, snapping to the next (or previous) trading day.
    pub fn resolve_date(&self, date: NaiveDate, snap: Snap) -> Option<usize> {
        match self.dates.binary_search(&date) {
            Ok(i) => Some(i),
            Err(i) => match snap {
                Snap::Forward => (i < self.len()).then_some(i),
                Snap::Backward => i.checked_sub(1),
            },
        }
    }

    pub fn resolve(&self, bound: Bound, snap: Snap) -> Result<usize> {
        match bound {
            Bound::Ordinal(i) if i < self.len() => Ok(i),
            Bound::Ordinal(i) => Err(Error::InvalidWindow(format!(
                "ordinal {i} outside series of {} points",
                self.len()
            ))),
            Bound::Date(d) => self
                .resolve_date(d, snap)
                .ok_or_else(|| Error::InvalidWindow(format!("date {d} has no trading day inside the series"))),
        }
    }

    /// Resolves a pair of bounds into a window, snapping `t1` forward and
    /// `t2` backward.
    pub fn window(&self, t1: impl Into<Bound>, t2: impl Into<Bound>) -> Result<Window> {
        let t1 = self.resolve(t1.into(), Snap::Forward)?;
        let t2 = self.resolve(t2.into(), Snap::Backward)?;
        Window::new(t1, t2)
    }

    /// The window and its log-prices `ln p(t1..=t2)`.
    pub fn slice(&self, t1: impl Into<Bound>, t2: impl Into<Bound>) -> Result<(Window, Vec<f64>)> {
        let window = self.window(t1, t2)?;
        Ok((window, self.window_log_prices(window)))
    }

    pub fn window_log_prices(&self, window: Window) -> Vec<f64> {
        self.prices[window.t1..=window.t2].iter().map(|p| p.ln()).collect()
    }

    /// Calendar date for a real-valued ordinal.
    ///
    /// Inside the sample the nearest trading day is returned. Past the last
    /// observation, Monday-Friday weekdays are counted forward from the last
    /// date, ignoring holidays.
    pub fn ordinal_to_date(&self, x: f64) -> NaiveDate {
        let last = self.last_ordinal();
        let x = if x.is_nan() { 0.0 } else { x.max(0.0) };
        let beyond = (x - last as f64).round();
        if beyond <= 0.0 {
            let idx = (x.round() as usize).min(last);
            return self.dates[idx];
        }
        add_weekdays(self.dates[last], beyond.min(1e6) as u64)
    }
}

/// Advances `steps` Monday-Friday days from `start`.
pub fn add_weekdays(start: NaiveDate, steps: u64) -> NaiveDate {
    let mut date = start;
    let mut remaining = steps;
    while remaining > 0 {
        date = date + Days::new(1);
        if !matches!(date.weekday(), Weekday::Sat | Weekday::Sun) {
            remaining -= 1;
        }
    }
    date
}

/// `n` consecutive weekdays beginning at `start` (or the next weekday).
pub fn weekday_calendar(start: NaiveDate, n: usize) -> Vec<NaiveDate> {
    let mut first = start;
    while matches!(first.weekday(), Weekday::Sat | Weekday::Sun) {
        first = first + Days::new(1);
    }
    let mut dates = Vec::with_capacity(n);
    let mut d = first;
    for _ in 0..n {
        dates.push(d);
        d = add_weekdays(d, 1);
    }
    dates
}
