//! Calibration of the log-periodic power law singularity (LPPLS) model to
//! daily price series, with window-ensemble forecasting of the critical
//! time and residual diagnostics.
//!
//! The modules follow the pipeline:
//!
//! * [`timeseries`]: CSV ingestion and the trading-day ordinal axis.
//! * [`model`]: model evaluation, the profiled linear solve, qualification
//!   filters and a synthesizer.
//! * [`optimizer`]: CMA-ES over `(tc, m, omega)` and per-window fitting.
//! * [`windows`]: expanding/shrinking scans and critical-time forecasts.
//! * [`diagnostics`]: Lomb periodograms and unit-root tests on residuals.

pub mod diagnostics;
pub mod error;
pub mod model;
pub mod optimizer;
pub mod registry;
pub mod timeseries;
pub mod windows;

pub use error::{Error, Result};
