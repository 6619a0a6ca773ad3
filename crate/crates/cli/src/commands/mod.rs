pub mod diagnose;
pub mod fit;
pub mod landscape;
pub mod scan;
pub mod synth;

use anyhow::{Context, Result};
use lppls::timeseries::PriceSeries;
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::InputArgs;

/// Result of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// The analysis ran but its answer is negative (unqualified fit, no
    /// forecast).
    Negative,
}

pub fn load_series(input: &InputArgs) -> Result<PriceSeries> {
    PriceSeries::load_csv(&input.input, &input.date_column, &input.price_column)
        .with_context(|| format!("loading {}", input.input.display()))
}

/// Configuration embedded in every artifact: the command, its flags and the
/// resolved settings derived from them.
pub fn run_config(command: &str, flags: &impl Serialize, resolved: Value) -> Value {
    json!({
        "command": command,
        "flags": flags,
        "resolved": resolved,
    })
}
