use anyhow::Result;
use chrono::NaiveDate;
use lppls::model::{evaluate, LpplsFit};
use lppls::optimizer::fit_window;
use serde::Serialize;
use serde_json::json;

use super::{load_series, run_config, Status};
use crate::args::FitArgs;
use crate::output::OutDir;

#[derive(Serialize)]
struct ResidualRow {
    t: usize,
    date: NaiveDate,
    log_price: f64,
    model: f64,
    residual: f64,
}

/// "qualified", or the filters the fit failed.
pub fn verdict(fit: &LpplsFit, strict_b: bool) -> String {
    let f = &fit.filter;
    if f.qualified {
        return "qualified".into();
    }
    let b_ok = if strict_b { f.b_negative } else { f.b_below_one };
    let failed: Vec<&str> = [
        (f.m_in_range, "m"),
        (f.omega_in_range, "omega"),
        (f.tc_in_range, "tc"),
        (f.damping_ok, "damping"),
        (f.oscillations_ok, "oscillations"),
        (b_ok, "B"),
    ]
    .into_iter()
    .filter(|(ok, _)| !ok)
    .map(|(_, name)| name)
    .collect();
    format!("not qualified (failed: {})", failed.join(", "))
}

pub fn run(args: &FitArgs) -> Result<Status> {
    let series = load_series(&args.input)?;
    let window = series.window(args.t1, args.t2)?;
    let cfg = args.fit.fit_config(args.common.seed);
    let outcome = fit_window(&series, window, &cfg)?;
    let fit = &outcome.best;

    let config = run_config("fit", args, json!({ "window": window, "fit": cfg }));
    let out = OutDir::create(&args.common.out_dir, &config)?;
    out.json("fit.json", &json!({ "outcome": outcome }))?;
    let rows = window.times().into_iter().map(|t| {
        let i = t as usize;
        let log_price = series.prices()[i].ln();
        let model = evaluate(&fit.nonlinear, &fit.linear, t).unwrap_or(f64::NAN);
        ResidualRow {
            t: i,
            date: series.dates()[i],
            log_price,
            model,
            residual: log_price - model,
        }
    });
    out.csv("residuals.csv", rows)?;

    println!(
        "window {} .. {}: tc = {} (ordinal {:.2}), m = {:.4}, omega = {:.4}, {}",
        fit.t1_date,
        fit.t2_date,
        fit.tc_date,
        fit.nonlinear.tc,
        fit.nonlinear.m,
        fit.nonlinear.omega,
        verdict(fit, cfg.filters.strict_b)
    );
    Ok(if fit.qualified() { Status::Ok } else { Status::Negative })
}
