use std::fs;

use anyhow::{bail, Context, Result};
use chrono::NaiveDate;
use lppls::diagnostics::{
    detrend, harmonic_check, lomb, unit_root_report, unit_root_tests, LombGrid, UnitRootTest, LEVELS,
};
use lppls::model::WindowData;
use lppls::timeseries::PriceSeries;
use lppls::windows::WindowScan;
use serde::Serialize;
use serde_json::json;

use super::{load_series, run_config, Status};
use crate::args::{Check, DiagnoseArgs};
use crate::output::OutDir;

/// Significance threshold for the periodogram peak.
const FALSE_ALARM_LEVEL: f64 = 1e-5;

#[derive(Serialize)]
struct LombRow {
    index: usize,
    t2_date: NaiveDate,
    frequency: f64,
    power: f64,
}

#[derive(Serialize)]
struct UnitRootRow<'a> {
    index: usize,
    t1_date: NaiveDate,
    t2_date: NaiveDate,
    test: &'a str,
    nobs: usize,
    statistic: f64,
    reject_at_05: bool,
    reject_at_01: bool,
}

fn load_scan(args: &DiagnoseArgs, series: &PriceSeries) -> Result<WindowScan> {
    let text = fs::read_to_string(&args.scan).with_context(|| format!("reading {}", args.scan.display()))?;
    let scan: WindowScan = serde_json::from_str(&text).with_context(|| format!("parsing {}", args.scan.display()))?;
    for r in &scan.records {
        if series.date(r.window.t2) != Some(r.t2_date) || series.date(r.window.t1) != Some(r.t1_date) {
            bail!(
                "{} was produced from different price data (window {} does not match {})",
                args.scan.display(),
                r.index,
                args.input.input.display()
            );
        }
    }
    Ok(scan)
}

fn run_lomb(args: &DiagnoseArgs, scan: &WindowScan, series: &PriceSeries, out: &OutDir) -> Result<bool> {
    let grid = LombGrid {
        min: args.freq_min,
        max: args.freq_max,
        count: args.freq_count,
    };
    grid.frequencies()?;
    let mut rows = Vec::new();
    for &i in &scan.qualified {
        let Some(outcome) = &scan.records[i].fit else {
            continue;
        };
        let fit = &outcome.best;
        let Ok(d) = detrend(fit, &WindowData::from_series(series, fit.window)) else {
            continue;
        };
        let Ok(res) = lomb(&d, &grid) else {
            continue;
        };
        rows.extend(
            res.frequencies
                .iter()
                .zip(&res.power)
                .map(|(&frequency, &power)| LombRow {
                    index: i,
                    t2_date: fit.t2_date,
                    frequency,
                    power,
                }),
        );
    }
    out.csv("lomb.csv", rows)?;

    let report = harmonic_check(scan, series, &grid);
    let significant = report
        .entries
        .iter()
        .filter(|e| e.false_alarm < FALSE_ALARM_LEVEL)
        .count();
    let all_significant =
        !report.entries.is_empty() && significant == report.entries.len() && report.failures.is_empty();
    out.json(
        "lomb_summary.json",
        &json!({
            "grid": grid,
            "false_alarm_level": FALSE_ALARM_LEVEL,
            "n_fits": report.entries.len(),
            "n_significant": significant,
            "all_significant": all_significant,
            "harmonic": report,
        }),
    )?;
    println!(
        "lomb: {significant} of {} qualified fits with false-alarm probability < {FALSE_ALARM_LEVEL:e}; \
         omega_fit/omega_lomb in [1.6, 2.4] for {:.0}%",
        report.entries.len(),
        100.0 * report.fraction_near_two
    );
    Ok(all_significant)
}

fn run_unitroot(args: &DiagnoseArgs, scan: &WindowScan, series: &PriceSeries, out: &OutDir) -> Result<()> {
    let registry = unit_root_tests(args.adf_lags, args.pp_bandwidth);
    let tests: Vec<&dyn UnitRootTest> = args
        .tests
        .iter()
        .map(|name| registry.get(name))
        .collect::<lppls::Result<_>>()?;
    let report = unit_root_report(scan, series, &tests);

    let label = args.label.clone().unwrap_or_else(|| {
        args.input
            .input
            .file_stem()
            .map_or_else(|| "series".into(), |s| s.to_string_lossy().into_owned())
    });
    let range = match (
        scan.records.iter().map(|r| r.t1_date).min(),
        scan.records.iter().map(|r| r.t2_date).max(),
    ) {
        (Some(a), Some(b)) => format!("{a}/{b}"),
        _ => String::new(),
    };
    let mut header = vec!["index".to_string(), "window_range".into(), "n".into(), "level".into()];
    header.extend(report.tests.iter().map(|t| format!("{t}_percent")));
    let mut records = vec![header];
    for level in LEVELS {
        let mut rec = vec![
            label.clone(),
            range.clone(),
            report.windows.len().to_string(),
            level.to_string(),
        ];
        for t in &report.tests {
            rec.push(report.percent(t, level).map_or_else(String::new, |p| p.to_string()));
        }
        records.push(rec);
    }
    out.csv_records("unitroot.csv", records)?;

    let rows = report.windows.iter().flat_map(|w| {
        report.tests.iter().zip(&w.outcomes).map(move |(t, o)| UnitRootRow {
            index: w.index,
            t1_date: w.t1_date,
            t2_date: w.t2_date,
            test: t,
            nobs: o.nobs,
            statistic: o.statistic,
            reject_at_05: o.reject_at_05,
            reject_at_01: o.reject_at_01,
        })
    });
    out.csv("unitroot_windows.csv", rows)?;

    for s in &report.summary {
        println!(
            "{} at {}: {:.0}% of {} rejected the unit root",
            s.test, s.level, s.percent, s.total
        );
    }
    Ok(())
}

pub fn run(args: &DiagnoseArgs) -> Result<Status> {
    let series = load_series(&args.input)?;
    let scan = load_scan(args, &series)?;
    let config = run_config("diagnose", args, json!({ "scan_spec": scan.spec }));
    let out = OutDir::create(&args.common.out_dir, &config)?;

    if scan.qualified.is_empty() {
        println!("no qualified fits to diagnose");
    }
    let mut lomb_ok = true;
    if matches!(args.check, Check::Lomb | Check::All) {
        lomb_ok = run_lomb(args, &scan, &series, &out)?;
    }
    if matches!(args.check, Check::Unitroot | Check::All) {
        run_unitroot(args, &scan, &series, &out)?;
    }
    Ok(if scan.qualified.is_empty() || !lomb_ok {
        Status::Negative
    } else {
        Status::Ok
    })
}
