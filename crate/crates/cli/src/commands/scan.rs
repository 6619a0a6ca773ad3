use anyhow::Result;
use chrono::NaiveDate;
use lppls::windows::{forecast_tc, gap_series, m_series, run_scan, ScanMode, ScanSpec, WindowScan};
use serde::Serialize;
use serde_json::json;

use super::{load_series, run_config, Status};
use crate::args::{Mode, ScanArgs};
use crate::output::OutDir;

#[derive(Serialize)]
struct ScanRow {
    index: usize,
    t1: usize,
    t2: usize,
    t1_date: NaiveDate,
    t2_date: NaiveDate,
    tc: Option<f64>,
    tc_date: Option<NaiveDate>,
    m: Option<f64>,
    omega: Option<f64>,
    sse: Option<f64>,
    qualified: bool,
    gap: Option<f64>,
    failure: Option<String>,
}

#[derive(Serialize)]
struct GapRow {
    t2: usize,
    t2_date: NaiveDate,
    tc: f64,
    gap: f64,
    m: f64,
}

fn rows(scan: &WindowScan) -> impl Iterator<Item = ScanRow> + '_ {
    scan.records.iter().map(|r| {
        let best = r.fit.as_ref().map(|f| &f.best);
        ScanRow {
            index: r.index,
            t1: r.window.t1,
            t2: r.window.t2,
            t1_date: r.t1_date,
            t2_date: r.t2_date,
            tc: best.map(|b| b.nonlinear.tc),
            tc_date: best.map(|b| b.tc_date),
            m: best.map(|b| b.nonlinear.m),
            omega: best.map(|b| b.nonlinear.omega),
            sse: best.map(|b| b.sse),
            qualified: r.qualified(),
            gap: best.map(|b| b.gap()),
            failure: r.failure.clone(),
        }
    })
}

pub fn spec_from(args: &ScanArgs) -> ScanSpec {
    ScanSpec {
        mode: match args.mode {
            Mode::Expanding => ScanMode::Expanding,
            Mode::Shrinking => ScanMode::Shrinking,
        },
        fixed_end: args.fixed,
        moving_start: args.from,
        moving_end: args.to,
        step: args.step as usize,
    }
}

pub fn run(args: &ScanArgs) -> Result<Status> {
    let series = load_series(&args.input)?;
    let spec = spec_from(args);
    let cfg = args.fit.fit_config(args.common.seed);
    let scan = run_scan(&series, &spec, &cfg, args.common.jobs())?;

    let config = run_config("scan", args, json!({ "scan": spec, "fit": cfg }));
    let out = OutDir::create(&args.common.out_dir, &config)?;
    out.json("scan.json", &scan)?;
    out.csv("scan.csv", rows(&scan))?;

    let gaps = scan.qualified_fits().map(|f| GapRow {
        t2: f.best.window.t2,
        t2_date: f.best.t2_date,
        tc: f.best.nonlinear.tc,
        gap: f.best.gap(),
        m: f.best.nonlinear.m,
    });
    out.csv("gap.csv", gaps)?;

    let forecast = forecast_tc(&scan, &series, args.reps as usize, args.common.seed);
    let gap_trend = gap_series(&scan).ok().map(|g| g.spearman);
    let m_stats = m_series(&scan).ok().map(|ms| {
        let n = ms.len() as f64;
        let mean = ms.iter().map(|p| p.1).sum::<f64>() / n;
        let sd = (ms.iter().map(|p| (p.1 - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt();
        json!({ "mean": mean, "sd": sd })
    });
    let summary = json!({
        "n_windows": scan.n_windows(),
        "n_qualified": scan.n_qualified(),
        "forecast": forecast.as_ref().ok(),
        "reason": forecast.as_ref().err().map(|e| e.to_string()),
        "gap_spearman": gap_trend,
        "m": m_stats,
    });
    out.json("forecast.json", &summary)?;

    println!("{} of {} windows qualified", scan.n_qualified(), scan.n_windows());
    match &forecast {
        Ok(f) => {
            println!("tc 20%-80%: {} .. {}", f.q20.date, f.q80.date);
            println!("tc  5%-95%: {} .. {}", f.q05.date, f.q95.date);
            if let Some(rho) = gap_trend {
                println!("gap trend (Spearman): {rho:.3}");
            }
            Ok(Status::Ok)
        }
        Err(e) => {
            println!("no forecast: {e}");
            Ok(Status::Negative)
        }
    }
}
