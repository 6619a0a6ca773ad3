use anyhow::{bail, Result};
use lppls::optimizer::{fit_window, grid_slice, ParamPair, MIN_GRID_RESOLUTION};
use serde_json::json;

use super::{load_series, run_config, Status};
use crate::args::{LandscapeArgs, Pair};
use crate::output::OutDir;

fn pair(p: Pair) -> ParamPair {
    match p {
        Pair::TcM => ParamPair::TcM,
        Pair::TcOmega => ParamPair::TcOmega,
        Pair::MOmega => ParamPair::MOmega,
    }
}

pub fn run(args: &LandscapeArgs) -> Result<Status> {
    if args.resolution < MIN_GRID_RESOLUTION {
        bail!(
            "--resolution must be at least {MIN_GRID_RESOLUTION}, got {}",
            args.resolution
        );
    }
    let pairs: Vec<ParamPair> = if args.pair.is_empty() {
        ParamPair::ALL.to_vec()
    } else {
        args.pair.iter().map(|&p| pair(p)).collect()
    };
    let series = load_series(&args.input)?;
    let window = series.window(args.t1, args.t2)?;
    let cfg = args.fit.fit_config(args.common.seed);
    let outcome = fit_window(&series, window, &cfg)?;
    let fit = &outcome.best;

    let config = run_config(
        "landscape",
        args,
        json!({ "window": window, "fit": cfg, "pairs": pairs }),
    );
    let out = OutDir::create(&args.common.out_dir, &config)?;
    let mut minima = Vec::new();
    for p in pairs {
        let grid = grid_slice(&series, fit, p, args.resolution, &cfg.filters)?;
        let (x, y) = p.labels();
        let mut records = vec![vec![x.to_string(), y.to_string(), "cost".to_string()]];
        records.extend(
            grid.rows()
                .map(|(a, b, c)| vec![a.to_string(), b.to_string(), c.to_string()]),
        );
        out.csv_records(&format!("landscape_{p}.csv"), records)?;
        let (i, j, v) = grid.argmin();
        minima.push(json!({ "pair": p, x: grid.xs[i], y: grid.ys[j], "cost": v }));
        println!(
            "{p}: grid minimum {v:.6e} at {x} = {:.4}, {y} = {:.4}",
            grid.xs[i], grid.ys[j]
        );
    }
    out.json("landscape.json", &json!({ "fit": fit, "grid_minima": minima }))?;
    println!("fit sse {:.6e}", fit.sse);
    Ok(Status::Ok)
}
