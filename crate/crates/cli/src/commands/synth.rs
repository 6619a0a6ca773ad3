use anyhow::{bail, Result};
use chrono::NaiveDate;
use lppls::model::noise::NoiseSpec;
use lppls::model::{synthesize, LinearParams, NonlinearParams};
use lppls::timeseries::Window;
use serde::Serialize;
use serde_json::json;

use super::{run_config, Status};
use crate::args::{NoiseKind, SynthArgs};
use crate::output::OutDir;

#[derive(Serialize)]
struct Row {
    date: NaiveDate,
    close: f64,
}

pub fn run(args: &SynthArgs) -> Result<Status> {
    if args.length < 2 {
        bail!("--length must be at least 2");
    }
    let last = args.length - 1;
    if !(args.tc > last as f64) {
        bail!(
            "--tc {} lies inside the series (last ordinal {last}); it must be later",
            args.tc
        );
    }
    let noise = match args.noise {
        NoiseKind::None => NoiseSpec::None,
        NoiseKind::Gaussian => NoiseSpec::Gaussian { sigma: args.sigma },
        NoiseKind::Ou => NoiseSpec::Ou {
            phi: args.phi,
            sigma: args.sigma,
        },
    };
    let nl = NonlinearParams::new(args.tc, args.m, args.omega);
    let lin = LinearParams::new(args.a, args.b, args.c1, args.c2);
    let series = synthesize(&nl, &lin, Window::new(0, last)?, &noise, args.common.seed, args.start)?;

    let config = run_config("synth", args, json!({ "nonlinear": nl, "linear": lin, "noise": noise }));
    let out = OutDir::create(&args.common.out_dir, &config)?;
    let rows = series
        .dates()
        .iter()
        .zip(series.prices())
        .map(|(&date, &close)| Row { date, close });
    let path = out.csv(&args.output, rows)?;
    println!("wrote {} days to {}", series.len(), path.display());
    Ok(Status::Ok)
}
