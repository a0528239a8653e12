//! Fast checks behind `selfaffine selftest`. Each prints one PASS/FAIL line.

use std::io::{self, Write};

use selfaffine_core::montecarlo::{nearest_rank, run_battery_with, Sequential};
use selfaffine_core::scaling::{estimate_fa_on, rs_statistic};
use selfaffine_core::simulate::Generator;
use selfaffine_core::{normal, Method, Model, QGrid, RngStream, SimulationSpec};

use crate::parallel::Parallel;

type Check = (&'static str, fn(&Parallel) -> Result<(), String>);

const CHECKS: [Check; 6] = [
    ("rescaled range of 1,2,1,2 at n=2 is 1", rs_hand),
    ("nearest rank of level 0.05 in 1000 values is 950", rank_950),
    ("normal quantile at 0.975", quantile_975),
    ("ARFIMA at d=0 reproduces NIID", arfima_identity),
    ("linear trend gives FA H=1 on divisor scales", trend_h1),
    ("parallel and sequential replications agree", determinism),
];

/// Runs every check; `Ok(true)` when all pass.
pub fn run(exec: &Parallel, out: &mut dyn Write) -> io::Result<bool> {
    let mut ok = true;
    for (name, check) in CHECKS {
        match check(exec) {
            Ok(()) => writeln!(out, "PASS {name}")?,
            Err(detail) => {
                ok = false;
                writeln!(out, "FAIL {name}: {detail}")?;
            }
        }
    }
    Ok(ok)
}

fn rs_hand(_: &Parallel) -> Result<(), String> {
    match rs_statistic(&[1.0, 2.0, 1.0, 2.0], 2) {
        Ok(1.0) => Ok(()),
        other => Err(format!("{other:?}")),
    }
}

fn rank_950(_: &Parallel) -> Result<(), String> {
    match nearest_rank(0.05, 1000) {
        950 => Ok(()),
        r => Err(format!("rank {r}")),
    }
}

fn quantile_975(_: &Parallel) -> Result<(), String> {
    let q = normal::quantile(0.975);
    if (q - 1.959963984540054).abs() < 1e-12 {
        Ok(())
    } else {
        Err(format!("{q}"))
    }
}

fn arfima_identity(_: &Parallel) -> Result<(), String> {
    let draw = |model| {
        let spec = SimulationSpec::new(model, 500, 0);
        Generator::new(&spec)
            .and_then(|g| g.generate(&mut RngStream::new(7)))
            .map_err(|e| e.to_string())
    };
    if draw(Model::Arfima { d: 0.0 })? == draw(Model::Niid)? {
        Ok(())
    } else {
        Err("series differ".into())
    }
}

fn trend_h1(_: &Parallel) -> Result<(), String> {
    let scales = [
        5, 6, 7, 8, 9, 10, 12, 14, 15, 18, 20, 21, 24, 28, 30, 35, 36, 40, 42, 45,
    ];
    let est = estimate_fa_on(&[0.01; 2520], &QGrid::fa1(), &scales).map_err(|e| e.to_string())?;
    if (est.h - 1.0).abs() < 1e-9 {
        Ok(())
    } else {
        Err(format!("H = {}", est.h))
    }
}

fn determinism(exec: &Parallel) -> Result<(), String> {
    let spec = SimulationSpec::new(Model::Arfima { d: 0.1 }, 500, 0);
    let methods = [Method::Rra, Method::Fa1, Method::Hill];
    let a = run_battery_with(exec, &spec, &methods, 64, 11).map_err(|e| e.to_string())?;
    let b = run_battery_with(&Sequential, &spec, &methods, 64, 11).map_err(|e| e.to_string())?;
    if a == b {
        Ok(())
    } else {
        Err("samples differ".into())
    }
}
