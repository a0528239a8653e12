//! On-disk cache of NIID critical-value tables.
//!
//! One file per `(method, T, reps, master_seed)`, named
//! `niid_<method>_T<T>_R<reps>_S<seed>.csv`, with one row per level:
//!
//! ```text
//! version,method,t,reps,master_seed,count,failures,mean,sd,level,cutoff
//! 1,rra,1000,5000,42,5000,0,0.6131,0.0201,0.1,0.6391
//! ```
//!
//! Floats are written in shortest round-trip form, so a reloaded table is
//! bit-identical to the one that was stored. Files with another `version`
//! are ignored and rebuilt.

use std::fs;
use std::path::{Path, PathBuf};

use selfaffine_core::montecarlo::{
    critical_values, run_battery_with, CriticalValueTable, Executor,
};
use selfaffine_core::{Method, Model, SimulationSpec};

use crate::io::IoError;

pub const CACHE_VERSION: u32 = 1;
const HEADER: [&str; 11] = [
    "version",
    "method",
    "t",
    "reps",
    "master_seed",
    "count",
    "failures",
    "mean",
    "sd",
    "level",
    "cutoff",
];

pub fn cache_file(dir: &Path, method: Method, len: usize, reps: usize, seed: u64) -> PathBuf {
    dir.join(format!("niid_{}_T{len}_R{reps}_S{seed}.csv", method.name()))
}

pub fn write_table(path: &Path, table: &CriticalValueTable) -> Result<(), IoError> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(HEADER)?;
    for &(level, cutoff) in &table.cutoffs {
        w.write_record([
            CACHE_VERSION.to_string(),
            table.method.name().to_string(),
            table.len.to_string(),
            table.reps.to_string(),
            table.master_seed.to_string(),
            table.count.to_string(),
            table.failures.to_string(),
            table.mean.to_string(),
            table.sd.to_string(),
            level.to_string(),
            cutoff.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a cached table; `Ok(None)` for a file with another schema version.
pub fn read_table(path: &Path) -> Result<Option<CriticalValueTable>, IoError> {
    let mut rdr = csv::Reader::from_path(path)?;
    let mut table: Option<CriticalValueTable> = None;
    for record in rdr.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        let field = |i: usize| record.get(i).unwrap_or("");
        let bad = |i: usize| IoError::Parse {
            line,
            value: field(i).to_string(),
        };
        let int = |i: usize| field(i).parse::<u64>().map_err(|_| bad(i));
        let float = |i: usize| field(i).parse::<f64>().map_err(|_| bad(i));
        if int(0)? != CACHE_VERSION as u64 {
            return Ok(None);
        }
        let t = table.get_or_insert(CriticalValueTable {
            method: field(1).parse().map_err(|_| bad(1))?,
            len: int(2)? as usize,
            reps: int(3)? as usize,
            master_seed: int(4)?,
            count: int(5)? as usize,
            failures: int(6)? as usize,
            mean: float(7)?,
            sd: float(8)?,
            cutoffs: Vec::new(),
        });
        t.cutoffs.push((float(9)?, float(10)?));
    }
    Ok(table)
}

/// NIID critical values for several methods at one length, loaded from
/// `cache_dir` where possible. Missing tables are built in one shared
/// battery run and written back.
pub fn niid_tables<E: Executor>(
    exec: &E,
    methods: &[Method],
    len: usize,
    reps: usize,
    seed: u64,
    levels: &[f64],
    cache_dir: Option<&Path>,
) -> Result<Vec<CriticalValueTable>, IoError> {
    let has_levels = |t: &CriticalValueTable| levels.iter().all(|&l| t.cutoff(l).is_ok());
    let mut found: Vec<Option<CriticalValueTable>> = Vec::with_capacity(methods.len());
    for &m in methods {
        let cached = match cache_dir {
            Some(dir) => {
                let path = cache_file(dir, m, len, reps, seed);
                if path.exists() {
                    read_table(&path)?.filter(has_levels)
                } else {
                    None
                }
            }
            None => None,
        };
        found.push(cached);
    }
    let missing: Vec<Method> = methods
        .iter()
        .zip(&found)
        .filter(|(_, t)| t.is_none())
        .map(|(&m, _)| m)
        .collect();
    if !missing.is_empty() {
        let spec = SimulationSpec::new(Model::Niid, len, seed);
        let samples = run_battery_with(exec, &spec, &missing, reps, seed)?;
        let mut built = samples.iter().map(|s| critical_values(s, levels));
        for slot in found.iter_mut().filter(|t| t.is_none()) {
            let table = built.next().expect("one table per missing method")?;
            if let Some(dir) = cache_dir {
                write_table(&cache_file(dir, table.method, len, reps, seed), &table)?;
            }
            *slot = Some(table);
        }
    }
    Ok(found
        .into_iter()
        .map(|t| t.expect("filled above"))
        .collect())
}
