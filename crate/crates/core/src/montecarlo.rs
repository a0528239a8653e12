//! Replication engine, empirical critical values and power.
//!
//! Replication `i` always draws from `RngStream::substream(master_seed, i)`,
//! so results depend only on the seed and index, never on how an
//! [`Executor`] schedules the work.

use alloc::vec::Vec;

#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::simulate::Generator;
use crate::{Error, Method, Result, RngStream, SimulationSpec};

/// Significance levels reported by default.
pub const DEFAULT_LEVELS: [f64; 3] = [0.10, 0.05, 0.01];
pub const DEFAULT_REPS: usize = 5000;
/// Minimum sample size for percentile cutoffs.
pub const MIN_CUTOFF_COUNT: usize = 100;

const LEVEL_MATCH: f64 = 1e-9;

/// Runs `f(i)` for `i in 0..n` and returns the results in index order.
pub trait Executor {
    fn map_indices<T, F>(&self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send;
}

/// Single-threaded executor.
#[derive(Debug, Clone, Copy, Default)]
pub struct Sequential;

impl Executor for Sequential {
    fn map_indices<T, F>(&self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        (0..n).map(f).collect()
    }
}

/// Estimates from `reps` replications of one specification.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimateSample {
    pub method: Method,
    pub spec: SimulationSpec,
    pub reps: usize,
    pub master_seed: u64,
    /// Successful estimates in replication order.
    pub values: Vec<f64>,
    pub failures: usize,
}

impl EstimateSample {
    /// Length of each simulated series.
    pub fn series_len(&self) -> usize {
        self.spec.len
    }

    /// Values sorted ascending.
    pub fn sorted(&self) -> Vec<f64> {
        let mut v = self.values.clone();
        v.sort_by(f64::total_cmp);
        v
    }
}

pub fn run_replications(
    spec: &SimulationSpec,
    method: Method,
    reps: usize,
    master_seed: u64,
) -> Result<EstimateSample> {
    run_replications_with(&Sequential, spec, method, reps, master_seed)
}

pub fn run_replications_with<E: Executor>(
    exec: &E,
    spec: &SimulationSpec,
    method: Method,
    reps: usize,
    master_seed: u64,
) -> Result<EstimateSample> {
    run_battery_with(exec, spec, &[method], reps, master_seed)?
        .pop()
        .ok_or(Error::InvalidParameter("empty method list"))
}

/// Evaluates several estimators on the same simulated series. Each returned
/// sample equals what [`run_replications`] gives for that method alone.
pub fn run_battery_with<E: Executor>(
    exec: &E,
    spec: &SimulationSpec,
    methods: &[Method],
    reps: usize,
    master_seed: u64,
) -> Result<Vec<EstimateSample>> {
    if reps == 0 {
        return Err(Error::InvalidParameter("reps must be at least 1"));
    }
    if methods.is_empty() {
        return Err(Error::InvalidParameter("empty method list"));
    }
    let generator = Generator::new(spec)?;
    let rows: Vec<Vec<Option<f64>>> = exec.map_indices(reps, |i| {
        let mut rng = RngStream::substream(master_seed, i as u64);
        match generator.generate(&mut rng) {
            Ok(series) => methods
                .iter()
                .map(|m| m.estimate(&series).ok().filter(|v| v.is_finite()))
                .collect(),
            Err(_) => alloc::vec![None; methods.len()],
        }
    });
    let mut out = Vec::with_capacity(methods.len());
    for (k, &method) in methods.iter().enumerate() {
        let values: Vec<f64> = rows.iter().filter_map(|row| row[k]).collect();
        if values.is_empty() {
            return Err(Error::AllReplicationsFailed(reps));
        }
        out.push(EstimateSample {
            method,
            spec: spec.clone(),
            reps,
            master_seed,
            failures: reps - values.len(),
            values,
        });
    }
    Ok(out)
}

pub fn run_battery(
    spec: &SimulationSpec,
    methods: &[Method],
    reps: usize,
    master_seed: u64,
) -> Result<Vec<EstimateSample>> {
    run_battery_with(&Sequential, spec, methods, reps, master_seed)
}

/// Mean and `n - 1` standard deviation.
pub fn summarize(values: &[f64]) -> Result<(f64, f64)> {
    let n = values.len();
    if n < 2 {
        return Err(Error::TooFewValues { needed: 2, got: n });
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
    Ok((mean, (ss / (n - 1) as f64).sqrt()))
}

pub fn summarize_sample(s: &EstimateSample) -> Result<(f64, f64)> {
    summarize(&s.values)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CriticalValueTable {
    pub method: Method,
    pub len: usize,
    pub reps: usize,
    pub master_seed: u64,
    pub count: usize,
    pub failures: usize,
    pub mean: f64,
    pub sd: f64,
    /// `(level, cutoff)` pairs sorted by decreasing level.
    pub cutoffs: Vec<(f64, f64)>,
}

impl CriticalValueTable {
    pub fn cutoff(&self, level: f64) -> Result<f64> {
        self.cutoffs
            .iter()
            .find(|(l, _)| (l - level).abs() < LEVEL_MATCH)
            .map(|&(_, c)| c)
            .ok_or(Error::MissingCutoff(level))
    }

    pub fn levels(&self) -> impl Iterator<Item = f64> + '_ {
        self.cutoffs.iter().map(|&(l, _)| l)
    }
}

/// 1-based nearest rank `ceil((1 - level) * count)`, clamped to the sample.
pub fn nearest_rank(level: f64, count: usize) -> usize {
    // The small offset keeps products like 0.95 * 1000 from rounding up a rank.
    let rank = ((1.0 - level) * count as f64 - 1e-9).ceil();
    (rank.max(1.0) as usize).min(count)
}

/// Nearest-rank upper percentiles of the sample at each level.
pub fn critical_values(s: &EstimateSample, levels: &[f64]) -> Result<CriticalValueTable> {
    let count = s.values.len();
    if count < MIN_CUTOFF_COUNT {
        return Err(Error::TooFewValues {
            needed: MIN_CUTOFF_COUNT,
            got: count,
        });
    }
    if levels.is_empty() || levels.iter().any(|l| !(*l > 0.0 && *l < 1.0)) {
        return Err(Error::InvalidParameter(
            "levels must lie strictly between 0 and 1",
        ));
    }
    let sorted = s.sorted();
    let (mean, sd) = summarize(&sorted)?;
    let mut levels = levels.to_vec();
    levels.sort_by(|a, b| b.total_cmp(a));
    levels.dedup_by(|a, b| (*a - *b).abs() < LEVEL_MATCH);
    let cutoffs = levels
        .iter()
        .map(|&l| (l, sorted[nearest_rank(l, count) - 1]))
        .collect();
    Ok(CriticalValueTable {
        method: s.method,
        len: s.series_len(),
        reps: s.reps,
        master_seed: s.master_seed,
        count,
        failures: s.failures,
        mean,
        sd,
        cutoffs,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct PowerResult {
    pub method: Method,
    pub alternative: SimulationSpec,
    pub len: usize,
    pub level: f64,
    pub cutoff: f64,
    pub rejections: usize,
    pub count: usize,
    pub failures: usize,
    pub rejection_rate: f64,
}

impl PowerResult {
    /// Binomial standard error of the rejection rate.
    pub fn standard_error(&self) -> f64 {
        binomial_se(self.rejection_rate, self.count)
    }
}

pub fn binomial_se(p: f64, n: usize) -> f64 {
    (p * (1.0 - p) / n as f64).sqrt()
}

/// Fraction of the sample strictly above the table's cutoff at `level`.
pub fn rejection_rate(
    s: &EstimateSample,
    table: &CriticalValueTable,
    level: f64,
) -> Result<PowerResult> {
    if s.method != table.method || s.series_len() != table.len {
        return Err(Error::TableMismatch);
    }
    let cutoff = table.cutoff(level)?;
    let count = s.values.len();
    let rejections = s.values.iter().filter(|&&v| v > cutoff).count();
    Ok(PowerResult {
        method: s.method,
        alternative: s.spec.clone(),
        len: s.series_len(),
        level,
        cutoff,
        rejections,
        count,
        failures: s.failures,
        rejection_rate: rejections as f64 / count as f64,
    })
}

pub fn power_function(
    alt: &SimulationSpec,
    method: Method,
    table: &CriticalValueTable,
    level: f64,
    reps: usize,
    master_seed: u64,
) -> Result<PowerResult> {
    power_function_with(&Sequential, alt, method, table, level, reps, master_seed)
}

pub fn power_function_with<E: Executor>(
    exec: &E,
    alt: &SimulationSpec,
    method: Method,
    table: &CriticalValueTable,
    level: f64,
    reps: usize,
    master_seed: u64,
) -> Result<PowerResult> {
    if table.method != method || table.len != alt.len {
        return Err(Error::TableMismatch);
    }
    table.cutoff(level)?;
    let sample = run_replications_with(exec, alt, method, reps, master_seed)?;
    rejection_rate(&sample, table, level)
}
