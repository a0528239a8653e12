//! Testing battery for an observed price series.
//!
//! Each method is applied to the raw returns, judged against critical values
//! simulated from the fitted autoregression, and to the autoregressive
//! residuals, judged against NIID critical values at the residual length.
//! FA(1) is also run on a random reordering and on normal scores of the
//! returns to help separate long memory from heavy tails.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::montecarlo::{
    critical_values, run_battery_with, CriticalValueTable, Executor, Sequential, DEFAULT_LEVELS,
};
use crate::rng::substream_seed;
use crate::scaling::time_scale_grid;
use crate::timeseries::{
    ar_filter, fit_ar, log_returns, normalize_transform, random_reorder, summary_stats,
};
use crate::{
    ArModel, Error, Method, Model, OrderCriterion, PriceSeries, Result, SimulationSpec,
    SummaryStats,
};

/// Methods in report column order.
pub const REPORT_METHODS: [Method; 6] = [
    Method::Rra,
    Method::Fa1,
    Method::Fa2,
    Method::Fa3,
    Method::Robinson,
    Method::Hill,
];

/// Level at which [`classify_source`] reads the rejection flags.
pub const CLASSIFICATION_LEVEL: f64 = 0.05;

#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisConfig {
    pub series_id: String,
    pub reps: usize,
    pub seed: u64,
    pub levels: Vec<f64>,
    pub max_lag: usize,
    pub criterion: OrderCriterion,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        Self {
            series_id: String::from("series"),
            reps: 1000,
            seed: 42,
            levels: DEFAULT_LEVELS.to_vec(),
            max_lag: 10,
            criterion: OrderCriterion::Aic,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    Unfiltered,
    Filtered,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Unfiltered => "unfiltered",
            Variant::Filtered => "filtered",
        }
    }
}

/// Where a cell's critical values came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutoffSource {
    Niid { len: usize },
    ArRecursive { order: usize, len: usize },
}

impl fmt::Display for CutoffSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CutoffSource::Niid { len } => write!(f, "niid(T={len})"),
            CutoffSource::ArRecursive { order, len } => write!(f, "ar{order}-recursive(T={len})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellOutcome {
    pub estimate: f64,
    /// One cutoff and one flag per report level, in report level order.
    pub cutoffs: Vec<f64>,
    pub rejected: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub method: Method,
    pub variant: Variant,
    pub source: CutoffSource,
    pub outcome: core::result::Result<CellOutcome, Error>,
}

/// FA(1) on a transformed copy of the returns.
#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostic {
    pub transform: &'static str,
    pub estimate: core::result::Result<f64, Error>,
    /// Unfiltered FA(1) estimate minus the transformed estimate.
    pub gap: Option<f64>,
    pub large: Option<bool>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TestReport {
    pub series_id: String,
    pub len: usize,
    pub summary: SummaryStats,
    /// Report levels, loosest first.
    pub levels: Vec<f64>,
    pub ar_model: core::result::Result<ArModel, Error>,
    pub cells: Vec<Cell>,
    pub diagnostics: Vec<Diagnostic>,
    /// `2 *` the NIID FA(1) sd at the series length.
    pub gap_threshold: Option<f64>,
}

impl TestReport {
    pub fn cell(&self, method: Method, variant: Variant) -> Option<&Cell> {
        self.cells
            .iter()
            .find(|c| c.method == method && c.variant == variant)
    }

    /// Rejection flag, or `None` if the cell or level is unavailable.
    pub fn rejects(&self, method: Method, variant: Variant, level: f64) -> Option<bool> {
        let k = self.levels.iter().position(|l| (l - level).abs() < 1e-9)?;
        let outcome = self.cell(method, variant)?.outcome.as_ref().ok()?;
        outcome.rejected.get(k).copied()
    }
}

pub fn analyze_index(prices: &PriceSeries, config: &AnalysisConfig) -> Result<TestReport> {
    analyze_index_with(&Sequential, prices, config)
}

pub fn analyze_index_with<E: Executor>(
    exec: &E,
    prices: &PriceSeries,
    config: &AnalysisConfig,
) -> Result<TestReport> {
    analyze_returns_with(exec, &log_returns(prices), config)
}

/// The same battery on a returns series.
pub fn analyze_returns_with<E: Executor>(
    exec: &E,
    returns: &[f64],
    config: &AnalysisConfig,
) -> Result<TestReport> {
    let len = returns.len();
    time_scale_grid(len)?;
    let summary = summary_stats(returns)?;
    let mut levels = config.levels.clone();
    if levels.is_empty() || levels.iter().any(|l| !(*l > 0.0 && *l < 1.0)) {
        return Err(Error::InvalidParameter(
            "levels must lie strictly between 0 and 1",
        ));
    }
    levels.sort_by(|a, b| b.total_cmp(a));
    levels.dedup();

    let tables = |spec: &SimulationSpec,
                  methods: &[Method],
                  stream: u64|
     -> Result<Vec<CriticalValueTable>> {
        let seed = substream_seed(config.seed, stream);
        run_battery_with(exec, spec, methods, config.reps, seed)?
            .iter()
            .map(|s| critical_values(s, &levels))
            .collect()
    };

    let mut cells = Vec::new();
    let ar_model = fit_ar(returns, config.max_lag, config.criterion);

    // Unfiltered returns against AR-recursive cutoffs.
    let unfiltered_source = match &ar_model {
        Ok(model) => CutoffSource::ArRecursive {
            order: model.order(),
            len,
        },
        Err(_) => CutoffSource::Niid { len },
    };
    // Without a fitted model the unfiltered cells fall back to NIID cutoffs.
    let unfiltered_tables = match &ar_model {
        Ok(model) => {
            let spec = SimulationSpec::new(
                Model::ArRecursive {
                    model: model.clone(),
                },
                len,
                0,
            );
            tables(&spec, &REPORT_METHODS, 1)
        }
        Err(_) => tables(
            &SimulationSpec::new(Model::Niid, len, 0),
            &REPORT_METHODS,
            3,
        ),
    };
    push_cells(
        &mut cells,
        returns,
        Variant::Unfiltered,
        unfiltered_source,
        &unfiltered_tables,
        &levels,
    );

    // Residuals against NIID cutoffs at the residual length.
    let mut niid_fa1_sd = match unfiltered_source {
        CutoffSource::Niid { .. } => fa1_sd(&unfiltered_tables),
        CutoffSource::ArRecursive { .. } => None,
    };
    if let Ok(model) = &ar_model {
        match ar_filter(returns, model) {
            Ok(filtered) => {
                let n = filtered.len();
                let t = tables(&SimulationSpec::new(Model::Niid, n, 0), &REPORT_METHODS, 2);
                if n == len {
                    niid_fa1_sd = fa1_sd(&t);
                }
                push_cells(
                    &mut cells,
                    &filtered,
                    Variant::Filtered,
                    CutoffSource::Niid { len: n },
                    &t,
                    &levels,
                );
            }
            Err(e) => push_cells(
                &mut cells,
                &[],
                Variant::Filtered,
                CutoffSource::Niid { len },
                &Err(e),
                &levels,
            ),
        }
    }
    if niid_fa1_sd.is_none() {
        let t = tables(&SimulationSpec::new(Model::Niid, len, 0), &[Method::Fa1], 3);
        niid_fa1_sd = fa1_sd(&t);
    }
    let gap_threshold = niid_fa1_sd.map(|sd| 2.0 * sd);

    let original = cells
        .iter()
        .find(|c| c.method == Method::Fa1 && c.variant == Variant::Unfiltered)
        .and_then(|c| c.outcome.as_ref().ok())
        .map(|o| o.estimate);
    let reorder_seed = substream_seed(config.seed, 4);
    let diagnostics = [
        ("reordered", random_reorder(returns, reorder_seed)),
        ("normalized", normalize_transform(returns)),
    ]
    .into_iter()
    .map(|(transform, series)| {
        let estimate = Method::Fa1.estimate(&series);
        let gap = match (&estimate, original) {
            (Ok(e), Some(o)) => Some(o - e),
            _ => None,
        };
        Diagnostic {
            transform,
            large: gap.zip(gap_threshold).map(|(g, t)| g.abs() > t),
            estimate,
            gap,
        }
    })
    .collect();

    Ok(TestReport {
        series_id: config.series_id.clone(),
        len,
        summary,
        levels,
        ar_model,
        cells,
        diagnostics,
        gap_threshold,
    })
}

fn fa1_sd(tables: &Result<Vec<CriticalValueTable>>) -> Option<f64> {
    tables
        .as_ref()
        .ok()?
        .iter()
        .find(|t| t.method == Method::Fa1)
        .map(|t| t.sd)
}

fn push_cells(
    cells: &mut Vec<Cell>,
    series: &[f64],
    variant: Variant,
    source: CutoffSource,
    tables: &Result<Vec<CriticalValueTable>>,
    levels: &[f64],
) {
    for (k, &method) in REPORT_METHODS.iter().enumerate() {
        let outcome = tables.clone().and_then(|tables| {
            let table = &tables[k];
            let estimate = method.estimate(series)?;
            let cutoffs = levels
                .iter()
                .map(|&l| table.cutoff(l))
                .collect::<Result<Vec<f64>>>()?;
            let rejected = cutoffs.iter().map(|&c| estimate > c).collect();
            Ok(CellOutcome {
                estimate,
                cutoffs,
                rejected,
            })
        });
        cells.push(Cell {
            method,
            variant,
            source,
            outcome,
        });
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    LongRangeDependent,
    LStableSignature,
    WeakEvidence,
    ConsistentWithNiid,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::LongRangeDependent => "long-range-dependent",
            Verdict::LStableSignature => "L-stable-signature",
            Verdict::WeakEvidence => "weak-evidence",
            Verdict::ConsistentWithNiid => "consistent-with-NIID",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strength {
    Strong,
    Weak,
    None,
}

impl Strength {
    pub fn name(self) -> &'static str {
        match self {
            Strength::Strong => "strong",
            Strength::Weak => "weak",
            Strength::None => "none",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub verdict: Verdict,
    pub strength: Strength,
    pub rationale: String,
}

/// Rejection flags at the classification level that drive the verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Flags {
    pub fa1: [bool; 2],
    pub rra: [bool; 2],
    pub fa2: [bool; 2],
    pub fa3: [bool; 2],
}

/// Decision matrix on `[unfiltered, filtered]` flags.
///
/// FA(1) rejecting on both variants is long-range dependence when RRA or
/// FA(2) also reject, and otherwise reads as a heavy-tail signature (weak)
/// if FA(3) agrees, or weak evidence if not. FA(1) rejecting on the
/// unfiltered series only is a heavy-tail signature when RRA, FA(2) and
/// FA(3) all accept there, and weak evidence otherwise. FA(1) rejecting on
/// the filtered series only is weak evidence.
pub fn decide(flags: &Flags) -> (Verdict, Strength) {
    let [fa1_u, fa1_f] = flags.fa1;
    let any = |f: [bool; 2]| f[0] || f[1];
    let others_silent_u = !flags.rra[0] && !flags.fa2[0] && !flags.fa3[0];
    match (fa1_u, fa1_f) {
        (true, true) if any(flags.rra) || any(flags.fa2) => {
            (Verdict::LongRangeDependent, Strength::Strong)
        }
        (true, true) if !any(flags.fa3) => (Verdict::LStableSignature, Strength::Weak),
        (true, true) => (Verdict::WeakEvidence, Strength::Weak),
        (true, false) if others_silent_u => (Verdict::LStableSignature, Strength::Weak),
        (true, false) | (false, true) => (Verdict::WeakEvidence, Strength::Weak),
        (false, false) => (Verdict::ConsistentWithNiid, Strength::None),
    }
}

pub fn classify_source(report: &TestReport) -> Result<Classification> {
    let flag = |m: Method| -> Result<[bool; 2]> {
        let get = |v| {
            report
                .rejects(m, v, CLASSIFICATION_LEVEL)
                .ok_or(Error::IncompleteReport)
        };
        Ok([get(Variant::Unfiltered)?, get(Variant::Filtered)?])
    };
    let flags = Flags {
        fa1: flag(Method::Fa1)?,
        rra: flag(Method::Rra)?,
        fa2: flag(Method::Fa2)?,
        fa3: flag(Method::Fa3)?,
    };
    let (verdict, strength) = decide(&flags);

    let mark = |f: [bool; 2]| format!("{}/{}", yes_no(f[0]), yes_no(f[1]));
    let mut rationale = format!(
        "rejections at {CLASSIFICATION_LEVEL} (unfiltered/filtered): FA1 {}, RRA {}, FA2 {}, FA3 {}",
        mark(flags.fa1),
        mark(flags.rra),
        mark(flags.fa2),
        mark(flags.fa3)
    );
    for d in &report.diagnostics {
        if let (Some(gap), Some(large)) = (d.gap, d.large) {
            let reading = match (d.transform, large) {
                ("reordered", true) => "; large gap, order matters, supports long-range dependence",
                ("normalized", true) => "; large gap, tails matter, supports an L-stable signature",
                _ => "",
            };
            rationale.push_str(&format!("; {} FA1 gap {:+.4}{}", d.transform, gap, reading));
        }
    }
    Ok(Classification {
        verdict,
        strength,
        rationale,
    })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
