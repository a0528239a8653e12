//! CSV and JSON renderings of reports and tables.
//!
//! `report.csv` has one row per (variant, method) cell followed by the two
//! FA1 diagnostic rows:
//!
//! ```text
//! series,variant,method,estimate,cutoff_source,cutoff_0.1,cutoff_0.05,cutoff_0.01,reject_0.1,reject_0.05,reject_0.01,stars,error
//! ```
//!
//! Level columns follow the report's levels (loosest first). `stars` counts
//! the levels at which H0: H = 0.5 is rejected. Diagnostic rows use the
//! transform name as `variant`, leave the cutoff columns empty and put the
//! gap to the unfiltered FA1 estimate in `cutoff_source` as `gap=<value>`.
//!
//! `table.csv` is the wide layout: one row per variant with a column per
//! method holding the estimate and its stars, e.g. `0.6123**`.

use std::io::Write;

use selfaffine_core::analysis::{Classification, TestReport, Variant, REPORT_METHODS};
use selfaffine_core::montecarlo::{CriticalValueTable, PowerResult};
use serde_json::{Map, Value};

use crate::io::IoError;

fn num(x: f64) -> String {
    format!("{x:.6}")
}

fn level_label(l: f64) -> String {
    format!("{l}")
}

pub fn write_report_csv<W: Write>(out: W, report: &TestReport) -> Result<(), IoError> {
    let mut w = csv::Writer::from_writer(out);
    let mut header: Vec<String> = ["series", "variant", "method", "estimate", "cutoff_source"]
        .map(String::from)
        .to_vec();
    header.extend(
        report
            .levels
            .iter()
            .map(|&l| format!("cutoff_{}", level_label(l))),
    );
    header.extend(
        report
            .levels
            .iter()
            .map(|&l| format!("reject_{}", level_label(l))),
    );
    header.extend(["stars".to_string(), "error".to_string()]);
    w.write_record(&header)?;

    let blanks = || vec![String::new(); report.levels.len()];
    for cell in &report.cells {
        let mut row = vec![
            report.series_id.clone(),
            cell.variant.name().to_string(),
            cell.method.name().to_string(),
        ];
        match &cell.outcome {
            Ok(o) => {
                row.push(num(o.estimate));
                row.push(cell.source.to_string());
                row.extend(o.cutoffs.iter().map(|&c| num(c)));
                row.extend(o.rejected.iter().map(|&r| u8::from(r).to_string()));
                row.push("*".repeat(o.rejected.iter().filter(|&&r| r).count()));
                row.push(String::new());
            }
            Err(e) => {
                row.push(String::new());
                row.push(cell.source.to_string());
                row.extend(blanks());
                row.extend(blanks());
                row.push(String::new());
                row.push(e.to_string());
            }
        }
        w.write_record(&row)?;
    }
    for d in &report.diagnostics {
        let mut row = vec![
            report.series_id.clone(),
            d.transform.to_string(),
            "fa1".to_string(),
        ];
        row.push(d.estimate.as_ref().map_or(String::new(), |&e| num(e)));
        row.push(d.gap.map_or(String::new(), |g| format!("gap={}", num(g))));
        row.extend(blanks());
        row.extend(blanks());
        row.push(String::new());
        row.push(
            d.estimate
                .as_ref()
                .err()
                .map_or(String::new(), |e| e.to_string()),
        );
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_table_csv<W: Write>(out: W, report: &TestReport) -> Result<(), IoError> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["series".to_string(), "variant".to_string()];
    header.extend(REPORT_METHODS.iter().map(|m| m.name().to_string()));
    w.write_record(&header)?;
    for variant in [Variant::Unfiltered, Variant::Filtered] {
        if report.cells.iter().all(|c| c.variant != variant) {
            continue;
        }
        let mut row = vec![report.series_id.clone(), variant.name().to_string()];
        for &m in &REPORT_METHODS {
            let text = match report.cell(m, variant).map(|c| &c.outcome) {
                Some(Ok(o)) => format!(
                    "{:.4}{}",
                    o.estimate,
                    "*".repeat(o.rejected.iter().filter(|&&r| r).count())
                ),
                _ => "NA".to_string(),
            };
            row.push(text);
        }
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

/// Key/value CSV with summary statistics, the AR fit and the verdict.
pub fn write_summary_csv<W: Write>(
    out: W,
    report: &TestReport,
    class: Option<&Classification>,
) -> Result<(), IoError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["key", "value"])?;
    for (k, v) in summary_pairs(report, class) {
        w.write_record([k, v])?;
    }
    w.flush()?;
    Ok(())
}

fn summary_pairs(report: &TestReport, class: Option<&Classification>) -> Vec<(String, String)> {
    let mut kv: Vec<(String, String)> = vec![
        ("series".into(), report.series_id.clone()),
        ("t".into(), report.len.to_string()),
        ("mean".into(), num(report.summary.mean)),
        ("sd".into(), num(report.summary.sd)),
        ("skewness".into(), num(report.summary.skewness)),
        ("kurtosis".into(), num(report.summary.kurtosis)),
    ];
    match &report.ar_model {
        Ok(m) => {
            kv.push(("ar_order".into(), m.order().to_string()));
            kv.push(("ar_intercept".into(), num(m.intercept)));
            let coefs: Vec<String> = m.coefficients.iter().map(|&c| num(c)).collect();
            kv.push(("ar_coefficients".into(), coefs.join(" ")));
            kv.push(("ar_residual_sd".into(), num(m.residual_sd)));
        }
        Err(e) => kv.push(("ar_error".into(), e.to_string())),
    }
    kv.push((
        "gap_threshold".into(),
        report.gap_threshold.map_or(String::new(), num),
    ));
    if let Some(c) = class {
        kv.push(("verdict".into(), c.verdict.name().into()));
        kv.push(("strength".into(), c.strength.name().into()));
        kv.push(("rationale".into(), c.rationale.clone()));
    }
    kv
}

/// Flat JSON object: summary keys plus `<variant>.<method>.<field>` entries.
pub fn report_json(report: &TestReport, class: Option<&Classification>) -> Value {
    let mut map = Map::new();
    for (k, v) in summary_pairs(report, class) {
        map.insert(k, Value::String(v));
    }
    for cell in &report.cells {
        let key = |f: &str| format!("{}.{}.{f}", cell.variant.name(), cell.method.name());
        map.insert(key("cutoff_source"), Value::String(cell.source.to_string()));
        match &cell.outcome {
            Ok(o) => {
                map.insert(key("estimate"), o.estimate.into());
                for (k, &l) in report.levels.iter().enumerate() {
                    map.insert(
                        key(&format!("cutoff_{}", level_label(l))),
                        o.cutoffs[k].into(),
                    );
                    map.insert(
                        key(&format!("reject_{}", level_label(l))),
                        o.rejected[k].into(),
                    );
                }
            }
            Err(e) => {
                map.insert(key("error"), Value::String(e.to_string()));
            }
        }
    }
    for d in &report.diagnostics {
        if let Ok(e) = d.estimate {
            map.insert(format!("{}.fa1.estimate", d.transform), e.into());
        }
        if let Some(g) = d.gap {
            map.insert(format!("{}.fa1.gap", d.transform), g.into());
        }
        if let Some(l) = d.large {
            map.insert(format!("{}.fa1.large_gap", d.transform), l.into());
        }
    }
    Value::Object(map)
}

pub fn classification_line(c: &Classification) -> String {
    format!(
        "classification: {} (evidence: {}); {}",
        c.verdict.name(),
        c.strength.name(),
        c.rationale
    )
}

/// One row per table: mean, sd and a cutoff column per level.
pub fn write_critvals_csv<W: Write>(out: W, tables: &[CriticalValueTable]) -> Result<(), IoError> {
    let mut w = csv::Writer::from_writer(out);
    let levels: Vec<f64> = tables
        .first()
        .map(|t| t.levels().collect())
        .unwrap_or_default();
    let mut header: Vec<String> = ["method", "t", "reps", "count", "failures", "mean", "sd"]
        .map(String::from)
        .to_vec();
    header.extend(levels.iter().map(|&l| format!("cutoff_{}", level_label(l))));
    w.write_record(&header)?;
    for t in tables {
        let mut row = vec![
            t.method.name().to_string(),
            t.len.to_string(),
            t.reps.to_string(),
            t.count.to_string(),
            t.failures.to_string(),
            num(t.mean),
            num(t.sd),
        ];
        row.extend(
            levels
                .iter()
                .map(|&l| t.cutoff(l).map_or(String::new(), num)),
        );
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_power_csv<W: Write>(out: W, results: &[PowerResult]) -> Result<(), IoError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "method",
        "model",
        "t",
        "level",
        "cutoff",
        "count",
        "failures",
        "rejections",
        "rejection_rate",
        "standard_error",
    ])?;
    for p in results {
        w.write_record([
            p.method.name().to_string(),
            p.alternative.model.name().to_string(),
            p.len.to_string(),
            level_label(p.level),
            num(p.cutoff),
            p.count.to_string(),
            p.failures.to_string(),
            p.rejections.to_string(),
            num(p.rejection_rate),
            num(p.standard_error()),
        ])?;
    }
    w.flush()?;
    Ok(())
}
