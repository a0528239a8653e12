//! CSV input and output for price and return series.
//!
//! Input files need a header row. A `close` (or `price`) column is read as
//! prices and converted to log returns; a `value` (or `return`) column is
//! read as returns directly. An optional `date` column supplies labels.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use selfaffine_core::timeseries::log_returns;
use selfaffine_core::{PriceSeries, ReturnsSeries};

const PRICE_COLUMNS: [&str; 2] = ["close", "price"];
const RETURN_COLUMNS: [&str; 2] = ["value", "return"];
const LABEL_COLUMN: &str = "date";

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("cannot read {path}: {source}")]
    Open {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("no `close`, `price`, `value` or `return` column in header {0:?}")]
    MissingColumn(Vec<String>),
    #[error("line {line}: cannot parse {value:?} as a number")]
    Parse { line: u64, value: String },
    #[error(transparent)]
    Data(#[from] selfaffine_core::Error),
}

/// A series as read from disk.
#[derive(Debug, Clone, PartialEq)]
pub enum SeriesInput {
    Prices(PriceSeries),
    Returns(ReturnsSeries),
}

impl SeriesInput {
    /// Returns, computing log returns from prices when needed.
    pub fn returns(&self) -> ReturnsSeries {
        match self {
            SeriesInput::Prices(p) => log_returns(p),
            SeriesInput::Returns(r) => r.clone(),
        }
    }
}

pub fn read_series_file(path: &Path) -> Result<SeriesInput, IoError> {
    let file = File::open(path).map_err(|source| IoError::Open {
        path: path.display().to_string(),
        source,
    })?;
    read_series(file)
}

pub fn read_series<R: Read>(reader: R) -> Result<SeriesInput, IoError> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(reader);
    let header: Vec<String> = rdr
        .headers()?
        .iter()
        .map(|h| h.to_ascii_lowercase())
        .collect();
    if header.iter().all(|h| h.is_empty()) {
        return Err(selfaffine_core::Error::TooShort {
            what: "input series",
            needed: 2,
            got: 0,
        }
        .into());
    }
    let find = |names: &[&str]| header.iter().position(|h| names.contains(&h.as_str()));
    let (column, prices) = match (find(&PRICE_COLUMNS), find(&RETURN_COLUMNS)) {
        (Some(c), _) => (c, true),
        (None, Some(c)) => (c, false),
        (None, None) => return Err(IoError::MissingColumn(header)),
    };
    let label_column = header.iter().position(|h| h == LABEL_COLUMN);

    let mut values = Vec::new();
    let mut labels = Vec::new();
    for record in rdr.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        let field = record.get(column).unwrap_or("");
        let value = field.parse::<f64>().map_err(|_| IoError::Parse {
            line,
            value: field.to_string(),
        })?;
        values.push(value);
        if let Some(c) = label_column {
            labels.push(record.get(c).unwrap_or("").to_string());
        }
    }
    Ok(if prices {
        let series = match label_column {
            Some(_) => PriceSeries::with_labels(values, labels)?,
            None => PriceSeries::new(values)?,
        };
        SeriesInput::Prices(series)
    } else {
        SeriesInput::Returns(ReturnsSeries::new(values)?)
    })
}

/// Writes `t,value` rows with `t` counted from 1.
pub fn write_returns<W: Write>(out: W, r: &[f64]) -> Result<(), IoError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["t", "value"])?;
    for (t, v) in r.iter().enumerate() {
        w.write_record([(t + 1).to_string(), v.to_string()])?;
    }
    w.flush()?;
    Ok(())
}
