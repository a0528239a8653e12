//! Price and return series, descriptive statistics, the reorder and
//! normal-score transforms, and autoregressive fitting.

use alloc::string::String;
use alloc::vec::Vec;
use core::ops::Deref;

#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::regression::least_squares;
use crate::{normal, Error, Result, RngStream};

/// Closing prices, optionally labelled by date.
#[derive(Debug, Clone, PartialEq)]
pub struct PriceSeries {
    values: Vec<f64>,
    labels: Option<Vec<String>>,
}

impl PriceSeries {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        Self::validate(&values)?;
        Ok(Self {
            values,
            labels: None,
        })
    }

    pub fn with_labels(values: Vec<f64>, labels: Vec<String>) -> Result<Self> {
        Self::validate(&values)?;
        if labels.len() != values.len() {
            return Err(Error::LabelMismatch {
                labels: labels.len(),
                values: values.len(),
            });
        }
        Ok(Self {
            values,
            labels: Some(labels),
        })
    }

    fn validate(values: &[f64]) -> Result<()> {
        if values.len() < 2 {
            return Err(Error::TooShort {
                what: "price series",
                needed: 2,
                got: values.len(),
            });
        }
        for (index, &value) in values.iter().enumerate() {
            if !(value > 0.0) || !value.is_finite() {
                return Err(Error::NonPositivePrice { index, value });
            }
        }
        Ok(())
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// A finite sequence of log returns. Derefs to `[f64]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReturnsSeries(Vec<f64>);

impl ReturnsSeries {
    /// Fails on an empty input or any non-finite value.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::TooShort {
                what: "returns series",
                needed: 1,
                got: 0,
            });
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl Deref for ReturnsSeries {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

/// Log price path `p_0 = 0, p_t = p_{t-1} + z_t`, of length `T + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct LogPricePath(Vec<f64>);

impl LogPricePath {
    pub fn from_returns(r: &[f64]) -> Self {
        let mut p = Vec::with_capacity(r.len() + 1);
        let mut acc = 0.0;
        p.push(acc);
        for &z in r {
            acc += z;
            p.push(acc);
        }
        Self(p)
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    /// Number of returns the path was built from.
    pub fn steps(&self) -> usize {
        self.0.len() - 1
    }

    /// First differences `p_t - p_{t-1}`.
    pub fn increments(&self) -> Vec<f64> {
        self.0.windows(2).map(|w| w[1] - w[0]).collect()
    }
}

/// Moments with divisor `T`. Kurtosis is raw, so 3 for a Gaussian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SummaryStats {
    pub mean: f64,
    pub sd: f64,
    pub skewness: f64,
    pub kurtosis: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OrderCriterion {
    #[default]
    Aic,
    Bic,
}

/// `z_t = intercept + sum_i coefficients[i] * z_{t-1-i} + e_t`.
#[derive(Debug, Clone, PartialEq)]
pub struct ArModel {
    pub intercept: f64,
    pub coefficients: Vec<f64>,
    pub residual_sd: f64,
}

impl ArModel {
    pub fn new(intercept: f64, coefficients: Vec<f64>, residual_sd: f64) -> Result<Self> {
        if !(residual_sd > 0.0) || !residual_sd.is_finite() {
            return Err(Error::InvalidParameter(
                "residual_sd must be positive and finite",
            ));
        }
        if !intercept.is_finite() || coefficients.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidParameter("AR parameters must be finite"));
        }
        Ok(Self {
            intercept,
            coefficients,
            residual_sd,
        })
    }

    pub fn order(&self) -> usize {
        self.coefficients.len()
    }

    /// Stationarity check via the Levinson-Durbin step-down recursion: the
    /// characteristic roots lie strictly outside the unit circle iff every
    /// reflection coefficient has modulus below one.
    pub fn is_stationary(&self) -> bool {
        const MARGIN: f64 = 1e-8;
        let mut a = self.coefficients.clone();
        while let Some(&k) = a.last() {
            if k.abs() >= 1.0 - MARGIN {
                return false;
            }
            let p = a.len();
            let denom = 1.0 - k * k;
            let prev: Vec<f64> = (0..p - 1)
                .map(|i| (a[i] + k * a[p - 2 - i]) / denom)
                .collect();
            a = prev;
        }
        true
    }
}

/// `ln(prices[t+1]) - ln(prices[t])`.
pub fn log_returns(prices: &PriceSeries) -> ReturnsSeries {
    let logs: Vec<f64> = prices.values().iter().map(|p| p.ln()).collect();
    ReturnsSeries(logs.windows(2).map(|w| w[1] - w[0]).collect())
}

pub fn summary_stats(r: &[f64]) -> Result<SummaryStats> {
    let t = r.len();
    if t < 4 {
        return Err(Error::TooShort {
            what: "summary statistics",
            needed: 4,
            got: t,
        });
    }
    let n = t as f64;
    let mean = r.iter().sum::<f64>() / n;
    let (mut m2, mut m3, mut m4) = (0.0, 0.0, 0.0);
    for &x in r {
        let d = x - mean;
        let d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    if !(m2 > 0.0) {
        return Err(Error::DegenerateSeries);
    }
    Ok(SummaryStats {
        mean,
        sd: m2.sqrt(),
        skewness: m3 / (m2 * m2.sqrt()),
        kurtosis: m4 / (m2 * m2),
    })
}

/// Sample autocorrelation at `lag` (mean-corrected, divisor `T` in both the
/// autocovariance and the variance).
pub fn autocorrelation(r: &[f64], lag: usize) -> f64 {
    let t = r.len();
    if lag >= t {
        return 0.0;
    }
    let mean = r.iter().sum::<f64>() / t as f64;
    let var: f64 = r.iter().map(|x| (x - mean) * (x - mean)).sum();
    let cov: f64 = r[lag..]
        .iter()
        .zip(r)
        .map(|(a, b)| (a - mean) * (b - mean))
        .sum();
    cov / var
}

/// 1-based ascending ranks, ties broken by original index.
fn ranks(values: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
    let mut rank = alloc::vec![0; values.len()];
    for (k, &i) in order.iter().enumerate() {
        rank[i] = k + 1;
    }
    rank
}

/// Random permutation: draw `xi_t ~ U(0,1)` and set `y*_t = y_{rank(xi_t)}`.
pub fn random_reorder(r: &[f64], seed: u64) -> Vec<f64> {
    let mut rng = RngStream::new(seed);
    let xi: Vec<f64> = (0..r.len()).map(|_| rng.uniform()).collect();
    ranks(&xi).into_iter().map(|k| r[k - 1]).collect()
}

/// Normal scores `Phi^{-1}(rank_t / (T + 1))`.
pub fn normalize_transform(r: &[f64]) -> Vec<f64> {
    let denom = (r.len() + 1) as f64;
    ranks(r)
        .into_iter()
        .map(|k| normal::quantile(k as f64 / denom))
        .collect()
}

fn ar_design(r: &[f64], order: usize, max_lag: usize) -> (Vec<f64>, Vec<f64>, usize) {
    let rows = r.len() - max_lag;
    let cols = order + 1;
    let mut design = Vec::with_capacity(rows * cols);
    let mut y = Vec::with_capacity(rows);
    for t in max_lag..r.len() {
        design.push(1.0);
        for i in 1..=order {
            design.push(r[t - i]);
        }
        y.push(r[t]);
    }
    (design, y, rows)
}

/// Fits AR(p) for each `p` in `0..=max_lag` on the common sample
/// `t = max_lag+1..T` and keeps the order minimising the criterion.
pub fn fit_ar(r: &[f64], max_lag: usize, criterion: OrderCriterion) -> Result<ArModel> {
    let t = r.len();
    let needed = (10 * max_lag + 1).max(2);
    if t < needed {
        return Err(Error::TooShort {
            what: "autoregressive fit",
            needed,
            got: t,
        });
    }
    let rows = (t - max_lag) as f64;
    let mut best: Option<(f64, Vec<f64>, f64)> = None;
    for order in 0..=max_lag {
        let (design, y, n) = ar_design(r, order, max_lag);
        let (beta, resid) = least_squares(&design, n, order + 1, &y)?;
        let ssr: f64 = resid.iter().map(|e| e * e).sum();
        if !(ssr > 0.0) {
            return Err(Error::DegenerateSeries);
        }
        let k = (order + 1) as f64;
        let penalty = match criterion {
            OrderCriterion::Aic => 2.0 * k,
            OrderCriterion::Bic => rows.ln() * k,
        };
        let score = rows * (ssr / rows).ln() + penalty;
        if best.as_ref().is_none_or(|(s, _, _)| score < *s) {
            best = Some((score, beta, ssr));
        }
    }
    let (_, beta, ssr) = best.expect("at least order 0 is fitted");
    let dof = rows - beta.len() as f64;
    let residual_sd = if dof > 0.0 {
        (ssr / dof).sqrt()
    } else {
        (ssr / rows).sqrt()
    };
    ArModel::new(beta[0], beta[1..].to_vec(), residual_sd)
}

/// Residuals `e_t = z_t - c - sum phi_i z_{t-i}` for `t > p`.
pub fn ar_filter(r: &[f64], model: &ArModel) -> Result<Vec<f64>> {
    let p = model.order();
    if p >= r.len() {
        return Err(Error::OrderTooLarge {
            order: p,
            len: r.len(),
        });
    }
    Ok((p..r.len())
        .map(|t| {
            let fitted: f64 = model
                .coefficients
                .iter()
                .enumerate()
                .map(|(i, phi)| phi * r[t - 1 - i])
                .sum();
            r[t] - model.intercept - fitted
        })
        .collect())
}
