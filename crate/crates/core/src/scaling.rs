//! Rescaled range analysis and fluctuation analysis.
//!
//! Both estimators share the same log-spaced grid of block sizes and the
//! same two-pass blocking: `M = floor(T/n)` blocks from the first
//! observation, plus `M` blocks ending at the last observation (starting at
//! `L = T - nM`). When `nM = T` the second pass repeats the first.

use alloc::vec::Vec;

#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::regression::fit_line;
use crate::timeseries::LogPricePath;
use crate::{Error, Method, Result};

const GRID_START: f64 = 1.6;
const GRID_STEP: f64 = 0.15;

/// Ascending block sizes for a series of length `len`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaleGrid {
    pub len: usize,
    pub scales: Vec<usize>,
}

/// `ln n = 1.6 + 0.15k` up to `0.15 * floor(ln(0.1T) / 0.15)`, rounded half
/// up to integers and deduplicated.
pub fn time_scale_grid(len: usize) -> Result<ScaleGrid> {
    let too_short = || Error::TooShort {
        what: "time-scale grid",
        needed: 100,
        got: len,
    };
    if len < 10 {
        return Err(too_short());
    }
    let ln_max = GRID_STEP * ((0.1 * len as f64).ln() / GRID_STEP).floor();
    let mut scales: Vec<usize> = Vec::new();
    let mut k = 0;
    loop {
        let x = GRID_START + GRID_STEP * k as f64;
        if x > ln_max + 1e-9 {
            break;
        }
        let n = (x.exp() + 0.5).floor() as usize;
        if scales.last() != Some(&n) {
            scales.push(n);
        }
        k += 1;
    }
    if scales.len() < 3 {
        return Err(too_short());
    }
    Ok(ScaleGrid { len, scales })
}

/// Moment grid for fluctuation analysis.
#[derive(Debug, Clone, PartialEq)]
pub struct QGrid {
    pub name: &'static str,
    pub values: Vec<f64>,
}

impl QGrid {
    fn stepped(name: &'static str, step: f64) -> Self {
        Self {
            name,
            values: (1..=10).map(|k| step * k as f64).collect(),
        }
    }

    /// `q = 0.1, 0.2, ..., 1.0`
    pub fn fa1() -> Self {
        Self::stepped("FA1", 0.1)
    }

    /// `q = 0.3, 0.6, ..., 3.0`
    pub fn fa2() -> Self {
        Self::stepped("FA2", 0.3)
    }

    /// `q = 0.5, 1.0, ..., 5.0`
    pub fn fa3() -> Self {
        Self::stepped("FA3", 0.5)
    }

    /// Any ascending list of positive moments.
    pub fn custom(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() || values.iter().any(|q| !(*q > 0.0) || !q.is_finite()) {
            return Err(Error::InvalidParameter(
                "moments must be positive and finite",
            ));
        }
        if values.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidParameter(
                "moments must be strictly ascending",
            ));
        }
        Ok(Self {
            name: "custom",
            values,
        })
    }
}

/// Output of a scaling regression.
#[derive(Debug, Clone, PartialEq)]
pub struct HurstEstimate {
    pub h: f64,
    pub method: Method,
    /// `ln c` for rescaled range; `a(q)` per moment for fluctuation
    /// analysis; empty for the tail estimators.
    pub intercepts: Vec<f64>,
    pub n_points: usize,
    pub residual_sse: f64,
}

/// Start offsets of the blocks used at scale `n`, first pass then second.
fn block_starts(len: usize, n: usize) -> impl Iterator<Item = usize> {
    let m = len / n;
    let lead = len - n * m;
    (0..m)
        .map(move |b| b * n)
        .chain((0..m).map(move |b| lead + b * n))
}

fn check_scale(len: usize, n: usize) -> Result<()> {
    if n < 2 || n > len {
        return Err(Error::InvalidParameter("scale must satisfy 2 <= n <= T"));
    }
    Ok(())
}

/// `R/S` of one block: range of the cumulative mean deviations, the block
/// endpoint (which is zero) included, over the divisor-`n` standard
/// deviation.
fn block_rescaled_range(block: &[f64], scale: usize) -> Result<f64> {
    let n = block.len() as f64;
    let mean = block.iter().sum::<f64>() / n;
    let mut ss = 0.0;
    let mut cum = 0.0;
    let mut hi = 0.0_f64;
    let mut lo = 0.0_f64;
    for &z in &block[..block.len() - 1] {
        let dev = z - mean;
        ss += dev * dev;
        cum += dev;
        hi = hi.max(cum);
        lo = lo.min(cum);
    }
    let last = block[block.len() - 1] - mean;
    ss += last * last;
    let sd = (ss / n).sqrt();
    if !(sd > 0.0) {
        return Err(Error::ZeroDispersion { scale });
    }
    Ok((hi - lo) / sd)
}

/// Mean of `R_m / S_m` over the `2M` blocks at scale `n`.
pub fn rs_statistic(r: &[f64], n: usize) -> Result<f64> {
    check_scale(r.len(), n)?;
    let mut total = 0.0;
    let mut count = 0;
    for start in block_starts(r.len(), n) {
        total += block_rescaled_range(&r[start..start + n], n)?;
        count += 1;
    }
    Ok(total / count as f64)
}

pub fn estimate_rra(r: &[f64]) -> Result<HurstEstimate> {
    let grid = time_scale_grid(r.len())?;
    estimate_rra_on(r, &grid.scales)
}

/// Rescaled range regression over an explicit list of scales.
pub fn estimate_rra_on(r: &[f64], scales: &[usize]) -> Result<HurstEstimate> {
    let mut x = Vec::with_capacity(scales.len());
    let mut y = Vec::with_capacity(scales.len());
    for &n in scales {
        x.push((n as f64).ln());
        y.push(rs_statistic(r, n)?.ln());
    }
    let fit = fit_line(&x, &y)?;
    Ok(HurstEstimate {
        h: fit.slope,
        method: Method::Rra,
        intercepts: alloc::vec![fit.intercept],
        n_points: scales.len(),
        residual_sse: fit.sse,
    })
}

/// Absolute block increments `|p_{s+n} - p_s|` over the `2M` blocks.
fn block_increments(p: &[f64], n: usize) -> Vec<f64> {
    let len = p.len() - 1;
    block_starts(len, n)
        .map(|s| (p[s + n] - p[s]).abs())
        .collect()
}

/// `S_q(T, n) = 1/2 * sum_m v_m^q`.
pub fn partition_function(p: &LogPricePath, n: usize, q: f64) -> Result<f64> {
    check_scale(p.steps(), n)?;
    if !(q > 0.0) {
        return Err(Error::InvalidParameter("q must be positive"));
    }
    let v = block_increments(p.values(), n);
    if v.iter().all(|&x| x == 0.0) {
        return Err(Error::AllZeroIncrements { scale: n });
    }
    Ok(0.5 * v.iter().map(|x| x.powf(q)).sum::<f64>())
}

pub fn estimate_fa(r: &[f64], qs: &QGrid) -> Result<HurstEstimate> {
    let grid = time_scale_grid(r.len())?;
    estimate_fa_on(r, qs, &grid.scales)
}

/// Fixed-effects regression `ln S_q(T,n) = a(q) + (Hq - 1) ln n` over an
/// explicit list of scales, solved in closed form by demeaning within each
/// `q`.
pub fn estimate_fa_on(r: &[f64], qs: &QGrid, scales: &[usize]) -> Result<HurstEstimate> {
    let path = LogPricePath::from_returns(r);
    let p = path.values();
    let nq = qs.values.len();
    let ns = scales.len();
    if ns < 2 {
        return Err(Error::TooShort {
            what: "fluctuation analysis scales",
            needed: 2,
            got: ns,
        });
    }
    // y[iq][is] = ln S_q + ln n ; the regressor is q ln n.
    let mut y = alloc::vec![alloc::vec![0.0; ns]; nq];
    let ln_n: Vec<f64> = scales.iter().map(|&n| (n as f64).ln()).collect();
    for (is, &n) in scales.iter().enumerate() {
        check_scale(r.len(), n)?;
        let logs: Vec<f64> = block_increments(p, n).iter().map(|v| v.ln()).collect();
        for (iq, &q) in qs.values.iter().enumerate() {
            let s: f64 = 0.5 * logs.iter().map(|l| (q * l).exp()).sum::<f64>();
            if !(s > 0.0) || !s.is_finite() {
                return Err(Error::ZeroPartition { scale: n, q });
            }
            y[iq][is] = s.ln() + ln_n[is];
        }
    }
    let mean_ln_n = ln_n.iter().sum::<f64>() / ns as f64;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut y_means = Vec::with_capacity(nq);
    for (iq, &q) in qs.values.iter().enumerate() {
        let y_mean = y[iq].iter().sum::<f64>() / ns as f64;
        for is in 0..ns {
            let dx = q * (ln_n[is] - mean_ln_n);
            sxx += dx * dx;
            sxy += dx * (y[iq][is] - y_mean);
        }
        y_means.push(y_mean);
    }
    if !(sxx > 0.0) {
        return Err(Error::SingularDesign);
    }
    let h = sxy / sxx;
    let mut sse = 0.0;
    let mut intercepts = Vec::with_capacity(nq);
    for (iq, &q) in qs.values.iter().enumerate() {
        let a = y_means[iq] - h * q * mean_ln_n;
        for is in 0..ns {
            let e = y[iq][is] - a - h * q * ln_n[is];
            sse += e * e;
        }
        intercepts.push(a);
    }
    Ok(HurstEstimate {
        h,
        method: Method::fa_for(qs),
        intercepts,
        n_points: nq * ns,
        residual_sse: sse,
    })
}
