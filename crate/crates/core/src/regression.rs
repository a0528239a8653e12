//! Ordinary least squares helpers.

use alloc::vec::Vec;
use nalgebra::{DMatrix, DVector};

#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::{Error, Result};

/// Fit of `y = intercept + slope * x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    pub sse: f64,
    /// Conventional OLS standard error of the slope (`sse / (n - 2)` noise
    /// variance). Zero when `n == 2`.
    pub slope_se: f64,
    pub n: usize,
}

/// Simple regression of `y` on `x` with intercept.
pub fn fit_line(x: &[f64], y: &[f64]) -> Result<LineFit> {
    let n = x.len();
    debug_assert_eq!(n, y.len());
    if n < 2 {
        return Err(Error::TooFewValues { needed: 2, got: n });
    }
    let nf = n as f64;
    let mx = x.iter().sum::<f64>() / nf;
    let my = y.iter().sum::<f64>() / nf;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (&xi, &yi) in x.iter().zip(y) {
        let dx = xi - mx;
        sxx += dx * dx;
        sxy += dx * (yi - my);
    }
    if !(sxx > 0.0) {
        return Err(Error::SingularDesign);
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = x
        .iter()
        .zip(y)
        .map(|(&xi, &yi)| {
            let e = yi - intercept - slope * xi;
            e * e
        })
        .sum();
    let slope_se = if n > 2 {
        (sse / (nf - 2.0) / sxx).sqrt()
    } else {
        0.0
    };
    Ok(LineFit {
        slope,
        intercept,
        sse,
        slope_se,
        n,
    })
}

/// Least-squares solution of `design * beta = y` (design is `rows x cols`,
/// row-major) via Householder QR. Returns `(beta, residuals)`.
///
/// Rank deficiency is detected from the diagonal of R relative to its
/// largest entry.
pub fn least_squares(
    design: &[f64],
    rows: usize,
    cols: usize,
    y: &[f64],
) -> Result<(Vec<f64>, Vec<f64>)> {
    debug_assert_eq!(design.len(), rows * cols);
    debug_assert_eq!(y.len(), rows);
    if rows < cols || cols == 0 {
        return Err(Error::SingularDesign);
    }
    let a = DMatrix::from_row_slice(rows, cols, design);
    let b = DVector::from_column_slice(y);
    let qr = a.clone().qr();
    let r = qr.r();
    let max_diag = (0..cols).map(|i| r[(i, i)].abs()).fold(0.0, f64::max);
    let tol = max_diag * (rows as f64) * f64::EPSILON * 16.0;
    if !(max_diag > 0.0) || (0..cols).any(|i| r[(i, i)].abs() <= tol) {
        return Err(Error::SingularDesign);
    }
    let qtb = qr.q().transpose() * &b;
    let beta = r
        .solve_upper_triangular(&qtb)
        .ok_or(Error::SingularDesign)?;
    let residuals = &b - &a * &beta;
    Ok((
        beta.iter().copied().collect(),
        residuals.iter().copied().collect(),
    ))
}
