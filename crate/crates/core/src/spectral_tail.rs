//! Log-periodogram regressions for the fractional integration order and
//! order-statistic estimators of the Hurst exponent from the upper tail.

use alloc::vec::Vec;
use core::f64::consts::PI;

#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::regression::fit_line;
use crate::scaling::HurstEstimate;
use crate::{Error, Method, Result};

/// `I(lambda_j) = |sum_t x_t exp(-i lambda_j t)|^2 / (2 pi T)` at
/// `lambda_j = 2 pi j / T`, `j = 1..=m`.
#[derive(Debug, Clone, PartialEq)]
pub struct Periodogram {
    pub len: usize,
    pub ordinates: Vec<f64>,
}

impl Periodogram {
    /// Frequency of ordinate `j` (1-based).
    pub fn frequency(&self, j: usize) -> f64 {
        2.0 * PI * j as f64 / self.len as f64
    }

    pub fn m(&self) -> usize {
        self.ordinates.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DEstimate {
    pub d: f64,
    pub method: Method,
    pub m: usize,
    pub standard_error: f64,
    pub intercept: f64,
}

/// Largest usable ordinate index, `floor((T-1)/2)`.
pub fn max_ordinates(len: usize) -> usize {
    len.saturating_sub(1) / 2
}

pub fn periodogram(r: &[f64], m: usize) -> Result<Periodogram> {
    let len = r.len();
    let max = max_ordinates(len);
    if m < 1 || m > max {
        return Err(Error::BadOrdinateCount { m, max });
    }
    let norm = 1.0 / (2.0 * PI * len as f64);
    let ordinates = dft_power(r, m).into_iter().map(|p| p * norm).collect();
    Ok(Periodogram { len, ordinates })
}

/// `|sum_t x_t e^{-i 2 pi j t / T}|^2` for `j = 1..=m`.
#[cfg(feature = "std")]
fn dft_power(r: &[f64], m: usize) -> Vec<f64> {
    use rustfft::num_complex::Complex;
    let mut buf: Vec<Complex<f64>> = r.iter().map(|&x| Complex::new(x, 0.0)).collect();
    rustfft::FftPlanner::new()
        .plan_fft_forward(r.len())
        .process(&mut buf);
    buf[1..=m].iter().map(|c| c.norm_sqr()).collect()
}

#[cfg(not(feature = "std"))]
fn dft_power(r: &[f64], m: usize) -> Vec<f64> {
    let len = r.len() as f64;
    (1..=m)
        .map(|j| {
            let w = 2.0 * PI * j as f64 / len;
            let (mut re, mut im) = (0.0, 0.0);
            for (t, &x) in r.iter().enumerate() {
                let (s, c) = (w * t as f64).sin_cos();
                re += x * c;
                im -= x * s;
            }
            re * re + im * im
        })
        .collect()
}

/// Ordinates at or below this fraction of the mean ordinate `sum x^2 / (2 pi T)`
/// are rounding noise from the transform and count as zero.
const ZERO_ORDINATE: f64 = 1e-20;

fn log_ordinates(r: &[f64], p: &Periodogram) -> Result<Vec<f64>> {
    let mean_ordinate = r.iter().map(|x| x * x).sum::<f64>() / (2.0 * PI * r.len() as f64);
    let floor = ZERO_ORDINATE * mean_ordinate;
    p.ordinates
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            if v > floor {
                Ok(v.ln())
            } else {
                Err(Error::ZeroOrdinate { j: i + 1 })
            }
        })
        .collect()
}

fn check_len(len: usize) -> Result<()> {
    if len < 100 {
        return Err(Error::TooShort {
            what: "log-periodogram regression",
            needed: 100,
            got: len,
        });
    }
    Ok(())
}

/// GPH: regress `ln I(lambda_j)` on `-2 ln(2 sin(lambda_j / 2))` over
/// `m = floor(T^0.5)` ordinates.
pub fn estimate_gph(r: &[f64]) -> Result<DEstimate> {
    check_len(r.len())?;
    let m = ((r.len() as f64).sqrt().floor() as usize).min(max_ordinates(r.len()));
    let p = periodogram(r, m)?;
    let y = log_ordinates(r, &p)?;
    let x: Vec<f64> = (1..=m).map(|j| gph_regressor(p.frequency(j))).collect();
    let fit = fit_line(&x, &y)?;
    Ok(DEstimate {
        d: fit.slope,
        method: Method::Gph,
        m,
        standard_error: fit.slope_se,
        intercept: fit.intercept,
    })
}

/// `-2 ln |1 - e^{-i lambda}| = -2 ln(2 sin(lambda / 2))`.
pub fn gph_regressor(lambda: f64) -> f64 {
    -2.0 * (2.0 * (lambda / 2.0).sin()).ln()
}

/// Regress `ln I(lambda_j)` on `ln lambda_j` over `m = floor(T^0.9)`
/// ordinates (capped at the Nyquist index); `d = -slope / 2`.
pub fn estimate_robinson(r: &[f64]) -> Result<DEstimate> {
    check_len(r.len())?;
    let m = ((r.len() as f64).powf(0.9).floor() as usize).min(max_ordinates(r.len()));
    let p = periodogram(r, m)?;
    let y = log_ordinates(r, &p)?;
    let x: Vec<f64> = (1..=m).map(|j| p.frequency(j).ln()).collect();
    let fit = fit_line(&x, &y)?;
    Ok(DEstimate {
        d: -fit.slope / 2.0,
        method: Method::Robinson,
        m,
        standard_error: fit.slope_se / 2.0,
        intercept: fit.intercept,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TailMethod {
    Pickands,
    Hill,
    /// de Haan-Resnick
    Hr,
}

/// Tail size `m = floor(0.05 T)`.
pub fn tail_size(len: usize) -> usize {
    len / 20
}

/// Tail estimate of `H` from the descending order statistics
/// `x_(1) >= x_(2) >= ...` of the raw returns (not absolute values).
pub fn estimate_tail(r: &[f64], method: TailMethod) -> Result<HurstEstimate> {
    let len = r.len();
    if len < 100 {
        return Err(Error::TooShort {
            what: "tail estimator",
            needed: 100,
            got: len,
        });
    }
    let m = tail_size(len);
    let mut sorted = r.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    // 1-based order statistic.
    let x = |k: usize| sorted[k - 1];
    let positive_ln = |v: f64| {
        if v > 0.0 {
            Ok(v.ln())
        } else {
            Err(Error::NonPositiveTail)
        }
    };

    let h = match method {
        TailMethod::Pickands => {
            (positive_ln(x(m) - x(2 * m))? - positive_ln(x(2 * m) - x(4 * m))?)
                / core::f64::consts::LN_2
        }
        TailMethod::Hill => {
            let threshold = positive_ln(x(m))?;
            let mean_log = sorted[..m - 1].iter().map(|v| v.ln()).sum::<f64>() / (m - 1) as f64;
            mean_log - threshold
        }
        TailMethod::Hr => (positive_ln(x(1))? - positive_ln(x(m))?) / (m as f64).ln(),
    };
    Ok(HurstEstimate {
        h,
        method: match method {
            TailMethod::Pickands => Method::Pickands,
            TailMethod::Hill => Method::Hill,
            TailMethod::Hr => Method::Hr,
        },
        intercepts: Vec::new(),
        n_points: m,
        residual_sse: 0.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::RngStream;
    use alloc::vec;

    /// Direct DFT, independent of the FFT path.
    fn naive_power(r: &[f64], j: usize) -> f64 {
        let n = r.len() as f64;
        let (mut re, mut im) = (0.0, 0.0);
        for (t, &x) in r.iter().enumerate() {
            let a = 2.0 * PI * j as f64 * (t + 1) as f64 / n;
            re += x * a.cos();
            im -= x * a.sin();
        }
        (re * re + im * im) / (2.0 * PI * n)
    }

    #[test]
    fn matches_direct_dft() {
        let mut rng = RngStream::new(4);
        let r: Vec<f64> = (0..257).map(|_| rng.normal()).collect();
        let p = periodogram(&r, 128).unwrap();
        for j in 1..=128 {
            let direct = naive_power(&r, j);
            assert!((p.ordinates[j - 1] - direct).abs() < 1e-9 * direct.max(1.0));
        }
    }

    #[test]
    fn constant_series_has_empty_spectrum() {
        let p = periodogram(&[2.5; 64], 31).unwrap();
        assert!(p.ordinates.iter().all(|&v| v < 1e-20));
    }

    #[test]
    fn cosine_concentrates_on_its_ordinate() {
        let t = 1024;
        let j0 = 37;
        let r: Vec<f64> = (1..=t)
            .map(|s| (2.0 * PI * j0 as f64 * s as f64 / t as f64).cos())
            .collect();
        let p = periodogram(&r, max_ordinates(t)).unwrap();
        let peak = p.ordinates[j0 - 1];
        let rest = p
            .ordinates
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != j0 - 1)
            .map(|(_, &v)| v)
            .fold(0.0, f64::max);
        assert!(peak >= 100.0 * rest);
    }

    #[test]
    fn parseval_full_grid() {
        let mut rng = RngStream::new(8);
        let mut r: Vec<f64> = (0..300).map(|_| rng.normal()).collect();
        let mean = r.iter().sum::<f64>() / 300.0;
        r.iter_mut().for_each(|x| *x -= mean);
        // Sum over j = 0..T-1 of I(lambda_j); j = 0 vanishes for mean-zero data.
        let total: f64 = (0..300).map(|j| naive_power(&r, j)).sum();
        let energy: f64 = r.iter().map(|x| x * x).sum::<f64>() / (2.0 * PI);
        assert!(((total - energy) / energy).abs() < 1e-8);
        let p = periodogram(&r, max_ordinates(300)).unwrap();
        // Ordinates j and T-j are mirror images; j = 150 is the lone Nyquist term.
        let half: f64 = 2.0 * p.ordinates.iter().sum::<f64>() + naive_power(&r, 150);
        assert!(((half - energy) / energy).abs() < 1e-8);
    }

    #[test]
    fn ordinate_count_bounds() {
        assert!(matches!(
            periodogram(&[1.0; 10], 0),
            Err(Error::BadOrdinateCount { .. })
        ));
        assert!(matches!(
            periodogram(&[1.0; 10], 5),
            Err(Error::BadOrdinateCount { m: 5, max: 4 })
        ));
    }

    #[test]
    fn gph_regressor_zero_at_third_pi() {
        assert!(gph_regressor(PI / 3.0).abs() < 1e-15);
    }

    #[test]
    fn robinson_ordinate_count() {
        let mut rng = RngStream::new(2);
        let r: Vec<f64> = (0..5000).map(|_| rng.normal()).collect();
        assert_eq!(estimate_robinson(&r).unwrap().m, 2133);
        assert_eq!(estimate_gph(&r).unwrap().m, 70);
    }

    #[test]
    fn log_periodogram_rejects_constant() {
        assert!(matches!(
            estimate_gph(&[1.0; 200]),
            Err(Error::ZeroOrdinate { .. })
        ));
    }

    #[test]
    fn tail_hand_example() {
        // T = 100 -> m = 5; descending values 100, 99, ..., 1.
        let r: Vec<f64> = (1..=100).map(|v| v as f64).collect();
        let hill = estimate_tail(&r, TailMethod::Hill).unwrap().h;
        let expected =
            (f64::ln(100.0) + f64::ln(99.0) + f64::ln(98.0) + f64::ln(97.0)) / 4.0 - f64::ln(96.0);
        assert!((hill - expected).abs() < 1e-14);
        let hr = estimate_tail(&r, TailMethod::Hr).unwrap().h;
        assert!((hr - (f64::ln(100.0) - f64::ln(96.0)) / f64::ln(5.0)).abs() < 1e-14);
        // x(5) - x(10) = 5, x(10) - x(20) = 10
        let pk = estimate_tail(&r, TailMethod::Pickands).unwrap().h;
        assert!((pk - (f64::ln(5.0) - f64::ln(10.0)) / f64::ln(2.0)).abs() < 1e-14);
    }

    #[test]
    fn tail_needs_positive_arguments() {
        let r = vec![-1.0; 200];
        assert_eq!(
            estimate_tail(&r, TailMethod::Hill),
            Err(Error::NonPositiveTail)
        );
        assert_eq!(
            estimate_tail(&r, TailMethod::Pickands),
            Err(Error::NonPositiveTail)
        );
        assert!(matches!(
            estimate_tail(&r[..50], TailMethod::Hr),
            Err(Error::TooShort { .. })
        ));
    }
}
