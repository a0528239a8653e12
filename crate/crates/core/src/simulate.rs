//! Seedable generators: NIID, Student-t, ARFIMA(0,d,0), L-stable
//! (Chambers-Mallows-Stuck) and autoregressive series.
//!
//! Every generator draws the innovations for the output positions first and
//! any pre-sample values afterwards. With identity dynamics (ARFIMA at
//! `d = 0`, or an AR model with zero coefficients, zero intercept and unit
//! innovation sd) the output therefore equals the NIID output for the same
//! seed, bit for bit.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};

#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::timeseries::ArModel;
use crate::{Error, Result, ReturnsSeries, RngStream};

/// Default number of lags kept in the ARFIMA moving-average truncation.
pub const DEFAULT_TRUNCATION: usize = 4999;
/// Default pre-sample length for autoregressive simulation.
pub const DEFAULT_AR_BURN_IN: usize = 1000;
const MIN_AR_BURN_IN: usize = 1000;
const ALPHA_ONE_GUARD: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub enum Model {
    Niid,
    Arfima {
        d: f64,
    },
    LStable {
        alpha: f64,
        beta: f64,
        mu: f64,
        sigma: f64,
    },
    StudentT {
        df: u32,
    },
    ArRecursive {
        model: ArModel,
    },
}

impl Model {
    /// ARFIMA(0,d,0) with `d = H - 0.5`.
    pub fn arfima_for_hurst(h: f64) -> Self {
        Model::Arfima { d: h - 0.5 }
    }

    /// Symmetric standard L-stable law with `alpha = 1/H`.
    pub fn lstable_for_hurst(h: f64) -> Self {
        Model::LStable {
            alpha: 1.0 / h,
            beta: 0.0,
            mu: 0.0,
            sigma: 1.0,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Model::Niid => "niid",
            Model::Arfima { .. } => "arfima",
            Model::LStable { .. } => "lstable",
            Model::StudentT { .. } => "student-t",
            Model::ArRecursive { .. } => "ar-recursive",
        }
    }
}

/// Model, length and seed of a simulated series.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationSpec {
    pub model: Model,
    pub len: usize,
    pub seed: u64,
    /// ARFIMA moving-average truncation `J`; innovations are drawn for
    /// `t = -J..T`.
    pub truncation: usize,
    /// Pre-sample length discarded by the autoregressive generator.
    pub burn_in: usize,
}

impl SimulationSpec {
    pub fn new(model: Model, len: usize, seed: u64) -> Self {
        Self {
            model,
            len,
            seed,
            truncation: DEFAULT_TRUNCATION,
            burn_in: DEFAULT_AR_BURN_IN,
        }
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        Self {
            seed,
            ..self.clone()
        }
    }

    pub fn with_len(&self, len: usize) -> Self {
        Self {
            len,
            ..self.clone()
        }
    }
}

/// Moving-average weights of `(1 - L)^{-d}`: `gamma_0 = 1`,
/// `gamma_j = gamma_{j-1} (d + j - 1) / j`.
#[derive(Debug, Clone, PartialEq)]
pub struct MAWeights {
    pub d: f64,
    pub values: Vec<f64>,
}

impl MAWeights {
    fn recursion(d: f64, last: usize) -> Self {
        let mut values = Vec::with_capacity(last + 1);
        values.push(1.0);
        for j in 1..=last {
            let prev = values[j - 1];
            values.push(prev * (d + j as f64 - 1.0) / j as f64);
        }
        Self { d, values }
    }
}

fn check_d(d: f64) -> Result<()> {
    if d.is_finite() && d.abs() < 0.5 {
        Ok(())
    } else {
        Err(Error::BadD(d))
    }
}

/// Weights `gamma_0..=gamma_last` for `|d| < 0.5`.
pub fn arfima_weights(d: f64, last: usize) -> Result<MAWeights> {
    check_d(d)?;
    Ok(MAWeights::recursion(d, last))
}

/// `out[i] = sum_s weights[s] * u[offset + i - s]` for `i in 0..len`, where
/// `offset = weights.len() - 1`. Direct O(len * J) evaluation.
pub fn convolve_direct(weights: &[f64], u: &[f64], len: usize) -> Vec<f64> {
    let offset = weights.len() - 1;
    debug_assert!(u.len() >= offset + len);
    (0..len)
        .map(|i| {
            let k = offset + i;
            weights.iter().enumerate().map(|(s, w)| w * u[k - s]).sum()
        })
        .collect()
}

#[cfg(feature = "std")]
mod fft_conv {
    use super::*;
    use rustfft::num_complex::Complex;
    use rustfft::{Fft, FftPlanner};
    use std::sync::Arc;

    /// Circular convolution of size `n >= T + J` with the weight spectrum
    /// precomputed. Outputs at positions `J..J+T` never wrap.
    pub struct FftKernel {
        n: usize,
        offset: usize,
        forward: Arc<dyn Fft<f64>>,
        inverse: Arc<dyn Fft<f64>>,
        spectrum: Vec<Complex<f64>>,
    }

    impl core::fmt::Debug for FftKernel {
        fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
            f.debug_struct("FftKernel")
                .field("n", &self.n)
                .finish_non_exhaustive()
        }
    }

    /// Smallest `2^a 3^b 5^c` not below `n`.
    pub(crate) fn fast_len(n: usize) -> usize {
        let mut best = n.next_power_of_two();
        let mut p5 = 1;
        while p5 < best {
            let mut p35 = p5;
            while p35 < best {
                let mut m = p35;
                while m < n {
                    m *= 2;
                }
                best = best.min(m);
                p35 *= 3;
            }
            p5 *= 5;
        }
        best
    }

    impl FftKernel {
        pub fn new(weights: &[f64], len: usize) -> Self {
            let offset = weights.len() - 1;
            let n = fast_len(len + offset);
            let mut planner = FftPlanner::new();
            let forward = planner.plan_fft_forward(n);
            let inverse = planner.plan_fft_inverse(n);
            let mut spectrum: Vec<Complex<f64>> =
                weights.iter().map(|&w| Complex::new(w, 0.0)).collect();
            spectrum.resize(n, Complex::new(0.0, 0.0));
            forward.process(&mut spectrum);
            Self {
                n,
                offset,
                forward,
                inverse,
                spectrum,
            }
        }

        pub fn apply(&self, u: &[f64], len: usize) -> Vec<f64> {
            let mut buf: Vec<Complex<f64>> = u.iter().map(|&x| Complex::new(x, 0.0)).collect();
            buf.resize(self.n, Complex::new(0.0, 0.0));
            self.forward.process(&mut buf);
            for (b, s) in buf.iter_mut().zip(&self.spectrum) {
                *b *= s;
            }
            self.inverse.process(&mut buf);
            let scale = 1.0 / self.n as f64;
            buf[self.offset..self.offset + len]
                .iter()
                .map(|c| c.re * scale)
                .collect()
        }
    }
}

/// Same contract as [`convolve_direct`], evaluated by FFT when the `std`
/// feature is enabled.
pub fn convolve(weights: &[f64], u: &[f64], len: usize) -> Vec<f64> {
    ArfimaKernel::new(weights.to_vec(), len).apply(u, len)
}

#[derive(Debug)]
struct ArfimaKernel {
    weights: Vec<f64>,
    #[cfg(feature = "std")]
    fft: Option<fft_conv::FftKernel>,
}

impl ArfimaKernel {
    // Below this many multiply-adds per output the direct form wins.
    #[cfg(feature = "std")]
    const DIRECT_MAX_TAPS: usize = 64;

    fn new(weights: Vec<f64>, len: usize) -> Self {
        #[cfg(feature = "std")]
        {
            let taps = weights.iter().rposition(|&w| w != 0.0).map_or(0, |i| i + 1);
            let fft =
                (taps > Self::DIRECT_MAX_TAPS).then(|| fft_conv::FftKernel::new(&weights, len));
            Self { weights, fft }
        }
        #[cfg(not(feature = "std"))]
        {
            let _ = len;
            Self { weights }
        }
    }

    fn apply(&self, u: &[f64], len: usize) -> Vec<f64> {
        #[cfg(feature = "std")]
        if let Some(fft) = &self.fft {
            return fft.apply(u, len);
        }
        // Skip trailing zero weights; the offset into `u` is unchanged.
        let taps = self
            .weights
            .iter()
            .rposition(|&w| w != 0.0)
            .map_or(1, |i| i + 1);
        let offset = self.weights.len() - 1;
        (0..len)
            .map(|i| {
                let k = offset + i;
                self.weights[..taps]
                    .iter()
                    .enumerate()
                    .map(|(s, w)| w * u[k - s])
                    .sum()
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy)]
struct LStableParams {
    alpha: f64,
    beta: f64,
    mu: f64,
    sigma: f64,
}

impl LStableParams {
    fn validate(alpha: f64, beta: f64, mu: f64, sigma: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 2.0) {
            return Err(Error::BadAlpha(alpha));
        }
        if !(-1.0..=1.0).contains(&beta) {
            return Err(Error::BadBeta(beta));
        }
        if !(sigma > 0.0) || !sigma.is_finite() {
            return Err(Error::BadSigma(sigma));
        }
        if !mu.is_finite() {
            return Err(Error::InvalidParameter("mu must be finite"));
        }
        Ok(Self {
            alpha,
            beta,
            mu,
            sigma,
        })
    }

    /// One Chambers-Mallows-Stuck draw.
    fn draw(&self, rng: &mut RngStream) -> f64 {
        let v = PI * (rng.uniform() - 0.5);
        let w = rng.exponential();
        cms_variate(self.alpha, self.beta, self.mu, self.sigma, v, w)
    }
}

/// Chambers-Mallows-Stuck transform of `V ~ U(-pi/2, pi/2)` and `W ~ Exp(1)`.
pub fn cms_variate(alpha: f64, beta: f64, mu: f64, sigma: f64, v: f64, w: f64) -> f64 {
    if (alpha - 1.0).abs() < ALPHA_ONE_GUARD {
        let shifted = FRAC_PI_2 + beta * v;
        let x = (shifted * v.tan() - beta * (w * v.cos() / shifted).ln()) / FRAC_PI_2;
        sigma * x + beta * sigma * sigma.ln() / FRAC_PI_2 + mu
    } else {
        let t = (PI * alpha / 2.0).tan();
        let b = (beta * t).atan() / alpha;
        let s = (1.0 + beta * beta * t * t).powf(1.0 / (2.0 * alpha));
        let av = alpha * (v + b);
        let x = s * av.sin() / v.cos().powf(1.0 / alpha)
            * ((v - av).cos() / w).powf((1.0 - alpha) / alpha);
        sigma * x + mu
    }
}

#[derive(Debug)]
enum Kind {
    Niid,
    StudentT(rand_distr::StudentT<f64>),
    LStable(LStableParams),
    Arfima {
        kernel: ArfimaKernel,
        presample: usize,
    },
    Ar {
        model: ArModel,
        burn_in: usize,
    },
}

/// A validated generator. Construction does the expensive set-up (ARFIMA
/// weights and their spectrum) once; [`Generator::generate`] can then be
/// called from many threads with independent streams.
#[derive(Debug)]
pub struct Generator {
    len: usize,
    kind: Kind,
}

impl Generator {
    pub fn new(spec: &SimulationSpec) -> Result<Self> {
        if spec.len == 0 {
            return Err(Error::TooShort {
                what: "simulated series",
                needed: 1,
                got: 0,
            });
        }
        let kind = match &spec.model {
            Model::Niid => Kind::Niid,
            Model::StudentT { df } => {
                if *df < 1 {
                    return Err(Error::BadDF(*df));
                }
                Kind::StudentT(
                    rand_distr::StudentT::new(*df as f64).map_err(|_| Error::BadDF(*df))?,
                )
            }
            &Model::LStable {
                alpha,
                beta,
                mu,
                sigma,
            } => Kind::LStable(LStableParams::validate(alpha, beta, mu, sigma)?),
            &Model::Arfima { d } => {
                let weights = arfima_weights(d, spec.truncation)?;
                Kind::Arfima {
                    kernel: ArfimaKernel::new(weights.values, spec.len),
                    presample: spec.truncation + 1,
                }
            }
            Model::ArRecursive { model } => {
                if spec.burn_in < MIN_AR_BURN_IN {
                    return Err(Error::BadBurnIn(spec.burn_in));
                }
                if !model.is_stationary() {
                    return Err(Error::ExplosiveModel);
                }
                Kind::Ar {
                    model: model.clone(),
                    burn_in: spec.burn_in,
                }
            }
        };
        Ok(Self {
            len: spec.len,
            kind,
        })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn generate(&self, rng: &mut RngStream) -> Result<ReturnsSeries> {
        let t = self.len;
        let values = match &self.kind {
            Kind::Niid => (0..t).map(|_| rng.normal()).collect(),
            Kind::StudentT(dist) => (0..t).map(|_| rng.sample(dist)).collect(),
            Kind::LStable(p) => (0..t).map(|_| p.draw(rng)).collect(),
            Kind::Arfima { kernel, presample } => {
                // Draw u_1..u_T, then u_0, u_{-1}, ..., u_{-presample+1}.
                let current: Vec<f64> = (0..t).map(|_| rng.normal()).collect();
                let past: Vec<f64> = (0..*presample).map(|_| rng.normal()).collect();
                let lags = kernel.weights.len() - 1;
                // Time-ordered innovations u_{1-J}..u_T.
                let mut u = Vec::with_capacity(lags + t);
                u.extend(past[..lags].iter().rev());
                u.extend_from_slice(&current);
                kernel.apply(&u, t)
            }
            Kind::Ar { model, burn_in } => simulate_ar(model, *burn_in, t, rng),
        };
        ReturnsSeries::new(values)
    }
}

fn simulate_ar(model: &ArModel, burn_in: usize, t: usize, rng: &mut RngStream) -> Vec<f64> {
    let p = model.order();
    let current: Vec<f64> = (0..t).map(|_| rng.normal()).collect();
    let past: Vec<f64> = (0..burn_in).map(|_| rng.normal()).collect();
    let persistence: f64 = model.coefficients.iter().sum();
    let mean = model.intercept / (1.0 - persistence);
    let mut z = vec![mean; p];
    z.reserve(burn_in + t);
    for &u in past.iter().chain(&current) {
        let n = z.len();
        let ar: f64 = model
            .coefficients
            .iter()
            .enumerate()
            .map(|(i, phi)| phi * z[n - 1 - i])
            .sum();
        z.push(model.intercept + ar + model.residual_sd * u);
    }
    z.split_off(p + burn_in)
}

/// Simulates `spec` with the stream seeded by `spec.seed`.
pub fn generate(spec: &SimulationSpec) -> Result<ReturnsSeries> {
    Generator::new(spec)?.generate(&mut RngStream::new(spec.seed))
}

fn expect_model(ok: bool) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidParameter(
            "specification has a different model",
        ))
    }
}

pub fn gen_arfima(spec: &SimulationSpec) -> Result<ReturnsSeries> {
    expect_model(matches!(spec.model, Model::Arfima { .. }))?;
    generate(spec)
}

pub fn gen_lstable(spec: &SimulationSpec) -> Result<ReturnsSeries> {
    expect_model(matches!(spec.model, Model::LStable { .. }))?;
    generate(spec)
}

pub fn gen_iid(spec: &SimulationSpec) -> Result<ReturnsSeries> {
    expect_model(matches!(spec.model, Model::Niid | Model::StudentT { .. }))?;
    generate(spec)
}

pub fn gen_ar_recursive(spec: &SimulationSpec) -> Result<ReturnsSeries> {
    expect_model(matches!(spec.model, Model::ArRecursive { .. }))?;
    generate(spec)
}
