//! Simulation and estimation of self-affine financial return series.
//!
//! The crate covers four layers:
//!
//! - [`timeseries`]: price/return containers, moments, the reorder and
//!   normal-score transforms, and autoregressive fitting and filtering.
//! - [`simulate`]: seedable generators for NIID, ARFIMA(0,d,0), L-stable,
//!   Student-t and autoregressive series.
//! - [`scaling`] and [`spectral_tail`]: rescaled range analysis, fluctuation
//!   analysis, the GPH and Robinson log-periodogram regressions, and the
//!   Pickands, Hill and de Haan-Resnick tail estimators.
//! - [`montecarlo`] and [`analysis`]: replication engine, critical values,
//!   power, and the filtered/unfiltered testing battery for an observed
//!   price series.
//!
//! The crate is `no_std` (with `alloc`) when the default `std` feature is
//! disabled. Without `std`, FFT-based convolution and periodograms fall back
//! to direct evaluation.

#![cfg_attr(not(feature = "std"), no_std)]
// `!(x > 0.0)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod analysis;
mod error;
pub mod method;
pub mod montecarlo;
pub mod normal;
pub mod regression;
pub mod rng;
pub mod scaling;
pub mod simulate;
pub mod spectral_tail;
pub mod timeseries;

pub use error::{Error, Result};
pub use method::Method;
pub use rng::RngStream;
pub use scaling::{HurstEstimate, QGrid, ScaleGrid};
pub use simulate::{Model, SimulationSpec};
pub use spectral_tail::{DEstimate, Periodogram, TailMethod};
pub use timeseries::{
    ArModel, LogPricePath, OrderCriterion, PriceSeries, ReturnsSeries, SummaryStats,
};
