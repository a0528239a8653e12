//! Estimator tags and uniform dispatch.

use core::fmt;
use core::str::FromStr;

use crate::scaling::{estimate_fa, estimate_rra, QGrid};
use crate::spectral_tail::{estimate_gph, estimate_robinson, estimate_tail, TailMethod};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Rra,
    Fa1,
    Fa2,
    Fa3,
    /// Fluctuation analysis on a user-supplied moment grid. Only produced by
    /// `estimate_fa` and cannot be dispatched through [`Method::estimate`].
    FaCustom,
    Gph,
    Robinson,
    Pickands,
    Hill,
    Hr,
}

/// Result of one estimator run, in the shape the CLI reports it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MethodOutput {
    /// `H` for scaling and tail methods, `d` for log-periodogram methods.
    pub value: f64,
    /// Regression intercept. For fluctuation analysis this is `a(q)` at the
    /// smallest moment; tail estimators have none.
    pub intercept: Option<f64>,
    pub n_points: usize,
}

impl Method {
    pub const ALL: [Method; 9] = [
        Method::Rra,
        Method::Fa1,
        Method::Fa2,
        Method::Fa3,
        Method::Gph,
        Method::Robinson,
        Method::Pickands,
        Method::Hill,
        Method::Hr,
    ];

    pub fn fa_for(qs: &QGrid) -> Self {
        [
            (QGrid::fa1(), Method::Fa1),
            (QGrid::fa2(), Method::Fa2),
            (QGrid::fa3(), Method::Fa3),
        ]
        .into_iter()
        .find(|(g, _)| g.values == qs.values)
        .map_or(Method::FaCustom, |(_, m)| m)
    }

    pub fn name(self) -> &'static str {
        match self {
            Method::Rra => "rra",
            Method::Fa1 => "fa1",
            Method::Fa2 => "fa2",
            Method::Fa3 => "fa3",
            Method::FaCustom => "fa",
            Method::Gph => "gph",
            Method::Robinson => "robinson",
            Method::Pickands => "pickands",
            Method::Hill => "hill",
            Method::Hr => "hr",
        }
    }

    /// Whether the output is a fractional integration order rather than `H`.
    pub fn estimates_d(self) -> bool {
        matches!(self, Method::Gph | Method::Robinson)
    }

    pub fn run(self, r: &[f64]) -> Result<MethodOutput> {
        let scaling = |est: crate::HurstEstimate| MethodOutput {
            value: est.h,
            intercept: est.intercepts.first().copied(),
            n_points: est.n_points,
        };
        let spectral = |est: crate::DEstimate| MethodOutput {
            value: est.d,
            intercept: Some(est.intercept),
            n_points: est.m,
        };
        Ok(match self {
            Method::Rra => scaling(estimate_rra(r)?),
            Method::Fa1 => scaling(estimate_fa(r, &QGrid::fa1())?),
            Method::Fa2 => scaling(estimate_fa(r, &QGrid::fa2())?),
            Method::Fa3 => scaling(estimate_fa(r, &QGrid::fa3())?),
            Method::FaCustom => {
                return Err(Error::InvalidParameter(
                    "custom moment grids need estimate_fa",
                ))
            }
            Method::Gph => spectral(estimate_gph(r)?),
            Method::Robinson => spectral(estimate_robinson(r)?),
            Method::Pickands => scaling(estimate_tail(r, TailMethod::Pickands)?),
            Method::Hill => scaling(estimate_tail(r, TailMethod::Hill)?),
            Method::Hr => scaling(estimate_tail(r, TailMethod::Hr)?),
        })
    }

    pub fn estimate(self, r: &[f64]) -> Result<f64> {
        self.run(r).map(|o| o.value)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        Method::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s))
            .ok_or(Error::InvalidParameter("unknown method"))
    }
}
