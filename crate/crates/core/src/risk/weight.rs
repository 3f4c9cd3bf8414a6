//! Weight functions `w : [0,1] → [0,∞)` for weighted premiums.

use std::fmt;

use crate::error::{Error, Result};
use crate::function::SampledFunction;

/// Catalog weights and user-sampled ones.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightSpec {
    /// `1{t > p}`, `p ∈ (0,1)`; gives the average value at risk.
    Indicator { p: f64 },
    /// `ν(1 − t)^{ν−1}`, `ν > 0`; non-decreasing iff `ν ≤ 1`.
    ProportionalHazards { nu: f64 },
    /// `t^λ`, `λ > 0`.
    SizeBiased { lambda: f64 },
    /// `e^{λt}`, `λ > 0`.
    Esscher { lambda: f64 },
    /// `1 − e^{−λt}`, `λ > 0`.
    Kamps { lambda: f64 },
    /// Linear interpolant of non-negative samples on exactly `[0, 1]`.
    Sampled(SampledFunction),
}

/// Catalog names accepted by [`WeightSpec::from_name`].
pub const CATALOG: [&str; 5] = [
    "indicator",
    "proportional_hazards",
    "size_biased",
    "esscher",
    "kamps",
];

fn positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be a finite positive real",
        })
    }
}

impl WeightSpec {
    pub fn indicator(p: f64) -> Result<Self> {
        if p > 0.0 && p < 1.0 {
            Ok(Self::Indicator { p })
        } else {
            Err(Error::InvalidParameter {
                name: "p",
                value: p,
                reason: "indicator threshold must lie in (0, 1)",
            })
        }
    }

    pub fn proportional_hazards(nu: f64) -> Result<Self> {
        positive("nu", nu).map(|nu| Self::ProportionalHazards { nu })
    }

    pub fn size_biased(lambda: f64) -> Result<Self> {
        positive("lambda", lambda).map(|lambda| Self::SizeBiased { lambda })
    }

    pub fn esscher(lambda: f64) -> Result<Self> {
        positive("lambda", lambda).map(|lambda| Self::Esscher { lambda })
    }

    pub fn kamps(lambda: f64) -> Result<Self> {
        positive("lambda", lambda).map(|lambda| Self::Kamps { lambda })
    }

    pub fn sampled(w: SampledFunction) -> Result<Self> {
        let (a, b) = w.interval();
        if a != 0.0 || b != 1.0 {
            return Err(Error::InvalidParameter {
                name: "weight.domain",
                value: if a != 0.0 { a } else { b },
                reason: "sampled weight must span exactly [0, 1]",
            });
        }
        if let Some(&bad) = w.ys().iter().find(|&&y| y < 0.0) {
            return Err(Error::InvalidParameter {
                name: "weight.value",
                value: bad,
                reason: "weights must be non-negative",
            });
        }
        Ok(Self::Sampled(w))
    }

    /// Looks up a catalog weight by name. Returns `None` for unknown names.
    pub fn from_name(name: &str, param: f64) -> Option<Result<Self>> {
        Some(match name {
            "indicator" => Self::indicator(param),
            "proportional_hazards" => Self::proportional_hazards(param),
            "size_biased" => Self::size_biased(param),
            "esscher" => Self::esscher(param),
            "kamps" => Self::kamps(param),
            _ => return None,
        })
    }

    pub fn eval(&self, t: f64) -> f64 {
        match *self {
            Self::Indicator { p } => {
                if t > p {
                    1.0
                } else {
                    0.0
                }
            }
            Self::ProportionalHazards { nu } => nu * (1.0 - t).powf(nu - 1.0),
            Self::SizeBiased { lambda } => t.powf(lambda),
            Self::Esscher { lambda } => (lambda * t).exp(),
            Self::Kamps { lambda } => -(-lambda * t).exp_m1(),
            Self::Sampled(ref w) => w.eval(t).unwrap_or(0.0),
        }
    }

    /// `∫_a^b w(t) dt` for `0 ≤ a ≤ b ≤ 1`, in closed form (exact for the
    /// linear interpolant in the sampled case).
    pub fn integral(&self, a: f64, b: f64) -> f64 {
        if b <= a {
            return 0.0;
        }
        match *self {
            Self::Indicator { p } => (b - a.max(p)).max(0.0),
            Self::ProportionalHazards { nu } => (1.0 - a).powf(nu) - (1.0 - b).powf(nu),
            Self::SizeBiased { lambda } => {
                let e = lambda + 1.0;
                (b.powf(e) - a.powf(e)) / e
            }
            Self::Esscher { lambda } => (lambda * a).exp() * (lambda * (b - a)).exp_m1() / lambda,
            Self::Kamps { lambda } => {
                let h = b - a;
                let decay = (-lambda * a).exp();
                h * (-(-lambda * a).exp_m1() + decay * kamps_phi(lambda * h))
            }
            Self::Sampled(ref w) => piecewise_linear_integral(w, a, b),
        }
    }

    /// Sign of `w'` when it is constant on `(0,1)`: `Some(1)` non-decreasing,
    /// `Some(-1)` non-increasing, `Some(0)` constant. `None` for sampled weights.
    pub fn monotone_direction(&self) -> Option<i8> {
        match *self {
            Self::Indicator { .. } | Self::SizeBiased { .. } | Self::Esscher { .. } | Self::Kamps { .. } => Some(1),
            Self::ProportionalHazards { nu } => Some(if nu < 1.0 {
                1
            } else if nu > 1.0 {
                -1
            } else {
                0
            }),
            Self::Sampled(_) => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Indicator { .. } => "indicator",
            Self::ProportionalHazards { .. } => "proportional_hazards",
            Self::SizeBiased { .. } => "size_biased",
            Self::Esscher { .. } => "esscher",
            Self::Kamps { .. } => "kamps",
            Self::Sampled(_) => "sampled",
        }
    }

    pub fn param(&self) -> Option<f64> {
        match *self {
            Self::Indicator { p } => Some(p),
            Self::ProportionalHazards { nu } => Some(nu),
            Self::SizeBiased { lambda } | Self::Esscher { lambda } | Self::Kamps { lambda } => Some(lambda),
            Self::Sampled(_) => None,
        }
    }
}

impl fmt::Display for WeightSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.param() {
            Some(p) => write!(f, "{}({p})", self.name()),
            None => write!(f, "{}", self.name()),
        }
    }
}

/// `1 − (1 − e^{−u})/u`, stable for small `u`.
fn kamps_phi(u: f64) -> f64 {
    if u < 1e-3 {
        u * (0.5 - u * (1.0 / 6.0 - u * (1.0 / 24.0 - u / 120.0)))
    } else {
        (u + (-u).exp_m1()) / u
    }
}

/// Exact integral of the linear interpolant of `w` over `[a, b]`.
pub(crate) fn piecewise_linear_integral(w: &SampledFunction, a: f64, b: f64) -> f64 {
    let (xs, ys) = (w.xs(), w.ys());
    let (lo, hi) = w.interval();
    let (a, b) = (a.max(lo), b.min(hi));
    if b <= a {
        return 0.0;
    }
    let mut i = xs.partition_point(|&x| x <= a).saturating_sub(1);
    let mut acc = 0.0;
    while i + 1 < xs.len() && xs[i] < b {
        let (x0, x1) = (xs[i], xs[i + 1]);
        let l = a.max(x0);
        let r = b.min(x1);
        if r > l {
            let slope = (ys[i + 1] - ys[i]) / (x1 - x0);
            let fl = ys[i] + slope * (l - x0);
            let fr = ys[i] + slope * (r - x0);
            acc += 0.5 * (r - l) * (fl + fr);
        }
        i += 1;
    }
    acc
}
