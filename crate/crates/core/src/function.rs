//! Piecewise-linear model of a sampled function.
//!
//! A [`SampledFunction`] is the linear interpolant of its samples, so its
//! derivative is the piecewise-constant [`DerivativeProfile`]. Every integral
//! of the form `∫ H(f') dλ` is then a finite sum over grid cells and is exact
//! for the model; no quadrature error enters at this level.
//!
//! The underlying function is assumed absolutely continuous, which samples
//! cannot certify. The interpolant is the object analyzed. Vertical jumps
//! (repeated abscissas) are rejected rather than given a convention.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Samples `(xs[i], ys[i])` with strictly increasing finite abscissas.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl SampledFunction {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(Error::LengthMismatch {
                xs: xs.len(),
                ys: ys.len(),
            });
        }
        if xs.len() < 2 {
            return Err(Error::TooFewSamples(xs.len()));
        }
        for (i, (x, y)) in xs.iter().zip(&ys).enumerate() {
            if !x.is_finite() || !y.is_finite() {
                return Err(Error::NonFinite(i));
            }
        }
        for i in 1..xs.len() {
            if xs[i] == xs[i - 1] {
                return Err(Error::DuplicateAbscissa(i));
            }
            if xs[i] < xs[i - 1] {
                return Err(Error::NotIncreasing(i));
            }
        }
        Ok(Self { xs, ys })
    }

    /// Samples `f` on a uniform grid of `cells` cells over `[a, b]`.
    pub fn sample_uniform(a: f64, b: f64, cells: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        if cells == 0 {
            return Err(Error::TooFewSamples(1));
        }
        let h = (b - a) / cells as f64;
        let xs: Vec<f64> = (0..=cells)
            .map(|i| if i == cells { b } else { a + i as f64 * h })
            .collect();
        let ys = xs.iter().map(|&x| f(x)).collect();
        Self::new(xs, ys)
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The interval `[a, b]` spanned by the abscissas.
    pub fn interval(&self) -> (f64, f64) {
        (self.xs[0], self.xs[self.xs.len() - 1])
    }

    /// Linear interpolation; `None` outside the sampled interval.
    pub fn eval(&self, x: f64) -> Option<f64> {
        let (a, b) = self.interval();
        if !(a..=b).contains(&x) {
            return None;
        }
        // first index with xs[i] >= x
        let i = self.xs.partition_point(|&v| v < x);
        if self.xs[i] == x {
            return Some(self.ys[i]);
        }
        let (x0, x1) = (self.xs[i - 1], self.xs[i]);
        let (y0, y1) = (self.ys[i - 1], self.ys[i]);
        Some(y0 + (y1 - y0) * ((x - x0) / (x1 - x0)))
    }

    /// Restricts the function to `[a, b]`: keeps grid points strictly inside
    /// and interpolates the two endpoints.
    pub fn restrict(&self, a: f64, b: f64) -> Result<Self> {
        let (lo, hi) = self.interval();
        if !a.is_finite() || a < lo || a >= hi {
            return Err(Error::InvalidParameter {
                name: "interval.a",
                value: a,
                reason: "must lie in [first x, last x)",
            });
        }
        if !b.is_finite() || b <= a || b > hi {
            return Err(Error::InvalidParameter {
                name: "interval.b",
                value: b,
                reason: "must lie in (a, last x]",
            });
        }
        let mut xs = vec![a];
        let mut ys = vec![self.eval(a).expect("a inside interval")];
        for (&x, &y) in self.xs.iter().zip(&self.ys) {
            if x > a && x < b {
                xs.push(x);
                ys.push(y);
            }
        }
        xs.push(b);
        ys.push(self.eval(b).expect("b inside interval"));
        Self::new(xs, ys)
    }

    /// Applies `f` to every ordinate, keeping the grid.
    pub fn map_ordinates(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(self.xs.clone(), self.ys.iter().map(|&y| f(y)).collect())
    }
}

/// A function on `[0, y]` with `g(0) = 0`, obtained from `g0` on `[a, b]` by
/// `g(x) = g0(x + a) - g0(a)`.
#[derive(Debug, Clone, PartialEq)]
pub struct StandardizedFunction {
    inner: SampledFunction,
}

impl StandardizedFunction {
    pub fn inner(&self) -> &SampledFunction {
        &self.inner
    }

    /// Interval length `y = b - a`.
    pub fn length(&self) -> f64 {
        self.inner.interval().1
    }

    /// `g(y)`, the net increment over the interval.
    pub fn end_value(&self) -> f64 {
        self.inner.ys[self.inner.ys.len() - 1]
    }

    /// `β·g`, still standardized.
    pub fn scaled(&self, beta: f64) -> Result<Self> {
        standardize(&self.inner.map_ordinates(|y| beta * y)?)
    }
}

/// Shifts and lifts `f0` so that its domain starts at 0 and `g(0) = 0`.
///
/// Cells map one-to-one. Fails only if shifting the abscissas collapses two
/// of them in floating point.
pub fn standardize(f0: &SampledFunction) -> Result<StandardizedFunction> {
    let a = f0.xs[0];
    let y0 = f0.ys[0];
    let xs = f0.xs.iter().map(|&x| x - a).collect();
    let ys = f0.ys.iter().map(|&y| y - y0).collect();
    Ok(StandardizedFunction {
        inner: SampledFunction::new(xs, ys)?,
    })
}

/// One grid cell of a piecewise-constant derivative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    pub length: f64,
    pub slope: f64,
}

impl Cell {
    /// `length · slope`, the change of the function across the cell.
    pub fn increment(&self) -> f64 {
        self.length * self.slope
    }
}

/// Piecewise-constant derivative: one `(length, slope)` per grid cell.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivativeProfile {
    cells: Vec<Cell>,
}

impl DerivativeProfile {
    pub fn new(cells: Vec<Cell>) -> Result<Self> {
        for (i, c) in cells.iter().enumerate() {
            if !c.slope.is_finite() || !c.length.is_finite() {
                return Err(Error::NonFinite(i));
            }
            if c.length <= 0.0 {
                return Err(Error::InvalidParameter {
                    name: "cell.length",
                    value: c.length,
                    reason: "must be positive",
                });
            }
        }
        Ok(Self { cells })
    }

    /// Difference quotients of any sampled function.
    pub fn of(f: &SampledFunction) -> Self {
        let cells = f
            .xs
            .windows(2)
            .zip(f.ys.windows(2))
            .map(|(x, y)| {
                let length = x[1] - x[0];
                Cell {
                    length,
                    slope: (y[1] - y[0]) / length,
                }
            })
            .collect();
        Self { cells }
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn total_length(&self) -> f64 {
        self.cells.iter().map(|c| c.length).sum()
    }

    /// `Σ lengthᵢ · H(slopeᵢ)`, the exact integral of `H(g')` for the model.
    pub fn integrate(&self, h: &Transform) -> f64 {
        let mut acc = 0.0;
        for c in &self.cells {
            acc += c.length * h.apply(c.slope);
        }
        acc
    }
}

pub fn derivative(g: &StandardizedFunction) -> DerivativeProfile {
    DerivativeProfile::of(&g.inner)
}

pub fn integrate_h(d: &DerivativeProfile, h: &Transform) -> f64 {
    d.integrate(h)
}

/// `‖g‖_y = ∫ |g'| dλ`.
pub fn total_variation(g: &StandardizedFunction) -> f64 {
    derivative(g).integrate(&Transform::Abs)
}

/// A map `H` with `H(0) = 0` and `H ≥ 0`, applied to derivative values.
#[derive(Clone)]
pub enum Transform {
    NegPart,
    PosPart,
    Abs,
    NegPartPow(f64),
    PosPartPow(f64),
    AbsPow(f64),
    Custom(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl Transform {
    fn check_exponent(p: f64) -> Result<f64> {
        if p.is_finite() && p >= 1.0 {
            Ok(p)
        } else {
            Err(Error::InvalidParameter {
                name: "p",
                value: p,
                reason: "exponent must be a finite real >= 1",
            })
        }
    }

    pub fn neg_part_pow(p: f64) -> Result<Self> {
        Self::check_exponent(p).map(Transform::NegPartPow)
    }

    pub fn pos_part_pow(p: f64) -> Result<Self> {
        Self::check_exponent(p).map(Transform::PosPartPow)
    }

    pub fn abs_pow(p: f64) -> Result<Self> {
        Self::check_exponent(p).map(Transform::AbsPow)
    }

    /// Wraps a user map. Only `H(0) = 0` can be checked up front; negative
    /// outputs elsewhere are the caller's responsibility.
    pub fn custom(h: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Result<Self> {
        let at_zero = h(0.0);
        if at_zero != 0.0 {
            return Err(Error::InvalidParameter {
                name: "H(0)",
                value: at_zero,
                reason: "transform must vanish at zero",
            });
        }
        Ok(Transform::Custom(Arc::new(h)))
    }

    pub fn apply(&self, x: f64) -> f64 {
        match self {
            Transform::NegPart => neg_part(x),
            Transform::PosPart => pos_part(x),
            Transform::Abs => x.abs(),
            Transform::NegPartPow(p) => power(neg_part(x), *p),
            Transform::PosPartPow(p) => power(pos_part(x), *p),
            Transform::AbsPow(p) => power(x.abs(), *p),
            Transform::Custom(h) => h(x),
        }
    }
}

impl fmt::Debug for Transform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Transform::NegPart => write!(f, "NegPart"),
            Transform::PosPart => write!(f, "PosPart"),
            Transform::Abs => write!(f, "Abs"),
            Transform::NegPartPow(p) => write!(f, "NegPartPow({p})"),
            Transform::PosPartPow(p) => write!(f, "PosPartPow({p})"),
            Transform::AbsPow(p) => write!(f, "AbsPow({p})"),
            Transform::Custom(_) => write!(f, "Custom(..)"),
        }
    }
}

/// `x⁻ = max(−x, 0)`.
pub fn neg_part(x: f64) -> f64 {
    if x < 0.0 {
        -x
    } else {
        0.0
    }
}

/// `x⁺ = max(x, 0)`.
pub fn pos_part(x: f64) -> f64 {
    if x > 0.0 {
        x
    } else {
        0.0
    }
}

fn power(base: f64, p: f64) -> f64 {
    if p == 1.0 {
        base
    } else {
        base.powf(p)
    }
}
