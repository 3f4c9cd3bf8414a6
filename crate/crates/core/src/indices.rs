//! Indices of lack of increase, decrease and monotonicity.
//!
//! The distance (in total variation of the derivative) from `g` to the
//! non-decreasing functions is attained at the function whose derivative is
//! `(g')⁺`, so `LOI = ∫ (g')⁻ dλ` and symmetrically `LOD = ∫ (g')⁺ dλ`.
//! `LOM = 2·min(LOI, LOD)`. Normalized variants divide by the total variation.

use crate::error::{Error, Result};
use crate::function::{derivative, standardize, SampledFunction, StandardizedFunction, Transform};
use crate::tolerance;

/// Lack of increase, `∫ (g')⁻ dλ`.
pub fn loi(g: &StandardizedFunction) -> f64 {
    derivative(g).integrate(&Transform::NegPart)
}

/// Lack of decrease, `∫ (g')⁺ dλ`.
pub fn lod(g: &StandardizedFunction) -> f64 {
    derivative(g).integrate(&Transform::PosPart)
}

/// Lack of monotonicity, `2·min(LOI, LOD)`.
pub fn lom(g: &StandardizedFunction) -> f64 {
    2.0 * loi(g).min(lod(g))
}

/// `L_p` lack of increase, `(∫ ((g')⁻)ᵖ dλ)^{1/p}` for `p ≥ 1`.
pub fn loi_p(g: &StandardizedFunction, p: f64) -> Result<f64> {
    let h = Transform::neg_part_pow(p)?;
    Ok(root(derivative(g).integrate(&h), p))
}

/// `L_p` lack of decrease, `(∫ ((g')⁺)ᵖ dλ)^{1/p}` for `p ≥ 1`.
pub fn lod_p(g: &StandardizedFunction, p: f64) -> Result<f64> {
    let h = Transform::pos_part_pow(p)?;
    Ok(root(derivative(g).integrate(&h), p))
}

fn root(v: f64, p: f64) -> f64 {
    if p == 1.0 {
        v
    } else {
        v.powf(p.recip())
    }
}

/// Raw indices plus the two totals the normalized forms need.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Totals {
    loi: f64,
    lod: f64,
    tv: f64,
    /// `Σ lengthᵢ·slopeᵢ`, i.e. `g(y)` on the model.
    net: f64,
}

impl Totals {
    fn of(g: &StandardizedFunction) -> Self {
        let d = derivative(g);
        let net = d.cells().iter().map(|c| c.increment()).sum();
        Self {
            loi: d.integrate(&Transform::NegPart),
            lod: d.integrate(&Transform::PosPart),
            tv: d.integrate(&Transform::Abs),
            net,
        }
    }

    fn normalized(&self) -> Result<Normalized> {
        if self.tv == 0.0 {
            return Err(Error::UndefinedIndex);
        }
        let loi = self.loi / self.tv;
        let lod = self.lod / self.tv;
        let lom = 2.0 * loi.min(lod);
        debug_assert!(
            tolerance::approx_eq(lom, 1.0 - self.net.abs() / self.tv, 1.0),
            "LOM* closed form disagrees: 2·min = {lom}, 1 − |g(y)|/tv = {}",
            1.0 - self.net.abs() / self.tv
        );
        Ok(Normalized { loi, lod, lom })
    }
}

/// Normalized indices, each in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Normalized {
    pub loi: f64,
    pub lod: f64,
    pub lom: f64,
}

/// All three normalized indices; fails when `g` has zero total variation.
pub fn normalized(g: &StandardizedFunction) -> Result<Normalized> {
    Totals::of(g).normalized()
}

pub fn loi_norm(g: &StandardizedFunction) -> Result<f64> {
    normalized(g).map(|n| n.loi)
}

pub fn lod_norm(g: &StandardizedFunction) -> Result<f64> {
    normalized(g).map(|n| n.lod)
}

pub fn lom_norm(g: &StandardizedFunction) -> Result<f64> {
    normalized(g).map(|n| n.lom)
}

/// `LOM* = 1 − |g(y)| / ‖g‖_y`, the closed form of `2·min(LOI*, LOD*)`.
pub fn lom_norm_closed_form(g: &StandardizedFunction) -> Result<f64> {
    let t = Totals::of(g);
    if t.tv == 0.0 {
        return Err(Error::UndefinedIndex);
    }
    Ok(1.0 - t.net.abs() / t.tv)
}

/// `L_p` indices carried by a report when an exponent was requested.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LpIndices {
    pub p: f64,
    pub loi: f64,
    pub lod: f64,
}

/// Every index for a function on its original interval `[a, b]`.
///
/// Interval-form indices are the same numbers as those of the standardized
/// function; `interval` is metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct MonotonicityReport {
    pub interval: (f64, f64),
    pub loi: f64,
    pub lod: f64,
    pub lom: f64,
    pub tv: f64,
    /// `None` when `tv == 0`.
    pub normalized: Option<Normalized>,
    pub lp: Option<LpIndices>,
}

impl MonotonicityReport {
    pub fn loi_norm(&self) -> Option<f64> {
        self.normalized.map(|n| n.loi)
    }

    pub fn lod_norm(&self) -> Option<f64> {
        self.normalized.map(|n| n.lod)
    }

    pub fn lom_norm(&self) -> Option<f64> {
        self.normalized.map(|n| n.lom)
    }
}

pub fn report(f0: &SampledFunction, p: Option<f64>) -> Result<MonotonicityReport> {
    let g = standardize(f0)?;
    let t = Totals::of(&g);
    let lp = match p {
        Some(p) => Some(LpIndices {
            p,
            loi: loi_p(&g, p)?,
            lod: lod_p(&g, p)?,
        }),
        None => None,
    };
    Ok(MonotonicityReport {
        interval: f0.interval(),
        loi: t.loi,
        lod: t.lod,
        lom: 2.0 * t.loi.min(t.lod),
        tv: t.tv,
        normalized: t.normalized().ok(),
        lp,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    const N: usize = 100_000;

    fn std_fn(xs: &[f64], ys: &[f64]) -> StandardizedFunction {
        standardize(&SampledFunction::new(xs.to_vec(), ys.to_vec()).unwrap()).unwrap()
    }

    fn on_three_halves_pi(f: fn(f64) -> f64) -> StandardizedFunction {
        standardize(&SampledFunction::sample_uniform(0.0, 1.5 * PI, N, f).unwrap()).unwrap()
    }

    fn one_minus_cos(x: f64) -> f64 {
        1.0 - x.cos()
    }

    #[test]
    fn raw_indices_of_example_functions() {
        let g = on_three_halves_pi(one_minus_cos);
        assert!((loi(&g) - 1.0).abs() < 1e-3);
        assert!((lod(&g) - 2.0).abs() < 1e-3);
        assert!((lom(&g) - 2.0).abs() < 2e-3);

        let h = on_three_halves_pi(f64::sin);
        assert!((loi(&h) - 2.0).abs() < 1e-3);
    }

    #[test]
    fn raw_indices_trivial_cases() {
        let id = std_fn(&[0.0, 1.0], &[0.0, 1.0]);
        assert_eq!((loi(&id), lom(&id)), (0.0, 0.0));
        let neg = std_fn(&[0.0, 1.0], &[0.0, -1.0]);
        assert_eq!(lod(&neg), 0.0);
        let tent = std_fn(&[0.0, 1.0, 2.0], &[0.0, 1.0, 0.0]);
        assert_eq!((loi(&tent), lod(&tent), lom(&tent)), (1.0, 1.0, 2.0));
    }

    #[test]
    fn normalized_example_values() {
        let g = on_three_halves_pi(one_minus_cos);
        let n = normalized(&g).unwrap();
        assert!((n.loi - 1.0 / 3.0).abs() < 1e-3);
        assert!((n.lod - 2.0 / 3.0).abs() < 1e-3);
        assert!((n.lom - 2.0 / 3.0).abs() < 1e-3);
        assert!((lom_norm_closed_form(&g).unwrap() - n.lom).abs() < 1e-12);

        let h = on_three_halves_pi(f64::sin);
        assert!((loi_norm(&h).unwrap() - 2.0 / 3.0).abs() < 1e-3);

        let id = std_fn(&[0.0, 1.0], &[0.0, 1.0]);
        let n = normalized(&id).unwrap();
        assert_eq!((n.loi, n.lod, n.lom), (0.0, 1.0, 0.0));
    }

    #[test]
    fn normalized_undefined_for_constant() {
        let c = std_fn(&[0.0, 1.0, 2.0], &[2.0, 2.0, 2.0]);
        assert_eq!(loi_norm(&c), Err(Error::UndefinedIndex));
        assert_eq!(lod_norm(&c), Err(Error::UndefinedIndex));
        assert_eq!(lom_norm(&c), Err(Error::UndefinedIndex));
        assert_eq!(lom_norm_closed_form(&c), Err(Error::UndefinedIndex));
    }

    #[test]
    fn lp_index() {
        let tent = std_fn(&[0.0, 0.5, 2.0, 3.0], &[0.0, 1.0, -2.0, 0.0]);
        assert_eq!(loi_p(&tent, 1.0).unwrap(), loi(&tent));
        assert!(loi_p(&tent, 0.99).is_err());
        let id = std_fn(&[0.0, 1.0], &[0.0, 1.0]);
        assert_eq!(loi_p(&id, 3.5).unwrap(), 0.0);

        // ∫_π^{3π/2} sin² = π/4
        let g = on_three_halves_pi(one_minus_cos);
        let v = loi_p(&g, 2.0).unwrap();
        assert!((v - (PI / 4.0).sqrt()).abs() < 1e-3, "{v}");
    }

    #[test]
    fn report_sine_and_cosine() {
        let s = SampledFunction::sample_uniform(-PI / 2.0, PI, N, f64::sin).unwrap();
        let r = report(&s, Some(2.0)).unwrap();
        assert!((r.loi - 1.0).abs() < 1e-3);
        assert!((r.lod - 2.0).abs() < 1e-3);
        assert!((r.lom - 2.0).abs() < 1e-3);
        assert!((r.tv - 3.0).abs() < 1e-3);
        assert_eq!(r.interval, (-PI / 2.0, PI));
        assert!(r.lp.is_some());

        let c = SampledFunction::sample_uniform(-PI / 2.0, PI, N, f64::cos).unwrap();
        let r = report(&c, None).unwrap();
        assert!((r.loi - 2.0).abs() < 1e-3);
        assert!((r.lod - 1.0).abs() < 1e-3);
        assert!((r.lom - 2.0).abs() < 1e-3);
    }

    #[test]
    fn report_constant() {
        let c = SampledFunction::new(vec![0.0, 1.0], vec![4.0, 4.0]).unwrap();
        let r = report(&c, None).unwrap();
        assert_eq!((r.loi, r.lod, r.lom, r.tv), (0.0, 0.0, 0.0, 0.0));
        assert!(r.normalized.is_none());
        assert!(report(&c, Some(0.5)).is_err());
    }
}
