//! Weighted premiums of an empirical loss distribution, the covariance
//! loading condition, and gain–loss style ratios.
//!
//! The empirical quantile `F⁻¹(p) = x₍⌈np⌉₎` is constant on each block
//! `((i−1)/n, i/n]`, so every integral `∫ F⁻¹ w` reduces to block integrals
//! of `w`, which are closed-form for catalog weights.
//!
//! Internally sample values are measured from the sample minimum. Premiums
//! and covariances are shift-equivariant/invariant, and a constant sample
//! then yields a covariance of exactly zero.

mod weight;

pub use weight::{WeightSpec, CATALOG};

use crate::error::{Error, Result};
use crate::function::SampledFunction;

/// Sorted sample `x₍₁₎ ≤ … ≤ x₍ₙ₎`.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalDistribution {
    sorted: Vec<f64>,
    /// `prefix[k] = Σ_{j<k} (x₍ⱼ₊₁₎ − x₍₁₎)`
    prefix: Vec<f64>,
}

impl EmpiricalDistribution {
    pub fn new(mut samples: Vec<f64>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::EmptySample);
        }
        if let Some(i) = samples.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        samples.sort_by(f64::total_cmp);
        let min = samples[0];
        let mut prefix = Vec::with_capacity(samples.len() + 1);
        prefix.push(0.0);
        let mut acc = 0.0;
        for &x in &samples {
            acc += x - min;
            prefix.push(acc);
        }
        Ok(Self { sorted: samples, prefix })
    }

    pub fn values(&self) -> &[f64] {
        &self.sorted
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn min(&self) -> f64 {
        self.sorted[0]
    }

    pub fn range(&self) -> f64 {
        self.sorted[self.sorted.len() - 1] - self.sorted[0]
    }

    fn n(&self) -> f64 {
        self.sorted.len() as f64
    }

    /// Mean deviation from the minimum, `∫₀¹ (F⁻¹ − x₍₁₎) dλ`.
    fn mean_deviation(&self) -> f64 {
        self.prefix[self.sorted.len()] / self.n()
    }

    /// Net premium `E[X] = ∫₀¹ F⁻¹ dλ`.
    pub fn mean(&self) -> f64 {
        self.min() + self.mean_deviation()
    }

    /// `F⁻¹(p) = inf{x : F(x) ≥ p} = x₍⌈np⌉₎` for `p ∈ (0, 1]`.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p <= 1.0) {
            return Err(Error::InvalidParameter {
                name: "p",
                value: p,
                reason: "quantile level must lie in (0, 1]",
            });
        }
        let k = (self.n() * p).ceil() as usize;
        Ok(self.sorted[k.clamp(1, self.sorted.len()) - 1])
    }

    fn block_edge(&self, k: usize) -> f64 {
        if k == self.sorted.len() {
            1.0
        } else {
            k as f64 / self.n()
        }
    }

    /// `(Σ dᵢ·wᵢ, Σ wᵢ)` where `wᵢ = ∫_{block i} w` and `dᵢ = x₍ᵢ₎ − x₍₁₎`.
    fn weighted_sums(&self, w: &WeightSpec) -> Result<(f64, f64)> {
        let mut dw = 0.0;
        let mut total = 0.0;
        let min = self.min();
        for (i, &x) in self.sorted.iter().enumerate() {
            let wi = w.integral(self.block_edge(i), self.block_edge(i + 1));
            dw += (x - min) * wi;
            total += wi;
        }
        if !total.is_finite() || !dw.is_finite() {
            return Err(Error::DegenerateWeight(total));
        }
        Ok((dw, total))
    }

    /// `v(t) = cov[F⁻¹(U), 1{U > t}] = t·∫₀¹F⁻¹ − ∫₀ᵗF⁻¹`, exact.
    pub fn v(&self, t: f64) -> f64 {
        let t = t.clamp(0.0, 1.0);
        let n = self.sorted.len();
        let scaled = t * self.n();
        let k = (scaled.floor() as usize).min(n);
        let head = if k == n {
            self.prefix[n]
        } else {
            self.prefix[k] + (self.sorted[k] - self.min()) * (scaled - k as f64)
        };
        t * self.mean_deviation() - head / self.n()
    }

    /// `∫_a^b v dλ`, exact: `v` is linear between block edges.
    pub fn v_integral(&self, a: f64, b: f64) -> f64 {
        if b <= a {
            return 0.0;
        }
        let mut k = (a * self.n()).floor() as usize + 1;
        let mut prev_t = a;
        let mut prev_v = self.v(a);
        let mut acc = 0.0;
        loop {
            let t = if k >= self.sorted.len() {
                b
            } else {
                self.block_edge(k).min(b)
            };
            if t > prev_t {
                let v = self.v(t);
                acc += 0.5 * (t - prev_t) * (prev_v + v);
                prev_t = t;
                prev_v = v;
            }
            if t >= b {
                break;
            }
            k += 1;
        }
        acc
    }
}

pub fn quantile(ed: &EmpiricalDistribution, p: f64) -> Result<f64> {
    ed.quantile(p)
}

/// Weighted premium `∫₀¹ F⁻¹ w / ∫₀¹ w`, exact per quantile block.
pub fn premium(ed: &EmpiricalDistribution, w: &WeightSpec) -> Result<f64> {
    let (dw, total) = ed.weighted_sums(w)?;
    if total <= 0.0 {
        return Err(Error::DegenerateWeight(total));
    }
    Ok(ed.min() + dw / total)
}

/// `cov[F⁻¹(U), w(U)] = ∫F⁻¹w − ∫F⁻¹·∫w`. Non-negative exactly when the
/// premium carries non-negative loading.
pub fn loading_covariance(ed: &EmpiricalDistribution, w: &WeightSpec) -> Result<f64> {
    let (dw, total) = ed.weighted_sums(w)?;
    Ok(dw - ed.mean_deviation() * total)
}

/// `v` sampled on a uniform grid of `quad_n` cells, and `θ = ∫₀¹ v` for that
/// piecewise-linear model.
pub fn v_theta(ed: &EmpiricalDistribution, quad_n: usize) -> Result<(SampledFunction, f64)> {
    if quad_n == 0 {
        return Err(Error::InvalidParameter {
            name: "quad_n",
            value: 0.0,
            reason: "grid needs at least one cell",
        });
    }
    let f = SampledFunction::sample_uniform(0.0, 1.0, quad_n, |t| ed.v(t))?;
    debug_assert!(
        f.ys().iter().all(|&v| v >= -1e-12 * ed.range().max(ed.min().abs()).max(1.0)),
        "v(t) must be non-negative"
    );
    let theta = f
        .xs()
        .windows(2)
        .zip(f.ys().windows(2))
        .map(|(x, y)| 0.5 * (x[1] - x[0]) * (y[0] + y[1]))
        .sum();
    Ok((f, theta))
}

/// Positive and negative mass of `g` and the two ratios built from them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GainLoss {
    /// `∫ g⁺ dλ`
    pub gain: f64,
    /// `∫ g⁻ dλ`
    pub loss: f64,
    /// `∫ g⁺ / ∫ g⁻`; `+∞` when there is no loss.
    pub glr: f64,
    /// `∫ g⁺ / ∫ |g|`, in `[0, 1]`.
    pub omega_style: f64,
}

impl GainLoss {
    /// `∫ g dλ = gain − loss`.
    pub fn net(&self) -> f64 {
        self.gain - self.loss
    }

    /// Builds the ratios so that `gain ≥ loss ⟺ glr ≥ 1 ⟺ omega ≥ 1/2`
    /// holds exactly in floating point.
    pub fn from_parts(gain: f64, loss: f64) -> Result<Self> {
        if gain + loss == 0.0 {
            return Err(Error::UndefinedRatio);
        }
        let glr = if loss == 0.0 { f64::INFINITY } else { gain / loss };
        let mut omega_style = gain / (gain + loss);
        // rounding of gain + loss can land exactly on 1/2 when gain < loss
        if gain < loss && omega_style >= 0.5 {
            omega_style = 0.5f64.next_down();
        }
        Ok(Self {
            gain,
            loss,
            glr,
            omega_style,
        })
    }
}

/// Gain–loss and Omega-style ratios of the values of `g` on a subinterval of
/// `[0, 1]`, exact for the linear interpolant (cells crossing zero are split
/// at the root).
pub fn gain_loss(g: &SampledFunction) -> Result<GainLoss> {
    let (a, b) = g.interval();
    if a < 0.0 || b > 1.0 {
        return Err(Error::InvalidParameter {
            name: "g.domain",
            value: if a < 0.0 { a } else { b },
            reason: "function must be defined within [0, 1]",
        });
    }
    let mut gain = 0.0;
    let mut loss = 0.0;
    for (x, y) in g.xs().windows(2).zip(g.ys().windows(2)) {
        let h = x[1] - x[0];
        let (y0, y1) = (y[0], y[1]);
        if y0 >= 0.0 && y1 >= 0.0 {
            gain += 0.5 * h * (y0 + y1);
        } else if y0 <= 0.0 && y1 <= 0.0 {
            loss -= 0.5 * h * (y0 + y1);
        } else {
            let root = y0 / (y0 - y1);
            let (left, right) = (0.5 * h * root * y0.abs(), 0.5 * h * (1.0 - root) * y1.abs());
            if y0 > 0.0 {
                gain += left;
                loss += right;
            } else {
                loss += left;
                gain += right;
            }
        }
    }
    GainLoss::from_parts(gain, loss)
}

/// Everything needed to judge the loading of `π_w` on a sample.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadingReport {
    pub premium: f64,
    pub net_premium: f64,
    pub covariance: f64,
    pub loading_nonneg: bool,
    /// `θ = ∫₀¹ v dλ` on the `quad_n` grid.
    pub theta: f64,
    /// Ratios of `g = w′∘V⁻¹`; `None` when `∫|g| = 0`.
    pub gain_loss: Option<GainLoss>,
}

/// Loading tolerance: `−1e−9 · (sample range)`.
pub fn loading_tolerance(ed: &EmpiricalDistribution) -> f64 {
    1e-9 * ed.range()
}

/// Splits `θ∫g dλ = ∫₀¹ v dw` into its gain and loss parts.
///
/// With `V` the distribution of density `v/θ`, `∫ h∘V⁻¹ dλ = θ⁻¹∫ h v dλ`, so
/// the parts of `g = w′∘V⁻¹` follow from `v` and the sign of `w′` without
/// inverting `V`. `θ` cancels in both ratios and is left out.
pub fn weighted_gain_loss_parts(ed: &EmpiricalDistribution, w: &WeightSpec) -> Result<(f64, f64)> {
    Ok(match w {
        WeightSpec::Indicator { p } => (ed.v(*p), 0.0),
        WeightSpec::Sampled(f) => {
            let mut gain = 0.0;
            let mut loss = 0.0;
            for (x, y) in f.xs().windows(2).zip(f.ys().windows(2)) {
                let slope = (y[1] - y[0]) / (x[1] - x[0]);
                let mass = slope * ed.v_integral(x[0], x[1]);
                if mass > 0.0 {
                    gain += mass;
                } else {
                    loss -= mass;
                }
            }
            (gain, loss)
        }
        other => {
            let cov = loading_covariance(ed, other)?;
            match other.monotone_direction() {
                Some(1) => (cov.max(0.0), 0.0),
                Some(-1) => (0.0, (-cov).max(0.0)),
                _ => (0.0, 0.0),
            }
        }
    })
}

pub fn loading_report(ed: &EmpiricalDistribution, w: &WeightSpec, quad_n: usize) -> Result<LoadingReport> {
    let premium = premium(ed, w)?;
    let covariance = loading_covariance(ed, w)?;
    let (_, theta) = v_theta(ed, quad_n)?;
    let (gain, loss) = weighted_gain_loss_parts(ed, w)?;
    Ok(LoadingReport {
        premium,
        net_premium: ed.mean(),
        covariance,
        loading_nonneg: covariance >= -loading_tolerance(ed),
        theta,
        gain_loss: GainLoss::from_parts(gain, loss).ok(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_to_four() -> EmpiricalDistribution {
        EmpiricalDistribution::new(vec![3.0, 1.0, 4.0, 2.0]).unwrap()
    }

    #[test]
    fn quantiles() {
        let ed = one_to_four();
        assert_eq!(ed.quantile(0.5).unwrap(), 2.0);
        assert_eq!(ed.quantile(0.51).unwrap(), 3.0);
        assert_eq!(ed.quantile(1.0).unwrap(), 4.0);
        assert_eq!(ed.quantile(0.01).unwrap(), 1.0);
        assert!(ed.quantile(0.0).is_err());
        assert!(ed.quantile(1.5).is_err());
        assert!(ed.quantile(f64::NAN).is_err());
        let single = EmpiricalDistribution::new(vec![7.0]).unwrap();
        for p in [0.1, 0.5, 1.0] {
            assert_eq!(single.quantile(p).unwrap(), 7.0);
        }
    }

    #[test]
    fn sample_validation() {
        assert_eq!(EmpiricalDistribution::new(vec![]), Err(Error::EmptySample));
        assert_eq!(
            EmpiricalDistribution::new(vec![1.0, f64::NAN]),
            Err(Error::NonFinite(1))
        );
    }

    #[test]
    fn average_value_at_risk() {
        let ed = one_to_four();
        let w = WeightSpec::indicator(0.5).unwrap();
        assert_eq!(premium(&ed, &w).unwrap(), 3.5);
        assert_eq!(loading_covariance(&ed, &w).unwrap(), 0.5);
    }

    #[test]
    fn esscher_limit_is_mean() {
        let ed = one_to_four();
        let w = WeightSpec::esscher(1e-8).unwrap();
        assert!((premium(&ed, &w).unwrap() - 2.5).abs() < 1e-6);
        for lambda in [1e-4, 1e-6] {
            let p = premium(&ed, &WeightSpec::esscher(lambda).unwrap()).unwrap();
            // d/dλ π at 0 is the variance of F⁻¹(U), 1.25 here
            assert!((p - 2.5).abs() <= 2.0 * lambda, "λ={lambda}: {p}");
        }
    }

    #[test]
    fn constant_sample() {
        let ed = EmpiricalDistribution::new(vec![0.1; 7]).unwrap();
        for w in [
            WeightSpec::indicator(0.3).unwrap(),
            WeightSpec::proportional_hazards(2.0).unwrap(),
            WeightSpec::kamps(3.0).unwrap(),
        ] {
            assert_eq!(premium(&ed, &w).unwrap(), 0.1);
            assert_eq!(loading_covariance(&ed, &w).unwrap(), 0.0);
            let r = loading_report(&ed, &w, 100).unwrap();
            assert_eq!(r.premium, r.net_premium);
            assert!(r.loading_nonneg);
            assert!(r.gain_loss.is_none());
        }
        let (v, theta) = v_theta(&ed, 50).unwrap();
        assert!(v.ys().iter().all(|&y| y == 0.0));
        assert_eq!(theta, 0.0);
    }

    #[test]
    fn decreasing_weights_give_negative_loading() {
        let ed = one_to_four();
        let f = SampledFunction::new(vec![0.0, 1.0], vec![1.0, 0.0]).unwrap();
        let w = WeightSpec::sampled(f).unwrap();
        assert!(loading_covariance(&ed, &w).unwrap() < 0.0);

        let ph = WeightSpec::proportional_hazards(2.0).unwrap();
        let r = loading_report(&ed, &ph, 1000).unwrap();
        assert!(r.premium < 2.5);
        assert_eq!(r.net_premium, 2.5);
        assert!(!r.loading_nonneg);
        let gl = r.gain_loss.unwrap();
        assert_eq!((gl.glr, gl.omega_style), (0.0, 0.0));
    }

    #[test]
    fn report_for_average_value_at_risk() {
        let ed = one_to_four();
        let r = loading_report(&ed, &WeightSpec::indicator(0.5).unwrap(), 1000).unwrap();
        assert_eq!(r.premium, 3.5);
        assert_eq!(r.net_premium, 2.5);
        assert!(r.loading_nonneg);
        let gl = r.gain_loss.unwrap();
        assert_eq!(gl.glr, f64::INFINITY);
        assert_eq!(gl.omega_style, 1.0);
        // covariance through v at the jump equals the block route
        assert_eq!(gl.gain, r.covariance);
    }

    #[test]
    fn v_for_two_point_sample() {
        let ed = EmpiricalDistribution::new(vec![0.0, 1.0]).unwrap();
        for &t in &[0.0, 0.1, 0.25, 0.5, 0.6, 0.9, 1.0] {
            let expected = if t <= 0.5 { t / 2.0 } else { (1.0 - t) / 2.0 };
            assert!((ed.v(t) - expected).abs() < 1e-15, "t={t}");
        }
        let (v, theta) = v_theta(&ed, 1000).unwrap();
        assert_eq!(v.ys()[0], 0.0);
        assert_eq!(*v.ys().last().unwrap(), 0.0);
        assert!((theta - 0.125).abs() < 1e-15);
        assert!((ed.v_integral(0.0, 1.0) - 0.125).abs() < 1e-15);
        assert!((ed.v_integral(0.25, 0.75) - (0.125 - 2.0 * 0.015625)).abs() < 1e-15);
        assert!(v_theta(&ed, 0).is_err());
    }

    #[test]
    fn v_boundaries_for_any_sample() {
        let ed = EmpiricalDistribution::new(vec![5.0, -2.0, 0.3, 9.0, 9.0, 1.1, 4.0]).unwrap();
        assert_eq!(ed.v(0.0), 0.0);
        assert_eq!(ed.v(1.0), 0.0);
        let (v, _) = v_theta(&ed, 997).unwrap();
        assert!(v.ys().iter().all(|&y| y >= -1e-12));
    }

    #[test]
    fn sampled_weight_covariance_matches_v_route() {
        let ed = EmpiricalDistribution::new(vec![0.5, 2.0, 2.5, 7.0, 3.0]).unwrap();
        let f = SampledFunction::new(vec![0.0, 0.3, 0.55, 0.8, 1.0], vec![0.2, 1.5, 0.1, 0.9, 0.4]).unwrap();
        let w = WeightSpec::sampled(f).unwrap();
        let cov = loading_covariance(&ed, &w).unwrap();
        let (gain, loss) = weighted_gain_loss_parts(&ed, &w).unwrap();
        assert!(gain > 0.0 && loss > 0.0);
        assert!((gain - loss - cov).abs() < 1e-12, "{gain} − {loss} vs {cov}");
    }

    #[test]
    fn gain_loss_basic() {
        let g = SampledFunction::sample_uniform(0.0, 1.0, 1000, |x| x - 0.5).unwrap();
        let r = gain_loss(&g).unwrap();
        assert!((r.glr - 1.0).abs() < 1e-9);
        assert!((r.omega_style - 0.5).abs() < 1e-9);

        let g = SampledFunction::new(vec![0.0, 0.5, 1.0], vec![1.0, 0.0, 2.0]).unwrap();
        let r = gain_loss(&g).unwrap();
        assert_eq!(r.omega_style, 1.0);
        assert_eq!(r.glr, f64::INFINITY);

        let g = SampledFunction::new(vec![0.0, 1.0], vec![-1.0, 0.0]).unwrap();
        let r = gain_loss(&g).unwrap();
        assert_eq!((r.glr, r.omega_style), (0.0, 0.0));

        let zero = SampledFunction::new(vec![0.0, 1.0], vec![0.0, 0.0]).unwrap();
        assert_eq!(gain_loss(&zero), Err(Error::UndefinedRatio));
        let outside = SampledFunction::new(vec![0.0, 2.0], vec![1.0, 1.0]).unwrap();
        assert!(gain_loss(&outside).is_err());
    }

    #[test]
    fn gain_loss_splits_cells_at_roots() {
        // crosses zero at x = 0.25 inside the only cell
        let g = SampledFunction::new(vec![0.0, 1.0], vec![-1.0, 3.0]).unwrap();
        let r = gain_loss(&g).unwrap();
        assert!((r.loss - 0.125).abs() < 1e-15);
        assert!((r.gain - 1.125).abs() < 1e-15);
    }

    #[test]
    fn from_parts_keeps_predicates_consistent() {
        let gain = 1.0;
        let loss = 1.0f64.next_up();
        let r = GainLoss::from_parts(gain, loss).unwrap();
        assert!(r.net() < 0.0);
        assert!(r.glr < 1.0);
        assert!(r.omega_style < 0.5);
    }
}
