//! Comparison tolerances shared by invariant checks and orderings.

/// Relative tolerance for identities that are exact on the piecewise-linear model.
pub const REL_TOL: f64 = 1e-12;

/// Absolute floor added to every relative comparison.
pub const ABS_FLOOR: f64 = 1e-15;

/// `|a − b| ≤ REL_TOL · max(|a|, |b|, scale) + ABS_FLOOR`.
///
/// `scale` is the natural magnitude of the quantities being compared (the
/// total variation for raw indices, 1 for normalized ones). Pass 0 for a
/// purely relative test.
pub fn approx_eq(a: f64, b: f64, scale: f64) -> bool {
    let m = a.abs().max(b.abs()).max(scale.abs());
    (a - b).abs() <= REL_TOL * m + ABS_FLOOR
}

/// `a ≤ b` up to the same tolerance as [`approx_eq`].
pub fn approx_le(a: f64, b: f64, scale: f64) -> bool {
    a <= b || approx_eq(a, b, scale)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relative_and_floor() {
        assert!(approx_eq(1.0, 1.0 + 1e-13, 0.0));
        assert!(!approx_eq(1.0, 1.0 + 1e-11, 0.0));
        assert!(approx_eq(0.0, 1e-16, 0.0));
        assert!(!approx_eq(0.0, 1e-14, 0.0));
        assert!(approx_eq(0.0, 1e-13, 1.0));
        assert!(approx_le(1.0 + 1e-13, 1.0, 0.0));
        assert!(!approx_le(1.1, 1.0, 0.0));
    }
}
