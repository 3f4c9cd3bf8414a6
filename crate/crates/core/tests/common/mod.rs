//! Random piecewise-linear functions and measures shared by the test targets.
#![allow(dead_code)]

use monodex::function::{standardize, SampledFunction, StandardizedFunction};
use monodex::measure::DiscreteSignedMeasure;
use proptest::prelude::*;
use rand::Rng;

/// Builds `g` with `g(0) = 0` from `(length, slope)` cells.
pub fn from_cells(cells: &[(f64, f64)]) -> StandardizedFunction {
    let mut xs = vec![0.0];
    let mut ys = vec![0.0];
    for &(len, slope) in cells {
        let x = xs[xs.len() - 1];
        let y = ys[ys.len() - 1];
        xs.push(x + len);
        ys.push(y + slope * len);
    }
    standardize(&SampledFunction::new(xs, ys).unwrap()).unwrap()
}

/// Slopes in `[−10, 10]`, with exact zeros and repeated integers mixed in so
/// that ties and flat pieces occur.
fn draw_slope(rng: &mut impl Rng) -> f64 {
    match rng.random_range(0..10) {
        0 => 0.0,
        1 | 2 => f64::from(rng.random_range(-10i32..=10)),
        _ => rng.random_range(-10.0..=10.0),
    }
}

pub fn random_cells(rng: &mut impl Rng, min_cells: usize, max_cells: usize) -> Vec<(f64, f64)> {
    let n = rng.random_range(min_cells..=max_cells);
    let mut cells: Vec<(f64, f64)> = (0..n)
        .map(|_| (rng.random_range(0.1..2.0), draw_slope(rng)))
        .collect();
    match rng.random_range(0..8) {
        0 => cells.iter_mut().for_each(|c| c.1 = c.1.abs()),
        1 => cells.iter_mut().for_each(|c| c.1 = -c.1.abs()),
        _ => {}
    }
    cells
}

pub fn random_function(rng: &mut impl Rng, max_cells: usize) -> StandardizedFunction {
    from_cells(&random_cells(rng, 2, max_cells))
}

/// Random function with nonzero total variation.
pub fn random_varying(rng: &mut impl Rng, max_cells: usize) -> StandardizedFunction {
    loop {
        let cells = random_cells(rng, 2, max_cells);
        if cells.iter().any(|c| c.1 != 0.0) {
            return from_cells(&cells);
        }
    }
}

pub fn random_atoms(rng: &mut impl Rng, max_atoms: usize) -> Vec<(f64, f64)> {
    let n = rng.random_range(1..=max_atoms);
    (0..n)
        .map(|i| {
            let mut w: f64 = rng.random_range(-5.0..5.0);
            if w.abs() < 1e-3 {
                w = 1.0;
            }
            (i as f64, w)
        })
        .collect()
}

pub fn random_measure(rng: &mut impl Rng, max_atoms: usize) -> DiscreteSignedMeasure {
    DiscreteSignedMeasure::new(random_atoms(rng, max_atoms)).unwrap()
}

fn slope() -> impl Strategy<Value = f64> {
    prop_oneof![
        1 => Just(0.0),
        2 => (-10i32..=10).prop_map(f64::from),
        7 => -10.0f64..=10.0,
    ]
}

/// Cells of a random piecewise-linear function: lengths in `[0.1, 2)`,
/// slopes in `[−10, 10]`, at least two cells.
pub fn cells_strategy() -> impl Strategy<Value = Vec<(f64, f64)>> {
    (prop::collection::vec((0.1f64..2.0, slope()), 2..=12), 0u8..8).prop_map(|(mut cells, mode)| {
        match mode {
            0 => cells.iter_mut().for_each(|c| c.1 = c.1.abs()),
            1 => cells.iter_mut().for_each(|c| c.1 = -c.1.abs()),
            _ => {}
        }
        cells
    })
}

pub fn function_strategy() -> impl Strategy<Value = StandardizedFunction> {
    cells_strategy().prop_map(|c| from_cells(&c))
}

pub fn varying_strategy() -> impl Strategy<Value = StandardizedFunction> {
    cells_strategy()
        .prop_filter("needs nonzero variation", |c| c.iter().any(|x| x.1 != 0.0))
        .prop_map(|c| from_cells(&c))
}

pub fn slopes(g: &StandardizedFunction) -> Vec<f64> {
    monodex::function::derivative(g).cells().iter().map(|c| c.slope).collect()
}
