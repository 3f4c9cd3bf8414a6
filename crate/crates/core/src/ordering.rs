//! Monotonicity orderings of functions on a common interval.
//!
//! The weak orderings compare normalized indices. The strict orderings compare
//! normalized level-set survival curves `S(z) = λ{x : (g')^∓(x) > z}` for all
//! `z > 0`. Both curves are right-continuous step functions, so the "for all
//! z" check reduces to one evaluation per merged breakpoint.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::function::{derivative, neg_part, pos_part, StandardizedFunction, Transform};
use crate::indices;
use crate::tolerance::{approx_eq, approx_le};

/// Which part of the derivative a survival curve describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `(g')⁻`
    Minus,
    /// `(g')⁺`
    Plus,
}

/// `S(z) = level` on `[z, next z)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Step {
    pub z: f64,
    pub level: f64,
}

/// Non-increasing, right-continuous step function on `z ≥ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct SurvivalCurve {
    side: Side,
    steps: Vec<Step>,
    domain_length: f64,
    tv: f64,
}

impl SurvivalCurve {
    fn build(g: &StandardizedFunction, side: Side) -> Self {
        let d = derivative(g);
        let part = match side {
            Side::Minus => neg_part,
            Side::Plus => pos_part,
        };
        let mut cells: Vec<(f64, f64)> = d
            .cells()
            .iter()
            .map(|c| (part(c.slope), c.length))
            .filter(|&(m, _)| m > 0.0)
            .collect();
        cells.sort_by(|a, b| a.0.total_cmp(&b.0));

        // suffix[i] = total length of cells i.. (largest magnitudes)
        let mut suffix = vec![0.0; cells.len() + 1];
        for i in (0..cells.len()).rev() {
            suffix[i] = suffix[i + 1] + cells[i].1;
        }

        let mut steps = vec![Step {
            z: 0.0,
            level: suffix[0],
        }];
        let mut i = 0;
        while i < cells.len() {
            let m = cells[i].0;
            while i < cells.len() && cells[i].0 == m {
                i += 1;
            }
            steps.push(Step { z: m, level: suffix[i] });
        }

        Self {
            side,
            steps,
            domain_length: g.length(),
            tv: d.integrate(&Transform::Abs),
        }
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Total variation of the function the curve was built from.
    pub fn tv(&self) -> f64 {
        self.tv
    }

    /// Distinct slope magnitudes, preceded by 0.
    pub fn breakpoints(&self) -> impl Iterator<Item = f64> + '_ {
        self.steps.iter().map(|s| s.z)
    }

    pub fn eval(&self, z: f64) -> f64 {
        if z < 0.0 {
            return self.domain_length;
        }
        let k = self.steps.partition_point(|s| s.z <= z);
        self.steps[k - 1].level
    }

    /// `∫₀^∞ S(z) dz`; equals the matching raw index.
    pub fn integral(&self) -> f64 {
        self.steps
            .windows(2)
            .map(|w| w[0].level * (w[1].z - w[0].z))
            .sum()
    }
}

/// `S⁻_y(z | g)`.
pub fn survival_minus(g: &StandardizedFunction) -> SurvivalCurve {
    SurvivalCurve::build(g, Side::Minus)
}

/// `S⁺_y(z | g)`.
pub fn survival_plus(g: &StandardizedFunction) -> SurvivalCurve {
    SurvivalCurve::build(g, Side::Plus)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    /// more non-decreasing: `LOI*(g) ≤ LOI*(h)`
    I,
    /// more non-increasing: `LOD*(g) ≤ LOD*(h)`
    D,
    /// more monotonic: `LOM*(g) ≤ LOM*(h)`
    M,
    /// strictly more non-decreasing: normalized `S⁻` dominated for all `z > 0`
    SI,
    /// strictly more non-increasing: normalized `S⁺` dominated for all `z > 0`
    SD,
}

impl Relation {
    pub fn is_strict(self) -> bool {
        matches!(self, Relation::SI | Relation::SD)
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Relation::I => "I",
            Relation::D => "D",
            Relation::M => "M",
            Relation::SI => "SI",
            Relation::SD => "SD",
        };
        f.write_str(s)
    }
}

impl FromStr for Relation {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "I" => Ok(Relation::I),
            "D" => Ok(Relation::D),
            "M" => Ok(Relation::M),
            "SI" => Ok(Relation::SI),
            "SD" => Ok(Relation::SD),
            _ => Err(format!("unknown relation {s:?}; expected one of I, D, M, SI, SD")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Holds {
    Yes,
    No,
    /// Strict relations only: neither curve dominates the other.
    Incomparable,
}

impl fmt::Display for Holds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Holds::Yes => "yes",
            Holds::No => "no",
            Holds::Incomparable => "incomparable",
        })
    }
}

/// Outcome of `g ≥_R h`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderingVerdict {
    pub relation: Relation,
    pub holds: Holds,
    /// For strict relations that fail: a `z ≥ 0` where `g`'s normalized curve
    /// exceeds `h`'s.
    pub witness: Option<f64>,
    pub notes: Vec<String>,
}

fn check_tv(g: &StandardizedFunction, h: &StandardizedFunction) -> Result<(f64, f64)> {
    let tg = derivative(g).integrate(&Transform::Abs);
    let th = derivative(h).integrate(&Transform::Abs);
    if tg == 0.0 {
        return Err(Error::UndefinedComparison("left function"));
    }
    if th == 0.0 {
        return Err(Error::UndefinedComparison("right function"));
    }
    Ok((tg, th))
}

/// Decides `g ≥_R h`. Ties count as holding; strict relations are
/// delegated to [`compare_strict`].
pub fn compare(g: &StandardizedFunction, h: &StandardizedFunction, relation: Relation) -> Result<OrderingVerdict> {
    if relation.is_strict() {
        return compare_strict(g, h, relation);
    }
    let (tg, th) = check_tv(g, h)?;
    let ng = indices::normalized(g)?;
    let nh = indices::normalized(h)?;
    let (left, right) = match relation {
        Relation::I => (ng.loi, nh.loi),
        Relation::D => (ng.lod, nh.lod),
        _ => (ng.lom, nh.lom),
    };
    let mut notes = Vec::new();
    if !approx_eq(tg, th, 0.0) {
        notes.push(format!(
            "total variations differ ({tg} vs {th}); raw indices are not comparable, normalized indices are used"
        ));
    }
    Ok(OrderingVerdict {
        relation,
        holds: if approx_le(left, right, 1.0) { Holds::Yes } else { Holds::No },
        witness: None,
        notes,
    })
}

/// First `z ≥ 0` (midpoint of a step interval) where `a(z)/ta > b(z)/tb`.
fn first_violation(a: &SurvivalCurve, b: &SurvivalCurve) -> Option<f64> {
    let mut zs: Vec<f64> = a.breakpoints().chain(b.breakpoints()).collect();
    zs.sort_by(f64::total_cmp);
    zs.dedup();
    // beyond the last breakpoint both curves are 0
    zs.windows(2).find_map(|w| {
        let left = a.eval(w[0]) / a.tv;
        let right = b.eval(w[0]) / b.tv;
        let mid = 0.5 * (w[0] + w[1]);
        // adjacent floats: the midpoint rounds onto an endpoint
        (!approx_le(left, right, 1.0)).then_some(if mid < w[1] { mid } else { w[0] })
    })
}

/// Decides the strict relations `SI` and `SD` by comparing normalized
/// survival curves at every merged breakpoint.
///
/// `No` means `h` strictly dominates `g` somewhere and nowhere the reverse;
/// `Incomparable` means the curves cross. Both carry a witness `z`.
pub fn compare_strict(
    g: &StandardizedFunction,
    h: &StandardizedFunction,
    relation: Relation,
) -> Result<OrderingVerdict> {
    check_tv(g, h)?;
    let build = match relation {
        Relation::SI => survival_minus,
        Relation::SD => survival_plus,
        other => {
            return Err(Error::InvalidParameter {
                name: "relation",
                value: f64::NAN,
                reason: match other {
                    Relation::I => "I is not a strict relation",
                    Relation::D => "D is not a strict relation",
                    _ => "M is not a strict relation",
                },
            })
        }
    };
    let (cg, ch) = (build(g), build(h));
    let (holds, witness) = match first_violation(&cg, &ch) {
        None => (Holds::Yes, None),
        Some(z) if first_violation(&ch, &cg).is_none() => (Holds::No, Some(z)),
        Some(z) => (Holds::Incomparable, Some(z)),
    };
    Ok(OrderingVerdict {
        relation,
        holds,
        witness,
        notes: Vec::new(),
    })
}
