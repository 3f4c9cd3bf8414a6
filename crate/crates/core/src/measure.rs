//! Finite signed measures, their Jordan/Hahn decomposition, and the indices
//! of lack of positivity (LOP), negativity (LON) and sign (LOS).
//!
//! The total-variation distance from `ν` to the positive measures is attained
//! only at `ν⁺`, so `LOP(ν) = ‖ν⁻‖`; symmetrically `LON(ν) = ‖ν⁺‖` and
//! `LOS = 2·min(LOP, LON)`.
//!
//! Two representations are supported: a finite list of atoms and a
//! piecewise-constant density against Lebesgue measure on a grid. A mixed
//! measure pairs the two and its indices add componentwise.

use crate::error::{Error, Result};
use crate::function::{neg_part, pos_part, DerivativeProfile};

/// Operations shared by every finite signed measure representation.
pub trait SignedMeasure: Sized {
    /// Signed mass of each element (atom or cell), in canonical order.
    fn masses(&self) -> Vec<f64>;

    /// Hahn/Jordan split: disjoint positive and negative parts.
    fn jordan(&self) -> JordanPair<Self>;

    /// `‖ν‖ = |ν|(Ω)`.
    fn total_variation(&self) -> f64 {
        self.masses().into_iter().fold(0.0, |acc, m| acc + m.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom {
    pub location: f64,
    pub weight: f64,
}

/// Atoms with distinct locations and nonzero weights, sorted by location.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct DiscreteSignedMeasure {
    atoms: Vec<Atom>,
}

impl DiscreteSignedMeasure {
    /// Builds a measure from `(location, weight)` pairs. Zero weights are
    /// dropped; they belong to neither Hahn set.
    pub fn new(atoms: impl IntoIterator<Item = (f64, f64)>) -> Result<Self> {
        let mut indexed = Vec::new();
        for (i, (location, weight)) in atoms.into_iter().enumerate() {
            if !location.is_finite() || !weight.is_finite() {
                return Err(Error::NonFinite(i));
            }
            indexed.push((i, Atom { location, weight }));
        }
        indexed.sort_by(|a, b| a.1.location.total_cmp(&b.1.location));
        for w in indexed.windows(2) {
            if w[0].1.location == w[1].1.location {
                return Err(Error::DuplicateLocation(w[0].0.max(w[1].0)));
            }
        }
        let atoms = indexed
            .into_iter()
            .map(|(_, a)| a)
            .filter(|a| a.weight != 0.0)
            .collect();
        Ok(Self { atoms })
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// `ν = positive − negative`, merging atoms by location.
    pub fn difference(positive: &Self, negative: &Self) -> Result<Self> {
        let pairs = positive
            .atoms
            .iter()
            .map(|a| (a.location, a.weight))
            .chain(negative.atoms.iter().map(|a| (a.location, -a.weight)));
        let mut merged: Vec<(f64, f64)> = Vec::new();
        let mut sorted: Vec<(f64, f64)> = pairs.collect();
        sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
        for (loc, w) in sorted {
            match merged.last_mut() {
                Some(last) if last.0 == loc => last.1 += w,
                _ => merged.push((loc, w)),
            }
        }
        Self::new(merged)
    }
}

impl SignedMeasure for DiscreteSignedMeasure {
    fn masses(&self) -> Vec<f64> {
        self.atoms.iter().map(|a| a.weight).collect()
    }

    fn jordan(&self) -> JordanPair<Self> {
        let mut pair = JordanPair {
            positive_part: Self::default(),
            negative_part: Self::default(),
            hahn_positive: Vec::new(),
            hahn_negative: Vec::new(),
        };
        for (i, a) in self.atoms.iter().enumerate() {
            if a.weight > 0.0 {
                pair.positive_part.atoms.push(*a);
                pair.hahn_positive.push(i);
            } else {
                pair.negative_part.atoms.push(Atom {
                    location: a.location,
                    weight: -a.weight,
                });
                pair.hahn_negative.push(i);
            }
        }
        pair
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityCell {
    pub length: f64,
    pub density: f64,
}

impl DensityCell {
    pub fn mass(&self) -> f64 {
        self.length * self.density
    }
}

/// Piecewise-constant density on consecutive cells of positive length.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct GridDensityMeasure {
    cells: Vec<DensityCell>,
}

impl GridDensityMeasure {
    pub fn new(cells: impl IntoIterator<Item = (f64, f64)>) -> Result<Self> {
        let mut out = Vec::new();
        for (i, (length, density)) in cells.into_iter().enumerate() {
            if !length.is_finite() || !density.is_finite() {
                return Err(Error::NonFinite(i));
            }
            if length <= 0.0 {
                return Err(Error::InvalidParameter {
                    name: "cell.length",
                    value: length,
                    reason: "must be positive",
                });
            }
            out.push(DensityCell { length, density });
        }
        Ok(Self { cells: out })
    }

    /// `dν = g′ dλ` for a piecewise-linear `g`.
    pub fn from_profile(d: &DerivativeProfile) -> Self {
        Self {
            cells: d
                .cells()
                .iter()
                .map(|c| DensityCell {
                    length: c.length,
                    density: c.slope,
                })
                .collect(),
        }
    }

    pub fn cells(&self) -> &[DensityCell] {
        &self.cells
    }

    /// Cell-by-cell `positive − negative`; both must share the grid.
    pub fn difference(positive: &Self, negative: &Self) -> Result<Self> {
        if positive.cells.len() != negative.cells.len() {
            return Err(Error::LengthMismatch {
                xs: positive.cells.len(),
                ys: negative.cells.len(),
            });
        }
        Self::new(
            positive
                .cells
                .iter()
                .zip(&negative.cells)
                .map(|(p, n)| (p.length, p.density - n.density)),
        )
    }
}

impl SignedMeasure for GridDensityMeasure {
    fn masses(&self) -> Vec<f64> {
        self.cells.iter().map(DensityCell::mass).collect()
    }

    /// Both parts keep the full grid; the positive part has zero density on
    /// the negative Hahn set and vice versa.
    fn jordan(&self) -> JordanPair<Self> {
        let mut pair = JordanPair {
            positive_part: Self::default(),
            negative_part: Self::default(),
            hahn_positive: Vec::new(),
            hahn_negative: Vec::new(),
        };
        for (i, c) in self.cells.iter().enumerate() {
            pair.positive_part.cells.push(DensityCell {
                length: c.length,
                density: pos_part(c.density),
            });
            pair.negative_part.cells.push(DensityCell {
                length: c.length,
                density: neg_part(c.density),
            });
            if c.density >= 0.0 {
                pair.hahn_positive.push(i);
            } else {
                pair.hahn_negative.push(i);
            }
        }
        pair
    }
}

/// Atoms plus a grid density, treated as one measure.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct MixedMeasure {
    pub atoms: DiscreteSignedMeasure,
    pub density: GridDensityMeasure,
}

impl SignedMeasure for MixedMeasure {
    fn masses(&self) -> Vec<f64> {
        let mut m = self.atoms.masses();
        m.extend(self.density.masses());
        m
    }

    /// Hahn indices enumerate atoms first, then cells offset by the atom count.
    fn jordan(&self) -> JordanPair<Self> {
        let ja = self.atoms.jordan();
        let jd = self.density.jordan();
        let offset = self.atoms.atoms.len();
        JordanPair {
            positive_part: MixedMeasure {
                atoms: ja.positive_part,
                density: jd.positive_part,
            },
            negative_part: MixedMeasure {
                atoms: ja.negative_part,
                density: jd.negative_part,
            },
            hahn_positive: ja
                .hahn_positive
                .into_iter()
                .chain(jd.hahn_positive.into_iter().map(|i| i + offset))
                .collect(),
            hahn_negative: ja
                .hahn_negative
                .into_iter()
                .chain(jd.hahn_negative.into_iter().map(|i| i + offset))
                .collect(),
        }
    }
}

/// `ν = ν⁺ − ν⁻` with the Hahn sets `(Ω⁺, Ω⁻)` given as element indices.
#[derive(Debug, Clone, PartialEq)]
pub struct JordanPair<M> {
    pub positive_part: M,
    pub negative_part: M,
    /// Elements where `ν ≥ 0`.
    pub hahn_positive: Vec<usize>,
    /// Elements where `ν < 0`.
    pub hahn_negative: Vec<usize>,
}

pub fn jordan<M: SignedMeasure>(nu: &M) -> JordanPair<M> {
    nu.jordan()
}

/// Lack of positivity, `‖ν⁻‖`.
pub fn lop<M: SignedMeasure>(nu: &M) -> f64 {
    nu.masses().into_iter().fold(0.0, |acc, m| acc + neg_part(m))
}

/// Lack of negativity, `‖ν⁺‖`.
pub fn lon<M: SignedMeasure>(nu: &M) -> f64 {
    nu.masses().into_iter().fold(0.0, |acc, m| acc + pos_part(m))
}

/// Lack of sign, `2·min(LOP, LON)`.
pub fn los<M: SignedMeasure>(nu: &M) -> f64 {
    2.0 * lop(nu).min(lon(nu))
}

/// `LOP*`, `LON*`, `LOS*`; each in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalizedSign {
    pub lop: f64,
    pub lon: f64,
    pub los: f64,
}

pub fn normalized<M: SignedMeasure>(nu: &M) -> Result<NormalizedSign> {
    let tv = nu.total_variation();
    if tv == 0.0 {
        return Err(Error::UndefinedIndex);
    }
    let lop = lop(nu) / tv;
    let lon = lon(nu) / tv;
    Ok(NormalizedSign {
        lop,
        lon,
        los: 2.0 * lop.min(lon),
    })
}

pub fn lop_norm<M: SignedMeasure>(nu: &M) -> Result<f64> {
    normalized(nu).map(|n| n.lop)
}

pub fn lon_norm<M: SignedMeasure>(nu: &M) -> Result<f64> {
    normalized(nu).map(|n| n.lon)
}

pub fn los_norm<M: SignedMeasure>(nu: &M) -> Result<f64> {
    normalized(nu).map(|n| n.los)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::{derivative, standardize, SampledFunction};
    use crate::indices;
    use std::f64::consts::PI;

    fn two_atoms() -> DiscreteSignedMeasure {
        DiscreteSignedMeasure::new([(1.0, -1.0), (0.0, 2.0)]).unwrap()
    }

    #[test]
    fn jordan_splits_signs() {
        let nu = two_atoms();
        let j = jordan(&nu);
        assert_eq!(j.positive_part.atoms(), &[Atom { location: 0.0, weight: 2.0 }]);
        assert_eq!(j.negative_part.atoms(), &[Atom { location: 1.0, weight: 1.0 }]);
        assert_eq!(j.hahn_positive, vec![0]);
        assert_eq!(j.hahn_negative, vec![1]);
        let back = DiscreteSignedMeasure::difference(&j.positive_part, &j.negative_part).unwrap();
        assert_eq!(back, nu);
    }

    #[test]
    fn jordan_of_positive_and_empty() {
        let nu = DiscreteSignedMeasure::new([(0.0, 1.0), (2.0, 3.0)]).unwrap();
        assert!(jordan(&nu).negative_part.is_empty());
        let empty = DiscreteSignedMeasure::new([(0.0, 0.0)]).unwrap();
        let j = jordan(&empty);
        assert!(j.positive_part.is_empty() && j.negative_part.is_empty());
        assert_eq!((lop(&empty), lon(&empty), los(&empty)), (0.0, 0.0, 0.0));
        assert_eq!(normalized(&empty), Err(Error::UndefinedIndex));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            DiscreteSignedMeasure::new([(0.0, 1.0), (1.0, 2.0), (0.0, 3.0)]),
            Err(Error::DuplicateLocation(2))
        );
        assert_eq!(
            DiscreteSignedMeasure::new([(f64::NAN, 1.0)]),
            Err(Error::NonFinite(0))
        );
        assert!(GridDensityMeasure::new([(0.0, 1.0)]).is_err());
    }

    #[test]
    fn raw_and_normalized_indices() {
        let nu = two_atoms();
        assert_eq!((lop(&nu), lon(&nu), los(&nu)), (1.0, 2.0, 2.0));
        assert_eq!(nu.total_variation(), 3.0);
        let n = normalized(&nu).unwrap();
        assert!((n.lop - 1.0 / 3.0).abs() < 1e-15);
        assert!((n.lon - 2.0 / 3.0).abs() < 1e-15);
        assert!((n.los - 2.0 / 3.0).abs() < 1e-15);

        let neg = DiscreteSignedMeasure::new([(0.0, -1.0), (1.0, -0.5)]).unwrap();
        assert_eq!((lon(&neg), los(&neg)), (0.0, 0.0));

        let pos = DiscreteSignedMeasure::new([(0.0, 4.0)]).unwrap();
        let n = normalized(&pos).unwrap();
        assert_eq!((n.lop, n.lon, n.los), (0.0, 1.0, 0.0));

        let balanced = DiscreteSignedMeasure::new([(0.0, 1.0), (1.0, -1.0)]).unwrap();
        assert_eq!(los_norm(&balanced).unwrap(), 1.0);
    }

    #[test]
    fn grid_measure_from_one_minus_cos() {
        let g = standardize(&SampledFunction::sample_uniform(0.0, 1.5 * PI, 100_000, |x| 1.0 - x.cos()).unwrap())
            .unwrap();
        let nu = GridDensityMeasure::from_profile(&derivative(&g));
        let j = jordan(&nu);
        assert!((j.negative_part.total_variation() - 1.0).abs() < 1e-3);
        assert_eq!(lop(&nu), indices::loi(&g));
        assert_eq!(lon(&nu), indices::lod(&g));
        let back = GridDensityMeasure::difference(&j.positive_part, &j.negative_part).unwrap();
        assert_eq!(back, nu);
    }

    #[test]
    fn mixed_measure_adds_componentwise() {
        let atoms = two_atoms();
        let density = GridDensityMeasure::new([(1.0, -0.5), (2.0, 0.25)]).unwrap();
        let mixed = MixedMeasure {
            atoms: atoms.clone(),
            density: density.clone(),
        };
        assert_eq!(lop(&mixed), lop(&atoms) + lop(&density));
        assert_eq!(lon(&mixed), lon(&atoms) + lon(&density));
        let j = jordan(&mixed);
        assert_eq!(j.hahn_positive, vec![0, 3]);
        assert_eq!(j.hahn_negative, vec![1, 2]);
    }
}
