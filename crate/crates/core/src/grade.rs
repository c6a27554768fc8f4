//! Points, weights and regions of the two-parameter space.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::snap;

/// A point of the parameter plane, ordered coordinatewise.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bigrade {
    pub x1: f64,
    pub x2: f64,
}

impl Bigrade {
    pub const fn new(x1: f64, x2: f64) -> Self {
        Bigrade { x1, x2 }
    }

    pub fn checked(x1: f64, x2: f64) -> Result<Self> {
        if !x1.is_finite() || !x2.is_finite() {
            return Err(Error::input(format!("bigrade ({x1}, {x2}) is not finite")));
        }
        Ok(Bigrade { x1, x2 })
    }

    pub fn is_finite(&self) -> bool {
        self.x1.is_finite() && self.x2.is_finite()
    }

    /// Coordinatewise `self <= other`.
    #[inline]
    pub fn le(&self, other: &Bigrade) -> bool {
        self.x1 <= other.x1 && self.x2 <= other.x2
    }

    /// Neither `self <= other` nor `other <= self`.
    pub fn incomparable(&self, other: &Bigrade) -> bool {
        !self.le(other) && !other.le(self)
    }

    pub fn max_norm(&self) -> f64 {
        self.x1.abs().max(self.x2.abs())
    }

    pub fn add(&self, other: &Bigrade) -> Bigrade {
        Bigrade::new(self.x1 + other.x1, self.x2 + other.x2)
    }

    pub fn sub(&self, other: &Bigrade) -> Bigrade {
        Bigrade::new(self.x1 - other.x1, self.x2 - other.x2)
    }

    pub fn coord(&self, axis: usize) -> f64 {
        match axis {
            0 => self.x1,
            _ => self.x2,
        }
    }
}

impl fmt::Display for Bigrade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x1, self.x2)
    }
}

/// Keeps only the minimal elements of `grades`, dropping duplicates.
/// The result is sorted by `(x1, x2)`.
pub fn minimal_elements(grades: &[Bigrade]) -> Vec<Bigrade> {
    let mut out: Vec<Bigrade> = Vec::with_capacity(grades.len());
    for g in grades {
        if grades.iter().any(|h| h.le(g) && !g.le(h)) {
            continue;
        }
        if !out.contains(g) {
            out.push(*g);
        }
    }
    out.sort_by(|a, b| a.x1.total_cmp(&b.x1).then(a.x2.total_cmp(&b.x2)));
    out
}

/// Positive per-axis weights with maximum exactly 1.
///
/// The weighted max-norm is `max(w1 |h1|, w2 |h2|)` and the associated
/// rescaling multiplies coordinate `i` by `w_i`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightVector {
    w1: f64,
    w2: f64,
}

impl WeightVector {
    pub const UNIT: WeightVector = WeightVector { w1: 1.0, w2: 1.0 };

    pub fn new(w1: f64, w2: f64) -> Result<Self> {
        if !(w1 > 0.0 && w2 > 0.0 && w1.is_finite() && w2.is_finite()) {
            return Err(Error::input(format!("weight ({w1}, {w2}) must be positive")));
        }
        if w1.max(w2) != 1.0 {
            return Err(Error::input(format!(
                "weight ({w1}, {w2}) is not normalized: max coordinate must be 1"
            )));
        }
        Ok(WeightVector { w1, w2 })
    }

    /// Divides by the larger coordinate.
    pub fn normalized(w1: f64, w2: f64) -> Result<Self> {
        if !(w1 > 0.0 && w2 > 0.0 && w1.is_finite() && w2.is_finite()) {
            return Err(Error::input(format!("weight ({w1}, {w2}) must be positive")));
        }
        let m = w1.max(w2);
        WeightVector::new(w1 / m, w2 / m)
    }

    pub fn w1(&self) -> f64 {
        self.w1
    }

    pub fn w2(&self) -> f64 {
        self.w2
    }

    pub fn is_unit(&self) -> bool {
        self.w1 == 1.0 && self.w2 == 1.0
    }

    /// `max_i w_i |h_i|`.
    pub fn norm(&self, h: &Bigrade) -> f64 {
        (self.w1 * h.x1.abs()).max(self.w2 * h.x2.abs())
    }

    /// The rescaling `x -> (w1 x1, w2 x2)`.
    pub fn rescale(&self, x: &Bigrade) -> Bigrade {
        Bigrade::new(self.w1 * x.x1, self.w2 * x.x2)
    }

    /// Rescaled coordinates rounded to the arithmetic lattice.
    #[inline]
    pub(crate) fn lattice_coords(&self, x: &Bigrade) -> (f64, f64) {
        (snap(self.w1 * x.x1), snap(self.w2 * x.x2))
    }

    /// Direction of the weighted diagonal, `(1/w1, 1/w2)`.
    pub fn direction(&self) -> Bigrade {
        Bigrade::new(1.0 / self.w1, 1.0 / self.w2)
    }
}

impl Default for WeightVector {
    fn default() -> Self {
        WeightVector::UNIT
    }
}

/// Axis-aligned closed rectangle of parameter space.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Region {
    pub x1_min: f64,
    pub x1_max: f64,
    pub x2_min: f64,
    pub x2_max: f64,
}

impl Region {
    pub fn new(x1_min: f64, x1_max: f64, x2_min: f64, x2_max: f64) -> Result<Self> {
        let all = [x1_min, x1_max, x2_min, x2_max];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::input("region bounds must be finite"));
        }
        if !(x1_min < x1_max && x2_min < x2_max) {
            return Err(Error::input(format!(
                "degenerate region [{x1_min}, {x1_max}] x [{x2_min}, {x2_max}]"
            )));
        }
        Ok(Region {
            x1_min,
            x1_max,
            x2_min,
            x2_max,
        })
    }

    pub fn contains(&self, x: &Bigrade) -> bool {
        x.x1 >= self.x1_min && x.x1 <= self.x1_max && x.x2 >= self.x2_min && x.x2 <= self.x2_max
    }

    /// Whether `other` lies inside `self`.
    pub fn covers(&self, other: &Region) -> bool {
        other.x1_min >= self.x1_min
            && other.x1_max <= self.x1_max
            && other.x2_min >= self.x2_min
            && other.x2_max <= self.x2_max
    }

    pub fn area(&self) -> f64 {
        (self.x1_max - self.x1_min) * (self.x2_max - self.x2_min)
    }

    pub fn lower(&self) -> Bigrade {
        Bigrade::new(self.x1_min, self.x2_min)
    }

    pub fn upper(&self) -> Bigrade {
        Bigrade::new(self.x1_max, self.x2_max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_must_be_normalized() {
        assert!(WeightVector::new(1.0, 0.5).is_ok());
        assert!(WeightVector::new(0.5, 0.5).is_err());
        assert!(WeightVector::new(1.0, 0.0).is_err());
        assert!(WeightVector::new(1.0, -1.0).is_err());
        let w = WeightVector::normalized(2.0, 1.0).unwrap();
        assert_eq!((w.w1(), w.w2()), (1.0, 0.5));
    }

    #[test]
    fn weighted_norm() {
        let w = WeightVector::new(1.0, 0.5).unwrap();
        assert_eq!(w.norm(&Bigrade::new(1.0, 3.0)), 1.5);
        assert_eq!(w.norm(&Bigrade::new(-2.0, 3.0)), 2.0);
    }

    #[test]
    fn minimal_elements_drops_dominated() {
        let g = [
            Bigrade::new(2.0, 2.0),
            Bigrade::new(1.0, 1.0),
            Bigrade::new(0.0, 3.0),
            Bigrade::new(1.0, 1.0),
        ];
        assert_eq!(
            minimal_elements(&g),
            vec![Bigrade::new(0.0, 3.0), Bigrade::new(1.0, 1.0)]
        );
    }

    #[test]
    fn degenerate_region_rejected() {
        assert!(Region::new(0.0, 0.0, 0.0, 1.0).is_err());
        assert!(Region::new(0.0, 1.0, 2.0, 1.0).is_err());
        assert!(Region::new(0.0, f64::INFINITY, 0.0, 1.0).is_err());
    }
}
