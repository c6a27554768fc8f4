//! Barcodes of one-parameter slices over the two-element field, and an
//! independent rank computation for the two-parameter rank invariant.

mod gf2;
mod rank;
mod reduce;

use serde::{Deserialize, Serialize};

pub use rank::brute_force_rank;
pub use reduce::{compute_barcode, compute_barcode_with, Algorithm};

use crate::grade::{Bigrade, WeightVector};

/// A half-open interval `[birth, death)`; `death` is `+inf` for essential
/// classes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bar {
    pub birth: f64,
    pub death: f64,
    pub dim: usize,
}

impl Bar {
    pub fn new(birth: f64, death: f64, dim: usize) -> Self {
        Bar { birth, death, dim }
    }

    pub fn is_essential(&self) -> bool {
        self.death == f64::INFINITY
    }

    pub fn persistence(&self) -> f64 {
        self.death - self.birth
    }

    /// Whether the class is alive on the whole of `[s, t]`.
    pub fn contains(&self, s: f64, t: f64) -> bool {
        self.birth <= s && t < self.death
    }
}

/// The bars of one homology dimension of a slice.
#[derive(Clone, Debug, PartialEq)]
pub struct Barcode {
    pub dim: usize,
    pub bars: Vec<Bar>,
    pub base_point: Bigrade,
    pub weight: WeightVector,
}

impl Barcode {
    /// A barcode not tied to a particular slice.
    pub fn from_bars(dim: usize, bars: Vec<Bar>) -> Self {
        Barcode {
            dim,
            bars,
            base_point: Bigrade::new(0.0, 0.0),
            weight: WeightVector::UNIT,
        }
    }

    /// Convenience constructor from `(birth, death)` pairs.
    pub fn from_pairs(dim: usize, pairs: &[(f64, f64)]) -> Self {
        Self::from_bars(dim, pairs.iter().map(|&(b, d)| Bar::new(b, d, dim)).collect())
    }

    pub fn len(&self) -> usize {
        self.bars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bars.is_empty()
    }

    /// Number of bars containing `[s, t]`; this is the rank of the map from
    /// time `s` to time `t`.
    pub fn rank(&self, s: f64, t: f64) -> usize {
        self.bars.iter().filter(|b| b.contains(s, t)).count()
    }

    /// Bars sorted by `(birth, death)`, for comparisons.
    pub fn sorted_pairs(&self) -> Vec<(f64, f64)> {
        let mut v: Vec<(f64, f64)> = self.bars.iter().map(|b| (b.birth, b.death)).collect();
        v.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
        v
    }
}
