//! Uniform and weighted multiparameter landscapes on rectangular grids.
//!
//! The landscape at `x` is read off the barcode of the weighted diagonal
//! through `x` at time 0. Grid nodes sharing a diagonal share one barcode.
//!
//! All grade and node coordinates are rescaled by the weight and rounded to
//! multiples of 2^-32 before any arithmetic. On that lattice differences,
//! minima and maxima are exact, so the two evaluation paths agree bitwise
//! and the Lipschitz bound can be checked without tolerance.

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;

use crate::bifiltration::{entry_time, rescaled_grades, BifilteredComplex, SliceFiltration};
use crate::error::{Error, Result};
use crate::grade::{Bigrade, Region, WeightVector};
use crate::landscape::{landscape_column, landscape_eval};
use crate::lattice::{self, snap};
use crate::persistence::compute_barcode;

/// Upper bound on `k_max * n1 * n2`.
const MAX_GRID_VALUES: usize = 1 << 28;

/// Landscape values `lambda(k, x)` for `k = 1..=k_max` at grid nodes.
#[derive(Clone, Debug, PartialEq)]
pub struct LandscapeGrid {
    pub region: Region,
    /// Node spacing; for grids built on explicit axes, the largest gap.
    pub resolution: f64,
    pub k_max: usize,
    pub weight: WeightVector,
    pub hom_dim: usize,
    pub axis1: Vec<f64>,
    pub axis2: Vec<f64>,
    /// Row-major over `(k, j, i)`: `k` slowest, `i` (the x1 index) fastest.
    pub values: Vec<f64>,
}

impl LandscapeGrid {
    /// All-zero grid with the given shape.
    pub fn zeros(
        region: Region,
        resolution: f64,
        k_max: usize,
        weight: WeightVector,
        hom_dim: usize,
        axis1: Vec<f64>,
        axis2: Vec<f64>,
    ) -> Self {
        let len = k_max * axis1.len() * axis2.len();
        LandscapeGrid {
            region,
            resolution,
            k_max,
            weight,
            hom_dim,
            axis1,
            axis2,
            values: vec![0.0; len],
        }
    }

    pub fn n1(&self) -> usize {
        self.axis1.len()
    }

    pub fn n2(&self) -> usize {
        self.axis2.len()
    }

    #[inline]
    fn index(&self, k: usize, j: usize, i: usize) -> usize {
        ((k - 1) * self.n2() + j) * self.n1() + i
    }

    /// `lambda(k, node(i, j))`, with `k` starting at 1.
    pub fn get(&self, k: usize, j: usize, i: usize) -> f64 {
        self.values[self.index(k, j, i)]
    }

    /// The `n2 x n1` plane of level `k`.
    pub fn plane(&self, k: usize) -> &[f64] {
        let m = self.n1() * self.n2();
        &self.values[(k - 1) * m..k * m]
    }

    pub fn node(&self, i: usize, j: usize) -> Bigrade {
        Bigrade::new(self.axis1[i], self.axis2[j])
    }

    /// Index pair of the node nearest to `x` along each axis.
    pub fn nearest(&self, x: &Bigrade) -> (usize, usize) {
        (nearest_index(&self.axis1, x.x1), nearest_index(&self.axis2, x.x2))
    }

    /// Nearest-node landscape value.
    pub fn value_at(&self, k: usize, x: &Bigrade) -> f64 {
        if k == 0 || k > self.k_max {
            return 0.0;
        }
        let (i, j) = self.nearest(x);
        self.get(k, j, i)
    }

    /// Largest value over all levels and nodes.
    pub fn max_value(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }

    /// Sup norm of level `k`.
    pub fn sup_norm(&self, k: usize) -> f64 {
        self.plane(k).iter().copied().fold(0.0, f64::max)
    }

    /// Whether the two grids have the same region, spacing, axes, weight,
    /// depth and homology dimension.
    pub fn same_shape(&self, other: &LandscapeGrid) -> bool {
        self.region == other.region
            && self.resolution == other.resolution
            && self.k_max == other.k_max
            && self.weight == other.weight
            && self.hom_dim == other.hom_dim
            && self.axis1 == other.axis1
            && self.axis2 == other.axis2
    }

    /// Adjacent node pairs (8-neighbourhood) whose values differ by more
    /// than their weighted distance.
    pub fn lipschitz_violations(&self) -> Vec<LipschitzViolation> {
        let w = self.weight;
        let u1: Vec<f64> = self.axis1.iter().map(|&v| snap(w.w1() * v)).collect();
        let u2: Vec<f64> = self.axis2.iter().map(|&v| snap(w.w2() * v)).collect();
        let (n1, n2) = (self.n1(), self.n2());
        let mut out = Vec::new();
        for k in 1..=self.k_max {
            for j in 0..n2 {
                for i in 0..n1 {
                    let v = self.get(k, j, i);
                    for (di, dj) in [(1i64, 0i64), (0, 1), (1, 1), (1, -1)] {
                        let (i2, j2) = (i as i64 + di, j as i64 + dj);
                        if i2 < 0 || j2 < 0 || i2 >= n1 as i64 || j2 >= n2 as i64 {
                            continue;
                        }
                        let (i2, j2) = (i2 as usize, j2 as usize);
                        let bound = (u1[i2] - u1[i]).abs().max((u2[j2] - u2[j]).abs());
                        let diff = (self.get(k, j2, i2) - v).abs();
                        if diff > bound {
                            out.push(LipschitzViolation {
                                k,
                                a: (i, j),
                                b: (i2, j2),
                                difference: diff,
                                bound,
                            });
                        }
                    }
                }
            }
        }
        out
    }
}

/// A pair of neighbouring nodes breaking the 1-Lipschitz bound.
#[derive(Clone, Debug, PartialEq)]
pub struct LipschitzViolation {
    pub k: usize,
    pub a: (usize, usize),
    pub b: (usize, usize),
    pub difference: f64,
    pub bound: f64,
}

fn nearest_index(axis: &[f64], v: f64) -> usize {
    let p = axis.partition_point(|&a| a < v);
    if p == 0 {
        0
    } else if p == axis.len() {
        axis.len() - 1
    } else if v - axis[p - 1] <= axis[p] - v {
        p - 1
    } else {
        p
    }
}

/// Wall-clock cost of one diagonal.
#[derive(Clone, Debug)]
pub struct SliceTiming {
    pub base_point: Bigrade,
    pub n_nodes: usize,
    pub n_bars: usize,
    pub seconds: f64,
}

/// `lambda(k, x)` for the weighted landscape: the `k`-th landscape at time 0
/// of the barcode on the weighted diagonal through `x`.
pub fn eval_point(
    complex: &BifilteredComplex,
    x: Bigrade,
    k: usize,
    weight: WeightVector,
    hom_dim: usize,
) -> Result<f64> {
    if k == 0 {
        return Err(Error::input("landscape depth k must be at least 1"));
    }
    let filtration = crate::bifiltration::push_to_line(complex, x, weight)?;
    let barcode = compute_barcode(&filtration, hom_dim)?;
    landscape_eval(&barcode, k, 0.0)
}

/// Node coordinates `snap(lo) + i * snap(step)` up to `hi`.
pub fn uniform_axis(lo: f64, hi: f64, step: f64) -> Result<Vec<f64>> {
    let s = snap(step);
    if !(s > 0.0) || !step.is_finite() {
        return Err(Error::input(format!("resolution {step} must be positive")));
    }
    let start = snap(lo);
    // Slack of 1e-6 steps so that hi is included when (hi - lo) / step is an
    // integer up to snapping.
    let n = ((hi - start) / s + 1e-6).floor();
    if !(n >= 0.0) || n > MAX_GRID_VALUES as f64 {
        return Err(Error::input(format!(
            "resolution {step} gives too many nodes on [{lo}, {hi}]"
        )));
    }
    let axis: Vec<f64> = (0..=n as usize).map(|i| start + i as f64 * s).collect();
    if axis.iter().any(|&v| !lattice::in_range(v)) {
        return Err(Error::input(format!(
            "grid [{lo}, {hi}] exceeds the supported coordinate range"
        )));
    }
    Ok(axis)
}

/// Landscape grid with spacing `resolution` on both axes.
pub fn compute_landscape_grid(
    complex: &BifilteredComplex,
    region: Region,
    resolution: f64,
    k_max: usize,
    weight: WeightVector,
    hom_dim: usize,
) -> Result<LandscapeGrid> {
    compute_landscape_grid_timed(complex, region, resolution, k_max, weight, hom_dim).map(|r| r.0)
}

/// As [`compute_landscape_grid`], also reporting the cost of each diagonal.
pub fn compute_landscape_grid_timed(
    complex: &BifilteredComplex,
    region: Region,
    resolution: f64,
    k_max: usize,
    weight: WeightVector,
    hom_dim: usize,
) -> Result<(LandscapeGrid, Vec<SliceTiming>)> {
    let region = Region::new(region.x1_min, region.x1_max, region.x2_min, region.x2_max)?;
    let axis1 = uniform_axis(region.x1_min, region.x1_max, resolution)?;
    let axis2 = uniform_axis(region.x2_min, region.x2_max, resolution)?;
    landscape_engine(complex, region, resolution, axis1, axis2, k_max, weight, hom_dim)
}

/// Landscape values at the nodes of arbitrary strictly increasing axes.
pub fn compute_landscape_on_axes(
    complex: &BifilteredComplex,
    axis1: Vec<f64>,
    axis2: Vec<f64>,
    k_max: usize,
    weight: WeightVector,
    hom_dim: usize,
) -> Result<LandscapeGrid> {
    for axis in [&axis1, &axis2] {
        if axis.is_empty() || axis.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::input("grid axes must be nonempty and strictly increasing"));
        }
        if axis.iter().any(|v| !v.is_finite()) {
            return Err(Error::input("grid axes must be finite"));
        }
    }
    let gap = |a: &[f64]| a.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max);
    let resolution = gap(&axis1).max(gap(&axis2));
    let (a1, a2) = (axis1[axis1.len() - 1], axis2[axis2.len() - 1]);
    // A single node still needs a nondegenerate region.
    let region = Region {
        x1_min: axis1[0],
        x1_max: a1,
        x2_min: axis2[0],
        x2_max: a2,
    };
    landscape_engine(complex, region, resolution, axis1, axis2, k_max, weight, hom_dim)
        .map(|r| r.0)
}

#[allow(clippy::too_many_arguments)]
fn landscape_engine(
    complex: &BifilteredComplex,
    region: Region,
    resolution: f64,
    axis1: Vec<f64>,
    axis2: Vec<f64>,
    k_max: usize,
    weight: WeightVector,
    hom_dim: usize,
) -> Result<(LandscapeGrid, Vec<SliceTiming>)> {
    if k_max == 0 {
        return Err(Error::input("k_max must be at least 1"));
    }
    let weight = WeightVector::new(weight.w1(), weight.w2())?;
    let (n1, n2) = (axis1.len(), axis2.len());
    if n1.saturating_mul(n2).saturating_mul(k_max) > MAX_GRID_VALUES {
        return Err(Error::input(format!(
            "grid of {n1} x {n2} nodes and depth {k_max} is too large"
        )));
    }
    let u1: Vec<f64> = axis1.iter().map(|&v| snap(weight.w1() * v)).collect();
    let u2: Vec<f64> = axis2.iter().map(|&v| snap(weight.w2() * v)).collect();
    if u1.iter().chain(&u2).any(|&v| !lattice::in_range(v)) {
        return Err(Error::input("grid exceeds the supported coordinate range"));
    }
    let grades = rescaled_grades(complex, &weight)?;

    // Nodes grouped by diagonal. The key u1 - u2 is exact on the lattice.
    let mut diagonals: BTreeMap<i64, Vec<(usize, usize)>> = BTreeMap::new();
    for j in 0..n2 {
        for i in 0..n1 {
            let key = ((u1[i] - u2[j]) * lattice::QUANTUM.recip()) as i64;
            diagonals.entry(key).or_default().push((i, j));
        }
    }
    let diagonals: Vec<Vec<(usize, usize)>> = diagonals.into_values().collect();

    let results: Vec<Result<(Vec<f64>, SliceTiming)>> = diagonals
        .par_iter()
        .map(|nodes| {
            let start = Instant::now();
            let &(bi, bj) = nodes
                .iter()
                .min_by(|a, b| u1[a.0].total_cmp(&u1[b.0]))
                .expect("diagonal groups are nonempty");
            let (p1, p2) = (u1[bi], u2[bj]);
            let times: Vec<f64> = grades.iter().map(|g| entry_time(g, p1, p2)).collect();
            let base = Bigrade::new(axis1[bi], axis2[bj]);
            let filtration = SliceFiltration::from_times(complex, times, base, weight);
            let barcode = compute_barcode(&filtration, hom_dim)?;
            let mut out = vec![0.0; nodes.len() * k_max];
            let mut scratch = Vec::new();
            for (n, &(i, _)) in nodes.iter().enumerate() {
                let tau = u1[i] - p1;
                landscape_column(&barcode.bars, tau, &mut scratch, &mut out[n * k_max..(n + 1) * k_max]);
            }
            let timing = SliceTiming {
                base_point: base,
                n_nodes: nodes.len(),
                n_bars: barcode.len(),
                seconds: start.elapsed().as_secs_f64(),
            };
            Ok((out, timing))
        })
        .collect();

    let mut grid = LandscapeGrid::zeros(region, resolution, k_max, weight, hom_dim, axis1, axis2);
    let mut timings = Vec::with_capacity(diagonals.len());
    for (nodes, r) in diagonals.iter().zip(results) {
        let (vals, timing) = r?;
        for (n, &(i, j)) in nodes.iter().enumerate() {
            for k in 1..=k_max {
                let idx = grid.index(k, j, i);
                grid.values[idx] = vals[n * k_max + k - 1];
            }
        }
        timings.push(timing);
    }
    Ok((grid, timings))
}

/// Multiplies every grade coordinate by the matching weight.
pub fn rescale_bigrades(complex: &BifilteredComplex, weight: WeightVector) -> BifilteredComplex {
    complex
        .map_grades(|g| weight.rescale(g))
        .expect("positive rescaling preserves the complex invariants")
}

/// Rank of `M(a <= b)` read off the landscape: the largest `k` with
/// `lambda(k, (a + b) / 2) >= |(b - a) / 2|_w`.
///
/// `[a, b]` must be a cube in the grid's weighted norm, up to the grid
/// resolution.
pub fn recover_rank_from_landscape(grid: &LandscapeGrid, a: Bigrade, b: Bigrade) -> Result<usize> {
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::input("rank query points must be finite"));
    }
    if !a.le(&b) {
        return Err(Error::input(format!("rank query needs a <= b, got a = {a}, b = {b}")));
    }
    let w = grid.weight;
    let side1 = w.w1() * (b.x1 - a.x1);
    let side2 = w.w2() * (b.x2 - a.x2);
    if (side1 - side2).abs() > grid.resolution {
        return Err(Error::input(format!(
            "[{a}, {b}] is not a cube in the weighted norm (sides {side1} and {side2})"
        )));
    }
    let mid = Bigrade::new(0.5 * (a.x1 + b.x1), 0.5 * (a.x2 + b.x2));
    let half = 0.5 * grid.resolution;
    let r = &grid.region;
    if mid.x1 < r.x1_min - half
        || mid.x1 > r.x1_max + half
        || mid.x2 < r.x2_min - half
        || mid.x2 > r.x2_max + half
    {
        return Err(Error::input(format!("midpoint {mid} lies outside the grid region")));
    }
    let radius = 0.5 * side1.max(side2);
    let (i, j) = grid.nearest(&mid);
    Ok((1..=grid.k_max)
        .take_while(|&k| {
            let v = grid.get(k, j, i);
            v > 0.0 && v >= radius
        })
        .count())
}

/// Smallest Rips scale cutoff that leaves every landscape value on
/// `region` unchanged, for a vertex function with minimum `min_vertex_value`
/// and the distance on the first axis.
pub fn required_max_scale(region: &Region, weight: WeightVector, min_vertex_value: f64) -> f64 {
    let ratio = weight.w2() / weight.w1();
    let reach = region.x1_max.min(ratio * (region.x2_max - min_vertex_value));
    (region.x1_max + reach).max(0.0)
}
