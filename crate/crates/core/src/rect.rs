//! Rectangle-decomposable modules: closed-form landscapes, ranks and
//! distances, plus a realization of each rectangle as a small complex.

use serde::{Deserialize, Serialize};

use crate::bifiltration::{BifilteredComplex, Simplex};
use crate::error::{Error, Result};
use crate::grade::{Bigrade, Region, WeightVector};
use crate::landscape::kth_largest;
use crate::lattice::snap;
use crate::multiland::{uniform_axis, LandscapeGrid};

/// Largest barcode accepted by [`wasserstein_pw`].
pub const MAX_WASSERSTEIN_RECTS: usize = 6;

/// The box `[a, b)`: closed at the lower corner, open at the upper one.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub a: Bigrade,
    pub b: Bigrade,
}

impl Rect {
    pub fn new(a: Bigrade, b: Bigrade) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::input("rectangle corners must be finite"));
        }
        if !(a.x1 < b.x1 && a.x2 < b.x2) {
            return Err(Error::input(format!("rectangle [{a}, {b}) is empty")));
        }
        Ok(Rect { a, b })
    }

    pub fn contains(&self, p: &Bigrade) -> bool {
        self.a.le(p) && p.x1 < self.b.x1 && p.x2 < self.b.x2
    }

    pub fn width(&self, axis: usize) -> f64 {
        self.b.coord(axis) - self.a.coord(axis)
    }

    pub fn area(&self) -> f64 {
        self.width(0) * self.width(1)
    }

    /// Half the smaller side.
    pub fn half_min_width(&self) -> f64 {
        0.5 * self.width(0).min(self.width(1))
    }

    /// Area of the intersection with `other`.
    pub fn overlap(&self, other: &Rect) -> f64 {
        let d1 = self.b.x1.min(other.b.x1) - self.a.x1.max(other.a.x1);
        let d2 = self.b.x2.min(other.b.x2) - self.a.x2.max(other.a.x2);
        if d1 > 0.0 && d2 > 0.0 {
            d1 * d2
        } else {
            0.0
        }
    }

    pub fn translate(&self, v: &Bigrade) -> Rect {
        Rect {
            a: self.a.add(v),
            b: self.b.add(v),
        }
    }

    /// Landscape of the single summand at `x`.
    pub fn tent(&self, x: &Bigrade) -> f64 {
        let v = (x.x1 - self.a.x1)
            .min(x.x2 - self.a.x2)
            .min(self.b.x1 - x.x1)
            .min(self.b.x2 - x.x2);
        v.max(0.0)
    }

    /// Weighted landscape of the single summand, evaluated on the
    /// rescaled arithmetic lattice like the complex-based engine.
    pub fn tent_weighted(&self, x: &Bigrade, weight: &WeightVector) -> f64 {
        let (u1, u2) = weight.lattice_coords(x);
        let (a1, a2) = weight.lattice_coords(&self.a);
        let (b1, b2) = weight.lattice_coords(&self.b);
        let v = (u1 - a1).min(u2 - a2).min(b1 - u1).min(b2 - u2);
        v.max(0.0)
    }
}

/// A finite multiset of rectangles.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RectangleBarcode {
    pub rects: Vec<Rect>,
}

impl RectangleBarcode {
    pub fn new(rects: Vec<Rect>) -> Self {
        RectangleBarcode { rects }
    }

    pub fn len(&self) -> usize {
        self.rects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rects.is_empty()
    }

    /// Smallest region holding every rectangle, if any.
    pub fn bounds(&self) -> Option<Region> {
        let first = self.rects.first()?;
        let mut r = Region {
            x1_min: first.a.x1,
            x1_max: first.b.x1,
            x2_min: first.a.x2,
            x2_max: first.b.x2,
        };
        for q in &self.rects[1..] {
            r.x1_min = r.x1_min.min(q.a.x1);
            r.x2_min = r.x2_min.min(q.a.x2);
            r.x1_max = r.x1_max.max(q.b.x1);
            r.x2_max = r.x2_max.max(q.b.x2);
        }
        Some(r)
    }
}

/// `k`-th largest single-summand landscape at `x`.
pub fn rect_landscape(rects: &RectangleBarcode, k: usize, x: &Bigrade) -> Result<f64> {
    if k == 0 {
        return Err(Error::input("landscape depth k must be at least 1"));
    }
    let mut v: Vec<f64> = rects.rects.iter().map(|r| r.tent(x)).collect();
    Ok(kth_largest(&mut v, k))
}

/// Weighted variant of [`rect_landscape`] on the arithmetic lattice.
pub fn rect_landscape_weighted(
    rects: &RectangleBarcode,
    k: usize,
    x: &Bigrade,
    weight: WeightVector,
) -> Result<f64> {
    if k == 0 {
        return Err(Error::input("landscape depth k must be at least 1"));
    }
    let mut v: Vec<f64> = rects.rects.iter().map(|r| r.tent_weighted(x, &weight)).collect();
    Ok(kth_largest(&mut v, k))
}

/// Number of rectangles containing both `a` and `b`.
pub fn rect_rank(rects: &RectangleBarcode, a: &Bigrade, b: &Bigrade) -> Result<usize> {
    if !a.le(b) {
        return Err(Error::input(format!("rank query needs a <= b, got a = {a}, b = {b}")));
    }
    Ok(rects.rects.iter().filter(|r| r.contains(a) && r.contains(b)).count())
}

/// Interleaving distance between two rectangle modules; `None` is the zero
/// module.
pub fn rect_interleaving_distance(i: &Rect, j: Option<&Rect>) -> f64 {
    match j {
        None => i.half_min_width(),
        Some(j) => {
            let corners = (i.a.sub(&j.a).max_norm()).max(i.b.sub(&j.b).max_norm());
            corners.min(i.half_min_width().max(j.half_min_width()))
        }
    }
}

/// Persistence-weighted `q`-Wasserstein distance by exhaustive search over
/// partial matchings. Each matched pair costs `|I ∪ J| d(I, J)^q`, each
/// unmatched rectangle `|I| d(I, 0)^q`.
pub fn wasserstein_pw(a: &RectangleBarcode, b: &RectangleBarcode, q: f64) -> Result<f64> {
    if !(q >= 1.0) || !q.is_finite() {
        return Err(Error::input(format!("exponent q = {q} must be finite and at least 1")));
    }
    if a.len() > MAX_WASSERSTEIN_RECTS || b.len() > MAX_WASSERSTEIN_RECTS {
        return Err(Error::input(format!(
            "exhaustive matching supports at most {MAX_WASSERSTEIN_RECTS} rectangles per barcode"
        )));
    }
    let unmatched = |r: &Rect| r.area() * rect_interleaving_distance(r, None).powf(q);
    let pair = |r: &Rect, s: &Rect| {
        let union = r.area() + s.area() - r.overlap(s);
        union * rect_interleaving_distance(r, Some(s)).powf(q)
    };

    fn search(
        i: usize,
        used: u32,
        a: &[Rect],
        b: &[Rect],
        cost: f64,
        best: &mut f64,
        unmatched: &dyn Fn(&Rect) -> f64,
        pair: &dyn Fn(&Rect, &Rect) -> f64,
    ) {
        if i == a.len() {
            let rest: f64 = b
                .iter()
                .enumerate()
                .filter(|(j, _)| used & (1 << j) == 0)
                .map(|(_, s)| unmatched(s))
                .sum();
            *best = best.min(cost + rest);
            return;
        }
        search(i + 1, used, a, b, cost + unmatched(&a[i]), best, unmatched, pair);
        for j in 0..b.len() {
            if used & (1 << j) == 0 {
                let c = cost + pair(&a[i], &b[j]);
                search(i + 1, used | (1 << j), a, b, c, best, unmatched, pair);
            }
        }
    }

    let mut best = f64::INFINITY;
    search(0, 0, &a.rects, &b.rects, 0.0, &mut best, &unmatched, &pair);
    Ok(best.powf(1.0 / q))
}

/// Translates every rectangle by `v`.
pub fn shift_rects(rects: &RectangleBarcode, v: &Bigrade) -> RectangleBarcode {
    RectangleBarcode::new(rects.rects.iter().map(|r| r.translate(v)).collect())
}

/// Closed-form landscape grid with the same node layout as
/// [`crate::multiland::compute_landscape_grid`].
pub fn rect_landscape_grid(
    rects: &RectangleBarcode,
    region: Region,
    resolution: f64,
    k_max: usize,
    weight: WeightVector,
) -> Result<LandscapeGrid> {
    if k_max == 0 {
        return Err(Error::input("k_max must be at least 1"));
    }
    let region = Region::new(region.x1_min, region.x1_max, region.x2_min, region.x2_max)?;
    let weight = WeightVector::new(weight.w1(), weight.w2())?;
    let axis1 = uniform_axis(region.x1_min, region.x1_max, resolution)?;
    let axis2 = uniform_axis(region.x2_min, region.x2_max, resolution)?;
    let (n1, n2) = (axis1.len(), axis2.len());
    let mut grid = LandscapeGrid::zeros(region, resolution, k_max, weight, 1, axis1, axis2);
    let mut tents = Vec::with_capacity(rects.len());
    for j in 0..n2 {
        for i in 0..n1 {
            let x = grid.node(i, j);
            tents.clear();
            tents.extend(rects.rects.iter().map(|r| r.tent_weighted(&x, &weight)));
            tents.sort_unstable_by(|p, q| q.total_cmp(p));
            for k in 1..=k_max.min(tents.len()) {
                grid.values[((k - 1) * n2 + j) * n1 + i] = tents[k - 1];
            }
        }
    }
    Ok(grid)
}

/// A complex whose first homology is the given rectangle-decomposable module.
///
/// Each rectangle `[a, b)` becomes a square whose boundary enters at `a`;
/// its diagonal and two triangles enter at the antichain
/// `{(b1, a2), (a1, b2)}`, killing the loop as soon as either upper side is
/// reached.
pub fn rects_to_complex(rects: &RectangleBarcode) -> Result<BifilteredComplex> {
    let mut simplices = Vec::with_capacity(11 * rects.len());
    for (n, r) in rects.rects.iter().enumerate() {
        let v = 4 * n;
        let low = vec![r.a];
        let high = vec![Bigrade::new(r.b.x1, r.a.x2), Bigrade::new(r.a.x1, r.b.x2)];
        for i in 0..4 {
            simplices.push(Simplex::new(vec![v + i], low.clone())?);
        }
        for (x, y) in [(0, 1), (1, 2), (2, 3), (0, 3)] {
            simplices.push(Simplex::new(vec![v + x, v + y], low.clone())?);
        }
        simplices.push(Simplex::new(vec![v, v + 2], high.clone())?);
        simplices.push(Simplex::new(vec![v, v + 1, v + 2], high.clone())?);
        simplices.push(Simplex::new(vec![v, v + 2, v + 3], high)?);
    }
    BifilteredComplex::new(4 * rects.len(), simplices)
}

/// Snaps both corners to the arithmetic lattice.
pub fn snap_rect(r: &Rect) -> Rect {
    Rect {
        a: Bigrade::new(snap(r.a.x1), snap(r.a.x2)),
        b: Bigrade::new(snap(r.b.x1), snap(r.b.x2)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a1: f64, a2: f64, b1: f64, b2: f64) -> Rect {
        Rect::new(Bigrade::new(a1, a2), Bigrade::new(b1, b2)).unwrap()
    }

    fn m() -> RectangleBarcode {
        RectangleBarcode::new(vec![r(0.0, 1.0, 10.0, 2.0), r(4.0, 1.0, 6.0, 2.0)])
    }

    fn n() -> RectangleBarcode {
        RectangleBarcode::new(vec![r(0.0, 1.0, 6.0, 2.0), r(4.0, 1.0, 10.0, 2.0)])
    }

    #[test]
    fn single_rect_landscape() {
        let b = RectangleBarcode::new(vec![r(0.0, 1.0, 10.0, 2.0)]);
        assert_eq!(rect_landscape(&b, 1, &Bigrade::new(5.0, 1.5)).unwrap(), 0.5);
        assert_eq!(rect_landscape(&b, 1, &Bigrade::new(11.0, 1.5)).unwrap(), 0.0);
    }

    #[test]
    fn ranks_distinguish_equal_landscapes() {
        assert_eq!(rect_rank(&m(), &Bigrade::new(5.0, 1.2), &Bigrade::new(5.5, 1.8)).unwrap(), 2);
        let (a, b) = (Bigrade::new(1.0, 1.5), Bigrade::new(9.0, 1.5));
        assert_eq!(rect_rank(&m(), &a, &b).unwrap(), 1);
        assert_eq!(rect_rank(&n(), &a, &b).unwrap(), 0);
        assert_eq!(rect_rank(&RectangleBarcode::default(), &a, &b).unwrap(), 0);
        assert!(rect_rank(&m(), &b, &a).is_err());
    }

    #[test]
    fn interleaving_examples() {
        let i = r(0.0, 0.0, 2.0, 2.0);
        assert_eq!(rect_interleaving_distance(&i, Some(&r(1.0, 1.0, 3.0, 3.0))), 1.0);
        assert_eq!(rect_interleaving_distance(&i, Some(&i)), 0.0);
        assert_eq!(rect_interleaving_distance(&i, None), 1.0);
    }

    #[test]
    fn wasserstein_examples() {
        let a = RectangleBarcode::new(vec![r(0.0, 0.0, 2.0, 2.0)]);
        let e = RectangleBarcode::default();
        assert_eq!(wasserstein_pw(&a, &a, 2.0).unwrap(), 0.0);
        for q in [1.0, 2.0, 3.0] {
            let d = wasserstein_pw(&a, &e, q).unwrap();
            assert!((d - 4f64.powf(1.0 / q)).abs() < 1e-12);
        }
        let big = RectangleBarcode::new(vec![r(0.0, 0.0, 1.0, 1.0); 7]);
        assert!(wasserstein_pw(&big, &e, 2.0).is_err());
    }

    #[test]
    fn shift_translates() {
        let b = RectangleBarcode::new(vec![r(0.0, 0.0, 2.0, 2.0)]);
        assert_eq!(shift_rects(&b, &Bigrade::new(0.0, 0.0)), b);
        assert_eq!(
            shift_rects(&b, &Bigrade::new(1.0, 0.0)).rects[0],
            r(1.0, 0.0, 3.0, 2.0)
        );
    }

    #[test]
    fn gadget_is_monotone() {
        let c = rects_to_complex(&m()).unwrap();
        assert!(crate::bifiltration::validate_monotone(&c).is_ok());
        assert_eq!(c.len(), 22);
    }

    #[test]
    fn empty_rect_rejected() {
        assert!(Rect::new(Bigrade::new(0.0, 0.0), Bigrade::new(0.0, 1.0)).is_err());
    }
}
