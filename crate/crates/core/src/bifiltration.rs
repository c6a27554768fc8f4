//! Two-parameter filtered simplicial complexes.
//!
//! A [`BifilteredComplex`] stores every simplex together with the antichain of
//! bigrades at which it enters. One-critical complexes (function-Rips) carry a
//! single grade per simplex; the closure construction over a graded
//! triangulation produces multi-critical faces.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::grade::{minimal_elements, Bigrade, WeightVector};
use crate::lattice;

/// A simplex with its minimal entry grades.
#[derive(Clone, Debug, PartialEq)]
pub struct Simplex {
    vertices: Vec<usize>,
    grades: Vec<Bigrade>,
}

impl Simplex {
    /// Vertices must be strictly increasing; the grades are reduced to their
    /// minimal elements.
    pub fn new(vertices: Vec<usize>, grades: Vec<Bigrade>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::input("simplex without vertices"));
        }
        if vertices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::input(format!(
                "simplex vertices {vertices:?} are not strictly increasing"
            )));
        }
        if grades.is_empty() {
            return Err(Error::input(format!("simplex {vertices:?} has no grade")));
        }
        if let Some(g) = grades.iter().find(|g| !g.is_finite()) {
            return Err(Error::input(format!("simplex {vertices:?} has non-finite grade {g}")));
        }
        Ok(Simplex {
            vertices,
            grades: minimal_elements(&grades),
        })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn grades(&self) -> &[Bigrade] {
        &self.grades
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Whether the simplex is present at parameter `p`.
    pub fn present_at(&self, p: &Bigrade) -> bool {
        self.grades.iter().any(|g| g.le(p))
    }
}

/// A face-closed two-parameter filtered simplicial complex.
///
/// Immutable once built. Face and coface incidences are precomputed so that
/// many slices can be reduced against the same complex.
#[derive(Clone, Debug, PartialEq)]
pub struct BifilteredComplex {
    n_vertices: usize,
    simplices: Vec<Simplex>,
    facets: Vec<Vec<usize>>,
    cofacets: Vec<Vec<usize>>,
    max_dim: usize,
}

impl BifilteredComplex {
    /// Builds a complex, checking vertex ranges and closure under faces.
    ///
    /// Monotonicity is not enforced here; see [`validate_monotone`] and
    /// [`BifilteredComplex::new_monotone`].
    pub fn new(n_vertices: usize, simplices: Vec<Simplex>) -> Result<Self> {
        let mut index: HashMap<&[usize], usize> = HashMap::with_capacity(simplices.len());
        let mut max_dim = 0;
        for (i, s) in simplices.iter().enumerate() {
            if let Some(&v) = s.vertices.iter().find(|&&v| v >= n_vertices) {
                return Err(Error::input(format!(
                    "vertex {v} out of range (complex has {n_vertices} vertices)"
                )));
            }
            if index.insert(&s.vertices, i).is_some() {
                return Err(Error::input(format!("duplicate simplex {:?}", s.vertices)));
            }
            max_dim = max_dim.max(s.dim());
        }

        let mut facets = vec![Vec::new(); simplices.len()];
        let mut cofacets = vec![Vec::new(); simplices.len()];
        let mut face = Vec::new();
        for (i, s) in simplices.iter().enumerate() {
            if s.vertices.len() == 1 {
                continue;
            }
            let mut list = Vec::with_capacity(s.vertices.len());
            for skip in 0..s.vertices.len() {
                face.clear();
                face.extend(
                    s.vertices
                        .iter()
                        .enumerate()
                        .filter(|&(j, _)| j != skip)
                        .map(|(_, &v)| v),
                );
                match index.get(face.as_slice()) {
                    Some(&f) => {
                        list.push(f);
                        cofacets[f].push(i);
                    }
                    None => {
                        return Err(Error::input(format!(
                            "complex is not closed under faces: {:?} is missing face {:?}",
                            s.vertices, face
                        )))
                    }
                }
            }
            facets[i] = list;
        }
        drop(index);

        Ok(BifilteredComplex {
            n_vertices,
            simplices,
            facets,
            cofacets,
            max_dim,
        })
    }

    /// Builds a complex and additionally rejects monotonicity violations.
    pub fn new_monotone(n_vertices: usize, simplices: Vec<Simplex>) -> Result<Self> {
        let complex = Self::new(n_vertices, simplices)?;
        let report = validate_monotone(&complex);
        if let Some(&(f, c)) = report.violations.first() {
            return Err(Error::input(format!(
                "complex is not monotone: face {:?} enters after coface {:?} ({} violations)",
                complex.simplices[f].vertices,
                complex.simplices[c].vertices,
                report.violations.len()
            )));
        }
        Ok(complex)
    }

    pub fn empty() -> Self {
        BifilteredComplex {
            n_vertices: 0,
            simplices: Vec::new(),
            facets: Vec::new(),
            cofacets: Vec::new(),
            max_dim: 0,
        }
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn simplex(&self, i: usize) -> &Simplex {
        &self.simplices[i]
    }

    /// Indices of the codimension-one faces of simplex `i`.
    pub fn facets(&self, i: usize) -> &[usize] {
        &self.facets[i]
    }

    /// Indices of the codimension-one cofaces of simplex `i`.
    pub fn cofacets(&self, i: usize) -> &[usize] {
        &self.cofacets[i]
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    /// Number of simplices of dimension `dim`.
    pub fn count_dim(&self, dim: usize) -> usize {
        self.simplices.iter().filter(|s| s.dim() == dim).count()
    }

    /// Whether every simplex has exactly one minimal grade.
    pub fn is_one_critical(&self) -> bool {
        self.simplices.iter().all(|s| s.grades.len() == 1)
    }

    /// Componentwise minimum and maximum over all grades, if any.
    pub fn grade_bounds(&self) -> Option<(Bigrade, Bigrade)> {
        let mut it = self.simplices.iter().flat_map(|s| s.grades.iter());
        let first = *it.next()?;
        Some(it.fold((first, first), |(lo, hi), g| {
            (
                Bigrade::new(lo.x1.min(g.x1), lo.x2.min(g.x2)),
                Bigrade::new(hi.x1.max(g.x1), hi.x2.max(g.x2)),
            )
        }))
    }

    /// Same simplices with every grade replaced by `f(grade)`, antichains
    /// re-minimized.
    pub fn map_grades(&self, mut f: impl FnMut(&Bigrade) -> Bigrade) -> Result<Self> {
        let simplices = self
            .simplices
            .iter()
            .map(|s| Simplex::new(s.vertices.clone(), s.grades.iter().map(&mut f).collect()))
            .collect::<Result<Vec<_>>>()?;
        Ok(BifilteredComplex {
            n_vertices: self.n_vertices,
            simplices,
            facets: self.facets.clone(),
            cofacets: self.cofacets.clone(),
            max_dim: self.max_dim,
        })
    }

    /// Disjoint union; vertex ids of `other` are offset by `self.n_vertices()`.
    pub fn disjoint_union(&self, other: &BifilteredComplex) -> Result<Self> {
        let offset = self.n_vertices;
        let mut simplices = self.simplices.clone();
        for s in &other.simplices {
            simplices.push(Simplex::new(
                s.vertices.iter().map(|v| v + offset).collect(),
                s.grades.clone(),
            )?);
        }
        BifilteredComplex::new(self.n_vertices + other.n_vertices, simplices)
    }
}

/// A symmetric matrix of pairwise distances with zero diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DistanceMatrix {
    /// From full rows. Rejects non-square, asymmetric, negative, NaN or
    /// nonzero-diagonal input.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::input(format!(
                    "distance matrix row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            data.extend_from_slice(row);
        }
        Self::from_vec(n, data)
    }

    pub fn from_vec(n: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::input("distance matrix is not square"));
        }
        for i in 0..n {
            if data[i * n + i] != 0.0 {
                return Err(Error::input(format!("distance matrix diagonal entry {i} is nonzero")));
            }
            for j in 0..n {
                let d = data[i * n + j];
                if d.is_nan() || d < 0.0 || !d.is_finite() {
                    return Err(Error::input(format!(
                        "distance matrix entry ({i}, {j}) = {d} is not a finite nonnegative number"
                    )));
                }
                if d != data[j * n + i] {
                    return Err(Error::input(format!(
                        "distance matrix is asymmetric at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(DistanceMatrix { n, data })
    }

    /// Euclidean distances between points.
    pub fn euclidean(points: &[Vec<f64>]) -> Result<Self> {
        let n = points.len();
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                if points[i].len() != points[j].len() {
                    return Err(Error::input("points have different dimensions"));
                }
                let d = points[i]
                    .iter()
                    .zip(&points[j])
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum::<f64>()
                    .sqrt();
                data[i * n + j] = d;
                data[j * n + i] = d;
            }
        }
        Self::from_vec(n, data)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn max_entry(&self) -> f64 {
        self.data.iter().copied().fold(0.0, f64::max)
    }
}

/// Function-Rips bifiltration: the simplex `s` enters at
/// `(diam(s), max_{v in s} vertex_values[v])`.
///
/// Only simplices with diameter at most `max_scale` and dimension at most
/// `max_dim` are included.
pub fn build_function_rips(
    distances: &DistanceMatrix,
    vertex_values: &[f64],
    max_scale: f64,
    max_dim: usize,
) -> Result<BifilteredComplex> {
    let n = distances.len();
    if vertex_values.len() != n {
        return Err(Error::input(format!(
            "{} vertex values for {n} points",
            vertex_values.len()
        )));
    }
    if let Some(v) = vertex_values.iter().find(|v| !v.is_finite()) {
        return Err(Error::input(format!("vertex value {v} is not finite")));
    }
    if max_scale.is_nan() {
        return Err(Error::input("max_scale is NaN"));
    }

    // Higher-index neighbours within max_scale.
    let neighbours: Vec<Vec<usize>> = (0..n)
        .map(|i| ((i + 1)..n).filter(|&j| distances.get(i, j) <= max_scale).collect())
        .collect();

    let mut simplices = Vec::new();
    let mut stack: Vec<usize> = Vec::with_capacity(max_dim + 1);
    fn extend(
        stack: &mut Vec<usize>,
        candidates: &[usize],
        diam: f64,
        value: f64,
        distances: &DistanceMatrix,
        vertex_values: &[f64],
        neighbours: &[Vec<usize>],
        max_dim: usize,
        out: &mut Vec<Simplex>,
    ) {
        out.push(Simplex {
            vertices: stack.clone(),
            grades: vec![Bigrade::new(diam, value)],
        });
        if stack.len() > max_dim {
            return;
        }
        for (ci, &v) in candidates.iter().enumerate() {
            let next: Vec<usize> = candidates[ci + 1..]
                .iter()
                .copied()
                .filter(|w| neighbours[v].binary_search(w).is_ok())
                .collect();
            let d = stack
                .iter()
                .map(|&u| distances.get(u, v))
                .fold(diam, f64::max);
            stack.push(v);
            extend(
                stack,
                &next,
                d,
                value.max(vertex_values[v]),
                distances,
                vertex_values,
                neighbours,
                max_dim,
                out,
            );
            stack.pop();
        }
    }
    for v in 0..n {
        stack.push(v);
        extend(
            &mut stack,
            &neighbours[v],
            0.0,
            vertex_values[v],
            distances,
            vertex_values,
            &neighbours,
            max_dim,
            &mut simplices,
        );
        stack.pop();
    }
    simplices.sort_by(|a, b| {
        a.vertices
            .len()
            .cmp(&b.vertices.len())
            .then_with(|| a.vertices.cmp(&b.vertices))
    });
    BifilteredComplex::new(n, simplices)
}

/// Simplicial closure of a graded set of triangles: each face enters at the
/// minimal grades among the triangles containing it.
pub fn build_closure_bicomplex(
    n_vertices: usize,
    triangles: &[[usize; 3]],
    triangle_grades: &[Bigrade],
) -> Result<BifilteredComplex> {
    if triangles.len() != triangle_grades.len() {
        return Err(Error::input(format!(
            "{} triangles but {} grades",
            triangles.len(),
            triangle_grades.len()
        )));
    }
    let mut faces: HashMap<Vec<usize>, Vec<Bigrade>> = HashMap::new();
    let mut seen_triangles = HashMap::new();
    for (t, g) in triangles.iter().zip(triangle_grades) {
        if !g.is_finite() {
            return Err(Error::input(format!("triangle {t:?} has non-finite grade")));
        }
        let mut v = *t;
        v.sort_unstable();
        if v[0] == v[1] || v[1] == v[2] {
            return Err(Error::input(format!("degenerate triangle {t:?}")));
        }
        if v[2] >= n_vertices {
            return Err(Error::input(format!(
                "triangle {t:?} uses vertex outside 0..{n_vertices}"
            )));
        }
        if seen_triangles.insert(v, ()).is_some() {
            return Err(Error::input(format!("duplicate triangle {t:?}")));
        }
        let subsets: [&[usize]; 6] = [
            &[v[0]],
            &[v[1]],
            &[v[2]],
            &[v[0], v[1]],
            &[v[0], v[2]],
            &[v[1], v[2]],
        ];
        for s in subsets {
            faces.entry(s.to_vec()).or_default().push(*g);
        }
        faces.insert(v.to_vec(), vec![*g]);
    }
    if let Some(orphan) = (0..n_vertices).find(|v| !faces.contains_key(&vec![*v])) {
        return Err(Error::input(format!(
            "vertex {orphan} belongs to no triangle; its entry grade is undefined"
        )));
    }
    let mut simplices = faces
        .into_iter()
        .map(|(vertices, grades)| Simplex::new(vertices, grades))
        .collect::<Result<Vec<_>>>()?;
    simplices.sort_by(|a, b| {
        a.vertices
            .len()
            .cmp(&b.vertices.len())
            .then_with(|| a.vertices.cmp(&b.vertices))
    });
    BifilteredComplex::new(n_vertices, simplices)
}

/// Result of [`validate_monotone`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MonotoneReport {
    /// `(face, coface)` index pairs where some coface grade is not above any
    /// face grade.
    pub violations: Vec<(usize, usize)>,
}

impl MonotoneReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that every face enters no later than each of its cofaces.
pub fn validate_monotone(complex: &BifilteredComplex) -> MonotoneReport {
    let mut violations = Vec::new();
    for (c, coface) in complex.simplices.iter().enumerate() {
        for &f in &complex.facets[c] {
            let face = &complex.simplices[f];
            let ok = coface
                .grades
                .iter()
                .all(|g| face.grades.iter().any(|h| h.le(g)));
            if !ok {
                violations.push((f, c));
            }
        }
    }
    MonotoneReport { violations }
}

/// Increasing grids on both axes, rounded to the arithmetic lattice.
#[derive(Clone, Debug, PartialEq)]
pub struct GridFunction {
    axis1: Vec<f64>,
    axis2: Vec<f64>,
}

impl GridFunction {
    pub fn new(axis1: Vec<f64>, axis2: Vec<f64>) -> Result<Self> {
        let snap_axis = |axis: Vec<f64>, name: &str| -> Result<Vec<f64>> {
            if axis.is_empty() {
                return Err(Error::input(format!("grid axis {name} is empty")));
            }
            let snapped: Vec<f64> = axis.iter().map(|&v| lattice::snap(v)).collect();
            if snapped.iter().any(|v| !lattice::in_range(*v))
                || snapped.windows(2).any(|w| w[0] >= w[1])
            {
                return Err(Error::input(format!(
                    "grid axis {name} must be finite and strictly increasing"
                )));
            }
            Ok(snapped)
        };
        Ok(GridFunction {
            axis1: snap_axis(axis1, "x1")?,
            axis2: snap_axis(axis2, "x2")?,
        })
    }

    /// Evenly spaced values `start, start + step, ...` up to and including
    /// the first value at or beyond `end` on each axis.
    pub fn uniform(lower: Bigrade, upper: Bigrade, step: f64) -> Result<Self> {
        if !(step > 0.0) {
            return Err(Error::input("grid step must be positive"));
        }
        let axis = |a: f64, b: f64| {
            let step = lattice::snap(step);
            let start = lattice::snap(a);
            let n = ((b - start) / step).ceil().max(0.0) as usize;
            (0..=n).map(|i| start + i as f64 * step).collect::<Vec<_>>()
        };
        GridFunction::new(axis(lower.x1, upper.x1), axis(lower.x2, upper.x2))
    }

    pub fn axis1(&self) -> &[f64] {
        &self.axis1
    }

    pub fn axis2(&self) -> &[f64] {
        &self.axis2
    }

    /// Largest gap between consecutive values on either axis.
    pub fn size(&self) -> f64 {
        self.axis1
            .windows(2)
            .chain(self.axis2.windows(2))
            .map(|w| w[1] - w[0])
            .fold(0.0, f64::max)
    }

    /// Smallest grid point coordinatewise at or above `g`.
    pub fn ceil(&self, g: &Bigrade) -> Result<Bigrade> {
        let up = |axis: &[f64], v: f64| -> Result<f64> {
            let i = axis.partition_point(|&a| a < v);
            axis.get(i).copied().ok_or_else(|| {
                Error::input(format!("grade coordinate {v} lies above the grid"))
            })
        };
        Ok(Bigrade::new(up(&self.axis1, g.x1)?, up(&self.axis2, g.x2)?))
    }

    /// The discretized complex: every grade moved up to the grid.
    pub fn snap_up(&self, complex: &BifilteredComplex) -> Result<BifilteredComplex> {
        let mut err = None;
        let snapped = complex.map_grades(|g| match self.ceil(g) {
            Ok(c) => c,
            Err(e) => {
                err.get_or_insert(e);
                *g
            }
        })?;
        match err {
            Some(e) => Err(e),
            None => Ok(snapped),
        }
    }
}

/// A complex restricted to a weighted diagonal line.
///
/// The line through `base_point` in direction `(1/w1, 1/w2)` is parametrized
/// by `t`, so that the weighted max-norm distance between the points at `s`
/// and `t` is `|s - t|`. Simplex `i` is present from `times[i]` on.
#[derive(Clone, Debug)]
pub struct SliceFiltration<'a> {
    complex: &'a BifilteredComplex,
    times: Vec<f64>,
    base_point: Bigrade,
    weight: WeightVector,
}

impl<'a> SliceFiltration<'a> {
    pub(crate) fn from_times(
        complex: &'a BifilteredComplex,
        times: Vec<f64>,
        base_point: Bigrade,
        weight: WeightVector,
    ) -> Self {
        SliceFiltration {
            complex,
            times,
            base_point,
            weight,
        }
    }

    pub fn complex(&self) -> &'a BifilteredComplex {
        self.complex
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn time(&self, i: usize) -> f64 {
        self.times[i]
    }

    /// `(simplex index, entry time)` pairs in storage order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.times.iter().copied().enumerate()
    }

    pub fn base_point(&self) -> Bigrade {
        self.base_point
    }

    pub fn weight(&self) -> WeightVector {
        self.weight
    }

    /// Position on the line at time `t`.
    pub fn point_at(&self, t: f64) -> Bigrade {
        self.base_point.add(&Bigrade::new(t / self.weight.w1(), t / self.weight.w2()))
    }
}

/// Entry time of a grade antichain on the weighted diagonal through the
/// lattice point `(p1, p2)` in rescaled coordinates.
#[inline]
pub(crate) fn entry_time(rescaled_grades: &[(f64, f64)], p1: f64, p2: f64) -> f64 {
    rescaled_grades
        .iter()
        .map(|&(a1, a2)| (a1 - p1).max(a2 - p2))
        .fold(f64::INFINITY, f64::min)
}

/// Rescaled lattice coordinates of every grade of every simplex.
pub(crate) fn rescaled_grades(
    complex: &BifilteredComplex,
    weight: &WeightVector,
) -> Result<Vec<Vec<(f64, f64)>>> {
    complex
        .simplices
        .iter()
        .map(|s| {
            s.grades
                .iter()
                .map(|g| {
                    let (a, b) = weight.lattice_coords(g);
                    if lattice::in_range(a) && lattice::in_range(b) {
                        Ok((a, b))
                    } else {
                        Err(Error::input(format!(
                            "grade {g} exceeds the supported coordinate range (|x| < {})",
                            lattice::MAX_EXACT
                        )))
                    }
                })
                .collect()
        })
        .collect()
}

/// Restricts the complex to the weighted diagonal through `base_point`.
///
/// The entry time of a simplex is `min_a max_i w_i (a_i - p_i)` over its
/// grades `a`, evaluated on the arithmetic lattice.
pub fn push_to_line<'a>(
    complex: &'a BifilteredComplex,
    base_point: Bigrade,
    weight: WeightVector,
) -> Result<SliceFiltration<'a>> {
    // Re-validate: a WeightVector can only be built normalized, but keep the
    // contract explicit for deserialized values.
    let weight = WeightVector::new(weight.w1(), weight.w2())?;
    if !base_point.is_finite() {
        return Err(Error::input(format!("base point {base_point} is not finite")));
    }
    let (p1, p2) = weight.lattice_coords(&base_point);
    if !lattice::in_range(p1) || !lattice::in_range(p2) {
        return Err(Error::input(format!(
            "base point {base_point} exceeds the supported coordinate range"
        )));
    }
    let rescaled = rescaled_grades(complex, &weight)?;
    let times = rescaled.iter().map(|g| entry_time(g, p1, p2)).collect();
    Ok(SliceFiltration::from_times(complex, times, base_point, weight))
}
