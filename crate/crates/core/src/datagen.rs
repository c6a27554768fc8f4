//! Seeded generators for the point-cloud and density experiments.

use std::f64::consts::{PI, TAU};

use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::bifiltration::{build_closure_bicomplex, BifilteredComplex, DistanceMatrix};
use crate::error::{Error, Result};
use crate::grade::Bigrade;
use crate::rng::stream_rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SampleKind {
    Circles,
    Disc,
    Kde,
}

/// One generated sample: a metric space with a function on its points.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleSet {
    pub kind: SampleKind,
    /// Planar or spatial coordinates, when the sample has them.
    pub points: Option<Vec<Vec<f64>>>,
    pub distances: DistanceMatrix,
    pub vertex_values: Vec<f64>,
    pub label: String,
    pub seed: u64,
    pub stream: u64,
}

/// Which circle gets the low colour value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Colouring {
    /// Large circle 0.5, small circle 1.5.
    A,
    /// Small circle 0.5, large circle 1.5.
    B,
}

impl Colouring {
    pub fn label(&self) -> &'static str {
        match self {
            Colouring::A => "A",
            Colouring::B => "B",
        }
    }
}

/// `n_per_circle` points on each of the circles of radius 1 and 3, small
/// circle first. Noise perturbs radius and colour, never the angle.
pub fn gen_circles(n_per_circle: usize, colouring: Colouring, noise_sigma: f64, seed: u64) -> Result<SampleSet> {
    gen_circles_stream(n_per_circle, colouring, noise_sigma, seed, 0)
}

pub fn gen_circles_stream(
    n_per_circle: usize,
    colouring: Colouring,
    noise_sigma: f64,
    seed: u64,
    stream: u64,
) -> Result<SampleSet> {
    if n_per_circle == 0 {
        return Err(Error::input("need at least one point per circle"));
    }
    if !(noise_sigma >= 0.0) || !noise_sigma.is_finite() {
        return Err(Error::input(format!("noise sigma {noise_sigma} must be nonnegative")));
    }
    let (small_colour, large_colour) = match colouring {
        Colouring::A => (1.5, 0.5),
        Colouring::B => (0.5, 1.5),
    };
    let noise = Normal::new(0.0, noise_sigma).map_err(|e| Error::input(e.to_string()))?;
    let mut rng = stream_rng(seed, stream);
    let mut points = Vec::with_capacity(2 * n_per_circle);
    let mut values = Vec::with_capacity(2 * n_per_circle);
    for (radius, colour) in [(1.0, small_colour), (3.0, large_colour)] {
        for _ in 0..n_per_circle {
            let theta: f64 = rng.random_range(0.0..TAU);
            let (r, c) = if noise_sigma > 0.0 {
                (radius + noise.sample(&mut rng), colour + noise.sample(&mut rng))
            } else {
                (radius, colour)
            };
            points.push(vec![r * theta.cos(), r * theta.sin()]);
            values.push(c);
        }
    }
    let distances = DistanceMatrix::euclidean(&points)?;
    Ok(SampleSet {
        kind: SampleKind::Circles,
        points: Some(points),
        distances,
        vertex_values: values,
        label: colouring.label().to_string(),
        seed,
        stream,
    })
}

/// Constant-curvature model space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Space {
    Hyperbolic,
    Euclidean,
    Elliptic,
}

impl Space {
    pub fn label(&self) -> &'static str {
        match self {
            Space::Hyperbolic => "hyperbolic",
            Space::Euclidean => "euclidean",
            Space::Elliptic => "elliptic",
        }
    }

    /// Geodesic radius at area quantile `u`.
    fn radius(&self, u: f64) -> f64 {
        match self {
            Space::Hyperbolic => (1.0 + u * (1f64.cosh() - 1.0)).acosh(),
            Space::Euclidean => u.sqrt(),
            Space::Elliptic => {
                let c = 1f64.cos();
                (c + u * (1.0 - c)).acos()
            }
        }
    }

    /// Geodesic distance between points in geodesic polar coordinates.
    pub fn distance(&self, (r1, t1): (f64, f64), (r2, t2): (f64, f64)) -> f64 {
        let dt = t1 - t2;
        match self {
            Space::Hyperbolic => {
                let c = r1.cosh() * r2.cosh() - r1.sinh() * r2.sinh() * dt.cos();
                c.max(1.0).acosh()
            }
            Space::Euclidean => (r1 * r1 + r2 * r2 - 2.0 * r1 * r2 * dt.cos()).max(0.0).sqrt(),
            Space::Elliptic => {
                let c = r1.cos() * r2.cos() + r1.sin() * r2.sin() * dt.cos();
                c.clamp(-1.0, 1.0).acos()
            }
        }
    }
}

/// `n` points uniform by area in the radius-1 disc of curvature -1, 0 or 1.
pub fn gen_disc(space: Space, n: usize, seed: u64) -> Result<SampleSet> {
    gen_disc_stream(space, n, seed, 0)
}

pub fn gen_disc_stream(space: Space, n: usize, seed: u64, stream: u64) -> Result<SampleSet> {
    if n == 0 {
        return Err(Error::input("need at least one point"));
    }
    let mut rng = stream_rng(seed, stream);
    let polar: Vec<(f64, f64)> = (0..n)
        .map(|_| {
            let theta: f64 = rng.random_range(0.0..TAU);
            let u: f64 = rng.random();
            (space.radius(u), theta)
        })
        .collect();
    let mut data = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..i {
            let d = space.distance(polar[i], polar[j]);
            data[i * n + j] = d;
            data[j * n + i] = d;
        }
    }
    Ok(SampleSet {
        kind: SampleKind::Disc,
        points: None,
        distances: DistanceMatrix::from_vec(n, data)?,
        vertex_values: vec![0.0; n],
        label: space.label().to_string(),
        seed,
        stream,
    })
}

/// Distance from each point to its `k`-th nearest other point.
pub fn knn_codensity(distances: &DistanceMatrix, k: usize) -> Result<Vec<f64>> {
    let n = distances.len();
    if k == 0 || k >= n {
        return Err(Error::input(format!(
            "k = {k} nearest neighbours needs 1 <= k < n = {n}"
        )));
    }
    let mut row = Vec::with_capacity(n - 1);
    Ok((0..n)
        .map(|i| {
            row.clear();
            row.extend(
                distances
                    .row(i)
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, &d)| d),
            );
            let (_, v, _) = row.select_nth_unstable_by(k - 1, |a, b| a.total_cmp(b));
            *v
        })
        .collect())
}

/// Gaussian kernel density estimate with bandwidth `sigma` at each of `xs`.
pub fn gaussian_kde(data: &[f64], sigma: f64, xs: &[f64]) -> Result<Vec<f64>> {
    if data.is_empty() {
        return Err(Error::input("density estimate of an empty sample"));
    }
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(Error::input(format!("bandwidth {sigma} must be positive")));
    }
    let norm = 1.0 / (sigma * (2.0 * PI).sqrt() * data.len() as f64);
    Ok(xs
        .iter()
        .map(|&x| {
            data.iter()
                .map(|&d| {
                    let z = (x - d) / sigma;
                    (-0.5 * z * z).exp()
                })
                .sum::<f64>()
                * norm
        })
        .collect())
}

/// Triangulated density surface over `xs x sigmas`.
#[derive(Clone, Debug, PartialEq)]
pub struct KdeSurface {
    pub xs: Vec<f64>,
    pub sigmas: Vec<f64>,
    /// `density[s * xs.len() + i]` is the estimate at `xs[i]` with bandwidth
    /// `sigmas[s]`; the vertex id has the same index.
    pub density: Vec<f64>,
    pub triangles: Vec<[usize; 3]>,
    /// `(mean bandwidth, 1 - mean density)` per triangle.
    pub grades: Vec<Bigrade>,
}

impl KdeSurface {
    pub fn n_vertices(&self) -> usize {
        self.xs.len() * self.sigmas.len()
    }

    pub fn to_complex(&self) -> Result<BifilteredComplex> {
        build_closure_bicomplex(self.n_vertices(), &self.triangles, &self.grades)
    }
}

/// Each grid cell is split along its lower-left to upper-right diagonal.
pub fn gen_kde_surface(data: &[f64], sigmas: &[f64], xs: &[f64]) -> Result<KdeSurface> {
    if sigmas.len() < 2 || xs.len() < 2 {
        return Err(Error::input("density surface needs at least two values per axis"));
    }
    for (name, axis) in [("bandwidth", sigmas), ("position", xs)] {
        if axis.windows(2).any(|w| !(w[0] < w[1])) || axis.iter().any(|v| !v.is_finite()) {
            return Err(Error::input(format!("{name} axis must be strictly increasing")));
        }
    }
    let nx = xs.len();
    let mut density = Vec::with_capacity(nx * sigmas.len());
    for &s in sigmas {
        density.extend(gaussian_kde(data, s, xs)?);
    }
    let id = |i: usize, s: usize| s * nx + i;
    let mut triangles = Vec::new();
    let mut grades = Vec::new();
    for s in 0..sigmas.len() - 1 {
        for i in 0..nx - 1 {
            let (ll, lr, ul, ur) = (id(i, s), id(i + 1, s), id(i, s + 1), id(i + 1, s + 1));
            for tri in [[ll, lr, ur], [ll, ul, ur]] {
                let sigma = tri.iter().map(|&v| sigmas[v / nx]).sum::<f64>() / 3.0;
                let p = tri.iter().map(|&v| density[v]).sum::<f64>() / 3.0;
                let mut sorted = tri;
                sorted.sort_unstable();
                triangles.push(sorted);
                grades.push(Bigrade::new(sigma, 1.0 - p));
            }
        }
    }
    Ok(KdeSurface {
        xs: xs.to_vec(),
        sigmas: sigmas.to_vec(),
        density,
        triangles,
        grades,
    })
}

/// Cluster centres, spread and sizes of the synthetic trimodal sample.
pub const TRIMODAL_CENTRES: [f64; 3] = [22.0, 28.0, 34.0];
pub const TRIMODAL_SPREAD: f64 = 1.0;
pub const TRIMODAL_SIZES: [usize; 3] = [9, 7, 6];

/// 22 values drawn from three normal clusters, sorted ascending.
pub fn trimodal_fixture(seed: u64) -> Vec<f64> {
    let mut rng = stream_rng(seed, 0);
    let mut out = Vec::new();
    for (c, n) in TRIMODAL_CENTRES.iter().zip(TRIMODAL_SIZES) {
        let d = Normal::new(*c, TRIMODAL_SPREAD).expect("positive spread");
        out.extend((0..n).map(|_| d.sample(&mut rng)));
    }
    out.sort_by(f64::total_cmp);
    out
}

/// `n` evenly spaced values from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![lo],
        _ => (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}
