//! Statistics on landscape grids and on real-valued functionals of them.

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal, StudentsT};

use crate::error::{Error, Result};
use crate::grade::Region;
use crate::multiland::LandscapeGrid;
use crate::rng::stream_rng;

fn check_shapes(a: &LandscapeGrid, b: &LandscapeGrid) -> Result<()> {
    if !a.same_shape(b) {
        return Err(Error::input(
            "landscape grids differ in region, resolution, depth, weight or dimension",
        ));
    }
    Ok(())
}

/// Pointwise mean. Uses a running mean so that averaging copies of one grid
/// returns it unchanged.
pub fn mean_landscape(grids: &[LandscapeGrid]) -> Result<LandscapeGrid> {
    let first = grids
        .first()
        .ok_or_else(|| Error::input("mean of an empty list of grids"))?;
    let mut out = first.clone();
    for (n, g) in grids.iter().enumerate().skip(1) {
        check_shapes(first, g)?;
        let n = (n + 1) as f64;
        for (m, &v) in out.values.iter_mut().zip(&g.values) {
            *m += (v - *m) / n;
        }
    }
    Ok(out)
}

/// `q`-landscape distance: a Riemann sum with cell area `resolution^2` and
/// counting measure on `k`, or the sup norm when `q` is infinite.
pub fn q_distance(g1: &LandscapeGrid, g2: &LandscapeGrid, q: f64) -> Result<f64> {
    check_shapes(g1, g2)?;
    if !(q >= 1.0) {
        return Err(Error::input(format!("exponent q = {q} must be at least 1")));
    }
    let diffs = g1.values.iter().zip(&g2.values).map(|(a, b)| (a - b).abs());
    if q == f64::INFINITY {
        return Ok(diffs.fold(0.0, f64::max));
    }
    let cell = g1.resolution * g1.resolution;
    let sum: f64 = diffs.map(|d| d.powf(q)).sum();
    Ok((sum * cell).powf(1.0 / q))
}

/// Integration domain `{k} x box` of a linear functional.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FunctionalSpec {
    pub k: usize,
    pub domain: Region,
}

/// Riemann sum of level `k` over the nodes inside the box, each weighted
/// by `resolution^2`; nodes on the box boundary count.
pub fn functional_integral(grid: &LandscapeGrid, spec: &FunctionalSpec) -> Result<f64> {
    if spec.k == 0 || spec.k > grid.k_max {
        return Err(Error::input(format!(
            "functional level {} is outside 1..={}",
            spec.k, grid.k_max
        )));
    }
    // Nodes sit on the 2^-32 lattice, so compare with a little slack.
    let tol = 1e-9 * grid.resolution.max(1.0);
    let r = &grid.region;
    let b = &spec.domain;
    if b.x1_min < r.x1_min - tol
        || b.x1_max > r.x1_max + tol
        || b.x2_min < r.x2_min - tol
        || b.x2_max > r.x2_max + tol
    {
        return Err(Error::input("functional box lies outside the grid region"));
    }
    let inside = |v: f64, lo: f64, hi: f64| v >= lo - tol && v <= hi + tol;
    let is: Vec<usize> = (0..grid.n1())
        .filter(|&i| inside(grid.axis1[i], b.x1_min, b.x1_max))
        .collect();
    let mut sum = 0.0;
    for j in 0..grid.n2() {
        if !inside(grid.axis2[j], b.x2_min, b.x2_max) {
            continue;
        }
        for &i in &is {
            sum += grid.get(spec.k, j, i);
        }
    }
    Ok(sum * grid.resolution * grid.resolution)
}

/// Sample mean and unbiased variance.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleStatistics {
    pub n: usize,
    pub mean: f64,
    pub sample_variance: f64,
}

impl SampleStatistics {
    pub fn from_values(values: &[f64]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::input("statistics of an empty sample"));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::input("sample contains a non-finite value"));
        }
        let n = values.len();
        let mean = values.iter().sum::<f64>() / n as f64;
        let sample_variance = if n > 1 {
            values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1) as f64
        } else {
            0.0
        };
        Ok(SampleStatistics {
            n,
            mean,
            sample_variance,
        })
    }

    pub fn std_dev(&self) -> f64 {
        self.sample_variance.sqrt()
    }
}

/// Two-sided standard normal quantile `z_{alpha/2}`.
pub fn normal_quantile(alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::input(format!("alpha = {alpha} must lie in (0, 1)")));
    }
    let n = Normal::standard();
    Ok(n.inverse_cdf(1.0 - alpha / 2.0))
}

/// `mean ± z_{alpha/2} s / sqrt(n)`.
pub fn confidence_interval(values: &[f64], alpha: f64) -> Result<(f64, f64)> {
    if values.len() < 2 {
        return Err(Error::input("a confidence interval needs at least two values"));
    }
    let z = normal_quantile(alpha)?;
    let s = SampleStatistics::from_values(values)?;
    let half = z * s.std_dev() / (s.n as f64).sqrt();
    Ok((s.mean - half, s.mean + half))
}

/// Welch's unequal-variance t-test.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WelchTest {
    pub t: f64,
    pub df: f64,
    pub p_value: f64,
}

pub fn welch_test(a: &[f64], b: &[f64]) -> Result<WelchTest> {
    if a.len() < 2 || b.len() < 2 {
        return Err(Error::input("the t-test needs at least two values per group"));
    }
    let sa = SampleStatistics::from_values(a)?;
    let sb = SampleStatistics::from_values(b)?;
    let va = sa.sample_variance / sa.n as f64;
    let vb = sb.sample_variance / sb.n as f64;
    let diff = sa.mean - sb.mean;
    let se2 = va + vb;
    if se2 == 0.0 {
        let p_value = if diff == 0.0 { 1.0 } else { 0.0 };
        let t = if diff == 0.0 { 0.0 } else { diff.signum() * f64::INFINITY };
        return Ok(WelchTest {
            t,
            df: (sa.n + sb.n - 2) as f64,
            p_value,
        });
    }
    let t = diff / se2.sqrt();
    let df = se2 * se2
        / (va * va / (sa.n - 1) as f64 + vb * vb / (sb.n - 1) as f64);
    let dist = StudentsT::new(0.0, 1.0, df)
        .map_err(|e| Error::Invariant(format!("Student t with {df} degrees of freedom: {e}")))?;
    let p_value = (2.0 * dist.cdf(-t.abs())).clamp(0.0, 1.0);
    Ok(WelchTest { t, df, p_value })
}

/// Two-sided Welch p-value.
pub fn two_sample_t(a: &[f64], b: &[f64]) -> Result<f64> {
    welch_test(a, b).map(|w| w.p_value)
}

/// Two-sided permutation test on the difference of means, with plus-one
/// smoothing `(c + 1) / (n_perm + 1)`.
pub fn permutation_test(a: &[f64], b: &[f64], n_perm: usize, seed: u64) -> Result<f64> {
    if n_perm < 100 {
        return Err(Error::input("permutation test needs at least 100 permutations"));
    }
    if a.is_empty() || b.is_empty() {
        return Err(Error::input("permutation test needs two nonempty groups"));
    }
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    let observed = (mean(a) - mean(b)).abs();
    // Sums are reordered by shuffling; absorb the rounding.
    let scale = a.iter().chain(b).fold(0.0f64, |m, v| m.max(v.abs()));
    let threshold = observed - 1e-12 * scale.max(f64::MIN_POSITIVE);
    let mut pooled: Vec<f64> = a.iter().chain(b).copied().collect();
    let mut rng = stream_rng(seed, 0);
    let mut count = 0usize;
    for _ in 0..n_perm {
        pooled.shuffle(&mut rng);
        let (x, y) = pooled.split_at(a.len());
        if (mean(x) - mean(y)).abs() >= threshold {
            count += 1;
        }
    }
    Ok((count + 1) as f64 / (n_perm + 1) as f64)
}

/// Flattens `(k, x2, x1)` in row-major order.
pub fn vectorize(grid: &LandscapeGrid) -> Vec<f64> {
    grid.values.clone()
}
