//! End-to-end experiments: coloured circles, modal estimation and
//! curvature. Each is a pure function of its configuration and seed.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bifiltration::build_function_rips;
use crate::datagen::{
    gen_circles_stream, gen_disc_stream, gen_kde_surface, knn_codensity, linspace, trimodal_fixture, Colouring,
    Space,
};
use crate::error::{Error, Result};
use crate::grade::{Region, WeightVector};
use crate::multiland::{compute_landscape_grid, compute_landscape_on_axes, required_max_scale, uniform_axis, LandscapeGrid};
use crate::stats::{
    confidence_interval, functional_integral, mean_landscape, permutation_test, welch_test, FunctionalSpec,
    SampleStatistics, WelchTest,
};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CirclesConfig {
    pub samples_per_colouring: usize,
    pub points_per_circle: usize,
    pub noise: f64,
    pub region: Region,
    pub resolution: f64,
    pub k_max: usize,
    pub functional: FunctionalSpec,
    pub alpha: f64,
    pub permutations: usize,
}

impl Default for CirclesConfig {
    fn default() -> Self {
        CirclesConfig {
            samples_per_colouring: 30,
            points_per_circle: 50,
            noise: 0.3,
            region: Region {
                x1_min: 0.0,
                x1_max: 6.0,
                x2_min: 0.0,
                x2_max: 2.0,
            },
            resolution: 0.1,
            k_max: 2,
            functional: FunctionalSpec {
                k: 1,
                domain: Region {
                    x1_min: 2.0,
                    x1_max: 6.0,
                    x2_min: 0.0,
                    x2_max: 1.5,
                },
            },
            alpha: 0.01,
            permutations: 10_000,
        }
    }
}

/// Summary of one group of functional values.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub label: String,
    pub statistics: SampleStatistics,
    pub ci: (f64, f64),
    pub values: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CirclesReport {
    pub config: CirclesConfig,
    pub seed: u64,
    pub groups: Vec<GroupSummary>,
    pub welch: WelchTest,
    pub permutation_p: f64,
}

pub struct CirclesOutcome {
    pub report: CirclesReport,
    /// Mean landscape per colouring, A then B.
    pub means: Vec<LandscapeGrid>,
}

/// Stream of replicate `i` of group `g`; groups interleave so adding
/// replicates never changes earlier ones.
fn stream(group: u64, i: usize, groups: u64) -> u64 {
    i as u64 * groups + group
}

pub fn run_circles(config: &CirclesConfig, seed: u64) -> Result<CirclesOutcome> {
    if config.samples_per_colouring < 2 {
        return Err(Error::input("need at least two samples per colouring"));
    }
    let mut groups = Vec::new();
    let mut means = Vec::new();
    for (g, colouring) in [Colouring::A, Colouring::B].into_iter().enumerate() {
        let grids: Vec<LandscapeGrid> = (0..config.samples_per_colouring)
            .into_par_iter()
            .map(|i| {
                let s = gen_circles_stream(
                    config.points_per_circle,
                    colouring,
                    config.noise,
                    seed,
                    stream(g as u64, i, 2),
                )?;
                let fmin = s.vertex_values.iter().copied().fold(f64::INFINITY, f64::min);
                let scale = required_max_scale(&config.region, WeightVector::UNIT, fmin);
                let c = build_function_rips(&s.distances, &s.vertex_values, scale, 2)?;
                compute_landscape_grid(&c, config.region, config.resolution, config.k_max, WeightVector::UNIT, 1)
            })
            .collect::<Result<_>>()?;
        let values: Vec<f64> = grids
            .iter()
            .map(|grid| functional_integral(grid, &config.functional))
            .collect::<Result<_>>()?;
        groups.push(GroupSummary {
            label: colouring.label().to_string(),
            statistics: SampleStatistics::from_values(&values)?,
            ci: confidence_interval(&values, config.alpha)?,
            values,
        });
        means.push(mean_landscape(&grids)?);
    }
    let welch = welch_test(&groups[0].values, &groups[1].values)?;
    let permutation_p = permutation_test(&groups[0].values, &groups[1].values, config.permutations, seed)?;
    Ok(CirclesOutcome {
        report: CirclesReport {
            config: config.clone(),
            seed,
            groups,
            welch,
            permutation_p,
        },
        means,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModesConfig {
    pub sigma_min: f64,
    pub sigma_max: f64,
    pub n_sigmas: usize,
    pub x_min: f64,
    pub x_max: f64,
    pub n_xs: usize,
    /// Weight on (bandwidth, 1 - density).
    pub weight: [f64; 2],
    /// Node spacing in the weighted norm; axis `i` is spaced by
    /// `resolution / w_i`.
    pub resolution: f64,
    pub k_max: usize,
}

impl Default for ModesConfig {
    fn default() -> Self {
        ModesConfig {
            sigma_min: 0.5,
            sigma_max: 1.5,
            n_sigmas: 40,
            x_min: 15.0,
            x_max: 41.0,
            n_xs: 80,
            weight: [0.02, 1.0],
            resolution: 0.001,
            k_max: 5,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModesReport {
    pub config: ModesConfig,
    pub seed: Option<u64>,
    pub data: Vec<f64>,
    /// Sup norm of each level `k = 1..=k_max`.
    pub sup_norms: Vec<f64>,
}

pub struct ModesOutcome {
    pub report: ModesReport,
    pub grid: LandscapeGrid,
}

/// H0 landscape of the triangulated density surface of `data`.
pub fn run_modes(config: &ModesConfig, data: &[f64], seed: Option<u64>) -> Result<ModesOutcome> {
    let sigmas = linspace(config.sigma_min, config.sigma_max, config.n_sigmas);
    let xs = linspace(config.x_min, config.x_max, config.n_xs);
    let surface = gen_kde_surface(data, &sigmas, &xs)?;
    let complex = surface.to_complex()?;
    let (lo, hi) = complex
        .grade_bounds()
        .ok_or_else(|| Error::input("density surface is empty"))?;
    let weight = WeightVector::new(config.weight[0], config.weight[1])?;
    let axis1 = uniform_axis(lo.x1, hi.x1, config.resolution / weight.w1())?;
    let axis2 = uniform_axis(lo.x2, hi.x2, config.resolution / weight.w2())?;
    let grid = compute_landscape_on_axes(&complex, axis1, axis2, config.k_max, weight, 0)?;
    let sup_norms = (1..=config.k_max).map(|k| grid.sup_norm(k)).collect();
    Ok(ModesOutcome {
        report: ModesReport {
            config: config.clone(),
            seed,
            data: data.to_vec(),
            sup_norms,
        },
        grid,
    })
}

/// Modal experiment on the synthetic trimodal sample.
pub fn run_modes_fixture(config: &ModesConfig, seed: u64) -> Result<ModesOutcome> {
    run_modes(config, &trimodal_fixture(seed), Some(seed))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvatureConfig {
    pub samples_per_space: usize,
    pub points: usize,
    pub neighbours: usize,
    pub region: Region,
    /// Weight on (scale, codensity).
    pub weight: [f64; 2],
    pub resolution: f64,
    pub k_max: usize,
}

impl Default for CurvatureConfig {
    fn default() -> Self {
        CurvatureConfig {
            samples_per_space: 30,
            points: 100,
            neighbours: 3,
            region: Region {
                x1_min: 0.0,
                x1_max: 0.8,
                x2_min: 0.0,
                x2_max: 0.6,
            },
            weight: [1.0, 1.0],
            resolution: 0.05,
            k_max: 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpaceSummary {
    pub space: Space,
    /// Sup norm of the mean first landscape.
    pub mean_sup_norm: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvatureReport {
    pub config: CurvatureConfig,
    pub seed: u64,
    pub spaces: Vec<SpaceSummary>,
}

pub struct CurvatureOutcome {
    pub report: CurvatureReport,
    /// Per-sample labels and grids, hyperbolic then euclidean then elliptic.
    pub labels: Vec<String>,
    pub grids: Vec<LandscapeGrid>,
    pub means: Vec<LandscapeGrid>,
}

pub const SPACES: [Space; 3] = [Space::Hyperbolic, Space::Euclidean, Space::Elliptic];

pub fn run_curvature(config: &CurvatureConfig, seed: u64) -> Result<CurvatureOutcome> {
    let mut labels = Vec::new();
    let mut all = Vec::new();
    let mut means = Vec::new();
    let mut spaces = Vec::new();
    let weight = WeightVector::new(config.weight[0], config.weight[1])?;
    for (g, space) in SPACES.into_iter().enumerate() {
        let grids: Vec<LandscapeGrid> = (0..config.samples_per_space)
            .into_par_iter()
            .map(|i| {
                let s = gen_disc_stream(space, config.points, seed, stream(g as u64, i, 3))?;
                let rho = knn_codensity(&s.distances, config.neighbours)?;
                let fmin = rho.iter().copied().fold(f64::INFINITY, f64::min);
                let scale = required_max_scale(&config.region, weight, fmin);
                let c = build_function_rips(&s.distances, &rho, scale, 2)?;
                compute_landscape_grid(&c, config.region, config.resolution, config.k_max, weight, 1)
            })
            .collect::<Result<_>>()?;
        let mean = mean_landscape(&grids)?;
        spaces.push(SpaceSummary {
            space,
            mean_sup_norm: mean.sup_norm(1),
        });
        labels.extend((0..grids.len()).map(|i| format!("{}_{i}", space.label())));
        all.extend(grids);
        means.push(mean);
    }
    Ok(CurvatureOutcome {
        report: CurvatureReport {
            config: config.clone(),
            seed,
            spaces,
        },
        labels,
        grids: all,
        means,
    })
}
