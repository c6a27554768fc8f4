//! The `mpland` command line.
//!
//! Every run writes a [`RunManifest`] next to its outputs (or to
//! `--manifest`). Exit codes: 0 success, 1 usage, 2 bad input data,
//! 3 internal invariant violation.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::bifiltration::{build_function_rips, DistanceMatrix};
use crate::datagen::{self, Colouring, SampleSet, Space};
use crate::error::{Error, Result};
use crate::experiments::{
    run_circles, run_curvature, run_modes, run_modes_fixture, CirclesConfig, CurvatureConfig, ModesConfig, SPACES,
};
use crate::grade::{Bigrade, Region, WeightVector};
use crate::io::{self, fmt_num, to_json};
use crate::multiland::compute_landscape_grid;
use crate::rect::{rect_landscape_grid, rect_landscape_weighted, rect_rank, wasserstein_pw};
use crate::rng::DEFAULT_SEED;
use crate::stats::{self, FunctionalSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "mpland", version, about = "Multiparameter persistence landscapes")]
pub struct Cli {
    /// Worker threads for landscape computation; 0 uses all cores. Outputs
    /// do not depend on it.
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,

    /// Where to write the run manifest.
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a seeded sample.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Build a function-Rips bifiltration.
    Rips(RipsArgs),
    /// Compute a landscape grid of a bifiltered complex.
    Landscape(LandscapeArgs),
    /// Lq distance between two grids.
    Distance(DistanceArgs),
    /// Pointwise mean of grids.
    Mean(MeanArgs),
    /// Integral of one landscape level over a box.
    Functional(FunctionalArgs),
    /// Normal-approximation confidence interval of a value file.
    Ci(CiArgs),
    /// Welch two-sample t-test.
    Ttest(TwoSampleArgs),
    /// Two-sample permutation test on the difference of means.
    Permtest(PermtestArgs),
    /// Flatten grids into a feature CSV.
    Vectorize(VectorizeArgs),
    /// Closed-form queries on a rectangle barcode.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Run an experiment end to end.
    #[command(subcommand)]
    Experiment(ExperimentCommand),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ColouringArg {
    A,
    B,
}

impl From<ColouringArg> for Colouring {
    fn from(c: ColouringArg) -> Self {
        match c {
            ColouringArg::A => Colouring::A,
            ColouringArg::B => Colouring::B,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SpaceArg {
    Hyperbolic,
    Euclidean,
    Elliptic,
}

impl From<SpaceArg> for Space {
    fn from(s: SpaceArg) -> Self {
        match s {
            SpaceArg::Hyperbolic => Space::Hyperbolic,
            SpaceArg::Euclidean => Space::Euclidean,
            SpaceArg::Elliptic => Space::Elliptic,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum GenCommand {
    /// Two concentric coloured circles.
    Circles {
        #[arg(long, default_value_t = 50)]
        n: usize,
        #[arg(long, value_enum, default_value = "a")]
        colouring: ColouringArg,
        #[arg(long, default_value_t = 0.3)]
        noise: f64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        stream: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Uniform sample of a radius-1 disc of constant curvature.
    Disc {
        #[arg(long, value_enum)]
        space: SpaceArg,
        #[arg(long, default_value_t = 100)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        stream: u64,
        /// Also write k-nearest-neighbour codensity values.
        #[arg(long)]
        codensity: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Triangulated kernel density surface over (bandwidth, position).
    Kde {
        /// One value per line; defaults to the trimodal fixture.
        #[arg(long)]
        data: Option<PathBuf>,
        /// Seed of the trimodal fixture.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// lo,hi,count
        #[arg(long, default_value = "0.3,4,40", value_parser = parse_linspace)]
        sigmas: Linspace,
        /// lo,hi,count
        #[arg(long, default_value = "15,41,80", value_parser = parse_linspace)]
        xs: Linspace,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Linspace {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

#[derive(Args, Debug)]
pub struct RipsArgs {
    /// Point cloud CSV; a final `f` column supplies vertex values.
    #[arg(long, conflicts_with = "distances", required_unless_present = "distances")]
    points: Option<PathBuf>,
    /// Lower-triangular distance matrix.
    #[arg(long)]
    distances: Option<PathBuf>,
    /// Vertex values, one per line.
    #[arg(long, conflicts_with = "codensity")]
    values: Option<PathBuf>,
    /// Use k-nearest-neighbour codensity as vertex values.
    #[arg(long)]
    codensity: Option<usize>,
    /// Largest edge length kept.
    #[arg(long, default_value_t = f64::INFINITY)]
    max_scale: f64,
    #[arg(long, default_value_t = 2)]
    max_dim: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
pub struct LandscapeArgs {
    #[arg(long)]
    complex: PathBuf,
    /// x1min,x1max,x2min,x2max
    #[arg(long, value_parser = parse_region)]
    region: Region,
    #[arg(long)]
    resolution: f64,
    #[arg(long, default_value_t = 1)]
    kmax: usize,
    /// w1,w2 with max 1
    #[arg(long, default_value = "1,1", value_parser = parse_weight)]
    weight: WeightVector,
    #[arg(long, default_value_t = 1)]
    dim: usize,
    /// Also write PGM heatmaps.
    #[arg(long)]
    heatmap: bool,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
pub struct DistanceArgs {
    a: PathBuf,
    b: PathBuf,
    /// Exponent, or `inf`.
    #[arg(long, default_value = "2", value_parser = parse_f64)]
    q: f64,
}

#[derive(Args, Debug)]
pub struct MeanArgs {
    #[arg(required = true)]
    grids: Vec<PathBuf>,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    heatmap: bool,
}

#[derive(Args, Debug)]
pub struct FunctionalArgs {
    grid: PathBuf,
    #[arg(long, default_value_t = 1)]
    k: usize,
    /// x1min,x1max,x2min,x2max
    #[arg(long = "box", value_parser = parse_region)]
    domain: Region,
}

#[derive(Args, Debug)]
pub struct CiArgs {
    values: PathBuf,
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
}

#[derive(Args, Debug)]
pub struct TwoSampleArgs {
    a: PathBuf,
    b: PathBuf,
}

#[derive(Args, Debug)]
pub struct PermtestArgs {
    a: PathBuf,
    b: PathBuf,
    #[arg(long, default_value_t = 10_000)]
    n_perm: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Args, Debug)]
pub struct VectorizeArgs {
    /// Grid directories; each row is labelled by the directory name.
    #[arg(required = true)]
    grids: Vec<PathBuf>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Subcommand, Debug)]
pub enum OracleCommand {
    /// Landscape value at one point.
    Landscape {
        #[arg(long)]
        rects: PathBuf,
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// x1,x2
        #[arg(long, value_parser = parse_bigrade)]
        point: Bigrade,
        #[arg(long, default_value = "1,1", value_parser = parse_weight)]
        weight: WeightVector,
    },
    /// Rank between two comparable grades.
    Rank {
        #[arg(long)]
        rects: PathBuf,
        #[arg(long, value_parser = parse_bigrade)]
        a: Bigrade,
        #[arg(long, value_parser = parse_bigrade)]
        b: Bigrade,
    },
    /// Persistence-weighted Wasserstein distance to another barcode.
    Wasserstein {
        #[arg(long)]
        rects: PathBuf,
        #[arg(long)]
        other: PathBuf,
        #[arg(long, default_value = "2", value_parser = parse_f64)]
        q: f64,
    },
    /// Closed-form landscape grid.
    Grid {
        #[arg(long)]
        rects: PathBuf,
        #[arg(long, value_parser = parse_region)]
        region: Region,
        #[arg(long)]
        resolution: f64,
        #[arg(long, default_value_t = 1)]
        kmax: usize,
        #[arg(long, default_value = "1,1", value_parser = parse_weight)]
        weight: WeightVector,
        #[arg(long)]
        heatmap: bool,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
pub enum ExperimentCommand {
    /// Coloured concentric circles, colouring A against B.
    Circles {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 30)]
        samples: usize,
        #[arg(long, default_value_t = 50)]
        points: usize,
        #[arg(long, default_value_t = 0.3)]
        noise: f64,
        #[arg(long, default_value_t = 0.1)]
        resolution: f64,
        #[arg(long, default_value_t = 10_000)]
        n_perm: usize,
        #[arg(long)]
        heatmap: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Mode counting on a kernel density surface.
    Modes {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// One value per line; defaults to the trimodal fixture.
        #[arg(long)]
        data: Option<PathBuf>,
        #[arg(long)]
        heatmap: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Hyperbolic, euclidean and elliptic discs.
    Curvature {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 30)]
        samples: usize,
        #[arg(long, default_value_t = 100)]
        points: usize,
        #[arg(long)]
        resolution: Option<f64>,
        #[arg(long)]
        heatmap: bool,
        #[arg(long)]
        out: PathBuf,
    },
}

fn parse_f64(s: &str) -> std::result::Result<f64, String> {
    io::parse_num(s.trim()).ok_or_else(|| format!("`{s}` is not a number"))
}

fn parse_list(s: &str, n: usize) -> std::result::Result<Vec<f64>, String> {
    let v = s.split(',').map(parse_f64).collect::<std::result::Result<Vec<_>, _>>()?;
    if v.len() != n {
        return Err(format!("expected {n} comma-separated numbers, got {}", v.len()));
    }
    Ok(v)
}

fn parse_region(s: &str) -> std::result::Result<Region, String> {
    let v = parse_list(s, 4)?;
    Region::new(v[0], v[1], v[2], v[3]).map_err(|e| e.to_string())
}

fn parse_weight(s: &str) -> std::result::Result<WeightVector, String> {
    let v = parse_list(s, 2)?;
    WeightVector::new(v[0], v[1]).map_err(|e| e.to_string())
}

fn parse_bigrade(s: &str) -> std::result::Result<Bigrade, String> {
    let v = parse_list(s, 2)?;
    Bigrade::checked(v[0], v[1]).map_err(|e| e.to_string())
}

fn parse_linspace(s: &str) -> std::result::Result<Linspace, String> {
    let v = parse_list(s, 3)?;
    if v[2] < 2.0 || v[2].fract() != 0.0 {
        return Err("count must be an integer of at least 2".into());
    }
    Ok(Linspace {
        lo: v[0],
        hi: v[1],
        n: v[2] as usize,
    })
}

/// Everything needed to repeat a run.
#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: Value,
    pub inputs: Vec<InputHash>,
    pub seed: Option<u64>,
    pub version: String,
    pub outputs: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct InputHash {
    pub path: String,
    pub sha256: String,
}

/// Accumulates the manifest while a command runs.
struct Run {
    command: String,
    parameters: Value,
    inputs: Vec<InputHash>,
    seed: Option<u64>,
    outputs: Vec<PathBuf>,
    /// Directory or file the manifest goes next to.
    anchor: Option<PathBuf>,
}

impl Run {
    fn new(command: &str, parameters: Value) -> Self {
        Run {
            command: command.into(),
            parameters,
            inputs: Vec::new(),
            seed: None,
            outputs: Vec::new(),
            anchor: None,
        }
    }

    fn input(&mut self, path: &Path) -> Result<()> {
        self.inputs.push(InputHash {
            path: path.display().to_string(),
            sha256: io::sha256_file(path)?,
        });
        Ok(())
    }

    fn write(&mut self, path: &Path, text: &str) -> Result<()> {
        io::write_text(path, text)?;
        self.outputs.push(path.to_path_buf());
        Ok(())
    }

    fn write_grid(&mut self, grid: &crate::multiland::LandscapeGrid, dir: &Path, heatmap: bool) -> Result<()> {
        let paths = io::write_grid(grid, dir, heatmap)?;
        self.outputs.extend(paths);
        Ok(())
    }

    fn manifest_path(&self, explicit: Option<&Path>) -> PathBuf {
        if let Some(p) = explicit {
            return p.to_path_buf();
        }
        match &self.anchor {
            Some(a) if a.extension().is_none() => a.join("run.json"),
            Some(a) => {
                let mut s = a.as_os_str().to_owned();
                s.push(".run.json");
                PathBuf::from(s)
            }
            None => PathBuf::from("mpland_run.json"),
        }
    }

    fn finish(self, explicit: Option<&Path>) -> Result<()> {
        let path = self.manifest_path(explicit);
        let manifest = RunManifest {
            command: self.command,
            parameters: self.parameters,
            inputs: self.inputs,
            seed: self.seed,
            version: env!("CARGO_PKG_VERSION").into(),
            outputs: self.outputs.iter().map(|p| p.display().to_string()).collect(),
        };
        io::write_text(&path, &to_json(&manifest))
    }
}

fn region_json(r: &Region) -> Value {
    json!([r.x1_min, r.x1_max, r.x2_min, r.x2_max])
}

fn weight_json(w: &WeightVector) -> Value {
    json!([w.w1(), w.w2()])
}

fn sidecar(sample: &SampleSet, parameters: Value) -> Value {
    json!({
        "kind": sample.kind,
        "label": sample.label,
        "seed": sample.seed,
        "stream": sample.stream,
        "n": sample.distances.len(),
        "parameters": parameters,
    })
}

fn read_grid_input(run: &mut Run, path: &Path) -> Result<crate::multiland::LandscapeGrid> {
    let manifest = if path.is_dir() { path.join("manifest.json") } else { path.to_path_buf() };
    run.input(&manifest)?;
    io::read_grid(path)
}

fn read_values_input(run: &mut Run, path: &Path) -> Result<Vec<f64>> {
    run.input(path)?;
    io::read_values(path)
}

/// Parses `argv` (program name first) and runs it, returning the exit code.
/// Results go to files; short answers also go to stdout.
pub fn run_from_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match run(cli) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Invariant(_) => EXIT_INVARIANT,
        _ => EXIT_INPUT,
    }
}

pub fn run(cli: Cli) -> Result<()> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build()
        .map_err(|e| Error::Invariant(format!("thread pool: {e}")))?;
    let manifest = cli.manifest.clone();
    let run = pool.install(|| dispatch(cli.command))?;
    run.finish(manifest.as_deref())
}

fn dispatch(command: Command) -> Result<Run> {
    match command {
        Command::Gen(g) => gen(g),
        Command::Rips(a) => rips(a),
        Command::Landscape(a) => landscape(a),
        Command::Distance(a) => {
            let mut run = Run::new("distance", json!({ "q": fmt_num(a.q) }));
            let g1 = read_grid_input(&mut run, &a.a)?;
            let g2 = read_grid_input(&mut run, &a.b)?;
            println!("{}", fmt_num(stats::q_distance(&g1, &g2, a.q)?));
            Ok(run)
        }
        Command::Mean(a) => {
            let mut run = Run::new("mean", json!({ "heatmap": a.heatmap }));
            let grids = a
                .grids
                .iter()
                .map(|p| read_grid_input(&mut run, p))
                .collect::<Result<Vec<_>>>()?;
            run.write_grid(&stats::mean_landscape(&grids)?, &a.out, a.heatmap)?;
            run.anchor = Some(a.out);
            Ok(run)
        }
        Command::Functional(a) => {
            let mut run = Run::new("functional", json!({ "k": a.k, "box": region_json(&a.domain) }));
            let grid = read_grid_input(&mut run, &a.grid)?;
            let spec = FunctionalSpec { k: a.k, domain: a.domain };
            println!("{}", fmt_num(stats::functional_integral(&grid, &spec)?));
            Ok(run)
        }
        Command::Ci(a) => {
            let mut run = Run::new("ci", json!({ "alpha": a.alpha }));
            let values = read_values_input(&mut run, &a.values)?;
            let (lo, hi) = stats::confidence_interval(&values, a.alpha)?;
            println!("{},{}", fmt_num(lo), fmt_num(hi));
            Ok(run)
        }
        Command::Ttest(a) => {
            let mut run = Run::new("ttest", json!({}));
            let x = read_values_input(&mut run, &a.a)?;
            let y = read_values_input(&mut run, &a.b)?;
            let t = stats::welch_test(&x, &y)?;
            println!("t={} df={} p={}", fmt_num(t.t), fmt_num(t.df), fmt_num(t.p_value));
            Ok(run)
        }
        Command::Permtest(a) => {
            let mut run = Run::new("permtest", json!({ "n_perm": a.n_perm }));
            run.seed = Some(a.seed);
            let x = read_values_input(&mut run, &a.a)?;
            let y = read_values_input(&mut run, &a.b)?;
            println!("p={}", fmt_num(stats::permutation_test(&x, &y, a.n_perm, a.seed)?));
            Ok(run)
        }
        Command::Vectorize(a) => {
            let mut run = Run::new("vectorize", json!({}));
            let mut labels = Vec::new();
            let mut grids = Vec::new();
            for p in &a.grids {
                grids.push(read_grid_input(&mut run, p)?);
                let dir = if p.is_dir() { p.as_path() } else { p.parent().unwrap_or(p) };
                labels.push(
                    dir.file_name()
                        .map(|s| s.to_string_lossy().into_owned())
                        .unwrap_or_else(|| dir.display().to_string()),
                );
            }
            run.write(&a.out, &io::format_features(&labels, &grids)?)?;
            run.anchor = Some(a.out);
            Ok(run)
        }
        Command::Oracle(o) => oracle(o),
        Command::Experiment(e) => experiment(e),
    }
}

fn gen(g: GenCommand) -> Result<Run> {
    match g {
        GenCommand::Circles {
            n,
            colouring,
            noise,
            seed,
            stream,
            out,
        } => {
            let params = json!({ "n": n, "colouring": Colouring::from(colouring).label(), "noise": noise });
            let mut run = Run::new("gen circles", params.clone());
            run.seed = Some(seed);
            let s = datagen::gen_circles_stream(n, colouring.into(), noise, seed, stream)?;
            let points = s.points.as_deref().ok_or_else(|| Error::Invariant("circle sample without points".into()))?;
            run.write(&out.join("points.csv"), &io::format_point_cloud(points, Some(&s.vertex_values)))?;
            run.write(&out.join("distances.csv"), &io::format_distance_matrix(&s.distances))?;
            run.write(&out.join("sample.json"), &to_json(&sidecar(&s, params)))?;
            run.anchor = Some(out);
            Ok(run)
        }
        GenCommand::Disc {
            space,
            n,
            seed,
            stream,
            codensity,
            out,
        } => {
            let space = Space::from(space);
            let params = json!({ "space": space.label(), "n": n, "codensity": codensity });
            let mut run = Run::new("gen disc", params.clone());
            run.seed = Some(seed);
            let s = datagen::gen_disc_stream(space, n, seed, stream)?;
            run.write(&out.join("distances.csv"), &io::format_distance_matrix(&s.distances))?;
            if let Some(k) = codensity {
                let rho = datagen::knn_codensity(&s.distances, k)?;
                run.write(&out.join("codensity.csv"), &io::format_values(&rho))?;
            }
            run.write(&out.join("sample.json"), &to_json(&sidecar(&s, params)))?;
            run.anchor = Some(out);
            Ok(run)
        }
        GenCommand::Kde {
            data,
            seed,
            sigmas,
            xs,
            out,
        } => {
            let mut run = Run::new("gen kde", json!({ "sigmas": sigmas, "xs": xs }));
            let values = match &data {
                Some(p) => read_values_input(&mut run, p)?,
                None => {
                    run.seed = Some(seed);
                    datagen::trimodal_fixture(seed)
                }
            };
            let surface = datagen::gen_kde_surface(
                &values,
                &datagen::linspace(sigmas.lo, sigmas.hi, sigmas.n),
                &datagen::linspace(xs.lo, xs.hi, xs.n),
            )?;
            run.write(&out.join("complex.txt"), &io::format_complex(&surface.to_complex()?))?;
            run.write(&out.join("data.csv"), &io::format_values(&values))?;
            let side = json!({
                "kind": datagen::SampleKind::Kde,
                "seed": if data.is_none() { Some(seed) } else { None },
                "n": values.len(),
                "parameters": { "sigmas": sigmas, "xs": xs },
            });
            run.write(&out.join("sample.json"), &to_json(&side))?;
            run.anchor = Some(out);
            Ok(run)
        }
    }
}

fn rips(a: RipsArgs) -> Result<Run> {
    let params = json!({
        "max_scale": fmt_num(a.max_scale),
        "max_dim": a.max_dim,
        "codensity": a.codensity,
    });
    let mut run = Run::new("rips", params);
    let (distances, cloud_values): (DistanceMatrix, Option<Vec<f64>>) = match (&a.points, &a.distances) {
        (Some(p), _) => {
            run.input(p)?;
            let cloud = io::read_point_cloud(p)?;
            (DistanceMatrix::euclidean(&cloud.points)?, cloud.values)
        }
        (None, Some(p)) => {
            run.input(p)?;
            (io::read_distance_matrix(p)?, None)
        }
        (None, None) => return Err(Error::input("one of --points or --distances is required")),
    };
    let values = if let Some(p) = &a.values {
        read_values_input(&mut run, p)?
    } else if let Some(k) = a.codensity {
        datagen::knn_codensity(&distances, k)?
    } else {
        cloud_values.unwrap_or_else(|| vec![0.0; distances.len()])
    };
    let complex = build_function_rips(&distances, &values, a.max_scale, a.max_dim)?;
    run.write(&a.out, &io::format_complex(&complex))?;
    run.anchor = Some(a.out);
    Ok(run)
}

fn landscape(a: LandscapeArgs) -> Result<Run> {
    let params = json!({
        "region": region_json(&a.region),
        "resolution": a.resolution,
        "kmax": a.kmax,
        "weight": weight_json(&a.weight),
        "dim": a.dim,
        "heatmap": a.heatmap,
    });
    let mut run = Run::new("landscape", params);
    run.input(&a.complex)?;
    let complex = io::read_complex(&a.complex)?;
    let grid = compute_landscape_grid(&complex, a.region, a.resolution, a.kmax, a.weight, a.dim)?;
    run.write_grid(&grid, &a.out, a.heatmap)?;
    run.anchor = Some(a.out);
    Ok(run)
}

fn oracle(o: OracleCommand) -> Result<Run> {
    match o {
        OracleCommand::Landscape { rects, k, point, weight } => {
            let mut run = Run::new(
                "oracle landscape",
                json!({ "k": k, "point": [point.x1, point.x2], "weight": weight_json(&weight) }),
            );
            run.input(&rects)?;
            let r = io::read_rects(&rects)?;
            println!("{}", fmt_num(rect_landscape_weighted(&r, k, &point, weight)?));
            Ok(run)
        }
        OracleCommand::Rank { rects, a, b } => {
            let mut run = Run::new("oracle rank", json!({ "a": [a.x1, a.x2], "b": [b.x1, b.x2] }));
            run.input(&rects)?;
            let r = io::read_rects(&rects)?;
            println!("{}", rect_rank(&r, &a, &b)?);
            Ok(run)
        }
        OracleCommand::Wasserstein { rects, other, q } => {
            let mut run = Run::new("oracle wasserstein", json!({ "q": fmt_num(q) }));
            run.input(&rects)?;
            run.input(&other)?;
            let a = io::read_rects(&rects)?;
            let b = io::read_rects(&other)?;
            println!("{}", fmt_num(wasserstein_pw(&a, &b, q)?));
            Ok(run)
        }
        OracleCommand::Grid {
            rects,
            region,
            resolution,
            kmax,
            weight,
            heatmap,
            out,
        } => {
            let params = json!({
                "region": region_json(&region),
                "resolution": resolution,
                "kmax": kmax,
                "weight": weight_json(&weight),
                "heatmap": heatmap,
            });
            let mut run = Run::new("oracle grid", params);
            run.input(&rects)?;
            let r = io::read_rects(&rects)?;
            let grid = rect_landscape_grid(&r, region, resolution, kmax, weight)?;
            run.write_grid(&grid, &out, heatmap)?;
            run.anchor = Some(out);
            Ok(run)
        }
    }
}

fn experiment(e: ExperimentCommand) -> Result<Run> {
    match e {
        ExperimentCommand::Circles {
            seed,
            samples,
            points,
            noise,
            resolution,
            n_perm,
            heatmap,
            out,
        } => {
            let config = CirclesConfig {
                samples_per_colouring: samples,
                points_per_circle: points,
                noise,
                resolution,
                permutations: n_perm,
                ..CirclesConfig::default()
            };
            let mut run = Run::new("experiment circles", serde_json::to_value(&config).expect("config"));
            run.seed = Some(seed);
            let outcome = run_circles(&config, seed)?;
            for (group, mean) in outcome.report.groups.iter().zip(&outcome.means) {
                run.write(&out.join(format!("values_{}.csv", group.label)), &io::format_values(&group.values))?;
                run.write_grid(mean, &out.join(format!("mean_{}", group.label)), heatmap)?;
            }
            run.write(&out.join("report.json"), &to_json(&outcome.report))?;
            run.anchor = Some(out);
            Ok(run)
        }
        ExperimentCommand::Modes {
            seed,
            data,
            heatmap,
            out,
        } => {
            let config = ModesConfig::default();
            let mut run = Run::new("experiment modes", serde_json::to_value(&config).expect("config"));
            let outcome = match &data {
                Some(p) => {
                    let values = read_values_input(&mut run, p)?;
                    run_modes(&config, &values, None)?
                }
                None => {
                    run.seed = Some(seed);
                    run_modes_fixture(&config, seed)?
                }
            };
            run.write_grid(&outcome.grid, &out.join("landscape"), heatmap)?;
            run.write(&out.join("report.json"), &to_json(&outcome.report))?;
            run.anchor = Some(out);
            Ok(run)
        }
        ExperimentCommand::Curvature {
            seed,
            samples,
            points,
            resolution,
            heatmap,
            out,
        } => {
            let defaults = CurvatureConfig::default();
            let config = CurvatureConfig {
                samples_per_space: samples,
                points,
                resolution: resolution.unwrap_or(defaults.resolution),
                ..defaults
            };
            let mut run = Run::new("experiment curvature", serde_json::to_value(&config).expect("config"));
            run.seed = Some(seed);
            let outcome = run_curvature(&config, seed)?;
            run.write(&out.join("features.csv"), &io::format_features(&outcome.labels, &outcome.grids)?)?;
            for (space, mean) in SPACES.iter().zip(&outcome.means) {
                run.write_grid(mean, &out.join(format!("mean_{}", space.label())), heatmap)?;
            }
            run.write(&out.join("report.json"), &to_json(&outcome.report))?;
            run.anchor = Some(out);
            Ok(run)
        }
    }
}
