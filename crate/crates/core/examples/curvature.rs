//! Codensity-Rips landscapes of samples from discs of curvature -1, 0, 1.

use mplandscape::experiments::{run_curvature, CurvatureConfig};

fn main() -> mplandscape::Result<()> {
    let config = CurvatureConfig {
        samples_per_space: 3,
        points: 60,
        resolution: 0.1,
        ..CurvatureConfig::default()
    };
    let outcome = run_curvature(&config, 0)?;
    for s in &outcome.report.spaces {
        println!("{:>10}: mean sup lambda_1 = {:.4}", s.space.label(), s.mean_sup_norm);
    }
    Ok(())
}
