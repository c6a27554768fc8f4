//! Means, distances, functionals and two-sample tests on landscape grids
//! of random rectangle barcodes.

use mplandscape::grade::{Bigrade, Region, WeightVector};
use mplandscape::rect::{rect_landscape_grid, Rect, RectangleBarcode};
use mplandscape::rng::stream_rng;
use mplandscape::stats::{
    confidence_interval, functional_integral, mean_landscape, permutation_test, q_distance, welch_test,
    FunctionalSpec,
};
use rand::Rng;

fn sample(seed: u64, stream: u64, spread: f64) -> mplandscape::Result<RectangleBarcode> {
    let mut rng = stream_rng(seed, stream);
    let mut rects = Vec::new();
    for _ in 0..3 {
        let a = Bigrade::new(rng.random_range(0.0..1.0), rng.random_range(0.0..1.0));
        let b = Bigrade::new(a.x1 + rng.random_range(0.5..spread), a.x2 + rng.random_range(0.5..spread));
        rects.push(Rect::new(a, b)?);
    }
    Ok(RectangleBarcode::new(rects))
}

fn main() -> mplandscape::Result<()> {
    let region = Region::new(0.0, 4.0, 0.0, 4.0)?;
    let spec = FunctionalSpec { k: 1, domain: Region::new(1.0, 3.0, 1.0, 3.0)? };
    let mut groups = Vec::new();
    for (g, spread) in [(0u64, 2.0), (1, 3.0)] {
        let grids = (0..20)
            .map(|i| rect_landscape_grid(&sample(11, i * 2 + g, spread)?, region, 0.1, 2, WeightVector::UNIT))
            .collect::<mplandscape::Result<Vec<_>>>()?;
        let values = grids.iter().map(|l| functional_integral(l, &spec)).collect::<mplandscape::Result<Vec<_>>>()?;
        let (lo, hi) = confidence_interval(&values, 0.05)?;
        println!("group {g}: 95% interval [{lo:.4}, {hi:.4}]");
        groups.push((mean_landscape(&grids)?, values));
    }
    println!("L2 distance between the means = {:.4}", q_distance(&groups[0].0, &groups[1].0, 2.0)?);
    let w = welch_test(&groups[0].1, &groups[1].1)?;
    println!("Welch t = {:.3}, df = {:.1}, p = {:.2e}", w.t, w.df, w.p_value);
    println!("permutation p = {}", permutation_test(&groups[0].1, &groups[1].1, 2000, 11)?);
    Ok(())
}
