//! Closed forms for direct sums of rectangle modules, checked against the
//! general pipeline run on the equivalent bifiltered complex.

use mplandscape::grade::{Bigrade, Region, WeightVector};
use mplandscape::multiland::compute_landscape_grid;
use mplandscape::rect::{
    rect_interleaving_distance, rect_landscape, rect_landscape_grid, rect_rank, rects_to_complex, wasserstein_pw, Rect,
    RectangleBarcode,
};

fn rect(a1: f64, a2: f64, b1: f64, b2: f64) -> mplandscape::Result<Rect> {
    Rect::new(Bigrade::new(a1, a2), Bigrade::new(b1, b2))
}

fn main() -> mplandscape::Result<()> {
    let m = RectangleBarcode::new(vec![rect(0.0, 0.0, 4.0, 3.0)?, rect(1.0, 1.0, 3.0, 4.0)?]);
    let n = RectangleBarcode::new(vec![rect(0.5, 0.0, 4.0, 3.5)?]);

    let x = Bigrade::new(2.0, 2.0);
    for k in 1..=3 {
        println!("lambda_{k}(2, 2) = {}", rect_landscape(&m, k, &x)?);
    }
    println!("rank (1,1) -> (2.5,2.5) = {}", rect_rank(&m, &Bigrade::new(1.0, 1.0), &Bigrade::new(2.5, 2.5))?);
    println!(
        "interleaving distance of the first pair = {}",
        rect_interleaving_distance(&m.rects[0], Some(&n.rects[0]))
    );
    println!("W_2 = {}", wasserstein_pw(&m, &n, 2.0)?);

    let region = Region::new(-0.5, 4.5, -0.5, 4.5)?;
    let closed = rect_landscape_grid(&m, region, 0.25, 2, WeightVector::UNIT)?;
    let general = compute_landscape_grid(&rects_to_complex(&m)?, region, 0.25, 2, WeightVector::UNIT, 1)?;
    println!("closed form equals the general pipeline: {}", closed == general);
    Ok(())
}
