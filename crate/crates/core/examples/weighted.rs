//! The same complex under different weight vectors. Shrinking `w2` makes
//! the second parameter cheaper to move along.

use mplandscape::bifiltration::build_function_rips;
use mplandscape::datagen::{gen_circles, Colouring};
use mplandscape::grade::{Region, WeightVector};
use mplandscape::multiland::compute_landscape_grid;

fn main() -> mplandscape::Result<()> {
    let sample = gen_circles(20, Colouring::A, 0.1, 3)?;
    let complex = build_function_rips(&sample.distances, &sample.vertex_values, 6.0, 2)?;
    let region = Region::new(0.0, 6.0, 0.0, 2.0)?;
    for (w1, w2) in [(1.0, 1.0), (1.0, 0.5), (1.0, 0.25), (0.5, 1.0)] {
        let w = WeightVector::new(w1, w2)?;
        let grid = compute_landscape_grid(&complex, region, 0.1, 2, w, 1)?;
        println!(
            "w = ({w1}, {w2}): sup lambda_1 = {:.4}, sup lambda_2 = {:.4}, lipschitz violations = {}",
            grid.sup_norm(1),
            grid.sup_norm(2),
            grid.lipschitz_violations().len()
        );
    }
    Ok(())
}
