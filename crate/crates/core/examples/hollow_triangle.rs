//! Landscape of a hollow triangle: three vertices at (0,0), three edges at
//! (1,1), no 2-simplex. The loop is born at (1,1) and never dies.

use mplandscape::bifiltration::{BifilteredComplex, Simplex};
use mplandscape::grade::{Bigrade, Region, WeightVector};
use mplandscape::multiland::compute_landscape_grid;

fn main() -> mplandscape::Result<()> {
    let at = |t: f64| vec![Bigrade::new(t, t)];
    let mut simplices: Vec<Simplex> = (0..3).map(|v| Simplex::new(vec![v], at(0.0))).collect::<Result<_, _>>()?;
    for e in [[0, 1], [0, 2], [1, 2]] {
        simplices.push(Simplex::new(e.to_vec(), at(1.0))?);
    }
    let complex = BifilteredComplex::new(3, simplices)?;

    let region = Region::new(0.0, 3.0, 0.0, 3.0)?;
    let grid = compute_landscape_grid(&complex, region, 0.5, 1, WeightVector::UNIT, 1)?;

    println!("lambda_1 on [0,3]^2, top row is x2 = 3:");
    for j in (0..grid.n2()).rev() {
        let row: Vec<String> = (0..grid.n1()).map(|i| format!("{:4.1}", grid.get(1, j, i))).collect();
        println!("  {}", row.join(" "));
    }
    println!("lambda_1(2, 2) = {}", grid.value_at(1, &Bigrade::new(2.0, 2.0)));
    Ok(())
}
