//! One-parameter barcodes of a slice, with the two reduction algorithms
//! and the brute-force rank they are checked against.

use mplandscape::bifiltration::{build_function_rips, push_to_line};
use mplandscape::datagen::{gen_circles, Colouring};
use mplandscape::grade::{Bigrade, WeightVector};
use mplandscape::landscape::landscape_eval;
use mplandscape::persistence::{brute_force_rank, compute_barcode_with, Algorithm};

fn main() -> mplandscape::Result<()> {
    let s = gen_circles(10, Colouring::B, 0.0, 1)?;
    let complex = build_function_rips(&s.distances, &s.vertex_values, f64::INFINITY, 2)?;
    let slice = push_to_line(&complex, Bigrade::new(0.0, -1.0), WeightVector::UNIT)?;

    let coh = compute_barcode_with(&slice, 1, Algorithm::Cohomology)?;
    let hom = compute_barcode_with(&slice, 1, Algorithm::Homology)?;
    println!("H1 bars: {:?}", coh.sorted_pairs());
    println!("homology agrees: {}", coh.sorted_pairs() == hom.sorted_pairs());

    let (s0, t0) = (1.6, 1.8);
    let oracle = brute_force_rank(&complex, slice.point_at(s0), slice.point_at(t0), 1)?;
    println!("rank({s0}, {t0}) = {} (brute force {oracle})", coh.rank(s0, t0));
    println!("lambda_1(1.7) = {}", landscape_eval(&coh, 1, 1.7)?);
    Ok(())
}
