mod common;

use common::*;
use mplandscape::bifiltration::{build_function_rips, push_to_line, validate_monotone, BifilteredComplex, GridFunction};
use mplandscape::datagen::{gen_circles, Colouring};
use mplandscape::grade::{Bigrade, Region, WeightVector};
use mplandscape::landscape::landscape_profile;
use mplandscape::multiland::{
    compute_landscape_grid, compute_landscape_grid_timed, eval_point, recover_rank_from_landscape, uniform_axis,
};
use mplandscape::persistence::{brute_force_rank, compute_barcode};
use mplandscape::rect::{rect_landscape_grid, rects_to_complex, Rect, RectangleBarcode};
use proptest::prelude::*;

fn region(lo: f64, hi: f64) -> Region {
    Region::new(lo, hi, lo, hi).unwrap()
}

#[test]
fn hollow_triangle_grid_example() {
    let g = compute_landscape_grid(&hollow_triangle(), region(0.0, 3.0), 0.5, 1, WeightVector::UNIT, 1).unwrap();
    assert_eq!(g.value_at(1, &Bigrade::new(2.0, 2.0)), 1.0);
    assert_eq!(g.value_at(1, &Bigrade::new(1.0, 1.0)), 0.0);
    assert!(g.lipschitz_violations().is_empty());
}

#[test]
fn diagonal_rows_equal_single_slice_profiles() {
    let mut rng = rng(200);
    for trial in 0..10 {
        let c = random_complex(&mut rng, 12);
        let dim = trial % 2;
        let g = compute_landscape_grid(&c, region(-1.0, 5.0), 0.25, 3, WeightVector::UNIT, dim).unwrap();
        let starts = (0..g.n1()).map(|i| (i, 0)).chain((1..g.n2()).map(|j| (0, j)));
        for (i0, j0) in starts {
            let base = g.node(i0, j0);
            let f = push_to_line(&c, base, WeightVector::UNIT).unwrap();
            let bc = compute_barcode(&f, dim).unwrap();
            let len = (g.n1() - i0).min(g.n2() - j0);
            let ts: Vec<f64> = (0..len).map(|m| g.axis1[i0 + m] - g.axis1[i0]).collect();
            let rows = landscape_profile(&bc, 3, &ts);
            for k in 1..=3 {
                for m in 0..len {
                    assert_eq!(
                        g.get(k, j0 + m, i0 + m).to_bits(),
                        rows[k - 1][m].to_bits(),
                        "k {k} node ({}, {})",
                        i0 + m,
                        j0 + m
                    );
                }
            }
        }
    }
}

#[test]
fn grid_nodes_equal_eval_point() {
    let mut rng = rng(201);
    for _ in 0..5 {
        let c = random_complex(&mut rng, 12);
        for w in [WeightVector::UNIT, WeightVector::new(0.5, 1.0).unwrap(), WeightVector::new(1.0, 0.3).unwrap()] {
            let g = compute_landscape_grid(&c, region(-0.5, 4.5), 0.5, 2, w, 1).unwrap();
            for j in 0..g.n2() {
                for i in 0..g.n1() {
                    let v = eval_point(&c, g.node(i, j), 2, w, 1).unwrap();
                    assert_eq!(g.get(2, j, i).to_bits(), v.to_bits());
                }
            }
            assert!(g.lipschitz_violations().is_empty());
        }
    }
}

#[test]
fn output_does_not_depend_on_thread_count() {
    let s = gen_circles(12, Colouring::A, 0.2, 11).unwrap();
    let c = build_function_rips(&s.distances, &s.vertex_values, f64::INFINITY, 2).unwrap();
    let reg = Region::new(0.0, 6.0, 0.0, 2.0).unwrap();
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| compute_landscape_grid(&c, reg, 0.1, 2, WeightVector::UNIT, 1).unwrap())
    };
    let one = run(1);
    let four = run(4);
    assert_eq!(one, four);
    assert!(one.max_value() > 0.0);
}

#[test]
fn timings_cover_every_diagonal() {
    let (g, t) = compute_landscape_grid_timed(&hollow_triangle(), region(0.0, 3.0), 0.5, 1, WeightVector::UNIT, 1)
        .unwrap();
    assert_eq!(t.len(), g.n1() + g.n2() - 1);
    assert_eq!(t.iter().map(|s| s.n_nodes).sum::<usize>(), g.n1() * g.n2());
}

#[test]
fn rect_gadget_grid_equals_closed_form() {
    let mut rng = rng(202);
    for _ in 0..10 {
        let rects = random_rects(&mut rng, 4, 0.0, 4.0, 8.0);
        for w in [WeightVector::UNIT, WeightVector::new(1.0, 0.5).unwrap()] {
            let a = compute_landscape_grid(&rects_to_complex(&rects).unwrap(), region(-0.5, 4.5), 0.125, 4, w, 1)
                .unwrap();
            let b = rect_landscape_grid(&rects, region(-0.5, 4.5), 0.125, 4, w).unwrap();
            assert_eq!(a, b);
        }
    }
}

#[test]
fn recovered_ranks_on_the_hollow_triangle() {
    let g = compute_landscape_grid(&hollow_triangle(), region(0.0, 4.0), 0.25, 1, WeightVector::UNIT, 1).unwrap();
    let c = hollow_triangle();
    for (a, b) in [((1.5, 1.5), (2.5, 2.5)), ((0.5, 0.5), (1.5, 1.5)), ((1.25, 2.0), (3.25, 4.0))] {
        let (a, b) = (Bigrade::new(a.0, a.1), Bigrade::new(b.0, b.1));
        assert_eq!(
            recover_rank_from_landscape(&g, a, b).unwrap(),
            brute_force_rank(&c, a, b, 1).unwrap()
        );
    }
    let not_cube = recover_rank_from_landscape(&g, Bigrade::new(0.0, 0.0), Bigrade::new(3.0, 1.0));
    assert!(not_cube.is_err());
}

#[test]
fn recovered_ranks_of_a_square_module() {
    let square = Rect::new(Bigrade::new(0.0, 0.0), Bigrade::new(4.0, 4.0)).unwrap();
    let one = RectangleBarcode::new(vec![square]);
    let none = RectangleBarcode::new(vec![]);
    let grid = |m: &RectangleBarcode| rect_landscape_grid(m, region(-1.0, 5.0), 0.25, 2, WeightVector::UNIT).unwrap();
    let (g, z) = (grid(&one), grid(&none));
    let p = |x: f64| Bigrade::new(x, x);
    assert_eq!(recover_rank_from_landscape(&g, p(1.0), p(3.0)).unwrap(), 1);
    assert_eq!(recover_rank_from_landscape(&g, p(2.0), p(2.0)).unwrap(), 1);
    assert_eq!(recover_rank_from_landscape(&z, p(1.0), p(3.0)).unwrap(), 0);
}

#[test]
fn bad_grid_parameters_are_rejected() {
    let c = hollow_triangle();
    let u = WeightVector::UNIT;
    assert!(compute_landscape_grid(&c, region(0.0, 1.0), 0.0, 1, u, 1).is_err());
    assert!(compute_landscape_grid(&c, region(0.0, 1.0), 0.5, 0, u, 1).is_err());
    assert!(uniform_axis(1.0, 0.0, 0.1).is_err());
}

fn shifted(c: &BifilteredComplex, v: Bigrade) -> BifilteredComplex {
    c.map_grades(|g| g.add(&v)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn push_is_translation_covariant(seed in 0u64..10_000, d in -16i32..16) {
        let c = random_complex(&mut rng(seed), 12);
        let delta = d as f64 / 8.0;
        let p = Bigrade::new(0.5, 0.25);
        let q = Bigrade::new(p.x1 + delta, p.x2 + delta);
        let a = push_to_line(&c, p, WeightVector::UNIT).unwrap();
        let b = push_to_line(&c, q, WeightVector::UNIT).unwrap();
        for (ta, tb) in a.times().iter().zip(b.times()) {
            prop_assert_eq!(*tb, *ta - delta);
        }
    }

    #[test]
    fn push_of_an_antichain_is_the_minimum_over_its_grades(seed in 0u64..10_000) {
        let c = random_complex(&mut rng(seed), 12);
        let p = Bigrade::new(1.0, -0.5);
        let f = push_to_line(&c, p, WeightVector::UNIT).unwrap();
        for (s, &t) in c.simplices().iter().zip(f.times()) {
            let each = s
                .grades()
                .iter()
                .map(|g| (g.x1 - p.x1).max(g.x2 - p.x2))
                .fold(f64::INFINITY, f64::min);
            prop_assert_eq!(t, each);
            let entered = |t: f64| s.present_at(&Bigrade::new(p.x1 + t, p.x2 + t));
            prop_assert!(entered(t));
            prop_assert!(!entered(t - 0.125));
        }
    }

    #[test]
    fn shifting_grades_moves_the_grid_by_at_most_the_shift(seed in 0u64..10_000, v1 in 0u32..16, v2 in 0u32..16) {
        let c = random_complex(&mut rng(seed), 12);
        let v = Bigrade::new(v1 as f64 / 16.0, v2 as f64 / 16.0);
        let r = region(-1.0, 6.0);
        let a = compute_landscape_grid(&c, r, 0.25, 3, WeightVector::UNIT, 1).unwrap();
        let b = compute_landscape_grid(&shifted(&c, v), r, 0.25, 3, WeightVector::UNIT, 1).unwrap();
        prop_assert!(sup_diff(&a, &b) <= v.max_norm());
    }

    #[test]
    fn snapping_to_a_grid_moves_the_grid_by_at_most_its_size(seed in 0u64..10_000, step in 1u32..8) {
        let c = random_complex(&mut rng(seed), 12);
        let step = step as f64 / 8.0;
        let g = GridFunction::uniform(Bigrade::new(-step, -step), Bigrade::new(4.0 + step, 4.0 + step), step).unwrap();
        let snapped = g.snap_up(&c).unwrap();
        prop_assert!(validate_monotone(&snapped).is_ok());
        let r = region(-1.0, 6.0);
        let a = compute_landscape_grid(&c, r, 0.25, 3, WeightVector::UNIT, 0).unwrap();
        let b = compute_landscape_grid(&snapped, r, 0.25, 3, WeightVector::UNIT, 0).unwrap();
        prop_assert!(sup_diff(&a, &b) <= g.size());
    }

    #[test]
    fn weighted_grids_are_lipschitz(seed in 0u64..10_000, u in 1u32..10) {
        let c = random_complex(&mut rng(seed), 12);
        let w = WeightVector::new(u as f64 / 10.0, 1.0).unwrap();
        let g = compute_landscape_grid(&c, region(-1.0, 5.0), 0.25, 2, w, 1).unwrap();
        prop_assert!(g.lipschitz_violations().is_empty());
    }
}
