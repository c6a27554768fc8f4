mod common;

use std::path::Path;

use common::*;
use mplandscape::bifiltration::DistanceMatrix;
use mplandscape::grade::{Region, WeightVector};
use mplandscape::io::{
    fmt_num, format_complex, format_distance_matrix, format_features, format_point_cloud, format_rects,
    format_values, parse_complex, parse_distance_matrix, parse_num, parse_point_cloud, parse_rects, parse_values,
    read_grid, write_grid, GridManifest,
};
use mplandscape::multiland::compute_landscape_grid;
use mplandscape::rect::rect_landscape_grid;
use mplandscape::Error;
use proptest::prelude::*;

fn parse_error_at(e: Error, line: usize) {
    match e {
        Error::Parse { line: l, .. } => assert_eq!(l, line, "{e}"),
        other => panic!("expected a parse error, got {other}"),
    }
}

#[test]
fn grids_round_trip_through_a_directory() {
    let dir = tempfile::tempdir().unwrap();
    let g = compute_landscape_grid(
        &hollow_triangle(),
        Region::new(0.0, 3.0, -0.5, 2.5).unwrap(),
        0.1,
        2,
        WeightVector::new(1.0, 0.7).unwrap(),
        1,
    )
    .unwrap();
    let written = write_grid(&g, dir.path(), true).unwrap();
    assert_eq!(written.len(), 2 * 2 + 1);
    assert_eq!(read_grid(dir.path()).unwrap(), g);
    assert_eq!(read_grid(&dir.path().join("manifest.json")).unwrap(), g);

    let pgm = std::fs::read_to_string(dir.path().join("lambda_1.pgm")).unwrap();
    let mut lines = pgm.lines();
    assert_eq!(lines.next(), Some("P2"));
    assert_eq!(lines.next(), Some(format!("{} {}", g.n1(), g.n2()).as_str()));
    assert_eq!(lines.next(), Some("255"));
    let pixels: Vec<u32> = lines.flat_map(|l| l.split(' ').map(|p| p.parse().unwrap())).collect();
    assert_eq!(pixels.len(), g.n1() * g.n2());
    assert_eq!(pixels.iter().max(), Some(&255));
}

#[test]
fn damaged_grid_files_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let rects = random_rects(&mut rng(500), 3, 0.0, 2.0, 4.0);
    let g = rect_landscape_grid(&rects, Region::new(0.0, 2.0, 0.0, 2.0).unwrap(), 0.5, 1, WeightVector::UNIT)
        .unwrap();
    write_grid(&g, dir.path(), false).unwrap();
    let csv = dir.path().join("lambda_1.csv");
    let mut text = std::fs::read_to_string(&csv).unwrap();
    text = text.replacen('\n', "\n0,0,zero,0,0\n", 1);
    let rows: Vec<&str> = text.lines().collect();
    std::fs::write(&csv, rows[..5].join("\n") + "\n").unwrap();
    let e = read_grid(dir.path()).unwrap_err();
    assert!(e.to_string().contains("lambda_1.csv:2"), "{e}");
}

proptest! {
    #[test]
    fn numbers_round_trip(x in prop::num::f64::ANY) {
        let back = parse_num(&fmt_num(x)).unwrap();
        if x.is_nan() {
            prop_assert!(back.is_nan());
        } else {
            prop_assert_eq!(back.to_bits(), x.to_bits());
        }
    }

    #[test]
    fn complexes_round_trip(seed in 0u64..10_000) {
        let c = random_complex(&mut rng(seed), 12);
        let p = Path::new("c.txt");
        prop_assert_eq!(parse_complex(&format_complex(&c), p).unwrap(), c);
    }

    #[test]
    fn rects_round_trip(seed in 0u64..10_000) {
        let r = random_rects(&mut rng(seed), 6, -3.0, 3.0, 1e6);
        prop_assert_eq!(parse_rects(&format_rects(&r), Path::new("r.txt")).unwrap(), r);
    }

    #[test]
    fn values_round_trip(v in prop::collection::vec(-1e6f64..1e6, 0..40)) {
        prop_assert_eq!(parse_values(&format_values(&v), Path::new("v.txt")).unwrap(), v);
    }
}

#[test]
fn point_clouds_and_distances_round_trip() {
    let pts = vec![vec![0.0, 0.0], vec![3.0, 4.0], vec![-1.5, 0.25]];
    let f = [0.5, 1.5, 0.1];
    let p = Path::new("p.csv");
    let back = parse_point_cloud(&format_point_cloud(&pts, Some(&f)), p).unwrap();
    assert_eq!(back.points, pts);
    assert_eq!(back.values.as_deref(), Some(&f[..]));
    assert_eq!(parse_point_cloud(&format_point_cloud(&pts, None), p).unwrap().values, None);

    let d = DistanceMatrix::euclidean(&pts).unwrap();
    let text = format_distance_matrix(&d);
    assert!(text.starts_with("\n5\n"));
    assert_eq!(parse_distance_matrix(&text, p).unwrap(), d);
    // The empty first row may be left out.
    assert_eq!(parse_distance_matrix(text.trim_start(), p).unwrap(), d);
}

#[test]
fn parse_errors_carry_line_numbers() {
    let p = Path::new("bad.txt");
    parse_error_at(parse_complex("0 ; 0 0\n1 ; 0 0\n0 1 ; 1\n", p).unwrap_err(), 3);
    parse_error_at(parse_complex("# c\n0 ; 0 0\nx ; 0 0\n", p).unwrap_err(), 3);
    parse_error_at(parse_rects("0 0 1 1\n\n2 2 1 1\n", p).unwrap_err(), 3);
    parse_error_at(parse_values("1\n2\nnan\n", p).unwrap_err(), 3);
    parse_error_at(parse_point_cloud("x0,x1\n1,2\n3\n", p).unwrap_err(), 3);
    parse_error_at(parse_distance_matrix("\n1\n1 2 3\n", p).unwrap_err(), 3);
    assert!(parse_complex("0 1 ; 0 0\n", p).unwrap_err().to_string().starts_with("bad.txt:"));
}

#[test]
fn features_have_a_shape_hash_and_header() {
    let reg = Region::new(0.0, 1.0, 0.0, 1.0).unwrap();
    let grid = |seed| rect_landscape_grid(&random_rects(&mut rng(seed), 3, 0.0, 1.0, 8.0), reg, 0.5, 2, WeightVector::UNIT).unwrap();
    let (a, b) = (grid(1), grid(2));
    let text = format_features(&["A".into(), "B".into()], &[a.clone(), b]).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], format!("# grid_sha256={}", GridManifest::of(&a, false).shape_hash()));
    assert_eq!(lines[1], "label,f0,f1,f2,f3,f4,f5,f6,f7,f8,f9,f10,f11,f12,f13,f14,f15,f16,f17");
    assert_eq!(lines.len(), 4);
    assert!(lines[2].starts_with("A,"));
    assert_eq!(lines[2].split(',').count(), 19);

    let other = rect_landscape_grid(&random_rects(&mut rng(3), 3, 0.0, 1.0, 8.0), reg, 0.25, 2, WeightVector::UNIT).unwrap();
    assert!(format_features(&["A".into(), "B".into()], &[a, other]).is_err());
}
