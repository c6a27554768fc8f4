#![allow(dead_code)]

use mplandscape::bifiltration::{BifilteredComplex, Simplex};
use mplandscape::grade::{minimal_elements, Bigrade};
use mplandscape::multiland::LandscapeGrid;
use mplandscape::persistence::brute_force_rank;
use mplandscape::rect::{rect_rank, Rect, RectangleBarcode};
use rand::Rng;
use rand_chacha::ChaCha20Rng;

pub fn rng(stream: u64) -> ChaCha20Rng {
    mplandscape::rng::stream_rng(0x5eed, stream)
}

/// Uniform on `lo + i / denom` for integer `i`, so sums and differences stay exact.
pub fn dyadic(rng: &mut ChaCha20Rng, lo: f64, hi: f64, denom: f64) -> f64 {
    let n = ((hi - lo) * denom).round() as i64;
    lo + rng.random_range(0..=n) as f64 / denom
}

pub fn random_rect(rng: &mut ChaCha20Rng, lo: f64, hi: f64, denom: f64) -> Rect {
    loop {
        let (mut a1, mut b1) = (dyadic(rng, lo, hi, denom), dyadic(rng, lo, hi, denom));
        let (mut a2, mut b2) = (dyadic(rng, lo, hi, denom), dyadic(rng, lo, hi, denom));
        if a1 > b1 {
            std::mem::swap(&mut a1, &mut b1);
        }
        if a2 > b2 {
            std::mem::swap(&mut a2, &mut b2);
        }
        if a1 < b1 && a2 < b2 {
            return Rect::new(Bigrade::new(a1, a2), Bigrade::new(b1, b2)).unwrap();
        }
    }
}

pub fn random_rects(rng: &mut ChaCha20Rng, max: usize, lo: f64, hi: f64, denom: f64) -> RectangleBarcode {
    let n = rng.random_range(1..=max);
    RectangleBarcode::new((0..n).map(|_| random_rect(rng, lo, hi, denom)).collect())
}

/// Random monotone complex on 3 or 4 vertices with at most `max_simplices`
/// simplices, grades on the 1/4 lattice, some of them bicritical.
pub fn random_complex(rng: &mut ChaCha20Rng, max_simplices: usize) -> BifilteredComplex {
    let nv = rng.random_range(3..=4usize);
    let mut simplices: Vec<Simplex> = Vec::new();
    let mut grades: Vec<(Vec<usize>, Vec<Bigrade>)> = Vec::new();
    let point = |rng: &mut ChaCha20Rng| Bigrade::new(dyadic(rng, 0.0, 4.0, 4.0), dyadic(rng, 0.0, 4.0, 4.0));
    for v in 0..nv {
        grades.push((vec![v], vec![point(rng)]));
    }
    let mut edges = Vec::new();
    for i in 0..nv {
        for j in i + 1..nv {
            if grades.len() < max_simplices && rng.random_bool(0.75) {
                edges.push((i, j));
                let g = join_grades(rng, &grades, &[vec![i], vec![j]]);
                grades.push((vec![i, j], g));
            }
        }
    }
    for i in 0..nv {
        for j in i + 1..nv {
            for k in j + 1..nv {
                let faces = [vec![i, j], vec![i, k], vec![j, k]];
                let present = faces.iter().all(|f| edges.contains(&(f[0], f[1])));
                if present && grades.len() < max_simplices && rng.random_bool(0.5) {
                    let g = join_grades(rng, &grades, &faces);
                    grades.push((vec![i, j, k], g));
                }
            }
        }
    }
    for (v, g) in grades {
        simplices.push(Simplex::new(v, g).unwrap());
    }
    BifilteredComplex::new(nv, simplices).unwrap()
}

fn join_grades(rng: &mut ChaCha20Rng, known: &[(Vec<usize>, Vec<Bigrade>)], faces: &[Vec<usize>]) -> Vec<Bigrade> {
    let n = if rng.random_bool(0.3) { 2 } else { 1 };
    let mut out = Vec::new();
    for _ in 0..n {
        let mut g = Bigrade::new(dyadic(rng, 0.0, 4.0, 4.0), dyadic(rng, 0.0, 4.0, 4.0));
        for f in faces {
            let fg = &known.iter().find(|(v, _)| v == f).unwrap().1;
            let pick = fg[rng.random_range(0..fg.len())];
            g = Bigrade::new(g.x1.max(pick.x1), g.x2.max(pick.x2));
        }
        out.push(g);
    }
    minimal_elements(&out)
}

/// `sup { h >= 0 : rank(x - h, x + h) >= k }` by bisection on `[0, hi]`.
pub fn bisect_landscape(rank: impl Fn(Bigrade, Bigrade) -> usize, x: Bigrade, k: usize, hi: f64) -> f64 {
    let ok = |h: f64| rank(Bigrade::new(x.x1 - h, x.x2 - h), Bigrade::new(x.x1 + h, x.x2 + h)) >= k;
    if !ok(0.0) {
        return 0.0;
    }
    let (mut lo, mut hi) = (0.0, hi);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if ok(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

pub fn bisect_rect(rects: &RectangleBarcode, x: Bigrade, k: usize) -> f64 {
    bisect_landscape(|a, b| rect_rank(rects, &a, &b).unwrap(), x, k, 64.0)
}

pub fn bisect_complex(complex: &BifilteredComplex, x: Bigrade, k: usize, dim: usize) -> f64 {
    bisect_landscape(|a, b| brute_force_rank(complex, a, b, dim).unwrap(), x, k, 64.0)
}

pub fn sup_diff(a: &LandscapeGrid, b: &LandscapeGrid) -> f64 {
    assert!(a.same_shape(b));
    a.values.iter().zip(&b.values).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Hollow triangle: vertices at (0,0), edges at (1,1).
pub fn hollow_triangle() -> BifilteredComplex {
    let g = |t: f64| vec![Bigrade::new(t, t)];
    let mut simplices: Vec<Simplex> = (0..3).map(|v| Simplex::new(vec![v], g(0.0)).unwrap()).collect();
    for e in [[0, 1], [0, 2], [1, 2]] {
        simplices.push(Simplex::new(e.to_vec(), g(1.0)).unwrap());
    }
    BifilteredComplex::new(3, simplices).unwrap()
}
