use std::cmp::Ordering;

use super::{Bar, Barcode};
use crate::bifiltration::SliceFiltration;
use crate::error::{Error, Result};

/// Column reduction strategy. Both produce the same barcode.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Algorithm {
    /// Reduction of the coboundary matrix (anti-transpose) with clearing.
    #[default]
    Cohomology,
    /// Standard left-to-right reduction of the boundary matrix with clearing.
    Homology,
}

/// Barcode of `filtration` in dimension `hom_dim`.
pub fn compute_barcode(filtration: &SliceFiltration<'_>, hom_dim: usize) -> Result<Barcode> {
    compute_barcode_with(filtration, hom_dim, Algorithm::Cohomology)
}

pub fn compute_barcode_with(
    filtration: &SliceFiltration<'_>,
    hom_dim: usize,
    algorithm: Algorithm,
) -> Result<Barcode> {
    let order = FiltrationOrder::new(filtration, hom_dim)?;
    let pairs = match algorithm {
        Algorithm::Cohomology => order.cohomology_pairs(hom_dim),
        Algorithm::Homology => order.homology_pairs(hom_dim),
    };
    let times = filtration.times();
    let mut bars = Vec::with_capacity(pairs.len());
    for (birth, death) in pairs {
        let b = times[birth];
        let d = death.map_or(f64::INFINITY, |d| times[d]);
        if d > b {
            bars.push(Bar::new(b, d, hom_dim));
        }
    }
    Ok(Barcode {
        dim: hom_dim,
        bars,
        base_point: filtration.base_point(),
        weight: filtration.weight(),
    })
}

const NONE: u32 = u32::MAX;

/// Simplices sorted by `(time, dim, index)` and the inverse permutation.
struct FiltrationOrder<'f, 'a> {
    filtration: &'f SliceFiltration<'a>,
    /// Position -> simplex index.
    order: Vec<usize>,
    /// Simplex index -> position.
    position: Vec<u32>,
}

impl<'f, 'a> FiltrationOrder<'f, 'a> {
    fn new(filtration: &'f SliceFiltration<'a>, hom_dim: usize) -> Result<Self> {
        let complex = filtration.complex();
        let times = filtration.times();
        if complex.len() >= NONE as usize {
            return Err(Error::input("complex too large"));
        }
        // Only dimensions hom_dim - 1 ..= hom_dim + 1 take part.
        let relevant = |d: usize| d + 1 >= hom_dim && d <= hom_dim + 1;
        for i in 0..complex.len() {
            let s = complex.simplex(i);
            let t = times[i];
            if t.is_nan() {
                return Err(Error::input(format!("entry time of {:?} is NaN", s.vertices())));
            }
            for &f in complex.facets(i) {
                if times[f] > t {
                    return Err(Error::input(format!(
                        "face {:?} enters at {} after its coface {:?} at {}",
                        complex.simplex(f).vertices(),
                        times[f],
                        s.vertices(),
                        t
                    )));
                }
            }
        }
        let mut order: Vec<usize> = (0..complex.len())
            .filter(|&i| relevant(complex.simplex(i).dim()))
            .collect();
        order.sort_by(|&a, &b| {
            times[a]
                .partial_cmp(&times[b])
                .unwrap_or(Ordering::Equal)
                .then_with(|| complex.simplex(a).dim().cmp(&complex.simplex(b).dim()))
                .then_with(|| a.cmp(&b))
        });
        let mut position = vec![NONE; complex.len()];
        for (p, &i) in order.iter().enumerate() {
            position[i] = p as u32;
        }
        Ok(FiltrationOrder {
            filtration,
            order,
            position,
        })
    }

    fn dim_at(&self, pos: usize) -> usize {
        self.filtration.complex().simplex(self.order[pos]).dim()
    }

    /// Persistence pairs `(birth, Some(death))` / essential `(birth, None)`
    /// as simplex indices, via the coboundary matrix.
    fn cohomology_pairs(&self, k: usize) -> Vec<(usize, Option<usize>)> {
        let complex = self.filtration.complex();
        let n = self.order.len();
        let mut cleared = vec![false; n];
        let mut out = Vec::new();

        let mut pass = |dim: usize, cleared: &mut Vec<bool>, record: bool| {
            let mut owner = vec![NONE; n];
            let mut store: Vec<Vec<u32>> = Vec::new();
            let mut col: Vec<u32> = Vec::new();
            let mut scratch: Vec<u32> = Vec::new();
            for pos in (0..n).rev() {
                if self.dim_at(pos) != dim || cleared[pos] {
                    continue;
                }
                let s = self.order[pos];
                col.clear();
                col.extend(complex.cofacets(s).iter().map(|&c| self.position[c]));
                col.sort_unstable();
                while let Some(&p) = col.first() {
                    let o = owner[p as usize];
                    if o == NONE {
                        break;
                    }
                    symmetric_difference(&col, &store[o as usize], &mut scratch);
                    std::mem::swap(&mut col, &mut scratch);
                }
                match col.first() {
                    Some(&p) => {
                        owner[p as usize] = store.len() as u32;
                        store.push(col.clone());
                        if record {
                            out.push((s, Some(self.order[p as usize])));
                        } else {
                            cleared[p as usize] = true;
                        }
                    }
                    None => {
                        if record {
                            out.push((s, None));
                        }
                    }
                }
            }
        };

        if k >= 1 {
            pass(k - 1, &mut cleared, false);
        }
        pass(k, &mut cleared, true);
        out
    }

    /// Same pairs via the boundary matrix.
    fn homology_pairs(&self, k: usize) -> Vec<(usize, Option<usize>)> {
        let complex = self.filtration.complex();
        let n = self.order.len();
        let mut owner = vec![NONE; n];
        let mut store: Vec<Vec<u32>> = Vec::new();
        let mut paired = vec![false; n];
        let mut out = Vec::new();
        let mut col: Vec<u32> = Vec::new();
        let mut scratch: Vec<u32> = Vec::new();

        let mut reduce = |pos: usize,
                          col: &mut Vec<u32>,
                          owner: &mut Vec<u32>,
                          store: &mut Vec<Vec<u32>>|
         -> Option<u32> {
            col.clear();
            col.extend(
                complex
                    .facets(self.order[pos])
                    .iter()
                    .map(|&f| self.position[f]),
            );
            col.sort_unstable();
            while let Some(&p) = col.last() {
                let o = owner[p as usize];
                if o == NONE {
                    break;
                }
                symmetric_difference(col, &store[o as usize], &mut scratch);
                std::mem::swap(col, &mut scratch);
            }
            let low = col.last().copied();
            if let Some(p) = low {
                owner[p as usize] = store.len() as u32;
                store.push(col.clone());
            }
            low
        };

        // Dimension k + 1 first: its pivots are the k-simplices that die, so
        // their own columns are known to vanish.
        for pos in 0..n {
            if self.dim_at(pos) != k + 1 {
                continue;
            }
            if let Some(low) = reduce(pos, &mut col, &mut owner, &mut store) {
                paired[low as usize] = true;
                out.push((self.order[low as usize], Some(self.order[pos])));
            }
        }
        for pos in 0..n {
            if self.dim_at(pos) != k || paired[pos] {
                continue;
            }
            if k == 0 || reduce(pos, &mut col, &mut owner, &mut store).is_none() {
                out.push((self.order[pos], None));
            }
        }
        out
    }
}

/// `out = a xor b` for sorted, duplicate-free slices.
fn symmetric_difference(a: &[u32], b: &[u32], out: &mut Vec<u32>) {
    out.clear();
    out.reserve(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bifiltration::{push_to_line, BifilteredComplex, Simplex};
    use crate::grade::{Bigrade, WeightVector};

    /// Triangle boundary with vertices at `(0,0)` and edges at `(1,1)`,
    /// optionally filled at `(2,2)`.
    fn triangle(filled: bool) -> BifilteredComplex {
        let g = |t: f64| vec![Bigrade::new(t, t)];
        let mut s = vec![
            Simplex::new(vec![0], g(0.0)).unwrap(),
            Simplex::new(vec![1], g(0.0)).unwrap(),
            Simplex::new(vec![2], g(0.0)).unwrap(),
            Simplex::new(vec![0, 1], g(1.0)).unwrap(),
            Simplex::new(vec![0, 2], g(1.0)).unwrap(),
            Simplex::new(vec![1, 2], g(1.0)).unwrap(),
        ];
        if filled {
            s.push(Simplex::new(vec![0, 1, 2], g(2.0)).unwrap());
        }
        BifilteredComplex::new(3, s).unwrap()
    }

    fn barcode(c: &BifilteredComplex, dim: usize, alg: Algorithm) -> Vec<(f64, f64)> {
        let f = push_to_line(c, Bigrade::new(0.0, 0.0), WeightVector::UNIT).unwrap();
        compute_barcode_with(&f, dim, alg).unwrap().sorted_pairs()
    }

    #[test]
    fn hollow_triangle() {
        for alg in [Algorithm::Cohomology, Algorithm::Homology] {
            let c = triangle(false);
            assert_eq!(barcode(&c, 1, alg), vec![(1.0, f64::INFINITY)]);
            assert_eq!(
                barcode(&c, 0, alg),
                vec![(0.0, 1.0), (0.0, 1.0), (0.0, f64::INFINITY)]
            );
        }
    }

    #[test]
    fn filled_triangle() {
        for alg in [Algorithm::Cohomology, Algorithm::Homology] {
            assert_eq!(barcode(&triangle(true), 1, alg), vec![(1.0, 2.0)]);
            assert_eq!(barcode(&triangle(true), 2, alg), vec![]);
        }
    }

    #[test]
    fn empty_filtration() {
        let c = BifilteredComplex::empty();
        assert!(barcode(&c, 0, Algorithm::Cohomology).is_empty());
        assert!(barcode(&c, 3, Algorithm::Homology).is_empty());
    }

    #[test]
    fn time_inversion_rejected() {
        let c = BifilteredComplex::new(
            2,
            vec![
                Simplex::new(vec![0], vec![Bigrade::new(3.0, 3.0)]).unwrap(),
                Simplex::new(vec![1], vec![Bigrade::new(0.0, 0.0)]).unwrap(),
                Simplex::new(vec![0, 1], vec![Bigrade::new(2.0, 2.0)]).unwrap(),
            ],
        )
        .unwrap();
        let f = push_to_line(&c, Bigrade::new(0.0, 0.0), WeightVector::UNIT).unwrap();
        assert!(compute_barcode(&f, 0).is_err());
    }

    #[test]
    fn symmetric_difference_merges() {
        let mut out = Vec::new();
        symmetric_difference(&[1, 3, 5, 7], &[2, 3, 7, 9], &mut out);
        assert_eq!(out, vec![1, 2, 5, 9]);
    }
}
