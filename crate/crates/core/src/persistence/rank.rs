use super::gf2::{kernel_basis, rank, BitVec};
use crate::bifiltration::BifilteredComplex;
use crate::error::{Error, Result};
use crate::grade::Bigrade;

/// Rank of `H_k(X_a) -> H_k(X_b)` by direct linear algebra, with no use of
/// any slice or barcode.
///
/// `X_p` holds the simplices having some grade `<= p`. The rank is
/// `dim Z_a - dim(Z_a ∩ B_b) = rank[Z_a | B_b] - rank B_b`.
pub fn brute_force_rank(
    complex: &BifilteredComplex,
    a: Bigrade,
    b: Bigrade,
    hom_dim: usize,
) -> Result<usize> {
    if !a.le(&b) {
        return Err(Error::input(format!("rank query needs a <= b, got a = {a}, b = {b}")));
    }
    let k = hom_dim;
    let present = |i: usize, p: &Bigrade| complex.simplex(i).present_at(p);

    // Local coordinates for k- and (k-1)-simplices.
    let mut local = vec![usize::MAX; complex.len()];
    let (mut nk, mut nk1) = (0, 0);
    for i in 0..complex.len() {
        let d = complex.simplex(i).dim();
        if d == k {
            local[i] = nk;
            nk += 1;
        } else if k > 0 && d == k - 1 {
            local[i] = nk1;
            nk1 += 1;
        }
    }

    let boundary = |i: usize, len: usize| {
        let mut v = BitVec::zeros(len);
        for &f in complex.facets(i) {
            v.set(local[f]);
        }
        v
    };

    // Cycles of X_a, as vectors over all k-simplices.
    let chains_a: Vec<usize> = (0..complex.len())
        .filter(|&i| complex.simplex(i).dim() == k && present(i, &a))
        .collect();
    let cycles: Vec<BitVec> = if k == 0 {
        chains_a
            .iter()
            .map(|&i| {
                let mut v = BitVec::zeros(nk);
                v.set(local[i]);
                v
            })
            .collect()
    } else {
        let cols: Vec<BitVec> = chains_a.iter().map(|&i| boundary(i, nk1)).collect();
        kernel_basis(&cols)
            .into_iter()
            .map(|combo| {
                let mut v = BitVec::zeros(nk);
                for (j, &i) in chains_a.iter().enumerate() {
                    if combo.get(j) {
                        v.set(local[i]);
                    }
                }
                v
            })
            .collect()
    };

    let boundaries: Vec<BitVec> = (0..complex.len())
        .filter(|&i| complex.simplex(i).dim() == k + 1 && present(i, &b))
        .map(|i| boundary(i, nk))
        .collect();

    let rb = rank(boundaries.iter().cloned());
    let rzb = rank(boundaries.into_iter().chain(cycles));
    Ok(rzb - rb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bifiltration::Simplex;

    fn triangle(filled: bool) -> BifilteredComplex {
        let g = |t: f64| vec![Bigrade::new(t, 0.0)];
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

    #[test]
    fn hollow_triangle_cycle_survives() {
        let r = brute_force_rank(&triangle(false), Bigrade::new(1.0, 0.0), Bigrade::new(1.5, 0.0), 1);
        assert_eq!(r.unwrap(), 1);
    }

    #[test]
    fn filled_triangle_cycle_dies() {
        let r = brute_force_rank(&triangle(true), Bigrade::new(1.0, 0.0), Bigrade::new(2.0, 0.0), 1);
        assert_eq!(r.unwrap(), 0);
    }

    #[test]
    fn below_everything_is_zero() {
        let p = Bigrade::new(-1.0, -1.0);
        assert_eq!(brute_force_rank(&triangle(true), p, p, 0).unwrap(), 0);
        assert_eq!(brute_force_rank(&triangle(true), p, p, 1).unwrap(), 0);
    }

    #[test]
    fn h0_components_merge() {
        let c = triangle(false);
        let a = Bigrade::new(0.0, 0.0);
        assert_eq!(brute_force_rank(&c, a, a, 0).unwrap(), 3);
        assert_eq!(brute_force_rank(&c, a, Bigrade::new(1.0, 0.0), 0).unwrap(), 1);
    }

    #[test]
    fn incomparable_query_rejected() {
        let c = triangle(false);
        assert!(brute_force_rank(&c, Bigrade::new(1.0, 0.0), Bigrade::new(0.0, 1.0), 0).is_err());
    }
}
