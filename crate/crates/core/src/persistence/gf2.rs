//! Dense bit vectors over the two-element field and Gaussian elimination.

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct BitVec {
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    /// Index of the highest set bit.
    pub fn leading(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + 63 - w.leading_zeros() as usize)
    }
}

/// Row-echelon basis keyed by leading bit.
#[derive(Default)]
pub(crate) struct EchelonBasis {
    by_leading: std::collections::BTreeMap<usize, BitVec>,
}

impl EchelonBasis {
    /// Reduces `v` against the basis; inserts it if independent.
    /// Returns whether it was independent.
    pub fn insert(&mut self, mut v: BitVec) -> bool {
        while let Some(l) = v.leading() {
            match self.by_leading.get(&l) {
                Some(b) => v.xor_assign(b),
                None => {
                    self.by_leading.insert(l, v);
                    return true;
                }
            }
        }
        false
    }

    pub fn rank(&self) -> usize {
        self.by_leading.len()
    }
}

/// Rank of a set of vectors.
pub(crate) fn rank(vectors: impl IntoIterator<Item = BitVec>) -> usize {
    let mut basis = EchelonBasis::default();
    for v in vectors {
        basis.insert(v);
    }
    basis.rank()
}

/// Basis of the kernel of the linear map whose `j`-th column is `columns[j]`.
/// Kernel vectors are expressed over the column index space.
pub(crate) fn kernel_basis(columns: &[BitVec]) -> Vec<BitVec> {
    let n = columns.len();
    // Pairs (reduced image, combination of original columns).
    let mut pivots: std::collections::BTreeMap<usize, (BitVec, BitVec)> = Default::default();
    let mut kernel = Vec::new();
    for (j, c) in columns.iter().enumerate() {
        let mut image = c.clone();
        let mut combo = BitVec::zeros(n);
        combo.set(j);
        loop {
            match image.leading() {
                None => {
                    kernel.push(combo);
                    break;
                }
                Some(l) => match pivots.get(&l) {
                    Some((pi, pc)) => {
                        image.xor_assign(pi);
                        combo.xor_assign(pc);
                    }
                    None => {
                        pivots.insert(l, (image, combo));
                        break;
                    }
                },
            }
        }
    }
    kernel
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(len: usize, ones: &[usize]) -> BitVec {
        let mut v = BitVec::zeros(len);
        for &i in ones {
            v.set(i);
        }
        v
    }

    #[test]
    fn rank_of_dependent_set() {
        let vs = vec![bv(70, &[0, 65]), bv(70, &[65, 3]), bv(70, &[0, 3])];
        assert_eq!(rank(vs), 2);
    }

    #[test]
    fn kernel_of_triangle_boundary() {
        // Edges 01, 02, 12 over vertices 0, 1, 2.
        let cols = vec![bv(3, &[0, 1]), bv(3, &[0, 2]), bv(3, &[1, 2])];
        let k = kernel_basis(&cols);
        assert_eq!(k, vec![bv(3, &[0, 1, 2])]);
    }
}
