use std::collections::HashMap;

use num_traits::One;

use super::complex::CochainComplex;
use super::matrix::RationalMatrix;
use crate::combinat::SimplicialComplex;
use crate::{Rational, Result};

/// Cochains on faces with `lo + 1, …, n_max + 2` vertices; `lo = 0`
/// includes the empty face.
fn cochains(k: &SimplicialComplex, lo: usize, n_max: usize) -> Result<CochainComplex> {
    let levels: Vec<Vec<Vec<usize>>> = (lo..=n_max + 2)
        .map(|size| {
            if size == 0 {
                vec![Vec::new()]
            } else {
                k.faces_of_dim(size - 1)
            }
        })
        .collect();
    let mut diffs = Vec::new();
    for w in levels.windows(2) {
        let index: HashMap<&Vec<usize>, usize> = w[1].iter().enumerate().map(|(i, f)| (f, i)).collect();
        let mut rows = vec![Vec::new(); w[1].len()];
        for (r, face) in w[1].iter().enumerate() {
            for i in 0..face.len() {
                let mut sub = face.clone();
                sub.remove(i);
                let c = w[0].iter().position(|f| *f == sub).expect("closed complex");
                let sign = if i % 2 == 0 { Rational::one() } else { -Rational::one() };
                rows[r].push((c, sign));
            }
            debug_assert!(index.contains_key(face));
        }
        diffs.push(RationalMatrix::from_rows(w[0].len(), rows));
    }
    CochainComplex::new(levels.iter().map(|l| l.len()).collect(), diffs)
}

/// `dim H^n(K)` for `0 ≤ n ≤ n_max`.
pub fn simplicial_cohomology(k: &SimplicialComplex, n_max: usize) -> Result<Vec<usize>> {
    cochains(k, 1, n_max)?.cohomology_dims(n_max)
}

/// `dim H̃^n(K)` for `−1 ≤ n ≤ n_max`; entry `0` is degree `−1`, nonzero
/// only for the empty complex.
pub fn reduced_simplicial_cohomology(k: &SimplicialComplex, n_max: usize) -> Result<Vec<usize>> {
    cochains(k, 0, n_max)?.cohomology_dims(n_max + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::Poset;

    #[test]
    fn circle_and_points() {
        let circle = SimplicialComplex::order_complex(&Poset::crown());
        assert_eq!(simplicial_cohomology(&circle, 2).unwrap(), vec![1, 1, 0]);
        assert_eq!(reduced_simplicial_cohomology(&circle, 2).unwrap(), vec![0, 0, 1, 0]);
        let two = SimplicialComplex::order_complex(&Poset::antichain(2));
        assert_eq!(reduced_simplicial_cohomology(&two, 1).unwrap(), vec![0, 1, 0]);
        let empty = SimplicialComplex::order_complex(&Poset::antichain(0));
        assert_eq!(reduced_simplicial_cohomology(&empty, 0).unwrap(), vec![1, 0]);
    }
}
