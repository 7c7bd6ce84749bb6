use rayon::prelude::*;

use super::matrix::RationalMatrix;
use crate::{Error, Result};

/// `0 → C⁰ → C¹ → …` with `d^n: C^n → C^{n+1}` stored as a
/// `dim C^{n+1} × dim C^n` matrix.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    dims: Vec<usize>,
    differentials: Vec<RationalMatrix>,
}

impl CochainComplex {
    /// `dims` must have one more entry than `differentials`; `d∘d = 0` is
    /// checked exactly.
    pub fn new(dims: Vec<usize>, differentials: Vec<RationalMatrix>) -> Result<Self> {
        if dims.len() != differentials.len() + 1 {
            return Err(Error::NotAComplex(format!(
                "{} spaces for {} differentials",
                dims.len(),
                differentials.len()
            )));
        }
        for (n, d) in differentials.iter().enumerate() {
            if d.cols() != dims[n] || d.rows() != dims[n + 1] {
                return Err(Error::NotAComplex(format!(
                    "d^{n} is {}×{}, expected {}×{}",
                    d.rows(),
                    d.cols(),
                    dims[n + 1],
                    dims[n]
                )));
            }
        }
        for n in 1..differentials.len() {
            if !differentials[n].mul(&differentials[n - 1])?.is_zero() {
                return Err(Error::NotAComplex(format!("d^{n} ∘ d^{} ≠ 0", n - 1)));
            }
        }
        Ok(CochainComplex {
            dims,
            differentials,
        })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn differential(&self, n: usize) -> &RationalMatrix {
        &self.differentials[n]
    }

    pub fn len(&self) -> usize {
        self.differentials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.differentials.is_empty()
    }

    /// Ranks of `d^0, …`, computed in parallel.
    pub fn ranks(&self) -> Vec<usize> {
        self.differentials.par_iter().map(|d| d.rank()).collect()
    }

    /// `dim H^n = dim C^n − rank d^n − rank d^{n−1}` for `n ≤ n_max`.
    pub fn cohomology_dims(&self, n_max: usize) -> Result<Vec<usize>> {
        if n_max >= self.differentials.len() {
            return Err(Error::Index(format!(
                "cohomology through degree {n_max} needs d^{n_max}; complex has {} differentials",
                self.differentials.len()
            )));
        }
        let ranks: Vec<usize> = self.differentials[..=n_max]
            .par_iter()
            .map(|d| d.rank())
            .collect();
        Ok((0..=n_max)
            .map(|n| self.dims[n] - ranks[n] - if n > 0 { ranks[n - 1] } else { 0 })
            .collect())
    }
}

/// A direct sum of complexes, one per internal (multi)degree.
#[derive(Clone, Debug, Default)]
pub struct GradedComplex {
    pub blocks: Vec<(Vec<i64>, CochainComplex)>,
}

impl GradedComplex {
    /// Summed dimensions of each cochain space.
    pub fn dims(&self) -> Vec<usize> {
        let len = self.blocks.first().map_or(0, |(_, c)| c.dims().len());
        (0..len)
            .map(|n| self.blocks.iter().map(|(_, c)| c.dims()[n]).sum())
            .collect()
    }

    /// Per-block cohomology dimensions, all ranks computed in parallel.
    pub fn block_dims(&self, n_max: usize) -> Result<Vec<(Vec<i64>, Vec<usize>)>> {
        self.blocks
            .par_iter()
            .map(|(g, c)| Ok((g.clone(), c.cohomology_dims(n_max)?)))
            .collect()
    }

    pub fn cohomology_dims(&self, n_max: usize) -> Result<Vec<usize>> {
        let mut total = vec![0; n_max + 1];
        for (_, dims) in self.block_dims(n_max)? {
            for (t, d) in total.iter_mut().zip(dims) {
                *t += d;
            }
        }
        Ok(total)
    }
}
