use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::algebra::SparseVec;
use super::constructors::{
    bin_coalgebra, binq_coalgebra, dir_coalgebra, div_coalgebra, exponent_vectors,
    polynomial_coalgebra,
};
use super::graded::GradedCoalgebra;
use crate::combinat::qint::{factorial, q_factorial};
use crate::sparse::add_term;
use crate::{Error, Rational, Result};

/// A linear map between coalgebras given on basis elements, verified to
/// commute with Δ and ε.
#[derive(Clone, Debug)]
pub struct CoalgebraMorphism {
    source: Arc<GradedCoalgebra>,
    target: Arc<GradedCoalgebra>,
    images: Vec<SparseVec>,
}

impl CoalgebraMorphism {
    pub fn new(
        source: Arc<GradedCoalgebra>,
        target: Arc<GradedCoalgebra>,
        images: Vec<SparseVec>,
    ) -> Result<Self> {
        if images.len() != source.dim() || images.iter().flatten().any(|(j, _)| *j >= target.dim())
        {
            return Err(Error::Shape("morphism images do not match the bases".into()));
        }
        let images = images
            .into_iter()
            .map(|v| {
                let mut m = BTreeMap::new();
                for (j, c) in v {
                    add_term(&mut m, j, c);
                }
                m.into_iter().collect()
            })
            .collect();
        let f = CoalgebraMorphism {
            source,
            target,
            images,
        };
        f.verify()?;
        Ok(f)
    }

    /// Checks `(φ⊗φ)Δ = Δφ` and `ε∘φ = ε` on every source basis element.
    pub fn verify(&self) -> Result<()> {
        for b in 0..self.source.dim() {
            let mut lhs = BTreeMap::new();
            for (l, r, c) in self.source.comult(b) {
                for (i, a) in &self.images[*l] {
                    for (j, d) in &self.images[*r] {
                        add_term(&mut lhs, (*i, *j), c * a * d);
                    }
                }
            }
            let rhs = self.target.comult_of(&self.images[b]);
            if lhs != rhs {
                return Err(Error::VerificationFailed(format!(
                    "{} → {}: Δ not preserved on {}",
                    self.source.name(),
                    self.target.name(),
                    self.source.label(b)
                )));
            }
            if self.target.counit_of(&self.images[b]) != *self.source.counit(b) {
                return Err(Error::VerificationFailed(format!(
                    "{} → {}: ε not preserved on {}",
                    self.source.name(),
                    self.target.name(),
                    self.source.label(b)
                )));
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &Arc<GradedCoalgebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GradedCoalgebra> {
        &self.target
    }

    pub fn image(&self, i: usize) -> &SparseVec {
        &self.images[i]
    }

    pub fn images(&self) -> &[SparseVec] {
        &self.images
    }

    pub fn apply(&self, v: &[(usize, Rational)]) -> SparseVec {
        let mut out = BTreeMap::new();
        for (i, c) in v {
            for (j, d) in &self.images[*i] {
                add_term(&mut out, *j, c * d);
            }
        }
        out.into_iter().collect()
    }

    pub fn compose(&self, after: &CoalgebraMorphism) -> Result<CoalgebraMorphism> {
        if self.target.as_ref() != after.source.as_ref() {
            return Err(Error::Shape("composition of mismatched morphisms".into()));
        }
        let images = self.images.iter().map(|v| after.apply(v)).collect();
        CoalgebraMorphism::new(self.source.clone(), after.target.clone(), images)
    }

    /// The inverse map, itself verified as a coalgebra morphism. Fails with
    /// `NotInvertible` when the matrix is singular.
    pub fn inverse(&self) -> Result<CoalgebraMorphism> {
        let n = self.source.dim();
        if n != self.target.dim() {
            return Err(Error::NotInvertible);
        }
        let images = match self.monomial_inverse() {
            Some(images) => images,
            None => self.general_inverse()?,
        };
        CoalgebraMorphism::new(self.target.clone(), self.source.clone(), images)
    }

    fn monomial_inverse(&self) -> Option<Vec<SparseVec>> {
        let mut images = vec![None; self.target.dim()];
        for (i, v) in self.images.iter().enumerate() {
            match v.as_slice() {
                [(j, c)] if images[*j].is_none() => images[*j] = Some(vec![(i, c.recip())]),
                _ => return None,
            }
        }
        images.into_iter().collect()
    }

    fn general_inverse(&self) -> Result<Vec<SparseVec>> {
        // Gauss–Jordan on [M | I] where column i of M is the image of b_i.
        let n = self.source.dim();
        let mut rows: Vec<Vec<Rational>> = vec![vec![Rational::zero(); 2 * n]; n];
        for (i, v) in self.images.iter().enumerate() {
            for (j, c) in v {
                rows[*j][i] = c.clone();
            }
        }
        for (j, row) in rows.iter_mut().enumerate() {
            row[n + j] = Rational::one();
        }
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !rows[r][col].is_zero())
                .ok_or(Error::NotInvertible)?;
            rows.swap(col, pivot);
            let inv = rows[col][col].recip();
            for x in rows[col].iter_mut() {
                *x *= &inv;
            }
            let pivot_row = rows[col].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != col && !row[col].is_zero() {
                    let f = row[col].clone();
                    for (x, p) in row.iter_mut().zip(&pivot_row) {
                        *x -= &f * p;
                    }
                }
            }
        }
        // Row i of M⁻¹ gives the coefficients of b_i; column j is the
        // image of target basis element j.
        let mut images = vec![Vec::new(); n];
        for (i, row) in rows.iter().enumerate() {
            for j in 0..n {
                let c = &row[n + j];
                if !c.is_zero() {
                    images[j].push((i, c.clone()));
                }
            }
        }
        for v in &mut images {
            v.sort_by_key(|(i, _)| *i);
        }
        Ok(images)
    }
}

/// `θ: Bin → k[X]`, `y_n ↦ X^n`.
pub fn theta(n_max: usize) -> Result<CoalgebraMorphism> {
    let src = Arc::new(bin_coalgebra(n_max));
    let tgt = Arc::new(polynomial_coalgebra(&["X"], n_max as u32));
    let images = (0..=n_max).map(|n| vec![(n, Rational::one())]).collect();
    CoalgebraMorphism::new(src, tgt, images)
}

/// `γ: Div → Bin`, `x_n ↦ y_n / n!`.
pub fn gamma(n_max: usize) -> Result<CoalgebraMorphism> {
    let src = Arc::new(div_coalgebra(n_max));
    let tgt = Arc::new(bin_coalgebra(n_max));
    let images = (0..=n_max).map(|n| vec![(n, factorial(n).recip())]).collect();
    CoalgebraMorphism::new(src, tgt, images)
}

/// `γ_q: Div → Bin_q`, `x_n ↦ y_n / [n]_q!`.
pub fn gamma_q(n_max: usize, q: &Rational) -> Result<CoalgebraMorphism> {
    let tgt = Arc::new(binq_coalgebra(n_max, q)?);
    let src = Arc::new(div_coalgebra(n_max));
    let images = (0..=n_max)
        .map(|n| vec![(n, q_factorial(n, q).recip())])
        .collect();
    CoalgebraMorphism::new(src, tgt, images)
}

/// `η: Dir_(m) → k[X₁, …, X_m]`, `z_n ↦ ∏ X_{o(p)}^{e_p} / e_p!` where `p_i`
/// is the `i`-th prime and `n = ∏ p^{e_p}`.
pub fn eta(m: usize, d: u32) -> Result<CoalgebraMorphism> {
    let src = Arc::new(dir_coalgebra(m, d)?);
    let vars: Vec<String> = (1..=m).map(|i| format!("X{i}")).collect();
    let tgt = Arc::new(polynomial_coalgebra(&vars, d));
    let mut images = vec![Vec::new(); src.dim()];
    for e in exponent_vectors(m, d) {
        let z = src
            .index_of(&format!("z{}", super::constructors::dirichlet_index(&e)))
            .expect("exponent vector in basis");
        let x = tgt
            .index_of(&super::constructors::monomial_label(&vars, &e))
            .expect("monomial in basis");
        let weight = e
            .iter()
            .fold(Rational::one(), |acc, &k| acc * factorial(k as usize));
        images[z] = vec![(x, weight.recip())];
    }
    CoalgebraMorphism::new(src, tgt, images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, ratio};

    fn coefficient(f: &CoalgebraMorphism, from: &str, to: &str) -> Rational {
        let i = f.source().index_of(from).unwrap();
        let j = f.target().index_of(to).unwrap();
        f.image(i)
            .iter()
            .find(|(k, _)| *k == j)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    #[test]
    fn examples() {
        assert_eq!(coefficient(&gamma(4).unwrap(), "x2", "y2"), ratio(1, 2));
        assert_eq!(coefficient(&gamma_q(4, &rat(2)).unwrap(), "x3", "y3"), ratio(1, 21));
        assert_eq!(coefficient(&eta(2, 3).unwrap(), "z12", "X1^2X2"), ratio(1, 2));
        assert_eq!(coefficient(&theta(3).unwrap(), "y3", "X^3"), rat(1));
    }

    #[test]
    fn inverses_are_morphisms() {
        for f in [theta(6).unwrap(), gamma(6).unwrap(), eta(2, 4).unwrap()] {
            let g = f.inverse().unwrap();
            let id = f.compose(&g).unwrap();
            for i in 0..f.source().dim() {
                assert_eq!(id.image(i), &vec![(i, Rational::one())]);
            }
        }
    }

    #[test]
    fn general_inverse_agrees_with_monomial() {
        let f = gamma_q(5, &ratio(1, 2)).unwrap();
        let fast = f.monomial_inverse().unwrap();
        assert_eq!(f.general_inverse().unwrap(), fast);
    }

    #[test]
    fn eta_without_factorials_is_rejected() {
        let src = Arc::new(dir_coalgebra(1, 2).unwrap());
        let tgt = Arc::new(polynomial_coalgebra(&["X1"], 2));
        let images = vec![
            vec![(0, rat(1))],
            vec![(1, rat(1))],
            vec![(2, rat(1))],
        ];
        assert!(matches!(
            CoalgebraMorphism::new(src, tgt, images),
            Err(Error::VerificationFailed(_))
        ));
    }
}
