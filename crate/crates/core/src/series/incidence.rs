use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::combinat::Poset;
use crate::{Error, Rational, Result};

/// An element of the incidence algebra of a finite poset: a value on every
/// comparable pair `x ≤ y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceFunction {
    parent: Arc<Poset>,
    values: BTreeMap<(usize, usize), Rational>,
}

impl IncidenceFunction {
    pub fn from_fn(parent: Arc<Poset>, f: impl Fn(usize, usize) -> Rational) -> Self {
        let mut values = BTreeMap::new();
        for x in 0..parent.len() {
            for y in 0..parent.len() {
                if parent.leq(x, y) {
                    values.insert((x, y), f(x, y));
                }
            }
        }
        IncidenceFunction { parent, values }
    }

    pub fn delta(parent: Arc<Poset>) -> Self {
        Self::from_fn(parent, |x, y| {
            if x == y {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn zeta(parent: Arc<Poset>) -> Self {
        Self::from_fn(parent, |_, _| Rational::one())
    }

    /// The Möbius function, as the convolution inverse of ζ.
    pub fn mobius(parent: Arc<Poset>) -> Self {
        Self::zeta(parent).invert().expect("ζ has unit diagonal")
    }

    pub fn parent(&self) -> &Arc<Poset> {
        &self.parent
    }

    /// Value at `(x, y)`; zero when `x ≰ y`.
    pub fn get(&self, x: usize, y: usize) -> Rational {
        self.values.get(&(x, y)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn values(&self) -> &BTreeMap<(usize, usize), Rational> {
        &self.values
    }

    fn same_parent(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.parent, &other.parent) || self.parent == other.parent {
            Ok(())
        } else {
            Err(Error::ParentMismatch)
        }
    }

    /// `(fg)(x, y) = Σ_{x ≤ z ≤ y} f(x, z) g(z, y)`.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        self.same_parent(other)?;
        let p = &self.parent;
        let mut values = BTreeMap::new();
        for &(x, y) in self.values.keys() {
            let mut acc = Rational::zero();
            for z in p.interval_members(x, y) {
                acc += &self.values[&(x, z)] * &other.values[&(z, y)];
            }
            values.insert((x, y), acc);
        }
        Ok(IncidenceFunction {
            parent: p.clone(),
            values,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_parent(other)?;
        let values = self
            .values
            .iter()
            .map(|(k, v)| (*k, v + &other.values[k]))
            .collect();
        Ok(IncidenceFunction {
            parent: self.parent.clone(),
            values,
        })
    }

    /// Two-sided inverse, defined when every diagonal value is nonzero.
    /// Solved interval by interval in order of increasing size.
    pub fn invert(&self) -> Result<Self> {
        let p = &self.parent;
        let mut keys: Vec<(usize, usize)> = self.values.keys().copied().collect();
        keys.sort_by_key(|&(x, y)| p.interval_members(x, y).len());
        let mut inv: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
        for (x, y) in keys {
            let fxx = &self.values[&(x, x)];
            if fxx.is_zero() {
                return Err(Error::NotInvertible);
            }
            if x == y {
                inv.insert((x, x), fxx.recip());
                continue;
            }
            let mut acc = Rational::zero();
            for z in p.interval_members(x, y) {
                if z != x {
                    acc += &self.values[&(x, z)] * &inv[&(z, y)];
                }
            }
            inv.insert((x, y), -acc / fxx);
        }
        Ok(IncidenceFunction {
            parent: p.clone(),
            values: inv,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    /// Hall's theorem: μ(x, y) = Σ_k (-1)^k (number of chains x = x0 < … < xk = y).
    fn mobius_by_chains(p: &Poset, x: usize, y: usize) -> Rational {
        let mut total = Rational::zero();
        for len in 1..=p.len() {
            let count = p
                .chains_of_len(len)
                .into_iter()
                .filter(|c| c[0] == x && *c.last().unwrap() == y)
                .count();
            let sign = if (len - 1) % 2 == 0 { 1 } else { -1 };
            total += rat(sign * count as i64);
        }
        total
    }

    #[test]
    fn zeta_squared_counts_interval() {
        let p = Arc::new(Poset::chain(3));
        let z = IncidenceFunction::zeta(p.clone());
        assert_eq!(z.convolve(&z).unwrap().get(0, 2), rat(3));
    }

    #[test]
    fn delta_is_identity_on_diamond() {
        let p = Arc::new(Poset::diamond());
        let f = IncidenceFunction::from_fn(p.clone(), |x, y| rat((3 * x + y) as i64 - 2));
        let d = IncidenceFunction::delta(p);
        assert_eq!(f.convolve(&d).unwrap(), f);
        assert_eq!(d.convolve(&f).unwrap(), f);
    }

    #[test]
    fn mobius_on_diamond_matches_chain_count() {
        let p = Arc::new(Poset::diamond());
        let mu = IncidenceFunction::mobius(p.clone());
        let z = IncidenceFunction::zeta(p.clone());
        assert_eq!(z.convolve(&mu).unwrap(), IncidenceFunction::delta(p.clone()));
        assert_eq!(mu.values().len(), 9);
        for (&(x, y), v) in mu.values() {
            assert_eq!(*v, mobius_by_chains(&p, x, y));
        }
        assert_eq!(mu.get(0, 3), rat(1));
    }

    #[test]
    fn parent_mismatch() {
        let a = IncidenceFunction::zeta(Arc::new(Poset::chain(2)));
        let b = IncidenceFunction::zeta(Arc::new(Poset::chain(3)));
        assert_eq!(a.convolve(&b), Err(Error::ParentMismatch));
    }
}
