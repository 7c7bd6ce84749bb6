use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::Zero;

use super::incidence::IncidenceFunction;
use crate::combinat::poset::{poset_isomorphic, ISOMORPHISM_CAP};
use crate::combinat::{Interval, Poset};
use crate::{Error, Rational, Result};

/// One equivalence class of intervals.
#[derive(Clone, Debug)]
pub struct IntervalType {
    pub representative: Interval,
    pub members: Vec<(usize, usize)>,
}

/// Where the bracket counts of a relation disagree between two
/// representatives of the same class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub alpha: usize,
    pub beta: usize,
    pub gamma: usize,
    pub first: (usize, usize),
    pub first_count: usize,
    pub second: (usize, usize),
    pub second_count: usize,
}

/// Classes of intervals of a poset under an equivalence relation, with the
/// bracket counts `[α; β, γ]` read off the first representative of `α`.
#[derive(Clone, Debug)]
pub struct ReducedIncidenceTable {
    parent: Arc<Poset>,
    types: Vec<IntervalType>,
    type_of: HashMap<(usize, usize), usize>,
    brackets: BTreeMap<(usize, usize, usize), usize>,
    counterexample: Option<Counterexample>,
}

fn bracket_counts(
    p: &Poset,
    type_of: &HashMap<(usize, usize), usize>,
    x: usize,
    y: usize,
) -> BTreeMap<(usize, usize), usize> {
    let mut out = BTreeMap::new();
    for z in p.interval_members(x, y) {
        *out.entry((type_of[&(x, z)], type_of[&(z, y)])).or_insert(0) += 1;
    }
    out
}

impl ReducedIncidenceTable {
    /// Classes given by `class_key`: intervals with equal keys are equivalent.
    /// Class order follows first appearance in interval enumeration order.
    pub fn from_classes<K: Eq + std::hash::Hash>(
        parent: Arc<Poset>,
        class_key: impl Fn(&Interval) -> K,
    ) -> Self {
        let mut key_index: HashMap<K, usize> = HashMap::new();
        let mut types: Vec<IntervalType> = Vec::new();
        let mut type_of = HashMap::new();
        for iv in parent.enumerate_intervals() {
            let key = class_key(&iv);
            let t = *key_index.entry(key).or_insert_with(|| {
                types.push(IntervalType {
                    representative: iv.clone(),
                    members: Vec::new(),
                });
                types.len() - 1
            });
            types[t].members.push((iv.lo, iv.hi));
            type_of.insert((iv.lo, iv.hi), t);
        }
        Self::finish(parent, types, type_of)
    }

    /// Classes under interval isomorphism.
    pub fn interval_types(parent: Arc<Poset>) -> Result<Self> {
        let mut types: Vec<IntervalType> = Vec::new();
        let mut shapes: Vec<Poset> = Vec::new();
        let mut type_of = HashMap::new();
        for iv in parent.enumerate_intervals() {
            let shape = parent.interval_poset(&iv);
            let mut found = None;
            for (t, s) in shapes.iter().enumerate() {
                if poset_isomorphic(&shape, s, ISOMORPHISM_CAP)?.is_some() {
                    found = Some(t);
                    break;
                }
            }
            let t = match found {
                Some(t) => t,
                None => {
                    if shape.len() > ISOMORPHISM_CAP {
                        return Err(Error::SizeCapExceeded {
                            what: "interval".into(),
                            size: shape.len(),
                            cap: ISOMORPHISM_CAP,
                        });
                    }
                    shapes.push(shape);
                    types.push(IntervalType {
                        representative: iv.clone(),
                        members: Vec::new(),
                    });
                    types.len() - 1
                }
            };
            types[t].members.push((iv.lo, iv.hi));
            type_of.insert((iv.lo, iv.hi), t);
        }
        Ok(Self::finish(parent, types, type_of))
    }

    fn finish(
        parent: Arc<Poset>,
        types: Vec<IntervalType>,
        type_of: HashMap<(usize, usize), usize>,
    ) -> Self {
        let mut brackets = BTreeMap::new();
        let mut counterexample = None;
        for (alpha, t) in types.iter().enumerate() {
            let rep = &t.representative;
            let base = bracket_counts(&parent, &type_of, rep.lo, rep.hi);
            for (&(beta, gamma), &c) in &base {
                brackets.insert((alpha, beta, gamma), c);
            }
            if counterexample.is_some() {
                continue;
            }
            for &(x, y) in &t.members[1..] {
                let other = bracket_counts(&parent, &type_of, x, y);
                if other != base {
                    let (&(beta, gamma), _) = base
                        .iter()
                        .chain(other.iter())
                        .find(|(k, _)| base.get(k) != other.get(k))
                        .expect("maps differ");
                    counterexample = Some(Counterexample {
                        alpha,
                        beta,
                        gamma,
                        first: (rep.lo, rep.hi),
                        first_count: base.get(&(beta, gamma)).copied().unwrap_or(0),
                        second: (x, y),
                        second_count: other.get(&(beta, gamma)).copied().unwrap_or(0),
                    });
                    break;
                }
            }
        }
        ReducedIncidenceTable {
            parent,
            types,
            type_of,
            brackets,
            counterexample,
        }
    }

    pub fn parent(&self) -> &Arc<Poset> {
        &self.parent
    }

    pub fn types(&self) -> &[IntervalType] {
        &self.types
    }

    pub fn type_count(&self) -> usize {
        self.types.len()
    }

    pub fn type_of(&self, x: usize, y: usize) -> Option<usize> {
        self.type_of.get(&(x, y)).copied()
    }

    /// `[α; β, γ]`: number of `z` in the representative `[x, y]` of `α` with
    /// `[x, z]` of type `β` and `[z, y]` of type `γ`.
    pub fn bracket(&self, alpha: usize, beta: usize, gamma: usize) -> Result<usize> {
        for t in [alpha, beta, gamma] {
            if t >= self.types.len() {
                return Err(Error::UnknownType(t));
            }
        }
        Ok(self.brackets.get(&(alpha, beta, gamma)).copied().unwrap_or(0))
    }

    /// `None` when the bracket counts agree on all representatives.
    pub fn counterexample(&self) -> Option<&Counterexample> {
        self.counterexample.as_ref()
    }

    pub fn is_order_compatible(&self) -> bool {
        self.counterexample.is_none()
    }

    /// `(fg)(α) = Σ [α; β, γ] f(β) g(γ)`.
    pub fn convolve(&self, f: &[Rational], g: &[Rational]) -> Result<Vec<Rational>> {
        if !self.is_order_compatible() {
            return Err(Error::NotCompatible);
        }
        let n = self.types.len();
        if f.len() != n || g.len() != n {
            return Err(Error::Shape(format!(
                "reduced functions need {n} values, got {} and {}",
                f.len(),
                g.len()
            )));
        }
        let mut out = vec![Rational::zero(); n];
        for (&(alpha, beta, gamma), &c) in &self.brackets {
            out[alpha] += crate::rat(c as i64) * &f[beta] * &g[gamma];
        }
        Ok(out)
    }

    /// The identity of the reduced algebra: 1 on the class of one-point
    /// intervals.
    pub fn delta(&self) -> Vec<Rational> {
        self.types
            .iter()
            .map(|t| {
                if t.representative.lo == t.representative.hi {
                    crate::rat(1)
                } else {
                    Rational::zero()
                }
            })
            .collect()
    }

    /// `f̂(x, y) = f(type of [x, y])`.
    pub fn lift(&self, f: &[Rational]) -> IncidenceFunction {
        IncidenceFunction::from_fn(self.parent.clone(), |x, y| f[self.type_of[&(x, y)]].clone())
    }
}

/// Interval-isomorphism compatibility check; `Ok(None)` means compatible.
pub fn check_order_compatible(p: &Poset) -> Result<Option<Counterexample>> {
    let t = ReducedIncidenceTable::interval_types(Arc::new(p.clone()))?;
    Ok(t.counterexample().cloned())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;
    use crate::series::{SeriesKind, TruncatedSeries};

    fn by_size(t: &ReducedIncidenceTable, size: usize) -> usize {
        (0..t.type_count())
            .find(|&a| t.types()[a].representative.members.len() == size)
            .unwrap()
    }

    #[test]
    fn type_counts() {
        for n in 1..6 {
            let t = ReducedIncidenceTable::interval_types(Arc::new(Poset::chain(n))).unwrap();
            assert_eq!(t.type_count(), n);
        }
        let t = ReducedIncidenceTable::interval_types(Arc::new(Poset::diamond())).unwrap();
        assert_eq!(t.type_count(), 3);
        let t = ReducedIncidenceTable::interval_types(Arc::new(Poset::antichain(4))).unwrap();
        assert_eq!(t.type_count(), 1);
    }

    #[test]
    fn chain_brackets_are_one() {
        let t = ReducedIncidenceTable::interval_types(Arc::new(Poset::chain(6))).unwrap();
        for n in 0..6 {
            for r in 0..=n {
                let a = by_size(&t, n + 1);
                let b = by_size(&t, r + 1);
                let c = by_size(&t, n - r + 1);
                assert_eq!(t.bracket(a, b, c).unwrap(), 1);
            }
        }
    }

    #[test]
    fn diamond_brackets() {
        let t = ReducedIncidenceTable::interval_types(Arc::new(Poset::diamond())).unwrap();
        let (point, two, dia) = (by_size(&t, 1), by_size(&t, 2), by_size(&t, 4));
        assert_eq!(t.bracket(dia, two, two).unwrap(), 2);
        assert_eq!(t.bracket(dia, point, dia).unwrap(), 1);
        assert_eq!(t.bracket(dia, 7, 0), Err(Error::UnknownType(7)));
    }

    #[test]
    fn compatibility() {
        assert!(check_order_compatible(&Poset::chain(5)).unwrap().is_none());
        assert!(check_order_compatible(&Poset::boolean_lattice(3)).unwrap().is_none());
        // Merge 2-chains with points on chain(3).
        let p = Arc::new(Poset::chain(3));
        let t = ReducedIncidenceTable::from_classes(p, |iv| iv.members.len() == 3);
        let ce = t.counterexample().expect("merged relation is not compatible");
        assert_ne!(ce.first_count, ce.second_count);
        assert_eq!(t.convolve(&[rat(1), rat(1)], &[rat(1), rat(1)]), Err(Error::NotCompatible));
    }

    #[test]
    fn chain_table_reproduces_ordinary_product() {
        let n = 6;
        let t = ReducedIncidenceTable::interval_types(Arc::new(Poset::chain(n + 1))).unwrap();
        let f: Vec<Rational> = (0..=n).map(|i| rat(i as i64 * 2 - 3)).collect();
        let g: Vec<Rational> = (0..=n).map(|i| rat((i * i) as i64 + 1)).collect();
        let to_types = |s: &[Rational]| {
            (0..t.type_count())
                .map(|a| s[t.types()[a].representative.members.len() - 1].clone())
                .collect::<Vec<_>>()
        };
        let prod = t.convolve(&to_types(&f), &to_types(&g)).unwrap();
        let fs = TruncatedSeries::new(SeriesKind::Ordinary, n, f).unwrap();
        let gs = TruncatedSeries::new(SeriesKind::Ordinary, n, g).unwrap();
        let expected = to_types(fs.convolve(&gs).unwrap().coeffs());
        assert_eq!(prod, expected);
    }

    #[test]
    fn boolean_table_reproduces_binomial_product() {
        let t = ReducedIncidenceTable::interval_types(Arc::new(Poset::boolean_lattice(3))).unwrap();
        assert_eq!(t.type_count(), 4);
        let rank = |a: usize| t.types()[a].representative.members.len().trailing_zeros() as usize;
        let f: Vec<Rational> = (0..=3).map(|i| rat(i as i64 + 2)).collect();
        let g: Vec<Rational> = (0..=3).map(|i| rat(1 - i as i64)).collect();
        let ft: Vec<_> = (0..4).map(|a| f[rank(a)].clone()).collect();
        let gt: Vec<_> = (0..4).map(|a| g[rank(a)].clone()).collect();
        let prod = t.convolve(&ft, &gt).unwrap();
        let fs = TruncatedSeries::new(SeriesKind::Exponential, 3, f).unwrap();
        let gs = TruncatedSeries::new(SeriesKind::Exponential, 3, g).unwrap();
        let e = fs.convolve(&gs).unwrap();
        for a in 0..4 {
            assert_eq!(prod[a], e.coeff(rank(a)));
        }
    }

    #[test]
    fn delta_is_identity_and_lift_commutes() {
        for p in [Poset::chain(6), Poset::boolean_lattice(3)] {
            let t = ReducedIncidenceTable::interval_types(Arc::new(p)).unwrap();
            let k = t.type_count();
            let f: Vec<Rational> = (0..k).map(|i| rat(i as i64 - 1)).collect();
            let g: Vec<Rational> = (0..k).map(|i| rat(3 - 2 * i as i64)).collect();
            assert_eq!(t.convolve(&t.delta(), &f).unwrap(), f);
            assert_eq!(t.convolve(&f, &t.delta()).unwrap(), f);
            let lifted = t.lift(&t.convolve(&f, &g).unwrap());
            assert_eq!(lifted, t.lift(&f).convolve(&t.lift(&g)).unwrap());
        }
    }
}
