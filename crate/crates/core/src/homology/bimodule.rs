use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::coalgebra::graded::{add_grades, same_grade};
use crate::coalgebra::{FDAlgebra, SparseVec};
use crate::sparse::add_term;
use crate::{Error, Rational, Result};

/// Which algebra structure, if any, the coefficients carry for cup
/// products.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoefficientAlgebra {
    None,
    /// `M = A` with its own multiplication.
    Regular,
    /// `M = k` through a character `χ: A → k` acting on both sides.
    Field,
}

/// A bimodule over a finite-dimensional algebra, given by action tables.
#[derive(Clone, Debug)]
pub struct Bimodule {
    algebra: Arc<FDAlgebra>,
    name: String,
    labels: Vec<String>,
    left: HashMap<(usize, usize), SparseVec>,
    right: HashMap<(usize, usize), SparseVec>,
    grading: Option<Vec<Vec<i64>>>,
    structure: CoefficientAlgebra,
}

fn clean(v: SparseVec) -> SparseVec {
    let mut m = BTreeMap::new();
    for (i, c) in v {
        add_term(&mut m, i, c);
    }
    m.into_iter().collect()
}

impl Bimodule {
    /// `left[(a, m)] = a·m`, `right[(m, a)] = m·a`; missing entries are
    /// zero. Both action laws and the bimodule law are verified on all basis
    /// triples; unitality is not required.
    pub fn new(
        algebra: Arc<FDAlgebra>,
        name: impl Into<String>,
        labels: Vec<String>,
        left: Vec<((usize, usize), SparseVec)>,
        right: Vec<((usize, usize), SparseVec)>,
    ) -> Result<Self> {
        let n = labels.len();
        let d = algebra.dim();
        let mut l = HashMap::new();
        for ((a, m), v) in left {
            if a >= d || m >= n || v.iter().any(|(i, _)| *i >= n) {
                return Err(Error::Shape("left action refers past a basis".into()));
            }
            let v = clean(v);
            if !v.is_empty() {
                l.insert((a, m), v);
            }
        }
        let mut r = HashMap::new();
        for ((m, a), v) in right {
            if a >= d || m >= n || v.iter().any(|(i, _)| *i >= n) {
                return Err(Error::Shape("right action refers past a basis".into()));
            }
            let v = clean(v);
            if !v.is_empty() {
                r.insert((m, a), v);
            }
        }
        let b = Bimodule {
            algebra,
            name: name.into(),
            labels,
            left: l,
            right: r,
            grading: None,
            structure: CoefficientAlgebra::None,
        };
        b.verify()?;
        Ok(b)
    }

    fn verify(&self) -> Result<()> {
        let a = &self.algebra;
        let fail = |what: &str| {
            Err(Error::VerificationFailed(format!(
                "{}: {what} fails",
                self.name
            )))
        };
        for m in 0..self.dim() {
            let mv = vec![(m, Rational::one())];
            for s in 0..a.dim() {
                for t in 0..a.dim() {
                    let st = a.product(s, t);
                    // (st)m = s(tm)
                    if self.act_left(&st, &mv) != self.act_left(&[(s, Rational::one())], &self.act_left(&[(t, Rational::one())], &mv)) {
                        return fail("left associativity");
                    }
                    // m(st) = (ms)t
                    if self.act_right(&mv, &st) != self.act_right(&self.act_right(&mv, &[(s, Rational::one())]), &[(t, Rational::one())]) {
                        return fail("right associativity");
                    }
                    // (sm)t = s(mt)
                    let sm = self.act_left(&[(s, Rational::one())], &mv);
                    let mt = self.act_right(&mv, &[(t, Rational::one())]);
                    if self.act_right(&sm, &[(t, Rational::one())]) != self.act_left(&[(s, Rational::one())], &mt) {
                        return fail("bimodule compatibility");
                    }
                }
            }
        }
        Ok(())
    }

    /// Attaches a multigrading compatible with the algebra's.
    pub fn with_grading(mut self, grades: Vec<Vec<i64>>) -> Result<Self> {
        let ag = self
            .algebra
            .grading()
            .ok_or_else(|| Error::Shape("algebra carries no grading".into()))?
            .clone();
        if grades.len() != self.dim() {
            return Err(Error::Shape("grading length differs from dimension".into()));
        }
        let ok = self.left.iter().all(|((a, m), v)| {
            let g = add_grades(&ag[*a], &grades[*m]);
            v.iter().all(|(i, _)| same_grade(&grades[*i], &g))
        }) && self.right.iter().all(|((m, a), v)| {
            let g = add_grades(&grades[*m], &ag[*a]);
            v.iter().all(|(i, _)| same_grade(&grades[*i], &g))
        });
        if !ok {
            return Err(Error::VerificationFailed(format!(
                "{}: actions are not homogeneous",
                self.name
            )));
        }
        self.grading = Some(grades);
        Ok(self)
    }

    /// `A` as a bimodule over itself.
    pub fn regular(a: Arc<FDAlgebra>) -> Result<Self> {
        let n = a.dim();
        let mut table = Vec::new();
        for s in 0..n {
            for t in 0..n {
                let v = a.product(s, t);
                if !v.is_empty() {
                    table.push(((s, t), v));
                }
            }
        }
        let labels = a.labels().to_vec();
        let grading = a.grading().cloned();
        let mut b = Bimodule::new(a, "A", labels, table.clone(), table)?;
        if let Some(g) = grading {
            b = b.with_grading(g)?;
        }
        b.structure = CoefficientAlgebra::Regular;
        Ok(b)
    }

    /// `k` with `a·1 = χ_L(a)`, `1·a = χ_R(a)`.
    pub fn one_dimensional(
        a: Arc<FDAlgebra>,
        name: impl Into<String>,
        chi_left: &[Rational],
        chi_right: &[Rational],
    ) -> Result<Self> {
        let cell = |c: &Rational| vec![(0usize, c.clone())];
        let left = chi_left
            .iter()
            .enumerate()
            .map(|(s, c)| ((s, 0), cell(c)))
            .collect();
        let right = chi_right
            .iter()
            .enumerate()
            .map(|(s, c)| ((0, s), cell(c)))
            .collect();
        let mut b = Bimodule::new(a.clone(), name, vec!["1".into()], left, right)?;
        if let Some(g) = a.grading() {
            let supported_in_zero = chi_left
                .iter()
                .chain(chi_right)
                .enumerate()
                .all(|(i, c)| c.is_zero() || g[i % a.dim()].iter().all(|x| *x == 0));
            if supported_in_zero {
                b = b.with_grading(vec![vec![]])?;
            }
        }
        let unital = a.unit().iter().fold(Rational::zero(), |acc, (i, c)| acc + c * &chi_left[*i]);
        if chi_left == chi_right && unital.is_one() {
            let multiplicative = (0..a.dim()).all(|s| {
                (0..a.dim()).all(|t| {
                    let st = a.product(s, t).iter().fold(Rational::zero(), |acc, (u, c)| acc + c * &chi_left[*u]);
                    st == &chi_left[s] * &chi_left[t]
                })
            });
            if multiplicative {
                b.structure = CoefficientAlgebra::Field;
            }
        }
        Ok(b)
    }

    /// `k` where `a` acts on the left by its coefficient on basis element
    /// `gl` and on the right by its coefficient on `gr`; for a dual algebra
    /// `C*` and grouplikes `g, h ∈ C` this is `k_g ⊗ _hk`.
    pub fn from_grouplikes(a: Arc<FDAlgebra>, gl: usize, gr: usize) -> Result<Self> {
        let delta = |g: usize| -> Vec<Rational> {
            (0..a.dim())
                .map(|i| if i == g { Rational::one() } else { Rational::zero() })
                .collect()
        };
        let name = format!("k[{}|{}]", a.labels()[gl], a.labels()[gr]);
        Bimodule::one_dimensional(a.clone(), name, &delta(gl), &delta(gr))
    }

    /// `ₐk_b` over an incidence algebra: `e_a` acts on the left, `e_b` on
    /// the right, everything else by zero.
    pub fn vertex(a: Arc<FDAlgebra>, x: usize, y: usize) -> Result<Self> {
        let form = a
            .incidence_form()
            .ok_or_else(|| Error::NotIncidenceForm(a.name().to_string()))?;
        let n = form.poset.len();
        if x >= n || y >= n {
            return Err(Error::UnknownVertex(format!("{}", x.max(y))));
        }
        let (ex, ey) = (form.index_of(x, x).unwrap(), form.index_of(y, y).unwrap());
        let name = format!("k[{}|{}]", form.poset.label(x), form.poset.label(y));
        let mut b = Bimodule::from_grouplikes(a, ex, ey)?;
        b.name = name;
        Ok(b)
    }

    /// One-dimensional with every basis element acting by zero.
    pub fn zero_action(a: Arc<FDAlgebra>) -> Result<Self> {
        let mut b = Bimodule::new(a.clone(), "k0", vec!["1".into()], Vec::new(), Vec::new())?;
        if a.grading().is_some() {
            b = b.with_grading(vec![vec![]])?;
        }
        Ok(b)
    }

    pub fn algebra(&self) -> &Arc<FDAlgebra> {
        &self.algebra
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn grading(&self) -> Option<&Vec<Vec<i64>>> {
        self.grading.as_ref()
    }

    pub fn structure(&self) -> &CoefficientAlgebra {
        &self.structure
    }

    /// `a_s · m`.
    pub fn left(&self, s: usize, m: usize) -> &[(usize, Rational)] {
        self.left.get(&(s, m)).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// `m · a_t`.
    pub fn right(&self, m: usize, t: usize) -> &[(usize, Rational)] {
        self.right.get(&(m, t)).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn act_left(&self, a: &[(usize, Rational)], m: &[(usize, Rational)]) -> SparseVec {
        let mut out = BTreeMap::new();
        for (s, c) in a {
            for (i, d) in m {
                for (j, e) in self.left(*s, *i) {
                    add_term(&mut out, *j, c * d * e);
                }
            }
        }
        out.into_iter().collect()
    }

    pub fn act_right(&self, m: &[(usize, Rational)], a: &[(usize, Rational)]) -> SparseVec {
        let mut out = BTreeMap::new();
        for (i, d) in m {
            for (t, c) in a {
                for (j, e) in self.right(*i, *t) {
                    add_term(&mut out, *j, c * d * e);
                }
            }
        }
        out.into_iter().collect()
    }

    /// Product of coefficients when `M` is an algebra over `A`.
    pub fn coefficient_product(&self, x: &[(usize, Rational)], y: &[(usize, Rational)]) -> Result<SparseVec> {
        match self.structure {
            CoefficientAlgebra::Regular => Ok(self.algebra.mul_vec(x, y)),
            CoefficientAlgebra::Field => {
                let c = x.iter().map(|(_, c)| c).fold(Rational::zero(), |a, b| a + b)
                    * y.iter().map(|(_, c)| c).fold(Rational::zero(), |a, b| a + b);
                Ok(if c.is_zero() { Vec::new() } else { vec![(0, c)] })
            }
            CoefficientAlgebra::None => Err(Error::CoefficientNotAlgebra),
        }
    }

    /// For an incidence algebra: the unique `(x, y)` with `e_x m e_y = m`
    /// for each basis element, if the basis is idempotent-homogeneous.
    pub fn idempotent_types(&self) -> Result<Vec<(usize, usize)>> {
        let form = self
            .algebra
            .incidence_form()
            .ok_or_else(|| Error::NotIncidenceForm(self.algebra.name().to_string()))?;
        let n = form.poset.len();
        let e: Vec<usize> = (0..n).map(|x| form.index_of(x, x).unwrap()).collect();
        (0..self.dim())
            .map(|m| {
                let unit = vec![(m, Rational::one())];
                let find = |act: &dyn Fn(usize) -> SparseVec| -> Result<usize> {
                    let mut hit = None;
                    for x in 0..n {
                        let v = act(e[x]);
                        if v == unit && hit.is_none() {
                            hit = Some(x);
                        } else if !v.is_empty() {
                            return Err(Error::NotIncidenceForm(format!(
                                "basis element {} is not idempotent-homogeneous",
                                self.labels[m]
                            )));
                        }
                    }
                    hit.ok_or_else(|| {
                        Error::NotIncidenceForm(format!(
                            "basis element {} is killed by every idempotent",
                            self.labels[m]
                        ))
                    })
                };
                let l = find(&|s| self.left(s, m).to_vec())?;
                let r = find(&|t| self.right(m, t).to_vec())?;
                Ok((l, r))
            })
            .collect()
    }
}
