use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::graded::{add_grades, same_grade, CoalgebraData, GradedCoalgebra, IncidenceForm};
use crate::combinat::Poset;
use crate::sparse::add_term;
use crate::{Error, Rational, Result};

/// Sparse vector over a basis.
pub type SparseVec = Vec<(usize, Rational)>;

/// A finite-dimensional associative unital algebra given by structure
/// constants.
#[derive(Clone, Debug)]
pub struct FDAlgebra {
    name: String,
    labels: Vec<String>,
    mult: HashMap<(usize, usize), SparseVec>,
    /// `by_result[u]` lists `(s, t, c)` with `c` the coefficient of `u` in
    /// `a_s a_t`.
    by_result: Vec<Vec<(usize, usize, Rational)>>,
    unit: SparseVec,
    grading: Option<Vec<Vec<i64>>>,
    incidence: Option<IncidenceForm>,
}

fn to_sparse(map: BTreeMap<usize, Rational>) -> SparseVec {
    map.into_iter().collect()
}

impl FDAlgebra {
    /// Builds and verifies associativity and both unit laws on all basis
    /// triples and pairs. Missing products are zero.
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        products: Vec<((usize, usize), SparseVec)>,
        unit: SparseVec,
    ) -> Result<Self> {
        let n = labels.len();
        let mut mult = HashMap::new();
        for ((s, t), v) in products {
            if s >= n || t >= n || v.iter().any(|(u, _)| *u >= n) {
                return Err(Error::Shape("product refers past the basis".into()));
            }
            let mut map = BTreeMap::new();
            for (u, c) in v {
                add_term(&mut map, u, c);
            }
            if !map.is_empty() {
                mult.insert((s, t), to_sparse(map));
            }
        }
        let mut by_result = vec![Vec::new(); n];
        let mut keys: Vec<_> = mult.keys().copied().collect();
        keys.sort_unstable();
        for (s, t) in keys {
            for (u, c) in &mult[&(s, t)] {
                by_result[*u].push((s, t, c.clone()));
            }
        }
        let mut unit_map = BTreeMap::new();
        for (u, c) in unit {
            add_term(&mut unit_map, u, c);
        }
        let a = FDAlgebra {
            name: name.into(),
            labels,
            mult,
            by_result,
            unit: to_sparse(unit_map),
            grading: None,
            incidence: None,
        };
        a.verify()?;
        Ok(a)
    }

    fn verify(&self) -> Result<()> {
        let n = self.dim();
        let fail = |m: String| Err(Error::VerificationFailed(format!("{}: {m}", self.name)));
        for s in 0..n {
            let basis = vec![(s, Rational::one())];
            if self.mul_vec(&self.unit, &basis) != basis || self.mul_vec(&basis, &self.unit) != basis
            {
                return fail(format!("unit law fails on {}", self.labels[s]));
            }
            for t in 0..n {
                let st = self.product(s, t);
                for u in 0..n {
                    let left = self.mul_vec(&st, &[(u, Rational::one())]);
                    let right = self.mul_vec(&[(s, Rational::one())], &self.product(t, u));
                    if left != right {
                        return fail(format!(
                            "not associative on ({}, {}, {})",
                            self.labels[s], self.labels[t], self.labels[u]
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// Attaches a multigrading and checks that products are homogeneous.
    pub fn with_grading(mut self, grades: Vec<Vec<i64>>) -> Result<Self> {
        if grades.len() != self.dim() {
            return Err(Error::Shape("grading length differs from dimension".into()));
        }
        for ((s, t), v) in &self.mult {
            let g = add_grades(&grades[*s], &grades[*t]);
            if v.iter().any(|(u, _)| !same_grade(&grades[*u], &g)) {
                return Err(Error::VerificationFailed(format!(
                    "{}: product of {} and {} is not homogeneous",
                    self.name, self.labels[*s], self.labels[*t]
                )));
            }
        }
        self.grading = Some(grades);
        Ok(self)
    }

    /// Records that basis element `i` is `e_{pairs[i]}` of the incidence
    /// algebra of `poset`. Verified against the multiplication table.
    pub fn with_incidence(mut self, form: IncidenceForm) -> Result<Self> {
        let p = &form.poset;
        if form.pairs.len() != self.dim() {
            return Err(Error::NotIncidenceForm("pair list length".into()));
        }
        let index: HashMap<(usize, usize), usize> =
            form.pairs.iter().enumerate().map(|(i, &xy)| (xy, i)).collect();
        for (i, &(x, y)) in form.pairs.iter().enumerate() {
            if !p.leq(x, y) {
                return Err(Error::NotIncidenceForm(format!("pair {x},{y} is not comparable")));
            }
            for (j, &(z, w)) in form.pairs.iter().enumerate() {
                let expect: SparseVec = if y == z {
                    vec![(index[&(x, w)], Rational::one())]
                } else {
                    Vec::new()
                };
                if self.product(i, j) != expect {
                    return Err(Error::NotIncidenceForm(format!(
                        "e{x}{y}·e{z}{w} is not the incidence product"
                    )));
                }
            }
        }
        self.incidence = Some(form);
        Ok(self)
    }

    /// The incidence algebra `I(P)`: basis `e_{xy}` for `x ≤ y`,
    /// `e_{xy} e_{yz} = e_{xz}`, graded by `e_y − e_x`.
    pub fn incidence(p: &Poset) -> Result<Self> {
        let p = Arc::new(p.clone());
        let mut pairs = Vec::new();
        for x in 0..p.len() {
            for y in 0..p.len() {
                if p.leq(x, y) {
                    pairs.push((x, y));
                }
            }
        }
        let index: HashMap<(usize, usize), usize> =
            pairs.iter().enumerate().map(|(i, &xy)| (xy, i)).collect();
        let labels = pairs
            .iter()
            .map(|&(x, y)| format!("e[{},{}]", p.label(x), p.label(y)))
            .collect();
        let mut products = Vec::new();
        for (i, &(x, y)) in pairs.iter().enumerate() {
            for (j, &(z, w)) in pairs.iter().enumerate() {
                if y == z {
                    products.push(((i, j), vec![(index[&(x, w)], Rational::one())]));
                }
            }
        }
        let unit = (0..p.len()).map(|x| (index[&(x, x)], Rational::one())).collect();
        let grades = pairs.iter().map(|&(x, y)| vertex_grade(p.len(), x, y)).collect();
        FDAlgebra::new("incidence", labels, products, unit)?
            .with_grading(grades)?
            .with_incidence(IncidenceForm::new(p, pairs))
    }

    /// The ground field as a one-dimensional algebra.
    pub fn field() -> Self {
        FDAlgebra::new(
            "k",
            vec!["1".into()],
            vec![((0, 0), vec![(0, Rational::one())])],
            vec![(0, Rational::one())],
        )
        .expect("k is an algebra")
        .with_grading(vec![vec![]])
        .expect("trivial grading")
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

    pub fn unit(&self) -> &SparseVec {
        &self.unit
    }

    pub fn grading(&self) -> Option<&Vec<Vec<i64>>> {
        self.grading.as_ref()
    }

    pub fn incidence_form(&self) -> Option<&IncidenceForm> {
        self.incidence.as_ref()
    }

    pub fn product(&self, s: usize, t: usize) -> SparseVec {
        self.mult.get(&(s, t)).cloned().unwrap_or_default()
    }

    pub fn product_ref(&self, s: usize, t: usize) -> &[(usize, Rational)] {
        self.mult.get(&(s, t)).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// Pairs `(s, t, c)` with `c` the coefficient of `a_u` in `a_s a_t`.
    pub fn factorizations(&self, u: usize) -> &[(usize, usize, Rational)] {
        &self.by_result[u]
    }

    pub fn mul_vec(&self, a: &[(usize, Rational)], b: &[(usize, Rational)]) -> SparseVec {
        let mut out = BTreeMap::new();
        for (s, c) in a {
            for (t, d) in b {
                for (u, e) in self.product_ref(*s, *t) {
                    add_term(&mut out, *u, c * d * e);
                }
            }
        }
        to_sparse(out)
    }

    /// The product tables, for comparisons.
    pub fn table(&self) -> BTreeMap<(usize, usize), SparseVec> {
        self.mult.iter().map(|(k, v)| (*k, v.clone())).collect()
    }
}

pub(crate) fn vertex_grade(n: usize, x: usize, y: usize) -> Vec<i64> {
    let mut g = vec![0; n];
    g[y] += 1;
    g[x] -= 1;
    g
}

/// Linear dual of a finite-dimensional coalgebra: structure constants
/// transposed, unit `ε`.
pub fn dual_algebra(c: &GradedCoalgebra) -> Result<FDAlgebra> {
    let n = c.dim();
    let mut products: BTreeMap<(usize, usize), BTreeMap<usize, Rational>> = BTreeMap::new();
    for b in 0..n {
        for (l, r, coeff) in c.comult(b) {
            add_term(products.entry((*l, *r)).or_default(), b, coeff.clone());
        }
    }
    let products = products
        .into_iter()
        .map(|(k, v)| (k, v.into_iter().collect()))
        .collect();
    let unit = (0..n)
        .filter(|&b| !c.counit(b).is_zero())
        .map(|b| (b, c.counit(b).clone()))
        .collect();
    let labels = c.labels().iter().map(|l| format!("{l}*")).collect();
    let grades = (0..n).map(|b| c.grade(b).to_vec()).collect();
    let a = FDAlgebra::new(format!("{}*", c.name()), labels, products, unit)?.with_grading(grades)?;
    match c.incidence() {
        Some(form) => a.with_incidence(form.clone()),
        None => Ok(a),
    }
}

/// Linear dual of a finite-dimensional algebra. Internal degrees are all 0;
/// the algebra's grading, when present, becomes the multigrading.
pub fn dual_coalgebra(a: &FDAlgebra) -> Result<GradedCoalgebra> {
    let n = a.dim();
    let comult = (0..n).map(|u| a.factorizations(u).to_vec()).collect();
    let mut counit = vec![Rational::zero(); n];
    for (u, c) in a.unit() {
        counit[*u] = c.clone();
    }
    let grades = match a.grading() {
        Some(g) => g.clone(),
        None => vec![Vec::new(); n],
    };
    GradedCoalgebra::new(CoalgebraData {
        name: format!("{}*", a.name()),
        labels: a.labels().iter().map(|l| format!("{l}*")).collect(),
        degrees: vec![0; n],
        grades,
        comult,
        counit,
        grouplike: None,
        complete_through: None,
        incidence: a.incidence_form().cloned(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalgebra::full_incidence_coalgebra;

    #[test]
    fn incidence_products() {
        let a = FDAlgebra::incidence(&Poset::chain(3)).unwrap();
        assert_eq!(a.dim(), 6);
        let form = a.incidence_form().unwrap();
        let e01 = form.index_of(0, 1).unwrap();
        let e12 = form.index_of(1, 2).unwrap();
        let e02 = form.index_of(0, 2).unwrap();
        assert_eq!(a.product(e01, e12), vec![(e02, Rational::one())]);
        assert!(a.product(e12, e01).is_empty());
    }

    #[test]
    fn dual_of_incidence_coalgebra() {
        let p = Poset::diamond();
        let a = dual_algebra(&full_incidence_coalgebra(&p)).unwrap();
        // with_incidence verified e_{xy} e_{zw} = δ_{yz} e_{xw} on every pair.
        assert!(a.incidence_form().is_some());
        assert_eq!(a.dim(), 9);
    }

    #[test]
    fn dual_of_upper_triangular() {
        let a = FDAlgebra::incidence(&Poset::chain(2)).unwrap();
        let c = dual_coalgebra(&a).unwrap();
        let form = a.incidence_form().unwrap();
        let (e00, e01, e11) = (
            form.index_of(0, 0).unwrap(),
            form.index_of(0, 1).unwrap(),
            form.index_of(1, 1).unwrap(),
        );
        let mut expect = vec![(e00, e01, Rational::one()), (e01, e11, Rational::one())];
        expect.sort_by_key(|t| (t.0, t.1));
        assert_eq!(c.comult(e01), expect.as_slice());
    }

    #[test]
    fn double_dual_reproduces_tables() {
        let a = FDAlgebra::incidence(&Poset::crown()).unwrap();
        let back = dual_algebra(&dual_coalgebra(&a).unwrap()).unwrap();
        assert_eq!(back.table(), a.table());
        assert_eq!(back.unit(), a.unit());
        let c = full_incidence_coalgebra(&Poset::diamond());
        let back = dual_coalgebra(&dual_algebra(&c).unwrap()).unwrap();
        for b in 0..c.dim() {
            assert_eq!(back.comult(b), c.comult(b));
            assert_eq!(back.counit(b), c.counit(b));
        }
    }

    #[test]
    fn rejects_nonassociative_table() {
        let labels = vec!["1".to_string(), "x".to_string()];
        let products = vec![
            ((0, 0), vec![(0, Rational::one())]),
            ((0, 1), vec![(1, Rational::one())]),
            ((1, 0), vec![(1, Rational::one())]),
            ((1, 1), vec![(0, Rational::one()), (1, Rational::one())]),
        ];
        // x² = 1 + x is associative (commutative, generated by x), so flip
        // one side of the unit to break it.
        assert!(FDAlgebra::new("ok", labels.clone(), products.clone(), vec![(0, Rational::one())]).is_ok());
        let mut bad = products;
        bad[2] = ((1, 0), vec![(0, Rational::one())]);
        assert!(FDAlgebra::new("bad", labels, bad, vec![(0, Rational::one())]).is_err());
    }
}
