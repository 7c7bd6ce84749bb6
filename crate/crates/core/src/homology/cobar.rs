use std::collections::{BTreeMap, HashMap};

use num_traits::One;
use rayon::prelude::*;

use super::complex::CochainComplex;
use super::matrix::RationalMatrix;
use crate::coalgebra::graded::{add_grades, same_grade};
use crate::coalgebra::{Coextension, GradedCoalgebra};
use crate::sparse::add_term;
use crate::{Budget, Error, Rational, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A comodule over a [`GradedCoalgebra`]. For a right comodule the coaction
/// term `(x, v', c)` stands for `c · v' ⊗ x`; for a left comodule it stands
/// for `c · x ⊗ v'`.
#[derive(Clone, Debug)]
pub struct Comodule {
    side: Side,
    labels: Vec<String>,
    degrees: Vec<u32>,
    grades: Vec<Vec<i64>>,
    coaction: Vec<Vec<(usize, usize, Rational)>>,
    degree_homogeneous: bool,
}

impl Comodule {
    /// Builds and verifies counitality, coassociativity and homogeneity
    /// against `c`.
    pub fn new(
        c: &GradedCoalgebra,
        side: Side,
        labels: Vec<String>,
        degrees: Vec<u32>,
        grades: Vec<Vec<i64>>,
        coaction: Vec<Vec<(usize, usize, Rational)>>,
    ) -> Result<Self> {
        let n = labels.len();
        if degrees.len() != n || grades.len() != n || coaction.len() != n {
            return Err(Error::Shape("comodule tables disagree in length".into()));
        }
        let mut degree_homogeneous = true;
        for (v, terms) in coaction.iter().enumerate() {
            for &(x, w, _) in terms {
                if x >= c.dim() || w >= n {
                    return Err(Error::Shape("coaction refers past a basis".into()));
                }
                if !same_grade(&add_grades(c.grade(x), &grades[w]), &grades[v]) {
                    return Err(Error::VerificationFailed(format!(
                        "coaction on {} is not homogeneous",
                        labels[v]
                    )));
                }
                degree_homogeneous &= c.degree(x) + degrees[w] == degrees[v];
            }
        }
        let m = Comodule {
            side,
            labels,
            degrees,
            grades,
            coaction,
            degree_homogeneous,
        };
        m.verify(c)?;
        Ok(m)
    }

    fn verify(&self, c: &GradedCoalgebra) -> Result<()> {
        for v in 0..self.dim() {
            let mut counit = BTreeMap::new();
            let mut outer = BTreeMap::new();
            let mut inner = BTreeMap::new();
            for (x, w, k) in &self.coaction[v] {
                add_term(&mut counit, *w, k * c.counit(*x));
                for (x2, w2, k2) in &self.coaction[*w] {
                    // Right: w2 ⊗ x2 ⊗ x. Left: x ⊗ x2 ⊗ w2.
                    let key = match self.side {
                        Side::Right => (*w2, *x2, *x),
                        Side::Left => (*x, *x2, *w2),
                    };
                    add_term(&mut outer, key, k * k2);
                }
                for (l, r, k2) in c.comult(*x) {
                    let key = match self.side {
                        Side::Right => (*w, *l, *r),
                        Side::Left => (*l, *r, *w),
                    };
                    add_term(&mut inner, key, k * k2);
                }
            }
            let unit: BTreeMap<usize, Rational> = [(v, Rational::one())].into_iter().collect();
            if counit != unit {
                return Err(Error::VerificationFailed(format!(
                    "coaction is not counital on {}",
                    self.labels[v]
                )));
            }
            if outer != inner {
                return Err(Error::VerificationFailed(format!(
                    "coaction is not coassociative on {}",
                    self.labels[v]
                )));
            }
        }
        Ok(())
    }

    /// `k` with coaction through the basis element `g`, which must be
    /// grouplike.
    pub fn one_dimensional(c: &GradedCoalgebra, side: Side, g: usize) -> Result<Self> {
        Comodule::new(
            c,
            side,
            vec![format!("k[{}]", c.label(g))],
            vec![0],
            vec![c.grade(g).to_vec()],
            vec![vec![(g, 0, Rational::one())]],
        )
    }

    /// `k` through the distinguished grouplike.
    pub fn trivial(c: &GradedCoalgebra, side: Side) -> Result<Self> {
        let g = c.grouplike().ok_or(Error::NoGrouplike)?;
        Self::one_dimensional(c, side, g)
    }

    /// For an incidence coalgebra: `k` through `[x, x]`.
    pub fn vertex(c: &GradedCoalgebra, side: Side, x: usize) -> Result<Self> {
        let form = c
            .incidence()
            .ok_or_else(|| Error::NotIncidenceForm(c.name().to_string()))?;
        let i = form
            .index_of(x, x)
            .ok_or_else(|| Error::UnknownVertex(x.to_string()))?;
        Self::one_dimensional(c, side, i)
    }

    /// Transports a comodule over `C` to the auxiliary coalgebra `z` of the
    /// coextension: `v ↦ v₀ ⊗ (v₁ + π(v₁))`.
    pub fn extend_to_aux(&self, e: &Coextension, z: &GradedCoalgebra) -> Result<Self> {
        let off = e.total().dim();
        let pi = e.projection();
        let coaction = self
            .coaction
            .iter()
            .map(|terms| {
                let mut out = Vec::new();
                for (x, w, k) in terms {
                    out.push((*x, *w, k.clone()));
                    for (j, a) in pi.image(*x) {
                        out.push((off + j, *w, k * a));
                    }
                }
                out
            })
            .collect();
        let width = (0..z.dim()).map(|i| z.grade(i).len()).max().unwrap_or(0);
        let grades = self
            .grades
            .iter()
            .map(|g| {
                let mut g = g.clone();
                g.resize(width.max(g.len()), 0);
                g
            })
            .collect();
        Comodule::new(
            z,
            self.side,
            self.labels.clone(),
            self.degrees.clone(),
            grades,
            coaction,
        )
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn degree(&self, v: usize) -> u32 {
        self.degrees[v]
    }

    pub fn grade(&self, v: usize) -> &[i64] {
        &self.grades[v]
    }

    pub fn coaction(&self, v: usize) -> &[(usize, usize, Rational)] {
        &self.coaction[v]
    }
}

/// A cobar cochain: coefficients on basis tuples `(v, c₁, …, c_n, w)`.
pub type Cochain = BTreeMap<Vec<usize>, Rational>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle {
    pub degree: usize,
    pub coeffs: Cochain,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reduction {
    /// Normalized over `C̄ = C / k·g` when a grouplike exists, unreduced
    /// otherwise.
    Auto,
    Normalized,
    Unreduced,
}

#[derive(Clone, Debug)]
pub struct CobarBlock {
    pub grade: Vec<i64>,
    /// Total internal degree, when the complex is degree-homogeneous.
    pub degree: Option<u32>,
    pub bases: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
    pub complex: CochainComplex,
}

/// The cobar complex `CB^n = V ⊗ C'^{⊗n} ⊗ W` for `n ≤ n_max + 1`, where
/// `C'` is `C` or `C̄`, split into blocks of constant multidegree (and
/// internal degree when Δ and both coactions preserve it).
#[derive(Clone, Debug)]
pub struct CobarComplex {
    coalgebra: GradedCoalgebra,
    left: Comodule,
    right: Comodule,
    normalized: bool,
    homogeneous: bool,
    n_max: usize,
    cap: Option<u32>,
    blocks: Vec<CobarBlock>,
    block_of: HashMap<(Vec<i64>, Option<u32>), usize>,
}

fn tuple_grade(c: &GradedCoalgebra, v: &Comodule, w: &Comodule, t: &[usize]) -> Vec<i64> {
    let mut g = add_grades(v.grade(t[0]), w.grade(t[t.len() - 1]));
    for &x in &t[1..t.len() - 1] {
        g = add_grades(&g, c.grade(x));
    }
    // Trailing zeros carry no information; strip them so keys agree.
    while g.last() == Some(&0) {
        g.pop();
    }
    g
}

fn tuple_degree(c: &GradedCoalgebra, v: &Comodule, w: &Comodule, t: &[usize]) -> u32 {
    v.degree(t[0])
        + w.degree(t[t.len() - 1])
        + t[1..t.len() - 1].iter().map(|&x| c.degree(x)).sum::<u32>()
}

impl CobarComplex {
    /// `v` must be a right and `w` a left comodule over `c`.
    pub fn new(
        c: &GradedCoalgebra,
        v: &Comodule,
        w: &Comodule,
        n_max: usize,
        degree_cap: Option<u32>,
        reduction: Reduction,
        budget: Budget,
    ) -> Result<Self> {
        if v.side() != Side::Right || w.side() != Side::Left {
            return Err(Error::Shape("cobar needs a right and a left comodule".into()));
        }
        let normalized = match reduction {
            Reduction::Unreduced => false,
            Reduction::Auto => c.counit_is_coaugmentation(),
            Reduction::Normalized => {
                if c.grouplike().is_none() {
                    return Err(Error::NoGrouplike);
                }
                if !c.counit_is_coaugmentation() {
                    return Err(Error::VerificationFailed(
                        "ε does not vanish off the grouplike".into(),
                    ));
                }
                true
            }
        };
        let homogeneous =
            c.degree_homogeneous() && v.degree_homogeneous && w.degree_homogeneous;
        let cap = if homogeneous {
            match (degree_cap, c.complete_through()) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (a, b) => a.or(b),
            }
        } else {
            None
        };
        if let Some(cap) = cap {
            for m in [v, w] {
                for i in 0..m.dim() {
                    if m.degree(i) > cap {
                        return Err(Error::CapTooSmall {
                            degree: m.degree(i),
                            cap,
                        });
                    }
                }
            }
        }
        let g = if normalized { c.grouplike() } else { None };
        let factors: Vec<usize> = (0..c.dim()).filter(|&x| Some(x) != g).collect();

        // Enumerate tuples degree by degree.
        let mut spaces: Vec<Vec<Vec<usize>>> = Vec::new();
        let mut total = 0usize;
        let mut prefixes: Vec<(Vec<usize>, u32)> =
            (0..v.dim()).map(|i| (vec![i], v.degree(i))).collect();
        for _n in 0..=n_max + 1 {
            let mut space = Vec::new();
            for (p, d) in &prefixes {
                for j in 0..w.dim() {
                    let deg = d + w.degree(j);
                    if cap.map_or(true, |cap| deg <= cap) {
                        let mut t = p.clone();
                        t.push(j);
                        space.push(t);
                    }
                }
            }
            total += space.len();
            budget.check("cobar complex", total)?;
            spaces.push(space);
            let mut next = Vec::new();
            for (p, d) in &prefixes {
                for &x in &factors {
                    let deg = d + c.degree(x);
                    if cap.map_or(true, |cap| deg <= cap) {
                        let mut t = p.clone();
                        t.push(x);
                        next.push((t, deg));
                    }
                }
            }
            budget.check("cobar complex", total + next.len())?;
            prefixes = next;
        }

        // Group by block.
        let mut grouped: BTreeMap<(Vec<i64>, Option<u32>), Vec<Vec<Vec<usize>>>> = BTreeMap::new();
        for (n, space) in spaces.into_iter().enumerate() {
            for t in space {
                let key = (
                    tuple_grade(c, v, w, &t),
                    homogeneous.then(|| tuple_degree(c, v, w, &t)),
                );
                let entry = grouped
                    .entry(key)
                    .or_insert_with(|| vec![Vec::new(); n_max + 2]);
                entry[n].push(t);
            }
        }
        let mut out = CobarComplex {
            coalgebra: c.clone(),
            left: v.clone(),
            right: w.clone(),
            normalized,
            homogeneous,
            n_max,
            cap,
            blocks: Vec::new(),
            block_of: HashMap::new(),
        };
        let blocks: Vec<CobarBlock> = grouped
            .into_par_iter()
            .map(|((grade, degree), bases)| out.build_block(grade, degree, bases))
            .collect::<Result<_>>()?;
        out.block_of = blocks
            .iter()
            .enumerate()
            .map(|(i, b)| ((b.grade.clone(), b.degree), i))
            .collect();
        out.blocks = blocks;
        Ok(out)
    }

    fn build_block(
        &self,
        grade: Vec<i64>,
        degree: Option<u32>,
        bases: Vec<Vec<Vec<usize>>>,
    ) -> Result<CobarBlock> {
        let index: Vec<HashMap<Vec<usize>, usize>> = bases
            .iter()
            .map(|b| b.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect())
            .collect();
        let mut diffs = Vec::new();
        for n in 0..=self.n_max {
            let columns = bases[n]
                .iter()
                .map(|t| {
                    let mut col = BTreeMap::new();
                    for (s, k) in self.differential_of_tuple(t) {
                        let i = *index[n + 1].get(&s).ok_or_else(|| {
                            Error::NotAComplex(format!("cobar target {s:?} outside the block"))
                        })?;
                        add_term(&mut col, i, k);
                    }
                    Ok(col.into_iter().collect())
                })
                .collect::<Result<Vec<_>>>()?;
            diffs.push(RationalMatrix::from_columns(bases[n + 1].len(), columns));
        }
        let dims = bases.iter().map(|b| b.len()).collect();
        Ok(CobarBlock {
            grade,
            degree,
            bases,
            index,
            complex: CochainComplex::new(dims, diffs)?,
        })
    }

    /// The cobar differential on one basis tuple.
    pub fn differential_of_tuple(&self, t: &[usize]) -> Vec<(Vec<usize>, Rational)> {
        let c = &self.coalgebra;
        let n = t.len() - 2;
        let g = if self.normalized { c.grouplike() } else { None };
        let keep = |x: usize| Some(x) != g;
        let mut out = Vec::new();
        for (x, v2, k) in self.left.coaction(t[0]) {
            if keep(*x) {
                let mut s = Vec::with_capacity(t.len() + 1);
                s.push(*v2);
                s.push(*x);
                s.extend_from_slice(&t[1..]);
                out.push((s, k.clone()));
            }
        }
        for i in 1..=n {
            let sign = if i % 2 == 0 { Rational::one() } else { -Rational::one() };
            for (l, r, k) in c.comult(t[i]) {
                if keep(*l) && keep(*r) {
                    let mut s = Vec::with_capacity(t.len() + 1);
                    s.extend_from_slice(&t[..i]);
                    s.push(*l);
                    s.push(*r);
                    s.extend_from_slice(&t[i + 1..]);
                    out.push((s, &sign * k));
                }
            }
        }
        let sign = if (n + 1) % 2 == 0 { Rational::one() } else { -Rational::one() };
        for (x, w2, k) in self.right.coaction(t[n + 1]) {
            if keep(*x) {
                let mut s = Vec::with_capacity(t.len() + 1);
                s.extend_from_slice(&t[..=n]);
                s.push(*x);
                s.push(*w2);
                out.push((s, &sign * k));
            }
        }
        out
    }

    pub fn differential(&self, x: &Cochain) -> Cochain {
        let mut out = BTreeMap::new();
        for (t, k) in x {
            for (s, j) in self.differential_of_tuple(t) {
                add_term(&mut out, s, k * j);
            }
        }
        out
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    /// The internal-degree bound actually applied.
    pub fn effective_cap(&self) -> Option<u32> {
        self.cap
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn blocks(&self) -> &[CobarBlock] {
        &self.blocks
    }

    pub fn coalgebra(&self) -> &GradedCoalgebra {
        &self.coalgebra
    }

    /// Total dimension of each `CB^n`, `n ≤ n_max + 1`.
    pub fn dims(&self) -> Vec<usize> {
        (0..=self.n_max + 1)
            .map(|n| self.blocks.iter().map(|b| b.bases[n].len()).sum())
            .collect()
    }

    pub fn cohomology_dims(&self) -> Result<Vec<usize>> {
        let per_block: Vec<Vec<usize>> = self
            .blocks
            .par_iter()
            .map(|b| b.complex.cohomology_dims(self.n_max))
            .collect::<Result<_>>()?;
        let mut total = vec![0; self.n_max + 1];
        for dims in per_block {
            for (t, d) in total.iter_mut().zip(dims) {
                *t += d;
            }
        }
        Ok(total)
    }

    /// Cohomology dimensions per internal degree (empty key when the
    /// complex is not degree-homogeneous).
    pub fn cohomology_by_degree(&self) -> Result<BTreeMap<Option<u32>, Vec<usize>>> {
        let per_block: Vec<(Option<u32>, Vec<usize>)> = self
            .blocks
            .par_iter()
            .map(|b| Ok((b.degree, b.complex.cohomology_dims(self.n_max)?)))
            .collect::<Result<_>>()?;
        let mut out: BTreeMap<Option<u32>, Vec<usize>> = BTreeMap::new();
        for (d, dims) in per_block {
            let e = out.entry(d).or_insert_with(|| vec![0; self.n_max + 1]);
            for (t, x) in e.iter_mut().zip(dims) {
                *t += x;
            }
        }
        Ok(out)
    }

    fn locate(&self, n: usize, t: &[usize]) -> Result<(usize, usize)> {
        let c = &self.coalgebra;
        let key = (
            tuple_grade(c, &self.left, &self.right, t),
            self.homogeneous
                .then(|| tuple_degree(c, &self.left, &self.right, t)),
        );
        let b = *self.block_of.get(&key).ok_or_else(|| self.out_of_range(t))?;
        let i = *self.blocks[b].index[n]
            .get(t)
            .ok_or_else(|| self.out_of_range(t))?;
        Ok((b, i))
    }

    fn out_of_range(&self, t: &[usize]) -> Error {
        let degree = tuple_degree(&self.coalgebra, &self.left, &self.right, t);
        match self.cap {
            Some(cap) if degree > cap => Error::CapTooSmall { degree, cap },
            _ => Error::Index(format!("tuple {t:?} is not a basis element")),
        }
    }

    pub fn cocycle(&self, degree: usize, coeffs: Cochain) -> Result<Cocycle> {
        if coeffs.keys().any(|t| t.len() != degree + 2) {
            return Err(Error::Shape("cochain tuples of the wrong length".into()));
        }
        for t in coeffs.keys() {
            self.locate(degree, t)?;
        }
        if !self.differential(&coeffs).is_empty() {
            return Err(Error::VerificationFailed("cochain is not a cocycle".into()));
        }
        Ok(Cocycle { degree, coeffs })
    }

    /// Whether `x ∈ CB^n` equals `d(y)` for some `y ∈ CB^{n−1}`, decided by
    /// solving the linear system block by block.
    pub fn is_coboundary(&self, n: usize, x: &Cochain) -> Result<bool> {
        if x.is_empty() {
            return Ok(true);
        }
        if n == 0 {
            return Ok(false);
        }
        if n > self.n_max + 1 {
            return Err(Error::DegreeOverflow {
                degree: n,
                n_max: self.n_max,
            });
        }
        let mut by_block: BTreeMap<usize, Vec<(usize, Rational)>> = BTreeMap::new();
        for (t, k) in x {
            let (b, i) = self.locate(n, t)?;
            by_block.entry(b).or_default().push((i, k.clone()));
        }
        for (b, rhs) in by_block {
            let d = self.blocks[b].complex.differential(n - 1);
            if d.solve(&rhs).is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Concatenation `(1, a₁…a_p, 1) ∪ (1, b₁…b_q, 1) = (1, a, b, 1)` for
    /// one-dimensional coefficients.
    pub fn cup(&self, a: &Cocycle, b: &Cocycle) -> Result<Cocycle> {
        if self.left.dim() != 1 || self.right.dim() != 1 || !self.normalized {
            return Err(Error::Shape(
                "cup products need one-dimensional coefficients over a normalized complex".into(),
            ));
        }
        let degree = a.degree + b.degree;
        if degree > self.n_max + 1 {
            return Err(Error::DegreeOverflow {
                degree,
                n_max: self.n_max,
            });
        }
        let mut coeffs = BTreeMap::new();
        for (s, x) in &a.coeffs {
            for (t, y) in &b.coeffs {
                let mut u = s[..s.len() - 1].to_vec();
                u.extend_from_slice(&t[1..]);
                add_term(&mut coeffs, u, x * y);
            }
        }
        for t in coeffs.keys() {
            self.locate(degree, t)?;
        }
        if !self.differential(&coeffs).is_empty() {
            return Err(Error::VerificationFailed("cup of cocycles is not a cocycle".into()));
        }
        Ok(Cocycle { degree, coeffs })
    }

    /// Cocycles whose classes form a basis of `H^n`.
    pub fn representatives(&self, n: usize) -> Result<Vec<Cocycle>> {
        if n > self.n_max {
            return Err(Error::DegreeOverflow {
                degree: n,
                n_max: self.n_max,
            });
        }
        let mut out = Vec::new();
        for block in &self.blocks {
            let cx = &block.complex;
            let kernel = cx.differential(n).kernel();
            let mut spanning: Vec<Vec<(usize, Rational)>> = if n == 0 {
                Vec::new()
            } else {
                cx.differential(n - 1).transpose().rows_vec()
            };
            let mut rank = RationalMatrix::from_rows(cx.dims()[n], spanning.clone()).rank();
            for z in kernel {
                spanning.push(z.clone());
                let r = RationalMatrix::from_rows(cx.dims()[n], spanning.clone()).rank();
                if r > rank {
                    rank = r;
                    let coeffs = z
                        .into_iter()
                        .map(|(i, k)| (block.bases[n][i].clone(), k))
                        .collect();
                    out.push(Cocycle { degree: n, coeffs });
                } else {
                    spanning.pop();
                }
            }
        }
        Ok(out)
    }
}

/// `Cotor_C^n(V, W)` for `n ≤ n_max` via the cobar complex.
pub fn cotor(
    c: &GradedCoalgebra,
    v: &Comodule,
    w: &Comodule,
    n_max: usize,
    degree_cap: Option<u32>,
) -> Result<Vec<usize>> {
    CobarComplex::new(c, v, w, n_max, degree_cap, Reduction::Auto, Budget::from_env())?
        .cohomology_dims()
}

/// `Cotor_C(k, k)` through the distinguished grouplike.
pub fn cotor_trivial(c: &GradedCoalgebra, n_max: usize, degree_cap: Option<u32>) -> Result<Vec<usize>> {
    let v = Comodule::trivial(c, Side::Right)?;
    let w = Comodule::trivial(c, Side::Left)?;
    cotor(c, &v, &w, n_max, degree_cap)
}

impl RationalMatrix {
    pub(crate) fn rows_vec(&self) -> Vec<Vec<(usize, Rational)>> {
        (0..self.rows()).map(|i| self.row(i).to_vec()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalgebra::{bin_coalgebra, dir_coalgebra, div_coalgebra};
    use crate::rat;

    fn trivial_complex(c: &GradedCoalgebra, n_max: usize, cap: Option<u32>) -> CobarComplex {
        let v = Comodule::trivial(c, Side::Right).unwrap();
        let w = Comodule::trivial(c, Side::Left).unwrap();
        CobarComplex::new(c, &v, &w, n_max, cap, Reduction::Auto, Budget::DEFAULT).unwrap()
    }

    #[test]
    fn divided_power_shapes() {
        let c = div_coalgebra(4);
        let cx = trivial_complex(&c, 1, None);
        assert!(cx.is_normalized());
        assert_eq!(cx.dims()[0], 1);
        assert_eq!(cx.dims()[1], 4);
        // d⁰ = 0 with trivial coefficients.
        assert!(cx.differential(&[(vec![0, 0], rat(1))].into_iter().collect()).is_empty());
        // d¹(x₂) = −x₁⊗x₁.
        let d = cx.differential(&[(vec![0, 2, 0], rat(1))].into_iter().collect());
        assert_eq!(d, [(vec![0, 1, 1, 0], rat(-1))].into_iter().collect());
    }

    #[test]
    fn thm_exp_shape() {
        assert_eq!(cotor_trivial(&div_coalgebra(8), 4, None).unwrap(), vec![1, 1, 0, 0, 0]);
        assert_eq!(cotor_trivial(&bin_coalgebra(8), 4, None).unwrap(), vec![1, 1, 0, 0, 0]);
        // As a finite coalgebra the truncation has cohomology in every degree.
        assert_eq!(
            cotor_trivial(&div_coalgebra(2).as_finite(), 3, None).unwrap(),
            vec![1, 1, 1, 1]
        );
    }

    #[test]
    fn dirichlet_two_primes() {
        assert_eq!(
            cotor_trivial(&dir_coalgebra(2, 4).unwrap(), 3, None).unwrap(),
            vec![1, 2, 1, 0]
        );
    }

    #[test]
    fn cup_on_dirichlet() {
        let c = dir_coalgebra(2, 4).unwrap();
        let cx = trivial_complex(&c, 3, None);
        let u = |label: &str| {
            let x = c.index_of(label).unwrap();
            cx.cocycle(1, [(vec![0, x, 0], rat(1))].into_iter().collect()).unwrap()
        };
        let (u1, u2) = (u("z2"), u("z3"));
        let a = cx.cup(&u1, &u2).unwrap();
        let b = cx.cup(&u2, &u1).unwrap();
        let mut sum = a.coeffs.clone();
        for (t, k) in &b.coeffs {
            add_term(&mut sum, t.clone(), k.clone());
        }
        assert!(cx.is_coboundary(2, &sum).unwrap());
        assert!(cx.is_coboundary(2, &cx.cup(&u1, &u1).unwrap().coeffs).unwrap());
        assert!(!cx.is_coboundary(2, &a.coeffs).unwrap());
        let unit = cx.cocycle(0, [(vec![0, 0], rat(1))].into_iter().collect()).unwrap();
        assert_eq!(cx.cup(&unit, &u1).unwrap(), u1);
    }

    #[test]
    fn representatives_count_matches_dims() {
        let c = dir_coalgebra(2, 3).unwrap();
        let cx = trivial_complex(&c, 2, None);
        let dims = cx.cohomology_dims().unwrap();
        for n in 0..=2 {
            assert_eq!(cx.representatives(n).unwrap().len(), dims[n]);
        }
    }

    #[test]
    fn normalized_requires_grouplike() {
        let c = crate::coalgebra::full_incidence_coalgebra(&crate::combinat::Poset::chain(2));
        let v = Comodule::vertex(&c, Side::Right, 0).unwrap();
        let w = Comodule::vertex(&c, Side::Left, 1).unwrap();
        assert!(matches!(
            CobarComplex::new(&c, &v, &w, 2, None, Reduction::Normalized, Budget::DEFAULT),
            Err(Error::NoGrouplike)
        ));
        assert!(Comodule::trivial(&c, Side::Right).is_err());
    }
}
