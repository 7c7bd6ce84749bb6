use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::One;
use rayon::prelude::*;

use super::bimodule::Bimodule;
use super::complex::{CochainComplex, GradedComplex};
use super::matrix::RationalMatrix;
use crate::coalgebra::graded::add_grades;
use crate::coalgebra::FDAlgebra;
use crate::sparse::add_term;
use crate::{Budget, Error, Rational, Result};

/// A cochain `f: A^{⊗n} → M`, stored as coefficients on
/// `(a_{i1} ⊗ … ⊗ a_{in}) ↦ m_j`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HochschildCochain {
    pub degree: usize,
    pub values: BTreeMap<(Vec<usize>, usize), Rational>,
}

impl HochschildCochain {
    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }
}

fn power(base: usize, exp: usize) -> Option<usize> {
    (0..exp).try_fold(1usize, |acc, _| acc.checked_mul(base))
}

fn encode(tuple: &[usize], da: usize) -> usize {
    tuple.iter().fold(0, |acc, &i| acc * da + i)
}

fn decode(mut code: usize, n: usize, da: usize) -> Vec<usize> {
    let mut t = vec![0; n];
    for k in (0..n).rev() {
        t[k] = code % da;
        code /= da;
    }
    t
}

/// Terms of `d E` where `E` sends the tuple with code `tc` (length `n`) to
/// `m_j` and everything else to zero. Returns codes of `C^{n+1}`
/// (`tuple_code · dim M + j`).
fn elementary_terms(a: &FDAlgebra, m: &Bimodule, n: usize, tc: usize, j: usize) -> Vec<(usize, Rational)> {
    let (da, dm) = (a.dim(), m.dim());
    let pow_n = power(da, n).expect("checked against the budget");
    let mut out = BTreeMap::new();
    // a_s · E(rest)
    for s in 0..da {
        for (j2, c) in m.left(s, j) {
            add_term(&mut out, (s * pow_n + tc) * dm + j2, c.clone());
        }
    }
    // (−1)^k E(…, a_s a_t, …) at position k
    let tuple = decode(tc, n, da);
    for k in 1..=n {
        let sign = if k % 2 == 0 { Rational::one() } else { -Rational::one() };
        let tail = power(da, n - k).unwrap();
        let prefix = tc / (tail * da);
        let suffix = tc % tail;
        for (s, t, c) in a.factorizations(tuple[k - 1]) {
            let code = ((prefix * da + s) * da + t) * tail + suffix;
            add_term(&mut out, code * dm + j, &sign * c);
        }
    }
    // (−1)^{n+1} E(…) · a_t
    let sign = if (n + 1) % 2 == 0 { Rational::one() } else { -Rational::one() };
    for t in 0..da {
        for (j2, c) in m.right(j, t) {
            add_term(&mut out, (tc * da + t) * dm + j2, &sign * c);
        }
    }
    out.into_iter().collect()
}

fn strip(mut g: Vec<i64>) -> Vec<i64> {
    while g.last() == Some(&0) {
        g.pop();
    }
    g
}

/// The full Hochschild cochain complex `Hom(A^{⊗n}, M)` through `C^{n_max+1}`,
/// split by internal weight when both `A` and `M` are graded.
#[derive(Clone, Debug)]
pub struct HochschildComplex {
    bimodule: Bimodule,
    graded: GradedComplex,
    /// `bases[b][n]`: codes of the coordinates of block `b` in degree `n`.
    bases: Vec<Vec<Vec<usize>>>,
}

pub fn hochschild_complex(m: &Bimodule, n_max: usize, budget: Budget) -> Result<HochschildComplex> {
    let a = m.algebra().clone();
    let (da, dm) = (a.dim(), m.dim());
    let mut sizes = Vec::new();
    let mut total = 0usize;
    for n in 0..=n_max + 1 {
        let size = power(da, n).and_then(|p| p.checked_mul(dm));
        let size = size.ok_or(Error::BudgetExceeded {
            what: "Hochschild complex".into(),
            size: usize::MAX,
            budget: budget.0,
        })?;
        total = total.saturating_add(size);
        sizes.push(size);
    }
    budget.check("Hochschild complex", total)?;
    let weights = match (a.grading(), m.grading()) {
        (Some(ag), Some(mg)) => Some((ag.clone(), mg.clone())),
        _ => None,
    };
    let mut keys: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
    let mut block_of: Vec<Vec<u32>> = Vec::new();
    let mut local: Vec<Vec<u32>> = Vec::new();
    let mut bases: Vec<Vec<Vec<usize>>> = Vec::new();
    for (n, &size) in sizes.iter().enumerate() {
        let ws: Vec<Vec<i64>> = (0..size)
            .into_par_iter()
            .map(|code| match &weights {
                None => Vec::new(),
                Some((ag, mg)) => {
                    let mut w = mg[code % dm].clone();
                    for i in decode(code / dm, n, da) {
                        let neg: Vec<i64> = ag[i].iter().map(|x| -x).collect();
                        w = add_grades(&w, &neg);
                    }
                    strip(w)
                }
            })
            .collect();
        let mut bo = Vec::with_capacity(size);
        let mut lo = Vec::with_capacity(size);
        for (code, w) in ws.into_iter().enumerate() {
            let next = keys.len();
            let b = *keys.entry(w).or_insert(next);
            if b == bases.len() {
                bases.push(vec![Vec::new(); sizes.len()]);
            }
            bo.push(b as u32);
            lo.push(bases[b][n].len() as u32);
            bases[b][n].push(code);
        }
        block_of.push(bo);
        local.push(lo);
    }
    let mut columns: Vec<Vec<Vec<Vec<(usize, Rational)>>>> =
        bases.iter().map(|_| vec![Vec::new(); n_max + 1]).collect();
    for n in 0..=n_max {
        let cols: Vec<(usize, Vec<(usize, Rational)>)> = (0..sizes[n])
            .into_par_iter()
            .map(|code| {
                let terms = elementary_terms(&a, m, n, code / dm, code % dm);
                let b = block_of[n][code] as usize;
                let col = terms
                    .into_iter()
                    .map(|(t, c)| {
                        debug_assert_eq!(block_of[n + 1][t] as usize, b);
                        (local[n + 1][t] as usize, c)
                    })
                    .collect();
                (b, col)
            })
            .collect();
        for (b, col) in cols {
            columns[b][n].push(col);
        }
    }
    let mut blocks = Vec::new();
    let mut ordered: Vec<(Vec<i64>, usize)> = keys.into_iter().collect();
    ordered.sort_by_key(|(_, b)| *b);
    for ((key, b), cols) in ordered.into_iter().zip(columns) {
        let dims: Vec<usize> = bases[b].iter().map(|v| v.len()).collect();
        let diffs = cols
            .into_iter()
            .enumerate()
            .map(|(n, c)| RationalMatrix::from_columns(dims[n + 1], c))
            .collect();
        blocks.push((key, CochainComplex::new(dims, diffs)?));
    }
    Ok(HochschildComplex {
        bimodule: m.clone(),
        graded: GradedComplex { blocks },
        bases,
    })
}

impl HochschildComplex {
    pub fn graded(&self) -> &GradedComplex {
        &self.graded
    }

    pub fn dims(&self) -> Vec<usize> {
        self.graded.dims()
    }

    pub fn cohomology_dims(&self, n_max: usize) -> Result<Vec<usize>> {
        self.graded.cohomology_dims(n_max)
    }

    fn cochain(&self, b: usize, n: usize, v: &[(usize, Rational)]) -> HochschildCochain {
        let (da, dm) = (self.bimodule.algebra().dim(), self.bimodule.dim());
        let mut values = BTreeMap::new();
        for (i, c) in v {
            let code = self.bases[b][n][*i];
            add_term(&mut values, (decode(code / dm, n, da), code % dm), c.clone());
        }
        HochschildCochain { degree: n, values }
    }

    /// A basis of the degree-`n` cocycles, block by block.
    pub fn cocycles(&self, n: usize) -> Result<Vec<HochschildCochain>> {
        if n >= self.graded.blocks.first().map_or(0, |(_, c)| c.len()) {
            return Err(Error::Index(format!("no differential out of degree {n}")));
        }
        let mut out = Vec::new();
        for (b, (_, c)) in self.graded.blocks.iter().enumerate() {
            for v in c.differential(n).kernel() {
                out.push(self.cochain(b, n, &v));
            }
        }
        Ok(out)
    }

    /// Whether a cocycle `f` is `d g` for some `g`.
    pub fn is_coboundary(&self, f: &HochschildCochain) -> Result<bool> {
        let n = f.degree;
        if n == 0 {
            return Ok(f.is_zero());
        }
        let (da, dm) = (self.bimodule.algebra().dim(), self.bimodule.dim());
        let mut per_block: BTreeMap<usize, Vec<(usize, Rational)>> = BTreeMap::new();
        let mut position: HashMap<usize, (usize, usize)> = HashMap::new();
        for (b, bases) in self.bases.iter().enumerate() {
            if let Some(codes) = bases.get(n) {
                for (i, code) in codes.iter().enumerate() {
                    position.insert(*code, (b, i));
                }
            }
        }
        for ((t, j), c) in &f.values {
            if t.len() != n {
                return Err(Error::Shape("cochain tuple of the wrong length".into()));
            }
            let (b, i) = position[&(encode(t, da) * dm + j)];
            per_block.entry(b).or_default().push((i, c.clone()));
        }
        for (b, mut v) in per_block {
            v.sort_by_key(|(i, _)| *i);
            if self.graded.blocks[b].1.differential(n - 1).solve(&v).is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `d f` computed directly from the action tables.
pub fn hochschild_differential(m: &Bimodule, f: &HochschildCochain) -> HochschildCochain {
    let a = m.algebra();
    let (da, dm) = (a.dim(), m.dim());
    let n = f.degree;
    let mut values = BTreeMap::new();
    for ((t, j), c) in &f.values {
        for (code, e) in elementary_terms(a, m, n, encode(t, da), *j) {
            add_term(&mut values, (decode(code / dm, n + 1, da), code % dm), c * e);
        }
    }
    HochschildCochain {
        degree: n + 1,
        values,
    }
}

/// `(f ⌣ g)(a_1, …, a_{p+q}) = f(a_1, …, a_p) · g(a_{p+1}, …, a_{p+q})`,
/// the product taken in the coefficient algebra.
pub fn gerstenhaber_cup(m: &Bimodule, f: &HochschildCochain, g: &HochschildCochain) -> Result<HochschildCochain> {
    let mut values = BTreeMap::new();
    for ((tf, jf), cf) in &f.values {
        for ((tg, jg), cg) in &g.values {
            let prod = m.coefficient_product(&[(*jf, cf.clone())], &[(*jg, cg.clone())])?;
            let mut t = tf.clone();
            t.extend_from_slice(tg);
            for (j, c) in prod {
                add_term(&mut values, (t.clone(), j), c);
            }
        }
    }
    if f.values.is_empty() || g.values.is_empty() {
        m.coefficient_product(&[], &[])?;
    }
    Ok(HochschildCochain {
        degree: f.degree + g.degree,
        values,
    })
}

/// The normalized complex for an incidence algebra with an
/// idempotent-homogeneous bimodule: `C^n = ⊕_{y0<…<yn} e_{y0} M e_{yn}`.
pub fn hochschild_reduced(m: &Bimodule, n_max: usize) -> Result<CochainComplex> {
    let a = m.algebra();
    let form = a
        .incidence_form()
        .ok_or_else(|| Error::NotIncidenceForm(a.name().to_string()))?;
    let types = m.idempotent_types()?;
    let p = &form.poset;
    let mut bases: Vec<Vec<(Vec<usize>, usize)>> = Vec::new();
    let mut index: Vec<HashMap<(Vec<usize>, usize), usize>> = Vec::new();
    for n in 0..=n_max + 1 {
        let mut basis = Vec::new();
        for chain in p.chains_of_len(n + 1) {
            for (j, &(l, r)) in types.iter().enumerate() {
                if l == chain[0] && r == chain[n] {
                    basis.push((chain.clone(), j));
                }
            }
        }
        index.push(basis.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect());
        bases.push(basis);
    }
    let e = |x: usize, y: usize| form.index_of(x, y).unwrap();
    let mut diffs = Vec::new();
    for n in 0..=n_max {
        let cols: Vec<Vec<(usize, Rational)>> = bases[n]
            .par_iter()
            .map(|(y, j)| {
                let mut col = BTreeMap::new();
                for z0 in 0..p.len() {
                    if p.lt(z0, y[0]) {
                        let mut z = vec![z0];
                        z.extend_from_slice(y);
                        for (j2, c) in m.left(e(z0, y[0]), *j) {
                            add_term(&mut col, index[n + 1][&(z.clone(), *j2)], c.clone());
                        }
                    }
                }
                for k in 1..=n {
                    let sign = if k % 2 == 0 { Rational::one() } else { -Rational::one() };
                    for w in 0..p.len() {
                        if p.lt(y[k - 1], w) && p.lt(w, y[k]) {
                            let mut z = y.clone();
                            z.insert(k, w);
                            add_term(&mut col, index[n + 1][&(z, *j)], sign.clone());
                        }
                    }
                }
                let sign = if (n + 1) % 2 == 0 { Rational::one() } else { -Rational::one() };
                for zl in 0..p.len() {
                    if p.lt(y[n], zl) {
                        let mut z = y.clone();
                        z.push(zl);
                        for (j2, c) in m.right(*j, e(y[n], zl)) {
                            add_term(&mut col, index[n + 1][&(z.clone(), *j2)], &sign * c);
                        }
                    }
                }
                col.into_iter().collect()
            })
            .collect();
        diffs.push(RationalMatrix::from_columns(bases[n + 1].len(), cols));
    }
    CochainComplex::new(bases.iter().map(|b| b.len()).collect(), diffs)
}

/// `dim HH^n(A, M)` for `n ≤ n_max` from the full complex.
pub fn hochschild_dims(m: &Bimodule, n_max: usize, budget: Budget) -> Result<Vec<usize>> {
    hochschild_complex(m, n_max, budget)?.cohomology_dims(n_max)
}

/// `Ext^n` between the simples at vertices `x` and `y` of an incidence
/// algebra, as `HH^n(A, ₓk_y)`.
pub fn ext_dims(a: &Arc<FDAlgebra>, x: &str, y: &str, n_max: usize) -> Result<Vec<usize>> {
    let form = a
        .incidence_form()
        .ok_or_else(|| Error::NotIncidenceForm(a.name().to_string()))?;
    let find = |l: &str| {
        form.poset
            .index_of(l)
            .ok_or_else(|| Error::UnknownVertex(l.to_string()))
    };
    let (x, y) = (find(x)?, find(y)?);
    let k = Bimodule::vertex(a.clone(), x, y)?;
    hochschild_reduced(&k, n_max)?.cohomology_dims(n_max)
}
