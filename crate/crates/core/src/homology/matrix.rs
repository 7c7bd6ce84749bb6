use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::sparse::add_term;
use crate::{Error, Rational, Result};

type SparseRow = Vec<(usize, Rational)>;

/// Sparse exact matrix stored by rows; stored entries are nonzero and
/// sorted by column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseRow>,
}

fn normalize(mut row: SparseRow) -> SparseRow {
    row.sort_by_key(|(c, _)| *c);
    let mut out: SparseRow = Vec::with_capacity(row.len());
    for (c, v) in row {
        match out.last_mut() {
            Some((lc, lv)) if *lc == c => *lv += v,
            _ => out.push((c, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

impl RationalMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    /// Rows given as `(column, value)` lists; duplicates are summed.
    pub fn from_rows(cols: usize, rows: Vec<SparseRow>) -> Self {
        let data: Vec<SparseRow> = rows.into_iter().map(normalize).collect();
        debug_assert!(data.iter().flatten().all(|(c, _)| *c < cols));
        RationalMatrix {
            rows: data.len(),
            cols,
            data,
        }
    }

    /// Columns given as `(row, value)` lists.
    pub fn from_columns(rows: usize, columns: Vec<SparseRow>) -> Self {
        let cols = columns.len();
        let mut data = vec![Vec::new(); rows];
        for (j, col) in columns.into_iter().enumerate() {
            for (i, v) in col {
                data[i].push((j, v));
            }
        }
        Self::from_rows(cols, data).with_rows(rows)
    }

    fn with_rows(mut self, rows: usize) -> Self {
        self.data.resize(rows, Vec::new());
        self.rows = rows;
        self
    }

    pub fn from_dense(rows: &[Vec<Rational>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .map(|r| r.iter().cloned().enumerate().collect())
            .collect();
        Self::from_rows(cols, data)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_rows(n, (0..n).map(|i| vec![(i, Rational::one())]).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[(usize, Rational)] {
        &self.data[i]
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.data[i]
            .binary_search_by_key(&j, |(c, _)| *c)
            .map(|k| self.data[i][k].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    pub fn transpose(&self) -> Self {
        let mut data = vec![Vec::new(); self.cols];
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row {
                data[*j].push((i, v.clone()));
            }
        }
        RationalMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// `self · other`.
    pub fn mul(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "{}×{} times {}×{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc = BTreeMap::new();
                for (k, a) in row {
                    for (j, b) in &other.data[*k] {
                        add_term(&mut acc, *j, a * b);
                    }
                }
                acc.into_iter().collect()
            })
            .collect();
        Ok(RationalMatrix {
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    /// `M x` for a sparse vector `x`.
    pub fn apply(&self, x: &[(usize, Rational)]) -> SparseRow {
        let dense: BTreeMap<usize, &Rational> = x.iter().map(|(i, v)| (*i, v)).collect();
        let mut out = Vec::new();
        for (i, row) in self.data.iter().enumerate() {
            let mut acc = Rational::zero();
            for (j, a) in row {
                if let Some(v) = dense.get(j) {
                    acc += a * *v;
                }
            }
            if !acc.is_zero() {
                out.push((i, acc));
            }
        }
        out
    }

    /// Exact rank by fraction-free elimination on integer rows: machine
    /// integers first, big integers if an intermediate overflows.
    pub fn rank(&self) -> usize {
        let int_rows: Vec<Vec<(usize, BigInt)>> = self
            .data
            .iter()
            .filter(|r| !r.is_empty())
            .map(|r| integer_row(r))
            .collect();
        let small: Option<Vec<Vec<(usize, i128)>>> = int_rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|(c, v)| v.to_i128().map(|v| (*c, v)))
                    .collect::<Option<Vec<_>>>()
            })
            .collect();
        if let Some(rows) = small {
            if let Some(r) = echelon_rank(rows, self.cols) {
                return r;
            }
        }
        echelon_rank(int_rows, self.cols).expect("big integers do not overflow")
    }

    /// Reduced row echelon form: `(pivot column, row)` with pivot entry 1
    /// and zeros in every other pivot column.
    fn rref(rows: impl IntoIterator<Item = SparseRow>) -> Vec<(usize, SparseRow)> {
        let mut pivots: Vec<(usize, SparseRow)> = Vec::new();
        let mut pivot_of: BTreeMap<usize, usize> = BTreeMap::new();
        for mut r in rows {
            loop {
                let hit = r
                    .iter()
                    .find(|(c, _)| pivot_of.contains_key(c))
                    .map(|(c, v)| (*c, v.clone()));
                match hit {
                    Some((c, v)) => r = axpy(&r, &-v, &pivots[pivot_of[&c]].1),
                    None => break,
                }
            }
            if r.is_empty() {
                continue;
            }
            let (lead, lv) = (r[0].0, r[0].1.clone());
            let inv = lv.recip();
            for e in r.iter_mut() {
                e.1 *= &inv;
            }
            for (_, p) in pivots.iter_mut() {
                if let Ok(k) = p.binary_search_by_key(&lead, |(c, _)| *c) {
                    let f = -p[k].1.clone();
                    *p = axpy(p, &f, &r);
                }
            }
            pivot_of.insert(lead, pivots.len());
            pivots.push((lead, r));
        }
        pivots
    }

    /// A basis of `{x : M x = 0}`.
    pub fn kernel(&self) -> Vec<SparseRow> {
        let pivots = Self::rref(self.data.iter().cloned());
        let pivot_cols: BTreeMap<usize, usize> =
            pivots.iter().enumerate().map(|(i, (c, _))| (*c, i)).collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_cols.contains_key(&free) {
                continue;
            }
            let mut v = vec![(free, Rational::one())];
            for (c, row) in &pivots {
                if let Ok(k) = row.binary_search_by_key(&free, |(j, _)| *j) {
                    v.push((*c, -row[k].1.clone()));
                }
            }
            basis.push(normalize(v));
        }
        basis
    }

    /// Some `x` with `M x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[(usize, Rational)]) -> Option<SparseRow> {
        let mut rows: Vec<SparseRow> = self.data.clone();
        for (i, v) in b {
            rows[*i].push((self.cols, v.clone()));
        }
        let pivots = Self::rref(rows);
        let mut x = Vec::new();
        for (c, row) in &pivots {
            if *c == self.cols {
                return None;
            }
            if let Some((j, v)) = row.last() {
                if *j == self.cols {
                    x.push((*c, v.clone()));
                }
            }
        }
        Some(normalize(x))
    }
}

/// `a + f·b` for sorted sparse rows.
fn axpy(a: &[(usize, Rational)], f: &Rational, b: &[(usize, Rational)]) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let cb = b.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        if ca < cb {
            out.push(a[i].clone());
            i += 1;
        } else if cb < ca {
            out.push((cb, f * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + f * &b[j].1;
            if !v.is_zero() {
                out.push((ca, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn integer_row(row: &[(usize, Rational)]) -> Vec<(usize, BigInt)> {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
    row.iter()
        .map(|(c, v)| (*c, v.numer() * (&lcm / v.denom())))
        .collect()
}

trait EchelonInt: Clone + PartialEq + Sized {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    /// `a·x − b·y`, `None` on overflow.
    fn mul_sub(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self>;
    fn gcd(&self, other: &Self) -> Self;
    fn is_unit(&self) -> bool;
    fn div_exact(&self, d: &Self) -> Self;
}

impl EchelonInt for i128 {
    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn mul_sub(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        a.checked_mul(*x)?.checked_sub(b.checked_mul(*y)?)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
}

impl EchelonInt for BigInt {
    fn zero() -> Self {
        <BigInt as Zero>::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn mul_sub(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        Some(a * x - b * y)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
}

/// Divides a row by the gcd of its entries.
fn primitive<T: EchelonInt>(row: &mut [(usize, T)]) {
    let mut g = match row.first() {
        Some((_, v)) => v.clone(),
        None => return,
    };
    for (_, v) in row.iter().skip(1) {
        if g.is_unit() {
            return;
        }
        g = g.gcd(v);
    }
    if !g.is_unit() {
        for (_, v) in row.iter_mut() {
            *v = v.div_exact(&g);
        }
    }
}

/// `pv·r − rv·p` where both rows share the leading column, reduced by the
/// gcd of the two leading entries first.
fn eliminate<T: EchelonInt>(r: &[(usize, T)], p: &[(usize, T)]) -> Option<Vec<(usize, T)>> {
    let (rv, pv) = (&r[0].1, &p[0].1);
    let g = rv.gcd(pv);
    let (a, b) = (pv.div_exact(&g), rv.div_exact(&g));
    let mut out = Vec::with_capacity(r.len() + p.len());
    let (mut i, mut j) = (1, 1);
    while i < r.len() || j < p.len() {
        let ci = r.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let cj = p.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        let (c, v) = if ci < cj {
            let v = T::mul_sub(&a, &r[i].1, &b, &T::zero())?;
            i += 1;
            (ci, v)
        } else if cj < ci {
            let v = T::mul_sub(&a, &T::zero(), &b, &p[j].1)?;
            j += 1;
            (cj, v)
        } else {
            let v = T::mul_sub(&a, &r[i].1, &b, &p[j].1)?;
            i += 1;
            j += 1;
            (ci, v)
        };
        if !v.is_zero() {
            out.push((c, v));
        }
    }
    primitive(&mut out);
    Some(out)
}

fn echelon_rank<T: EchelonInt>(rows: Vec<Vec<(usize, T)>>, cols: usize) -> Option<usize> {
    let mut pivot: Vec<Option<Vec<(usize, T)>>> = vec![None; cols];
    let mut rank = 0;
    for mut r in rows {
        primitive(&mut r);
        while let Some(lead) = r.first().map(|e| e.0) {
            match &pivot[lead] {
                Some(p) => r = eliminate(&r, p)?,
                None => {
                    pivot[lead] = Some(r);
                    rank += 1;
                    break;
                }
            }
        }
    }
    Some(rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, ratio};

    fn dense(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_dense(
            &rows
                .iter()
                .map(|r| r.iter().map(|&v| rat(v)).collect())
                .collect::<Vec<_>>(),
        )
    }

    #[test]
    fn rank_examples() {
        assert_eq!(RationalMatrix::identity(3).rank(), 3);
        assert_eq!(RationalMatrix::zero(3, 4).rank(), 0);
        assert_eq!(dense(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(dense(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]).rank(), 2);
    }

    #[test]
    fn rank_with_fractions() {
        let m = RationalMatrix::from_dense(&[
            vec![ratio(1, 2), ratio(1, 3)],
            vec![ratio(3, 2), rat(1)],
        ]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn overflow_falls_back_to_big_integers() {
        // Rows built from large powers force i128 overflow in elimination.
        let big = 1i64 << 62;
        let m = dense(&[&[big, big - 1, 3], &[big - 3, big, 5], &[7, big - 7, big]]);
        let rows: Vec<Vec<(usize, BigInt)>> = (0..3)
            .map(|i| m.row(i).iter().map(|(c, v)| (*c, v.numer().clone())).collect())
            .collect();
        assert_eq!(echelon_rank(rows, 3), Some(3));
        assert_eq!(m.rank(), 3);
        // Square of a Hilbert-like matrix is still full rank.
        let h = RationalMatrix::from_dense(
            &(1..=6)
                .map(|i| (1..=6).map(|j| ratio(1, i + j - 1)).collect())
                .collect::<Vec<_>>(),
        );
        assert_eq!(h.mul(&h).unwrap().rank(), 6);
    }

    #[test]
    fn kernel_and_solve() {
        let m = dense(&[&[1, 1, 0], &[0, 1, 1]]);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert!(m.apply(&k[0]).is_empty());
        let b = vec![(0, rat(2)), (1, rat(3))];
        let x = m.solve(&b).unwrap();
        assert_eq!(m.apply(&x), b);
        let singular = dense(&[&[1, 2], &[2, 4]]);
        assert!(singular.solve(&[(0, rat(1))]).is_none());
    }

    #[test]
    fn columns_and_transpose() {
        let m = RationalMatrix::from_columns(3, vec![vec![(0, rat(1)), (2, rat(5))], vec![(1, rat(2))]]);
        assert_eq!(m.rows(), 3);
        assert_eq!(m.cols(), 2);
        assert_eq!(m.get(2, 0), rat(5));
        assert_eq!(m.transpose().transpose(), m);
        assert_eq!(m.transpose().get(0, 2), rat(5));
    }
}
