use std::collections::HashMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::algebra::vertex_grade;
use super::graded::{CoalgebraData, GradedCoalgebra, IncidenceForm, Term};
use crate::combinat::qint::{binomial, check_q, q_binomial};
use crate::combinat::Poset;
use crate::{Error, Rational, Result};

fn sequence_coalgebra(
    name: &str,
    letter: &str,
    n_max: usize,
    coeff: impl Fn(usize, usize) -> Rational,
) -> GradedCoalgebra {
    let labels = (0..=n_max).map(|n| format!("{letter}{n}")).collect();
    let comult = (0..=n_max)
        .map(|n| (0..=n).map(|r| (r, n - r, coeff(n, r))).collect())
        .collect();
    let counit = (0..=n_max)
        .map(|n| if n == 0 { Rational::one() } else { Rational::zero() })
        .collect();
    GradedCoalgebra::new(CoalgebraData {
        name: name.to_string(),
        labels,
        degrees: (0..=n_max as u32).collect(),
        grades: (0..=n_max as i64).map(|n| vec![n]).collect(),
        comult,
        counit,
        grouplike: Some(0),
        complete_through: Some(n_max as u32),
        incidence: None,
    })
    .expect("sequence coalgebra axioms")
}

/// Divided powers: `Δ(x_n) = Σ x_r ⊗ x_{n−r}`, truncated at degree `n_max`.
pub fn div_coalgebra(n_max: usize) -> GradedCoalgebra {
    sequence_coalgebra("div", "x", n_max, |_, _| Rational::one())
}

/// Binomial: `Δ(y_n) = Σ C(n, r) y_r ⊗ y_{n−r}`.
pub fn bin_coalgebra(n_max: usize) -> GradedCoalgebra {
    sequence_coalgebra("bin", "y", n_max, binomial)
}

/// Eulerian: `Δ(y_n) = Σ [n r]_q y_r ⊗ y_{n−r}`.
pub fn binq_coalgebra(n_max: usize, q: &Rational) -> Result<GradedCoalgebra> {
    check_q(n_max, q)?;
    Ok(sequence_coalgebra(&format!("binq(q={q})"), "y", n_max, |n, r| {
        q_binomial(n, r, q).expect("checked q")
    }))
}

/// The first `m` primes.
pub fn first_primes(m: usize) -> Vec<u64> {
    let mut primes = Vec::new();
    let mut n = 2u64;
    while primes.len() < m {
        if primes.iter().all(|p| n % p != 0) {
            primes.push(n);
        }
        n += 1;
    }
    primes
}

/// Exponent vectors of length `m` with total at most `d`.
pub(crate) fn exponent_vectors(m: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        let mut next = Vec::new();
        for v in &out {
            let used: u32 = v.iter().sum();
            for e in 0..=(d - used) {
                let mut w = v.clone();
                w.push(e);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

/// `Δ(b) = Σ_{e₁ + e₂ = e} c(e₁, e₂) b_{e₁} ⊗ b_{e₂}` over a monomial basis.
fn monomial_coalgebra(
    name: String,
    exps: &[Vec<u32>],
    labels: Vec<String>,
    d: u32,
    coeff: impl Fn(&[u32], &[u32]) -> Rational,
) -> GradedCoalgebra {
    let index: HashMap<&Vec<u32>, usize> = exps.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let zero = vec![0u32; exps.first().map_or(0, |e| e.len())];
    let comult = exps
        .iter()
        .map(|e| {
            let mut terms: Vec<Term> = Vec::new();
            for left in exponent_vectors(e.len(), e.iter().sum()) {
                if left.iter().zip(e).all(|(a, b)| a <= b) {
                    let right: Vec<u32> = e.iter().zip(&left).map(|(a, b)| a - b).collect();
                    terms.push((index[&left], index[&right], coeff(&left, &right)));
                }
            }
            terms
        })
        .collect();
    let counit = exps
        .iter()
        .map(|e| if *e == zero { Rational::one() } else { Rational::zero() })
        .collect();
    GradedCoalgebra::new(CoalgebraData {
        name,
        labels,
        degrees: exps.iter().map(|e| e.iter().sum()).collect(),
        grades: exps
            .iter()
            .map(|e| e.iter().map(|&x| x as i64).collect())
            .collect(),
        comult,
        counit,
        grouplike: Some(index[&zero]),
        complete_through: Some(d),
        incidence: None,
    })
    .expect("monomial coalgebra axioms")
}

/// `n = ∏ p_i^{e_i}` over the first primes.
pub fn dirichlet_index(exps: &[u32]) -> u64 {
    first_primes(exps.len())
        .iter()
        .zip(exps)
        .map(|(p, e)| p.pow(*e))
        .product()
}

/// The Dirichlet subcoalgebra on `z_n` with `n` a product of at most `d`
/// primes among the first `m`: `Δ(z_n) = Σ_{ij=n} z_i ⊗ z_j`. Basis in
/// increasing `n`; graded by prime exponent vectors.
pub fn dir_coalgebra(m: usize, d: u32) -> Result<GradedCoalgebra> {
    if m == 0 {
        return Err(Error::Index("Dirichlet coalgebra needs m ≥ 1".into()));
    }
    let mut exps = exponent_vectors(m, d);
    exps.sort_by_key(|e| dirichlet_index(e));
    let labels = exps.iter().map(|e| format!("z{}", dirichlet_index(e))).collect();
    Ok(monomial_coalgebra(
        format!("dir({m})"),
        &exps,
        labels,
        d,
        |_, _| Rational::one(),
    ))
}

pub(crate) fn monomial_label(vars: &[String], e: &[u32]) -> String {
    let mut s = String::new();
    for (v, &k) in vars.iter().zip(e) {
        match k {
            0 => {}
            1 => s.push_str(v),
            _ => s.push_str(&format!("{v}^{k}")),
        }
    }
    if s.is_empty() {
        "1".into()
    } else {
        s
    }
}

/// `k[X₁, …, X_m]` with `Δ(X^e) = Σ ∏ C(e_i, f_i) X^f ⊗ X^{e−f}`, truncated
/// at total degree `d`. Basis ordered by total degree, then lexicographically
/// with higher powers of earlier variables first.
pub fn polynomial_coalgebra<S: AsRef<str>>(vars: &[S], d: u32) -> GradedCoalgebra {
    let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
    let mut exps = exponent_vectors(vars.len(), d);
    exps.sort_by(|a, b| {
        let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
        da.cmp(&db).then_with(|| b.cmp(a))
    });
    let labels = exps.iter().map(|e| monomial_label(&vars, e)).collect();
    monomial_coalgebra(
        format!("k[{}]", vars.join(",")),
        &exps,
        labels,
        d,
        |f, g| {
            f.iter()
                .zip(g)
                .map(|(&a, &b)| binomial((a + b) as usize, a as usize))
                .fold(Rational::one(), |acc, c| acc * c)
        },
    )
}

/// The unreduced incidence coalgebra of a finite poset: basis the intervals,
/// `Δ([x, y]) = Σ_{z ∈ [x, y]} [x, z] ⊗ [z, y]`, `ε([x, y]) = δ_{xy}`,
/// degree the length of a longest chain, graded by `e_y − e_x`.
pub fn full_incidence_coalgebra(p: &Poset) -> GradedCoalgebra {
    let p = Arc::new(p.clone());
    let n = p.len();
    let mut pairs = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if p.leq(x, y) {
                pairs.push((x, y));
            }
        }
    }
    let index: HashMap<(usize, usize), usize> =
        pairs.iter().enumerate().map(|(i, &xy)| (xy, i)).collect();
    let comult = pairs
        .iter()
        .map(|&(x, y)| {
            p.interval_members(x, y)
                .into_iter()
                .map(|z| (index[&(x, z)], index[&(z, y)], Rational::one()))
                .collect()
        })
        .collect();
    let grouplike = if n == 1 { Some(0) } else { None };
    GradedCoalgebra::new(CoalgebraData {
        name: "incidence".into(),
        labels: pairs
            .iter()
            .map(|&(x, y)| format!("[{},{}]", p.label(x), p.label(y)))
            .collect(),
        degrees: pairs
            .iter()
            .map(|&(x, y)| p.longest_chain(x, y).expect("comparable") as u32)
            .collect(),
        grades: pairs.iter().map(|&(x, y)| vertex_grade(n, x, y)).collect(),
        comult,
        counit: pairs
            .iter()
            .map(|&(x, y)| if x == y { Rational::one() } else { Rational::zero() })
            .collect(),
        grouplike,
        complete_through: None,
        incidence: Some(IncidenceForm::new(p.clone(), pairs.clone())),
    })
    .expect("incidence coalgebra axioms")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalgebra::dual_algebra;
    use crate::series::{SeriesKind, TruncatedSeries};
    use crate::{rat, ratio};

    fn terms(c: &GradedCoalgebra, label: &str) -> Vec<(String, String, Rational)> {
        c.comult(c.index_of(label).unwrap())
            .iter()
            .map(|(l, r, k)| (c.label(*l).to_string(), c.label(*r).to_string(), k.clone()))
            .collect()
    }

    fn t(l: &str, r: &str, k: Rational) -> (String, String, Rational) {
        (l.to_string(), r.to_string(), k)
    }

    #[test]
    fn sequence_examples() {
        let div = div_coalgebra(2);
        assert_eq!(
            terms(&div, "x2"),
            vec![t("x0", "x2", rat(1)), t("x1", "x1", rat(1)), t("x2", "x0", rat(1))]
        );
        assert_eq!(terms(&bin_coalgebra(2), "y2")[1].2, rat(2));
        assert_eq!(terms(&binq_coalgebra(2, &rat(2)).unwrap(), "y2")[1].2, rat(3));
        assert!(matches!(
            binq_coalgebra(3, &rat(-1)),
            Err(Error::QDegenerate { m: 2, .. })
        ));
    }

    #[test]
    fn dirichlet_examples() {
        let d = dir_coalgebra(1, 2).unwrap();
        assert_eq!(
            terms(&d, "z4"),
            vec![t("z1", "z4", rat(1)), t("z2", "z2", rat(1)), t("z4", "z1", rat(1))]
        );
        assert_eq!(d.counit(d.index_of("z1").unwrap()), &rat(1));
        assert_eq!(d.counit(d.index_of("z2").unwrap()), &rat(0));
        let d2 = dir_coalgebra(2, 2).unwrap();
        assert_eq!(d2.labels(), ["z1", "z2", "z3", "z4", "z6", "z9"]);
        assert_eq!(terms(&d2, "z6").len(), 4);
        assert!(dir_coalgebra(0, 2).is_err());
    }

    #[test]
    fn polynomial_examples() {
        let k = polynomial_coalgebra(&["X"], 3);
        assert_eq!(terms(&k, "X^2")[1], t("X", "X", rat(2)));
        assert_eq!(terms(&k, "1"), vec![t("1", "1", rat(1))]);
        let k2 = polynomial_coalgebra(&["X1", "X2"], 2);
        let xy = terms(&k2, "X1X2");
        assert_eq!(xy.len(), 4);
        assert!(xy.iter().all(|(_, _, c)| *c == rat(1)));
    }

    #[test]
    fn incidence_examples() {
        let c = full_incidence_coalgebra(&Poset::chain(2));
        assert_eq!(
            terms(&c, "[0,1]"),
            vec![t("[0,0]", "[0,1]", rat(1)), t("[0,1]", "[1,1]", rat(1))]
        );
        let pt = full_incidence_coalgebra(&Poset::chain(1));
        assert_eq!(terms(&pt, "[0,0]"), vec![t("[0,0]", "[0,0]", rat(1))]);
        assert_eq!(pt.grouplike(), Some(0));
        let dia = full_incidence_coalgebra(&Poset::diamond());
        assert_eq!(terms(&dia, "[0,1]").len(), 4);
        assert_eq!(dia.degree(dia.index_of("[0,1]").unwrap()), 2);
        assert_eq!(dia.grouplike(), None);
    }

    #[test]
    fn dump_format() {
        let dump = div_coalgebra(1).dump();
        assert_eq!(dump, "x0 | 0 | 1 | Δ: x0,x0,1\nx1 | 1 | 0 | Δ: x0,x1,1; x1,x0,1\n");
        let q = binq_coalgebra(2, &ratio(1, 2)).unwrap().dump();
        assert!(q.contains("y1,y1,3/2"));
    }

    /// Dual multiplication on coefficient sequences agrees with the series
    /// product of the matching kind.
    #[test]
    fn duals_multiply_like_series() {
        let n = 6;
        let f: Vec<Rational> = (0..=n).map(|i| rat(2 * i as i64 - 5)).collect();
        let g: Vec<Rational> = (0..=n).map(|i| ratio(i as i64 + 1, 3)).collect();
        let cases = vec![
            (div_coalgebra(n), SeriesKind::Ordinary),
            (bin_coalgebra(n), SeriesKind::Exponential),
            (binq_coalgebra(n, &rat(3)).unwrap(), SeriesKind::Eulerian(rat(3))),
        ];
        for (c, kind) in cases {
            let a = dual_algebra(&c).unwrap();
            let fv: Vec<_> = f.iter().cloned().enumerate().collect();
            let gv: Vec<_> = g.iter().cloned().enumerate().collect();
            let prod = a.mul_vec(&fv, &gv);
            let fs = TruncatedSeries::new(kind.clone(), n, f.clone()).unwrap();
            let gs = TruncatedSeries::new(kind, n, g.clone()).unwrap();
            let expect = fs.convolve(&gs).unwrap();
            for i in 0..=n {
                let got = prod
                    .iter()
                    .find(|(j, _)| *j == i)
                    .map(|(_, c)| c.clone())
                    .unwrap_or_else(Rational::zero);
                assert_eq!(got, expect.coeff(i));
            }
        }
    }

    #[test]
    fn dirichlet_dual_matches_dirichlet_series() {
        // dir(1, d) sees only powers of 2; dir(2, 3) sees n | 2^a 3^b.
        let c = dir_coalgebra(2, 3).unwrap();
        let a = dual_algebra(&c).unwrap();
        let bound = 30;
        let f = |n: usize| rat((n % 7) as i64 - 3);
        let g = |n: usize| ratio(n as i64, 2);
        let fs = TruncatedSeries::from_fn(SeriesKind::Dirichlet, bound, f).unwrap();
        let gs = TruncatedSeries::from_fn(SeriesKind::Dirichlet, bound, g).unwrap();
        let expect = fs.convolve(&gs).unwrap();
        let idx = |i: usize| c.label(i)[1..].parse::<usize>().unwrap();
        let fv: Vec<_> = (0..c.dim()).map(|i| (i, f(idx(i)))).collect();
        let gv: Vec<_> = (0..c.dim()).map(|i| (i, g(idx(i)))).collect();
        for (i, v) in a.mul_vec(&fv, &gv) {
            if idx(i) <= bound {
                assert_eq!(v, expect.coeff(idx(i)));
            }
        }
    }
}
