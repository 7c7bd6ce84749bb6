//! Executable comparisons behind the named results: each check computes two
//! quantities along separate code paths and reports whether they agree.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::coalgebra::{
    auxiliary_z, bin_coalgebra, binq_coalgebra, dir_coalgebra, dirichlet_coextension, div_coalgebra,
    dual_algebra, full_incidence_coalgebra, Coextension, FDAlgebra, GradedCoalgebra, SparseVec,
};
use crate::combinat::{Poset, Quiver, SimplicialComplex};
use crate::homology::{
    ext_dims, hochschild_dims, hochschild_reduced, simplicial_cohomology, Bimodule, CobarComplex, Comodule,
    Reduction, Side, RationalMatrix,
};
use crate::{rat, Budget, Error, Rational, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// One compared pair of dimension lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Case {
    pub label: String,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

/// A yes/no property checked alongside the dimension comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Condition {
    pub name: String,
    pub holds: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub params: BTreeMap<String, String>,
    pub left_label: String,
    pub right_label: String,
    pub cases: Vec<Case>,
    #[serde(default)]
    pub conditions: Vec<Condition>,
    pub verdict: Verdict,
    pub elapsed_ms: u64,
}

impl CheckReport {
    fn new(check: &str, left_label: &str, right_label: &str) -> Self {
        CheckReport {
            check: check.into(),
            params: BTreeMap::new(),
            left_label: left_label.into(),
            right_label: right_label.into(),
            cases: Vec::new(),
            conditions: Vec::new(),
            verdict: Verdict::Fail,
            elapsed_ms: 0,
        }
    }

    fn param(mut self, k: &str, v: impl ToString) -> Self {
        self.params.insert(k.into(), v.to_string());
        self
    }

    fn case(&mut self, label: impl Into<String>, left: Vec<usize>, right: Vec<usize>) {
        self.cases.push(Case {
            label: label.into(),
            left,
            right,
        });
    }

    fn condition(&mut self, name: impl Into<String>, holds: bool, detail: impl Into<String>) {
        self.conditions.push(Condition {
            name: name.into(),
            holds,
            detail: detail.into(),
        });
    }

    fn finish(mut self, start: Instant) -> Self {
        let ok = self.cases.iter().all(|c| c.left == c.right) && self.conditions.iter().all(|c| c.holds);
        self.verdict = if ok { Verdict::Pass } else { Verdict::Fail };
        self.elapsed_ms = start.elapsed().as_millis() as u64;
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// Summed left dims over all cases.
    pub fn left(&self) -> Vec<usize> {
        sum_dims(self.cases.iter().map(|c| &c.left))
    }

    pub fn right(&self) -> Vec<usize> {
        sum_dims(self.cases.iter().map(|c| &c.right))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn from_json(line: &str) -> Result<Self> {
        serde_json::from_str(line).map_err(|e| Error::Parse {
            line: 0,
            message: e.to_string(),
        })
    }
}

fn sum_dims<'a>(lists: impl Iterator<Item = &'a Vec<usize>>) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::new();
    for l in lists {
        if out.len() < l.len() {
            out.resize(l.len(), 0);
        }
        for (o, d) in out.iter_mut().zip(l) {
            *o += d;
        }
    }
    out
}

fn trivial_cobar(c: &GradedCoalgebra, n_max: usize, cap: Option<u32>) -> Result<CobarComplex> {
    let v = Comodule::trivial(c, Side::Right)?;
    let w = Comodule::trivial(c, Side::Left)?;
    CobarComplex::new(c, &v, &w, n_max, cap, Reduction::Auto, Budget::from_env())
}

/// Cotor over div(N), bin(N) and binq(N, 2) against `[1, 1, 0, …]`.
pub fn check_thm_exp(n: usize, n_max: usize) -> Result<CheckReport> {
    if n < n_max + 1 {
        return Err(Error::Index(format!("truncation {n} too small for n_max {n_max}")));
    }
    let start = Instant::now();
    let mut r = CheckReport::new("thm_exp", "div", "bin / binq / k,k,0 pattern")
        .param("N", n)
        .param("n_max", n_max);
    let div = trivial_cobar(&div_coalgebra(n), n_max, None)?.cohomology_dims()?;
    let bin = trivial_cobar(&bin_coalgebra(n), n_max, None)?.cohomology_dims()?;
    let binq = trivial_cobar(&binq_coalgebra(n, &rat(2))?, n_max, None)?.cohomology_dims()?;
    let pattern: Vec<usize> = (0..=n_max).map(|i| usize::from(i <= 1)).collect();
    r.case("div vs bin", div.clone(), bin);
    r.case("div vs binq(q=2)", div.clone(), binq);
    r.case("div vs k,k,0,…", div, pattern);
    Ok(r.finish(start))
}

/// Cotor over dir(m, D) against binomial(m, n), plus exterior relations
/// among the degree-one classes under cup.
pub fn check_fundamental3(m: usize, d: u32, n_max: usize) -> Result<CheckReport> {
    if (d as usize) < n_max {
        return Err(Error::Index(format!("truncation {d} too small for n_max {n_max}")));
    }
    let start = Instant::now();
    let mut r = CheckReport::new("fundamental3", "cobar ranks over dir", "binomial(m, n)")
        .param("m", m)
        .param("D", d)
        .param("n_max", n_max);
    let c = dir_coalgebra(m, d)?;
    let cx = trivial_cobar(&c, n_max, None)?;
    let dims = cx.cohomology_dims()?;
    let expect: Vec<usize> = (0..=n_max).map(|n| choose(m, n)).collect();
    r.case(format!("dir({m},{d})"), dims, expect);
    if n_max >= 1 {
        let u = cx.representatives(1)?;
        r.condition("degree-one classes", u.len() == m, format!("{} found", u.len()));
        let mut anti = true;
        let mut squares = true;
        for i in 0..u.len() {
            for j in i..u.len() {
                let a = cx.cup(&u[i], &u[j])?;
                if i == j {
                    squares &= cx.is_coboundary(2, &a.coeffs)?;
                } else {
                    let b = cx.cup(&u[j], &u[i])?;
                    let mut sum = a.coeffs.clone();
                    for (t, k) in b.coeffs {
                        crate::sparse::add_term(&mut sum, t, k);
                    }
                    anti &= cx.is_coboundary(2, &sum)?;
                }
            }
        }
        r.condition("u_i ∪ u_j + u_j ∪ u_i is a coboundary", anti, "");
        r.condition("u_i ∪ u_i is a coboundary", squares, "");
    }
    Ok(r.finish(start))
}

fn choose(m: usize, n: usize) -> usize {
    if n > m {
        return 0;
    }
    (0..n).fold(1, |acc, i| acc * (m - i) / (i + 1))
}

/// Pairs of comodules to compare: vertex comodules for incidence
/// coalgebras, the trivial ones otherwise.
fn comodule_pairs(c: &GradedCoalgebra) -> Result<Vec<(String, Comodule, Comodule)>> {
    match c.incidence() {
        Some(form) => {
            let n = form.poset.len();
            let mut out = Vec::new();
            for x in 0..n {
                for y in 0..n {
                    out.push((
                        format!("k_{} , {}_k", form.poset.label(x), form.poset.label(y)),
                        Comodule::vertex(c, Side::Right, x)?,
                        Comodule::vertex(c, Side::Left, y)?,
                    ));
                }
            }
            Ok(out)
        }
        None => Ok(vec![(
            "k , k".into(),
            Comodule::trivial(c, Side::Right)?,
            Comodule::trivial(c, Side::Left)?,
        )]),
    }
}

/// Cotor over the total coalgebra of `e` against Cotor over its auxiliary
/// coalgebra with the comodules carried across.
pub fn check_z_lemma(e: &Coextension, n_max: usize, degree_cap: Option<u32>) -> Result<CheckReport> {
    let start = Instant::now();
    let c = e.total();
    let z = auxiliary_z(e)?;
    let mut r = CheckReport::new("z_lemma", "Cotor over C", "Cotor over Z")
        .param("C", c.name())
        .param("D", e.base().name())
        .param("n_max", n_max)
        .param("degree_cap", degree_cap.map_or("none".to_string(), |d| d.to_string()));
    let budget = Budget::from_env();
    for (label, v, w) in comodule_pairs(c)? {
        let left = CobarComplex::new(c, &v, &w, n_max, degree_cap, Reduction::Auto, budget)?.cohomology_dims()?;
        let (vz, wz) = (v.extend_to_aux(e, &z)?, w.extend_to_aux(e, &z)?);
        let right = CobarComplex::new(&z, &vz, &wz, n_max, degree_cap, Reduction::Auto, budget)?.cohomology_dims()?;
        r.case(label, left, right);
    }
    Ok(r.finish(start))
}

/// Cotor over the full incidence coalgebra of `p` against Hochschild
/// cohomology of the dual algebra with the matching one-dimensional
/// coefficients, for every pair of vertices.
pub fn check_duality(p: &Poset, n_max: usize) -> Result<CheckReport> {
    let start = Instant::now();
    let mut r = CheckReport::new("duality", "Cotor over C(P)", "HH of C(P)*")
        .param("poset", format!("{p:?}"))
        .param("n_max", n_max);
    let c = full_incidence_coalgebra(p).as_finite();
    let a = Arc::new(dual_algebra(&c)?);
    let budget = Budget::from_env();
    let form = c.incidence().expect("incidence coalgebra").clone();
    for x in 0..p.len() {
        for y in 0..p.len() {
            let v = Comodule::vertex(&c, Side::Right, x)?;
            let w = Comodule::vertex(&c, Side::Left, y)?;
            let left = CobarComplex::new(&c, &v, &w, n_max, None, Reduction::Unreduced, budget)?.cohomology_dims()?;
            let (gx, gy) = (form.index_of(x, x).unwrap(), form.index_of(y, y).unwrap());
            let k = Bimodule::from_grouplikes(a.clone(), gx, gy)?;
            let right = hochschild_dims(&k, n_max, budget)?;
            r.case(format!("{} , {}", p.label(x), p.label(y)), left, right);
        }
    }
    Ok(r.finish(start))
}

/// HH(A, A) of the incidence algebra against the cohomology of the order
/// complex.
pub fn check_gs(p: &Poset, n_max: usize) -> Result<CheckReport> {
    let start = Instant::now();
    let mut r = CheckReport::new("gs", "HH(A,A) reduced", "H(order complex)")
        .param("poset", format!("{p:?}"))
        .param("n_max", n_max);
    let a = Arc::new(FDAlgebra::incidence(p)?);
    let left = hochschild_reduced(&Bimodule::regular(a)?, n_max)?.cohomology_dims(n_max)?;
    let right = simplicial_cohomology(&SimplicialComplex::order_complex(p), n_max)?;
    r.case("HH^n vs H^n", left, right);
    Ok(r.finish(start))
}

/// `dim HH^n(A, A) = dim Ext^{n+2}_Ā(k_a, k_b)` for `1 ≤ n ≤ n_max`, the
/// left side from the full Hochschild complex, the right from chains of
/// the suspension. Degree zero is recorded in the parameters only.
pub fn check_suspension(q: &Quiver, n_max: usize) -> Result<CheckReport> {
    let start = Instant::now();
    let p = q.to_poset()?;
    let s = q.suspend()?;
    let (la, lb) = q.suspension_labels();
    let a = Arc::new(FDAlgebra::incidence(&p)?);
    let abar = Arc::new(FDAlgebra::incidence(&s.to_poset()?)?);
    let hh = hochschild_dims(&Bimodule::regular(a)?, n_max, Budget::from_env())?;
    let ext = ext_dims(&abar, &la, &lb, n_max + 2)?;
    let mut r = CheckReport::new("suspension", "HH^n(A,A)", "Ext^{n+2}(k_a, k_b)")
        .param("quiver", format!("{:?}", q.vertices()))
        .param("n_max", n_max)
        .param("degree 0", format!("HH^0 = {}, Ext^2 = {}", hh[0], ext[2]));
    r.case("n = 1..n_max", hh[1..].to_vec(), ext[3..].to_vec());
    Ok(r.finish(start))
}

/// The bimodule `ₐV ⊗ V_b` of a quiver `Q` over `A = I(P)`, basis
/// `[a,x] ⊗ [y,b]` for `x, y ∈ P`, with `e_{uv}·[a,x] = δ_{vx} [a,u]` and
/// `[y,b]·e_{uv} = δ_{uy} [v,b]`.
pub fn tensor_paths_bimodule(q: &Quiver) -> Result<(Arc<FDAlgebra>, Bimodule)> {
    let p = q.to_poset()?;
    let (la, lb) = q.suspension_labels();
    let a = Arc::new(FDAlgebra::incidence(&p)?);
    let form = a.incidence_form().unwrap().clone();
    let n = p.len();
    let idx = |x: usize, y: usize| x * n + y;
    let labels = (0..n * n)
        .map(|i| format!("[{la},{}]⊗[{},{lb}]", p.label(i / n), p.label(i % n)))
        .collect();
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (s, &(u, v)) in form.pairs.iter().enumerate() {
        for y in 0..n {
            left.push(((s, idx(v, y)), vec![(idx(u, y), Rational::one())]));
        }
        for x in 0..n {
            right.push(((idx(x, u), s), vec![(idx(x, v), Rational::one())]));
        }
    }
    let m = Bimodule::new(a.clone(), "aV⊗Vb", labels, left, right)?;
    Ok((a, m))
}

/// `η([a,x] ⊗ [y,b]) = e_{xy}` when `x ≤ y`, zero otherwise.
pub fn eta_map(a: &FDAlgebra, m: &Bimodule) -> Vec<SparseVec> {
    let form = a.incidence_form().unwrap();
    let n = form.poset.len();
    (0..m.dim())
        .map(|i| match form.index_of(i / n, i % n) {
            Some(e) => vec![(e, Rational::one())],
            None => Vec::new(),
        })
        .collect()
}

/// The short exact sequence argument for the suspension: η as a map of
/// bimodules onto `A` with one-dimensional kernel, vanishing of
/// `HH^m(A, ₐk_b)`, and the resulting `HH^m(A, ₐV⊗V_b) = HH^m(A, A)`.
pub fn check_eta_sequence(q: &Quiver, n_max: usize) -> Result<CheckReport> {
    let start = Instant::now();
    let (a, m) = tensor_paths_bimodule(q)?;
    let eta = eta_map(&a, &m);
    let apply = |v: &[(usize, Rational)]| -> SparseVec {
        let mut out = BTreeMap::new();
        for (i, c) in v {
            for (j, d) in &eta[*i] {
                crate::sparse::add_term(&mut out, *j, c * d);
            }
        }
        out.into_iter().collect()
    };
    let mut left_ok = true;
    let mut right_ok = true;
    let mut witness = String::new();
    let mut left_witness = String::new();
    for s in 0..a.dim() {
        let t = vec![(s, Rational::one())];
        for i in 0..m.dim() {
            let b = vec![(i, Rational::one())];
            if apply(&m.act_left(&t, &b)) != a.mul_vec(&t, &eta[i]) {
                if left_ok {
                    left_witness = format!("η({}·({})) ≠ {}·η({})", a.labels()[s], m.labels()[i], a.labels()[s], m.labels()[i]);
                }
                left_ok = false;
            }
            if apply(&m.act_right(&b, &t)) != a.mul_vec(&eta[i], &t) {
                if right_ok {
                    witness = format!("η(({})·{}) ≠ η({})·{}", m.labels()[i], a.labels()[s], m.labels()[i], a.labels()[s]);
                }
                right_ok = false;
            }
        }
    }
    let rank = RationalMatrix::from_columns(a.dim(), eta.clone()).rank();
    let kernel = m.dim() - rank;
    let mut r = CheckReport::new("eta_sequence", "HH^m(A, aV⊗Vb)", "HH^m(A, A)")
        .param("quiver", format!("{:?}", q.vertices()))
        .param("n_max", n_max)
        .param("dim aV⊗Vb", m.dim())
        .param("dim A", a.dim());
    r.condition("η(t·m) = t·η(m)", left_ok, left_witness);
    r.condition("η(m·t) = η(m)·t", right_ok, witness);
    r.condition("η is surjective", rank == a.dim(), format!("rank {rank}"));
    r.condition("ker η is one-dimensional", kernel == 1, format!("dim ker η = {kernel}"));
    let zero = Bimodule::zero_action(a.clone())?;
    let hk = hochschild_dims(&zero, n_max, Budget::from_env())?;
    r.condition(
        "HH^m(A, ₐk_b) = 0 for m ≥ 1",
        hk[1..].iter().all(|d| *d == 0),
        format!("{hk:?}"),
    );
    let hm = hochschild_reduced(&m, n_max)?.cohomology_dims(n_max)?;
    let ha = hochschild_dims(&Bimodule::regular(a)?, n_max, Budget::from_env())?;
    r.case("m = 1..n_max", hm[1..].to_vec(), ha[1..].to_vec());
    Ok(r.finish(start))
}

/// Posets used by the corpus run.
pub fn poset_corpus() -> Vec<(String, Poset)> {
    vec![
        ("point".into(), Poset::chain(1)),
        ("chain(2)".into(), Poset::chain(2)),
        ("chain(3)".into(), Poset::chain(3)),
        ("chain(4)".into(), Poset::chain(4)),
        ("antichain(2)".into(), Poset::antichain(2)),
        ("antichain(3)".into(), Poset::antichain(3)),
        ("diamond".into(), Poset::diamond()),
        ("crown".into(), Poset::crown()),
        ("B(3)".into(), Poset::boolean_lattice(3)),
        ("fence(4)".into(), Poset::fence(4)),
        ("fence(5)".into(), Poset::fence(5)),
        ("chain(2)+chain(3)".into(), Poset::chain(2).disjoint_union(&Poset::chain(3))),
    ]
}

pub fn quiver_corpus() -> Vec<(String, Quiver)> {
    vec![
        ("point".into(), Quiver::point()),
        ("single arrow".into(), Quiver::single_arrow()),
        ("3-chain".into(), Quiver::three_chain()),
        ("crown".into(), Quiver::crown()),
    ]
}

/// Every check over the corpus with the standard parameters.
pub fn run_corpus() -> Result<Vec<CheckReport>> {
    let mut out = vec![check_thm_exp(8, 4)?];
    for m in 1..=3 {
        out.push(check_fundamental3(m, 5, 4)?);
    }
    out.push(check_z_lemma(&dirichlet_coextension(1, 4)?, 3, None)?);
    out.push(check_z_lemma(
        &Coextension::to_point(Arc::new(full_incidence_coalgebra(&Poset::chain(2)).as_finite()))?,
        3,
        None,
    )?);
    for p in [Poset::chain(2), Poset::chain(3), Poset::diamond()] {
        out.push(check_duality(&p, 3)?);
    }
    for (_, p) in poset_corpus() {
        out.push(check_gs(&p, 3)?);
    }
    for (_, q) in quiver_corpus() {
        out.push(check_suspension(&q, 2)?);
    }
    out.push(check_eta_sequence(&Quiver::crown(), 2)?);
    Ok(out)
}

/// `ζ ∗ μ = δ` in the full incidence algebra, by explicit convolution.
pub fn zeta_mobius_is_delta(p: &Poset) -> Result<bool> {
    use crate::series::IncidenceFunction;
    let p = Arc::new(p.clone());
    let z = IncidenceFunction::zeta(p.clone());
    let mu = IncidenceFunction::mobius(p.clone());
    let prod = z.convolve(&mu)?;
    Ok((0..p.len()).all(|x| {
        (0..p.len()).all(|y| {
            let want = if x == y { Rational::one() } else { Rational::zero() };
            !p.leq(x, y) || prod.get(x, y) == want
        })
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_reports_pass() {
        assert_eq!(check_thm_exp(1, 0).unwrap().cases[0].left, vec![1]);
        assert!(check_fundamental3(1, 3, 3).unwrap().passed());
        assert!(check_gs(&Poset::crown(), 2).unwrap().passed());
        assert_eq!(check_duality(&Poset::chain(1), 2).unwrap().cases[0].left, vec![1, 0, 0]);
        assert!(check_duality(&Poset::chain(2), 2).unwrap().passed());
        assert!(check_suspension(&Quiver::point(), 2).unwrap().passed());
    }

    #[test]
    fn z_lemma_with_identity() {
        let c = Arc::new(div_coalgebra(4));
        let r = check_z_lemma(&Coextension::identity(c).unwrap(), 2, None).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn report_round_trip() {
        let r = check_gs(&Poset::chain(2), 1).unwrap();
        assert_eq!(CheckReport::from_json(&r.to_json()).unwrap(), r);
    }

    #[test]
    fn crown_eta_is_not_a_bimodule_surjection_with_line_kernel() {
        let r = check_eta_sequence(&Quiver::crown(), 1).unwrap();
        println!("{}", r.to_json());
        let get = |n: &str| r.conditions.iter().find(|c| c.name.starts_with(n)).unwrap().holds;
        assert!(!get("η(t·m)"));
        assert!(!get("η(m·t)"));
        assert!(get("η is surjective"));
        assert!(!get("ker η"));
        assert!(get("HH^m(A, ₐk_b)"));
    }
}
