use std::sync::Arc;

use num_traits::{One, Zero};

use super::algebra::SparseVec;
use super::constructors::{dir_coalgebra, exponent_vectors};
use super::graded::{CoalgebraData, GradedCoalgebra, Term};
use super::morphism::CoalgebraMorphism;
use crate::homology::RationalMatrix;
use crate::{Error, Rational, Result};

/// A surjective coalgebra map `π: C → D`.
#[derive(Clone, Debug)]
pub struct Coextension {
    projection: CoalgebraMorphism,
    splitting: Option<CoalgebraMorphism>,
}

/// The one-dimensional coalgebra `k·p` with `p` grouplike.
pub fn point_coalgebra() -> GradedCoalgebra {
    GradedCoalgebra::new(CoalgebraData {
        name: "point".into(),
        labels: vec!["p".into()],
        degrees: vec![0],
        grades: vec![vec![]],
        comult: vec![vec![(0, 0, Rational::one())]],
        counit: vec![Rational::one()],
        grouplike: Some(0),
        complete_through: None,
        incidence: None,
    })
    .expect("point coalgebra")
}

impl Coextension {
    /// Checks that `π` hits a spanning set of the base.
    pub fn new(projection: CoalgebraMorphism) -> Result<Self> {
        let base = projection.target().dim();
        let columns: Vec<SparseVec> = projection.images().to_vec();
        let m = RationalMatrix::from_columns(base, columns);
        if m.rank() != base {
            return Err(Error::VerificationFailed(format!(
                "{} → {} is not surjective",
                projection.source().name(),
                projection.target().name()
            )));
        }
        Ok(Coextension {
            projection,
            splitting: None,
        })
    }

    /// Attaches a section `s: D → C` with `π ∘ s = id`.
    pub fn with_splitting(mut self, s: CoalgebraMorphism) -> Result<Self> {
        let composite = s.compose(&self.projection)?;
        for i in 0..composite.source().dim() {
            if composite.image(i) != &vec![(i, Rational::one())] {
                return Err(Error::VerificationFailed("π ∘ s is not the identity".into()));
            }
        }
        self.splitting = Some(s);
        Ok(self)
    }

    /// `π = id_C`.
    pub fn identity(c: Arc<GradedCoalgebra>) -> Result<Self> {
        let images = (0..c.dim()).map(|i| vec![(i, Rational::one())]).collect();
        Coextension::new(CoalgebraMorphism::new(c.clone(), c, images)?)
    }

    /// `π(c) = ε(c) p` onto the point coalgebra.
    pub fn to_point(c: Arc<GradedCoalgebra>) -> Result<Self> {
        let images = (0..c.dim())
            .map(|i| {
                if c.counit(i).is_zero() {
                    Vec::new()
                } else {
                    vec![(0, c.counit(i).clone())]
                }
            })
            .collect();
        Coextension::new(CoalgebraMorphism::new(
            c,
            Arc::new(point_coalgebra()),
            images,
        )?)
    }

    pub fn total(&self) -> &Arc<GradedCoalgebra> {
        self.projection.source()
    }

    pub fn base(&self) -> &Arc<GradedCoalgebra> {
        self.projection.target()
    }

    pub fn projection(&self) -> &CoalgebraMorphism {
        &self.projection
    }

    pub fn splitting(&self) -> Option<&CoalgebraMorphism> {
        self.splitting.as_ref()
    }
}

/// `π_m: Dir_(m+1) → Dir_(m)` killing every `z_n` with `p_{m+1} | n`,
/// together with its splitting `Dir_(m) → Dir_(m+1)`.
pub fn dirichlet_coextension(m: usize, d: u32) -> Result<Coextension> {
    let total = Arc::new(dir_coalgebra(m + 1, d)?);
    let base = Arc::new(dir_coalgebra(m, d)?);
    let mut images = vec![Vec::new(); total.dim()];
    let mut section = vec![Vec::new(); base.dim()];
    for e in exponent_vectors(m + 1, d) {
        let n = super::constructors::dirichlet_index(&e);
        let i = total.index_of(&format!("z{n}")).expect("basis");
        if e[m] == 0 {
            let j = base.index_of(&format!("z{n}")).expect("basis");
            images[i] = vec![(j, Rational::one())];
            section[j] = vec![(i, Rational::one())];
        }
    }
    let pi = CoalgebraMorphism::new(total.clone(), base.clone(), images)?;
    let s = CoalgebraMorphism::new(base, total, section)?;
    Coextension::new(pi)?.with_splitting(s)
}

/// The auxiliary coalgebra `Z = C ⊕ D` of a coextension `π: C → D`:
/// `Δ(y) = Δ_D(y)`,
/// `Δ(x) = x₁⊗x₂ + π(x₁)⊗x₂ + x₁⊗π(x₂)`, `ε(x + y) = ε(y)`.
/// Basis: the `C` basis (prefixed `c:`) followed by the `D` basis (`d:`).
pub fn auxiliary_z(e: &Coextension) -> Result<GradedCoalgebra> {
    let c = e.total();
    let d = e.base();
    let off = c.dim();
    let pi = e.projection();
    let mut comult: Vec<Vec<Term>> = Vec::new();
    for x in 0..c.dim() {
        let mut terms = Vec::new();
        for (l, r, k) in c.comult(x) {
            terms.push((*l, *r, k.clone()));
            for (j, a) in pi.image(*l) {
                terms.push((off + j, *r, k * a));
            }
            for (j, a) in pi.image(*r) {
                terms.push((*l, off + j, k * a));
            }
        }
        comult.push(terms);
    }
    for y in 0..d.dim() {
        comult.push(
            d.comult(y)
                .iter()
                .map(|(l, r, k)| (off + l, off + r, k.clone()))
                .collect(),
        );
    }
    let width = (0..c.dim())
        .map(|i| c.grade(i).len())
        .chain((0..d.dim()).map(|j| d.grade(j).len()))
        .max()
        .unwrap_or(0);
    let pad = |g: &[i64]| {
        let mut v = g.to_vec();
        v.resize(width, 0);
        v
    };
    let complete_through = match (c.complete_through(), d.complete_through()) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    };
    GradedCoalgebra::new(CoalgebraData {
        name: format!("Z({} → {})", c.name(), d.name()),
        labels: c
            .labels()
            .iter()
            .map(|l| format!("c:{l}"))
            .chain(d.labels().iter().map(|l| format!("d:{l}")))
            .collect(),
        degrees: (0..c.dim())
            .map(|i| c.degree(i))
            .chain((0..d.dim()).map(|j| d.degree(j)))
            .collect(),
        grades: (0..c.dim())
            .map(|i| pad(c.grade(i)))
            .chain((0..d.dim()).map(|j| pad(d.grade(j))))
            .collect(),
        comult,
        counit: std::iter::repeat(Rational::zero())
            .take(off)
            .chain((0..d.dim()).map(|j| d.counit(j).clone()))
            .collect(),
        grouplike: None,
        complete_through,
        incidence: None,
    })
}
