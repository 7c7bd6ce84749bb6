use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::Arc;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::combinat::Poset;
use crate::sparse::add_term;
use crate::{Error, Rational, Result};

/// A term `c · l ⊗ r` of a comultiplication.
pub type Term = (usize, usize, Rational);

/// Interval bookkeeping for (co)algebras built from a poset: basis element
/// `i` is the interval (or incidence basis element) `pairs[i]`.
#[derive(Clone, Debug)]
pub struct IncidenceForm {
    pub poset: Arc<Poset>,
    pub pairs: Vec<(usize, usize)>,
}

impl IncidenceForm {
    pub fn new(poset: Arc<Poset>, pairs: Vec<(usize, usize)>) -> Self {
        IncidenceForm { poset, pairs }
    }

    pub fn index_of(&self, x: usize, y: usize) -> Option<usize> {
        self.pairs.iter().position(|&p| p == (x, y))
    }
}

/// Raw tables handed to [`GradedCoalgebra::new`].
#[derive(Clone, Debug, Default)]
pub struct CoalgebraData {
    pub name: String,
    pub labels: Vec<String>,
    pub degrees: Vec<u32>,
    /// Multidegrees; Δ must be additive in them.
    pub grades: Vec<Vec<i64>>,
    pub comult: Vec<Vec<Term>>,
    pub counit: Vec<Rational>,
    pub grouplike: Option<usize>,
    /// Truncation degree: the coalgebra is the degree-≤N part of an infinite
    /// one, so invariants are only meaningful through internal degree N.
    pub complete_through: Option<u32>,
    pub incidence: Option<IncidenceForm>,
}

/// A coalgebra with a finite basis, sparse comultiplication and a
/// multigrading preserved by Δ.
#[derive(Clone, Debug)]
pub struct GradedCoalgebra {
    name: String,
    labels: Vec<String>,
    index: HashMap<String, usize>,
    degrees: Vec<u32>,
    grades: Vec<Vec<i64>>,
    comult: Vec<Vec<Term>>,
    counit: Vec<Rational>,
    grouplike: Option<usize>,
    complete_through: Option<u32>,
    degree_homogeneous: bool,
    incidence: Option<IncidenceForm>,
}

fn normalize_terms(terms: Vec<Term>) -> Vec<Term> {
    let mut map = BTreeMap::new();
    for (l, r, c) in terms {
        add_term(&mut map, (l, r), c);
    }
    map.into_iter().map(|((l, r), c)| (l, r, c)).collect()
}

pub(crate) fn add_grades(a: &[i64], b: &[i64]) -> Vec<i64> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0))
        .collect()
}

pub(crate) fn same_grade(a: &[i64], b: &[i64]) -> bool {
    let n = a.len().max(b.len());
    (0..n).all(|i| a.get(i).copied().unwrap_or(0) == b.get(i).copied().unwrap_or(0))
}

impl GradedCoalgebra {
    /// Builds and verifies: coassociativity, both counit laws, additivity
    /// of the multigrading, and the grouplike axioms.
    pub fn new(data: CoalgebraData) -> Result<Self> {
        let n = data.labels.len();
        if data.degrees.len() != n
            || data.grades.len() != n
            || data.comult.len() != n
            || data.counit.len() != n
        {
            return Err(Error::Shape(format!(
                "coalgebra {:?}: table lengths disagree with {n} labels",
                data.name
            )));
        }
        let mut index = HashMap::new();
        for (i, l) in data.labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        for terms in &data.comult {
            if terms.iter().any(|&(l, r, _)| l >= n || r >= n) {
                return Err(Error::Shape("comultiplication refers past the basis".into()));
            }
        }
        if let Some(g) = data.grouplike {
            if g >= n {
                return Err(Error::Shape("grouplike index past the basis".into()));
            }
        }
        let comult: Vec<Vec<Term>> = data.comult.into_iter().map(normalize_terms).collect();
        let degree_homogeneous = comult.iter().enumerate().all(|(b, terms)| {
            terms
                .iter()
                .all(|&(l, r, _)| data.degrees[l] + data.degrees[r] == data.degrees[b])
        });
        let c = GradedCoalgebra {
            name: data.name,
            labels: data.labels,
            index,
            degrees: data.degrees,
            grades: data.grades,
            comult,
            counit: data.counit,
            grouplike: data.grouplike,
            complete_through: data.complete_through,
            degree_homogeneous,
            incidence: data.incidence,
        };
        c.verify()?;
        Ok(c)
    }

    /// Exhaustive check of the coalgebra axioms over the basis.
    pub fn verify(&self) -> Result<()> {
        let failure = (0..self.dim())
            .into_par_iter()
            .find_map_any(|b| self.verify_element(b).err());
        if let Some(msg) = failure {
            return Err(Error::VerificationFailed(format!("{}: {msg}", self.name)));
        }
        if let Some(g) = self.grouplike {
            let expect = vec![(g, g, Rational::one())];
            if self.comult[g] != expect || !self.counit[g].is_one() {
                return Err(Error::VerificationFailed(format!(
                    "{}: {} is not grouplike",
                    self.name, self.labels[g]
                )));
            }
        }
        Ok(())
    }

    fn verify_element(&self, b: usize) -> std::result::Result<(), String> {
        let label = &self.labels[b];
        for &(l, r, _) in &self.comult[b] {
            if !same_grade(&add_grades(&self.grades[l], &self.grades[r]), &self.grades[b]) {
                return Err(format!("Δ({label}) is not homogeneous"));
            }
        }
        let mut lhs = BTreeMap::new();
        let mut rhs = BTreeMap::new();
        let mut left_counit = BTreeMap::new();
        let mut right_counit = BTreeMap::new();
        for (l, r, c) in &self.comult[b] {
            for (l1, l2, c1) in &self.comult[*l] {
                add_term(&mut lhs, (*l1, *l2, *r), c * c1);
            }
            for (r1, r2, c2) in &self.comult[*r] {
                add_term(&mut rhs, (*l, *r1, *r2), c * c2);
            }
            add_term(&mut left_counit, *r, c * &self.counit[*l]);
            add_term(&mut right_counit, *l, c * &self.counit[*r]);
        }
        if lhs != rhs {
            return Err(format!("Δ is not coassociative on {label}"));
        }
        let unit: BTreeMap<usize, Rational> = [(b, Rational::one())].into_iter().collect();
        if left_counit != unit || right_counit != unit {
            return Err(format!("counit law fails on {label}"));
        }
        Ok(())
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

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.degrees[i]
    }

    pub fn grade(&self, i: usize) -> &[i64] {
        &self.grades[i]
    }

    pub fn comult(&self, i: usize) -> &[Term] {
        &self.comult[i]
    }

    pub fn counit(&self, i: usize) -> &Rational {
        &self.counit[i]
    }

    pub fn grouplike(&self) -> Option<usize> {
        self.grouplike
    }

    pub fn complete_through(&self) -> Option<u32> {
        self.complete_through
    }

    /// Whether Δ preserves the total internal degree.
    pub fn degree_homogeneous(&self) -> bool {
        self.degree_homogeneous
    }

    pub fn incidence(&self) -> Option<&IncidenceForm> {
        self.incidence.as_ref()
    }

    /// The same tables, regarded as a finite-dimensional coalgebra in its
    /// own right rather than a truncation.
    pub fn as_finite(&self) -> GradedCoalgebra {
        let mut c = self.clone();
        c.complete_through = None;
        c
    }

    /// Kernel of ε is spanned by the basis minus the grouplike.
    pub fn counit_is_coaugmentation(&self) -> bool {
        match self.grouplike {
            Some(g) => (0..self.dim()).all(|i| i == g || self.counit[i].is_zero()),
            None => false,
        }
    }

    /// Reduced comultiplication of a basis element: Δ with every term
    /// involving the grouplike removed.
    pub fn reduced_comult(&self, i: usize) -> Result<Vec<Term>> {
        let g = self.grouplike.ok_or(Error::NoGrouplike)?;
        Ok(self.comult[i]
            .iter()
            .filter(|(l, r, _)| *l != g && *r != g)
            .cloned()
            .collect())
    }

    /// One line per basis element: `label | degree | eps | Δ: l,r,c; ...`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for i in 0..self.dim() {
            let terms: Vec<String> = self.comult[i]
                .iter()
                .map(|(l, r, c)| format!("{},{},{}", self.labels[*l], self.labels[*r], c))
                .collect();
            let _ = writeln!(
                out,
                "{} | {} | {} | Δ: {}",
                self.labels[i],
                self.degrees[i],
                self.counit[i],
                terms.join("; ")
            );
        }
        out
    }

    /// Expands `Δ` on a linear combination.
    pub fn comult_of(&self, v: &[(usize, Rational)]) -> BTreeMap<(usize, usize), Rational> {
        let mut out = BTreeMap::new();
        for (i, c) in v {
            for (l, r, d) in &self.comult[*i] {
                add_term(&mut out, (*l, *r), c * d);
            }
        }
        out
    }

    pub fn counit_of(&self, v: &[(usize, Rational)]) -> Rational {
        v.iter()
            .fold(Rational::zero(), |acc, (i, c)| acc + c * &self.counit[*i])
    }
}

impl PartialEq for GradedCoalgebra {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels
            && self.degrees == other.degrees
            && self.comult == other.comult
            && self.counit == other.counit
            && self.grouplike == other.grouplike
    }
}
