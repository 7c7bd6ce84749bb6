use std::collections::{HashMap, HashSet};

use super::poset::Poset;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A finite directed graph. Vertices and arrows keep declaration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    /// Arrows are `(name, source, target)` label triples.
    pub fn new<S: AsRef<str>>(vertices: &[S], arrows: &[(S, S, S)]) -> Result<Quiver> {
        let mut index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.as_ref().to_string(), i).is_some() {
                return Err(Error::DuplicateLabel(v.as_ref().to_string()));
            }
        }
        let mut names = HashSet::new();
        let mut out = Vec::with_capacity(arrows.len());
        for (name, s, t) in arrows {
            if !names.insert(name.as_ref().to_string()) {
                return Err(Error::DuplicateLabel(name.as_ref().to_string()));
            }
            let look = |x: &S| {
                index
                    .get(x.as_ref())
                    .copied()
                    .ok_or_else(|| Error::UnknownLabel(x.as_ref().to_string()))
            };
            out.push(Arrow {
                name: name.as_ref().to_string(),
                source: look(s)?,
                target: look(t)?,
            });
        }
        Ok(Quiver {
            vertices: vertices.iter().map(|v| v.as_ref().to_string()).collect(),
            arrows: out,
        })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    /// Vertices with no incoming arrow.
    pub fn sources(&self) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&v| !self.arrows.iter().any(|a| a.target == v))
            .collect()
    }

    /// Vertices with no outgoing arrow.
    pub fn sinks(&self) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&v| !self.arrows.iter().any(|a| a.source == v))
            .collect()
    }

    /// `reach[x][y]` is true when an oriented path of length ≥ 0 runs from
    /// `x` to `y`. `None` when the quiver has an oriented cycle.
    fn reachability(&self) -> Option<Vec<Vec<bool>>> {
        let n = self.vertices.len();
        let mut reach = vec![vec![false; n]; n];
        for (i, row) in reach.iter_mut().enumerate() {
            row[i] = true;
        }
        for a in &self.arrows {
            if a.source == a.target {
                return None;
            }
            reach[a.source][a.target] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if reach[i][k] {
                    for j in 0..n {
                        if reach[k][j] {
                            reach[i][j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if reach[i][j] && reach[j][i] {
                    return None;
                }
            }
        }
        Some(reach)
    }

    fn ordered_violation(&self) -> Option<String> {
        let reach = match self.reachability() {
            Some(r) => r,
            None => return Some("oriented cycle".into()),
        };
        for a in &self.arrows {
            let parallel = self
                .arrows
                .iter()
                .any(|b| b.name != a.name && b.source == a.source && b.target == a.target);
            // Another x-to-y path exists iff some other arrow out of x
            // reaches y.
            let detour = self.arrows.iter().any(|b| {
                b.name != a.name && b.source == a.source && b.target != a.target && reach[b.target][a.target]
            });
            if parallel || detour {
                return Some(format!("arrow {} is not the only path between its ends", a.name));
            }
        }
        None
    }

    /// Acyclic, and each arrow is the only oriented path between its ends.
    pub fn is_ordered(&self) -> bool {
        self.ordered_violation().is_none()
    }

    fn require_ordered(&self) -> Result<Vec<Vec<bool>>> {
        if let Some(why) = self.ordered_violation() {
            return Err(Error::NotOrderedQuiver(why));
        }
        Ok(self.reachability().expect("ordered quivers are acyclic"))
    }

    /// The poset on the vertices with `x ≥ y` iff an oriented path runs from
    /// `x` to `y`.
    pub fn to_poset(&self) -> Result<Poset> {
        self.require_ordered()?;
        let pairs: Vec<(usize, usize)> = self.arrows.iter().map(|a| (a.target, a.source)).collect();
        Poset::from_pairs(self.vertices.clone(), &pairs)
    }

    /// The Hasse diagram of `p` as a quiver, arrows pointing downwards.
    pub fn from_hasse(p: &Poset) -> Quiver {
        let arrows = p
            .covers()
            .iter()
            .enumerate()
            .map(|(i, &(lo, hi))| Arrow {
                name: format!("h{i}"),
                source: hi,
                target: lo,
            })
            .collect();
        Quiver {
            vertices: p.labels().to_vec(),
            arrows,
        }
    }

    /// Adjoins `a` and `b` with an arrow `b → s` per source `s` and `t → a`
    /// per sink `t`. The two new vertices are appended, `a` then `b`; their
    /// labels are `a` and `b` unless those are taken, in which case primes
    /// are added. An isolated vertex is both a source and a sink and gets
    /// both arrows.
    pub fn suspend(&self) -> Result<Quiver> {
        self.require_ordered()?;
        let (a_label, b_label) = self.suspension_labels();
        let n = self.vertices.len();
        let (a, b) = (n, n + 1);
        let mut vertices = self.vertices.clone();
        vertices.push(a_label.clone());
        vertices.push(b_label.clone());
        let mut names: HashSet<String> = self.arrows.iter().map(|x| x.name.clone()).collect();
        let mut fresh = |base: String| {
            let mut name = base;
            while names.contains(&name) {
                name.push('\'');
            }
            names.insert(name.clone());
            name
        };
        let mut arrows = self.arrows.clone();
        for s in self.sources() {
            arrows.push(Arrow {
                name: fresh(format!("{}_{}", b_label, self.vertices[s])),
                source: b,
                target: s,
            });
        }
        for t in self.sinks() {
            arrows.push(Arrow {
                name: fresh(format!("{}_{}", self.vertices[t], a_label)),
                source: t,
                target: a,
            });
        }
        let q = Quiver { vertices, arrows };
        if let Some(why) = q.ordered_violation() {
            return Err(Error::VerificationFailed(format!(
                "suspension is not ordered: {why}"
            )));
        }
        Ok(q)
    }

    /// Labels the suspension uses for its new sink `a` and source `b`.
    pub fn suspension_labels(&self) -> (String, String) {
        let pick = |base: &str| {
            let mut l = base.to_string();
            while self.vertices.contains(&l) {
                l.push('\'');
            }
            l
        };
        let a = pick("a");
        let mut b = pick("b");
        while b == a {
            b.push('\'');
        }
        (a, b)
    }

    /// Single vertex `x`.
    pub fn point() -> Quiver {
        Quiver::new::<&str>(&["x"], &[]).unwrap()
    }

    /// `x → y`.
    pub fn single_arrow() -> Quiver {
        Quiver::new(&["x", "y"], &[("f", "x", "y")]).unwrap()
    }

    /// `x → y → z`.
    pub fn three_chain() -> Quiver {
        Quiver::new(&["x", "y", "z"], &[("f", "x", "y"), ("g", "y", "z")]).unwrap()
    }

    /// Four arrows `x_i → y_j`.
    pub fn crown() -> Quiver {
        Quiver::new(
            &["x1", "x2", "y1", "y2"],
            &[
                ("a11", "x1", "y1"),
                ("a12", "x1", "y2"),
                ("a21", "x2", "y1"),
                ("a22", "x2", "y2"),
            ],
        )
        .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::poset::poset_isomorphic;

    #[test]
    fn single_arrow_poset() {
        let p = Quiver::single_arrow().to_poset().unwrap();
        assert_eq!(p.len(), 2);
        assert!(p.leq(1, 0));
        assert!(!p.leq(0, 1));
    }

    #[test]
    fn crown_quiver_poset() {
        let p = Quiver::crown().to_poset().unwrap();
        for x in 0..2 {
            for y in 2..4 {
                assert!(p.lt(y, x));
            }
        }
        assert!(poset_isomorphic(&p, &Poset::crown(), 10).unwrap().is_some());
    }

    #[test]
    fn cyclic_quiver_rejected() {
        let q = Quiver::new(&["x", "y"], &[("f", "x", "y"), ("g", "y", "x")]).unwrap();
        assert!(!q.is_ordered());
        assert!(matches!(q.to_poset(), Err(Error::NotOrderedQuiver(_))));
    }

    #[test]
    fn ordered_quiver_examples() {
        let shortcut = Quiver::new(
            &["x", "y", "z"],
            &[("f", "x", "y"), ("g", "y", "z"), ("h", "x", "z")],
        )
        .unwrap();
        assert!(!shortcut.is_ordered());
        assert!(Quiver::three_chain().is_ordered());
        let lp = Quiver::new(&["x"], &[("l", "x", "x")]).unwrap();
        assert!(!lp.is_ordered());
        let parallel = Quiver::new(&["x", "y"], &[("f", "x", "y"), ("g", "x", "y")]).unwrap();
        assert!(!parallel.is_ordered());
    }

    #[test]
    fn bad_declarations() {
        assert!(matches!(
            Quiver::new(&["x"], &[("f", "x", "z")]),
            Err(Error::UnknownLabel(_))
        ));
        assert!(matches!(
            Quiver::new(&["x", "y"], &[("f", "x", "y"), ("f", "y", "x")]),
            Err(Error::DuplicateLabel(_))
        ));
    }

    #[test]
    fn suspension_shapes() {
        let s = Quiver::point().suspend().unwrap();
        assert_eq!(s.vertices().len(), 3);
        assert_eq!(s.arrows().len(), 2);
        let s = Quiver::single_arrow().suspend().unwrap();
        assert_eq!(s.arrows().len(), 3);
        let p = s.to_poset().unwrap();
        // b → x → y → a: a is the minimum, b the maximum.
        let (a, b) = (p.index_of("a").unwrap(), p.index_of("b").unwrap());
        assert!((0..4).all(|v| p.leq(a, v) && p.leq(v, b)));
        let s = Quiver::crown().suspend().unwrap();
        assert_eq!(s.vertices().len(), 6);
        assert_eq!(s.arrows().len(), 8);
        assert!(s.is_ordered());
        let empty = Quiver::new::<&str>(&[], &[]).unwrap().suspend().unwrap();
        assert_eq!(empty.vertices().len(), 2);
        assert!(empty.arrows().is_empty());
    }

    #[test]
    fn suspension_avoids_label_clash() {
        let q = Quiver::new::<&str>(&["a", "b"], &[]).unwrap();
        let (a, b) = q.suspension_labels();
        assert_eq!((a.as_str(), b.as_str()), ("a'", "b'"));
        let s = q.suspend().unwrap();
        assert_eq!(s.arrows().len(), 4);
    }

    #[test]
    fn hasse_round_trip() {
        for p in [Poset::diamond(), Poset::crown(), Poset::boolean_lattice(3), Poset::fence(5)] {
            let back = Quiver::from_hasse(&p).to_poset().unwrap();
            assert!(poset_isomorphic(&p, &back, 10).unwrap().is_some());
        }
    }
}
