use std::collections::BTreeSet;

use super::poset::Poset;

/// A finite abstract simplicial complex, stored as its full face family
/// (every face a sorted vertex list, the empty face included).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    faces: BTreeSet<Vec<usize>>,
}

impl SimplicialComplex {
    /// Downward closure of `facets`.
    pub fn from_facets(facets: &[Vec<usize>]) -> SimplicialComplex {
        let mut faces = BTreeSet::new();
        faces.insert(Vec::new());
        for f in facets {
            let mut f = f.clone();
            f.sort_unstable();
            f.dedup();
            let k = f.len();
            assert!(k < 32, "facet too large");
            for mask in 1u32..(1 << k) {
                let sub: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| f[i]).collect();
                faces.insert(sub);
            }
        }
        SimplicialComplex { faces }
    }

    /// The order complex: faces are the chains of `p`, vertices listed by
    /// element index.
    pub fn order_complex(p: &Poset) -> SimplicialComplex {
        let mut faces = BTreeSet::new();
        faces.insert(Vec::new());
        for len in 1..=p.len() {
            let chains = p.chains_of_len(len);
            if chains.is_empty() {
                break;
            }
            for mut c in chains {
                c.sort_unstable();
                faces.insert(c);
            }
        }
        SimplicialComplex { faces }
    }

    pub fn contains(&self, face: &[usize]) -> bool {
        self.faces.contains(face)
    }

    /// Faces with `dim + 1` vertices, sorted.
    pub fn faces_of_dim(&self, dim: usize) -> Vec<Vec<usize>> {
        self.faces.iter().filter(|f| f.len() == dim + 1).cloned().collect()
    }

    pub fn dimension(&self) -> Option<usize> {
        self.faces.iter().map(|f| f.len()).max().and_then(|l| l.checked_sub(1))
    }

    /// Every subset of a face is a face.
    pub fn is_closed(&self) -> bool {
        self.faces.contains(&Vec::new())
            && self.faces.iter().all(|f| {
                (0..f.len()).all(|i| {
                    let mut g = f.clone();
                    g.remove(i);
                    self.faces.contains(&g)
                })
            })
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }
}
