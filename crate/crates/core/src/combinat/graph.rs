use std::collections::BTreeSet;

use crate::{Error, Result};

/// Canonical forms are computed by brute force over all vertex orderings.
pub const GRAPH_VERTEX_CAP: usize = 7;

/// A finite simple graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl SimpleGraph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<SimpleGraph> {
        let mut set = BTreeSet::new();
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Index(format!("edge ({u}, {v}) on {n} vertices")));
            }
            if u == v {
                return Err(Error::Index(format!("loop at vertex {u}")));
            }
            if !set.insert((u.min(v), u.max(v))) {
                return Err(Error::Index(format!("duplicate edge ({u}, {v})")));
            }
        }
        Ok(SimpleGraph { n, edges: set })
    }

    pub fn empty() -> SimpleGraph {
        SimpleGraph {
            n: 0,
            edges: BTreeSet::new(),
        }
    }

    /// `n` isolated vertices.
    pub fn edgeless(n: usize) -> SimpleGraph {
        SimpleGraph {
            n,
            edges: BTreeSet::new(),
        }
    }

    pub fn complete(n: usize) -> SimpleGraph {
        let mut edges = BTreeSet::new();
        for u in 0..n {
            for v in (u + 1)..n {
                edges.insert((u, v));
            }
        }
        SimpleGraph { n, edges }
    }

    pub fn path(n: usize) -> SimpleGraph {
        let edges = (1..n).map(|i| (i - 1, i)).collect();
        SimpleGraph { n, edges }
    }

    pub fn cycle(n: usize) -> SimpleGraph {
        let mut g = SimpleGraph::path(n);
        if n >= 3 {
            g.edges.insert((0, n - 1));
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    /// The subgraph induced on `subset` (listed vertices, relabelled
    /// `0..subset.len()` in the given order).
    pub fn induced(&self, subset: &[usize]) -> SimpleGraph {
        let mut edges = BTreeSet::new();
        for (i, &u) in subset.iter().enumerate() {
            for (j, &v) in subset.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    edges.insert((i, j));
                }
            }
        }
        SimpleGraph {
            n: subset.len(),
            edges,
        }
    }

    /// Induced subgraph on the vertex bitmask `mask`.
    pub fn induced_mask(&self, mask: u32) -> SimpleGraph {
        let subset: Vec<usize> = (0..self.n).filter(|i| mask >> i & 1 == 1).collect();
        self.induced(&subset)
    }

    pub fn disjoint_union(&self, other: &SimpleGraph) -> SimpleGraph {
        let mut edges = self.edges.clone();
        for &(u, v) in &other.edges {
            edges.insert((u + self.n, v + self.n));
        }
        SimpleGraph {
            n: self.n + other.n,
            edges,
        }
    }

    fn code_under(&self, perm: &[usize]) -> u64 {
        // Bit for pair (i, j), i < j, of the relabelled graph.
        let mut code = 0u64;
        let mut bit = 0;
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self.has_edge(perm[i], perm[j]) {
                    code |= 1 << bit;
                }
                bit += 1;
            }
        }
        code
    }

    /// Isomorphism invariant: `(n, m)` where `m` is the minimum adjacency
    /// encoding over all vertex orderings.
    pub fn canonical_code(&self) -> Result<(usize, u64)> {
        if self.n > GRAPH_VERTEX_CAP {
            return Err(Error::SizeCapExceeded {
                what: "graph".into(),
                size: self.n,
                cap: GRAPH_VERTEX_CAP,
            });
        }
        let mut perm: Vec<usize> = (0..self.n).collect();
        let mut best = self.code_under(&perm);
        // Heap's algorithm.
        let mut c = vec![0usize; self.n];
        let mut i = 0;
        while i < self.n {
            if c[i] < i {
                if i % 2 == 0 {
                    perm.swap(0, i);
                } else {
                    perm.swap(c[i], i);
                }
                best = best.min(self.code_under(&perm));
                c[i] += 1;
                i = 0;
            } else {
                c[i] = 0;
                i += 1;
            }
        }
        Ok((self.n, best))
    }

    /// The graph with the given canonical code.
    pub fn from_code(code: (usize, u64)) -> SimpleGraph {
        let (n, bits) = code;
        let mut edges = BTreeSet::new();
        let mut bit = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                if bits >> bit & 1 == 1 {
                    edges.insert((i, j));
                }
                bit += 1;
            }
        }
        SimpleGraph { n, edges }
    }
}
