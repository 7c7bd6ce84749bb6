use std::collections::HashMap;
use std::fmt;

use crate::{Error, Result};

/// Default cap on the number of elements for brute-force isomorphism tests.
pub const ISOMORPHISM_CAP: usize = 10;

/// A finite partially ordered set.
///
/// Labels are opaque; all order information comes from the cover relation
/// handed to [`Poset::new`]. Elements are addressed by their index in
/// construction order.
#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    leq: Vec<Vec<bool>>,
    covers: Vec<(usize, usize)>,
}

/// The closed interval `[lo, hi]` of a poset, as element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: usize,
    pub hi: usize,
    pub members: Vec<usize>,
}

impl Poset {
    /// Builds the poset generated by `cover_pairs` (each pair is
    /// `(lower, upper)`). The pairs need not be covers; the stored cover
    /// relation is the transitive reduction of their closure.
    pub fn new<S: AsRef<str>>(labels: &[S], cover_pairs: &[(S, S)]) -> Result<Poset> {
        let mut index = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.as_ref().to_string(), i).is_some() {
                return Err(Error::DuplicateLabel(l.as_ref().to_string()));
            }
        }
        let lookup = |s: &S| {
            index
                .get(s.as_ref())
                .copied()
                .ok_or_else(|| Error::UnknownLabel(s.as_ref().to_string()))
        };
        let mut pairs = Vec::with_capacity(cover_pairs.len());
        for (lo, hi) in cover_pairs {
            pairs.push((lookup(lo)?, lookup(hi)?));
        }
        let labels = labels.iter().map(|s| s.as_ref().to_string()).collect();
        Poset::from_pairs(labels, &pairs)
    }

    /// Same as [`Poset::new`] with relations given by index.
    pub fn from_pairs(labels: Vec<String>, pairs: &[(usize, usize)]) -> Result<Poset> {
        let n = labels.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(lo, hi) in pairs {
            if lo >= n || hi >= n {
                return Err(Error::Index(format!("pair ({lo}, {hi}) out of range")));
            }
            leq[lo][hi] = true;
        }
        // Warshall closure.
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if leq[i][j] && leq[j][i] {
                    return Err(Error::Cycle(labels[i].clone(), labels[j].clone()));
                }
            }
        }
        Ok(Poset::from_closed(labels, leq))
    }

    fn from_closed(labels: Vec<String>, leq: Vec<Vec<bool>>) -> Poset {
        let n = labels.len();
        let mut covers = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j && leq[i][j] && !(0..n).any(|k| k != i && k != j && leq[i][k] && leq[k][j])
                {
                    covers.push((i, j));
                }
            }
        }
        let index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        Poset {
            labels,
            index,
            leq,
            covers,
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
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

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq[i][j]
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.leq[i][j] || self.leq[j][i]
    }

    /// Cover pairs `(lower, upper)`.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn is_cover(&self, i: usize, j: usize) -> bool {
        self.covers.contains(&(i, j))
    }

    /// Elements in an order-compatible sequence (every element after all of
    /// its predecessors), ties broken by index.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| ((0..self.len()).filter(|&j| self.lt(j, i)).count(), i));
        order
    }

    /// Members of `[lo, hi]`, empty when `lo ≰ hi`.
    pub fn interval_members(&self, lo: usize, hi: usize) -> Vec<usize> {
        if !self.leq(lo, hi) {
            return Vec::new();
        }
        (0..self.len())
            .filter(|&z| self.leq(lo, z) && self.leq(z, hi))
            .collect()
    }

    pub fn interval(&self, lo: usize, hi: usize) -> Option<Interval> {
        if !self.leq(lo, hi) {
            return None;
        }
        Some(Interval {
            lo,
            hi,
            members: self.interval_members(lo, hi),
        })
    }

    /// One interval per comparable pair `x ≤ y`, in row-major index order.
    pub fn enumerate_intervals(&self) -> Vec<Interval> {
        let n = self.len();
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if let Some(iv) = self.interval(x, y) {
                    out.push(iv);
                }
            }
        }
        out
    }

    /// The subposet induced on `members` (labels preserved, order of
    /// `members` kept).
    pub fn induced(&self, members: &[usize]) -> Poset {
        let labels = members.iter().map(|&m| self.labels[m].clone()).collect();
        let leq = members
            .iter()
            .map(|&a| members.iter().map(|&b| self.leq[a][b]).collect())
            .collect();
        Poset::from_closed(labels, leq)
    }

    pub fn interval_poset(&self, iv: &Interval) -> Poset {
        self.induced(&iv.members)
    }

    /// Length (number of cover steps) of the longest chain from `lo` to `hi`.
    pub fn longest_chain(&self, lo: usize, hi: usize) -> Option<usize> {
        if !self.leq(lo, hi) {
            return None;
        }
        let order = self.linear_extension();
        let mut best: Vec<Option<usize>> = vec![None; self.len()];
        best[lo] = Some(0);
        for &z in &order {
            if let Some(d) = best[z] {
                for &(a, b) in &self.covers {
                    if a == z && self.leq(b, hi) {
                        best[b] = Some(best[b].map_or(d + 1, |e| e.max(d + 1)));
                    }
                }
            }
        }
        best[hi]
    }

    /// The opposite order.
    pub fn dual(&self) -> Poset {
        let n = self.len();
        let leq = (0..n).map(|i| (0..n).map(|j| self.leq[j][i]).collect()).collect();
        Poset::from_closed(self.labels.clone(), leq)
    }

    /// Disjoint union; labels of `other` are prefixed when they collide.
    pub fn disjoint_union(&self, other: &Poset) -> Poset {
        let mut labels = self.labels.clone();
        for l in &other.labels {
            let mut l = l.clone();
            while labels.contains(&l) {
                l = format!("{l}'");
            }
            labels.push(l);
        }
        let n = self.len();
        let m = other.len();
        let mut leq = vec![vec![false; n + m]; n + m];
        for i in 0..n {
            for j in 0..n {
                leq[i][j] = self.leq[i][j];
            }
        }
        for i in 0..m {
            for j in 0..m {
                leq[n + i][n + j] = other.leq[i][j];
            }
        }
        Poset::from_closed(labels, leq)
    }

    /// Number of connected components of the comparability graph.
    pub fn components(&self) -> usize {
        let n = self.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        let mut count = n;
        for &(a, b) in &self.covers {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
                count -= 1;
            }
        }
        count
    }

    /// Strictly increasing chains `x0 < x1 < … < xk` with `k + 1 = len`.
    pub fn chains_of_len(&self, len: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        if len == 0 {
            out.push(Vec::new());
            return out;
        }
        let mut stack: Vec<Vec<usize>> = (0..self.len()).map(|x| vec![x]).collect();
        stack.reverse();
        while let Some(chain) = stack.pop() {
            if chain.len() == len {
                out.push(chain);
                continue;
            }
            let last = *chain.last().unwrap();
            for y in (0..self.len()).rev() {
                if self.lt(last, y) {
                    let mut c = chain.clone();
                    c.push(y);
                    stack.push(c);
                }
            }
        }
        out.sort();
        out
    }

    // Standard corpus members.

    /// The chain `0 < 1 < … < n-1`.
    pub fn chain(n: usize) -> Poset {
        let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let pairs: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        Poset::from_pairs(labels, &pairs).expect("chain is acyclic")
    }

    pub fn antichain(n: usize) -> Poset {
        let labels: Vec<String> = (0..n).map(|i| format!("a{i}")).collect();
        Poset::from_pairs(labels, &[]).expect("antichain")
    }

    /// `0̂ < a, b < 1̂`.
    pub fn diamond() -> Poset {
        Poset::new(
            &["0", "a", "b", "1"],
            &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")],
        )
        .expect("diamond")
    }

    /// Two minimal elements below two maximal ones, all four relations.
    pub fn crown() -> Poset {
        Poset::new(
            &["y1", "y2", "x1", "x2"],
            &[("y1", "x1"), ("y1", "x2"), ("y2", "x1"), ("y2", "x2")],
        )
        .expect("crown")
    }

    /// Subsets of an `n`-set ordered by inclusion; labels are bitmasks.
    pub fn boolean_lattice(n: usize) -> Poset {
        let size = 1usize << n;
        let labels: Vec<String> = (0..size)
            .map(|s| {
                let members: Vec<String> =
                    (0..n).filter(|i| s >> i & 1 == 1).map(|i| i.to_string()).collect();
                format!("{{{}}}", members.join(","))
            })
            .collect();
        let mut pairs = Vec::new();
        for s in 0..size {
            for i in 0..n {
                if s >> i & 1 == 0 {
                    pairs.push((s, s | 1 << i));
                }
            }
        }
        Poset::from_pairs(labels, &pairs).expect("boolean lattice")
    }

    /// Zigzag `p0 < p1 > p2 < p3 …` on `n` elements.
    pub fn fence(n: usize) -> Poset {
        let labels: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
        let pairs: Vec<(usize, usize)> = (1..n)
            .map(|i| if i % 2 == 1 { (i - 1, i) } else { (i, i - 1) })
            .collect();
        Poset::from_pairs(labels, &pairs).expect("fence")
    }
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<String> = self
            .covers
            .iter()
            .map(|&(a, b)| format!("{} < {}", self.labels[a], self.labels[b]))
            .collect();
        f.debug_struct("Poset")
            .field("labels", &self.labels)
            .field("covers", &covers)
            .finish()
    }
}

fn signature(p: &Poset, i: usize) -> (usize, usize, usize, usize) {
    let n = p.len();
    let below = (0..n).filter(|&j| p.lt(j, i)).count();
    let above = (0..n).filter(|&j| p.lt(i, j)).count();
    let down = p.covers.iter().filter(|&&(_, b)| b == i).count();
    let up = p.covers.iter().filter(|&&(a, _)| a == i).count();
    (below, above, down, up)
}

/// Order isomorphism test by signature pruning and backtracking. Returns the
/// witness map (index in `p` to index in `q`) when one exists.
pub fn poset_isomorphic(p: &Poset, q: &Poset, cap: usize) -> Result<Option<Vec<usize>>> {
    for (what, size) in [("first poset", p.len()), ("second poset", q.len())] {
        if size > cap {
            return Err(Error::SizeCapExceeded {
                what: what.into(),
                size,
                cap,
            });
        }
    }
    if p.len() != q.len() || p.covers.len() != q.covers.len() {
        return Ok(None);
    }
    let sp: Vec<_> = (0..p.len()).map(|i| signature(p, i)).collect();
    let sq: Vec<_> = (0..q.len()).map(|i| signature(q, i)).collect();
    let mut a = sp.clone();
    let mut b = sq.clone();
    a.sort();
    b.sort();
    if a != b {
        return Ok(None);
    }
    let order = p.linear_extension();
    let mut map = vec![usize::MAX; p.len()];
    let mut used = vec![false; q.len()];
    fn extend(
        k: usize,
        order: &[usize],
        p: &Poset,
        q: &Poset,
        sp: &[(usize, usize, usize, usize)],
        sq: &[(usize, usize, usize, usize)],
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let i = order[k];
        for j in 0..q.len() {
            if used[j] || sp[i] != sq[j] {
                continue;
            }
            let consistent = order[..k].iter().all(|&prev| {
                let pj = map[prev];
                p.leq(prev, i) == q.leq(pj, j) && p.leq(i, prev) == q.leq(j, pj)
            });
            if !consistent {
                continue;
            }
            map[i] = j;
            used[j] = true;
            if extend(k + 1, order, p, q, sp, sq, map, used) {
                return true;
            }
            used[j] = false;
            map[i] = usize::MAX;
        }
        false
    }
    if extend(0, &order, p, q, &sp, &sq, &mut map, &mut used) {
        Ok(Some(map))
    } else {
        Ok(None)
    }
}

/// True when the undirected Hasse diagram has no cycle.
pub fn is_forest_hasse(p: &Poset) -> bool {
    // A graph is a forest iff edges = vertices - components.
    p.covers.len() + p.components() == p.len()
}

/// True when every interval is a chain.
pub fn all_intervals_are_chains(p: &Poset) -> bool {
    p.enumerate_intervals().iter().all(|iv| {
        iv.members
            .iter()
            .all(|&a| iv.members.iter().all(|&b| p.comparable(a, b)))
    })
}

/// True when between any two elements there is at most one directed path of
/// cover relations. Equivalent to every interval being a chain.
pub fn is_multitree_hasse(p: &Poset) -> bool {
    let order = p.linear_extension();
    for &x in &order {
        let mut paths = vec![0usize; p.len()];
        paths[x] = 1;
        for &z in &order {
            if paths[z] == 0 {
                continue;
            }
            for &(a, b) in p.covers() {
                if a == z {
                    paths[b] += paths[z];
                    if paths[b] > 1 {
                        return false;
                    }
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_is_transitive() {
        let p = Poset::new(&["0", "1", "2"], &[("0", "1"), ("1", "2")]).unwrap();
        assert!(p.leq(0, 2));
        assert_eq!(p.covers(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn singleton_is_reflexive() {
        let p = Poset::new::<&str>(&["a"], &[]).unwrap();
        assert!(p.leq(0, 0));
        assert_eq!(p.enumerate_intervals().len(), 1);
    }

    #[test]
    fn two_cycle_is_rejected() {
        let err = Poset::new(&["x", "y"], &[("x", "y"), ("y", "x")]).unwrap_err();
        assert!(matches!(err, Error::Cycle(..)));
    }

    #[test]
    fn unknown_and_duplicate_labels() {
        assert!(matches!(
            Poset::new(&["x"], &[("x", "z")]),
            Err(Error::UnknownLabel(_))
        ));
        assert!(matches!(
            Poset::new::<&str>(&["x", "x"], &[]),
            Err(Error::DuplicateLabel(_))
        ));
    }

    #[test]
    fn covers_are_transitive_reduction() {
        let p = Poset::new(&["0", "1", "2"], &[("0", "1"), ("1", "2"), ("0", "2")]).unwrap();
        assert_eq!(p.covers(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn interval_counts_match_brute_force() {
        let brute = |p: &Poset| {
            let mut c = 0;
            for x in 0..p.len() {
                for y in 0..p.len() {
                    if p.leq(x, y) {
                        c += 1;
                    }
                }
            }
            c
        };
        assert_eq!(Poset::chain(3).enumerate_intervals().len(), 6);
        assert_eq!(brute(&Poset::chain(3)), 6);
        assert_eq!(Poset::antichain(2).enumerate_intervals().len(), 2);
        assert_eq!(Poset::diamond().enumerate_intervals().len(), 9);
        assert_eq!(brute(&Poset::diamond()), 9);
    }

    #[test]
    fn isomorphism_examples() {
        let c3 = Poset::chain(3);
        assert!(poset_isomorphic(&c3, &Poset::chain(3), 10).unwrap().is_some());
        assert!(poset_isomorphic(&c3, &Poset::antichain(3), 10).unwrap().is_none());
        assert!(poset_isomorphic(&Poset::diamond(), &Poset::chain(4), 10)
            .unwrap()
            .is_none());
        let err = poset_isomorphic(&Poset::chain(11), &Poset::chain(11), 10).unwrap_err();
        assert!(matches!(err, Error::SizeCapExceeded { .. }));
    }

    #[test]
    fn diamond_vs_chain_exhaustive() {
        // No bijection among all 24 preserves order both ways.
        let d = Poset::diamond();
        let c = Poset::chain(4);
        let mut found = false;
        let mut perm = [0usize, 1, 2, 3];
        fn permutations(k: usize, perm: &mut [usize; 4], f: &mut dyn FnMut(&[usize; 4])) {
            if k == 4 {
                f(perm);
                return;
            }
            for i in k..4 {
                perm.swap(k, i);
                permutations(k + 1, perm, f);
                perm.swap(k, i);
            }
        }
        let mut count = 0;
        permutations(0, &mut perm, &mut |m| {
            count += 1;
            if (0..4).all(|i| (0..4).all(|j| d.leq(i, j) == c.leq(m[i], m[j]))) {
                found = true;
            }
        });
        assert_eq!(count, 24);
        assert!(!found);
    }

    #[test]
    fn isomorphism_witness_preserves_order() {
        let p = Poset::crown();
        let q = Poset::new(
            &["u", "v", "s", "t"],
            &[("s", "u"), ("s", "v"), ("t", "u"), ("t", "v")],
        )
        .unwrap();
        let w = poset_isomorphic(&p, &q, 10).unwrap().unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(p.leq(i, j), q.leq(w[i], w[j]));
            }
        }
    }

    #[test]
    fn forest_examples() {
        assert!(is_forest_hasse(&Poset::chain(5)));
        assert!(!is_forest_hasse(&Poset::diamond()));
        assert!(is_forest_hasse(&Poset::chain(2).disjoint_union(&Poset::chain(3))));
        // The crown has a cyclic Hasse diagram yet only chain intervals.
        assert!(!is_forest_hasse(&Poset::crown()));
        assert!(all_intervals_are_chains(&Poset::crown()));
        assert!(is_multitree_hasse(&Poset::crown()));
        assert!(!is_multitree_hasse(&Poset::diamond()));
    }

    #[test]
    fn chains_and_longest() {
        let b3 = Poset::boolean_lattice(3);
        assert_eq!(b3.len(), 8);
        assert_eq!(b3.chains_of_len(4).len(), 6);
        assert_eq!(b3.longest_chain(0, 7), Some(3));
        assert_eq!(Poset::fence(4).covers().len(), 3);
        assert_eq!(Poset::chain(2).disjoint_union(&Poset::chain(2)).components(), 2);
    }
}
