use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::{One, Zero};

use super::algebra::SparseVec;
use super::graded::{CoalgebraData, GradedCoalgebra, Term};
use crate::combinat::{set_partitions, SimpleGraph};
use crate::sparse::add_term;
use crate::{rat, Rational, Result};

type Code = (usize, u64);

/// The incidence coalgebra of graphs restricted to a closed family of
/// isomorphism classes.
#[derive(Clone, Debug)]
pub struct GraphCoalgebra {
    coalgebra: GradedCoalgebra,
    codes: Vec<Code>,
    index: HashMap<Code, usize>,
}

#[derive(Default)]
struct Canon(HashMap<SimpleGraph, Code>);

impl Canon {
    fn code(&mut self, g: &SimpleGraph) -> Result<Code> {
        if let Some(c) = self.0.get(g) {
            return Ok(*c);
        }
        let c = g.canonical_code()?;
        self.0.insert(g.clone(), c);
        Ok(c)
    }
}

/// `G` with every edge between different blocks removed: the disjoint union
/// of the induced subgraphs `G|B`.
fn split_along(g: &SimpleGraph, blocks: &[Vec<usize>]) -> SimpleGraph {
    let mut block_of = vec![0; g.vertex_count()];
    for (b, members) in blocks.iter().enumerate() {
        for &v in members {
            block_of[v] = b;
        }
    }
    let edges: Vec<(usize, usize)> = g.edges().filter(|&(u, v)| block_of[u] == block_of[v]).collect();
    SimpleGraph::new(g.vertex_count(), &edges).expect("subset of edges")
}

fn class_label(code: Code) -> String {
    let g = SimpleGraph::from_code(code);
    let edges: Vec<String> = g.edges().map(|(u, v)| format!("{u}{v}")).collect();
    format!("G{}[{}]", code.0, edges.join(","))
}

/// Basis: isomorphism classes of the given graphs, all their induced
/// subgraphs, and all graphs obtained by deleting the edges between blocks
/// of a vertex partition (so λ lands in the span). Comultiplication
/// `Δ([G]) = Σ_{U ⊆ V} [G|U] ⊗ [G|(V − U)]`, grouplike the empty graph.
pub fn graph_coalgebra(graphs: &[SimpleGraph]) -> Result<GraphCoalgebra> {
    let mut canon = Canon::default();
    let mut seen: BTreeSet<Code> = BTreeSet::new();
    let mut queue: Vec<Code> = vec![SimpleGraph::empty().canonical_code()?];
    for g in graphs {
        queue.push(canon.code(g)?);
    }
    while let Some(code) = queue.pop() {
        if !seen.insert(code) {
            continue;
        }
        let g = SimpleGraph::from_code(code);
        let n = g.vertex_count();
        for mask in 0..(1u32 << n) {
            let sub = canon.code(&g.induced_mask(mask))?;
            if !seen.contains(&sub) {
                queue.push(sub);
            }
        }
        for blocks in set_partitions(n)? {
            let split = canon.code(&split_along(&g, &blocks))?;
            if !seen.contains(&split) {
                queue.push(split);
            }
        }
    }
    let codes: Vec<Code> = seen.into_iter().collect();
    let index: HashMap<Code, usize> = codes.iter().enumerate().map(|(i, c)| (*c, i)).collect();
    let mut comult: Vec<Vec<Term>> = Vec::new();
    for &code in &codes {
        let g = SimpleGraph::from_code(code);
        let n = g.vertex_count();
        let full = (1u32 << n) - 1;
        let mut terms = BTreeMap::new();
        for mask in 0..=full {
            let l = index[&canon.code(&g.induced_mask(mask))?];
            let r = index[&canon.code(&g.induced_mask(full & !mask))?];
            add_term(&mut terms, (l, r), Rational::one());
        }
        comult.push(terms.into_iter().map(|((l, r), c)| (l, r, c)).collect());
    }
    let empty = index[&(0, 0)];
    let coalgebra = GradedCoalgebra::new(CoalgebraData {
        name: "graphs".into(),
        labels: codes.iter().map(|&c| class_label(c)).collect(),
        degrees: codes.iter().map(|c| c.0 as u32).collect(),
        grades: codes.iter().map(|c| vec![c.0 as i64]).collect(),
        comult,
        counit: codes
            .iter()
            .map(|c| if c.0 == 0 { Rational::one() } else { Rational::zero() })
            .collect(),
        grouplike: Some(empty),
        complete_through: None,
        incidence: None,
    })?;
    Ok(GraphCoalgebra {
        coalgebra,
        codes,
        index,
    })
}

impl GraphCoalgebra {
    pub fn coalgebra(&self) -> &GradedCoalgebra {
        &self.coalgebra
    }

    pub fn class_of(&self, g: &SimpleGraph) -> Option<usize> {
        g.canonical_code().ok().and_then(|c| self.index.get(&c).copied())
    }

    pub fn representative(&self, i: usize) -> SimpleGraph {
        SimpleGraph::from_code(self.codes[i])
    }

    /// `λ([G]) = Σ_π (−1)^{|π|−1} (|π|−1)! ∏_{B ∈ π} [G|B]`, products read
    /// as disjoint unions. `λ([∅]) = 0`.
    pub fn lambda_primitive(&self, class: usize) -> Result<SparseVec> {
        let g = self.representative(class);
        let n = g.vertex_count();
        let mut out = BTreeMap::new();
        if n == 0 {
            return Ok(Vec::new());
        }
        for blocks in set_partitions(n)? {
            let k = blocks.len() as i64;
            let mut coeff = rat(if k % 2 == 1 { 1 } else { -1 });
            for j in 1..k {
                coeff *= rat(j);
            }
            let code = split_along(&g, &blocks).canonical_code()?;
            add_term(&mut out, self.index[&code], coeff);
        }
        Ok(out.into_iter().collect())
    }

    /// `Δ(v) = v ⊗ [∅] + [∅] ⊗ v`.
    pub fn is_primitive(&self, v: &[(usize, Rational)]) -> bool {
        let e = self.index[&(0, 0)];
        let mut expect = BTreeMap::new();
        for (i, c) in v {
            add_term(&mut expect, (*i, e), c.clone());
            add_term(&mut expect, (e, *i), c.clone());
        }
        self.coalgebra.comult_of(v) == expect
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalgebra::bin_coalgebra;

    fn named(gc: &GraphCoalgebra, g: &SimpleGraph) -> usize {
        gc.class_of(g).unwrap()
    }

    #[test]
    fn small_comultiplications() {
        let gc = graph_coalgebra(&[SimpleGraph::complete(2)]).unwrap();
        let c = gc.coalgebra();
        let (e, k1, k2) = (
            named(&gc, &SimpleGraph::empty()),
            named(&gc, &SimpleGraph::complete(1)),
            named(&gc, &SimpleGraph::complete(2)),
        );
        let mut expect = vec![(e, k1, rat(1)), (k1, e, rat(1))];
        expect.sort_by_key(|t| (t.0, t.1));
        assert_eq!(c.comult(k1), expect.as_slice());
        let mut expect = vec![(e, k2, rat(1)), (k1, k1, rat(2)), (k2, e, rat(1))];
        expect.sort_by_key(|t| (t.0, t.1));
        assert_eq!(c.comult(k2), expect.as_slice());
    }

    #[test]
    fn edgeless_family_is_binomial() {
        let n = 5;
        let gc = graph_coalgebra(&[SimpleGraph::edgeless(n)]).unwrap();
        let bin = bin_coalgebra(n);
        let of = |k: usize| named(&gc, &SimpleGraph::edgeless(k));
        for k in 0..=n {
            let mut got: Vec<(usize, usize, Rational)> = gc
                .coalgebra()
                .comult(of(k))
                .iter()
                .map(|(l, r, c)| {
                    let size = |i: usize| gc.representative(i).vertex_count();
                    (size(*l), size(*r), c.clone())
                })
                .collect();
            got.sort_by_key(|t| (t.0, t.1));
            assert_eq!(got, bin.comult(k).to_vec());
        }
    }

    #[test]
    fn lambda_examples() {
        let gc = graph_coalgebra(&[SimpleGraph::complete(2), SimpleGraph::edgeless(2)]).unwrap();
        let k1 = named(&gc, &SimpleGraph::complete(1));
        let k2 = named(&gc, &SimpleGraph::complete(2));
        let two = named(&gc, &SimpleGraph::edgeless(2));
        assert_eq!(gc.lambda_primitive(k1).unwrap(), vec![(k1, rat(1))]);
        assert!(gc.lambda_primitive(two).unwrap().is_empty());
        let mut expect = vec![(k2, rat(1)), (two, rat(-1))];
        expect.sort_by_key(|t| t.0);
        assert_eq!(gc.lambda_primitive(k2).unwrap(), expect);
    }

    #[test]
    fn vertex_cap() {
        assert!(graph_coalgebra(&[SimpleGraph::path(8)]).is_err());
    }
}
