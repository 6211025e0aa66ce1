//! Weighted digraph polyhedra `Q(W) = { x ∈ Q^k : x_i - x_j <= w_ij }`.

mod cone;
mod paths;

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::Zero;

use crate::tropical::{TropicalMatrix, TropicalValue};
use crate::{Error, Result};

pub use cone::{
    acyclic_reduction, cone_face_lattice, recession, ConeFaceLattice, RecessionDecomposition,
};
pub use paths::{
    detect_negative_cycle, equality_partition, face, intersect, kleene_star, membership, project,
    relative_interior_point, Membership,
};

/// A digraph on `0..k` with finite rational arc weights. An absent arc stands
/// for weight `∞`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightedDigraph {
    k: usize,
    arcs: BTreeMap<(usize, usize), BigRational>,
}

impl WeightedDigraph {
    pub fn new(k: usize) -> Self {
        WeightedDigraph {
            k,
            arcs: BTreeMap::new(),
        }
    }

    pub fn from_arcs(
        k: usize,
        arcs: impl IntoIterator<Item = (usize, usize, BigRational)>,
    ) -> Result<Self> {
        let mut g = Self::new(k);
        for (i, j, w) in arcs {
            if i >= k || j >= k {
                return Err(Error::Shape(format!(
                    "arc ({},{}) outside a digraph on {k} nodes",
                    i + 1,
                    j + 1
                )));
            }
            if g.arcs.insert((i, j), w).is_some() {
                return Err(Error::Domain(format!("duplicate arc ({},{})", i + 1, j + 1)));
            }
        }
        Ok(g)
    }

    /// The digraph `Γ` with all arc weights zero, whose polyhedron is the
    /// digraph cone.
    pub fn zero_weight(k: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Self::from_arcs(k, arcs.into_iter().map(|(i, j)| (i, j, BigRational::zero())))
    }

    pub fn from_matrix(w: &TropicalMatrix) -> Result<Self> {
        if !w.is_square() {
            return Err(Error::Shape(format!(
                "a weighted digraph needs a square matrix, got {}x{}",
                w.rows(),
                w.cols()
            )));
        }
        let arcs = w
            .entries()
            .filter_map(|(i, j, v)| v.finite().map(|v| (i, j, v.clone())));
        Self::from_arcs(w.rows(), arcs)
    }

    pub fn to_matrix(&self) -> TropicalMatrix {
        let mut m = TropicalMatrix::filled(self.k.max(1), self.k.max(1), TropicalValue::Infinity)
            .expect("nonempty");
        for (&(i, j), w) in &self.arcs {
            m.set(i, j, TropicalValue::Finite(w.clone()));
        }
        m
    }

    pub fn node_count(&self) -> usize {
        self.k
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn weight(&self, i: usize, j: usize) -> TropicalValue {
        match self.arcs.get(&(i, j)) {
            Some(w) => TropicalValue::Finite(w.clone()),
            None => TropicalValue::Infinity,
        }
    }

    pub fn arc_weight(&self, i: usize, j: usize) -> Option<&BigRational> {
        self.arcs.get(&(i, j))
    }

    pub fn has_arc(&self, i: usize, j: usize) -> bool {
        self.arcs.contains_key(&(i, j))
    }

    /// Sets `w_ij`; `∞` removes the arc.
    pub fn set_weight(&mut self, i: usize, j: usize, w: TropicalValue) {
        assert!(i < self.k && j < self.k, "arc ({i},{j}) out of range");
        match w {
            TropicalValue::Finite(w) => {
                self.arcs.insert((i, j), w);
            }
            TropicalValue::Infinity => {
                self.arcs.remove(&(i, j));
            }
        }
    }

    /// Arcs in lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize, &BigRational)> + '_ {
        self.arcs.iter().map(|(&(i, j), w)| (i, j, w))
    }

    pub fn arc_set(&self) -> BTreeSet<(usize, usize)> {
        self.arcs.keys().copied().collect()
    }
}

/// A partition of `0..k` into nonempty blocks, stored canonically: each block
/// sorted, blocks ordered by least element.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodePartition {
    k: usize,
    blocks: Vec<Vec<usize>>,
}

impl NodePartition {
    pub fn new(k: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; k];
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::Domain("partition with an empty block".into()));
            }
            for &v in b {
                if v >= k || std::mem::replace(&mut seen[v], true) {
                    return Err(Error::Domain(format!(
                        "node {} is out of range or repeated in the partition",
                        v + 1
                    )));
                }
            }
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::Domain(format!(
                "node {} is not covered by the partition",
                missing + 1
            )));
        }
        Ok(Self::canonical(k, blocks))
    }

    pub(crate) fn canonical(k: usize, mut blocks: Vec<Vec<usize>>) -> Self {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort();
        NodePartition { k, blocks }
    }

    pub fn singletons(k: usize) -> Self {
        Self::canonical(k, (0..k).map(|v| vec![v]).collect())
    }

    pub fn ground_size(&self) -> usize {
        self.k
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Index of the block containing `v`, for every `v`.
    pub fn labels(&self) -> Vec<usize> {
        let mut label = vec![0; self.k];
        for (b, block) in self.blocks.iter().enumerate() {
            for &v in block {
                label[v] = b;
            }
        }
        label
    }

    /// Whether every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &NodePartition) -> bool {
        let label = coarser.labels();
        self.k == coarser.k
            && self
                .blocks
                .iter()
                .all(|b| b.iter().all(|&v| label[v] == label[b[0]]))
    }
}

/// A set of arcs of a parent digraph requested to be tight.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FaceSpec {
    pub arcs: BTreeSet<(usize, usize)>,
}

impl FaceSpec {
    pub fn new(arcs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        FaceSpec {
            arcs: arcs.into_iter().collect(),
        }
    }
}
