use std::collections::BTreeSet;

use super::{NodePartition, WeightedDigraph};
use crate::graph::{
    induces_weakly_connected, is_acyclic_ignoring_loops, strong_components, weak_components,
};
use crate::{Error, Limits, Result};

/// Generators of the recession cone `Q(Γ(W), 0)`: the lineality space is
/// spanned by `lineality_generators`, the pointed part by `ray_generators`.
/// Every generator is a 0/1 characteristic vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecessionDecomposition {
    pub lineality_generators: Vec<Vec<u8>>,
    pub ray_generators: Vec<Vec<u8>>,
}

impl RecessionDecomposition {
    /// Supports of the ray generators.
    pub fn ray_supports(&self) -> Vec<Vec<usize>> {
        self.ray_generators.iter().map(|r| support(r)).collect()
    }
}

fn support(chi: &[u8]) -> Vec<usize> {
    chi.iter().enumerate().filter(|(_, &c)| c == 1).map(|(v, _)| v).collect()
}

fn characteristic(k: usize, set: &[usize]) -> Vec<u8> {
    let mut chi = vec![0; k];
    for &v in set {
        chi[v] = 1;
    }
    chi
}

/// Lineality generators are `χ(C)` for the weak components `C` of `Γ(W)`.
/// Rays are `χ(K)` for the nonempty proper subsets `K` of a weak component
/// `C` such that `K` and `C \ K` are weakly connected and no arc leaves `K`
/// towards `C \ K`. Rays are ordered by component, then by support size, then
/// lexicographically.
pub fn recession(w: &WeightedDigraph, limits: &Limits) -> Result<RecessionDecomposition> {
    let k = w.node_count();
    let arcs: Vec<(usize, usize)> = w.arc_set().into_iter().filter(|(i, j)| i != j).collect();
    let components = weak_components(k, arcs.iter().copied());
    let lineality_generators = components.iter().map(|c| characteristic(k, c)).collect();
    let mut ray_generators = Vec::new();
    for comp in &components {
        let m = comp.len();
        if m > limits.max_subset_nodes {
            return Err(Error::capability(
                "weak component for ray enumeration",
                m as u64,
                limits.max_subset_nodes as u64,
            ));
        }
        let local: Vec<(usize, usize)> = arcs
            .iter()
            .filter(|(i, _)| comp.binary_search(i).is_ok())
            .map(|&(i, j)| {
                (
                    comp.binary_search(&i).unwrap(),
                    comp.binary_search(&j).expect("arc stays in its weak component"),
                )
            })
            .collect();
        let mut found: Vec<Vec<usize>> = Vec::new();
        for mask in 1u64..(1u64 << m) - 1 {
            let inside = |v: usize| mask >> v & 1 == 1;
            if local.iter().any(|&(i, j)| inside(i) && !inside(j)) {
                continue;
            }
            let (kset, rest): (Vec<usize>, Vec<usize>) = (0..m).partition(|&v| inside(v));
            if induces_weakly_connected(&kset, local.iter().copied())
                && induces_weakly_connected(&rest, local.iter().copied())
            {
                found.push(kset.iter().map(|&v| comp[v]).collect());
            }
        }
        found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        ray_generators.extend(found.iter().map(|s| characteristic(k, s)));
    }
    Ok(RecessionDecomposition {
        lineality_generators,
        ray_generators,
    })
}

/// The face lattice of the digraph cone `Q(Γ, 0)`.
///
/// Faces correspond to partitions of the nodes whose blocks are weakly
/// connected and whose contraction has no directed cycle. A face has dimension
/// equal to its number of blocks and contains another exactly when its
/// partition refines the other's.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeFaceLattice {
    /// Faces, ordered by dimension and then canonically.
    pub elements: Vec<NodePartition>,
    /// Cover relations `(lower, upper)`: `elements[upper]` refines
    /// `elements[lower]` and has one more block.
    pub covers: Vec<(usize, usize)>,
    /// The face of least dimension, given by the weak components.
    pub bottom: usize,
    /// The whole cone, given by the strong components.
    pub top: usize,
}

impl ConeFaceLattice {
    pub fn dimension(&self, idx: usize) -> usize {
        self.elements[idx].len()
    }

    /// Whether face `a` is contained in face `b`.
    pub fn le(&self, a: usize, b: usize) -> bool {
        self.elements[b].refines(&self.elements[a])
    }

    /// Faces of dimension one more than the bottom face.
    pub fn minimal_proper_faces(&self) -> Vec<usize> {
        let base = self.dimension(self.bottom);
        (0..self.elements.len())
            .filter(|&i| self.dimension(i) == base + 1)
            .collect()
    }
}

/// Whether `partition` satisfies the two face conditions for `Γ`.
pub(crate) fn is_face_partition(
    partition: &NodePartition,
    arcs: &BTreeSet<(usize, usize)>,
) -> bool {
    let labels = partition.labels();
    partition
        .blocks()
        .iter()
        .all(|b| induces_weakly_connected(b, arcs.iter().copied()))
        && is_acyclic_ignoring_loops(
            partition.len(),
            arcs.iter().map(|&(i, j)| (labels[i], labels[j])),
        )
}

/// Enumerates the faces of the digraph cone of `Γ`; arc weights are ignored.
///
/// A partition that splits a strong component contracts to a digraph with a
/// cycle, so only coarsenings of the strong-component partition are
/// enumerated. The size bound applies to the number of strong components.
pub fn cone_face_lattice(g: &WeightedDigraph, limits: &Limits) -> Result<ConeFaceLattice> {
    let k = g.node_count();
    let arcs = g.arc_set();
    let strong = strong_components(k, arcs.iter().copied());
    let s = strong.len();
    if s > limits.max_partition_nodes {
        return Err(Error::capability(
            "strong components for face enumeration",
            s as u64,
            limits.max_partition_nodes as u64,
        ));
    }
    let mut elements = Vec::new();
    let mut rgs = vec![0usize; s];
    loop {
        let blocks_count = rgs.iter().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); blocks_count];
        for (c, &b) in rgs.iter().enumerate() {
            blocks[b].extend_from_slice(&strong[c]);
        }
        let p = NodePartition::canonical(k, blocks);
        if is_face_partition(&p, &arcs) {
            elements.push(p);
        }
        if !next_rgs(&mut rgs) {
            break;
        }
    }
    elements.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let mut covers = Vec::new();
    for (lo, a) in elements.iter().enumerate() {
        for (hi, b) in elements.iter().enumerate() {
            if b.len() == a.len() + 1 && b.refines(a) {
                covers.push((lo, hi));
            }
        }
    }
    let weak = NodePartition::canonical(k, weak_components(k, arcs.iter().copied()));
    let strong = NodePartition::canonical(k, strong);
    let find = |p: &NodePartition| {
        elements
            .iter()
            .position(|e| e == p)
            .expect("weak and strong partitions are faces")
    };
    Ok(ConeFaceLattice {
        bottom: find(&weak),
        top: find(&strong),
        elements,
        covers,
    })
}

/// Advances a restricted growth string; returns `false` after the last one.
fn next_rgs(a: &mut [usize]) -> bool {
    let n = a.len();
    for i in (1..n).rev() {
        let max_prefix = a[..i].iter().copied().max().unwrap_or(0);
        if a[i] <= max_prefix {
            a[i] += 1;
            for x in &mut a[i + 1..] {
                *x = 0;
            }
            return true;
        }
    }
    false
}

/// The condensation of `Γ` and its strong-component partition. Parallel arcs
/// between two components keep the least weight; loops are dropped.
pub fn acyclic_reduction(g: &WeightedDigraph) -> (WeightedDigraph, NodePartition) {
    let k = g.node_count();
    let strong = NodePartition::canonical(k, strong_components(k, g.arc_set()));
    let labels = strong.labels();
    let mut out = WeightedDigraph::new(strong.len());
    for (i, j, w) in g.arcs() {
        let (a, b) = (labels[i], labels[j]);
        if a != b {
            let merged = out
                .weight(a, b)
                .oplus(&crate::tropical::TropicalValue::Finite(w.clone()));
            out.set_weight(a, b, merged);
        }
    }
    (out, strong)
}
