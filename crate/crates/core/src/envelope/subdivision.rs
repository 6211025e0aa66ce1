use super::{enumerate_covector_graphs, BipartiteGraph, CovectorGraph, PointConfig};
use crate::{Limits, Result};

/// A cell of the regular subdivision of `conv{ e_i ⊕ e_j : (i,j) ∈ B(V) }`
/// with heights `v_ij`. The vertex `e_i ⊕ e_j` is recorded as the arc
/// `(i, j)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SubdivisionCell {
    pub vertices: CovectorGraph,
    pub dim: usize,
}

/// Affine dimension of `conv{ e_i ⊕ e_j : (i,j) ∈ G }`: the number of
/// non-isolated nodes minus the number of components they form, minus one.
pub fn subdivision_cell_dimension(g: &BipartiteGraph) -> usize {
    let components = g.weak_components();
    let nontrivial = components.iter().filter(|c| c.len() > 1);
    let (nodes, count) = nontrivial.fold((0, 0), |(n, c), comp| (n + comp.len(), c + 1));
    (nodes - count).saturating_sub(1)
}

/// The maximal cells of the regular subdivision, in canonical order.
///
/// They are dual to the minimal cells of the covector decomposition: the
/// covector graphs with as many weak components as `B(V)`.
pub fn regular_subdivision(v: &PointConfig, limits: &Limits) -> Result<Vec<SubdivisionCell>> {
    let target = v.support().weak_components().len();
    Ok(enumerate_covector_graphs(v, limits)?
        .into_iter()
        .filter(|g| g.weak_components().len() == target)
        .map(|g| SubdivisionCell {
            dim: subdivision_cell_dimension(&g),
            vertices: g,
        })
        .collect())
}
