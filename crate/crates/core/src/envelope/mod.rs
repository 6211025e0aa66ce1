//! Envelopes of point configurations and their covector graphs.
//!
//! For a `d × n` matrix `V` the envelope is the polyhedron of all
//! `(y, z) ∈ Q^d × Q^n` with `y_i - z_j <= v_ij` for every finite entry. It is
//! the weighted digraph polyhedron of the bipartite digraph with arcs
//! `i -> d + j` of weight `v_ij`. Its faces are labelled by bipartite graphs
//! on the rows and columns of `V`.

mod cells;
mod subdivision;

use std::collections::BTreeSet;
use std::fmt;

use crate::tropical::{TropicalMatrix, TropicalValue};
use crate::{Error, Result};

pub use cells::{
    cell_dimension, cell_interior_point, covector_closure, enumerate_covector_graphs,
    envelope_digraph, envelope_vertices, face_digraph, face_projection_matrix, is_covector_graph,
    CellDimension, EnvelopeVertex,
};
pub use subdivision::{regular_subdivision, subdivision_cell_dimension, SubdivisionCell};

/// A `d × n` matrix whose columns are points of the tropical projective space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointConfig {
    v: TropicalMatrix,
}

impl PointConfig {
    /// Fails if some column is entirely `∞`.
    pub fn new(v: TropicalMatrix) -> Result<Self> {
        for j in 0..v.cols() {
            if (0..v.rows()).all(|i| v.get(i, j).is_infinite()) {
                return Err(Error::Domain(format!("column {} is entirely inf", j + 1)));
            }
        }
        Ok(PointConfig { v })
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::new(TropicalMatrix::parse(text)?)
    }

    pub fn d(&self) -> usize {
        self.v.rows()
    }

    pub fn n(&self) -> usize {
        self.v.cols()
    }

    pub fn matrix(&self) -> &TropicalMatrix {
        &self.v
    }

    pub fn get(&self, i: usize, j: usize) -> &TropicalValue {
        self.v.get(i, j)
    }

    pub fn column(&self, j: usize) -> Vec<TropicalValue> {
        self.v.column(j)
    }

    /// Rows `i` with `v_ij` finite.
    pub fn column_support(&self, j: usize) -> Vec<usize> {
        (0..self.d()).filter(|&i| self.get(i, j).is_finite()).collect()
    }

    /// The support graph `B(V)` of finite entries.
    pub fn support(&self) -> BipartiteGraph {
        BipartiteGraph {
            d: self.d(),
            n: self.n(),
            arcs: self
                .v
                .entries()
                .filter(|(_, _, v)| v.is_finite())
                .map(|(i, j, _)| (i, j))
                .collect(),
        }
    }
}

/// A bipartite graph on rows `0..d` and columns `0..n`. Arcs are `(row, col)`
/// pairs and the derived order is lexicographic on the sorted arc list.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BipartiteGraph {
    pub d: usize,
    pub n: usize,
    pub arcs: BTreeSet<(usize, usize)>,
}

/// A bipartite graph labelling a cell of a covector decomposition.
pub type CovectorGraph = BipartiteGraph;

impl BipartiteGraph {
    pub fn new(d: usize, n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let arcs: BTreeSet<_> = arcs.into_iter().collect();
        if let Some(&(i, j)) = arcs.iter().find(|&&(i, j)| i >= d || j >= n) {
            return Err(Error::Shape(format!(
                "arc ({},{}) outside [{d}]x[{n}]",
                i + 1,
                j + 1
            )));
        }
        Ok(BipartiteGraph { d, n, arcs })
    }

    pub fn empty(d: usize, n: usize) -> Self {
        BipartiteGraph {
            d,
            n,
            arcs: BTreeSet::new(),
        }
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.arcs.contains(&(i, j))
    }

    pub fn is_subgraph_of(&self, other: &BipartiteGraph) -> bool {
        self.arcs.is_subset(&other.arcs)
    }

    pub fn union(&self, other: &BipartiteGraph) -> BipartiteGraph {
        BipartiteGraph {
            d: self.d,
            n: self.n,
            arcs: self.arcs.union(&other.arcs).copied().collect(),
        }
    }

    pub fn intersection(&self, other: &BipartiteGraph) -> BipartiteGraph {
        BipartiteGraph {
            d: self.d,
            n: self.n,
            arcs: self.arcs.intersection(&other.arcs).copied().collect(),
        }
    }

    /// Columns adjacent to row `i`.
    pub fn row_neighbors(&self, i: usize) -> Vec<usize> {
        self.arcs
            .range((i, 0)..(i + 1, 0))
            .map(|&(_, j)| j)
            .collect()
    }

    /// Rows adjacent to column `j`.
    pub fn column_neighbors(&self, j: usize) -> Vec<usize> {
        self.arcs
            .iter()
            .filter(|&&(_, c)| c == j)
            .map(|&(i, _)| i)
            .collect()
    }

    pub fn row_degree(&self, i: usize) -> usize {
        self.row_neighbors(i).len()
    }

    pub fn column_degree(&self, j: usize) -> usize {
        self.arcs.iter().filter(|&&(_, c)| c == j).count()
    }

    pub fn isolated_rows(&self) -> Vec<usize> {
        (0..self.d).filter(|&i| self.row_degree(i) == 0).collect()
    }

    pub fn isolated_columns(&self) -> Vec<usize> {
        (0..self.n).filter(|&j| self.column_degree(j) == 0).collect()
    }

    /// Arcs as edges of the graph on `0..d+n`, columns shifted by `d`.
    pub fn node_arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arcs.iter().map(move |&(i, j)| (i, self.d + j))
    }

    /// Weak components on all `d + n` nodes; isolated nodes count.
    pub fn weak_components(&self) -> Vec<Vec<usize>> {
        crate::graph::weak_components(self.d + self.n, self.node_arcs())
    }

    /// The covector tuple, e.g. `(13,2,2)`: for each row the adjacent
    /// columns, 1-based, with `-` for an isolated row.
    pub fn tuple(&self) -> String {
        self.tuple_with_marks(&[])
    }

    /// Like [`BipartiteGraph::tuple`], with `•` at the rows in `marked`.
    pub fn tuple_with_marks(&self, marked: &[usize]) -> String {
        let sep = if self.n > 9 { "." } else { "" };
        let parts: Vec<String> = (0..self.d)
            .map(|i| {
                if marked.contains(&i) {
                    return "•".to_string();
                }
                let cols = self.row_neighbors(i);
                if cols.is_empty() {
                    "-".to_string()
                } else {
                    cols.iter()
                        .map(|j| (j + 1).to_string())
                        .collect::<Vec<_>>()
                        .join(sep)
                }
            })
            .collect();
        format!("({})", parts.join(","))
    }
}

impl fmt::Display for BipartiteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tuple())
    }
}
