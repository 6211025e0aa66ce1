//! Sectors, covector decompositions of the torus and of the tropical
//! projective space, tropical halfspace systems and signed cells.

mod cells;
mod halfspace;
mod projective;

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;

use crate::envelope::{BipartiteGraph, CovectorGraph, PointConfig};
use crate::tropical::TropicalValue;
use crate::wdp::WeightedDigraph;
use crate::{Error, Result};

pub use cells::{
    closed_sector_membership, covector_of_point, enumerate_cells, tcone_membership,
    TconeMembership,
};
pub use halfspace::{
    cells_of_halfspace, halfspace_membership, is_pure, purity_of_cells, signed_cells,
    signed_graph, tangent_digraph, PurityReport, SignedCell, TangentDigraph,
};
pub use projective::{boundary_matrix, boundary_strata, projective_decomposition, BoundaryMatrix};

/// The sector `S_i(u) = { z : z_l - z_i <= u_l - u_i for all finite u_l }`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sector {
    apex: Vec<TropicalValue>,
    index: usize,
}

impl Sector {
    pub fn new(apex: Vec<TropicalValue>, index: usize) -> Result<Self> {
        match apex.get(index) {
            Some(TropicalValue::Finite(_)) => Ok(Sector { apex, index }),
            _ => Err(Error::Domain(format!(
                "sector index {} is not in the support of the apex",
                index + 1
            ))),
        }
    }

    pub fn apex(&self) -> &[TropicalValue] {
        &self.apex
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn contains(&self, z: &[BigRational]) -> bool {
        let ui = self.apex[self.index].finite().expect("checked finite");
        self.apex.iter().enumerate().all(|(l, ul)| match ul {
            TropicalValue::Finite(ul) => &z[l] - &z[self.index] <= ul - ui,
            TropicalValue::Infinity => true,
        })
    }

    /// The sector as a weighted digraph polyhedron: arcs `(l, i)` of weight
    /// `u_l - u_i`.
    pub fn to_digraph(&self) -> WeightedDigraph {
        let i = self.index;
        let ui = self.apex[i].finite().expect("checked finite");
        let arcs = self
            .apex
            .iter()
            .enumerate()
            .filter_map(|(l, ul)| ul.finite().map(|ul| (l, i, ul - ui)));
        WeightedDigraph::from_arcs(self.apex.len(), arcs).expect("arcs are in range")
    }
}

/// A point of the tropical projective space: at least one finite coordinate,
/// stored with the first finite coordinate equal to `0`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjectivePoint {
    coords: Vec<TropicalValue>,
}

impl ProjectivePoint {
    pub fn new(coords: Vec<TropicalValue>) -> Result<Self> {
        let Some(first) = coords.iter().find_map(|c| c.finite().cloned()) else {
            return Err(Error::Domain(
                "a projective point needs a finite coordinate".into(),
            ));
        };
        let shift = -first;
        Ok(ProjectivePoint {
            coords: coords.iter().map(|c| c.shift(&shift)).collect(),
        })
    }

    pub fn from_finite(x: &[BigRational]) -> Result<Self> {
        Self::new(x.iter().cloned().map(TropicalValue::Finite).collect())
    }

    pub fn coords(&self) -> &[TropicalValue] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.coords.len())
            .filter(|&i| self.coords[i].is_finite())
            .collect()
    }

    /// Rows with coordinate `∞`, i.e. the stratum of the point.
    pub fn stratum(&self) -> Vec<usize> {
        (0..self.coords.len())
            .filter(|&i| self.coords[i].is_infinite())
            .collect()
    }

    pub fn is_finite(&self) -> bool {
        self.coords.iter().all(TropicalValue::is_finite)
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A cell of a covector decomposition. Boundary cells carry their stratum
/// `Z`, the rows where the points are `∞`, and a graph on the surviving rows
/// and columns with their original labels.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellRecord {
    pub stratum: Vec<usize>,
    pub graph: CovectorGraph,
    /// Dimension modulo `𝟙` inside the stratum.
    pub dim: usize,
    /// Bounded modulo `𝟙` inside the stratum.
    pub bounded: bool,
    pub in_tcone: bool,
}

impl CellRecord {
    pub fn tuple(&self) -> String {
        self.graph.tuple_with_marks(&self.stratum)
    }

    pub fn is_torus_cell(&self) -> bool {
        self.stratum.is_empty()
    }
}

/// A vector of signs, one per column; `true` is `+`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignVector {
    pub signs: Vec<bool>,
}

impl SignVector {
    pub fn all_plus(n: usize) -> Self {
        SignVector {
            signs: vec![true; n],
        }
    }

    /// The `mask`-th sign vector: bit `n - 1 - j` of `mask` set means
    /// `ε_j = -`, so increasing masks run through the vectors in
    /// lexicographic order with `+` before `-`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        SignVector {
            signs: (0..n).map(|j| mask >> (n - 1 - j) & 1 == 0).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn flip(&mut self, j: usize) {
        self.signs[j] = !self.signs[j];
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self
            .signs
            .iter()
            .map(|&p| if p { '+' } else { '-' })
            .collect();
        f.write_str(&s)
    }
}

impl FromStr for SignVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '+' => Ok(true),
                '-' | '−' => Ok(false),
                other => Err(Error::Parse(format!("`{other}` is not a sign"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(|signs| SignVector { signs })
    }
}

/// The max-tropical cone `thalf(V, Ψ)`: for every column `j`, the union of
/// the sectors `S_i(v^(j))` with `(i, j) ∈ Ψ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfspaceSystem {
    v: PointConfig,
    psi: BipartiteGraph,
}

impl HalfspaceSystem {
    /// Requires `Ψ ⊆ B(V)` and, for every column, a nonempty selection that
    /// is not all of `[d]`.
    pub fn new(v: PointConfig, psi: BipartiteGraph) -> Result<Self> {
        if psi.d != v.d() || psi.n != v.n() {
            return Err(Error::Shape(format!(
                "selection graph on [{}]x[{}] for a {}x{} matrix",
                psi.d,
                psi.n,
                v.d(),
                v.n()
            )));
        }
        if let Some(&(i, j)) = psi.arcs.iter().find(|&&(i, j)| v.get(i, j).is_infinite()) {
            return Err(Error::Domain(format!(
                "selected sector ({},{}) has an infinite apex coordinate",
                i + 1,
                j + 1
            )));
        }
        for j in 0..v.n() {
            let deg = psi.column_degree(j);
            if deg == 0 || deg == v.d() {
                return Err(Error::Domain(format!(
                    "halfspace {} must select a nonempty proper subset of sectors",
                    j + 1
                )));
            }
        }
        Ok(HalfspaceSystem { v, psi })
    }

    pub fn config(&self) -> &PointConfig {
        &self.v
    }

    pub fn psi(&self) -> &BipartiteGraph {
        &self.psi
    }

    /// The inversion with respect to `ε`, restricted to `B(V)`. Inversions
    /// need not be admissible systems, so no validation is applied.
    pub fn inversion(&self, eps: &SignVector) -> Result<HalfspaceSystem> {
        let signed = signed_graph(&self.psi, eps)?;
        Ok(HalfspaceSystem {
            psi: signed.intersection(&self.v.support()),
            v: self.v.clone(),
        })
    }
}
