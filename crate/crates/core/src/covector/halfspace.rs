use std::collections::BTreeSet;

use num_rational::BigRational;

use super::projective::projective_decomposition;
use super::{enumerate_cells, CellRecord, HalfspaceSystem, SignVector};
use crate::envelope::{is_covector_graph, BipartiteGraph, CovectorGraph};
use crate::{Error, Limits, Result};

/// Whether `x` lies in `thalf(V, Ψ)`: for every column the largest value of
/// `x_i - v_ij` over the selected rows reaches the largest over all finite
/// rows.
pub fn halfspace_membership(h: &HalfspaceSystem, x: &[BigRational]) -> Result<bool> {
    let v = h.config();
    if x.len() != v.d() {
        return Err(Error::Shape(format!(
            "point of length {} for {} rows",
            x.len(),
            v.d()
        )));
    }
    Ok((0..v.n()).all(|j| {
        let mut selected: Option<BigRational> = None;
        let mut other: Option<BigRational> = None;
        for i in v.column_support(j) {
            let t = &x[i] - v.get(i, j).finite().expect("support");
            let side = if h.psi().contains(i, j) {
                &mut selected
            } else {
                &mut other
            };
            if side.as_ref().is_none_or(|s| *s < t) {
                *side = Some(t);
            }
        }
        match (selected, other) {
            (None, None) => true,
            (None, Some(_)) => false,
            (Some(_), None) => true,
            (Some(s), Some(o)) => s >= o,
        }
    }))
}

/// Whether every column keeps an arc of `Ψ ∩ G`.
fn selects_every_column(psi: &BipartiteGraph, g: &CovectorGraph, columns: &[usize]) -> bool {
    columns
        .iter()
        .all(|&j| g.column_neighbors(j).iter().any(|&i| psi.contains(i, j)))
}

/// The cells of the covector decomposition of the torus that make up
/// `thalf(V, Ψ)`.
pub fn cells_of_halfspace(h: &HalfspaceSystem, limits: &Limits) -> Result<Vec<CellRecord>> {
    let columns: Vec<usize> = (0..h.config().n()).collect();
    Ok(enumerate_cells(h.config(), limits)?
        .into_iter()
        .filter(|c| selects_every_column(h.psi(), &c.graph, &columns))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PurityReport {
    pub pure: bool,
    /// Pure with every maximal cell of dimension `d - 1` modulo `𝟙`.
    pub full_dimensional: bool,
    /// The inclusion-maximal cells.
    pub maximal: Vec<CellRecord>,
    /// Two maximal cells of different dimension, largest dimension first.
    pub offending: Option<(CellRecord, CellRecord)>,
}

/// Pureness of a union of torus cells of one covector decomposition.
///
/// Cell `X_G` contains `X_H` exactly when `G ⊆ H`, so the maximal cells are
/// those whose graph contains no other graph of the list.
pub fn purity_of_cells(cells: &[CellRecord], d: usize) -> PurityReport {
    let maximal: Vec<CellRecord> = cells
        .iter()
        .filter(|c| {
            !cells
                .iter()
                .any(|o| o.graph != c.graph && o.graph.is_subgraph_of(&c.graph))
        })
        .cloned()
        .collect();
    let top = maximal.iter().max_by_key(|c| c.dim);
    let bottom = maximal.iter().min_by_key(|c| c.dim);
    let offending = match (top, bottom) {
        (Some(t), Some(b)) if t.dim != b.dim => Some((t.clone(), b.clone())),
        _ => None,
    };
    let pure = offending.is_none();
    let full_dimensional = pure && !maximal.is_empty() && maximal.iter().all(|c| c.dim + 1 == d);
    PurityReport {
        pure,
        full_dimensional,
        maximal,
        offending,
    }
}

pub fn is_pure(h: &HalfspaceSystem, limits: &Limits) -> Result<PurityReport> {
    Ok(purity_of_cells(
        &cells_of_halfspace(h, limits)?,
        h.config().d(),
    ))
}

/// `Ψ_ε`: the arcs of `Ψ` at columns with sign `+` and the complementary
/// arcs of `[d] × {j}` at columns with sign `-`.
pub fn signed_graph(psi: &BipartiteGraph, eps: &SignVector) -> Result<BipartiteGraph> {
    if eps.len() != psi.n {
        return Err(Error::Shape(format!(
            "{} signs for {} columns",
            eps.len(),
            psi.n
        )));
    }
    let arcs = (0..psi.d)
        .flat_map(|i| (0..psi.n).map(move |j| (i, j)))
        .filter(|&(i, j)| psi.contains(i, j) == eps.signs[j]);
    BipartiteGraph::new(psi.d, psi.n, arcs)
}

/// The signed cell of one sign vector as a union of cells of the covector
/// decomposition of the projective space. Both lists are empty when the
/// inversion is empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedCell {
    pub sign: SignVector,
    pub torus_cells: Vec<CellRecord>,
    pub boundary_cells: Vec<CellRecord>,
}

impl SignedCell {
    pub fn is_empty(&self) -> bool {
        self.torus_cells.is_empty() && self.boundary_cells.is_empty()
    }

    /// Whether the signed cell meets the torus.
    pub fn meets_torus(&self) -> bool {
        !self.torus_cells.is_empty()
    }
}

/// Whether the closed inversion for `psi` contains the cell.
///
/// A column with a finite entry in the stratum `Z` lies in the closed sector
/// `S_i` exactly for its finite rows `i ∈ Z`. The other columns are decided
/// by the graph of the cell.
fn closed_cell_selected(h: &HalfspaceSystem, psi: &BipartiteGraph, cell: &CellRecord) -> bool {
    let v = h.config();
    (0..v.n()).all(|j| {
        let removed: Vec<usize> = cell
            .stratum
            .iter()
            .copied()
            .filter(|&i| v.get(i, j).is_finite())
            .collect();
        if removed.is_empty() {
            cell.graph
                .column_neighbors(j)
                .iter()
                .any(|&i| psi.contains(i, j))
        } else {
            removed.iter().any(|&i| psi.contains(i, j))
        }
    })
}

/// All `2^n` inversions in the order of [`SignVector::from_mask`].
pub fn signed_cells(h: &HalfspaceSystem, limits: &Limits) -> Result<Vec<SignedCell>> {
    let n = h.config().n();
    if n > limits.max_sign_columns {
        return Err(Error::capability(
            "columns for sign enumeration",
            n as u64,
            limits.max_sign_columns as u64,
        ));
    }
    let cells = projective_decomposition(h.config(), limits)?;
    (0u64..1 << n)
        .map(|mask| {
            let sign = SignVector::from_mask(n, mask);
            let inv = h.inversion(&sign)?;
            let (torus_cells, boundary_cells): (Vec<CellRecord>, Vec<CellRecord>) = cells
                .iter()
                .filter(|c| closed_cell_selected(h, inv.psi(), c))
                .cloned()
                .partition(CellRecord::is_torus_cell);
            Ok(SignedCell {
                sign,
                torus_cells,
                boundary_cells,
            })
        })
        .collect()
}

/// The covector graph of a cell with the columns saturated by `Ψ` removed:
/// arcs of `Ψ` point from rows to columns, the others from columns to rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentDigraph {
    pub d: usize,
    pub n: usize,
    /// Columns that keep an arc outside `Ψ`.
    pub columns: Vec<usize>,
    pub row_to_column: BTreeSet<(usize, usize)>,
    pub column_to_row: BTreeSet<(usize, usize)>,
}

impl TangentDigraph {
    pub fn arc_count(&self) -> usize {
        self.row_to_column.len() + self.column_to_row.len()
    }

    /// Arcs on the nodes `0..d + n`, columns shifted by `d`.
    pub fn node_arcs(&self) -> Vec<(usize, usize)> {
        let mut arcs: Vec<(usize, usize)> = self
            .row_to_column
            .iter()
            .map(|&(i, j)| (i, self.d + j))
            .chain(self.column_to_row.iter().map(|&(i, j)| (self.d + j, i)))
            .collect();
        arcs.sort_unstable();
        arcs
    }
}

pub fn tangent_digraph(h: &HalfspaceSystem, cell: &CellRecord) -> Result<TangentDigraph> {
    let v = h.config();
    let g = &cell.graph;
    if g.d != v.d() || g.n != v.n() {
        return Err(Error::Shape(format!(
            "cell graph on [{}]x[{}] for a {}x{} matrix",
            g.d,
            g.n,
            v.d(),
            v.n()
        )));
    }
    if cell.is_torus_cell() && !is_covector_graph(v, g)? {
        return Err(Error::Domain(format!("{g} is not a covector graph")));
    }
    let psi = h.psi();
    let columns: Vec<usize> = (0..v.n())
        .filter(|&j| g.column_neighbors(j).iter().any(|&i| !psi.contains(i, j)))
        .collect();
    let kept = |j: &usize| columns.binary_search(j).is_ok();
    let (row_to_column, column_to_row) = g
        .arcs
        .iter()
        .filter(|(_, j)| kept(j))
        .partition(|&&(i, j)| psi.contains(i, j));
    Ok(TangentDigraph {
        d: v.d(),
        n: v.n(),
        columns,
        row_to_column,
        column_to_row,
    })
}
