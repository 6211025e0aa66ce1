use super::cells::torus_record;
use super::CellRecord;
use crate::envelope::{enumerate_covector_graphs, face_projection_matrix, BipartiteGraph, CovectorGraph, PointConfig};
use crate::tropical::TropicalMatrix;
use crate::{Error, Limits, Result};

/// The matrix `V(Z)` inducing the decomposition of the boundary stratum where
/// exactly the rows in `Z` are `∞`: columns with a finite entry in `Z` and the
/// rows in `Z` are removed. `rows` and `cols` hold the original labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryMatrix {
    pub stratum: Vec<usize>,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    /// `None` when no column survives; the stratum is then a single cell.
    pub config: Option<PointConfig>,
}

fn check_stratum(d: usize, z: &[usize]) -> Result<Vec<usize>> {
    let mut z = z.to_vec();
    z.sort_unstable();
    z.dedup();
    if let Some(&bad) = z.iter().find(|&&i| i >= d) {
        return Err(Error::Shape(format!("row {} out of range", bad + 1)));
    }
    if z.len() == d {
        return Err(Error::Domain("a stratum must leave at least one finite row".into()));
    }
    Ok(z)
}

pub fn boundary_matrix(v: &PointConfig, z: &[usize]) -> Result<BoundaryMatrix> {
    let stratum = check_stratum(v.d(), z)?;
    let rows: Vec<usize> = (0..v.d()).filter(|i| !stratum.contains(i)).collect();
    let cols: Vec<usize> = (0..v.n())
        .filter(|&j| stratum.iter().all(|&i| v.get(i, j).is_infinite()))
        .collect();
    let config = if cols.is_empty() {
        None
    } else {
        Some(PointConfig::new(v.matrix().submatrix(&rows, &cols)?)?)
    };
    Ok(BoundaryMatrix {
        stratum,
        rows,
        cols,
        config,
    })
}

impl BoundaryMatrix {
    /// Maps a graph on the reduced matrix back to the original labels.
    fn relabel(&self, d: usize, n: usize, g: &BipartiteGraph) -> CovectorGraph {
        BipartiteGraph {
            d,
            n,
            arcs: g.arcs.iter().map(|&(i, j)| (self.rows[i], self.cols[j])).collect(),
        }
    }

    /// The cells of the stratum, with graphs in the original labels.
    pub fn cells(&self, d: usize, n: usize, limits: &Limits) -> Result<Vec<CellRecord>> {
        let Some(config) = &self.config else {
            let free = self.rows.len();
            return Ok(vec![CellRecord {
                stratum: self.stratum.clone(),
                graph: BipartiteGraph::empty(d, n),
                dim: free - 1,
                bounded: free == 1,
                in_tcone: false,
            }]);
        };
        enumerate_covector_graphs(config, limits)?
            .into_iter()
            .map(|g| {
                let rec = torus_record(config, g)?;
                Ok(CellRecord {
                    stratum: self.stratum.clone(),
                    graph: self.relabel(d, n, &rec.graph),
                    ..rec
                })
            })
            .collect()
    }
}

/// Cells of all strata of the tropical projective space, the torus first,
/// then by stratum size and lexicographically.
pub fn projective_decomposition(v: &PointConfig, limits: &Limits) -> Result<Vec<CellRecord>> {
    let d = v.d();
    if d > 63 {
        return Err(Error::capability("rows for stratum enumeration", d as u64, 63));
    }
    let mut strata: Vec<Vec<usize>> = (0u64..(1u64 << d) - 1)
        .map(|mask| (0..d).filter(|&i| mask >> i & 1 == 1).collect())
        .collect();
    strata.sort_by(|a: &Vec<usize>, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let mut out = Vec::new();
    for z in strata {
        out.extend(boundary_matrix(v, &z)?.cells(d, v.n(), limits)?);
    }
    Ok(out)
}

/// The boundary strata met by the closure of a torus cell, with the graph of
/// the cell met in each.
///
/// A stratum `Z` is reached when `χ(Z)` is a recession direction of the cell,
/// that is, when no arc of the digraph of `V ⊙ V[G]` leaves `Z`. The graph in
/// that stratum keeps the arcs of `G` on rows outside `Z` and on columns
/// whose entries in `Z` are all `∞`.
pub fn boundary_strata(
    v: &PointConfig,
    g: &CovectorGraph,
) -> Result<Vec<(Vec<usize>, CovectorGraph)>> {
    let d = v.d();
    if d > 63 {
        return Err(Error::capability("rows for stratum enumeration", d as u64, 63));
    }
    let p: TropicalMatrix = face_projection_matrix(v, g)?;
    let arcs: Vec<(usize, usize)> = p
        .entries()
        .filter(|(i, k, w)| i != k && w.is_finite())
        .map(|(i, k, _)| (i, k))
        .collect();
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << d) - 1 {
        let inside = |i: usize| mask >> i & 1 == 1;
        if arcs.iter().any(|&(i, k)| inside(i) && !inside(k)) {
            continue;
        }
        let z: Vec<usize> = (0..d).filter(|&i| inside(i)).collect();
        let h = BipartiteGraph {
            d,
            n: v.n(),
            arcs: g
                .arcs
                .iter()
                .filter(|&&(i, j)| !inside(i) && z.iter().all(|&r| v.get(r, j).is_infinite()))
                .copied()
                .collect(),
        };
        out.push((z, h));
    }
    out.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
    Ok(out)
}
