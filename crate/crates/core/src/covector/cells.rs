use num_rational::BigRational;

use super::{CellRecord, ProjectivePoint};
use crate::envelope::{
    cell_dimension, enumerate_covector_graphs, face_projection_matrix, BipartiteGraph,
    CovectorGraph, PointConfig,
};
use crate::graph::strong_components;
use crate::tropical::TropicalValue;
use crate::{Error, Limits, Result};

/// The covector graph of the cell containing `x` in its relative interior:
/// the arcs `(i, j)` where `min_l (v_lj - x_l)` is attained at `i`.
pub fn covector_of_point(v: &PointConfig, x: &[BigRational]) -> Result<CovectorGraph> {
    if x.len() != v.d() {
        return Err(Error::Shape(format!(
            "point of length {} for {} rows",
            x.len(),
            v.d()
        )));
    }
    let mut arcs = Vec::new();
    for j in 0..v.n() {
        let vals: Vec<(usize, BigRational)> = (0..v.d())
            .filter_map(|i| v.get(i, j).finite().map(|vij| (i, vij - &x[i])))
            .collect();
        let best = vals.iter().map(|(_, t)| t).min().expect("no column is all inf");
        arcs.extend(vals.iter().filter(|(_, t)| t == best).map(|&(i, _)| (i, j)));
    }
    BipartiteGraph::new(v.d(), v.n(), arcs)
}

/// Whether `z` lies in the compactified sector of `u` at index `i`.
///
/// If `z_i = ∞` this always holds. Otherwise every coordinate in the support
/// of `u` must be finite in `z` and satisfy `z_l - z_i <= u_l - u_i`.
pub fn closed_sector_membership(
    z: &ProjectivePoint,
    u: &[TropicalValue],
    i: usize,
) -> Result<bool> {
    if u.len() != z.dim() {
        return Err(Error::Shape(format!(
            "apex of length {} for a point of length {}",
            u.len(),
            z.dim()
        )));
    }
    let Some(ui) = u.get(i).and_then(TropicalValue::finite) else {
        return Err(Error::Domain(format!(
            "index {} is not in the support of the apex",
            i + 1
        )));
    };
    let Some(zi) = z.coords()[i].finite() else {
        return Ok(true);
    };
    Ok(u.iter().enumerate().all(|(l, ul)| match ul {
        TropicalValue::Infinity => true,
        TropicalValue::Finite(ul) => match z.coords()[l].finite() {
            Some(zl) => zl - zi <= ul - ui,
            None => false,
        },
    }))
}

/// Verdict of a tropical cone membership test, with the coefficients
/// `λ_j = max_i (z_i - v_ij)` over the columns whose support lies in the
/// support of `z` (`∞` for the others). When `member` holds,
/// `min_j (λ_j + v^(j)) = z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TconeMembership {
    pub member: bool,
    pub lambda: Vec<TropicalValue>,
}

/// Membership in `tcone(V)` by the sector criterion: every `i` in the support
/// of `z` needs a column `s` whose support lies in that of `z` and whose
/// compactified sector at `i` contains `z`.
pub fn tcone_membership(v: &PointConfig, z: &ProjectivePoint) -> Result<TconeMembership> {
    if z.dim() != v.d() {
        return Err(Error::Shape(format!(
            "point of length {} for {} rows",
            z.dim(),
            v.d()
        )));
    }
    let supp = z.support();
    let admissible: Vec<usize> = (0..v.n())
        .filter(|&s| v.column_support(s).iter().all(|i| supp.contains(i)))
        .collect();
    let mut member = true;
    for &i in &supp {
        let mut found = false;
        for &s in &admissible {
            if v.get(i, s).is_finite() && closed_sector_membership(z, &v.column(s), i)? {
                found = true;
                break;
            }
        }
        if !found {
            member = false;
            break;
        }
    }
    let lambda = (0..v.n())
        .map(|s| {
            if !admissible.contains(&s) {
                return TropicalValue::Infinity;
            }
            let best = v
                .column_support(s)
                .into_iter()
                .map(|i| {
                    z.coords()[i].finite().expect("admissible support") - v.get(i, s).finite().expect("support")
                })
                .max()
                .expect("nonempty support");
            TropicalValue::Finite(best)
        })
        .collect();
    Ok(TconeMembership { member, lambda })
}

/// Builds the record of a covector graph without isolated columns.
pub(crate) fn torus_record(v: &PointConfig, g: CovectorGraph) -> Result<CellRecord> {
    let dim = cell_dimension(v, &g)?.projective();
    let p = face_projection_matrix(v, &g)?;
    let arcs = p
        .entries()
        .filter(|(i, k, w)| i != k && w.is_finite())
        .map(|(i, k, _)| (i, k));
    let bounded = strong_components(v.d(), arcs).len() == 1;
    let in_tcone = g.isolated_rows().is_empty() && g.isolated_columns().is_empty();
    Ok(CellRecord {
        stratum: Vec::new(),
        graph: g,
        dim,
        bounded,
        in_tcone,
    })
}

/// All cells of the covector decomposition of the projective torus, in
/// canonical order of their graphs.
pub fn enumerate_cells(v: &PointConfig, limits: &Limits) -> Result<Vec<CellRecord>> {
    enumerate_covector_graphs(v, limits)?
        .into_iter()
        .map(|g| torus_record(v, g))
        .collect()
}
