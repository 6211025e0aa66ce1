use std::collections::{BTreeSet, VecDeque};

use num_rational::BigRational;
use num_traits::Zero;

use super::{BipartiteGraph, CovectorGraph, PointConfig};
use crate::tropical::{trop_mat_mul, TropicalMatrix, TropicalValue};
use crate::wdp::{self, WeightedDigraph};
use crate::{Error, Limits, Result};

/// The digraph on `d + n` nodes with an arc `i -> d + j` of weight `v_ij` for
/// every finite entry.
pub fn envelope_digraph(v: &PointConfig) -> WeightedDigraph {
    let d = v.d();
    let arcs = v
        .matrix()
        .entries()
        .filter_map(|(i, j, w)| w.finite().map(|w| (i, d + j, w.clone())));
    WeightedDigraph::from_arcs(d + v.n(), arcs).expect("arcs are in range")
}

fn check_support(v: &PointConfig, g: &BipartiteGraph) -> Result<()> {
    if g.d != v.d() || g.n != v.n() {
        return Err(Error::Shape(format!(
            "graph on [{}]x[{}] for a {}x{} matrix",
            g.d,
            g.n,
            v.d(),
            v.n()
        )));
    }
    if let Some(&(i, j)) = g.arcs.iter().find(|&&(i, j)| v.get(i, j).is_infinite()) {
        return Err(Error::Domain(format!(
            "arc ({},{}) has infinite weight",
            i + 1,
            j + 1
        )));
    }
    Ok(())
}

/// `W#G` for the envelope digraph: every arc of `G` also gets its reverse arc
/// `d + j -> i` of weight `-v_ij`. Its polyhedron is the face `F_G`.
pub fn face_digraph(v: &PointConfig, g: &BipartiteGraph) -> Result<WeightedDigraph> {
    check_support(v, g)?;
    let mut w = envelope_digraph(v);
    for &(i, j) in &g.arcs {
        let neg = v.get(i, j).neg_finite().expect("checked finite");
        w.set_weight(v.d() + j, i, neg);
    }
    Ok(w)
}

/// Arcs of `B(V)` lying on a zero-weight cycle of the face digraph, given its
/// Kleene star.
fn zero_cycle_arcs(v: &PointConfig, star: &TropicalMatrix) -> BTreeSet<(usize, usize)> {
    let d = v.d();
    v.support()
        .arcs
        .into_iter()
        .filter(|&(i, j)| {
            let back = star.get(d + j, i);
            v.get(i, j).otimes(back) == TropicalValue::zero()
        })
        .collect()
}

/// Whether `G` is the full set of arcs tight on the relative interior of `F_G`.
pub fn is_covector_graph(v: &PointConfig, g: &BipartiteGraph) -> Result<bool> {
    let w = face_digraph(v, g)?;
    if wdp::detect_negative_cycle(&w).is_some() {
        return Ok(false);
    }
    let star = wdp::kleene_star(&w)?;
    Ok(zero_cycle_arcs(v, &star) == g.arcs)
}

/// The least covector graph containing `G`.
///
/// The added arcs already lie on zero cycles, so they do not change the face
/// and one pass reaches the fixed point.
pub fn covector_closure(v: &PointConfig, g: &BipartiteGraph) -> Result<CovectorGraph> {
    let w = face_digraph(v, g)?;
    if let Some(cycle) = wdp::detect_negative_cycle(&w) {
        return Err(Error::EmptyCell { cycle });
    }
    let star = wdp::kleene_star(&w)?;
    Ok(BipartiteGraph {
        d: v.d(),
        n: v.n(),
        arcs: zero_cycle_arcs(v, &star),
    })
}

/// Dimensions attached to a covector graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CellDimension {
    /// Number of weak components on all `d + n` nodes: the dimension of the
    /// envelope face `F_G`.
    pub face: usize,
    /// Dimension of the projection `X_G ⊆ Q^d`: isolated column nodes do not
    /// survive the projection.
    pub cell: usize,
}

impl CellDimension {
    /// Dimension of `X_G` in the projective torus, modulo `𝟙`.
    pub fn projective(&self) -> usize {
        self.cell - 1
    }
}

pub fn cell_dimension(v: &PointConfig, g: &CovectorGraph) -> Result<CellDimension> {
    if !is_covector_graph(v, g)? {
        return Err(Error::Domain(format!("{g} is not a covector graph")));
    }
    let face = g.weak_components().len();
    Ok(CellDimension {
        face,
        cell: face - g.isolated_columns().len(),
    })
}

/// `V ⊙ V[G]`, where `V[G]` is `n × d` with entry `-v_ij` at `(j, i)` for each
/// arc of `G`. Its polyhedron is the projection of `F_G` to the row
/// coordinates.
pub fn face_projection_matrix(v: &PointConfig, g: &BipartiteGraph) -> Result<TropicalMatrix> {
    let w = face_digraph(v, g)?;
    if let Some(cycle) = wdp::detect_negative_cycle(&w) {
        return Err(Error::EmptyCell { cycle });
    }
    let mut vg = TropicalMatrix::filled(v.n(), v.d(), TropicalValue::Infinity)?;
    for &(i, j) in &g.arcs {
        vg.set(j, i, v.get(i, j).neg_finite().expect("checked finite"));
    }
    trop_mat_mul(v.matrix(), &vg)
}

/// A point in the relative interior of the cell `X_G ⊆ Q^d`.
pub fn cell_interior_point(v: &PointConfig, g: &BipartiteGraph) -> Result<Vec<BigRational>> {
    let w = face_digraph(v, g)?;
    if let Some(cycle) = wdp::detect_negative_cycle(&w) {
        return Err(Error::EmptyCell { cycle });
    }
    let mut x = wdp::relative_interior_point(&w)?;
    x.truncate(v.d());
    Ok(x)
}

fn is_feasible(v: &PointConfig, g: &BipartiteGraph) -> Result<bool> {
    Ok(wdp::detect_negative_cycle(&face_digraph(v, g)?).is_none())
}

/// All covector graphs without isolated column nodes, that is, the cells of
/// the covector decomposition of `Q^d`, in canonical order.
///
/// Full-dimensional cells are the selections of one finite row per column
/// that are covector graphs. Every other cell is an intersection of those, and
/// the intersection of the cells of `G` and `H` is the cell of the closure of
/// `G ∪ H` when that is feasible.
pub fn enumerate_covector_graphs(v: &PointConfig, limits: &Limits) -> Result<Vec<CovectorGraph>> {
    let supports: Vec<Vec<usize>> = (0..v.n()).map(|j| v.column_support(j)).collect();
    let candidates = supports
        .iter()
        .fold(1u64, |acc, s| acc.saturating_mul(s.len() as u64));
    if candidates > limits.max_cell_candidates {
        return Err(Error::capability(
            "degree-one column selections",
            candidates,
            limits.max_cell_candidates,
        ));
    }
    let mut maximal = BTreeSet::new();
    let mut choice = vec![0usize; v.n()];
    loop {
        let g = BipartiteGraph {
            d: v.d(),
            n: v.n(),
            arcs: choice
                .iter()
                .enumerate()
                .map(|(j, &c)| (supports[j][c], j))
                .collect(),
        };
        // a selection spans a full-dimensional cell exactly when it is closed
        if is_feasible(v, &g)? && covector_closure(v, &g)? == g {
            maximal.insert(g);
        }
        if !advance(&mut choice, &supports) {
            break;
        }
    }
    let maximal: Vec<CovectorGraph> = maximal.into_iter().collect();
    let mut cells: BTreeSet<CovectorGraph> = maximal.iter().cloned().collect();
    let mut queue: VecDeque<CovectorGraph> = maximal.iter().cloned().collect();
    while let Some(c) = queue.pop_front() {
        for m in &maximal {
            if m.is_subgraph_of(&c) {
                continue;
            }
            let u = c.union(m);
            if cells.contains(&u) || !is_feasible(v, &u)? {
                continue;
            }
            let closed = covector_closure(v, &u)?;
            if cells.insert(closed.clone()) {
                queue.push_back(closed);
            }
        }
    }
    Ok(cells.into_iter().collect())
}

fn advance(choice: &mut [usize], supports: &[Vec<usize>]) -> bool {
    for j in (0..choice.len()).rev() {
        choice[j] += 1;
        if choice[j] < supports[j].len() {
            return true;
        }
        choice[j] = 0;
    }
    false
}

/// A vertex of the envelope modulo `𝟙`, with its covector graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnvelopeVertex {
    pub graph: CovectorGraph,
    /// `(y; z)` normalised so that `y_1 = 0`.
    pub point: Vec<BigRational>,
}

/// The vertices of the envelope modulo `𝟙`: faces whose only freedom is the
/// translation along `𝟙`. There are none when `B(V)` is disconnected.
pub fn envelope_vertices(v: &PointConfig, limits: &Limits) -> Result<Vec<EnvelopeVertex>> {
    let mut out = Vec::new();
    for g in enumerate_covector_graphs(v, limits)? {
        if g.weak_components().len() != 1 {
            continue;
        }
        let mut point = wdp::relative_interior_point(&face_digraph(v, &g)?)?;
        let shift = point[0].clone();
        for p in &mut point {
            *p -= &shift;
        }
        debug_assert!(point[0].is_zero());
        out.push(EnvelopeVertex { graph: g, point });
    }
    Ok(out)
}
