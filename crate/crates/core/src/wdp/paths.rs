use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{FaceSpec, NodePartition, WeightedDigraph};
use crate::tropical::{TropicalMatrix, TropicalValue};
use crate::{Error, Result};

/// Returns a directed cycle of negative total weight, as a node sequence
/// starting at its least node and repeating it at the end, or `None` when
/// `Q(W)` is nonempty.
pub fn detect_negative_cycle(w: &WeightedDigraph) -> Option<Vec<usize>> {
    let k = w.node_count();
    // Bellman-Ford from a virtual source joined to every node by a 0-arc.
    let mut dist = vec![BigRational::zero(); k];
    let mut pred: Vec<Option<usize>> = vec![None; k];
    let mut last = None;
    for _ in 0..=k {
        last = None;
        for (i, j, wij) in w.arcs() {
            let cand = &dist[i] + wij;
            if cand < dist[j] {
                dist[j] = cand;
                pred[j] = Some(i);
                last = Some(j);
            }
        }
        last?;
    }
    let mut v = last?;
    for _ in 0..=k {
        v = pred[v].expect("relaxed node has a predecessor");
    }
    let mut cycle = vec![v];
    let mut u = pred[v].expect("cycle node has a predecessor");
    while u != v {
        cycle.push(u);
        u = pred[u].expect("cycle node has a predecessor");
    }
    cycle.reverse();
    let start = (0..cycle.len()).min_by_key(|&p| cycle[p]).expect("nonempty");
    cycle.rotate_left(start);
    cycle.push(cycle[0]);
    Some(cycle)
}

fn infeasible(w: &WeightedDigraph) -> Result<()> {
    match detect_negative_cycle(w) {
        Some(cycle) => Err(Error::Infeasible { cycle }),
        None => Ok(()),
    }
}

/// The shortest-path matrix `W*`, computed by Bellman-Ford from every node.
pub fn kleene_star(w: &WeightedDigraph) -> Result<TropicalMatrix> {
    infeasible(w)?;
    let k = w.node_count();
    if k == 0 {
        return Err(Error::Shape("empty digraph".into()));
    }
    let mut star = TropicalMatrix::filled(k, k, TropicalValue::Infinity)?;
    let arcs: Vec<_> = w.arcs().collect();
    for s in 0..k {
        let mut dist: Vec<Option<BigRational>> = vec![None; k];
        dist[s] = Some(BigRational::zero());
        for _ in 0..k {
            let mut changed = false;
            for &(i, j, wij) in &arcs {
                let Some(di) = &dist[i] else { continue };
                let cand = di + wij;
                if dist[j].as_ref().is_none_or(|dj| &cand < dj) {
                    dist[j] = Some(cand);
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        for (t, d) in dist.into_iter().enumerate() {
            if let Some(d) = d {
                star.set(s, t, TropicalValue::Finite(d));
            }
        }
    }
    Ok(star)
}

/// Classes of the relation `w*_ij = -w*_ji < ∞`. Their number is `dim Q(W)`.
pub fn equality_partition(w: &WeightedDigraph) -> Result<NodePartition> {
    let star = kleene_star(w)?;
    Ok(equality_partition_of_star(&star))
}

pub(crate) fn equality_partition_of_star(star: &TropicalMatrix) -> NodePartition {
    let k = star.rows();
    let mut pairs = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            if let (Some(a), Some(b)) = (star.get(i, j).finite(), star.get(j, i).finite()) {
                if (a + b).is_zero() {
                    pairs.push((i, j));
                }
            }
        }
    }
    NodePartition::canonical(k, crate::graph::weak_components(k, pairs))
}

/// `W#G`: the digraph whose polyhedron is the face `F_G` of `Q(W)` on which
/// every arc of `G` is tight.
///
/// For each `(i,j) ∈ G` the reverse weight becomes `min(w_ji, -w_ij)`. When
/// `w_ji >= -w_ij` this is the plain replacement by `-w_ij`; otherwise `Q(W)`
/// already has a negative 2-cycle and keeping it preserves that.
pub fn face(w: &WeightedDigraph, g: &FaceSpec) -> Result<WeightedDigraph> {
    let mut out = w.clone();
    for &(i, j) in &g.arcs {
        let Some(wij) = w.arc_weight(i, j) else {
            return Err(Error::Domain(format!(
                "face arc ({},{}) is not an arc of the digraph",
                i + 1,
                j + 1
            )));
        };
        if g.arcs.contains(&(j, i)) {
            let wji = w.arc_weight(j, i).expect("checked as a face arc");
            if !(wij + wji).is_zero() {
                return Err(Error::InconsistentFace {
                    i: i.min(j),
                    j: i.max(j),
                });
            }
        }
        let neg = TropicalValue::Finite(-wij);
        let current = out.weight(j, i);
        out.set_weight(j, i, current.oplus(&neg));
    }
    Ok(out)
}

/// `U ⊕ W`, whose polyhedron is `Q(U) ∩ Q(W)`.
pub fn intersect(u: &WeightedDigraph, w: &WeightedDigraph) -> Result<WeightedDigraph> {
    if u.node_count() != w.node_count() {
        return Err(Error::Shape(format!(
            "cannot intersect digraphs on {} and {} nodes",
            u.node_count(),
            w.node_count()
        )));
    }
    let mut out = u.clone();
    for (i, j, wij) in w.arcs() {
        let merged = out.weight(i, j).oplus(&TropicalValue::Finite(wij.clone()));
        out.set_weight(i, j, merged);
    }
    Ok(out)
}

/// `W*/I`: the Kleene star with the rows and columns in `I` deleted, whose
/// polyhedron is the projection of `Q(W)` forgetting the coordinates in `I`.
/// Remaining nodes keep their relative order.
pub fn project(w: &WeightedDigraph, removed: &BTreeSet<usize>) -> Result<WeightedDigraph> {
    let k = w.node_count();
    if let Some(&bad) = removed.iter().find(|&&v| v >= k) {
        return Err(Error::Shape(format!("node {} out of range", bad + 1)));
    }
    if removed.len() == k {
        return Err(Error::Domain("cannot project out every coordinate".into()));
    }
    let star = kleene_star(w)?;
    let keep: Vec<usize> = (0..k).filter(|v| !removed.contains(v)).collect();
    WeightedDigraph::from_matrix(&star.submatrix(&keep, &keep)?)
}

/// Membership verdict for a point, with the arcs attained with equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub member: bool,
    pub tight: BTreeSet<(usize, usize)>,
}

pub fn membership(w: &WeightedDigraph, x: &[BigRational]) -> Result<Membership> {
    if x.len() != w.node_count() {
        return Err(Error::Shape(format!(
            "point of length {} for a digraph on {} nodes",
            x.len(),
            w.node_count()
        )));
    }
    let mut member = true;
    let mut tight = BTreeSet::new();
    for (i, j, wij) in w.arcs() {
        let lhs = &x[i] - &x[j];
        if &lhs > wij {
            member = false;
        } else if &lhs == wij {
            tight.insert((i, j));
        }
    }
    Ok(Membership { member, tight })
}

/// A point in the relative interior of `Q(W)`.
///
/// With `W*` the Kleene star, `x0_i = min_j w*_ij` lies in `Q(W)`. For each `j`
/// the point `p_j = min(W*_{·j}, x0 + M)` lies in `Q(W)` as well, because
/// `Q(W)` is closed under translation and entrywise minimum. For
/// `M = 2B + 1`, with `B` bounding the finite entries of `W*`, every
/// inequality not forced to equality is strict at `p_i` or `p_j`, so the
/// average of the `p_j` is relatively interior.
pub fn relative_interior_point(w: &WeightedDigraph) -> Result<Vec<BigRational>> {
    let star = kleene_star(w)?;
    let k = star.rows();
    let bound = star
        .entries()
        .filter_map(|(_, _, v)| v.finite().map(Signed::abs))
        .max()
        .unwrap_or_else(BigRational::zero);
    let m = &bound + &bound + BigRational::from_integer(1.into());
    let x0: Vec<BigRational> = (0..k)
        .map(|i| {
            star.row(i)
                .iter()
                .filter_map(TropicalValue::finite)
                .min()
                .cloned()
                .expect("diagonal of a Kleene star is 0")
        })
        .collect();
    let mut sum = vec![BigRational::zero(); k];
    for j in 0..k {
        for (i, s) in sum.iter_mut().enumerate() {
            let cap = &x0[i] + &m;
            let p = match star.get(i, j).finite() {
                Some(v) if *v < cap => v.clone(),
                _ => cap,
            };
            *s += p;
        }
    }
    let kk = BigRational::from_integer(k.into());
    Ok(sum.into_iter().map(|s| s / &kk).collect())
}
