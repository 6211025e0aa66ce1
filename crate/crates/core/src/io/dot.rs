use std::fmt::Write;

use crate::covector::TangentDigraph;
use crate::envelope::{BipartiteGraph, PointConfig};
use crate::wdp::WeightedDigraph;

/// `Γ(W)` in DOT, with 1-based node names and weight labels. Loops of weight
/// zero are left out.
pub fn digraph_dot(w: &WeightedDigraph) -> String {
    let mut out = String::from("digraph W {\n  node [shape=circle];\n");
    for v in 1..=w.node_count() {
        writeln!(out, "  {v};").unwrap();
    }
    for (i, j, wij) in w.arcs() {
        if i == j && num_traits::Zero::is_zero(wij) {
            continue;
        }
        let label = crate::tropical::TropicalValue::Finite(wij.clone());
        writeln!(out, "  {} -> {} [label=\"{label}\"];", i + 1, j + 1).unwrap();
    }
    out.push_str("}\n");
    out
}

fn node_ranks(out: &mut String, d: usize, columns: impl Iterator<Item = usize>) {
    out.push_str("  { rank=same;");
    for i in 1..=d {
        write!(out, " r{i} [shape=box, label=\"{i}\"];").unwrap();
    }
    out.push_str(" }\n  { rank=same;");
    for j in columns {
        write!(out, " c{} [shape=circle, label=\"{}\"];", j + 1, j + 1).unwrap();
    }
    out.push_str(" }\n");
}

/// A bipartite graph with the row nodes boxed on top and the column nodes
/// circled below. With `v`, arcs are labelled by the entries of `V`.
pub fn bipartite_dot(g: &BipartiteGraph, v: Option<&PointConfig>) -> String {
    let mut out = String::from("digraph G {\n  rankdir=TB;\n");
    node_ranks(&mut out, g.d, 0..g.n);
    for &(i, j) in &g.arcs {
        write!(out, "  r{} -> c{}", i + 1, j + 1).unwrap();
        if let Some(v) = v {
            write!(out, " [label=\"{}\"]", v.get(i, j)).unwrap();
        }
        out.push_str(";\n");
    }
    out.push_str("}\n");
    out
}

pub fn tangent_dot(t: &TangentDigraph) -> String {
    let mut out = String::from("digraph T {\n  rankdir=TB;\n");
    node_ranks(&mut out, t.d, t.columns.iter().copied());
    for &(i, j) in &t.row_to_column {
        writeln!(out, "  r{} -> c{};", i + 1, j + 1).unwrap();
    }
    for &(i, j) in &t.column_to_row {
        writeln!(out, "  c{} -> r{};", j + 1, i + 1).unwrap();
    }
    out.push_str("}\n");
    out
}
