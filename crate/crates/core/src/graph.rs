//! Unweighted digraph helpers shared by the polyhedral modules.

use petgraph::algo::tarjan_scc;
use petgraph::graphmap::DiGraphMap;
use petgraph::unionfind::UnionFind;

fn sort_blocks(mut blocks: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    for b in &mut blocks {
        b.sort_unstable();
    }
    blocks.sort();
    blocks
}

/// Weak components of a digraph on `0..k`, each sorted, ordered by least
/// element. Isolated nodes form singleton components.
pub(crate) fn weak_components(
    k: usize,
    arcs: impl IntoIterator<Item = (usize, usize)>,
) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::<usize>::new(k);
    for (i, j) in arcs {
        uf.union(i, j);
    }
    let labels = uf.into_labeling();
    let mut by_root: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for (v, r) in labels.into_iter().enumerate() {
        by_root.entry(r).or_default().push(v);
    }
    sort_blocks(by_root.into_values().collect())
}

/// Strong components of a digraph on `0..k`, canonically ordered.
pub(crate) fn strong_components(
    k: usize,
    arcs: impl IntoIterator<Item = (usize, usize)>,
) -> Vec<Vec<usize>> {
    let mut g = DiGraphMap::<usize, ()>::new();
    for v in 0..k {
        g.add_node(v);
    }
    for (i, j) in arcs {
        g.add_edge(i, j, ());
    }
    sort_blocks(tarjan_scc(&g))
}

/// Whether the digraph on `0..k` has no directed cycle of length at least two.
pub(crate) fn is_acyclic_ignoring_loops(
    k: usize,
    arcs: impl IntoIterator<Item = (usize, usize)>,
) -> bool {
    let mut succ = vec![Vec::new(); k];
    let mut indeg = vec![0usize; k];
    let mut seen = std::collections::BTreeSet::new();
    for (i, j) in arcs {
        if i != j && seen.insert((i, j)) {
            succ[i].push(j);
            indeg[j] += 1;
        }
    }
    let mut stack: Vec<usize> = (0..k).filter(|&v| indeg[v] == 0).collect();
    let mut removed = 0;
    while let Some(v) = stack.pop() {
        removed += 1;
        for &w in &succ[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                stack.push(w);
            }
        }
    }
    removed == k
}

/// Whether `nodes` induce a weakly connected subgraph. The empty set is not
/// connected.
pub(crate) fn induces_weakly_connected(
    nodes: &[usize],
    arcs: impl IntoIterator<Item = (usize, usize)>,
) -> bool {
    if nodes.is_empty() {
        return false;
    }
    let index: std::collections::BTreeMap<usize, usize> =
        nodes.iter().enumerate().map(|(p, &v)| (v, p)).collect();
    let inner = arcs
        .into_iter()
        .filter_map(|(i, j)| Some((*index.get(&i)?, *index.get(&j)?)));
    weak_components(nodes.len(), inner).len() == 1
}
