use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Replaces each edge `{u, v}` (with `u < v`) by a path carrying
/// `counts[{u, v}]` new internal vertices. Missing keys mean zero.
///
/// New vertices are numbered from `n` upward, edge by edge in lexicographic
/// edge order, consecutively along each path from `u` towards `v`.
pub fn subdivide(g: &Graph, counts: &BTreeMap<(usize, usize), usize>) -> Result<Graph> {
    let mut per_edge = vec![0usize; g.num_edges()];
    for (&(a, b), &count) in counts {
        let idx = g.edge_index(a, b).ok_or(Error::UnknownEdge(a, b))?;
        if a > b && counts.contains_key(&(b, a)) {
            return Err(Error::InvalidArgument(format!(
                "edge {{{b}, {a}}} keyed in both orientations"
            )));
        }
        per_edge[idx] = count;
    }
    Ok(subdivide_by_index(g, &per_edge))
}

/// As [`subdivide`], with counts given per edge in [`Graph::edges`] order.
pub(crate) fn subdivide_by_index(g: &Graph, per_edge: &[usize]) -> Graph {
    debug_assert_eq!(per_edge.len(), g.num_edges());
    let total: usize = per_edge.iter().sum();
    let mut next = g.num_vertices();
    let mut edges = Vec::with_capacity(g.num_edges() + total);
    for (&(u, v), &count) in g.edges().iter().zip(per_edge) {
        let mut prev = u;
        for _ in 0..count {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, v));
    }
    Graph::new(next, edges).expect("subdivision of a simple graph is simple")
}

/// `s^k(G)`: `k` rounds of splitting every edge in two.
pub fn iterated_subdivision(g: &Graph, k: usize) -> Graph {
    (0..k).fold(g.clone(), |acc, _| {
        let ones = vec![1; acc.num_edges()];
        subdivide_by_index(&acc, &ones)
    })
}
