//! Simple undirected graphs, vertex partitions and the operations used to
//! build and slice them.
//!
//! Vertices are the indices `0..n`. Edges are stored as normalized pairs
//! `(u, v)` with `u < v`, sorted lexicographically. That order is the column
//! order of every rigidity matrix and the row order of every lower stiffness
//! matrix built from the graph.

mod families;
mod random;
mod subdivision;

pub use families::{balanced_partition, make_complete, make_gen_cycle, make_gen_path, make_star};
pub use random::{add_disjoint_matchings, random_regular_bipartite, DEFAULT_RETRY_BUDGET};
pub use subdivision::{iterated_subdivision, subdivide};
pub(crate) use subdivision::subdivide_by_index;

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicates and out-of-range
    /// endpoints. Edge orientation in the input is irrelevant.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut normalized = Vec::new();
        for (a, b) in edges {
            for vertex in [a, b] {
                if vertex >= n {
                    return Err(Error::VertexOutOfRange { vertex, n });
                }
            }
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            normalized.push((a.min(b), a.max(b)));
        }
        normalized.sort_unstable();
        if let Some(w) = normalized.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(Self {
            n,
            edges: normalized,
        })
    }

    pub fn empty(n: usize) -> Self {
        Self {
            n,
            edges: Vec::new(),
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Edges in lexicographic order, each with `u < v`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Position of `{u, v}` in [`Graph::edges`].
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_index(u, v).is_some()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn min_degree(&self) -> usize {
        self.degrees().into_iter().min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// Sorted adjacency lists.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// Connected-component label per vertex, labels in order of first vertex.
    pub fn components(&self) -> Vec<usize> {
        let adj = self.adjacency();
        let mut label = vec![usize::MAX; self.n];
        let mut next = 0;
        for start in 0..self.n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = next;
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in &adj[u] {
                    if label[w] == usize::MAX {
                        label[w] = next;
                        queue.push_back(w);
                    }
                }
            }
            next += 1;
        }
        label
    }

    /// The empty graph and the one-vertex graph count as connected.
    pub fn is_connected(&self) -> bool {
        self.components().iter().all(|&c| c == 0)
    }

    /// Two-colouring if the graph is bipartite, `None` otherwise.
    pub fn two_coloring(&self) -> Option<Vec<bool>> {
        let adj = self.adjacency();
        let mut color: Vec<Option<bool>> = vec![None; self.n];
        for start in 0..self.n {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].unwrap();
                for &w in &adj[u] {
                    match color[w] {
                        None => {
                            color[w] = Some(!cu);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == cu => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(Option::unwrap).collect())
    }

    pub fn without_edge(&self, u: usize, v: usize) -> Result<Self> {
        let idx = self.edge_index(u, v).ok_or(Error::UnknownEdge(u, v))?;
        let mut edges = self.edges.clone();
        edges.remove(idx);
        Ok(Self { n: self.n, edges })
    }

    /// Adds edges to a copy of the graph; they must be new.
    pub fn with_edges<I>(&self, extra: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::new(self.n, self.edges.iter().copied().chain(extra))
    }

    /// Subgraph induced on `vertices`, relabeled `0..|A|` in increasing
    /// original order. The second value maps new labels to original ones.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<(Self, Vec<usize>)> {
        let (members, relabel) = self.relabeling(vertices)?;
        let edges = self
            .edges
            .iter()
            .filter_map(|&(u, v)| Some((relabel[u]?, relabel[v]?)));
        let g = Self::new(members.len(), edges)?;
        Ok((g, members))
    }

    /// The crossing graph `G(A, B)`: vertex set `A ∪ B`, edges with exactly one
    /// endpoint in each side. Relabeled like [`Graph::induced_subgraph`].
    pub fn bipartite_subgraph(&self, a: &[usize], b: &[usize]) -> Result<(Self, Vec<usize>)> {
        if a.is_empty() || b.is_empty() {
            return Err(Error::InvalidPartition(
                "crossing subgraph needs two nonempty sides".into(),
            ));
        }
        let mut side = vec![0u8; self.n];
        for (tag, set) in [(1u8, a), (2u8, b)] {
            for &v in set {
                if v >= self.n {
                    return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
                }
                if side[v] != 0 && side[v] != tag {
                    return Err(Error::InvalidPartition(format!(
                        "vertex {v} lies on both sides"
                    )));
                }
                side[v] = tag;
            }
        }
        let union: Vec<usize> = a.iter().chain(b).copied().collect();
        let (members, relabel) = self.relabeling(&union)?;
        let edges = self.edges.iter().filter_map(|&(u, v)| {
            let crossing = side[u] != 0 && side[v] != 0 && side[u] != side[v];
            crossing.then(|| (relabel[u].unwrap(), relabel[v].unwrap()))
        });
        let g = Self::new(members.len(), edges)?;
        Ok((g, members))
    }

    fn relabeling(&self, vertices: &[usize]) -> Result<(Vec<usize>, Vec<Option<usize>>)> {
        let mut members = BTreeSet::new();
        for &v in vertices {
            if v >= self.n {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
            }
            members.insert(v);
        }
        let members: Vec<usize> = members.into_iter().collect();
        let mut relabel = vec![None; self.n];
        for (new, &old) in members.iter().enumerate() {
            relabel[old] = Some(new);
        }
        Ok((members, relabel))
    }
}

/// An ordered partition `V = A_1 ∪ … ∪ A_d` into nonempty parts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PartitionRepr", into = "PartitionRepr")]
pub struct VertexPartition {
    n: usize,
    parts: Vec<Vec<usize>>,
    part_of: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct PartitionRepr {
    n: usize,
    parts: Vec<Vec<usize>>,
}

impl TryFrom<PartitionRepr> for VertexPartition {
    type Error = Error;

    fn try_from(repr: PartitionRepr) -> Result<Self> {
        Self::new(repr.n, repr.parts)
    }
}

impl From<VertexPartition> for PartitionRepr {
    fn from(p: VertexPartition) -> Self {
        Self {
            n: p.n,
            parts: p.parts,
        }
    }
}

impl VertexPartition {
    /// Validates that `parts` are nonempty, disjoint and cover `0..n`.
    /// Each part is stored sorted; the order of parts is kept.
    pub fn new(n: usize, parts: Vec<Vec<usize>>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidPartition("no parts".into()));
        }
        let mut part_of = vec![usize::MAX; n];
        let mut sorted_parts = Vec::with_capacity(parts.len());
        for (i, mut part) in parts.into_iter().enumerate() {
            if part.is_empty() {
                return Err(Error::InvalidPartition(format!("part {i} is empty")));
            }
            for &v in &part {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                if part_of[v] != usize::MAX {
                    return Err(Error::InvalidPartition(format!(
                        "vertex {v} appears more than once"
                    )));
                }
                part_of[v] = i;
            }
            part.sort_unstable();
            sorted_parts.push(part);
        }
        if let Some(v) = part_of.iter().position(|&p| p == usize::MAX) {
            return Err(Error::InvalidPartition(format!("vertex {v} is not covered")));
        }
        Ok(Self {
            n,
            parts: sorted_parts,
            part_of,
        })
    }

    /// Builds a partition from a per-vertex part label in `0..d`.
    pub fn from_labels(labels: &[usize], d: usize) -> Result<Self> {
        let mut parts = vec![Vec::new(); d];
        for (v, &label) in labels.iter().enumerate() {
            if label >= d {
                return Err(Error::InvalidPartition(format!(
                    "vertex {v} has label {label} but there are {d} parts"
                )));
            }
            parts[label].push(v);
        }
        Self::new(labels.len(), parts)
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn part(&self, i: usize) -> &[usize] {
        &self.parts[i]
    }

    /// Index of the part containing `v`.
    pub fn part_of(&self, v: usize) -> usize {
        self.part_of[v]
    }

    pub fn part_sizes(&self) -> Vec<usize> {
        self.parts.iter().map(Vec::len).collect()
    }

    pub(crate) fn check_graph(&self, g: &Graph) -> Result<()> {
        if self.n != g.num_vertices() {
            return Err(Error::DimensionMismatch {
                expected: g.num_vertices(),
                found: self.n,
            });
        }
        Ok(())
    }
}
