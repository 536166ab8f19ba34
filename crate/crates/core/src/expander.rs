//! Regular `d`-rigidity expanders.
//!
//! The vertex set is split into parts `A_1..A_d`, each made of `d` atomic
//! blocks `B_{i,1}..B_{i,d}` of `2n` vertices, so `|V| = 2d²n`. Every
//! induced graph `G[A_i]` is a copy of the block `H_n` with its degree-3
//! vertices on `B_{i,i}`; every crossing graph `G(A_i, A_j)` is a copy of
//! `H_{2n}` with one side in each part and its degree-3 vertices on
//! `B_{i,j} ∪ B_{j,i}`. Each vertex then has degree `2d + 1`. Extra degree
//! comes from disjoint perfect matchings of the complement, which only adds
//! edges and so never lowers a certified bound.
//!
//! `H_m` is a random cubic bipartite graph on `m + m` vertices whose edges
//! are subdivided by pairs of new vertices, `(d - 1) m` pairs in total,
//! dealt round-robin over the edges in lexicographic order.

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{partition_bound, partition_bound_2d, BoundReport};
use crate::error::{Error, Result};
use crate::graph::subdivide_by_index;
use crate::graph::{
    add_disjoint_matchings, random_regular_bipartite, Graph, VertexPartition,
};
use crate::seed::{derive_seed, role};
use crate::spectra::algebraic_connectivity;

/// A subdivided cubic bipartite block.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockH {
    pub graph: Graph,
    /// Side (0 or 1) of every vertex in the bipartition.
    pub side: Vec<u8>,
}

impl BlockH {
    /// Vertices of the given side and degree, in increasing order.
    pub fn vertices(&self, side: u8, degree: usize) -> Vec<usize> {
        let deg = self.graph.degrees();
        (0..self.graph.num_vertices())
            .filter(|&v| self.side[v] == side && deg[v] == degree)
            .collect()
    }
}

/// Number of cubic bipartite draws compared per block.
pub const CUBIC_CANDIDATES: usize = 16;

/// The draw with the largest algebraic connectivity among
/// [`CUBIC_CANDIDATES`] random cubic bipartite graphs; earliest wins ties.
fn best_cubic(n3: usize, seed: u64) -> Result<Graph> {
    let mut best: Option<(f64, Graph)> = None;
    for attempt in 0..CUBIC_CANDIDATES {
        let s = match attempt {
            0 => seed,
            a => derive_seed(seed, &[role::ATTEMPT, a as u64]),
        };
        let g = random_regular_bipartite(n3, 3, s)?;
        let a = algebraic_connectivity(&g).finite().unwrap_or(0.0);
        if a > 0.0 && best.as_ref().map_or(true, |(b, _)| a > *b) {
            best = Some((a, g));
        }
    }
    best.map(|(_, g)| g).ok_or_else(|| Error::GenerationFailed {
        attempts: CUBIC_CANDIDATES,
        reason: "every cubic bipartite draw was disconnected".into(),
    })
}

/// Builds `H_m` for `m = n_side_deg3` in dimension `d`.
///
/// The cubic base is the best connected one of several seeded draws.
pub fn build_block_h(n_side_deg3: usize, d: usize, seed: u64) -> Result<BlockH> {
    let n3 = n_side_deg3;
    if n3 < 3 || d == 0 {
        return Err(Error::InvalidArgument(format!(
            "block needs at least 3 cubic vertices per side and d >= 1, got {n3} and d = {d}"
        )));
    }
    let cubic = best_cubic(n3, seed)?;

    let num_edges = cubic.num_edges();
    let mut per_edge = vec![0usize; num_edges];
    for pair in 0..(d - 1) * n3 {
        per_edge[pair % num_edges] += 2;
    }
    let graph = subdivide_by_index(&cubic, &per_edge);

    let mut side = vec![0u8; graph.num_vertices()];
    side[n3..2 * n3].fill(1);
    // Internal vertices of each path alternate sides starting next to the
    // left endpoint, so an even count keeps the bipartition.
    let mut next = 2 * n3;
    for &count in &per_edge {
        for pos in 0..count {
            side[next] = if pos % 2 == 0 { 1 } else { 0 };
            next += 1;
        }
    }
    Ok(BlockH { graph, side })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExpanderBlueprint {
    pub d: usize,
    pub n: usize,
    pub k: usize,
    pub seed: u64,
    /// Atomic block `(i, j)` of every vertex: `v ∈ B_{i,j} ⊂ A_i`.
    pub block_map: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Expander {
    pub graph: Graph,
    pub partition: VertexPartition,
    pub blueprint: ExpanderBlueprint,
}

struct Layout {
    d: usize,
    block: usize,
}

impl Layout {
    fn vertex(&self, i: usize, j: usize, slot: usize) -> usize {
        (i * self.d + j) * self.block + slot
    }

    /// Places `deg3` on `B_{i,home}` and `deg2` on the other blocks of `A_i`
    /// in block order, writing the global label of each block vertex.
    fn place(&self, map: &mut [usize], i: usize, home: usize, deg3: &[usize], deg2: &[usize]) {
        debug_assert_eq!(deg3.len(), self.block);
        debug_assert_eq!(deg2.len(), (self.d - 1) * self.block);
        for (slot, &h) in deg3.iter().enumerate() {
            map[h] = self.vertex(i, home, slot);
        }
        let targets = (0..self.d)
            .filter(|&j| j != home)
            .flat_map(|j| (0..self.block).map(move |slot| (j, slot)));
        for (&h, (j, slot)) in deg2.iter().zip(targets) {
            map[h] = self.vertex(i, j, slot);
        }
    }
}

/// The `(2d + 1)`-regular expander on `2d²n` vertices.
pub fn build_expander(n: usize, d: usize, seed: u64) -> Result<Expander> {
    if n < 3 || d == 0 {
        return Err(Error::InvalidArgument(format!(
            "expander needs n >= 3 and d >= 1, got n = {n}, d = {d}"
        )));
    }
    let layout = Layout { d, block: 2 * n };
    let num_vertices = 2 * d * d * n;

    let mut roles: Vec<(usize, usize)> = (0..d).map(|i| (i, i)).collect();
    roles.extend((0..d).flat_map(|i| (i + 1..d).map(move |j| (i, j))));

    let pieces = roles
        .par_iter()
        .map(|&(i, j)| -> Result<Vec<(usize, usize)>> {
            let (h, map) = if i == j {
                let h = build_block_h(n, d, derive_seed(seed, &[role::INDUCED_BLOCK, i as u64]))?;
                let mut deg3 = h.vertices(0, 3);
                deg3.extend(h.vertices(1, 3));
                deg3.sort_unstable();
                let mut deg2 = h.vertices(0, 2);
                deg2.extend(h.vertices(1, 2));
                deg2.sort_unstable();
                let mut map = vec![usize::MAX; h.graph.num_vertices()];
                layout.place(&mut map, i, i, &deg3, &deg2);
                (h, map)
            } else {
                let labels = [role::CROSSING_BLOCK, i as u64, j as u64];
                let h = build_block_h(2 * n, d, derive_seed(seed, &labels))?;
                let mut map = vec![usize::MAX; h.graph.num_vertices()];
                layout.place(&mut map, i, j, &h.vertices(0, 3), &h.vertices(0, 2));
                layout.place(&mut map, j, i, &h.vertices(1, 3), &h.vertices(1, 2));
                (h, map)
            };
            if map.iter().any(|&v| v == usize::MAX) {
                return Err(Error::Construction(format!(
                    "block ({i}, {j}) has an unexpected degree profile"
                )));
            }
            Ok(h.graph.edges().iter().map(|&(u, v)| (map[u], map[v])).collect())
        })
        .collect::<Result<Vec<_>>>()?;

    let graph = Graph::new(num_vertices, pieces.into_iter().flatten())
        .map_err(|e| Error::Construction(format!("assembled graph is not simple: {e}")))?;
    if let Some(v) = graph.degrees().iter().position(|&deg| deg != 2 * d + 1) {
        return Err(Error::Construction(format!(
            "vertex {v} has degree {} instead of {}",
            graph.degrees()[v],
            2 * d + 1
        )));
    }

    let block_map: Vec<(usize, usize)> = (0..num_vertices)
        .map(|v| {
            let b = v / layout.block;
            (b / d, b % d)
        })
        .collect();
    let labels: Vec<usize> = block_map.iter().map(|&(i, _)| i).collect();
    let partition = VertexPartition::from_labels(&labels, d)?;
    Ok(Expander {
        graph,
        partition,
        blueprint: ExpanderBlueprint {
            d,
            n,
            k: 2 * d + 1,
            seed,
            block_map,
        },
    })
}

/// [`build_expander`] plus `k - 2d - 1` disjoint perfect matchings of the
/// complement. The partition is unchanged.
pub fn build_k_regular(n: usize, d: usize, k: usize, seed: u64) -> Result<Expander> {
    if k < 2 * d + 1 {
        return Err(Error::InvalidArgument(format!(
            "degree k = {k} is below the floor 2d + 1 = {}",
            2 * d + 1
        )));
    }
    let mut expander = build_expander(n, d, seed)?;
    let extra = k - (2 * d + 1);
    if extra > 0 {
        expander.graph =
            add_disjoint_matchings(&expander.graph, extra, derive_seed(seed, &[role::MATCHINGS]))?;
        expander.blueprint.k = k;
    }
    Ok(expander)
}

/// Certified lower bound on `a_d` from the expander's own partition
/// (un-halved two-part bound when `d = 2`).
pub fn certify(g: &Graph, partition: &VertexPartition, d: usize) -> Result<BoundReport> {
    if d == 2 {
        partition_bound_2d(g, partition)
    } else {
        partition_bound(g, partition, d)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepPoint {
    pub n: usize,
    pub num_vertices: usize,
    pub certified: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Calibration {
    pub d: usize,
    pub k: usize,
    pub seed: u64,
    pub points: Vec<SweepPoint>,
    /// Empirical family constant: the smallest certified value in the sweep.
    pub min_certified: f64,
    pub max_certified: f64,
}

/// Builds and certifies one family member per `n`.
pub fn calibrate(d: usize, k: usize, ns: &[usize], seed: u64) -> Result<Calibration> {
    let points = ns
        .par_iter()
        .map(|&n| {
            let e = build_k_regular(n, d, k, seed)?;
            let report = certify(&e.graph, &e.partition, d)?;
            Ok(SweepPoint {
                n,
                num_vertices: e.graph.num_vertices(),
                certified: report.value,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let min_certified = points.iter().map(|p| p.certified).fold(f64::INFINITY, f64::min);
    let max_certified = points.iter().map(|p| p.certified).fold(0.0, f64::max);
    Ok(Calibration {
        d,
        k,
        seed,
        points,
        min_certified,
        max_certified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_without_subdivision_in_one_dimension() {
        let h = build_block_h(5, 1, 3).unwrap();
        assert_eq!(h.graph.num_vertices(), 10);
        assert!(h.graph.degrees().iter().all(|&deg| deg == 3));
    }

    #[test]
    fn block_round_robin_for_d2() {
        let h = build_block_h(4, 2, 8).unwrap();
        assert_eq!(h.graph.num_vertices(), 8 + 8);
        assert_eq!(h.graph.num_edges(), 12 + 8);
        for side in [0, 1] {
            assert_eq!(h.vertices(side, 3).len(), 4);
            assert_eq!(h.vertices(side, 2).len(), 4);
        }
        // first four edges carry two new vertices each, the rest none
        assert_eq!(h.graph.num_vertices() - 8, 8);
    }

    #[test]
    fn block_for_d4_splits_every_edge() {
        let h = build_block_h(3, 4, 1).unwrap();
        assert_eq!(h.graph.num_vertices(), 6 + 18);
        assert_eq!(h.graph.num_edges(), 9 * 3);
        for side in [0, 1] {
            assert_eq!(h.vertices(side, 3).len(), 3);
            assert_eq!(h.vertices(side, 2).len(), 9);
        }
    }

    #[test]
    fn block_sides_form_a_bipartition() {
        let h = build_block_h(7, 3, 21).unwrap();
        assert!(h.graph.is_connected());
        for &(u, v) in h.graph.edges() {
            assert_ne!(h.side[u], h.side[v]);
        }
    }

    #[test]
    fn expander_sizes() {
        let e = build_expander(3, 1, 0).unwrap();
        assert_eq!(e.graph.num_vertices(), 6);
        assert!(e.graph.degrees().iter().all(|&deg| deg == 3));
        let e = build_expander(3, 2, 0).unwrap();
        assert_eq!(e.graph.num_vertices(), 24);
        assert_eq!(e.graph.num_edges(), 60);
        let e = build_expander(3, 3, 0).unwrap();
        assert_eq!(e.graph.num_vertices(), 54);
        assert!(e.graph.degrees().iter().all(|&deg| deg == 7));
        assert_eq!(e.partition.part_sizes(), vec![18, 18, 18]);
    }

    #[test]
    fn k_regular_floor_and_matchings() {
        assert!(build_k_regular(4, 2, 4, 0).is_err());
        let base = build_expander(4, 2, 5).unwrap();
        assert_eq!(build_k_regular(4, 2, 5, 5).unwrap(), base);
        let six = build_k_regular(4, 2, 6, 5).unwrap();
        assert!(six.graph.degrees().iter().all(|&deg| deg == 6));
        let seven = build_k_regular(4, 2, 7, 5).unwrap();
        assert_eq!(seven.graph.num_vertices(), 32);
        assert!(seven.graph.degrees().iter().all(|&deg| deg == 7));
        assert_eq!(seven.partition, base.partition);
    }

    #[test]
    fn certification_is_positive_and_breaks_when_disconnected() {
        let e = build_expander(3, 2, 2).unwrap();
        let report = certify(&e.graph, &e.partition, 2).unwrap();
        assert!(report.value > 0.0);
        let crossing: Vec<(usize, usize)> = e
            .graph
            .edges()
            .iter()
            .copied()
            .filter(|&(u, v)| e.partition.part_of(u) != e.partition.part_of(v))
            .collect();
        let mut g = e.graph.clone();
        for &(u, v) in &crossing {
            if u == crossing[0].0 || v == crossing[0].0 {
                g = g.without_edge(u, v).unwrap();
            }
        }
        assert_eq!(certify(&g, &e.partition, 2).unwrap().value, 0.0);
    }
}
