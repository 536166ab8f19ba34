//! Random inputs shared by integration tests.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rigidity_core::graph::{Graph, VertexPartition};

/// Random spanning tree plus each remaining pair with probability `density`.
pub fn random_connected<R: Rng>(n: usize, density: f64, rng: &mut R) -> Graph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    for i in 1..n {
        let parent = order[rng.gen_range(0..i)];
        edges.push((order[i], parent));
    }
    let tree = Graph::new(n, edges.clone()).unwrap();
    for u in 0..n {
        for v in u + 1..n {
            if !tree.has_edge(u, v) && rng.gen_bool(density) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

/// Uniform random simple cubic graph on `n` (even) vertices by the pairing
/// model with rejection, conditioned on connectivity.
pub fn random_connected_cubic<R: Rng>(n: usize, rng: &mut R) -> Graph {
    assert!(n >= 4 && n % 2 == 0);
    loop {
        let mut stubs: Vec<usize> = (0..3 * n).map(|s| s / 3).collect();
        stubs.shuffle(rng);
        let edges: Vec<(usize, usize)> = stubs.chunks(2).map(|c| (c[0], c[1])).collect();
        if let Ok(g) = Graph::new(n, edges) {
            if g.is_connected() {
                return g;
            }
        }
    }
}

/// Random partition of `0..n` into `d` nonempty parts.
pub fn random_partition<R: Rng>(n: usize, d: usize, rng: &mut R) -> VertexPartition {
    assert!(n >= d);
    let mut vertices: Vec<usize> = (0..n).collect();
    vertices.shuffle(rng);
    let mut labels = vec![0; n];
    for (i, &v) in vertices.iter().enumerate() {
        labels[v] = if i < d { i } else { rng.gen_range(0..d) };
    }
    VertexPartition::from_labels(&labels, d).unwrap()
}

/// Random orthogonal `d × d` matrix, row-major, by Gram–Schmidt.
pub fn random_rotation<R: Rng>(d: usize, rng: &mut R) -> Vec<Vec<f64>> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    while rows.len() < d {
        let mut v: Vec<f64> = (0..d).map(|_| rng.gen::<f64>() - 0.5).collect();
        for q in &rows {
            let proj: f64 = v.iter().zip(q).map(|(a, b)| a * b).sum();
            v.iter_mut().zip(q).for_each(|(a, b)| *a -= proj * b);
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-3 {
            rows.push(v.into_iter().map(|x| x / norm).collect());
        }
    }
    rows
}
