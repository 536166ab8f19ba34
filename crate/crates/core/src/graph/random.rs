use std::collections::HashSet;

use petgraph::algo::maximum_matching;
use petgraph::graph::{NodeIndex, UnGraph};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::seed::{derive_seed, role};

pub const DEFAULT_RETRY_BUDGET: usize = 1000;

/// A simple `degree`-regular bipartite graph with sides `0..n_side` and
/// `n_side..2*n_side`, drawn as the union of `degree` uniform perfect
/// matchings. Attempts producing a repeated edge are discarded whole.
pub fn random_regular_bipartite(n_side: usize, degree: usize, seed: u64) -> Result<Graph> {
    random_regular_bipartite_with_budget(n_side, degree, seed, DEFAULT_RETRY_BUDGET)
}

pub fn random_regular_bipartite_with_budget(
    n_side: usize,
    degree: usize,
    seed: u64,
    budget: usize,
) -> Result<Graph> {
    if n_side < degree {
        return Err(Error::InvalidArgument(format!(
            "a {degree}-regular bipartite graph needs at least {degree} vertices per side, got {n_side}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..n_side).collect();
    'attempt: for _ in 0..budget {
        let mut seen = HashSet::with_capacity(n_side * degree);
        for _ in 0..degree {
            perm.shuffle(&mut rng);
            for (left, &right) in perm.iter().enumerate() {
                if !seen.insert((left, n_side + right)) {
                    continue 'attempt;
                }
            }
        }
        return Graph::new(2 * n_side, seen);
    }
    Err(Error::GenerationFailed {
        attempts: budget,
        reason: format!("no simple {degree}-regular bipartite draw on {n_side}+{n_side} vertices"),
    })
}

/// Adds `count` pairwise disjoint perfect matchings taken from the running
/// complement of `g`.
///
/// Each matching is a maximum matching (greedy start, then augmenting paths
/// through blossoms) on the complement with randomly permuted vertex and edge
/// order. If a later matching is blocked by earlier choices the whole sequence
/// is redrawn, up to the retry budget.
pub fn add_disjoint_matchings(g: &Graph, count: usize, seed: u64) -> Result<Graph> {
    add_disjoint_matchings_with_budget(g, count, seed, DEFAULT_RETRY_BUDGET)
}

pub fn add_disjoint_matchings_with_budget(
    g: &Graph,
    count: usize,
    seed: u64,
    budget: usize,
) -> Result<Graph> {
    if count == 0 {
        return Ok(g.clone());
    }
    let n = g.num_vertices();
    if n % 2 == 1 {
        return Err(Error::InvalidArgument(format!(
            "perfect matchings need an even vertex count, got {n}"
        )));
    }
    for attempt in 0..budget {
        let mut current = g.clone();
        let mut complete = true;
        for j in 0..count {
            let labels = [role::MATCHINGS, attempt as u64, j as u64];
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, &labels));
            match complement_perfect_matching(&current, &mut rng) {
                Some(matching) => {
                    current = current.with_edges(matching)?;
                }
                None if j == 0 => {
                    return Err(Error::GenerationFailed {
                        attempts: attempt + 1,
                        reason: "complement has no perfect matching".into(),
                    });
                }
                None => {
                    complete = false;
                    break;
                }
            }
        }
        if complete {
            return Ok(current);
        }
    }
    Err(Error::GenerationFailed {
        attempts: budget,
        reason: format!("could not fit {count} disjoint perfect matchings into the complement"),
    })
}

fn complement_perfect_matching(g: &Graph, rng: &mut ChaCha8Rng) -> Option<Vec<(usize, usize)>> {
    let n = g.num_vertices();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut slot = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        slot[v] = i;
    }
    let mut missing: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| !g.has_edge(u, v))
        .collect();
    missing.shuffle(rng);

    let mut h = UnGraph::<usize, ()>::with_capacity(n, missing.len());
    for &v in &order {
        h.add_node(v);
    }
    for &(u, v) in &missing {
        h.add_edge(NodeIndex::new(slot[u]), NodeIndex::new(slot[v]), ());
    }
    let matching = maximum_matching(&h);
    if !matching.is_perfect() {
        return None;
    }
    Some(
        matching
            .edges()
            .map(|(a, b)| (order[a.index()], order[b.index()]))
            .collect(),
    )
}
