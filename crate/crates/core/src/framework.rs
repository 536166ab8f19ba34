//! Frameworks `(G, p)`: embeddings, normalized rigidity matrices, stiffness
//! and lower stiffness matrices, generic rank tests, and the separated
//! simplex embedding together with its `c → ∞` limit matrix.
//!
//! Layout conventions, fixed so that matrices are reproducible:
//!
//! * rigidity-matrix rows are vertex-major, coordinate-minor
//!   (`row = d * v + coordinate`);
//! * columns follow [`Graph::edges`], i.e. lexicographic edge order;
//! * the column of `{u, v}` with `u < v` carries `d_uv` on the rows of `u`
//!   and `d_vu = -d_uv` on the rows of `v`.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexPartition};

/// Dimension of the space of trivial infinitesimal motions in `R^d`.
pub fn trivial_motion_dim(d: usize) -> usize {
    d * (d + 1) / 2
}

/// A map from the vertices `0..n` to `R^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct Embedding {
    dim: usize,
    coords: Vec<f64>,
}

impl Embedding {
    pub fn new(dim: usize, points: &[Vec<f64>]) -> Result<Self> {
        let mut coords = Vec::with_capacity(points.len() * dim);
        for point in points {
            if point.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: point.len(),
                });
            }
            coords.extend_from_slice(point);
        }
        Ok(Self { dim, coords })
    }

    /// Coordinates laid out vertex-major: `coords[d * v + i]`.
    pub fn from_flat(dim: usize, coords: Vec<f64>) -> Result<Self> {
        if dim == 0 || coords.len() % dim != 0 {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: coords.len(),
            });
        }
        Ok(Self { dim, coords })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_vertices(&self) -> usize {
        self.coords.len() / self.dim.max(1)
    }

    pub fn point(&self, v: usize) -> &[f64] {
        &self.coords[v * self.dim..(v + 1) * self.dim]
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn points(&self) -> impl Iterator<Item = &[f64]> {
        self.coords.chunks_exact(self.dim)
    }

    pub(crate) fn check_graph(&self, g: &Graph) -> Result<()> {
        if self.num_vertices() != g.num_vertices() {
            return Err(Error::DimensionMismatch {
                expected: g.num_vertices(),
                found: self.num_vertices(),
            });
        }
        Ok(())
    }

    /// Smallest distance between two distinct vertices' images.
    pub fn min_pairwise_distance(&self) -> f64 {
        let n = self.num_vertices();
        let mut best = f64::INFINITY;
        for u in 0..n {
            for v in u + 1..n {
                best = best.min(dist(self.point(u), self.point(v)));
            }
        }
        best
    }
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Unit vector from `p(v)` towards `p(u)`, or zero when the images coincide.
pub fn direction(p: &Embedding, u: usize, v: usize) -> Vec<f64> {
    let (pu, pv) = (p.point(u), p.point(v));
    let diff: Vec<f64> = pu.iter().zip(pv).map(|(a, b)| a - b).collect();
    let norm = diff.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm == 0.0 {
        return vec![0.0; p.dim()];
    }
    diff.into_iter().map(|x| x / norm).collect()
}

fn edge_directions(g: &Graph, p: &Embedding) -> Vec<Vec<f64>> {
    g.edges().iter().map(|&(u, v)| direction(p, u, v)).collect()
}

/// The normalized rigidity matrix `R(G, p)`, of shape `d|V| × |E|`.
pub fn rigidity_matrix(g: &Graph, p: &Embedding) -> Result<DMatrix<f64>> {
    p.check_graph(g)?;
    let d = p.dim();
    let mut r = DMatrix::zeros(d * g.num_vertices(), g.num_edges());
    for (col, (&(u, v), dir)) in g.edges().iter().zip(edge_directions(g, p)).enumerate() {
        for (i, x) in dir.into_iter().enumerate() {
            r[(d * u + i, col)] = x;
            r[(d * v + i, col)] = -x;
        }
    }
    Ok(r)
}

/// `L(G, p) = R Rᵀ`.
pub fn stiffness(g: &Graph, p: &Embedding) -> Result<DMatrix<f64>> {
    let r = rigidity_matrix(g, p)?;
    Ok(&r * r.transpose())
}

/// `L⁻(G, p) = Rᵀ R`, assembled entrywise: `2` on the diagonal of
/// non-degenerate edges, `d_uv · d_uw` for edges sharing the vertex `u`,
/// `0` for disjoint edges.
pub fn lower_stiffness(g: &Graph, p: &Embedding) -> Result<DMatrix<f64>> {
    p.check_graph(g)?;
    let m = g.num_edges();
    let dirs = edge_directions(g, p);
    let mut l = DMatrix::zeros(m, m);
    for (a, &(u, v)) in g.edges().iter().enumerate() {
        let norm2: f64 = dirs[a].iter().map(|x| x * x).sum();
        l[(a, a)] = if norm2 > 0.0 { 2.0 } else { 0.0 };
        for (b, &(x, y)) in g.edges().iter().enumerate().skip(a + 1) {
            // Orient both directions away from the shared vertex.
            let sign = match () {
                _ if u == x || v == y => 1.0,
                _ if u == y || v == x => -1.0,
                _ => continue,
            };
            let dot: f64 = dirs[a].iter().zip(&dirs[b]).map(|(s, t)| s * t).sum();
            l[(a, b)] = sign * dot;
            l[(b, a)] = sign * dot;
        }
    }
    Ok(l)
}

fn order_positions(n: usize, order: Option<&[f64]>) -> Result<Vec<f64>> {
    match order {
        None => Ok((0..n).map(|v| v as f64).collect()),
        Some(pos) if pos.len() != n => Err(Error::DimensionMismatch {
            expected: n,
            found: pos.len(),
        }),
        Some(pos) => {
            let mut sorted = pos.to_vec();
            sorted.sort_by(f64::total_cmp);
            if sorted.windows(2).any(|w| w[0] == w[1]) || sorted.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidArgument(
                    "vertex order positions must be finite and distinct".into(),
                ));
            }
            Ok(pos.to_vec())
        }
    }
}

/// Entrywise limit of `L⁻(G, p_c)` as `c → ∞` for the separated simplex
/// embedding [`simplex_embedding`].
///
/// For edges `e = {u, v}` and `e' = {u, w}` sharing `u`:
///
/// | parts of `u`, `v`, `w`     | entry                              |
/// |----------------------------|------------------------------------|
/// | all in one part            | `sign((u - v)(u - w))` under order |
/// | `v`, `w` together, not `u` | `1`                                |
/// | all three distinct         | `1/2`                              |
/// | otherwise                  | `0`                                |
///
/// The diagonal is `2`; disjoint edges give `0`. `order` holds distinct
/// positions on the line per vertex; `None` means index order.
pub fn limit_lower_stiffness(
    g: &Graph,
    partition: &VertexPartition,
    order: Option<&[f64]>,
) -> Result<DMatrix<f64>> {
    partition.check_graph(g)?;
    let pos = order_positions(g.num_vertices(), order)?;
    let part = |v: usize| partition.part_of(v);
    let m = g.num_edges();
    let mut l = DMatrix::from_diagonal_element(m, m, 2.0);
    for (a, &(u0, v0)) in g.edges().iter().enumerate() {
        for (b, &(x0, y0)) in g.edges().iter().enumerate().skip(a + 1) {
            let (shared, v, w) = match () {
                _ if u0 == x0 => (u0, v0, y0),
                _ if u0 == y0 => (u0, v0, x0),
                _ if v0 == x0 => (v0, u0, y0),
                _ if v0 == y0 => (v0, u0, x0),
                _ => continue,
            };
            let (pu, pv, pw) = (part(shared), part(v), part(w));
            let entry = if pu == pv && pu == pw {
                let s = (pos[shared] - pos[v]) * (pos[shared] - pos[w]);
                s.signum()
            } else if pv == pw {
                1.0
            } else if pu != pv && pu != pw {
                0.5
            } else {
                0.0
            };
            l[(a, b)] = entry;
            l[(b, a)] = entry;
        }
    }
    Ok(l)
}

/// Vertices of a centered regular simplex with unit edge length: `d` points
/// in `R^{d-1}`.
///
/// Starts from `e_i / √2` in `R^d` (pairwise distance 1), centers it, and
/// expresses it in an orthonormal basis of the sum-zero hyperplane obtained
/// by Gram–Schmidt on `e_k - e_{k+1}`.
pub fn regular_simplex(d: usize) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(d.saturating_sub(1));
    for k in 0..d.saturating_sub(1) {
        let mut b = vec![0.0; d];
        b[k] = 1.0;
        b[k + 1] = -1.0;
        for q in &basis {
            let proj: f64 = b.iter().zip(q).map(|(x, y)| x * y).sum();
            b.iter_mut().zip(q).for_each(|(x, y)| *x -= proj * y);
        }
        let norm = b.iter().map(|x| x * x).sum::<f64>().sqrt();
        b.iter_mut().for_each(|x| *x /= norm);
        basis.push(b);
    }
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let center = scale / d as f64;
    (0..d)
        .map(|i| {
            basis
                .iter()
                .map(|q| {
                    (0..d)
                        .map(|j| {
                            let x = if j == i { scale } else { 0.0 } - center;
                            x * q[j]
                        })
                        .sum()
                })
                .collect()
        })
        .collect()
}

/// `p_c(u) = (c · x_i, order(u))` for `u ∈ A_i`, with `x_1..x_d` the vertices
/// of [`regular_simplex`]. The dimension is the number of parts.
pub fn simplex_embedding(
    g: &Graph,
    partition: &VertexPartition,
    c: f64,
    order: Option<&[f64]>,
) -> Result<Embedding> {
    if !(c > 0.0) {
        return Err(Error::InvalidArgument(format!("scale c must be positive, got {c}")));
    }
    partition.check_graph(g)?;
    let d = partition.num_parts();
    let pos = order_positions(g.num_vertices(), order)?;
    let simplex = regular_simplex(d);
    let mut coords = Vec::with_capacity(d * g.num_vertices());
    for (v, &y) in pos.iter().enumerate() {
        coords.extend(simplex[partition.part_of(v)].iter().map(|x| c * x));
        coords.push(y);
    }
    Embedding::from_flat(d, coords)
}

/// Coordinates drawn independently and uniformly from `[0, 1)` with a
/// ChaCha8 stream seeded by `seed`.
pub fn generic_embedding(g: &Graph, d: usize, seed: u64) -> Embedding {
    random_embedding(g.num_vertices(), d, seed)
}

pub(crate) fn random_embedding(n: usize, d: usize, seed: u64) -> Embedding {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coords = (0..n * d).map(|_| rng.gen::<f64>()).collect();
    Embedding { dim: d, coords }
}

/// Numerical rank of `R(G, p)`: singular values above
/// `max(rows, cols) · ε · σ_max`.
pub fn rigidity_rank(g: &Graph, p: &Embedding) -> Result<usize> {
    let r = rigidity_matrix(g, p)?;
    if r.ncols() == 0 || r.nrows() == 0 {
        return Ok(0);
    }
    let sv = r.singular_values();
    let sigma_max = sv.max();
    let tau = r.nrows().max(r.ncols()) as f64 * f64::EPSILON * sigma_max;
    Ok(sv.iter().filter(|&&s| s > tau).count())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RigidityCheck {
    pub rigid: bool,
    /// Largest rank seen over all trials.
    pub rank: usize,
    pub required_rank: usize,
}

/// Generic `d`-rigidity test: rank of `R(G, p)` over `trials` random
/// embeddings against `d|V| - C(d+1, 2)`.
pub fn is_d_rigid(g: &Graph, d: usize, trials: usize, seed: u64) -> Result<RigidityCheck> {
    let n = g.num_vertices();
    if d == 0 || n <= d {
        return Err(Error::InvalidArgument(format!(
            "rigidity in R^{d} is only defined here for more than {d} vertices, got {n}"
        )));
    }
    if trials == 0 {
        return Err(Error::InvalidArgument("need at least one trial".into()));
    }
    let required_rank = d * n - trivial_motion_dim(d);
    let mut rank = 0;
    for t in 0..trials {
        let p = generic_embedding(g, d, crate::seed::derive_seed(seed, &[t as u64]));
        rank = rank.max(rigidity_rank(g, &p)?);
        if rank == required_rank {
            break;
        }
    }
    Ok(RigidityCheck {
        rigid: rank == required_rank,
        rank,
        required_rank,
    })
}
