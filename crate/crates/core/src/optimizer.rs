//! Local ascent of the stiffness gap over embeddings.
//!
//! The objective `λ_k(L(G,p))`, `k = C(d+1,2) + 1`, depends only on the edge
//! directions, so it is invariant under translation and scaling of `p`.
//! Each step is followed by re-centering and rescaling to unit radius.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::framework::{generic_embedding, stiffness, trivial_motion_dim, Embedding};
use crate::graph::Graph;
use crate::seed::{derive_seed, role};
use crate::spectra::{stiffness_gap, sym_eigen};

pub const DEFAULT_MULTIPLICITY_TOL: f64 = 1e-6;
/// Steps may not bring two points closer than this.
pub const MIN_SEPARATION: f64 = 1e-9;
const STALL_WINDOW: usize = 20;
const MAX_HALVINGS: usize = 40;
/// Upper limit of the adaptive clustering band, relative to `λ_max`.
const MAX_CLUSTER_TOL: f64 = 0.1;
/// Accepted steps below `step_size / SHORT_STEP` widen the band.
const SHORT_STEP: f64 = 64.0;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AscentConfig {
    pub steps: usize,
    pub step_size: f64,
    pub restarts: usize,
    pub seed: u64,
    pub tol: f64,
    pub multiplicity_tol: f64,
}

impl Default for AscentConfig {
    fn default() -> Self {
        Self {
            steps: 500,
            step_size: 0.1,
            restarts: 4,
            seed: 0,
            tol: 1e-10,
            multiplicity_tol: DEFAULT_MULTIPLICITY_TOL,
        }
    }
}

impl AscentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.steps == 0 || self.restarts == 0 {
            return Err(Error::InvalidArgument(
                "steps and restarts must be at least 1".into(),
            ));
        }
        for (name, x) in [
            ("step_size", self.step_size),
            ("tol", self.tol),
            ("multiplicity_tol", self.multiplicity_tol),
        ] {
            if !(x > 0.0 && x.is_finite()) {
                return Err(Error::InvalidArgument(format!(
                    "{name} must be positive and finite, got {x}"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TraceEntry {
    pub iteration: usize,
    pub value: f64,
    pub step: f64,
    /// The step followed [`cluster_ascent_direction`] at a clustered eigenvalue.
    pub subgradient: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AscentResult {
    pub best_value: f64,
    pub best_embedding: Embedding,
    /// Accepted iterations of the winning restart; entry 0 is the start.
    pub trace: Vec<TraceEntry>,
    pub converged: bool,
    pub restart: usize,
    pub iterations: usize,
    pub subgradient_steps: usize,
}

fn target_index(d: usize) -> usize {
    trivial_motion_dim(d) + 1
}

/// `∇_p ⟨x, L(G,p) y⟩`.
fn bilinear_form_gradient(g: &Graph, p: &Embedding, x: &[f64], y: &[f64]) -> Vec<f64> {
    let d = p.dim();
    let mut grad = vec![0.0; p.coords().len()];
    for &(u, v) in g.edges() {
        let (pu, pv) = (p.point(u), p.point(v));
        let delta: Vec<f64> = pu.iter().zip(pv).map(|(a, b)| a - b).collect();
        let r = delta.iter().map(|t| t * t).sum::<f64>().sqrt();
        if r == 0.0 {
            continue;
        }
        let dir: Vec<f64> = delta.iter().map(|t| t / r).collect();
        let wx: Vec<f64> = (0..d).map(|i| x[d * u + i] - x[d * v + i]).collect();
        let wy: Vec<f64> = (0..d).map(|i| y[d * u + i] - y[d * v + i]).collect();
        let sx: f64 = (0..d).map(|i| wx[i] * dir[i]).sum();
        let sy: f64 = (0..d).map(|i| wy[i] * dir[i]).sum();
        for i in 0..d {
            let gi = (sy * (wx[i] - sx * dir[i]) + sx * (wy[i] - sy * dir[i])) / r;
            grad[d * u + i] += gi;
            grad[d * v + i] -= gi;
        }
    }
    grad
}

/// `∇_p ⟨x, L(G,p) x⟩` for a unit vector `x`.
fn quadratic_form_gradient(g: &Graph, p: &Embedding, x: &[f64]) -> Vec<f64> {
    bilinear_form_gradient(g, p, x, x)
}

/// Indices of the eigenvalues within `tol · λ_max` of `values[k]`.
fn cluster(values: &[f64], k: usize, tol: f64) -> std::ops::Range<usize> {
    let scale = values.last().copied().unwrap_or(0.0).abs().max(f64::MIN_POSITIVE);
    let close = |j: usize| (values[j] - values[k]).abs() <= tol * scale;
    let mut lo = k;
    while lo > 0 && close(lo - 1) {
        lo -= 1;
    }
    let mut hi = k + 1;
    while hi < values.len() && close(hi) {
        hi += 1;
    }
    lo..hi
}

fn gradient_parts(
    g: &Graph,
    p: &Embedding,
    multiplicity_tol: f64,
) -> Result<Option<(Vec<f64>, nalgebra::DMatrix<f64>, std::ops::Range<usize>)>> {
    let k = target_index(p.dim()) - 1;
    let l = stiffness(g, p)?;
    if l.nrows() <= k {
        return Ok(None);
    }
    let (values, vectors) = sym_eigen(&l)?;
    let range = cluster(&values, k, multiplicity_tol);
    Ok(Some((values, vectors, range)))
}

/// Gradient of the stiffness gap with respect to the `d|V|` coordinates.
///
/// Fails with [`Error::ClusteredEigenvalue`] when the target eigenvalue is
/// not simple within `multiplicity_tol`.
pub fn gap_gradient(g: &Graph, p: &Embedding, multiplicity_tol: f64) -> Result<Vec<f64>> {
    let Some((_, vectors, range)) = gradient_parts(g, p, multiplicity_tol)? else {
        return Ok(vec![0.0; p.coords().len()]);
    };
    if range.len() > 1 {
        return Err(Error::ClusteredEigenvalue {
            multiplicity: range.len(),
        });
    }
    let x: Vec<f64> = vectors.column(range.start).iter().copied().collect();
    Ok(quadratic_form_gradient(g, p, &x))
}

/// Mean of the quadratic-form gradients over an orthonormal basis of the
/// eigenspace clustered around the target eigenvalue.
pub fn averaged_subgradient(g: &Graph, p: &Embedding, multiplicity_tol: f64) -> Result<Vec<f64>> {
    let Some((_, vectors, range)) = gradient_parts(g, p, multiplicity_tol)? else {
        return Ok(vec![0.0; p.coords().len()]);
    };
    let count = range.len() as f64;
    let mut mean = vec![0.0; p.coords().len()];
    for j in range {
        let x: Vec<f64> = vectors.column(j).iter().copied().collect();
        for (m, gi) in mean.iter_mut().zip(quadratic_form_gradient(g, p, &x)) {
            *m += gi / count;
        }
    }
    Ok(mean)
}

const FRANK_WOLFE_ITERATIONS: usize = 200;

/// Steepest-ascent direction for the lowest eigenvalue of the cluster at
/// the target index: the minimum-norm point of
/// `{ Σ U_ij ∇⟨x_i, L x_j⟩ : U ⪰ 0, tr U = 1 }` over the cluster
/// eigenvectors `x_i`, approximated by Frank–Wolfe from `U = I / r`, which
/// is the averaged subgradient. Eigenvalues below the target are excluded.
pub fn cluster_ascent_direction(
    g: &Graph,
    p: &Embedding,
    multiplicity_tol: f64,
) -> Result<Vec<f64>> {
    let dim = p.coords().len();
    let Some((_, vectors, range)) = gradient_parts(g, p, multiplicity_tol)? else {
        return Ok(vec![0.0; dim]);
    };
    let k = target_index(p.dim()) - 1;
    let xs: Vec<Vec<f64>> = (range.start.max(k)..range.end)
        .map(|j| vectors.column(j).iter().copied().collect())
        .collect();
    let r = xs.len();
    let mut pair = vec![Vec::new(); r * r];
    for i in 0..r {
        for j in i..r {
            let gij = bilinear_form_gradient(g, p, &xs[i], &xs[j]);
            pair[j * r + i] = gij.clone();
            pair[i * r + j] = gij;
        }
    }
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();

    let mut current = vec![0.0; dim];
    for i in 0..r {
        for (c, x) in current.iter_mut().zip(&pair[i * r + i]) {
            *c += x / r as f64;
        }
    }
    for _ in 0..FRANK_WOLFE_ITERATIONS {
        let s = nalgebra::DMatrix::from_fn(r, r, |i, j| dot(&pair[i * r + j], &current));
        let (_, eig) = sym_eigen(&s)?;
        let v = eig.column(0);
        let mut vertex = vec![0.0; dim];
        for i in 0..r {
            for j in 0..r {
                let w = v[i] * v[j];
                for (c, x) in vertex.iter_mut().zip(&pair[i * r + j]) {
                    *c += w * x;
                }
            }
        }
        let h: Vec<f64> = vertex.iter().zip(&current).map(|(a, b)| a - b).collect();
        let gap = -dot(&current, &h);
        let hh = dot(&h, &h);
        if gap <= 1e-12 * dot(&current, &current).max(f64::MIN_POSITIVE) || hh == 0.0 {
            break;
        }
        let gamma = (gap / hh).min(1.0);
        current.iter_mut().zip(&h).for_each(|(c, x)| *c += gamma * x);
    }
    Ok(current)
}

/// Translates the centroid to the origin and scales the farthest point to
/// unit distance.
pub fn normalize(p: &Embedding) -> Embedding {
    let d = p.dim();
    let n = p.num_vertices().max(1);
    let mut centroid = vec![0.0; d];
    for point in p.points() {
        for (c, x) in centroid.iter_mut().zip(point) {
            *c += x / n as f64;
        }
    }
    let mut coords: Vec<f64> = p
        .coords()
        .iter()
        .enumerate()
        .map(|(i, x)| x - centroid[i % d])
        .collect();
    let radius = coords
        .chunks(d)
        .map(|c| c.iter().map(|x| x * x).sum::<f64>().sqrt())
        .fold(0.0, f64::max);
    if radius > 0.0 {
        coords.iter_mut().for_each(|x| *x /= radius);
    }
    Embedding::from_flat(d, coords).expect("same shape")
}

struct RestartOutcome {
    value: f64,
    embedding: Embedding,
    trace: Vec<TraceEntry>,
    converged: bool,
    subgradient_steps: usize,
}

fn objective(g: &Graph, p: &Embedding) -> Result<f64> {
    Ok(stiffness_gap(g, p)?.value)
}

fn run_restart(g: &Graph, d: usize, cfg: &AscentConfig, restart: usize) -> Result<RestartOutcome> {
    let start = generic_embedding(g, d, derive_seed(cfg.seed, &[role::RESTART, restart as u64]));
    let mut p = normalize(&start);
    let mut value = objective(g, &p)?;
    let mut trace = vec![TraceEntry {
        iteration: 0,
        value,
        step: 0.0,
        subgradient: false,
    }];
    let mut converged = false;
    let mut subgradient_steps = 0;
    let mut cluster_tol = cfg.multiplicity_tol;

    for iteration in 1..=cfg.steps {
        let (grad, subgradient) = match gap_gradient(g, &p, cluster_tol) {
            Ok(grad) => (grad, false),
            Err(Error::ClusteredEigenvalue { .. }) => {
                (cluster_ascent_direction(g, &p, cluster_tol)?, true)
            }
            Err(e) => return Err(e),
        };
        let norm = grad.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            converged = true;
            break;
        }

        let mut step = cfg.step_size;
        let mut accepted = None;
        for _ in 0..MAX_HALVINGS {
            let coords: Vec<f64> = p
                .coords()
                .iter()
                .zip(&grad)
                .map(|(x, gi)| x + step * gi / norm)
                .collect();
            let candidate = normalize(&Embedding::from_flat(d, coords)?);
            if candidate.min_pairwise_distance() >= MIN_SEPARATION {
                let v = objective(g, &candidate)?;
                if v > value {
                    accepted = Some((candidate, v));
                    break;
                }
            }
            step /= 2.0;
        }
        // Collapsing steps mean nearby eigenvalues are crossing: treat a
        // wider band as one cluster until full steps succeed again.
        let Some((candidate, v)) = accepted else {
            if cluster_tol >= MAX_CLUSTER_TOL {
                converged = true;
                break;
            }
            cluster_tol = (cluster_tol * 10.0).min(MAX_CLUSTER_TOL);
            continue;
        };
        if step < cfg.step_size / SHORT_STEP {
            cluster_tol = (cluster_tol * 10.0).min(MAX_CLUSTER_TOL);
        } else if step >= cfg.step_size / 4.0 {
            cluster_tol = (cluster_tol / 10.0).max(cfg.multiplicity_tol);
        }
        p = candidate;
        value = v;
        subgradient_steps += usize::from(subgradient);
        trace.push(TraceEntry {
            iteration,
            value,
            step,
            subgradient,
        });
        if trace.len() > STALL_WINDOW
            && value - trace[trace.len() - 1 - STALL_WINDOW].value < cfg.tol
        {
            converged = true;
            break;
        }
    }
    Ok(RestartOutcome {
        value,
        embedding: p,
        trace,
        converged,
        subgradient_steps,
    })
}

/// Multi-restart ascent from random embeddings; returns the best restart.
pub fn maximize_gap(g: &Graph, d: usize, cfg: &AscentConfig) -> Result<AscentResult> {
    cfg.validate()?;
    if d == 0 || g.num_vertices() < d + 1 {
        return Err(Error::InvalidArgument(format!(
            "need at least d + 1 = {} vertices, got {}",
            d + 1,
            g.num_vertices()
        )));
    }
    let outcomes = (0..cfg.restarts)
        .into_par_iter()
        .map(|r| run_restart(g, d, cfg, r))
        .collect::<Result<Vec<_>>>()?;
    let (restart, best) = outcomes
        .into_iter()
        .enumerate()
        .reduce(|a, b| if b.1.value > a.1.value { b } else { a })
        .expect("at least one restart");
    let best_value = objective(g, &best.embedding)?;
    Ok(AscentResult {
        best_value,
        iterations: best.trace.len() - 1,
        best_embedding: best.embedding,
        trace: best.trace,
        converged: best.converged,
        restart,
        subgradient_steps: best.subgradient_steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_complete, make_gen_path, make_star};
    use crate::spectra::algebraic_connectivity;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn central_difference(g: &Graph, p: &Embedding, dir: &[f64]) -> f64 {
        let scale = p.coords().iter().fold(0.0f64, |m, x| m.max(x.abs()));
        let h = 1e-6 * scale;
        let shifted = |t: f64| {
            let c = p.coords().iter().zip(dir).map(|(x, y)| x + t * y).collect();
            stiffness_gap(g, &Embedding::from_flat(p.dim(), c).unwrap())
                .unwrap()
                .value
        };
        (shifted(h) - shifted(-h)) / (2.0 * h)
    }

    fn dot(a: &[f64], b: &[f64]) -> f64 {
        a.iter().zip(b).map(|(x, y)| x * y).sum()
    }

    #[test]
    fn translation_and_scaling_are_flat() {
        let g = make_complete(6).unwrap();
        let p = generic_embedding(&g, 2, 4);
        let grad = gap_gradient(&g, &p, 1e-6).unwrap();
        let translate: Vec<f64> = (0..12).map(|i| if i % 2 == 0 { 1.0 } else { 0.0 }).collect();
        assert!(dot(&grad, &translate).abs() < 1e-10);
        assert!(dot(&grad, p.coords()).abs() < 1e-10);
    }

    #[test]
    fn analytic_matches_finite_differences() {
        let g = make_complete(7).unwrap().without_edge(0, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for seed in 0..5 {
            let p = generic_embedding(&g, 3, seed);
            let grad = gap_gradient(&g, &p, 1e-6).unwrap();
            let dir: Vec<f64> = (0..21).map(|_| rng.gen::<f64>() - 0.5).collect();
            let fd = central_difference(&g, &p, &dir);
            let an = dot(&grad, &dir);
            assert!((an - fd).abs() <= 1e-4 * fd.abs().max(1e-3), "{an} vs {fd}");
        }
    }

    #[test]
    fn clustered_target_is_reported() {
        // the target eigenvalue 1 of S_{4,2} at p* has multiplicity three
        let star = make_star(4, 2).unwrap();
        let p = crate::bounds::star_embedding(4, 2).unwrap();
        let err = gap_gradient(&star, &p, 1e-6).unwrap_err();
        assert_eq!(err, Error::ClusteredEigenvalue { multiplicity: 3 });
        assert!(averaged_subgradient(&star, &p, 1e-6).is_ok());
    }

    #[test]
    fn cluster_direction_reduces_to_the_gradient_when_simple() {
        let g = make_complete(6).unwrap();
        let p = generic_embedding(&g, 2, 12);
        let grad = gap_gradient(&g, &p, 1e-9).unwrap();
        let dir = cluster_ascent_direction(&g, &p, 1e-9).unwrap();
        for (a, b) in grad.iter().zip(&dir) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn cluster_direction_raises_every_cluster_member() {
        let g = make_complete(6).unwrap();
        let p = generic_embedding(&g, 2, 5);
        let (values, vectors) = sym_eigen(&stiffness(&g, &p).unwrap()).unwrap();
        // a band just wide enough to join the target with the next two
        let tol = (values[5] - values[3]) / values[11] * 1.01;
        assert!(gap_gradient(&g, &p, tol).is_err());
        let dir = cluster_ascent_direction(&g, &p, tol).unwrap();
        let norm2 = dot(&dir, &dir);
        assert!(norm2 > 0.0);
        for j in 3..6 {
            let x: Vec<f64> = vectors.column(j).iter().copied().collect();
            let slope = dot(&quadratic_form_gradient(&g, &p, &x), &dir);
            assert!(slope >= 0.99 * norm2, "member {j}: {slope} vs {norm2}");
        }
        let lambda = |t: f64| {
            let c = p.coords().iter().zip(&dir).map(|(x, y)| x + t * y).collect();
            stiffness_gap(&g, &Embedding::from_flat(2, c).unwrap()).unwrap().value
        };
        assert!(lambda(1e-6) > lambda(0.0));
    }

    #[test]
    fn normalize_centers_and_scales() {
        let p = Embedding::new(2, &[vec![1.0, 1.0], vec![3.0, 1.0], vec![2.0, 4.0]]).unwrap();
        let q = normalize(&p);
        let radius = q
            .points()
            .map(|c| (c[0] * c[0] + c[1] * c[1]).sqrt())
            .fold(0.0, f64::max);
        assert!((radius - 1.0).abs() < 1e-12);
        let sx: f64 = q.points().map(|c| c[0]).sum();
        assert!(sx.abs() < 1e-12);
    }

    #[test]
    fn config_validation() {
        assert!(AscentConfig::default().validate().is_ok());
        let bad = AscentConfig {
            steps: 0,
            ..AscentConfig::default()
        };
        assert!(bad.validate().is_err());
        let bad = AscentConfig {
            tol: 0.0,
            ..AscentConfig::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn flexible_graph_stays_at_zero() {
        let g = make_gen_path(5, 1).unwrap();
        let r = maximize_gap(&g, 2, &AscentConfig::default()).unwrap();
        assert!(r.best_value <= 1e-6);
    }

    #[test]
    fn triangle_reaches_three_halves() {
        let g = make_complete(3).unwrap();
        let cfg = AscentConfig {
            steps: 300,
            ..AscentConfig::default()
        };
        let r = maximize_gap(&g, 2, &cfg).unwrap();
        assert!(r.best_value > 1.4 && r.best_value <= 1.5 + 1e-6, "{}", r.best_value);
        let a = algebraic_connectivity(&g).finite().unwrap();
        assert!(r.best_value <= a + 1e-8);
        for w in r.trace.windows(2) {
            assert!(w[1].value > w[0].value);
        }
        let again = maximize_gap(&g, 2, &cfg).unwrap();
        assert_eq!(again.best_embedding, r.best_embedding);
    }
}
