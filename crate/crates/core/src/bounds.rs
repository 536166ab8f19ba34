//! Certified lower bounds on `a_d(G)` and closed-form spectral data for the
//! named graph families.
//!
//! The partition bound takes a partition `V = A_1 ∪ … ∪ A_d` and returns
//!
//! ```text
//! min( { a(G[A_i]) }_i ∪ { ½ a(G(A_i, A_j)) }_{i<j} )
//! ```
//!
//! (no halving when `d = 2`). The limit-matrix bound evaluates
//! `λ_m` of [`limit_lower_stiffness`] with `m = |E| - d|V| + C(d+1,2) + 1`
//! and always dominates the partition bound for the same partition.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::framework::{
    limit_lower_stiffness, simplex_embedding, trivial_motion_dim, Embedding,
};
use crate::graph::{Graph, VertexPartition};
use crate::spectra::{algebraic_connectivity, stiffness_gap, sym_eigenvalues, Gap, Spectrum};

/// Scale `c` used for certificate embeddings `p_c`.
pub const DEFAULT_CERTIFICATE_SCALE: f64 = 1e4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundMethod {
    MinGaps,
    MinGaps2d,
    LimitMatrix,
    Formula,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EvidenceKind {
    Induced,
    Crossing,
}

/// One subgraph gap entering a partition bound. `gap` is the raw `a(·)`,
/// before any halving.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GapEvidence {
    pub kind: EvidenceKind,
    pub parts: Vec<usize>,
    pub gap: Gap,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub method: BoundMethod,
    /// Certified lower bound on `a_d(G)`; never negative.
    pub value: f64,
    /// Set when the bound is zero for structural reasons (too few edges, or
    /// no finite gap at all).
    pub vacuous: bool,
    pub evidence: Vec<GapEvidence>,
    /// Eigenvalue index `m` used by the limit-matrix bound.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix_index: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partition: Option<VertexPartition>,
}

fn check_parts(g: &Graph, partition: &VertexPartition, d: usize) -> Result<()> {
    partition.check_graph(g)?;
    if partition.num_parts() != d {
        return Err(Error::InvalidPartition(format!(
            "expected {d} parts, got {}",
            partition.num_parts()
        )));
    }
    Ok(())
}

/// The `C(d+1, 2)` subgraph gaps of a partition: induced parts first, then
/// crossing pairs `(i, j)`, `i < j`, in lexicographic order.
pub fn partition_gaps(g: &Graph, partition: &VertexPartition) -> Result<Vec<GapEvidence>> {
    partition.check_graph(g)?;
    let d = partition.num_parts();
    let mut evidence = Vec::with_capacity(trivial_motion_dim(d));
    for i in 0..d {
        let (h, _) = g.induced_subgraph(partition.part(i))?;
        evidence.push(GapEvidence {
            kind: EvidenceKind::Induced,
            parts: vec![i],
            gap: algebraic_connectivity(&h),
        });
    }
    for i in 0..d {
        for j in i + 1..d {
            let (h, _) = g.bipartite_subgraph(partition.part(i), partition.part(j))?;
            evidence.push(GapEvidence {
                kind: EvidenceKind::Crossing,
                parts: vec![i, j],
                gap: algebraic_connectivity(&h),
            });
        }
    }
    Ok(evidence)
}

fn min_gap_report(
    method: BoundMethod,
    evidence: Vec<GapEvidence>,
    crossing_factor: f64,
    partition: &VertexPartition,
) -> BoundReport {
    let min = evidence
        .iter()
        .map(|e| match e.kind {
            EvidenceKind::Induced => e.gap,
            EvidenceKind::Crossing => e.gap.scale(crossing_factor),
        })
        .fold(Gap::Infinite, Gap::min);
    let (value, vacuous) = match min {
        Gap::Finite(x) => (x.max(0.0), false),
        Gap::Infinite => (0.0, true),
    };
    BoundReport {
        method,
        value,
        vacuous,
        evidence,
        matrix_index: None,
        partition: Some(partition.clone()),
    }
}

/// General-`d` partition bound with halved crossing gaps.
pub fn partition_bound(g: &Graph, partition: &VertexPartition, d: usize) -> Result<BoundReport> {
    check_parts(g, partition, d)?;
    let evidence = partition_gaps(g, partition)?;
    Ok(min_gap_report(BoundMethod::MinGaps, evidence, 0.5, partition))
}

/// Two-part bound without the halving of the crossing gap.
pub fn partition_bound_2d(g: &Graph, partition: &VertexPartition) -> Result<BoundReport> {
    check_parts(g, partition, 2)?;
    let evidence = partition_gaps(g, partition)?;
    Ok(min_gap_report(BoundMethod::MinGaps2d, evidence, 1.0, partition))
}

/// Eigenvalue index `m = |E| - d|V| + C(d+1,2) + 1` of the limit matrix.
pub fn limit_matrix_index(g: &Graph, d: usize) -> i64 {
    g.num_edges() as i64 - (d * g.num_vertices()) as i64 + trivial_motion_dim(d) as i64 + 1
}

/// `max(0, λ_m(L⁻_∞))` for the limit lower stiffness matrix of the
/// partition. Zero and flagged vacuous when `m <= 0`.
pub fn limit_matrix_bound(
    g: &Graph,
    partition: &VertexPartition,
    d: usize,
) -> Result<BoundReport> {
    check_parts(g, partition, d)?;
    let m = limit_matrix_index(g, d);
    let mut report = BoundReport {
        method: BoundMethod::LimitMatrix,
        value: 0.0,
        vacuous: true,
        evidence: Vec::new(),
        matrix_index: Some(m),
        partition: Some(partition.clone()),
    };
    if m <= 0 {
        return Ok(report);
    }
    let spectrum = sym_eigenvalues(&limit_lower_stiffness(g, partition, None)?)?;
    report.value = spectrum.lambda(m as usize).expect("m <= |E|").max(0.0);
    report.vacuous = false;
    Ok(report)
}

/// The separated simplex embedding `p_c` that realizes the limit-matrix
/// bound as `c → ∞`, with its stiffness gap.
pub fn certificate_embedding(
    g: &Graph,
    partition: &VertexPartition,
    c: f64,
) -> Result<(Embedding, f64)> {
    let p = simplex_embedding(g, partition, c, None)?;
    let gap = stiffness_gap(g, &p)?.value;
    Ok((p, gap))
}

/// `½ ⌊n/d⌋`, a lower bound on `a_d(K_n)`.
pub fn kn_bound(n: usize, d: usize) -> Result<f64> {
    if d == 0 || n <= d {
        return Err(Error::InvalidArgument(format!(
            "complete-graph bound needs n > d >= 1, got n = {n}, d = {d}"
        )));
    }
    Ok(0.5 * (n / d) as f64)
}

/// Lower bound on `a(G')` when every edge of `G` (min degree ≥ 2, max
/// degree `max_deg`) is subdivided with at most `m` vertices.
pub fn subdivision_bound(a_g: f64, max_deg: usize, m: usize) -> f64 {
    debug_assert!(a_g >= 0.0 && max_deg >= 2);
    let m1 = (m + 1) as f64;
    (a_g / max_deg as f64).min(4.0) / (2.0 * m1 * m1)
}

/// Lower bound on `a(s^k(G))` for `G` with min degree ≥ 2.
pub fn iterated_subdivision_bound(a_g: f64, max_deg: usize, k: u32) -> f64 {
    debug_assert!(a_g >= 0.0 && max_deg >= 2);
    (2.0 * a_g / max_deg as f64).min(8.0) / 4f64.powi(k as i32)
}

/// The embedding `p*` of `S_{n,d}`: clique vertex `i < d` at `e_i`, every
/// other vertex at the origin.
pub fn star_embedding(n: usize, d: usize) -> Result<Embedding> {
    if d == 0 || n <= d {
        return Err(Error::InvalidArgument(format!(
            "generalized star needs n > d >= 1, got n = {n}, d = {d}"
        )));
    }
    let mut coords = vec![0.0; n * d];
    for i in 0..d {
        coords[i * d + i] = 1.0;
    }
    Embedding::from_flat(d, coords)
}

/// Closed-form spectrum of `L(S_{n,d}, p*)`:
/// `0^(C(d+1,2)), 1^(dn - C(d+1,2) - d), (n - d/2)^(d-1), n^(1)`.
pub fn star_spectrum_closed_form(n: usize, d: usize) -> Result<Spectrum> {
    if d == 0 || n <= d {
        return Err(Error::InvalidArgument(format!(
            "generalized star needs n > d >= 1, got n = {n}, d = {d}"
        )));
    }
    let kernel = trivial_motion_dim(d);
    let ones = d * n - kernel - d;
    let mut values = vec![0.0; kernel];
    values.extend(std::iter::repeat(1.0).take(ones));
    values.extend(std::iter::repeat(n as f64 - d as f64 / 2.0).take(d - 1));
    values.push(n as f64);
    Ok(Spectrum::from_values(values))
}

fn circulant_eigenvalue(n: usize, d: usize, m: usize) -> f64 {
    let sum: f64 = (1..=d)
        .map(|k| (2.0 * PI * (m * k) as f64 / n as f64).cos())
        .sum();
    2.0 * d as f64 - 2.0 * sum
}

/// `a(C_{n,d})` from the circulant eigenvalues
/// `2d - 2 Σ_k cos(2πmk/n)`, `m = 1..n-1`. The minimum sits at `m = 1`.
pub fn gen_cycle_connectivity(n: usize, d: usize) -> Result<f64> {
    if d == 0 || n < 2 * d + 1 {
        return Err(Error::InvalidArgument(format!(
            "generalized cycle needs n >= 2d + 1, got n = {n}, d = {d}"
        )));
    }
    Ok((1..n)
        .map(|m| circulant_eigenvalue(n, d, m))
        .fold(f64::INFINITY, f64::min))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PathBracket {
    pub lower: f64,
    pub upper: f64,
}

/// Bracket on `a_d(P_{n,d})`. For `d = 1` both ends are the exact value
/// `2(1 - cos(π/n))`.
pub fn path_bounds(n: usize, d: usize) -> Result<PathBracket> {
    if d == 0 || n <= d {
        return Err(Error::InvalidArgument(format!(
            "generalized path needs n > d >= 1, got n = {n}, d = {d}"
        )));
    }
    let exact_path = 2.0 * (1.0 - (PI / n as f64).cos());
    if d == 1 {
        return Ok(PathBracket {
            lower: exact_path,
            upper: exact_path,
        });
    }
    let lower = if d == 2 {
        exact_path
    } else {
        let blocks = n.div_ceil(d) as f64;
        1.0 - (PI / 2.0 / blocks).cos()
    };
    Ok(PathBracket {
        lower,
        upper: circulant_eigenvalue(n, d, 1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{balanced_partition, make_complete, make_gen_cycle, make_gen_path};
    use crate::spectra::graph_laplacian;

    #[test]
    fn complete_graph_partition_bound() {
        let g = make_complete(12).unwrap();
        let part = balanced_partition(12, 3).unwrap();
        let r = partition_bound(&g, &part, 3).unwrap();
        assert!((r.value - 2.0).abs() < 1e-10);
        assert_eq!(r.evidence.len(), 6);
        for e in &r.evidence {
            assert!((e.gap.finite().unwrap() - 4.0).abs() < 1e-10);
        }
        assert_eq!(kn_bound(12, 3).unwrap(), 2.0);
    }

    #[test]
    fn wrong_part_count_is_rejected() {
        let g = make_complete(6).unwrap();
        let part = balanced_partition(6, 2).unwrap();
        assert!(partition_bound(&g, &part, 3).is_err());
        let part3 = balanced_partition(6, 3).unwrap();
        assert!(partition_bound_2d(&g, &part3).is_err());
    }

    #[test]
    fn disconnected_part_gives_zero() {
        // Part {0, 2} of a 4-cycle induces no edge.
        let g = make_gen_cycle(4, 1).unwrap();
        let part = balanced_partition(4, 2).unwrap();
        let r = partition_bound(&g, &part, 2).unwrap();
        assert_eq!(r.value, 0.0);
        assert!(!r.vacuous);
    }

    #[test]
    fn singleton_part_is_absorbed() {
        let g = make_complete(5).unwrap();
        let part = VertexPartition::new(5, vec![vec![0], vec![1, 2, 3, 4]]).unwrap();
        let r = partition_bound(&g, &part, 2).unwrap();
        assert_eq!(r.evidence[0].gap, Gap::Infinite);
        // a(K_4) = 4, a(K_{1,4}) = 1 halved
        assert!((r.value - 0.5).abs() < 1e-10);
    }

    #[test]
    fn two_part_bounds() {
        let g = make_complete(10).unwrap();
        let part = VertexPartition::new(10, vec![(0..5).collect(), (5..10).collect()]).unwrap();
        let r = partition_bound_2d(&g, &part).unwrap();
        assert!((r.value - 5.0).abs() < 1e-10);
        let g = make_complete(4).unwrap();
        let part = VertexPartition::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        let r = partition_bound_2d(&g, &part).unwrap();
        assert!((r.value - 2.0).abs() < 1e-10);
        let lim = limit_matrix_bound(&g, &part, 2).unwrap();
        assert!(lim.value >= 2.0 - 1e-10);
        let g = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(partition_bound_2d(&g, &part).unwrap().value, 0.0);
    }

    #[test]
    fn limit_bound_for_complete_graph_dominates() {
        let g = make_complete(12).unwrap();
        let part = balanced_partition(12, 3).unwrap();
        let lim = limit_matrix_bound(&g, &part, 3).unwrap();
        assert_eq!(lim.matrix_index, Some(66 - 36 + 6 + 1));
        assert!(lim.value >= 2.0 - 1e-8, "{}", lim.value);
    }

    #[test]
    fn limit_bound_in_one_dimension_is_connectivity() {
        let g = make_gen_cycle(8, 2).unwrap();
        let part = balanced_partition(8, 1).unwrap();
        let lim = limit_matrix_bound(&g, &part, 1).unwrap();
        let a = algebraic_connectivity(&g).finite().unwrap();
        assert!((lim.value - a).abs() < 1e-9);
    }

    #[test]
    fn limit_bound_vacuous_when_sparse() {
        let g = make_gen_path(6, 1).unwrap();
        let part = balanced_partition(6, 2).unwrap();
        let lim = limit_matrix_bound(&g, &part, 2).unwrap();
        assert!(lim.vacuous);
        assert_eq!(lim.value, 0.0);
    }

    #[test]
    fn subdivision_formulas() {
        assert_eq!(subdivision_bound(12.0, 3, 0), 2.0);
        assert!((subdivision_bound(0.3, 3, 1) - 0.0125).abs() < 1e-15);
        assert_eq!(subdivision_bound(0.0, 3, 2), 0.0);
        assert!((iterated_subdivision_bound(0.3, 3, 0) - 0.2).abs() < 1e-15);
        assert_eq!(iterated_subdivision_bound(12.0, 3, 1), 2.0);
        assert_eq!(iterated_subdivision_bound(3.0, 3, 2), 0.125);
    }

    #[test]
    fn star_closed_form_values() {
        let s = star_spectrum_closed_form(4, 2).unwrap();
        assert_eq!(s.values(), &[0.0, 0.0, 0.0, 1.0, 1.0, 1.0, 3.0, 4.0]);
        // d = 1: the (n - d/2) block is empty, leaving the star K_{1,4}.
        let s = star_spectrum_closed_form(5, 1).unwrap();
        assert_eq!(s.values(), &[0.0, 1.0, 1.0, 1.0, 5.0]);
        for d in 3..7 {
            let s = star_spectrum_closed_form(d + 1, d).unwrap();
            let ones = s.values().iter().filter(|&&x| x == 1.0).count();
            assert_eq!(ones, trivial_motion_dim(d) - d);
        }
        assert!(star_spectrum_closed_form(3, 3).is_err());
    }

    #[test]
    fn cycle_connectivity_matches_eigensolve() {
        let closed = 2.0 * (1.0 - (2.0 * PI / 9.0).cos());
        assert!((gen_cycle_connectivity(9, 1).unwrap() - closed).abs() < 1e-14);
        let expected = 4.0 - 2.0 * (2.0 * PI / 7.0).cos() - 2.0 * (4.0 * PI / 7.0).cos();
        assert!((gen_cycle_connectivity(7, 2).unwrap() - expected).abs() < 1e-14);
        assert!((expected - 3.198062).abs() < 1e-6);
        for d in 1..4 {
            for n in 2 * d + 1..20 {
                let g = make_gen_cycle(n, d).unwrap();
                let s = sym_eigenvalues(&graph_laplacian(&g)).unwrap();
                let formula = gen_cycle_connectivity(n, d).unwrap();
                assert!((s.lambda(2).unwrap() - formula).abs() < 1e-9);
                assert!((formula - circulant_eigenvalue(n, d, 1)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn path_bracket_values() {
        let b = path_bounds(10, 2).unwrap();
        assert!((b.lower - 0.097886967).abs() < 1e-8);
        for d in 2..=5 {
            for n in (d + 1).max(3)..=100 {
                let b = path_bounds(n, d).unwrap();
                assert!(b.lower <= b.upper, "n={n} d={d}");
            }
        }
        let b = path_bounds(6, 1).unwrap();
        assert_eq!(b.lower, b.upper);
    }
}
