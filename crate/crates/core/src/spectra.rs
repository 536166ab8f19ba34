//! Dense symmetric spectra: graph Laplacians, normalized Laplacians,
//! algebraic connectivity and the stiffness spectral gap.
//!
//! Every eigensolve goes through [`sym_eigenvalues`] (or its eigenvector
//! sibling), which symmetrizes its input before handing it to nalgebra's
//! Householder tridiagonalization + implicit QR solver.

use std::cmp::Ordering;
use std::fmt;

use nalgebra::{DMatrix, SymmetricEigen};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::framework::{lower_stiffness, stiffness, trivial_motion_dim, Embedding};
use crate::graph::Graph;

/// Relative tolerance used to group eigenvalues into multiplicities when
/// reporting. Never used for computation.
pub const DEFAULT_GROUPING_TOL: f64 = 1e-6;

/// Eigenvalues in ascending order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    values: Vec<f64>,
    grouping_tol: f64,
}

impl Spectrum {
    pub fn from_values(mut values: Vec<f64>) -> Self {
        values.sort_by(f64::total_cmp);
        Self {
            values,
            grouping_tol: DEFAULT_GROUPING_TOL,
        }
    }

    pub fn with_grouping_tol(mut self, tol: f64) -> Self {
        self.grouping_tol = tol;
        self
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn grouping_tol(&self) -> f64 {
        self.grouping_tol
    }

    /// The `k`-th smallest eigenvalue, 1-based.
    pub fn lambda(&self, k: usize) -> Option<f64> {
        k.checked_sub(1).and_then(|i| self.values.get(i).copied())
    }

    pub fn max(&self) -> Option<f64> {
        self.values.last().copied()
    }

    /// Clusters of nearly equal eigenvalues as `(first value, count)`.
    /// Consecutive values join a cluster while within
    /// `grouping_tol * max(1, |value|)` of the cluster's first value.
    pub fn multiplicities(&self) -> Vec<(f64, usize)> {
        let mut out: Vec<(f64, usize)> = Vec::new();
        for &x in &self.values {
            match out.last_mut() {
                Some((head, count)) if (x - *head).abs() <= self.grouping_tol * head.abs().max(1.0) => {
                    *count += 1;
                }
                _ => out.push((x, 1)),
            }
        }
        out
    }
}

fn symmetrized(m: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    Ok((m + m.transpose()) * 0.5)
}

/// All eigenvalues of the symmetric part of `m`, ascending.
pub fn sym_eigenvalues(m: &DMatrix<f64>) -> Result<Spectrum> {
    let s = symmetrized(m)?;
    if s.nrows() == 0 {
        return Ok(Spectrum::from_values(Vec::new()));
    }
    Ok(Spectrum::from_values(
        s.symmetric_eigenvalues().iter().copied().collect(),
    ))
}

/// Eigenvalues ascending, with the matching unit eigenvectors as columns.
pub fn sym_eigen(m: &DMatrix<f64>) -> Result<(Vec<f64>, DMatrix<f64>)> {
    let s = symmetrized(m)?;
    let n = s.nrows();
    if n == 0 {
        return Ok((Vec::new(), DMatrix::zeros(0, 0)));
    }
    let eig = SymmetricEigen::new(s);
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = idx.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, idx[c])]);
    Ok((values, vectors))
}

/// `L(G) = D - A`.
pub fn graph_laplacian(g: &Graph) -> DMatrix<f64> {
    let n = g.num_vertices();
    let mut l = DMatrix::zeros(n, n);
    for &(u, v) in g.edges() {
        l[(u, u)] += 1.0;
        l[(v, v)] += 1.0;
        l[(u, v)] -= 1.0;
        l[(v, u)] -= 1.0;
    }
    l
}

/// `D^{-1/2} L(G) D^{-1/2}`. Rejects isolated vertices.
pub fn normalized_laplacian(g: &Graph) -> Result<DMatrix<f64>> {
    let deg = g.degrees();
    if let Some(v) = deg.iter().position(|&d| d == 0) {
        return Err(Error::IsolatedVertex(v));
    }
    let scale: Vec<f64> = deg.iter().map(|&d| 1.0 / (d as f64).sqrt()).collect();
    let mut l = graph_laplacian(g);
    for r in 0..l.nrows() {
        for c in 0..l.ncols() {
            l[(r, c)] *= scale[r] * scale[c];
        }
    }
    Ok(l)
}

/// A nonnegative spectral gap that may be infinite.
///
/// `Infinite` stands for the gap of a one-vertex graph (`λ_1` of an empty
/// matrix). It compares greater than every finite value, so it drops out of
/// any minimum taken together with a finite gap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gap {
    Finite(f64),
    Infinite,
}

impl Gap {
    pub fn finite(self) -> Option<f64> {
        match self {
            Gap::Finite(x) => Some(x),
            Gap::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Gap::Infinite)
    }

    pub fn min(self, other: Gap) -> Gap {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn scale(self, factor: f64) -> Gap {
        match self {
            Gap::Finite(x) => Gap::Finite(x * factor),
            Gap::Infinite => Gap::Infinite,
        }
    }
}

impl PartialOrd for Gap {
    fn partial_cmp(&self, other: &Gap) -> Option<Ordering> {
        match (self, other) {
            (Gap::Infinite, Gap::Infinite) => Some(Ordering::Equal),
            (Gap::Infinite, Gap::Finite(_)) => Some(Ordering::Greater),
            (Gap::Finite(_), Gap::Infinite) => Some(Ordering::Less),
            (Gap::Finite(a), Gap::Finite(b)) => a.partial_cmp(b),
        }
    }
}

impl fmt::Display for Gap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gap::Finite(x) => write!(f, "{x}"),
            Gap::Infinite => f.write_str("inf"),
        }
    }
}

/// JSON has no infinity: finite gaps are numbers, the infinite gap is `"inf"`.
impl Serialize for Gap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Gap::Finite(x) => s.serialize_f64(*x),
            Gap::Infinite => s.serialize_str("inf"),
        }
    }
}

/// `a(G) = λ_2(L(G))`; infinite for a single vertex, exactly zero when
/// disconnected.
pub fn algebraic_connectivity(g: &Graph) -> Gap {
    if g.num_vertices() <= 1 {
        return Gap::Infinite;
    }
    if !g.is_connected() {
        return Gap::Finite(0.0);
    }
    let spectrum = sym_eigenvalues(&graph_laplacian(g)).expect("Laplacian is square");
    Gap::Finite(spectrum.lambda(2).unwrap().max(0.0))
}

/// `λ_{C(d+1,2)+1}(L(G,p))`, the quantity whose supremum over `p` is `a_d(G)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StiffnessGap {
    pub value: f64,
    /// Set when the graph is too small or has too few edges to be rigid, so
    /// the value is zero without any eigensolve.
    pub insufficient: bool,
}

/// Computes the stiffness gap on whichever of `L(G,p)` and `L⁻(G,p)` is
/// smaller, shifting the index by `|E| - d|V|` for the lower matrix.
pub fn stiffness_gap(g: &Graph, p: &Embedding) -> Result<StiffnessGap> {
    let d = p.dim();
    let rows = d * g.num_vertices();
    let kernel = trivial_motion_dim(d);
    let edges = g.num_edges();
    if rows <= kernel || edges + kernel < rows {
        p.check_graph(g)?;
        return Ok(StiffnessGap {
            value: 0.0,
            insufficient: true,
        });
    }
    let value = if edges < rows {
        let index = edges + kernel + 1 - rows;
        sym_eigenvalues(&lower_stiffness(g, p)?)?.lambda(index)
    } else {
        sym_eigenvalues(&stiffness(g, p)?)?.lambda(kernel + 1)
    };
    Ok(StiffnessGap {
        value: value.expect("index within range").max(0.0),
        insufficient: false,
    })
}
