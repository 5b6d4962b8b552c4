//! Implicit adjacency, degree, Laplacian and signless Laplacian tensors.
//!
//! No order-k tensor is ever stored. For an edge `e` and `i ∈ e` the
//! adjacency tensor contributes `(k-1)!` symmetric entries of value
//! `1/(k-1)!` to row `i`, so `(A x^{k-1})_i = Σ_{e ∋ i} Π_{j ∈ e, j ≠ i} x_j`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hypergraph::Hypergraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error("vector has length {found}, hypergraph has {n} vertices")]
    DimensionMismatch { n: usize, found: usize },
    #[error("vector is identically zero")]
    ZeroVector,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OperatorKind {
    /// `A`
    Adjacency,
    /// `D`, diagonal with the vertex degrees
    Degree,
    /// `L = D - A`
    Laplacian,
    /// `Q = D + A`
    SignlessLaplacian,
}

impl OperatorKind {
    pub fn is_nonnegative(self) -> bool {
        matches!(self, Self::Adjacency | Self::Degree | Self::SignlessLaplacian)
    }

    fn signs(self) -> (f64, f64) {
        // (degree coefficient, adjacency coefficient)
        match self {
            Self::Adjacency => (0.0, 1.0),
            Self::Degree => (1.0, 0.0),
            Self::Laplacian => (1.0, -1.0),
            Self::SignlessLaplacian => (1.0, 1.0),
        }
    }
}

/// `x^p` for a possibly negative base and small integer `p`.
#[inline]
pub(crate) fn ipow(x: f64, p: usize) -> f64 {
    x.powi(p as i32)
}

fn check_len(g: &Hypergraph, x: &[f64]) -> Result<(), TensorError> {
    if x.len() != g.n() {
        return Err(TensorError::DimensionMismatch { n: g.n(), found: x.len() });
    }
    Ok(())
}

/// Accumulates `Σ_{e ∋ i} Π_{j ∈ e \ i} x_j` into `out` for every `i`.
///
/// The exclusion products come from prefix/suffix products inside each edge,
/// so zero coordinates need no special casing.
pub(crate) fn adjacency_into(g: &Hypergraph, x: &[f64], out: &mut [f64], scale: f64) {
    let k = g.k();
    let mut prefix = vec![1.0; k + 1];
    let mut suffix = vec![1.0; k + 1];
    for e in g.edges() {
        for p in 0..k {
            prefix[p + 1] = prefix[p] * x[e[p] as usize];
        }
        for p in (0..k).rev() {
            suffix[p] = suffix[p + 1] * x[e[p] as usize];
        }
        for p in 0..k {
            out[e[p] as usize] += scale * (prefix[p] * suffix[p + 1]);
        }
    }
}

fn apply_unchecked(kind: OperatorKind, g: &Hypergraph, degrees: &[usize], x: &[f64]) -> Vec<f64> {
    let (dc, ac) = kind.signs();
    let mut out: Vec<f64> = if dc != 0.0 {
        x.iter().zip(degrees).map(|(&xi, &d)| d as f64 * ipow(xi, g.k() - 1)).collect()
    } else {
        vec![0.0; g.n()]
    };
    if ac != 0.0 {
        adjacency_into(g, x, &mut out, ac);
    }
    out
}

/// `T x^{k-1}` for the tensor selected by `kind`.
pub fn apply(kind: OperatorKind, g: &Hypergraph, x: &[f64]) -> Result<Vec<f64>, TensorError> {
    check_len(g, x)?;
    Ok(apply_unchecked(kind, g, &g.degree_profile().degrees, x))
}

/// `T x^k = x · (T x^{k-1})`.
pub fn form(kind: OperatorKind, g: &Hypergraph, x: &[f64]) -> Result<f64, TensorError> {
    let y = apply(kind, g, x)?;
    Ok(x.iter().zip(&y).map(|(a, b)| a * b).sum())
}

/// Max-norm of `T x^{k-1} - λ x^{[k-1]}` after scaling `x` to unit max-norm.
pub fn residual(kind: OperatorKind, g: &Hypergraph, lambda: f64, x: &[f64]) -> Result<f64, TensorError> {
    check_len(g, x)?;
    let xs = normalize_max(x).ok_or(TensorError::ZeroVector)?;
    let y = apply_unchecked(kind, g, &g.degree_profile().degrees, &xs);
    Ok(max_deviation(&y, &xs, lambda, g.k()))
}

pub(crate) fn max_deviation(y: &[f64], x: &[f64], lambda: f64, k: usize) -> f64 {
    y.iter()
        .zip(x)
        .map(|(&yi, &xi)| (yi - lambda * ipow(xi, k - 1)).abs())
        .fold(0.0, f64::max)
}

/// `x / max|x_i|`, or `None` when `x` is identically zero.
pub fn normalize_max(x: &[f64]) -> Option<Vec<f64>> {
    let m = x.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    (m > 0.0 && m.is_finite()).then(|| x.iter().map(|v| v / m).collect())
}

/// A candidate H-eigenpair `T x^{k-1} = λ x^{[k-1]}` with its residual.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenPair {
    pub lambda: f64,
    pub x: Vec<f64>,
    pub residual: f64,
}

impl EigenPair {
    pub fn new(kind: OperatorKind, g: &Hypergraph, lambda: f64, x: Vec<f64>) -> Result<Self, TensorError> {
        let residual = residual(kind, g, lambda, &x)?;
        Ok(Self { lambda, x, residual })
    }
}
