//! Odd-bipartitions, eigenvector sign transfer and the `λ(L) = λ(Q)`
//! equality diagnosis.
//!
//! For even `k`, a partition `V = V1 ∪ V2` is an odd-bipartition when every
//! edge meets `V1` in an odd number of vertices. With `s_i = [i ∈ V1]` that
//! is the affine GF(2) system `Σ_{i ∈ e} s_i = 1` for every edge `e`.
//! `V1 = ∅` violates every equation and `V1 = V` gives `|e ∩ V1| = k`, which
//! is even, so any solution is automatically a proper partition.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf2::{Gf2Solution, Gf2System};
use crate::hypergraph::Hypergraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("odd-bipartiteness is defined for even k only, got k = {k}")]
    BadParity { k: usize },
    #[error("eigenvector entry {index} is not strictly positive")]
    NotPositive { index: usize },
    #[error("partition is not a feasible odd-bipartition")]
    InfeasiblePartition,
    #[error("vector has length {found}, partition has {n} vertices")]
    DimensionMismatch { n: usize, found: usize },
}

/// Odd-bipartition certificate, or the GF(2) witness that none exists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BitPartition {
    /// `side[i]` is true when vertex `i` lies in `V1`.
    pub side: Vec<bool>,
    pub feasible: bool,
    /// When infeasible: indices of edges (canonical order) whose parity
    /// constraints sum to `0 = 1`.
    pub witness: Vec<usize>,
}

impl BitPartition {
    pub fn v1(&self) -> impl Iterator<Item = usize> + '_ {
        self.side.iter().enumerate().filter(|(_, &s)| s).map(|(i, _)| i)
    }

    /// Re-checks the certificate against `g`: odd intersections and two
    /// nonempty sides when feasible, a contradictory edge combination otherwise.
    pub fn is_sound_for(&self, g: &Hypergraph) -> bool {
        if self.feasible {
            self.side.len() == g.n()
                && self.side.iter().any(|&s| s)
                && self.side.iter().any(|&s| !s)
                && g.edges().all(|e| e.iter().filter(|&&v| self.side[v as usize]).count() % 2 == 1)
        } else {
            parity_system(g).is_contradiction(&self.witness)
        }
    }
}

fn parity_system(g: &Hypergraph) -> Gf2System {
    let mut sys = Gf2System::new(g.n());
    for e in g.edges() {
        sys.push(e.iter().map(|&v| v as usize), true);
    }
    sys
}

/// Decides odd-bipartiteness by Gaussian elimination over GF(2). Free
/// variables are set to 0, so the result is deterministic.
pub fn odd_bipartition(g: &Hypergraph) -> Result<BitPartition, StructureError> {
    if g.k() % 2 == 1 {
        return Err(StructureError::BadParity { k: g.k() });
    }
    match parity_system(g).solve() {
        Gf2Solution::Solvable { solution, .. } => {
            assert!(solution.iter().any(|&s| s), "odd-bipartition with empty V1");
            assert!(solution.iter().any(|&s| !s), "odd-bipartition with empty V2");
            Ok(BitPartition { side: solution, feasible: true, witness: Vec::new() })
        }
        Gf2Solution::Inconsistent { witness } => {
            Ok(BitPartition { side: vec![false; g.n()], feasible: false, witness })
        }
    }
}

/// Up to `limit` distinct odd-bipartitions, the deterministic one first.
pub fn enumerate_odd_bipartitions(g: &Hypergraph, limit: usize) -> Result<Vec<Vec<bool>>, StructureError> {
    if g.k() % 2 == 1 {
        return Err(StructureError::BadParity { k: g.k() });
    }
    let sys = parity_system(g);
    let Gf2Solution::Solvable { solution, free } = sys.solve() else {
        return Ok(Vec::new());
    };
    // Each free-variable assignment determines the pivots: re-solve with the
    // free columns pinned by extra equations.
    let mut out = Vec::new();
    let combos: u128 = if free.len() >= 127 { u128::MAX } else { 1u128 << free.len() };
    let mut mask: u128 = 0;
    while (out.len() as u128) < (limit as u128).min(combos) {
        if mask == 0 {
            out.push(solution.clone());
        } else {
            let mut pinned = sys.clone();
            for (bit, &col) in free.iter().enumerate() {
                pinned.push([col], mask >> bit & 1 == 1);
            }
            if let Gf2Solution::Solvable { solution, .. } = pinned.solve() {
                out.push(solution);
            }
        }
        mask += 1;
    }
    Ok(out)
}

/// `y_i = x_i` on `V1` and `-x_i` on `V2`. If `(λ, x)` is the positive
/// eigenpair of `Q`, then `(λ, y)` is an eigenpair of `L`.
pub fn transfer_eigenvector(x: &[f64], p: &BitPartition) -> Result<Vec<f64>, StructureError> {
    if x.len() != p.side.len() {
        return Err(StructureError::DimensionMismatch { n: p.side.len(), found: x.len() });
    }
    if !p.feasible || p.side.iter().all(|&s| s) || p.side.iter().all(|&s| !s) {
        return Err(StructureError::InfeasiblePartition);
    }
    if let Some(index) = x.iter().position(|&v| !(v > 0.0 && v.is_finite())) {
        return Err(StructureError::NotPositive { index });
    }
    Ok(x.iter().zip(&p.side).map(|(&v, &s)| if s { v } else { -v }).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Prediction {
    Equal,
    StrictlyLess,
    Unknown,
}

/// What the structure of `g` predicts about `λ(L)` versus `λ(Q)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EqualityVerdict {
    pub k_parity: Parity,
    pub connected: bool,
    pub odd_bipartite: Option<bool>,
    pub prediction: Prediction,
}

pub fn equality_diagnosis(g: &Hypergraph) -> EqualityVerdict {
    let connected = g.is_connected();
    let (k_parity, odd_bipartite) = if g.k() % 2 == 0 {
        let p = odd_bipartition(g).expect("even k");
        (Parity::Even, Some(p.feasible))
    } else {
        (Parity::Odd, None)
    };
    let prediction = match (connected, odd_bipartite) {
        (false, _) => Prediction::Unknown,
        (true, Some(true)) => Prediction::Equal,
        (true, _) => Prediction::StrictlyLess,
    };
    EqualityVerdict { k_parity, connected, odd_bipartite, prediction }
}
