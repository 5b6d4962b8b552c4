//! Generators for the hypergraph families used throughout the crate.

use std::collections::HashSet;

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hypergraph::{binomial, Hypergraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("bad parameters: {0}")]
    BadParams(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum Family {
    /// `d` leaves of size `k` sharing the heart, vertex 0.
    Hyperstar { k: usize, d: usize },
    /// `s` edges in a cycle, consecutive edges sharing one vertex.
    Hypercycle { k: usize, s: usize },
    /// All `C(n, k)` edges.
    Complete { n: usize, k: usize },
    /// `m` distinct edges drawn uniformly without replacement.
    Random { n: usize, k: usize, m: usize, seed: u64 },
}

pub fn generate(family: Family) -> Result<Hypergraph, GenerateError> {
    match family {
        Family::Hyperstar { k, d } => hyperstar(k, d),
        Family::Hypercycle { k, s } => hypercycle(k, s),
        Family::Complete { n, k } => complete(n, k),
        Family::Random { n, k, m, seed } => random(n, k, m, seed),
    }
}

fn check_k(k: usize) -> Result<(), GenerateError> {
    if k < 3 {
        return Err(GenerateError::BadParams(format!("k = {k} must be at least 3")));
    }
    Ok(())
}

pub fn hyperstar(k: usize, d: usize) -> Result<Hypergraph, GenerateError> {
    check_k(k)?;
    if d == 0 {
        return Err(GenerateError::BadParams("hyperstar size d must be at least 1".into()));
    }
    let edges = (0..d)
        .map(|leaf| {
            let start = 1 + leaf * (k - 1);
            std::iter::once(0).chain((start..start + k - 1).map(|v| v as u32)).collect()
        })
        .collect();
    Ok(Hypergraph::from_canonical(1 + d * (k - 1), k, edges))
}

/// Edge `j` owns the block `[j(k-1), (j+1)(k-1))`; its first vertex is the
/// intersection with edge `j-1` and edge `j` also takes the first vertex of
/// block `j+1 mod s`.
pub fn hypercycle(k: usize, s: usize) -> Result<Hypergraph, GenerateError> {
    check_k(k)?;
    if s < 3 {
        return Err(GenerateError::BadParams(format!("hypercycle size s = {s} must be at least 3")));
    }
    let block = k - 1;
    let edges = (0..s)
        .map(|j| {
            let mut e: Vec<u32> = (j * block..(j + 1) * block).map(|v| v as u32).collect();
            e.push((((j + 1) % s) * block) as u32);
            e.sort_unstable();
            e
        })
        .collect();
    Ok(Hypergraph::from_canonical(s * block, k, edges))
}

/// The 0-based intersection vertices of [`hypercycle`]`(k, s)`.
pub fn hypercycle_intersections(k: usize, s: usize) -> Vec<usize> {
    (0..s).map(|j| j * (k - 1)).collect()
}

pub fn complete(n: usize, k: usize) -> Result<Hypergraph, GenerateError> {
    check_k(k)?;
    if n < k {
        return Err(GenerateError::BadParams(format!("complete needs n >= k, got n = {n}, k = {k}")));
    }
    let total = binomial(n, k).filter(|&c| c <= 5_000_000).ok_or_else(|| {
        GenerateError::BadParams(format!("C({n}, {k}) edges is too many to materialize"))
    })?;
    let edges = (0..total as usize).map(|r| unrank_combination(n, k, r)).collect();
    Ok(Hypergraph::from_canonical(n, k, edges))
}

// Beyond this many candidate edges, sample by rejection instead of by rank.
const RANK_SAMPLING_LIMIT: u128 = 1 << 24;

pub fn random(n: usize, k: usize, m: usize, seed: u64) -> Result<Hypergraph, GenerateError> {
    check_k(k)?;
    if n < k {
        return Err(GenerateError::BadParams(format!("random needs n >= k, got n = {n}, k = {k}")));
    }
    let total = binomial(n, k).unwrap_or(u128::MAX);
    if m == 0 || (m as u128) > total {
        return Err(GenerateError::BadParams(format!("edge count m = {m} must lie in 1..=C({n}, {k})")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<Vec<u32>> = if total <= RANK_SAMPLING_LIMIT {
        index::sample(&mut rng, total as usize, m)
            .into_iter()
            .map(|r| unrank_combination(n, k, r))
            .collect()
    } else {
        let mut seen = HashSet::with_capacity(m);
        let mut out = Vec::with_capacity(m);
        while out.len() < m {
            let mut e: Vec<u32> = index::sample(&mut rng, n, k).into_iter().map(|v| v as u32).collect();
            e.sort_unstable();
            if seen.insert(e.clone()) {
                out.push(e);
            }
        }
        out
    };
    Ok(Hypergraph::from_canonical(n, k, edges))
}

/// The `rank`-th k-subset of `0..n` in lexicographic order.
fn unrank_combination(n: usize, k: usize, mut rank: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(k);
    let mut next = 0usize;
    for slot in 0..k {
        loop {
            let remaining = binomial(n - next - 1, k - slot - 1).unwrap() as usize;
            if rank < remaining {
                out.push(next as u32);
                next += 1;
                break;
            }
            rank -= remaining;
            next += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::recognize;

    #[test]
    fn figure_one_hyperstar_edges() {
        let g = hyperstar(3, 3).unwrap();
        assert_eq!(g.n(), 7);
        assert_eq!(g.edges_one_based(), vec![vec![1, 2, 3], vec![1, 4, 5], vec![1, 6, 7]]);
    }

    #[test]
    fn figure_three_hypercycle() {
        let g = hypercycle(4, 3).unwrap();
        assert_eq!(g.n(), 9);
        assert_eq!(g.num_edges(), 3);
        for j in 0..3 {
            let a = g.edge(j);
            let b = g.edge((j + 1) % 3);
            assert_eq!(a.iter().filter(|v| b.contains(v)).count(), 1);
        }
        let degrees = g.degree_profile().degrees;
        for v in 0..9 {
            let want = if hypercycle_intersections(4, 3).contains(&v) { 2 } else { 1 };
            assert_eq!(degrees[v], want, "vertex {v}");
        }
        assert!(g.is_connected());
        assert_eq!(recognize(&g).hypercycle_size, Some(3));
    }

    #[test]
    fn complete_four_three() {
        let g = complete(4, 3).unwrap();
        assert_eq!(g.num_edges(), 4);
        let p = g.degree_profile();
        assert!(p.is_regular);
        assert_eq!(p.max_degree, 3);
        let tags = recognize(&complete(5, 3).unwrap());
        assert!(tags.is_complete && tags.is_regular);
        assert_eq!(complete(5, 3).unwrap().degree_profile().max_degree, 6);
    }

    #[test]
    fn hyperstar_four_two_tagged() {
        let tags = recognize(&hyperstar(4, 2).unwrap());
        assert_eq!(tags.hyperstar_heart, Some(0));
        assert!(!tags.is_hypercycle());
    }

    #[test]
    fn single_edge_is_size_one_hyperstar_and_complete() {
        let g = hyperstar(4, 1).unwrap();
        let tags = recognize(&g);
        assert!(tags.is_hyperstar() && tags.is_complete && tags.is_regular);
    }

    #[test]
    fn bad_params() {
        assert!(hyperstar(3, 0).is_err());
        assert!(hypercycle(4, 2).is_err());
        assert!(complete(2, 3).is_err());
        assert!(random(5, 3, 11, 0).is_err());
        assert!(random(5, 3, 0, 0).is_err());
        assert!(hyperstar(2, 3).is_err());
    }

    #[test]
    fn random_is_seed_deterministic_and_exhaustive_at_capacity() {
        assert_eq!(random(8, 4, 10, 7).unwrap(), random(8, 4, 10, 7).unwrap());
        assert_ne!(random(8, 4, 10, 7).unwrap(), random(8, 4, 10, 8).unwrap());
        assert_eq!(random(6, 3, 20, 1).unwrap(), complete(6, 3).unwrap());
    }

    #[test]
    fn rejection_sampling_path() {
        let g = random(60, 5, 40, 3).unwrap();
        assert_eq!(g.num_edges(), 40);
        assert_eq!(g, random(60, 5, 40, 3).unwrap());
    }

    #[test]
    fn unrank_is_lexicographic() {
        let all: Vec<_> = (0..10).map(|r| unrank_combination(5, 3, r)).collect();
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(all, sorted);
        assert_eq!(all[0], vec![0, 1, 2]);
        assert_eq!(all[9], vec![2, 3, 4]);
    }
}
