//! Uniform hypergraphs: validated construction, degrees and connectivity.
//!
//! Vertex labels are 1-based wherever a hypergraph enters or leaves the
//! library ([`Hypergraph::build`], the `.uhg` text format, CLI output).
//! Everything else in the Rust API (edge slices, vector coordinates, heart
//! ids, partitions) is 0-based.


use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Rejections raised while validating a hypergraph.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("uniformity k = {0} is below 3")]
    BadUniformity(usize),
    #[error("vertex count n = {n} is smaller than k = {k}")]
    TooFewVertices { n: usize, k: usize },
    #[error("edge #{edge} has {found} distinct vertices, expected {k}")]
    EdgeWrongArity { edge: usize, found: usize, k: usize },
    #[error("edge #{edge} references vertex {vertex}, outside 1..={n}")]
    VertexOutOfRange { edge: usize, vertex: usize, n: usize },
    #[error("edge #{edge} duplicates edge #{first}")]
    DuplicateEdge { edge: usize, first: usize },
    #[error("hypergraph has no edges")]
    EmptyEdgeSet,
}

/// An undirected simple k-uniform hypergraph on vertices `0..n`.
///
/// Edges are stored sorted ascending, and the edge list itself is sorted
/// lexicographically, so two hypergraphs with the same edge set compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Hypergraph {
    n: usize,
    k: usize,
    /// Flat `m * k` storage, 0-based.
    edges: Vec<u32>,
}

impl Hypergraph {
    /// Validates and canonicalizes a hypergraph given 1-based edge lists.
    pub fn build<E>(n: usize, k: usize, edges: &[E]) -> Result<Self, BuildError>
    where
        E: AsRef<[usize]>,
    {
        if k < 3 {
            return Err(BuildError::BadUniformity(k));
        }
        if n < k {
            return Err(BuildError::TooFewVertices { n, k });
        }
        if edges.is_empty() {
            return Err(BuildError::EmptyEdgeSet);
        }
        let mut canon: Vec<Vec<u32>> = Vec::with_capacity(edges.len());
        for (idx, e) in edges.iter().enumerate() {
            let e = e.as_ref();
            let mut verts = Vec::with_capacity(e.len());
            for &v in e {
                if v == 0 || v > n {
                    return Err(BuildError::VertexOutOfRange { edge: idx, vertex: v, n });
                }
                verts.push((v - 1) as u32);
            }
            verts.sort_unstable();
            verts.dedup();
            if verts.len() != k || e.len() != k {
                return Err(BuildError::EdgeWrongArity { edge: idx, found: verts.len(), k });
            }
            canon.push(verts);
        }
        Self::from_sorted_edges(n, k, canon, |first, edge| BuildError::DuplicateEdge { edge, first })
    }

    /// Internal constructor for already-validated 0-based, sorted edges.
    pub(crate) fn from_canonical(n: usize, k: usize, edges: Vec<Vec<u32>>) -> Self {
        Self::from_sorted_edges(n, k, edges, |first, edge| BuildError::DuplicateEdge { edge, first })
            .expect("generator produced an invalid hypergraph")
    }

    fn from_sorted_edges(
        n: usize,
        k: usize,
        edges: Vec<Vec<u32>>,
        dup: impl Fn(usize, usize) -> BuildError,
    ) -> Result<Self, BuildError> {
        let mut indexed: Vec<(usize, Vec<u32>)> = edges.into_iter().enumerate().collect();
        indexed.sort_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)));
        for w in indexed.windows(2) {
            if w[0].1 == w[1].1 {
                let (first, second) = (w[0].0.min(w[1].0), w[0].0.max(w[1].0));
                return Err(dup(first, second));
            }
        }
        let flat = indexed.into_iter().flat_map(|(_, e)| e).collect();
        Ok(Self { n, k, edges: flat })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len() / self.k
    }

    /// Edges in canonical order, each a sorted slice of 0-based vertices.
    pub fn edges(&self) -> impl ExactSizeIterator<Item = &[u32]> + '_ {
        self.edges.chunks_exact(self.k)
    }

    pub fn edge(&self, idx: usize) -> &[u32] {
        &self.edges[idx * self.k..(idx + 1) * self.k]
    }

    /// Edges as 1-based vertex lists.
    pub fn edges_one_based(&self) -> Vec<Vec<usize>> {
        self.edges().map(|e| e.iter().map(|&v| v as usize + 1).collect()).collect()
    }

    pub fn contains_edge(&self, sorted: &[u32]) -> bool {
        let m = self.num_edges();
        let (mut lo, mut hi) = (0, m);
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.edge(mid).cmp(sorted) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        let mut degrees = vec![0usize; self.n];
        for &v in &self.edges {
            degrees[v as usize] += 1;
        }
        let max_degree = degrees.iter().copied().max().unwrap_or(0);
        let is_regular = degrees.iter().all(|&d| d == degrees[0]);
        DegreeProfile { degrees, max_degree, is_regular }
    }

    /// Connected components of the vertex/edge incidence graph, each listed
    /// as sorted 0-based vertices. Isolated vertices form singleton components.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.n);
        for e in self.edges() {
            for w in e.windows(2) {
                uf.union(w[0] as usize, w[1] as usize);
            }
        }
        let mut by_root: Vec<Option<usize>> = vec![None; self.n];
        let mut comps: Vec<Vec<usize>> = Vec::new();
        for v in 0..self.n {
            let r = uf.find(v);
            let slot = *by_root[r].get_or_insert_with(|| {
                comps.push(Vec::new());
                comps.len() - 1
            });
            comps[slot].push(v);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// The sub-hypergraph spanned by a component, relabeled to `0..|comp|`.
    /// Returns `None` for components without edges (isolated vertices).
    pub fn component_subgraph(&self, comp: &[usize]) -> Option<Hypergraph> {
        let mut relabel = vec![u32::MAX; self.n];
        for (new, &old) in comp.iter().enumerate() {
            relabel[old] = new as u32;
        }
        let edges: Vec<Vec<u32>> = self
            .edges()
            .filter(|e| relabel[e[0] as usize] != u32::MAX)
            .map(|e| e.iter().map(|&v| relabel[v as usize]).collect())
            .collect();
        if edges.is_empty() {
            return None;
        }
        Some(Hypergraph::from_canonical(comp.len(), self.k, edges))
    }

    /// Same vertex set, edge set extended by `extra` (1-based lists).
    pub fn with_extra_edges<E: AsRef<[usize]>>(&self, extra: &[E]) -> Result<Hypergraph, BuildError> {
        let mut all = self.edges_one_based();
        all.extend(extra.iter().map(|e| e.as_ref().to_vec()));
        Hypergraph::build(self.n, self.k, &all)
    }
}

/// Vertex degrees `d_i = |E_i|` and the maximum degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeProfile {
    pub degrees: Vec<usize>,
    pub max_degree: usize,
    pub is_regular: bool,
}

impl DegreeProfile {
    pub fn sum(&self) -> usize {
        self.degrees.iter().sum()
    }

    /// `2 * sum(d_i) / n`.
    pub fn mean_bound(&self) -> f64 {
        2.0 * self.sum() as f64 / self.degrees.len() as f64
    }
}

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect(), rank: vec![0; n] }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }
}

/// Structural classification of a hypergraph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureTags {
    pub is_connected: bool,
    pub is_regular: bool,
    pub is_complete: bool,
    /// 0-based heart vertex when the hypergraph is a hyperstar.
    pub hyperstar_heart: Option<usize>,
    /// Cycle size `s` when the hypergraph is a hypercycle.
    pub hypercycle_size: Option<usize>,
}

impl StructureTags {
    pub fn is_hyperstar(&self) -> bool {
        self.hyperstar_heart.is_some()
    }

    pub fn is_hypercycle(&self) -> bool {
        self.hypercycle_size.is_some()
    }
}

/// Decides every structural tag from its definition.
pub fn recognize(g: &Hypergraph) -> StructureTags {
    let profile = g.degree_profile();
    let m = g.num_edges();
    let is_complete = binomial(g.n(), g.k()).is_some_and(|c| c == m as u128);
    StructureTags {
        is_connected: g.is_connected(),
        is_regular: profile.is_regular,
        is_complete,
        hyperstar_heart: hyperstar_heart(g, &profile),
        hypercycle_size: hypercycle_size(g, &profile),
    }
}

// V = {heart} ∪ V_1 ∪ ... ∪ V_d with |V_i| = k-1 and E = {heart ∪ V_i}.
fn hyperstar_heart(g: &Hypergraph, profile: &DegreeProfile) -> Option<usize> {
    let m = g.num_edges();
    if g.n() != 1 + m * (g.k() - 1) {
        return None;
    }
    let heart = profile.degrees.iter().position(|&d| d == m)?;
    profile
        .degrees
        .iter()
        .enumerate()
        .all(|(v, &d)| v == heart || d == 1)
        .then_some(heart)
}

fn hypercycle_size(g: &Hypergraph, profile: &DegreeProfile) -> Option<usize> {
    let s = g.num_edges();
    if s < 3 || g.n() != s * (g.k() - 1) {
        return None;
    }
    if profile.degrees.iter().any(|&d| d == 0 || d > 2) {
        return None;
    }
    // Each edge holds exactly two degree-2 vertices, and the edge adjacency
    // induced by them must be a single cycle through all s edges.
    let mut shared: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (idx, e) in g.edges().enumerate() {
        let twos = e.iter().filter(|&&v| profile.degrees[v as usize] == 2).count();
        if twos != 2 {
            return None;
        }
        for &v in e {
            shared[v as usize].push(idx);
        }
    }
    let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); s];
    for owners in shared.iter().filter(|o| o.len() == 2) {
        nbrs[owners[0]].push(owners[1]);
        nbrs[owners[1]].push(owners[0]);
    }
    // Two edges sharing two vertices would show up as a repeated neighbor.
    if nbrs.iter().any(|nb| nb.len() != 2 || nb[0] == nb[1]) {
        return None;
    }
    let (mut prev, mut cur, mut steps) = (0usize, nbrs[0][0], 1usize);
    while cur != 0 {
        let next = if nbrs[cur][0] == prev { nbrs[cur][1] } else { nbrs[cur][0] };
        prev = cur;
        cur = next;
        steps += 1;
        if steps > s {
            return None;
        }
    }
    (steps == s).then_some(s)
}

/// Exact binomial coefficient, `None` on overflow.
pub fn binomial(n: usize, k: usize) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_valid_instance() {
        let g = Hypergraph::build(3, 3, &[[1, 2, 3]]).unwrap();
        assert_eq!(g.num_edges(), 1);
        assert_eq!(g.edge(0), &[0, 1, 2]);
    }

    #[test]
    fn rejects_duplicates_even_when_reordered() {
        let err = Hypergraph::build(4, 3, &[[1, 2, 3], [1, 2, 3]]).unwrap_err();
        assert_eq!(err, BuildError::DuplicateEdge { edge: 1, first: 0 });
        let err = Hypergraph::build(4, 3, &[[3, 1, 2], [2, 3, 1]]).unwrap_err();
        assert!(matches!(err, BuildError::DuplicateEdge { .. }));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            Hypergraph::build(4, 2, &[[1, 2]]).unwrap_err(),
            BuildError::BadUniformity(2)
        );
        assert!(matches!(
            Hypergraph::build(4, 3, &[[1, 2, 2]]).unwrap_err(),
            BuildError::EdgeWrongArity { found: 2, .. }
        ));
        assert!(matches!(
            Hypergraph::build(4, 3, &[vec![1, 2, 3, 4]]).unwrap_err(),
            BuildError::EdgeWrongArity { found: 4, .. }
        ));
        assert!(matches!(
            Hypergraph::build(4, 3, &[[1, 2, 5]]).unwrap_err(),
            BuildError::VertexOutOfRange { vertex: 5, .. }
        ));
        assert!(matches!(
            Hypergraph::build(4, 3, &[[0, 2, 3]]).unwrap_err(),
            BuildError::VertexOutOfRange { vertex: 0, .. }
        ));
        let empty: [[usize; 3]; 0] = [];
        assert_eq!(Hypergraph::build(4, 3, &empty).unwrap_err(), BuildError::EmptyEdgeSet);
        assert!(matches!(
            Hypergraph::build(2, 3, &[[1, 2, 3]]).unwrap_err(),
            BuildError::TooFewVertices { .. }
        ));
    }

    #[test]
    fn figure_one_hyperstar() {
        let g = Hypergraph::build(7, 3, &[[1, 2, 3], [1, 4, 5], [1, 6, 7]]).unwrap();
        let tags = recognize(&g);
        assert_eq!(tags.hyperstar_heart, Some(0));
        assert!(tags.is_connected);
        assert_eq!(g.degree_profile().degrees, vec![3, 1, 1, 1, 1, 1, 1]);
    }

    #[test]
    fn two_disjoint_edges_are_disconnected() {
        let g = Hypergraph::build(6, 3, &[[1, 2, 3], [4, 5, 6]]).unwrap();
        assert!(!g.is_connected());
        assert_eq!(g.components(), vec![vec![0, 1, 2], vec![3, 4, 5]]);
        let sub = g.component_subgraph(&[3, 4, 5]).unwrap();
        assert_eq!(sub.n(), 3);
    }

    #[test]
    fn isolated_vertex_breaks_connectivity() {
        let g = Hypergraph::build(4, 3, &[[1, 2, 3]]).unwrap();
        assert!(!g.is_connected());
        assert!(g.component_subgraph(&[3]).is_none());
    }

    /// Brute force over every labeling of the definition: one heart, the
    /// remaining vertices split into disjoint (k-1)-blocks with E = {heart ∪ block}.
    fn brute_hyperstar(g: &Hypergraph) -> bool {
        (0..g.n()).any(|h| {
            let mut covered = vec![false; g.n()];
            covered[h] = true;
            for e in g.edges() {
                if !e.contains(&(h as u32)) {
                    return false;
                }
                for &v in e.iter().filter(|&&v| v as usize != h) {
                    if covered[v as usize] {
                        return false;
                    }
                    covered[v as usize] = true;
                }
            }
            covered.iter().all(|&c| c)
        })
    }

    #[test]
    fn edges_sharing_two_vertices_are_not_a_hyperstar() {
        let g = Hypergraph::build(4, 3, &[[1, 2, 3], [1, 2, 4]]).unwrap();
        assert!(!brute_hyperstar(&g));
        assert!(!recognize(&g).is_hyperstar());
    }

    #[test]
    fn hyperstar_recognition_matches_brute_force_on_small_instances() {
        // all 3-uniform hypergraphs on 5 vertices with up to 3 edges
        let all: Vec<Vec<usize>> = (1..=5)
            .flat_map(|a| (a + 1..=5).flat_map(move |b| (b + 1..=5).map(move |c| vec![a, b, c])))
            .collect();
        let mut checked = 0;
        for mask in 1u32..(1 << all.len()) {
            if mask.count_ones() > 3 {
                continue;
            }
            let edges: Vec<_> = (0..all.len()).filter(|i| mask >> i & 1 == 1).map(|i| all[i].clone()).collect();
            let g = Hypergraph::build(5, 3, &edges).unwrap();
            assert_eq!(recognize(&g).is_hyperstar(), brute_hyperstar(&g), "{edges:?}");
            checked += 1;
        }
        assert!(checked > 100);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 3), Some(4));
        assert_eq!(binomial(9, 3), Some(84));
        assert_eq!(binomial(3, 5), Some(0));
        assert_eq!(binomial(60, 30), Some(118264581564861424));
    }

    #[test]
    fn contains_edge_binary_search() {
        let g = Hypergraph::build(5, 3, &[[1, 2, 3], [2, 3, 4], [3, 4, 5]]).unwrap();
        assert!(g.contains_edge(&[1, 2, 3]));
        assert!(!g.contains_edge(&[0, 1, 3]));
        assert_eq!(g.num_edges(), 3);
    }
}
