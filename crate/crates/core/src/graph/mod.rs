//! Simple undirected graphs and the combinatorial searches over them.

mod automorphism;
mod families;
mod hom;
mod io;
mod structure;

pub use automorphism::{edge_orbits, find_automorphism, EdgeOrbits, MAX_ORBIT_VERTICES};
pub use families::{combine, generate, kneser_vertex_sets, product, CombineKind, Family, ProductKind};
pub use hom::{
    find_homomorphism, find_homomorphism_with_budget, parity_lift, VertexMap,
    DEFAULT_HOM_BUDGET, MAX_HOM_SOURCE, MAX_HOM_TARGET,
};
pub use io::{parse_graph, write_graph};
pub use structure::{
    blocks, chromatic_number, chromatic_number_with_budget, components, is_bipartite,
    odd_girth, DEFAULT_COLORING_BUDGET, MAX_CHROMATIC_VERTICES,
};

use crate::error::{Error, Result};

/// Largest vertex count any constructor will produce.
pub const MAX_VERTICES: usize = 1 << 20;
/// Largest edge count any constructor will produce.
pub const MAX_EDGES: usize = 1 << 22;

/// A simple undirected loopless graph on `0..n`.
///
/// Edges are kept sorted lexicographically with `u < v`; their position in
/// that order is the edge index used by cuts and certificates.
#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    masks: Option<Vec<u64>>,
    family: Option<Family>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl Graph {
    /// Builds a graph, rejecting loops, parallel edges and out-of-range endpoints.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameters("a graph needs at least one vertex".into()));
        }
        if n > MAX_VERTICES {
            return Err(Error::SizeLimit { what: "vertices", limit: MAX_VERTICES, actual: n });
        }
        let mut list = Vec::new();
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidParameters(format!(
                    "edge {a}-{b} out of range for {n} vertices"
                )));
            }
            if a == b {
                return Err(Error::InvalidParameters(format!("loop at vertex {a}")));
            }
            list.push((a.min(b), a.max(b)));
            if list.len() > MAX_EDGES {
                return Err(Error::SizeLimit { what: "edges", limit: MAX_EDGES, actual: list.len() });
            }
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidParameters(format!(
                "parallel edge {}-{}",
                w[0].0, w[0].1
            )));
        }
        Ok(Self::from_sorted(n, list))
    }

    /// `edges` must already be sorted, deduplicated and normalized.
    pub(crate) fn from_sorted(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let masks = (n <= 64).then(|| {
            adj.iter()
                .map(|list| list.iter().fold(0u64, |m, &v| m | (1u64 << v)))
                .collect()
        });
        Graph { n, edges, adj, masks, family: None }
    }

    pub(crate) fn with_family(mut self, family: Family) -> Self {
        self.family = Some(family);
        self
    }

    /// The generator that produced this graph, if any.
    pub fn family(&self) -> Option<&Family> {
        self.family.as_ref()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Position of edge `{u, v}` in [`Graph::edges`].
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    /// Per-vertex neighbor bitmasks; available for graphs with at most 64 vertices.
    pub fn masks(&self) -> Option<&[u64]> {
        self.masks.as_deref()
    }

    pub(crate) fn masks_or_limit(&self, what: &'static str) -> Result<&[u64]> {
        self.masks
            .as_deref()
            .ok_or(Error::SizeLimit { what, limit: 64, actual: self.n })
    }

    pub fn is_edgeless(&self) -> bool {
        self.edges.is_empty()
    }

    /// Invariants are undefined on edgeless graphs.
    pub fn require_edges(&self) -> Result<()> {
        if self.is_edgeless() {
            Err(Error::Edgeless)
        } else {
            Ok(())
        }
    }

    pub fn is_regular(&self) -> Option<usize> {
        let d = self.degree(0);
        self.adj.iter().all(|a| a.len() == d).then_some(d)
    }

    /// The subgraph induced by `vertices`, relabelled `0..vertices.len()` in the given order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph> {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            if v >= self.n || index[v] != usize::MAX {
                return Err(Error::InvalidParameters(format!("bad vertex {v} in induced subgraph")));
            }
            index[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|&(u, v)| (index[u], index[v]));
        Graph::new(vertices.len(), edges)
    }

    /// The spanning subgraph keeping only the edges selected by `keep`.
    pub fn spanning_subgraph(&self, mut keep: impl FnMut(usize) -> bool) -> Graph {
        let edges = (0..self.m()).filter(|&i| keep(i)).map(|i| self.edges[i]).collect();
        Graph::from_sorted(self.n, edges)
    }

    /// Dense adjacency bit matrix, used as a fast lookup by the searches.
    pub fn bit_matrix(&self) -> BitMatrix {
        let mut m = BitMatrix::new(self.n);
        for &(u, v) in &self.edges {
            m.set(u, v);
            m.set(v, u);
        }
        m
    }
}

/// Square bit matrix with rows of `u64` words.
#[derive(Clone, Debug)]
pub struct BitMatrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        BitMatrix { n, words, bits: vec![0; n * words] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn words(&self) -> usize {
        self.words
    }

    pub fn set(&mut self, r: usize, c: usize) {
        self.bits[r * self.words + c / 64] |= 1u64 << (c % 64);
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.bits[r * self.words + c / 64] >> (c % 64) & 1 == 1
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.bits[r * self.words..(r + 1) * self.words]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_loops_duplicates_and_range() {
        assert!(Graph::new(3, [(0, 0)]).is_err());
        assert!(Graph::new(3, [(0, 1), (1, 0)]).is_err());
        assert!(Graph::new(3, [(0, 3)]).is_err());
        assert!(Graph::new(0, []).is_err());
    }

    #[test]
    fn masks_match_edges() {
        let g = Graph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let masks = g.masks().unwrap();
        for u in 0..4 {
            for v in 0..4 {
                assert_eq!(masks[u] >> v & 1 == 1, g.has_edge(u, v));
                assert_eq!(g.has_edge(u, v), g.has_edge(v, u));
            }
        }
        assert_eq!(g.edges(), &[(0, 1), (0, 3), (1, 2), (2, 3)]);
        assert_eq!(g.edge_index(3, 0), Some(1));
    }

    #[test]
    fn edgeless_is_constructible_but_flagged() {
        let g = Graph::new(3, []).unwrap();
        assert!(g.is_edgeless());
        assert_eq!(g.require_edges(), Err(Error::Edgeless));
    }

    #[test]
    fn induced_subgraph_relabels() {
        let g = Graph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let h = g.induced_subgraph(&[3, 2, 1]).unwrap();
        assert_eq!(h.edges(), &[(0, 1), (1, 2)]);
    }
}
