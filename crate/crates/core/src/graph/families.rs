use std::fmt;

use super::{Graph, MAX_EDGES, MAX_VERTICES};
use crate::error::{Error, Result};

/// The named graph generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Complete(usize),
    Cycle(usize),
    Path(usize),
    CompleteBipartite(usize, usize),
    Petersen,
    /// `Kneser(n, k)`: k-subsets of `[n]`, adjacent iff disjoint.
    Kneser(usize, usize),
    /// `Q_{n/k}`: `{0,1}^n`, adjacent iff Hamming distance at least `k`.
    CubePower(usize, usize),
    /// `Q_n^{=k}`: `{0,1}^n`, adjacent iff Hamming distance exactly `k`.
    CubeLayer(usize, usize),
    /// `K_{n/k}`: `Z_n`, adjacent iff circular distance at least `k`.
    CircularClique(usize, usize),
}

impl Family {
    /// Resolves a family name and its integer parameters.
    pub fn parse(name: &str, params: &[usize]) -> Result<Family> {
        let arity = |k: usize| {
            if params.len() == k {
                Ok(())
            } else {
                Err(Error::InvalidParameters(format!(
                    "family `{name}` takes {k} parameter(s), got {}",
                    params.len()
                )))
            }
        };
        let fam = match name {
            "complete" => {
                arity(1)?;
                Family::Complete(params[0])
            }
            "cycle" => {
                arity(1)?;
                Family::Cycle(params[0])
            }
            "path" => {
                arity(1)?;
                Family::Path(params[0])
            }
            "complete-bipartite" => {
                arity(2)?;
                Family::CompleteBipartite(params[0], params[1])
            }
            "petersen" => {
                arity(0)?;
                Family::Petersen
            }
            "kneser" => {
                arity(2)?;
                Family::Kneser(params[0], params[1])
            }
            "cube-power" => {
                arity(2)?;
                Family::CubePower(params[0], params[1])
            }
            "cube-layer" => {
                arity(2)?;
                Family::CubeLayer(params[0], params[1])
            }
            "circular-clique" => {
                arity(2)?;
                Family::CircularClique(params[0], params[1])
            }
            other => return Err(Error::UnknownFamily(other.to_string())),
        };
        Ok(fam)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Complete(_) => "complete",
            Family::Cycle(_) => "cycle",
            Family::Path(_) => "path",
            Family::CompleteBipartite(..) => "complete-bipartite",
            Family::Petersen => "petersen",
            Family::Kneser(..) => "kneser",
            Family::CubePower(..) => "cube-power",
            Family::CubeLayer(..) => "cube-layer",
            Family::CircularClique(..) => "circular-clique",
        }
    }

    pub fn params(&self) -> Vec<usize> {
        match *self {
            Family::Complete(n) | Family::Cycle(n) | Family::Path(n) => vec![n],
            Family::Petersen => vec![],
            Family::CompleteBipartite(a, b)
            | Family::Kneser(a, b)
            | Family::CubePower(a, b)
            | Family::CubeLayer(a, b)
            | Family::CircularClique(a, b) => vec![a, b],
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())?;
        for p in self.params() {
            write!(f, " {p}")?;
        }
        Ok(())
    }
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidParameters(msg.into())
}

fn binom_u128(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

fn check_counts(vertices: u128, edges: u128) -> Result<()> {
    if vertices > MAX_VERTICES as u128 {
        return Err(Error::SizeLimit {
            what: "vertices",
            limit: MAX_VERTICES,
            actual: vertices.min(usize::MAX as u128) as usize,
        });
    }
    if edges > MAX_EDGES as u128 {
        return Err(Error::SizeLimit {
            what: "edges",
            limit: MAX_EDGES,
            actual: edges.min(usize::MAX as u128) as usize,
        });
    }
    if edges == 0 {
        return Err(Error::Edgeless);
    }
    Ok(())
}

/// Generates a named graph.
///
/// Cube families index vertices by the binary encoding of the word; Kneser
/// graphs list the k-subsets in colexicographic order (increasing bitmask).
pub fn generate(family: Family) -> Result<Graph> {
    let g = match family {
        Family::Complete(n) => {
            if n < 2 {
                return Err(Error::Edgeless);
            }
            check_counts(n as u128, binom_u128(n, 2))?;
            let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            Graph::from_sorted(n, edges)
        }
        Family::Cycle(n) => {
            if n < 3 {
                return Err(bad("a cycle needs at least 3 vertices"));
            }
            check_counts(n as u128, n as u128)?;
            Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))?
        }
        Family::Path(n) => {
            if n < 2 {
                return Err(Error::Edgeless);
            }
            check_counts(n as u128, n as u128 - 1)?;
            Graph::from_sorted(n, (0..n - 1).map(|i| (i, i + 1)).collect())
        }
        Family::CompleteBipartite(a, b) => {
            if a == 0 || b == 0 {
                return Err(Error::Edgeless);
            }
            check_counts(a as u128 + b as u128, a as u128 * b as u128)?;
            let edges = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))).collect();
            Graph::from_sorted(a + b, edges)
        }
        Family::Petersen => {
            let outer = (0..5).map(|i| (i, (i + 1) % 5));
            let spokes = (0..5).map(|i| (i, i + 5));
            let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
            Graph::new(10, outer.chain(spokes).chain(inner))?
        }
        Family::Kneser(n, k) => kneser(n, k)?,
        Family::CubePower(n, k) => cube(n, k, false)?,
        Family::CubeLayer(n, k) => cube(n, k, true)?,
        Family::CircularClique(n, k) => {
            if k == 0 {
                return Err(bad("circular clique needs k >= 1"));
            }
            if n < 2 * k {
                return Err(Error::Edgeless);
            }
            check_counts(n as u128, (n * (n - 2 * k + 1) / 2) as u128)?;
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    let d = v - u;
                    if d.min(n - d) >= k {
                        edges.push((u, v));
                    }
                }
            }
            Graph::from_sorted(n, edges)
        }
    };
    Ok(g.with_family(family))
}

fn kneser(n: usize, k: usize) -> Result<Graph> {
    if k == 0 || 2 * k > n {
        return Err(bad("kneser graph needs 0 < 2k <= n"));
    }
    if n > 64 {
        return Err(bad("kneser graph supports n <= 64"));
    }
    let count = binom_u128(n, k);
    check_counts(count, count * binom_u128(n - k, k) / 2)?;
    let count = count as usize;
    let sets: Vec<u64> = colex_subsets(n, k).collect();
    debug_assert_eq!(sets.len(), count);
    let rank = |mut set: u64| -> usize {
        // combinatorial number system: sum of C(c_i, i)
        let mut r = 0u128;
        let mut i = 1;
        while set != 0 {
            let c = set.trailing_zeros() as usize;
            r += binom_u128(c, i);
            i += 1;
            set &= set - 1;
        }
        r as usize
    };
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut edges = Vec::new();
    for (i, &s) in sets.iter().enumerate() {
        let rest = full & !s;
        let mut row: Vec<usize> = submasks_of_size(rest, k)
            .map(rank)
            .filter(|&j| j > i)
            .collect();
        row.sort_unstable();
        edges.extend(row.into_iter().map(|j| (i, j)));
    }
    Ok(Graph::from_sorted(count, edges))
}

/// The vertex sets of `K(n, k)` as bitmasks, in vertex-index order.
pub fn kneser_vertex_sets(n: usize, k: usize) -> Vec<u64> {
    colex_subsets(n, k).collect()
}

/// k-subsets of `[n]` as bitmasks, in increasing numeric (colex) order.
pub(crate) fn colex_subsets(n: usize, k: usize) -> impl Iterator<Item = u64> {
    let limit: u128 = 1u128 << n;
    let first: u64 = if k == 0 { 0 } else { (1u64 << k) - 1 };
    let mut next = Some(first);
    std::iter::from_fn(move || {
        let cur = next?;
        if (cur as u128) >= limit && k > 0 {
            return None;
        }
        next = if k == 0 {
            None
        } else {
            // Gosper's hack
            let c = cur & cur.wrapping_neg();
            let r = cur.wrapping_add(c);
            if r == 0 {
                None
            } else {
                Some((((r ^ cur) >> 2) / c) | r)
            }
        };
        Some(cur)
    })
}

/// Subsets of `mask` with exactly `k` elements.
fn submasks_of_size(mask: u64, k: usize) -> impl Iterator<Item = u64> {
    let positions: Vec<u32> = (0..64).filter(|b| mask >> b & 1 == 1).collect();
    let m = positions.len();
    colex_subsets(m, k).map(move |sel| {
        let mut out = 0u64;
        let mut s = sel;
        while s != 0 {
            let b = s.trailing_zeros() as usize;
            out |= 1u64 << positions[b];
            s &= s - 1;
        }
        out
    })
}

fn cube(n: usize, k: usize, exact: bool) -> Result<Graph> {
    if n == 0 || n > 20 {
        return Err(bad("cube families need 1 <= n <= 20"));
    }
    if k == 0 {
        return Err(bad("cube families need k >= 1"));
    }
    if k > n {
        return Err(Error::Edgeless);
    }
    let per_vertex: u128 = if exact {
        binom_u128(n, k)
    } else {
        (k..=n).map(|j| binom_u128(n, j)).sum()
    };
    check_counts(1u128 << n, (per_vertex << n) / 2)?;
    let size = 1usize << n;
    let diffs: Vec<usize> = (1..size)
        .filter(|d| {
            let w = d.count_ones() as usize;
            if exact {
                w == k
            } else {
                w >= k
            }
        })
        .collect();
    let mut edges = Vec::with_capacity(size * diffs.len() / 2);
    for u in 0..size {
        let mut row: Vec<usize> = diffs.iter().map(|d| u ^ d).filter(|&v| v > u).collect();
        row.sort_unstable();
        edges.extend(row.into_iter().map(|v| (u, v)));
    }
    Ok(Graph::from_sorted(size, edges))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductKind {
    Cartesian,
    Categorical,
}

/// Graph products; vertex `(u, v)` gets index `u * |V(g2)| + v`.
pub fn product(kind: ProductKind, g1: &Graph, g2: &Graph) -> Result<Graph> {
    let (n1, n2) = (g1.n(), g2.n());
    let n = n1
        .checked_mul(n2)
        .filter(|&n| n <= MAX_VERTICES)
        .ok_or(Error::SizeLimit { what: "vertices", limit: MAX_VERTICES, actual: usize::MAX })?;
    let idx = |u: usize, v: usize| u * n2 + v;
    let mut edges = Vec::new();
    match kind {
        ProductKind::Cartesian => {
            for u in 0..n1 {
                for &(a, b) in g2.edges() {
                    edges.push((idx(u, a), idx(u, b)));
                }
            }
            for &(a, b) in g1.edges() {
                for v in 0..n2 {
                    edges.push((idx(a, v), idx(b, v)));
                }
            }
        }
        ProductKind::Categorical => {
            for &(a, b) in g1.edges() {
                for &(c, d) in g2.edges() {
                    edges.push((idx(a, c), idx(b, d)));
                    edges.push((idx(a, d), idx(b, c)));
                }
            }
        }
    }
    let g = Graph::new(n, edges)?;
    g.require_edges()?;
    Ok(g)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CombineKind {
    DisjointUnion,
    /// Identify vertex `.0` of the first graph with vertex `.1` of the second.
    Amalgam(usize, usize),
}

/// Disjoint union or one-vertex amalgam. Vertices of `g2` follow those of
/// `g1`; in an amalgam the shared vertex keeps its `g1` index.
pub fn combine(kind: CombineKind, g1: &Graph, g2: &Graph) -> Result<Graph> {
    let n1 = g1.n();
    match kind {
        CombineKind::DisjointUnion => {
            let edges = g1
                .edges()
                .iter()
                .copied()
                .chain(g2.edges().iter().map(|&(u, v)| (u + n1, v + n1)));
            Graph::new(n1 + g2.n(), edges)
        }
        CombineKind::Amalgam(a, b) => {
            if a >= n1 || b >= g2.n() {
                return Err(bad(format!("shared vertex ({a}, {b}) out of range")));
            }
            let relabel = |w: usize| match w.cmp(&b) {
                std::cmp::Ordering::Equal => a,
                std::cmp::Ordering::Less => n1 + w,
                std::cmp::Ordering::Greater => n1 + w - 1,
            };
            let edges = g1
                .edges()
                .iter()
                .copied()
                .chain(g2.edges().iter().map(|&(u, v)| (relabel(u), relabel(v))));
            Graph::new(n1 + g2.n() - 1, edges)
        }
    }
}
