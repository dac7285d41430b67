//! Cuts of a graph: enumeration, exact maximum cuts, bipartite density and
//! cover checking.

mod maxcut;

pub use maxcut::{max_cut, MaxCut, MaxCutSolver, MaxCutStrategy, MAX_EXHAUSTIVE_VERTICES, MAX_FRONTIER_WIDTH};

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::{self, Rational};

/// Largest graph whose cuts are listed explicitly.
pub const MAX_ENUMERATION_VERTICES: usize = 21;

/// A cut `δ(W)` in canonical form (vertex 0 not in `W`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cut {
    pub member_mask: u64,
    /// Indices into [`Graph::edges`] of the edges with exactly one end in `W`.
    pub edges: Vec<usize>,
}

impl Cut {
    /// The cut `δ(W)` of `g`, canonicalized by complementing when `0 ∈ W`.
    pub fn new(g: &Graph, mask: u64) -> Result<Cut> {
        let mask = canonical_mask(g.n(), mask)?;
        let edges = cut_edges(g, mask);
        Ok(Cut { member_mask: mask, edges })
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.member_mask >> v & 1 == 1
    }

    pub fn hex(&self) -> String {
        format!("{:x}", self.member_mask)
    }
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Validates `mask` against `n` vertices and complements it if it holds vertex 0.
pub fn canonical_mask(n: usize, mask: u64) -> Result<u64> {
    if n > 64 {
        return Err(Error::SizeLimit { what: "cut vertices", limit: 64, actual: n });
    }
    let full = full_mask(n);
    if mask & !full != 0 {
        return Err(Error::InvalidParameters(format!("cut mask {mask:x} has bits outside {n} vertices")));
    }
    Ok(if mask & 1 == 1 { full & !mask } else { mask })
}

pub(crate) fn crosses(mask: u64, (u, v): (usize, usize)) -> bool {
    (mask >> u ^ mask >> v) & 1 == 1
}

pub(crate) fn cut_edges(g: &Graph, mask: u64) -> Vec<usize> {
    g.edges()
        .iter()
        .enumerate()
        .filter(|&(_, &e)| crosses(mask, e))
        .map(|(i, _)| i)
        .collect()
}

/// All canonical cuts with a nonempty edge set, in increasing mask order.
///
/// Distinct `W` with equal `δ(W)` (disconnected graphs) are all listed.
pub fn enumerate_cuts(g: &Graph) -> Result<Vec<Cut>> {
    if g.n() > MAX_ENUMERATION_VERTICES {
        return Err(Error::SizeLimit { what: "cut enumeration vertices", limit: MAX_ENUMERATION_VERTICES, actual: g.n() });
    }
    let half = 1u64 << (g.n() - 1);
    Ok((0..half)
        .map(|i| i << 1)
        .filter_map(|mask| {
            let edges = cut_edges(g, mask);
            (!edges.is_empty()).then_some(Cut { member_mask: mask, edges })
        })
        .collect())
}

/// `MC(G) / |E(G)|`.
pub fn bipartite_density(g: &Graph) -> Result<Rational> {
    g.require_edges()?;
    let mc = max_cut(g, None)?;
    Ok(mc.value / rational::from_usize(g.m()))
}

/// Size of the cut between the k-subsets containing a fixed element and
/// the rest in `K(n, k)`: `C(n-1, k-1) * C(n-k, k)`.
pub fn kneser_cut_size(n: u64, k: u64) -> Result<BigUint> {
    if k == 0 || 2 * k > n {
        return Err(Error::InvalidParameters(format!("need 0 < 2k <= n, got n={n} k={k}")));
    }
    Ok(crate::spectral::binomial(n - 1, k - 1) * crate::spectral::binomial(n - k, k))
}

/// One cut of a family with its (nonnegative) weight or multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedCut {
    #[serde(with = "hex_mask")]
    pub mask: u64,
    #[serde(with = "crate::rational::serde_str")]
    pub weight: Rational,
}

/// Weighted collection of canonical cuts; serializes as a JSON list of
/// `{"mask": "<hex>", "weight": "p/q"}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CutFamily {
    pub cuts: Vec<WeightedCut>,
}

impl CutFamily {
    pub fn new(cuts: Vec<WeightedCut>) -> Self {
        CutFamily { cuts }
    }

    /// Unit-weight family from a list of vertex sets.
    pub fn uniform(masks: impl IntoIterator<Item = u64>) -> Self {
        CutFamily {
            cuts: masks.into_iter().map(|mask| WeightedCut { mask, weight: rational::int(1) }).collect(),
        }
    }

    pub fn total_weight(&self) -> Rational {
        self.cuts.iter().map(|c| &c.weight).sum()
    }

    /// Checks masks against `g`, canonical form, distinctness and sign of weights.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let mut seen = std::collections::HashSet::new();
        for c in &self.cuts {
            let canon = canonical_mask(g.n(), c.mask).map_err(|e| Error::MalformedCertificate(e.to_string()))?;
            if canon != c.mask {
                return Err(Error::MalformedCertificate(format!("cut {:x} is not canonical", c.mask)));
            }
            if !seen.insert(c.mask) {
                return Err(Error::MalformedCertificate(format!("cut {:x} listed twice", c.mask)));
            }
            if !rational::is_nonnegative(&c.weight) {
                return Err(Error::MalformedCertificate(format!("cut {:x} has negative weight", c.mask)));
            }
        }
        Ok(())
    }

    /// Total weight covering each edge.
    pub fn coverage(&self, g: &Graph) -> Vec<Rational> {
        let mut cover = vec![Rational::zero(); g.m()];
        for c in &self.cuts {
            for (i, &e) in g.edges().iter().enumerate() {
                if crosses(c.mask, e) {
                    cover[i] += &c.weight;
                }
            }
        }
        cover
    }

    /// First edge covered less than `k`, if any.
    pub fn undercovered_edge(&self, g: &Graph, k: &Rational) -> Result<Option<usize>> {
        self.validate(g)?;
        Ok(self.coverage(g).iter().position(|c| c < k))
    }
}

/// True iff every edge of `g` is covered with total weight at least `k`.
pub fn check_cover(g: &Graph, family: &CutFamily, k: &Rational) -> Result<bool> {
    Ok(family.undercovered_edge(g, k)?.is_none())
}

mod hex_mask {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(mask: &u64, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{mask:x}"))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<u64, D::Error> {
        let text = String::deserialize(d)?;
        let digits = text.trim_start_matches("0x");
        u64::from_str_radix(digits, 16).map_err(serde::de::Error::custom)
    }
}
