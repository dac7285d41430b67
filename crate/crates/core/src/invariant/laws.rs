use serde::Serialize;

use super::x_exact;
use crate::error::{Error, Result};
use crate::graph::{blocks, combine, find_homomorphism, product, CombineKind, Graph, ProductKind, VertexMap};
use crate::rational::{self, Rational};

/// `x` of two graphs and of the graphs built from them, with the laws
/// relating those values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OperationsReport {
    #[serde(with = "rational::serde_str")]
    pub x1: Rational,
    #[serde(with = "rational::serde_str")]
    pub x2: Rational,
    #[serde(with = "rational::serde_str")]
    pub disjoint_union: Rational,
    /// Amalgam identifying vertex 0 of both graphs.
    #[serde(with = "rational::serde_str")]
    pub amalgam: Rational,
    /// Largest `x` among the blocks of the amalgam, each solved alone.
    #[serde(with = "rational::serde_str")]
    pub amalgam_blocks_max: Rational,
    #[serde(with = "rational::serde_str")]
    pub cartesian: Rational,
    #[serde(with = "rational::serde_str")]
    pub categorical: Rational,
    /// `x(G₁ ∪ G₂) = max`.
    pub union_law: bool,
    /// `x(amalgam) = max = max over blocks`.
    pub block_law: bool,
    /// `x(G₁ □ G₂) = max`.
    pub cartesian_law: bool,
    /// `x(G₁ × G₂) ≤ min`.
    pub categorical_law: bool,
}

impl OperationsReport {
    pub fn holds(&self) -> bool {
        self.union_law && self.block_law && self.cartesian_law && self.categorical_law
    }
}

/// The subgraph formed by the given edges, vertices renumbered in order.
pub(crate) fn edge_subgraph(g: &Graph, edges: &[usize]) -> Result<Graph> {
    let mut vs: Vec<usize> = edges.iter().flat_map(|&e| [g.edges()[e].0, g.edges()[e].1]).collect();
    vs.sort_unstable();
    vs.dedup();
    let index = |v: usize| vs.binary_search(&v).expect("endpoint listed");
    Graph::new(vs.len(), edges.iter().map(|&e| (index(g.edges()[e].0), index(g.edges()[e].1))))
}

pub fn check_operations_laws(g1: &Graph, g2: &Graph) -> Result<OperationsReport> {
    let x1 = x_exact(g1)?.value;
    let x2 = x_exact(g2)?.value;
    let max = (&x1).max(&x2).clone();
    let min = (&x1).min(&x2).clone();

    let disjoint_union = x_exact(&combine(CombineKind::DisjointUnion, g1, g2)?)?.value;
    let am = combine(CombineKind::Amalgam(0, 0), g1, g2)?;
    let amalgam = x_exact(&am)?.value;
    let mut amalgam_blocks_max = rational::int(0);
    for b in blocks(&am) {
        let v = x_exact(&edge_subgraph(&am, &b)?)?.value;
        if v > amalgam_blocks_max {
            amalgam_blocks_max = v;
        }
    }
    let cartesian = x_exact(&product(ProductKind::Cartesian, g1, g2)?)?.value;
    let categorical = x_exact(&product(ProductKind::Categorical, g1, g2)?)?.value;
    Ok(OperationsReport {
        union_law: disjoint_union == max,
        block_law: amalgam == max && amalgam_blocks_max == max,
        cartesian_law: cartesian == max,
        categorical_law: categorical <= min,
        x1,
        x2,
        disjoint_union,
        amalgam,
        amalgam_blocks_max,
        cartesian,
        categorical,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum HomOutcome {
    Found { image: Vec<usize> },
    NoHom,
    /// The search ran out of budget; nothing is concluded.
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomReport {
    pub outcome: HomOutcome,
    #[serde(with = "rational::serde_opt_str")]
    pub x_g: Option<Rational>,
    #[serde(with = "rational::serde_opt_str")]
    pub x_h: Option<Rational>,
    /// `x(g) ≤ x(h)`, evaluated only when a homomorphism was found.
    pub monotone: Option<bool>,
}

/// Searches for `g → h` and, when found, checks `x(g) ≤ x(h)`.
pub fn check_hom_monotone(g: &Graph, h: &Graph) -> Result<HomReport> {
    let found: Option<VertexMap> = match find_homomorphism(g, h) {
        Ok(m) => m,
        Err(Error::BudgetExceeded(_)) => {
            return Ok(HomReport { outcome: HomOutcome::Unknown, x_g: None, x_h: None, monotone: None });
        }
        Err(e) => return Err(e),
    };
    let Some(map) = found else {
        return Ok(HomReport { outcome: HomOutcome::NoHom, x_g: None, x_h: None, monotone: None });
    };
    let xg = x_exact(g)?.value;
    let xh = x_exact(h)?.value;
    Ok(HomReport {
        monotone: Some(xg <= xh),
        outcome: HomOutcome::Found { image: map.image },
        x_g: Some(xg),
        x_h: Some(xh),
    })
}
