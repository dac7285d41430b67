use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::x_exact;
use crate::cutspace::bipartite_density;
use crate::error::{Error, Result};
use crate::graph::{chromatic_number, odd_girth, Graph};
use crate::rational::{self, Rational};

/// Largest graph whose induced subgraphs are all scanned.
pub const MAX_INDUCED_SCAN_VERTICES: usize = 16;
/// Largest graph for which [`bounds`] also solves for the exact value.
pub const MAX_BOUNDS_EXACT_VERTICES: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    /// `1/b(G)`.
    #[serde(with = "rational::serde_opt_str")]
    pub lower_bipartite: Option<Rational>,
    /// `max 1/b(H)` over induced subgraphs `H` with an edge.
    #[serde(with = "rational::serde_opt_str")]
    pub lower_subgraph: Option<Rational>,
    /// `1 + 1/(g_o − 1)`, or 1 for bipartite graphs.
    #[serde(with = "rational::serde_opt_str")]
    pub lower_odd_girth: Option<Rational>,
    /// `2 − 1/⌈χ/2⌉`.
    #[serde(with = "rational::serde_opt_str")]
    pub upper_chi: Option<Rational>,
    #[serde(with = "rational::serde_opt_str")]
    pub exact: Option<Rational>,
    /// Why a field is missing, keyed by field name.
    pub unavailable: BTreeMap<String, String>,
}

impl BoundsReport {
    pub fn lowers(&self) -> impl Iterator<Item = &Rational> {
        [&self.lower_bipartite, &self.lower_subgraph, &self.lower_odd_girth].into_iter().flatten()
    }

    /// Every lower bound is at most every upper bound and the exact value
    /// (if known) lies between them.
    pub fn consistent(&self) -> bool {
        let upper = self.upper_chi.iter().chain(self.exact.iter());
        let lows: Vec<&Rational> = self.lowers().chain(self.exact.iter()).collect();
        upper.into_iter().all(|u| lows.iter().all(|l| *l <= u))
    }
}

/// Largest `|E(H)| / MC(H)` over induced subgraphs `H`, with a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedBound {
    pub value: Rational,
    pub vertex_mask: u64,
}

pub fn induced_density_bound(g: &Graph) -> Result<InducedBound> {
    g.require_edges()?;
    let n = g.n();
    if n > MAX_INDUCED_SCAN_VERTICES {
        return Err(Error::SizeLimit { what: "induced subgraph scan", limit: MAX_INDUCED_SCAN_VERTICES, actual: n });
    }
    let adj = g.masks().expect("small graph has masks");
    let best = (1u64..1 << n)
        .into_par_iter()
        .filter_map(|s| {
            let edges: u32 = (0..n).filter(|&v| s >> v & 1 == 1).map(|v| (adj[v] & s).count_ones()).sum::<u32>() / 2;
            if edges == 0 {
                return None;
            }
            let low = s & s.wrapping_neg();
            let rest = s & !low;
            let mut mc = 0u32;
            let mut t = rest;
            loop {
                let mut cut = 0;
                let mut bits = t;
                while bits != 0 {
                    let v = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    cut += (adj[v] & s & !t).count_ones();
                }
                mc = mc.max(cut);
                if t == 0 {
                    break;
                }
                t = (t - 1) & rest;
            }
            Some((edges as u64, mc as u64, s))
        })
        .reduce_with(|a, b| {
            // larger ratio first, then the smaller vertex set
            match (a.0 * b.1).cmp(&(b.0 * a.1)) {
                std::cmp::Ordering::Greater => a,
                std::cmp::Ordering::Less => b,
                std::cmp::Ordering::Equal => {
                    if a.2 <= b.2 {
                        a
                    } else {
                        b
                    }
                }
            }
        })
        .expect("graph has an edge");
    Ok(InducedBound { value: rational::rat(best.0 as i64, best.1 as i64), vertex_mask: best.2 })
}

fn keep<T>(out: &mut BTreeMap<String, String>, field: &str, r: Result<T>) -> Option<T> {
    match r {
        Ok(v) => Some(v),
        Err(e) => {
            out.insert(field.to_string(), e.to_string());
            None
        }
    }
}

/// All bounds that fit within the size limits; missing ones are explained
/// in [`BoundsReport::unavailable`].
pub fn bounds(g: &Graph) -> Result<BoundsReport> {
    g.require_edges()?;
    let mut unavailable = BTreeMap::new();
    let lower_bipartite = keep(&mut unavailable, "lower_bipartite", bipartite_density(g).map(|b| b.recip()));
    let lower_subgraph = keep(&mut unavailable, "lower_subgraph", induced_density_bound(g).map(|b| b.value));
    let lower_odd_girth = Some(match odd_girth(g) {
        None => rational::int(1),
        Some(go) => rational::int(1) + rational::rat(1, go as i64 - 1),
    });
    let upper_chi = keep(
        &mut unavailable,
        "upper_chi",
        chromatic_number(g).map(|chi| rational::int(2) - rational::rat(1, chi.div_ceil(2) as i64)),
    );
    let exact = if g.n() <= MAX_BOUNDS_EXACT_VERTICES {
        keep(&mut unavailable, "exact", x_exact(g).map(|r| r.value))
    } else {
        unavailable.insert(
            "exact".into(),
            format!("not attempted above {MAX_BOUNDS_EXACT_VERTICES} vertices"),
        );
        None
    };
    Ok(BoundsReport { lower_bipartite, lower_subgraph, lower_odd_girth, upper_chi, exact, unavailable })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};
    use crate::rational::rat;

    #[test]
    fn petersen() {
        let r = bounds(&generate(Family::Petersen).unwrap()).unwrap();
        assert_eq!(r.lower_bipartite, Some(rat(5, 4)));
        assert_eq!(r.lower_odd_girth, Some(rat(5, 4)));
        assert_eq!(r.upper_chi, Some(rat(3, 2)));
        assert_eq!(r.exact, Some(rat(5, 4)));
        assert!(r.consistent());
    }

    #[test]
    fn k4() {
        let r = bounds(&generate(Family::Complete(4)).unwrap()).unwrap();
        assert_eq!(r.lower_bipartite, Some(rat(3, 2)));
        assert_eq!(r.upper_chi, Some(rat(3, 2)));
        assert_eq!(r.exact, Some(rat(3, 2)));
    }

    #[test]
    fn circular_clique_gap() {
        let r = bounds(&generate(Family::CircularClique(11, 4)).unwrap()).unwrap();
        assert_eq!(r.lower_subgraph, Some(rat(5, 4)));
        assert_eq!(r.exact, Some(rat(22, 17)));
        assert!(r.lower_subgraph < r.exact);
        assert!(r.consistent());
    }

    #[test]
    fn induced_scan_brute_force() {
        // triangle with a pendant path: the triangle alone is densest
        let g = Graph::new(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)]).unwrap();
        let b = induced_density_bound(&g).unwrap();
        assert_eq!(b.value, rat(3, 2));
        assert_eq!(b.vertex_mask, 0b111);
    }

    #[test]
    fn large_graph_partial_report() {
        let g = generate(Family::Cycle(17)).unwrap();
        let r = bounds(&g).unwrap();
        assert!(r.lower_subgraph.is_none());
        assert!(r.unavailable.contains_key("lower_subgraph"));
        assert_eq!(r.exact, Some(rat(17, 16)));
    }
}
