//! Exact (weighted) maximum cut.
//!
//! Two exact routes share one entry point:
//! * a Gray-code sweep over all canonical vertex subsets, updating the cut
//!   value incrementally per flipped vertex;
//! * a dynamic program over a vertex elimination order whose state is the
//!   side assignment of the current frontier (placed vertices that still
//!   have unplaced neighbors). Sparse graphs with a narrow frontier are
//!   solved this way far beyond the reach of the sweep.
//!
//! Both return the optimum with the smallest canonical member mask.

use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;

use super::{Cut, full_mask};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::{self, Rational};

/// Largest graph handled by the subset sweep.
pub const MAX_EXHAUSTIVE_VERTICES: usize = 28;
/// Widest frontier handled by the dynamic program.
pub const MAX_FRONTIER_WIDTH: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxCut {
    pub value: Rational,
    pub witness: Cut,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MaxCutStrategy {
    Exhaustive,
    Frontier { width: usize },
}

/// Exact maximum cut; `weights` (one per edge) default to 1.
pub fn max_cut(g: &Graph, weights: Option<&[Rational]>) -> Result<MaxCut> {
    MaxCutSolver::new(g)?.solve(weights)
}

#[derive(Clone, Copy, Debug)]
enum Slot {
    Old(usize),
    New,
}

#[derive(Clone, Debug)]
struct Step {
    vertex: usize,
    old_width: usize,
    /// (position in the old frontier, edge index) for each placed neighbor
    links: Vec<(usize, usize)>,
    new_frontier: Vec<Slot>,
}

/// A maximum-cut oracle prepared for repeated calls on one graph.
#[derive(Clone, Debug)]
pub struct MaxCutSolver<'g> {
    g: &'g Graph,
    strategy: MaxCutStrategy,
    steps: Vec<Step>,
}

impl<'g> MaxCutSolver<'g> {
    /// Picks the cheaper exact route for `g`.
    pub fn new(g: &'g Graph) -> Result<Self> {
        let n = g.n();
        if n > 64 {
            return Err(Error::SizeLimit { what: "max-cut vertices", limit: 64, actual: n });
        }
        let steps = elimination_steps(g);
        let width = steps.iter().map(|s| s.new_frontier.len()).max().unwrap_or(0);
        let sweep_cost = 1u128 << (n - 1);
        let dp_cost = (n as u128) << (width + 1);
        let strategy = if n <= MAX_EXHAUSTIVE_VERTICES && (width > MAX_FRONTIER_WIDTH || sweep_cost <= dp_cost) {
            MaxCutStrategy::Exhaustive
        } else if width <= MAX_FRONTIER_WIDTH {
            MaxCutStrategy::Frontier { width }
        } else {
            return Err(Error::SizeLimit { what: "max-cut frontier width", limit: MAX_FRONTIER_WIDTH, actual: width });
        };
        Ok(MaxCutSolver { g, strategy, steps })
    }

    /// Forces a route; fails if the route is out of its size range.
    pub fn with_strategy(g: &'g Graph, exhaustive: bool) -> Result<Self> {
        let mut s = Self::new_unchecked(g)?;
        if exhaustive {
            if g.n() > MAX_EXHAUSTIVE_VERTICES {
                return Err(Error::SizeLimit { what: "max-cut vertices", limit: MAX_EXHAUSTIVE_VERTICES, actual: g.n() });
            }
            s.strategy = MaxCutStrategy::Exhaustive;
        } else {
            let width = s.steps.iter().map(|s| s.new_frontier.len()).max().unwrap_or(0);
            if width > MAX_FRONTIER_WIDTH {
                return Err(Error::SizeLimit { what: "max-cut frontier width", limit: MAX_FRONTIER_WIDTH, actual: width });
            }
            s.strategy = MaxCutStrategy::Frontier { width };
        }
        Ok(s)
    }

    fn new_unchecked(g: &'g Graph) -> Result<Self> {
        if g.n() > 64 {
            return Err(Error::SizeLimit { what: "max-cut vertices", limit: 64, actual: g.n() });
        }
        Ok(MaxCutSolver { g, strategy: MaxCutStrategy::Exhaustive, steps: elimination_steps(g) })
    }

    pub fn strategy(&self) -> MaxCutStrategy {
        self.strategy
    }

    pub fn graph(&self) -> &'g Graph {
        self.g
    }

    pub fn solve(&self, weights: Option<&[Rational]>) -> Result<MaxCut> {
        let g = self.g;
        let (value, mask) = match weights {
            None => {
                let ones = vec![1i64; g.m()];
                let (v, mask) = self.run(&ones);
                (rational::int(v), mask)
            }
            Some(w) => {
                if w.len() != g.m() {
                    return Err(Error::InvalidParameters(format!(
                        "expected {} edge weights, got {}",
                        g.m(),
                        w.len()
                    )));
                }
                let scale = rational::common_denominator(w.iter());
                let ints: Vec<BigInt> = w.iter().map(|x| x.numer() * (&scale / x.denom())).collect();
                let total: BigInt = ints.iter().map(|x| x.abs()).sum();
                if total.bits() < 62 {
                    let small: Vec<i64> = ints.iter().map(|x| x.to_i64().expect("fits")).collect();
                    let (v, mask) = self.run(&small);
                    (Rational::new(BigInt::from(v), scale), mask)
                } else if total.bits() < 126 {
                    let wide: Vec<i128> = ints.iter().map(|x| x.to_i128().expect("fits")).collect();
                    let (v, mask) = self.run(&wide);
                    (Rational::new(BigInt::from(v), scale), mask)
                } else {
                    return Err(Error::SizeLimit {
                        what: "max-cut weight bits",
                        limit: 126,
                        actual: total.bits() as usize,
                    });
                }
            }
        };
        let witness = Cut { member_mask: mask, edges: super::cut_edges(g, mask) };
        Ok(MaxCut { value, witness })
    }

    fn run<T: Acc>(&self, weights: &[T]) -> (T, u64) {
        if self.g.n() == 1 {
            return (T::default(), 0);
        }
        match self.strategy {
            MaxCutStrategy::Exhaustive => sweep(self.g, weights),
            MaxCutStrategy::Frontier { .. } => frontier_dp(&self.steps, self.g, weights),
        }
    }
}

trait Acc:
    Copy + Ord + Default + Send + Sync + Add<Output = Self> + Sub<Output = Self> + Neg<Output = Self>
{
}

impl Acc for i64 {}
impl Acc for i128 {}

fn better<T: Acc>(a: (T, u64), b: (T, u64)) -> bool {
    a.0 > b.0 || (a.0 == b.0 && a.1 < b.1)
}

/// Gray-code sweep over canonical subsets (vertex 0 fixed outside `W`).
fn sweep<T: Acc>(g: &Graph, weights: &[T]) -> (T, u64) {
    let n = g.n();
    let free = n - 1;
    let top = if free >= 16 { 6 } else { 0 };
    let low = free - top;
    let mut nbrs: Vec<Vec<(usize, T)>> = vec![Vec::new(); n];
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        nbrs[u].push((v, weights[i]));
        nbrs[v].push((u, weights[i]));
    }
    let chunk = |c: u64| -> (T, u64) {
        let mut mask = c << (1 + low);
        let side = |m: u64, v: usize| m >> v & 1 == 1;
        let mut value = T::default();
        for (i, &(u, v)) in g.edges().iter().enumerate() {
            if side(mask, u) != side(mask, v) {
                value = value + weights[i];
            }
        }
        let mut gain: Vec<T> = (0..n)
            .map(|v| {
                nbrs[v].iter().fold(T::default(), |acc, &(u, w)| {
                    if side(mask, u) == side(mask, v) {
                        acc + w
                    } else {
                        acc - w
                    }
                })
            })
            .collect();
        let mut best = (value, mask);
        for i in 1u64..(1u64 << low) {
            let v = 1 + i.trailing_zeros() as usize;
            value = value + gain[v];
            let before = side(mask, v);
            for &(u, w) in &nbrs[v] {
                // the pair (u, v) toggles between same side and opposite sides
                if side(mask, u) == before {
                    gain[u] = gain[u] - w - w;
                } else {
                    gain[u] = gain[u] + w + w;
                }
            }
            gain[v] = -gain[v];
            mask ^= 1u64 << v;
            if better((value, mask), best) {
                best = (value, mask);
            }
        }
        best
    };
    (0..1u64 << top)
        .into_par_iter()
        .map(chunk)
        .reduce_with(|a, b| if better(b, a) { b } else { a })
        .expect("at least one chunk")
}

/// Greedy elimination order starting from vertex 0: next is the vertex
/// that keeps the frontier smallest, then the one with most placed
/// neighbors, then the lowest index.
fn elimination_steps(g: &Graph) -> Vec<Step> {
    let n = g.n();
    let mut placed = vec![false; n];
    let mut remaining: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut frontier: Vec<usize> = Vec::new();
    let mut steps = Vec::with_capacity(n);
    for t in 0..n {
        let v = if t == 0 {
            0
        } else {
            (0..n)
                .filter(|&v| !placed[v])
                .min_by_key(|&v| {
                    let placed_nbrs = g.neighbors(v).iter().filter(|&&u| placed[u]).count();
                    // frontier members whose last unplaced neighbor is v leave
                    let leaving = g
                        .neighbors(v)
                        .iter()
                        .filter(|&&u| placed[u] && remaining[u] == 1)
                        .count();
                    let stays = usize::from(g.degree(v) > placed_nbrs);
                    let size = frontier.len() + stays - leaving;
                    (size, std::cmp::Reverse(placed_nbrs), v)
                })
                .expect("unplaced vertex")
        };
        let links: Vec<(usize, usize)> = g
            .neighbors(v)
            .iter()
            .filter(|&&u| placed[u])
            .map(|&u| {
                let pos = frontier.iter().position(|&f| f == u).expect("placed neighbor is on the frontier");
                (pos, g.edge_index(u, v).expect("edge"))
            })
            .collect();
        placed[v] = true;
        for &u in g.neighbors(v) {
            remaining[u] -= 1;
        }
        let unplaced_nbrs = g.neighbors(v).iter().filter(|&&u| !placed[u]).count();
        let old_width = frontier.len();
        let mut next: Vec<usize> = Vec::new();
        let mut slots: Vec<Slot> = Vec::new();
        for (p, &f) in frontier.iter().enumerate() {
            if remaining[f] > 0 {
                next.push(f);
                slots.push(Slot::Old(p));
            }
        }
        if unplaced_nbrs > 0 {
            next.push(v);
            slots.push(Slot::New);
        }
        steps.push(Step { vertex: v, old_width, links, new_frontier: slots });
        frontier = next;
    }
    steps
}

fn frontier_dp<T: Acc>(steps: &[Step], g: &Graph, weights: &[T]) -> (T, u64) {
    // values[state], masks[state]; unreachable states carry `None`
    let mut cur: Vec<Option<(T, u64)>> = vec![Some((T::default(), 0))];
    for step in steps {
        debug_assert_eq!(cur.len(), 1usize << step.old_width);
        let mut next: Vec<Option<(T, u64)>> = vec![None; 1usize << step.new_frontier.len()];
        let sides: &[u64] = if step.vertex == 0 { &[0] } else { &[0, 1] };
        for (s, entry) in cur.iter().enumerate() {
            let Some((val, mask)) = *entry else { continue };
            for &side in sides {
                let mut gain = T::default();
                for &(p, e) in &step.links {
                    if (s as u64 >> p) & 1 != side {
                        gain = gain + weights[e];
                    }
                }
                let cand = (val + gain, mask | (side << step.vertex));
                let mut idx = 0usize;
                for (j, slot) in step.new_frontier.iter().enumerate() {
                    let bit = match *slot {
                        Slot::Old(p) => (s >> p) & 1,
                        Slot::New => side as usize,
                    };
                    idx |= bit << j;
                }
                match next[idx] {
                    Some(old) if !better(cand, old) => {}
                    _ => next[idx] = Some(cand),
                }
            }
        }
        cur = next;
    }
    let best = cur
        .into_iter()
        .flatten()
        .reduce(|a, b| if better(b, a) { b } else { a })
        .expect("a complete assignment");
    debug_assert_eq!(best.1 & !full_mask(g.n()), 0);
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, product, Family, ProductKind};
    use crate::rational::{int, rat};
    use proptest::prelude::*;

    /// Recomputes every cut from scratch.
    fn brute(g: &Graph, w: &[Rational]) -> (Rational, u64) {
        let mut best = (Rational::from_integer((-1).into()), 0);
        for half in 0..1u64 << (g.n() - 1) {
            let mask = half << 1;
            let v: Rational = g
                .edges()
                .iter()
                .enumerate()
                .filter(|&(_, &(a, b))| (mask >> a ^ mask >> b) & 1 == 1)
                .map(|(i, _)| w[i].clone())
                .sum();
            if v > best.0 {
                best = (v, mask);
            }
        }
        best
    }

    fn unit(g: &Graph) -> Vec<Rational> {
        vec![int(1); g.m()]
    }

    #[test]
    fn examples() {
        let pt = generate(Family::Petersen).unwrap();
        assert_eq!(max_cut(&pt, None).unwrap().value, int(12));
        assert_eq!(brute(&pt, &unit(&pt)).0, int(12));
        let k4 = generate(Family::Complete(4)).unwrap();
        assert_eq!(max_cut(&k4, None).unwrap().value, int(4));
        let c5 = generate(Family::Cycle(5)).unwrap();
        let y = vec![rat(1, 4); 5];
        assert_eq!(max_cut(&c5, Some(&y)).unwrap().value, int(1));
    }

    #[test]
    fn witness_is_canonical_and_attains_value() {
        let g = generate(Family::CircularClique(11, 4)).unwrap();
        let mc = max_cut(&g, None).unwrap();
        assert_eq!(mc.witness.member_mask & 1, 0);
        assert_eq!(int(mc.witness.edges.len() as i64), mc.value);
        assert_eq!(brute(&g, &unit(&g)), (mc.value.clone(), mc.witness.member_mask));
    }

    #[test]
    fn both_routes_agree_with_brute_force() {
        let graphs = [
            generate(Family::Petersen).unwrap(),
            generate(Family::CubePower(4, 3)).unwrap(),
            generate(Family::Cycle(9)).unwrap(),
            generate(Family::Complete(7)).unwrap(),
            product(ProductKind::Cartesian, &generate(Family::Cycle(5)).unwrap(), &generate(Family::Path(3)).unwrap()).unwrap(),
        ];
        for g in &graphs {
            let w: Vec<Rational> = (0..g.m()).map(|i| rat((i % 5) as i64 + 1, (i % 3) as i64 + 2)).collect();
            let expected = brute(g, &w);
            for exhaustive in [true, false] {
                let Ok(solver) = MaxCutSolver::with_strategy(g, exhaustive) else { continue };
                let got = solver.solve(Some(&w)).unwrap();
                assert_eq!((got.value, got.witness.member_mask), expected.clone(), "{:?} {exhaustive}", g.family());
            }
        }
    }

    #[test]
    fn sparse_large_graph_uses_frontier() {
        let c5 = generate(Family::Cycle(5)).unwrap();
        let c7 = generate(Family::Cycle(7)).unwrap();
        let g = product(ProductKind::Categorical, &c5, &c7).unwrap();
        let solver = MaxCutSolver::new(&g).unwrap();
        assert!(matches!(solver.strategy(), MaxCutStrategy::Frontier { .. }));
        // odd girth 7: a largest cut misses at least one edge per odd cycle
        let mc = solver.solve(None).unwrap();
        assert!(mc.value < int(70) && mc.value >= int(35));
        assert_eq!(int(mc.witness.edges.len() as i64), mc.value);
    }

    #[test]
    fn parallel_sweep_matches_single_chunk() {
        // 17 vertices switches the sweep to 64 chunks
        let g = generate(Family::CircularClique(17, 6)).unwrap();
        let sweep = MaxCutSolver::with_strategy(&g, true).unwrap().solve(None).unwrap();
        let dp = MaxCutSolver::with_strategy(&g, false);
        if let Ok(dp) = dp {
            assert_eq!(dp.solve(None).unwrap(), sweep);
        }
        assert_eq!(sweep.value, brute(&g, &unit(&g)).0);
    }

    #[test]
    fn wrong_weight_count() {
        let k3 = generate(Family::Complete(3)).unwrap();
        assert!(max_cut(&k3, Some(&[int(1)])).is_err());
    }

    #[test]
    fn single_vertex_and_negative_weights() {
        let k2 = generate(Family::Complete(2)).unwrap();
        assert_eq!(max_cut(&k2, Some(&[int(-3)])).unwrap().value, int(0));
    }

    proptest! {
        #[test]
        fn at_least_half_the_edges(seed in any::<u64>()) {
            let g = crate::random::sample_gnp(11, &rat(1, 2), seed).unwrap();
            let mc = max_cut(&g, None).unwrap();
            prop_assert!(mc.value.clone() * int(2) >= int(g.m() as i64));
            prop_assert_eq!(mc.value, brute(&g, &unit(&g)).0);
        }
    }
}
