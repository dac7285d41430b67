use std::collections::VecDeque;

use super::Graph;
use crate::error::{Error, Result};

pub const MAX_CHROMATIC_VERTICES: usize = 64;
pub const DEFAULT_COLORING_BUDGET: u64 = 200_000_000;

pub fn is_bipartite(g: &Graph) -> bool {
    odd_girth(g).is_none()
}

/// Length of the shortest odd cycle, `None` for bipartite graphs.
///
/// From every root, an edge joining two vertices at equal BFS depth `d`
/// closes an odd walk of length `2d + 1`; the minimum over all roots is the
/// odd girth.
pub fn odd_girth(g: &Graph) -> Option<usize> {
    let n = g.n();
    let mut best: Option<usize> = None;
    let mut dist = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        dist.iter_mut().for_each(|d| *d = usize::MAX);
        dist[root] = 0;
        queue.clear();
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            if let Some(b) = best {
                if 2 * dist[u] + 1 >= b {
                    break;
                }
            }
            for &v in g.neighbors(u) {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                } else if dist[v] == dist[u] {
                    let len = 2 * dist[u] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    best
}

/// Connected components as sorted vertex lists, ordered by smallest vertex.
pub fn components(g: &Graph) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.n()];
    let mut out = Vec::new();
    for s in 0..g.n() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for &v in g.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    comp.push(v);
                    stack.push(v);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Biconnected blocks, each as a sorted list of edge indices.
/// Bridges form single-edge blocks; isolated vertices contribute nothing.
pub fn blocks(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut timer = 0;
    let mut edge_stack: Vec<usize> = Vec::new();
    let mut out = Vec::new();

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        // (vertex, parent edge, next neighbor position)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(&mut (u, parent_edge, ref mut pos)) = stack.last_mut() {
            if *pos < g.degree(u) {
                let v = g.neighbors(u)[*pos];
                *pos += 1;
                let e = g.edge_index(u, v).expect("adjacent");
                if e == parent_edge {
                    continue;
                }
                if disc[v] == usize::MAX {
                    edge_stack.push(e);
                    disc[v] = timer;
                    low[v] = timer;
                    timer += 1;
                    stack.push((v, e, 0));
                } else if disc[v] < disc[u] {
                    edge_stack.push(e);
                    low[u] = low[u].min(disc[v]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[u]);
                    if low[u] >= disc[p] {
                        let mut block = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            block.push(e);
                            if e == parent_edge {
                                break;
                            }
                        }
                        block.sort_unstable();
                        out.push(block);
                    }
                }
            }
        }
    }
    out
}

/// Exact chromatic number with the default node budget.
pub fn chromatic_number(g: &Graph) -> Result<usize> {
    chromatic_number_with_budget(g, DEFAULT_COLORING_BUDGET)
}

/// Exact chromatic number by DSATUR branch and bound, seeded with a greedy
/// clique lower bound and a DSATUR upper bound.
pub fn chromatic_number_with_budget(g: &Graph, budget: u64) -> Result<usize> {
    g.require_edges()?;
    let masks = g.masks_or_limit("chromatic number vertices")?;
    let n = g.n();
    let lower = greedy_clique(masks);
    let mut search = Dsatur {
        masks,
        n,
        colors: vec![usize::MAX; n],
        seen: vec![0u64; n],
        best: n + 1,
        lower,
        nodes: 0,
        budget,
    };
    let greedy = search.greedy_upper();
    search.best = greedy;
    if greedy > lower {
        search.branch(0, 0)?;
    }
    Ok(search.best)
}

fn greedy_clique(masks: &[u64]) -> usize {
    let n = masks.len();
    let mut best = 1;
    for start in 0..n {
        let mut clique = 1u64 << start;
        let mut cand = masks[start];
        while cand != 0 {
            // most candidate-neighbors first, lowest index on ties
            let mut pick = usize::MAX;
            let mut score = 0;
            let mut c = cand;
            while c != 0 {
                let v = c.trailing_zeros() as usize;
                c &= c - 1;
                let s = (masks[v] & cand).count_ones() + 1;
                if s > score {
                    score = s;
                    pick = v;
                }
            }
            clique |= 1u64 << pick;
            cand &= masks[pick];
        }
        best = best.max(clique.count_ones() as usize);
    }
    best
}

struct Dsatur<'a> {
    masks: &'a [u64],
    n: usize,
    colors: Vec<usize>,
    /// colors present in each vertex's neighborhood
    seen: Vec<u64>,
    best: usize,
    lower: usize,
    nodes: u64,
    budget: u64,
}

impl Dsatur<'_> {
    fn pick(&self) -> usize {
        let mut pick = usize::MAX;
        let mut key = (0u32, 0u32);
        for v in 0..self.n {
            if self.colors[v] != usize::MAX {
                continue;
            }
            let sat = self.seen[v].count_ones();
            let uncolored_deg = (0..self.n)
                .filter(|&u| self.masks[v] >> u & 1 == 1 && self.colors[u] == usize::MAX)
                .count() as u32;
            let k = (sat, uncolored_deg);
            if pick == usize::MAX || k > key {
                key = k;
                pick = v;
            }
        }
        pick
    }

    fn assign(&mut self, v: usize, c: usize) -> Vec<usize> {
        self.colors[v] = c;
        let mut changed = Vec::new();
        let mut m = self.masks[v];
        while m != 0 {
            let u = m.trailing_zeros() as usize;
            m &= m - 1;
            if self.seen[u] >> c & 1 == 0 {
                self.seen[u] |= 1u64 << c;
                changed.push(u);
            }
        }
        changed
    }

    fn unassign(&mut self, v: usize, c: usize, changed: Vec<usize>) {
        self.colors[v] = usize::MAX;
        for u in changed {
            self.seen[u] &= !(1u64 << c);
        }
    }

    fn greedy_upper(&mut self) -> usize {
        let mut used = 0;
        let mut undo = Vec::new();
        for _ in 0..self.n {
            let v = self.pick();
            let c = (!self.seen[v]).trailing_zeros() as usize;
            used = used.max(c + 1);
            let ch = self.assign(v, c);
            undo.push((v, c, ch));
        }
        while let Some((v, c, ch)) = undo.pop() {
            self.unassign(v, c, ch);
        }
        used
    }

    fn branch(&mut self, colored: usize, used: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded(self.budget));
        }
        if colored == self.n {
            self.best = self.best.min(used);
            return Ok(());
        }
        let v = self.pick();
        let limit = (used + 1).min(self.best - 1);
        for c in 0..limit {
            if self.seen[v] >> c & 1 == 1 {
                continue;
            }
            let changed = self.assign(v, c);
            self.branch(colored + 1, used.max(c + 1))?;
            self.unassign(v, c, changed);
            if self.best <= self.lower || self.best <= used.max(1) {
                break;
            }
            if c + 1 >= self.best - 1 {
                break;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{combine, generate, CombineKind, Family};

    /// Shortest odd closed walk via boolean adjacency powers.
    fn odd_girth_oracle(g: &Graph) -> Option<usize> {
        let n = g.n();
        let a = g.bit_matrix();
        let mut reach: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| a.get(i, j)).collect()).collect();
        for len in 1..=2 * n + 1 {
            if len % 2 == 1 && (0..n).any(|i| reach[i][i]) {
                return Some(len);
            }
            let next: Vec<Vec<bool>> = (0..n)
                .map(|i| (0..n).map(|j| (0..n).any(|k| reach[i][k] && a.get(k, j))).collect())
                .collect();
            reach = next;
        }
        None
    }

    #[test]
    fn odd_girth_examples() {
        let pt = generate(Family::Petersen).unwrap();
        assert_eq!(odd_girth(&pt), Some(5));
        assert_eq!(odd_girth_oracle(&pt), Some(5));
        assert_eq!(odd_girth(&generate(Family::Cycle(7)).unwrap()), Some(7));
        assert_eq!(odd_girth(&generate(Family::CompleteBipartite(3, 3)).unwrap()), None);
    }

    #[test]
    fn odd_girth_matches_walk_oracle() {
        let graphs = [
            generate(Family::CircularClique(11, 4)).unwrap(),
            generate(Family::Kneser(7, 3)).unwrap(),
            generate(Family::CubePower(4, 3)).unwrap(),
            generate(Family::CubeLayer(4, 3)).unwrap(),
            generate(Family::Cycle(9)).unwrap(),
            generate(Family::Complete(4)).unwrap(),
        ];
        for g in &graphs {
            assert_eq!(odd_girth(g), odd_girth_oracle(g), "{:?}", g.family());
        }
    }

    #[test]
    fn chromatic_examples() {
        assert_eq!(chromatic_number(&generate(Family::Complete(5)).unwrap()).unwrap(), 5);
        assert_eq!(chromatic_number(&generate(Family::Petersen).unwrap()).unwrap(), 3);
        assert_eq!(chromatic_number(&generate(Family::Kneser(7, 3)).unwrap()).unwrap(), 3);
        assert_eq!(chromatic_number(&generate(Family::Cycle(6)).unwrap()).unwrap(), 2);
        assert_eq!(chromatic_number(&generate(Family::Cycle(7)).unwrap()).unwrap(), 3);
        assert_eq!(chromatic_number(&generate(Family::CircularClique(11, 4)).unwrap()).unwrap(), 3);
        assert_eq!(chromatic_number(&generate(Family::CubePower(3, 2)).unwrap()).unwrap(), 4);
    }

    #[test]
    fn chromatic_errors() {
        assert_eq!(chromatic_number(&Graph::new(3, []).unwrap()), Err(Error::Edgeless));
        let big = generate(Family::Cycle(65)).unwrap();
        assert!(matches!(chromatic_number(&big), Err(Error::SizeLimit { .. })));
        let pt = generate(Family::Petersen).unwrap();
        assert_eq!(chromatic_number_with_budget(&pt, 1), Err(Error::BudgetExceeded(1)));
    }

    #[test]
    fn kneser_chromatic_number_formula() {
        for n in 2..=40usize {
            for k in 1..=n / 2 {
                let count = crate::spectral::binomial(n as u64, k as u64);
                if count > num_bigint::BigUint::from(40u32) {
                    continue;
                }
                let g = generate(Family::Kneser(n, k)).unwrap();
                assert_eq!(chromatic_number(&g).unwrap(), n - 2 * k + 2, "K({n},{k})");
            }
        }
    }

    #[test]
    fn blocks_of_bowtie_and_pendant() {
        let k3 = generate(Family::Complete(3)).unwrap();
        let k2 = generate(Family::Complete(2)).unwrap();
        let bowtie = combine(CombineKind::Amalgam(0, 0), &k3, &k3).unwrap();
        let b = blocks(&bowtie);
        assert_eq!(b.len(), 2);
        assert!(b.iter().all(|blk| blk.len() == 3));
        let pendant = combine(CombineKind::Amalgam(2, 0), &k3, &k2).unwrap();
        let mut sizes: Vec<usize> = blocks(&pendant).iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 3]);
        let pt = generate(Family::Petersen).unwrap();
        assert_eq!(blocks(&pt), vec![(0..15).collect::<Vec<_>>()]);
    }

    #[test]
    fn components_of_union() {
        let k3 = generate(Family::Complete(3)).unwrap();
        let g = combine(CombineKind::DisjointUnion, &k3, &k3).unwrap();
        assert_eq!(components(&g), vec![vec![0, 1, 2], vec![3, 4, 5]]);
    }
}
