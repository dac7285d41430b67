use super::{BitMatrix, Graph, VertexMap};

/// Largest graph for which [`edge_orbits`] runs the exact search.
pub const MAX_ORBIT_VERTICES: usize = 16;

/// Partition of the edge indices of a graph into automorphism orbits.
#[derive(Clone, Debug)]
pub struct EdgeOrbits {
    /// Each orbit is a sorted list of edge indices; orbits are ordered by
    /// their smallest edge.
    pub orbits: Vec<Vec<usize>>,
    /// `false` when the graph was too large and the trivial partition was
    /// returned instead.
    pub exact: bool,
    /// Automorphisms found along the way; together they generate the orbits.
    pub automorphisms: Vec<VertexMap>,
}

impl EdgeOrbits {
    /// Orbit index of every edge.
    pub fn labels(&self, m: usize) -> Vec<usize> {
        let mut out = vec![0; m];
        for (i, orbit) in self.orbits.iter().enumerate() {
            for &e in orbit {
                out[e] = i;
            }
        }
        out
    }
}

/// Searches for an isomorphism `g -> h` extending the given vertex pairs.
pub fn find_automorphism(g: &Graph, h: &Graph, seed: Option<&[(usize, usize)]>) -> Option<VertexMap> {
    if g.n() != h.n() || g.m() != h.m() {
        return None;
    }
    let mut dg: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    let mut dh: Vec<usize> = (0..h.n()).map(|v| h.degree(v)).collect();
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return None;
    }
    let seed = seed.unwrap_or(&[]);
    let mut order: Vec<usize> = Vec::with_capacity(g.n());
    for &(a, _) in seed {
        if !order.contains(&a) {
            order.push(a);
        }
    }
    // then by connectivity to what is already ordered
    let mut placed = vec![false; g.n()];
    order.iter().for_each(|&v| placed[v] = true);
    while order.len() < g.n() {
        let v = (0..g.n())
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let links = g.neighbors(v).iter().filter(|&&u| placed[u]).count();
                (links, g.degree(v), std::cmp::Reverse(v))
            })
            .expect("unplaced vertex");
        placed[v] = true;
        order.push(v);
    }
    let mut iso = Iso {
        g,
        h,
        ag: g.bit_matrix(),
        ah: h.bit_matrix(),
        order,
        image: vec![usize::MAX; g.n()],
        used: vec![false; h.n()],
        seed,
    };
    iso.descend(0).then_some(VertexMap { image: iso.image })
}

struct Iso<'a> {
    g: &'a Graph,
    h: &'a Graph,
    ag: BitMatrix,
    ah: BitMatrix,
    order: Vec<usize>,
    image: Vec<usize>,
    used: Vec<bool>,
    seed: &'a [(usize, usize)],
}

impl Iso<'_> {
    fn compatible(&self, v: usize, a: usize, depth: usize) -> bool {
        if self.used[a] || self.g.degree(v) != self.h.degree(a) {
            return false;
        }
        self.order[..depth]
            .iter()
            .all(|&u| self.ag.get(v, u) == self.ah.get(a, self.image[u]))
    }

    fn descend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let v = self.order[depth];
        let forced = self.seed.iter().find(|&&(a, _)| a == v).map(|&(_, b)| b);
        let candidates: Vec<usize> = match forced {
            Some(b) => vec![b],
            None => (0..self.h.n()).collect(),
        };
        for a in candidates {
            if a >= self.h.n() || !self.compatible(v, a, depth) {
                continue;
            }
            self.image[v] = a;
            self.used[a] = true;
            if self.descend(depth + 1) {
                return true;
            }
            self.used[a] = false;
            self.image[v] = usize::MAX;
        }
        false
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Edge orbits under the full automorphism group.
///
/// Above [`MAX_ORBIT_VERTICES`] vertices the trivial partition is returned
/// with `exact = false`.
pub fn edge_orbits(g: &Graph) -> EdgeOrbits {
    let m = g.m();
    if g.n() > MAX_ORBIT_VERTICES {
        return EdgeOrbits { orbits: (0..m).map(|e| vec![e]).collect(), exact: false, automorphisms: Vec::new() };
    }
    let edges = g.edges();
    let edge_type = |e: usize| {
        let (u, v) = edges[e];
        let (a, b) = (g.degree(u), g.degree(v));
        (a.min(b), a.max(b))
    };
    let mut parent: Vec<usize> = (0..m).collect();
    let mut automorphisms: Vec<VertexMap> = Vec::new();
    for e in 0..m {
        let (c, d) = edges[e];
        for r in 0..e {
            if find(&mut parent, r) != r || find(&mut parent, e) == r || edge_type(r) != edge_type(e) {
                continue;
            }
            let (a, b) = edges[r];
            let sigma = find_automorphism(g, g, Some(&[(a, c), (b, d)]))
                .or_else(|| find_automorphism(g, g, Some(&[(a, d), (b, c)])));
            if let Some(sigma) = sigma {
                for (f, &(x, y)) in edges.iter().enumerate() {
                    let img = g.edge_index(sigma.image[x], sigma.image[y]).expect("automorphism");
                    let (rf, ri) = (find(&mut parent, f), find(&mut parent, img));
                    if rf != ri {
                        // the smaller index stays the root
                        parent[rf.max(ri)] = rf.min(ri);
                    }
                }
                automorphisms.push(sigma);
            }
        }
    }
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; m];
    for e in 0..m {
        let r = find(&mut parent, e);
        if slot[r] == usize::MAX {
            slot[r] = orbits.len();
            orbits.push(Vec::new());
        }
        orbits[slot[r]].push(e);
    }
    EdgeOrbits { orbits, exact: true, automorphisms }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{combine, generate, CombineKind, Family};

    /// All automorphisms by trying every permutation.
    fn brute_force_orbits(g: &Graph) -> Vec<Vec<usize>> {
        let n = g.n();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut label: Vec<usize> = (0..g.m()).collect();
        loop {
            if g.edges().iter().all(|&(u, v)| g.has_edge(perm[u], perm[v])) {
                for (f, &(x, y)) in g.edges().iter().enumerate() {
                    let img = g.edge_index(perm[x], perm[y]).unwrap();
                    let (a, b) = (label[f], label[img]);
                    if a != b {
                        let (lo, hi) = (a.min(b), a.max(b));
                        label.iter_mut().filter(|l| **l == hi).for_each(|l| *l = lo);
                    }
                }
            }
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else { break };
            let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
            perm.swap(i, j);
            perm[i + 1..].reverse();
        }
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        for l in label.iter().copied().collect::<std::collections::BTreeSet<_>>() {
            orbits.push((0..g.m()).filter(|&e| label[e] == l).collect());
        }
        orbits
    }

    #[test]
    fn petersen_is_edge_transitive() {
        let o = edge_orbits(&generate(Family::Petersen).unwrap());
        assert!(o.exact);
        assert_eq!(o.orbits.len(), 1);
        assert_eq!(o.orbits[0].len(), 15);
    }

    #[test]
    fn path_p3_single_orbit() {
        let o = edge_orbits(&generate(Family::Path(3)).unwrap());
        assert_eq!(o.orbits, vec![vec![0, 1]]);
    }

    #[test]
    fn triangle_with_pendant_has_three_orbits() {
        let k3 = generate(Family::Complete(3)).unwrap();
        let k2 = generate(Family::Complete(2)).unwrap();
        let g = combine(CombineKind::Amalgam(2, 0), &k3, &k2).unwrap();
        let o = edge_orbits(&g);
        assert_eq!(o.orbits.len(), 3);
        assert_eq!(o.orbits, brute_force_orbits(&g));
        // with the pendant edge at vertex 2, edges 0-2 and 1-2 pair up,
        // 0-1 is alone and so is the pendant
        let sizes: Vec<usize> = o.orbits.iter().map(Vec::len).collect();
        assert_eq!(sizes.iter().sum::<usize>(), 4);
    }

    #[test]
    fn matches_permutation_oracle() {
        let k2 = generate(Family::Complete(2)).unwrap();
        let c5 = generate(Family::Cycle(5)).unwrap();
        let graphs = [
            generate(Family::CircularClique(8, 3)).unwrap(),
            generate(Family::CubePower(3, 2)).unwrap(),
            combine(CombineKind::Amalgam(0, 1), &c5, &k2).unwrap(),
            generate(Family::CompleteBipartite(2, 3)).unwrap(),
            Graph::new(6, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5)]).unwrap(),
        ];
        for g in &graphs {
            assert_eq!(edge_orbits(g).orbits, brute_force_orbits(g), "{:?}", g.edges());
        }
    }

    #[test]
    fn found_automorphisms_permute_edges() {
        let g = generate(Family::CircularClique(11, 4)).unwrap();
        let o = edge_orbits(&g);
        assert!(!o.automorphisms.is_empty());
        for sigma in &o.automorphisms {
            let mut images: Vec<usize> = g
                .edges()
                .iter()
                .map(|&(u, v)| g.edge_index(sigma.image[u], sigma.image[v]).unwrap())
                .collect();
            images.sort_unstable();
            assert_eq!(images, (0..g.m()).collect::<Vec<_>>());
        }
    }

    #[test]
    fn large_graphs_fall_back() {
        let g = generate(Family::Cycle(17)).unwrap();
        let o = edge_orbits(&g);
        assert!(!o.exact);
        assert_eq!(o.orbits.len(), 17);
    }
}
