use super::{generate, Family, Graph};
use crate::error::{Error, Result};

pub const MAX_HOM_SOURCE: usize = 32;
pub const MAX_HOM_TARGET: usize = 4096;
pub const DEFAULT_HOM_BUDGET: u64 = 100_000_000;

/// A vertex map `V(G) -> V(H)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexMap {
    pub image: Vec<usize>,
}

impl VertexMap {
    /// True iff every edge of `g` lands on an edge of `h`.
    pub fn is_homomorphism(&self, g: &Graph, h: &Graph) -> bool {
        self.image.len() == g.n()
            && self.image.iter().all(|&a| a < h.n())
            && g.edges().iter().all(|&(u, v)| h.has_edge(self.image[u], self.image[v]))
    }

    /// `self: G -> H` followed by `next: H -> J`.
    pub fn then(&self, next: &VertexMap) -> VertexMap {
        VertexMap { image: self.image.iter().map(|&a| next.image[a]).collect() }
    }
}

/// Searches for a homomorphism `g -> h` with the default node budget.
pub fn find_homomorphism(g: &Graph, h: &Graph) -> Result<Option<VertexMap>> {
    find_homomorphism_with_budget(g, h, DEFAULT_HOM_BUDGET)
}

/// Exact backtracking search with forward checking.
///
/// Returns `Ok(None)` only when the search space is exhausted; running out
/// of budget is `Err(BudgetExceeded)`.
pub fn find_homomorphism_with_budget(g: &Graph, h: &Graph, budget: u64) -> Result<Option<VertexMap>> {
    if g.n() > MAX_HOM_SOURCE {
        return Err(Error::SizeLimit { what: "homomorphism source vertices", limit: MAX_HOM_SOURCE, actual: g.n() });
    }
    if h.n() > MAX_HOM_TARGET {
        return Err(Error::SizeLimit { what: "homomorphism target vertices", limit: MAX_HOM_TARGET, actual: h.n() });
    }
    if h.is_edgeless() && !g.is_edgeless() {
        return Ok(None);
    }
    let target = h.bit_matrix();
    let words = target.words();
    let n = g.n();
    let order = search_order(g);

    let mut initial = vec![0u64; words];
    for a in 0..h.n() {
        if h.degree(a) > 0 {
            initial[a / 64] |= 1u64 << (a % 64);
        }
    }
    let mut any = vec![0u64; words];
    for a in 0..h.n() {
        any[a / 64] |= 1u64 << (a % 64);
    }
    // domains[level][vertex][word]
    let stride = n * words;
    let mut domains = vec![0u64; (n + 1) * stride];
    for v in 0..n {
        let src = if g.degree(v) > 0 { &initial } else { &any };
        domains[v * words..(v + 1) * words].copy_from_slice(src);
    }
    let mut search = HomSearch {
        g,
        target: &target,
        words,
        stride,
        order: &order,
        domains,
        assigned: vec![usize::MAX; n],
        nodes: 0,
        budget,
    };
    if search.descend(0)? {
        let map = VertexMap { image: search.assigned };
        debug_assert!(map.is_homomorphism(g, h));
        Ok(Some(map))
    } else {
        Ok(None)
    }
}

/// Highest degree first, then repeatedly the vertex with most already-ordered
/// neighbors; remaining ties go to higher degree, then lower index.
fn search_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut placed = vec![false; n];
    let mut links = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !placed[v])
            .max_by(|&a, &b| {
                (links[a], g.degree(a))
                    .cmp(&(links[b], g.degree(b)))
                    .then(b.cmp(&a))
            })
            .expect("unplaced vertex");
        placed[v] = true;
        order.push(v);
        for &u in g.neighbors(v) {
            links[u] += 1;
        }
    }
    order
}

struct HomSearch<'a> {
    g: &'a Graph,
    target: &'a super::BitMatrix,
    words: usize,
    stride: usize,
    order: &'a [usize],
    domains: Vec<u64>,
    assigned: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl HomSearch<'_> {
    fn descend(&mut self, depth: usize) -> Result<bool> {
        if depth == self.order.len() {
            return Ok(true);
        }
        let v = self.order[depth];
        let w = self.words;
        let base = depth * self.stride;
        let candidates: Vec<u64> = self.domains[base + v * w..base + (v + 1) * w].to_vec();
        for (word_idx, &word) in candidates.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let a = word_idx * 64 + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                self.nodes += 1;
                if self.nodes > self.budget {
                    return Err(Error::BudgetExceeded(self.budget));
                }
                let next = base + self.stride;
                self.domains.copy_within(base..base + self.stride, next);
                let row = self.target.row(a);
                let mut ok = true;
                for &u in self.g.neighbors(v) {
                    if self.assigned[u] != usize::MAX {
                        continue;
                    }
                    let dom = &mut self.domains[next + u * w..next + (u + 1) * w];
                    let mut nonempty = false;
                    for (d, r) in dom.iter_mut().zip(row) {
                        *d &= r;
                        nonempty |= *d != 0;
                    }
                    if !nonempty {
                        ok = false;
                        break;
                    }
                }
                if !ok {
                    continue;
                }
                self.assigned[v] = a;
                if self.descend(depth + 1)? {
                    return Ok(true);
                }
                self.assigned[v] = usize::MAX;
            }
        }
        Ok(false)
    }
}

/// Appends the parity bit: word `x` of length `n` (read as a binary numeral,
/// first coordinate most significant) maps to `x` followed by `sum(x) mod 2`.
pub(crate) fn parity_map(n: usize) -> VertexMap {
    let image = (0..1usize << n)
        .map(|x| (x << 1) | (x.count_ones() as usize & 1))
        .collect();
    VertexMap { image }
}

/// The parity-bit map `Q_{n/k} -> Q_{(n+1)/(k+1)}`, checked to be a
/// homomorphism before it is returned.
pub fn parity_lift(n: usize, k: usize) -> Result<VertexMap> {
    if k == 0 || k > n || k.is_multiple_of(2) {
        return Err(Error::InvalidParameters(format!(
            "parity lift needs odd k with 1 <= k <= n, got n={n} k={k}"
        )));
    }
    let source = generate(Family::CubePower(n, k))?;
    let target = generate(Family::CubePower(n + 1, k + 1))?;
    let map = parity_map(n);
    if !map.is_homomorphism(&source, &target) {
        return Err(Error::Verification(format!("parity lift for n={n} k={k} is not a homomorphism")));
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{product, ProductKind};

    /// Tries every map `V(g) -> V(h)`.
    fn exhaustive(g: &Graph, h: &Graph) -> bool {
        let (n, m) = (g.n(), h.n());
        let total = m.pow(n as u32);
        (0..total).any(|mut code| {
            let image: Vec<usize> = (0..n)
                .map(|_| {
                    let a = code % m;
                    code /= m;
                    a
                })
                .collect();
            VertexMap { image }.is_homomorphism(g, h)
        })
    }

    fn small_graphs() -> Vec<Graph> {
        vec![
            generate(Family::Complete(2)).unwrap(),
            generate(Family::Complete(3)).unwrap(),
            generate(Family::Complete(4)).unwrap(),
            generate(Family::Path(3)).unwrap(),
            generate(Family::Cycle(4)).unwrap(),
            generate(Family::Cycle(5)).unwrap(),
            generate(Family::CompleteBipartite(1, 3)).unwrap(),
            Graph::new(3, [(0, 1)]).unwrap(),
            Graph::new(2, []).unwrap(),
        ]
    }

    #[test]
    fn agrees_with_exhaustive_oracle() {
        let graphs = small_graphs();
        for g in &graphs {
            for h in &graphs {
                if g.n() * h.n() > 64 {
                    continue;
                }
                let found = find_homomorphism(g, h).unwrap();
                assert_eq!(found.is_some(), exhaustive(g, h), "{:?} -> {:?}", g.edges(), h.edges());
                if let Some(map) = found {
                    assert!(map.is_homomorphism(g, h));
                }
            }
        }
    }

    #[test]
    fn examples() {
        let c5 = generate(Family::Cycle(5)).unwrap();
        let pt = generate(Family::Petersen).unwrap();
        assert!(find_homomorphism(&c5, &pt).unwrap().is_some());
        let c3 = generate(Family::Cycle(3)).unwrap();
        let k2 = generate(Family::Complete(2)).unwrap();
        assert!(find_homomorphism(&c3, &k2).unwrap().is_none());
        let k4 = generate(Family::Complete(4)).unwrap();
        let q32 = generate(Family::CubePower(3, 2)).unwrap();
        assert!(find_homomorphism(&k4, &q32).unwrap().is_some());
        // odd cycles map down but not up
        let c7 = generate(Family::Cycle(7)).unwrap();
        assert!(find_homomorphism(&c7, &c5).unwrap().is_some());
        assert!(find_homomorphism(&c5, &c7).unwrap().is_none());
    }

    #[test]
    fn composition_is_homomorphism() {
        let c9 = generate(Family::Cycle(9)).unwrap();
        let c7 = generate(Family::Cycle(7)).unwrap();
        let k3 = generate(Family::Complete(3)).unwrap();
        let f = find_homomorphism(&c9, &c7).unwrap().unwrap();
        let g = find_homomorphism(&c7, &k3).unwrap().unwrap();
        assert!(f.then(&g).is_homomorphism(&c9, &k3));
    }

    #[test]
    fn budget_is_distinct_from_absence() {
        let k4 = generate(Family::Complete(4)).unwrap();
        let k3 = generate(Family::Complete(3)).unwrap();
        assert!(find_homomorphism(&k4, &k3).unwrap().is_none());
        assert_eq!(find_homomorphism_with_budget(&k4, &k3, 2), Err(Error::BudgetExceeded(2)));
    }

    #[test]
    fn size_limits() {
        let big = generate(Family::Cycle(33)).unwrap();
        let k3 = generate(Family::Complete(3)).unwrap();
        assert!(matches!(find_homomorphism(&big, &k3), Err(Error::SizeLimit { .. })));
        let huge = generate(Family::CubeLayer(13, 1)).unwrap();
        assert!(matches!(find_homomorphism(&k3, &huge), Err(Error::SizeLimit { .. })));
    }

    #[test]
    fn categorical_projection() {
        let c5 = generate(Family::Cycle(5)).unwrap();
        let k3 = generate(Family::Complete(3)).unwrap();
        let p = product(ProductKind::Categorical, &c5, &k3).unwrap();
        assert!(find_homomorphism(&p, &c5).unwrap().is_some());
        assert!(find_homomorphism(&p, &k3).unwrap().is_some());
    }

    #[test]
    fn parity_lift_examples() {
        let map = parity_lift(4, 3).unwrap();
        assert_eq!(map.image[0b0101], 0b01010);
        assert_eq!(map.image[0b0111], 0b01111);
        let q43 = generate(Family::CubePower(4, 3)).unwrap();
        let q54 = generate(Family::CubePower(5, 4)).unwrap();
        assert_eq!(q43.m(), 40);
        assert!(map.is_homomorphism(&q43, &q54));
        assert!(parity_lift(6, 5).is_ok());
    }

    #[test]
    fn parity_lift_all_odd_k() {
        for n in 1..=10 {
            for k in (1..=n).step_by(2) {
                assert!(parity_lift(n, k).is_ok(), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn parity_map_fails_for_even_k() {
        assert!(parity_lift(4, 2).is_err());
        let q = generate(Family::CubePower(4, 2)).unwrap();
        let t = generate(Family::CubePower(5, 3)).unwrap();
        assert!(!parity_map(4).is_homomorphism(&q, &t));
    }
}
