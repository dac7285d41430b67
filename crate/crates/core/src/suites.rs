//! Named verification suites: each runs a fixed list of exact checks and
//! reports every one of them.

use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;

use crate::cutspace::{bipartite_density, canonical_mask, check_cover, cut_edges, kneser_cut_size, CutFamily};
use crate::error::{Error, Result};
use crate::graph::{chromatic_number, edge_orbits, generate, kneser_vertex_sets, Family, Graph};
use crate::invariant::{
    bounds, chi_q_of, check_operations_laws, dual_symmetric, induced_density_bound, verify_cover, verify_dual, x_exact,
};
use crate::rational::{self, rat, Rational};
use crate::spectral::{binomial, spectrum_cube_layer, theorem_value, verify_binom_inequality};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Values,
    Cube,
    Binom,
    Operations,
    Kneser,
    Polytope,
}

impl Suite {
    pub const ALL: [Suite; 6] = [Suite::Values, Suite::Cube, Suite::Binom, Suite::Operations, Suite::Kneser, Suite::Polytope];

    pub fn parse(name: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|s| s.name() == name)
            .ok_or_else(|| Error::InvalidParameters(format!("unknown suite {name:?}")))
    }

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Values => "values",
            Suite::Cube => "cube",
            Suite::Binom => "binom",
            Suite::Operations => "operations",
            Suite::Kneser => "kneser",
            Suite::Polytope => "polytope",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Assertion {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub assertions: Vec<Assertion>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Assertion> {
        self.assertions.iter().filter(|a| !a.passed)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    /// Upper end of the binomial inequality scan.
    pub nmax: usize,
    /// Largest `n` for the spectral checks of the cube suite.
    pub spectral_nmax: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { nmax: 100, spectral_nmax: 40 }
    }
}

struct Collector(Vec<Assertion>);

impl Collector {
    fn check(&mut self, name: impl Into<String>, r: Result<(bool, String)>) {
        let (passed, detail) = r.unwrap_or_else(|e| (false, format!("error: {e}")));
        self.0.push(Assertion { name: name.into(), passed, detail });
    }

    fn equal(&mut self, name: impl Into<String>, got: Result<Rational>, want: &Rational) {
        self.check(name, got.map(|g| (g == *want, format!("got {g}, expected {want}"))));
    }
}

pub fn run_suite(suite: Suite, opts: &SuiteOptions) -> SuiteReport {
    let mut c = Collector(Vec::new());
    match suite {
        Suite::Values => values(&mut c),
        Suite::Cube => cube(&mut c, opts),
        Suite::Binom => binom(&mut c, opts),
        Suite::Operations => operations(&mut c),
        Suite::Kneser => kneser(&mut c),
        Suite::Polytope => polytope(&mut c),
    }
    SuiteReport { suite, assertions: c.0 }
}

fn gen(f: Family) -> Result<Graph> {
    generate(f)
}

/// `x` with both certificates re-checked and equal.
fn solved(f: Family) -> Result<(Rational, Rational)> {
    let g = gen(f)?;
    let r = x_exact(&g)?;
    if r.primal.value != r.dual.value || !verify_cover(&g, &r.primal)? || !verify_dual(&g, &r.dual)? {
        return Err(Error::Verification(format!("certificates for {f} disagree")));
    }
    let chi = r.chi_q();
    Ok((r.value, chi))
}

fn values(c: &mut Collector) {
    for n in 3..=8usize {
        let half = n.div_ceil(2) as i64;
        let r = solved(Family::Complete(n));
        c.equal(format!("x(K_{n})"), r.clone().map(|v| v.0), &(rational::int(2) - rat(1, half)));
        c.equal(format!("chi_q(K_{n})"), r.map(|v| v.1), &rational::int(2 * half));
    }
    for k in 1..=4usize {
        let n = 2 * k + 1;
        let r = solved(Family::Cycle(n));
        c.equal(format!("x(C_{n})"), r.clone().map(|v| v.0), &(rational::int(1) + rat(1, 2 * k as i64)));
        c.equal(format!("chi_q(C_{n})"), r.map(|v| v.1), &(rational::int(2) + rat(2, 2 * k as i64 - 1)));
    }
    let r = solved(Family::Petersen);
    c.equal("x(Petersen)", r.clone().map(|v| v.0), &rat(5, 4));
    c.equal("chi_q(Petersen)", r.map(|v| v.1), &rat(8, 3));
    for (a, b) in [(2, 3), (3, 3), (4, 5)] {
        c.equal(format!("x(K_{{{a},{b}}})"), solved(Family::CompleteBipartite(a, b)).map(|v| v.0), &rational::int(1));
    }
}

fn cube(c: &mut Collector, opts: &SuiteOptions) {
    for (n, k) in [(3usize, 2usize), (4, 3)] {
        let want = theorem_value(n, k).map(|t| t.value);
        let got = solved(Family::CubePower(n, k)).map(|v| v.0);
        c.check(
            format!("x(Q_{{{n}/{k}}}) equals the closed form"),
            want.and_then(|w| got.map(|g| (g == w, format!("got {g}, closed form {w}")))),
        );
    }
    for n in 1..=11usize {
        for k in (n.div_ceil(2)..=n).filter(|&k| k >= 1 && n < 2 * k) {
            c.check(
                format!("theorem bounds meet at ({n},{k})"),
                theorem_value(n, k).map(|t| (t.bounds_meet() && t.maps_checked, format!("value {}", t.value))),
            );
        }
    }
    let mut checked = 0;
    let mut bad = Vec::new();
    for n in 2..=opts.spectral_nmax {
        for k in (2..=n).step_by(2).filter(|&k| n < 2 * k) {
            checked += 1;
            match spectrum_cube_layer(n, k) {
                Ok(s) => {
                    let c_nk = Rational::from_integer(binomial(n as u64, k as u64).into());
                    let at_one = &c_nk * (rational::int(1) - rat(2 * k as i64, n as i64));
                    let ok = s.x_lower_bound == rat(n as i64, k as i64)
                        && s.theta_min == s.eigenvalue_by_weight[1]
                        && Rational::from_integer(s.theta_min.clone()) == at_one;
                    if !ok {
                        bad.push((n, k));
                    }
                }
                Err(_) => bad.push((n, k)),
            }
        }
    }
    c.check(
        format!("spectral bound equals n/k for even k, n <= {}", opts.spectral_nmax),
        Ok((bad.is_empty(), format!("{checked} pairs, failures {bad:?}"))),
    );
    for (n, k) in [(3usize, 2usize), (5, 4), (6, 4)] {
        let r = gen(Family::CubeLayer(n, k)).and_then(|g| {
            let s = spectrum_cube_layer(n, k)?;
            let exact = (s.degree() - &s.theta_min).to_string().parse::<f64>().unwrap_or(f64::NAN);
            let l = crate::spectral::laplacian_lambda_max(&g)?;
            Ok(((l.value - exact).abs() < 1e-9, format!("numeric {} exact {exact}", l.value)))
        });
        c.check(format!("laplacian of Q_{n}^={k} matches the character spectrum"), r);
    }
}

fn binom(c: &mut Collector, opts: &SuiteOptions) {
    c.check(
        format!("binomial inequality up to n = {}", opts.nmax),
        verify_binom_inequality(opts.nmax).map(|r| {
            (
                r.passed(),
                format!(
                    "{} triples, {} violations, {} tight at x=1, {} tight elsewhere",
                    r.checked,
                    r.violations.len(),
                    r.tight_at_one,
                    r.tight_other.len()
                ),
            )
        }),
    );
}

/// The graph pairs used for the operation laws.
pub fn operation_pairs() -> Vec<(Family, Family)> {
    use Family::*;
    vec![
        (Cycle(5), Complete(2)),
        (Complete(3), Complete(3)),
        (Cycle(5), Cycle(7)),
        (Complete(2), Complete(2)),
        (Complete(3), Complete(2)),
        (Path(3), Complete(3)),
        (Cycle(4), Complete(3)),
        (Complete(4), Complete(2)),
        (Cycle(5), Complete(3)),
        (Complete(4), Complete(3)),
        (CompleteBipartite(1, 3), Complete(3)),
        (CompleteBipartite(2, 3), Complete(2)),
        (Path(4), Cycle(5)),
        (Cycle(5), Cycle(5)),
        (Complete(4), Complete(4)),
        (Petersen, Complete(2)),
        (Cycle(7), Complete(2)),
        (Cycle(4), Cycle(5)),
        (Complete(4), Cycle(5)),
        (Path(3), Cycle(7)),
    ]
}

fn operations(c: &mut Collector) {
    for (a, b) in operation_pairs() {
        let r = gen(a).and_then(|g1| check_operations_laws(&g1, &gen(b)?)).map(|r| {
            (
                r.holds(),
                format!(
                    "x1 {} x2 {} union {} amalgam {} blocks {} cartesian {} categorical {}",
                    r.x1, r.x2, r.disjoint_union, r.amalgam, r.amalgam_blocks_max, r.cartesian, r.categorical
                ),
            )
        });
        c.check(format!("laws for ({a}, {b})"), r);
    }
}

/// The `n` cuts "sets containing i" of `K(n, k)`; each edge lies in `2k` of them.
pub fn kneser_star_cover(n: usize, k: usize) -> Result<CutFamily> {
    let sets = kneser_vertex_sets(n, k);
    if sets.len() > 64 {
        return Err(Error::SizeLimit { what: "kneser cover vertices", limit: 64, actual: sets.len() });
    }
    let masks = (0..n)
        .map(|i| {
            let w = sets.iter().enumerate().filter(|(_, s)| *s >> i & 1 == 1).fold(0u64, |m, (v, _)| m | 1 << v);
            canonical_mask(sets.len(), w)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CutFamily::uniform(masks))
}

fn kneser(c: &mut Collector) {
    let pt = gen(Family::Kneser(5, 2));
    c.equal("b(K(5,2))", pt.clone().and_then(|g| bipartite_density(&g)), &rat(4, 5));
    c.equal("x(K(5,2))", pt.and_then(|g| Ok(x_exact(&g)?.value)), &rat(5, 4));
    for (n, k) in [(5usize, 2usize), (7, 3)] {
        let r = gen(Family::Kneser(n, k)).and_then(|g| {
            let sets = kneser_vertex_sets(n, k);
            let w = sets.iter().enumerate().filter(|(_, s)| *s & 1 == 1).fold(0u64, |m, (v, _)| m | 1 << v);
            let counted = cut_edges(&g, w).len();
            let formula = kneser_cut_size(n as u64, k as u64)?;
            Ok((BigUint::from(counted) == formula, format!("counted {counted}, formula {formula}")))
        });
        c.check(format!("kneser_cut_size({n},{k}) matches the explicit cut"), r);
    }
    for (n, k) in [(4usize, 1usize), (5, 2), (6, 2), (7, 2), (6, 3), (7, 3), (8, 2), (9, 2)] {
        let r = gen(Family::Kneser(n, k)).and_then(|g| {
            let chi = chromatic_number(&g)?;
            Ok((chi == n - 2 * k + 2, format!("chi {chi}")))
        });
        c.check(format!("chi(K({n},{k})) = n - 2k + 2"), r);
    }
    // upper bound n/(2k) from the star cover; edge-transitivity makes 1/b exact
    for (n, k) in [(4usize, 1usize), (5, 2), (6, 2), (7, 2), (6, 3), (7, 3)] {
        let r = gen(Family::Kneser(n, k)).and_then(|g| {
            let cover = kneser_star_cover(n, k)?;
            let covers = check_cover(&g, &cover, &rational::from_usize(2 * k))?;
            let x = bipartite_density(&g)?.recip();
            let target = rat(n as i64, 2 * k as i64);
            let relation = if x == target { "=" } else { "<" };
            Ok((covers && x <= target, format!("cover ok {covers}, x = 1/b = {x} {relation} {target}")))
        });
        c.check(format!("x(K({n},{k})) <= n/(2k)"), r);
    }
    let r = gen(Family::Kneser(8, 3)).and_then(|g| {
        let covers = check_cover(&g, &kneser_star_cover(8, 3)?, &rational::int(6))?;
        let chi = chromatic_number(&g)?;
        Ok((covers && chi == 4, format!("8/6-cover {covers}, chi {chi}")))
    });
    c.check("K(8,3): x <= 4/3 while chi = 4", r);
}

fn polytope(c: &mut Collector) {
    for f in [
        Family::Petersen,
        Family::Cycle(5),
        Family::Complete(4),
        Family::CircularClique(11, 4),
        Family::CubePower(3, 2),
        Family::CircularClique(8, 3),
    ] {
        c.check(format!("strong duality for {f}"), solved(f).map(|(x, _)| (true, format!("x = {x}"))));
    }
    for (f, y) in [(Family::Petersen, rat(1, 12)), (Family::Cycle(5), rat(1, 4)), (Family::Complete(2), rational::int(1))] {
        let r = gen(f).and_then(|g| dual_symmetric(&g)).map(|d| {
            let ok = d.orbit_constant && d.y.iter().all(|v| *v == y);
            (ok, format!("value {}", d.value))
        });
        c.check(format!("symmetric dual of {f} is constant {y}"), r);
    }
    for f in [Family::Petersen, Family::Complete(5), Family::Cycle(7), Family::Kneser(6, 2)] {
        let r = gen(f).and_then(|g| {
            let orbits = edge_orbits(&g);
            let x = x_exact(&g)?.value;
            let b = bipartite_density(&g)?;
            Ok((orbits.exact && orbits.orbits.len() == 1 && &x * &b == rational::int(1), format!("x {x}, b {b}")))
        });
        c.check(format!("edge-transitive {f}: x * b = 1"), r);
    }
    for f in [Family::Petersen, Family::CircularClique(8, 3), Family::Complete(5), Family::CubePower(3, 2)] {
        let r = gen(f).and_then(|g| {
            let h = induced_density_bound(&g)?.value;
            let x = x_exact(&g)?.value;
            Ok((h <= x, format!("induced bound {h}, x {x}")))
        });
        c.check(format!("induced-subgraph bound below x for {f}"), r);
    }
    let r = gen(Family::CircularClique(11, 4)).and_then(|g| {
        let b = bounds(&g)?;
        let (h, x) = (b.lower_subgraph.clone(), b.exact.clone());
        match (h, x) {
            (Some(h), Some(x)) => Ok((h < x && x == rat(22, 17) && b.consistent(), format!("induced bound {h}, x {x}"))),
            _ => Ok((false, "bounds unavailable".into())),
        }
    });
    c.check("circular clique K_{11/4}: x exceeds the induced-subgraph bound", r);
    let chi = chi_q_of(&rat(22, 17));
    c.check("chi_q(K_{11/4})", Ok((chi == rat(17, 6), format!("{chi}"))));
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(Suite::parse(s.name()).unwrap(), s);
        }
        assert!(Suite::parse("nope").is_err());
    }

    #[test]
    fn star_cover_multiplicity() {
        for (n, k) in [(5, 2), (7, 3), (6, 1)] {
            let g = generate(Family::Kneser(n, k)).unwrap();
            let cover = kneser_star_cover(n, k).unwrap();
            assert!(check_cover(&g, &cover, &rational::from_usize(2 * k)).unwrap());
            assert!(!check_cover(&g, &cover, &rational::from_usize(2 * k + 1)).unwrap());
        }
    }

    #[test]
    fn small_suites_pass() {
        let opts = SuiteOptions { nmax: 30, spectral_nmax: 20 };
        for s in [Suite::Values, Suite::Binom, Suite::Polytope] {
            let r = run_suite(s, &opts);
            assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
        }
    }
}
