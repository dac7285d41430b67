//! `G(n, p)` sampling and experiments on random graphs.
//!
//! Edge `{u, v}` (in lexicographic order) of trial `t` is decided by one
//! `u64` drawn from ChaCha8 seeded with `seed` on stream `t`: the edge is
//! present iff the draw is below `p · 2^64`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cutspace::max_cut;
use crate::error::{Error, Result};
use crate::graph::{chromatic_number, is_bipartite, Graph};
use crate::invariant::{chi_q_of, x_exact};
use crate::rational::{self, Rational};

/// Largest graph for which experiments compute exact maximum cuts.
pub const MAX_EXPERIMENT_VERTICES: usize = 24;
/// Largest graph for which [`chi_q_window`] solves for `χ_q`.
pub const MAX_WINDOW_VERTICES: usize = 21;

fn check_p(p: &Rational) -> Result<()> {
    if p.is_negative() || *p > Rational::one() {
        return Err(Error::InvalidParameters(format!("edge probability {p} outside [0, 1]")));
    }
    Ok(())
}

/// `⌈p · 2^64⌉`; a draw `u` keeps the edge iff `u < threshold`.
fn threshold(p: &Rational) -> u128 {
    let scaled = p.numer() << 64u32;
    let (q, r) = scaled.div_rem(p.denom());
    let t = if r.is_zero() { q } else { q + BigInt::one() };
    t.to_u128().expect("p <= 1")
}

fn sample_stream(n: usize, p: &Rational, seed: u64, stream: u64) -> Result<Graph> {
    if n < 2 {
        return Err(Error::InvalidParameters(format!("G(n, p) needs n >= 2, got {n}")));
    }
    check_p(p)?;
    let t = threshold(p);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if (rng.next_u64() as u128) < t {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges)
}

/// One draw of `G(n, p)`; equal to trial 0 of an experiment with this seed.
pub fn sample_gnp(n: usize, p: &Rational, seed: u64) -> Result<Graph> {
    sample_stream(n, p, seed, 0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrialRecord {
    pub trial: u64,
    pub edges: usize,
    pub max_cut: usize,
    /// `MC/|E|`, absent for an edgeless sample.
    #[serde(with = "rational::serde_opt_str")]
    pub b: Option<Rational>,
    #[serde(with = "rational::serde_opt_str")]
    pub x: Option<Rational>,
    /// `|E| > (1 − δ) p C(n, 2)`.
    pub claim_edges: bool,
    /// `MC < (1 + δ) p n² / 4`.
    pub claim_max_cut: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentSummary {
    pub claim_edges_frequency: f64,
    pub claim_max_cut_frequency: f64,
    /// Mean of `b` over samples with an edge.
    #[serde(with = "rational::serde_opt_str")]
    pub mean_b: Option<Rational>,
    /// `(1 + δ) n / (2 (1 − δ)(n − 1))`: what `b` is below whenever both
    /// claims hold.
    #[serde(with = "rational::serde_opt_str")]
    pub density_ceiling: Option<Rational>,
    pub below_ceiling_frequency: f64,
    /// `δ² p ≥ 7 ln n / n`, the regime where both claims hold a.a.s.
    pub asymptotic_regime: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Experiment {
    pub n: usize,
    #[serde(with = "rational::serde_str")]
    pub p: Rational,
    pub trials: u64,
    pub seed: u64,
    #[serde(with = "rational::serde_str")]
    pub delta: Rational,
    pub records: Vec<TrialRecord>,
    pub summary: ExperimentSummary,
}

impl Experiment {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("trial,edges,max_cut,b,x,claim_edges,claim_max_cut\n");
        let opt = |v: &Option<Rational>| v.as_ref().map(rational::format).unwrap_or_default();
        for r in &self.records {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                r.trial,
                r.edges,
                r.max_cut,
                opt(&r.b),
                opt(&r.x),
                r.claim_edges,
                r.claim_max_cut
            ));
        }
        out
    }
}

/// Samples `trials` graphs (trial `t` on stream `t`) and checks both
/// Chernoff-type claims per trial; `with_x` also solves for `x`.
pub fn run_experiment(n: usize, p: &Rational, trials: u64, seed: u64, delta: &Rational, with_x: bool) -> Result<Experiment> {
    if n > MAX_EXPERIMENT_VERTICES {
        return Err(Error::SizeLimit { what: "experiment vertices", limit: MAX_EXPERIMENT_VERTICES, actual: n });
    }
    if trials == 0 {
        return Err(Error::InvalidParameters("an experiment needs at least one trial".into()));
    }
    if !delta.is_positive() || *delta >= Rational::one() {
        return Err(Error::InvalidParameters(format!("delta {delta} outside (0, 1)")));
    }
    check_p(p)?;
    let nn = rational::from_usize(n);
    let pairs = rational::from_usize(n * (n - 1) / 2);
    let one = Rational::one();
    let edge_floor = (&one - delta) * p * &pairs;
    let cut_ceiling = (&one + delta) * p * &nn * &nn / rational::int(4);
    let records: Vec<TrialRecord> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let g = sample_stream(n, p, seed, t)?;
            let m = g.m();
            let (mc, b, x) = if m == 0 {
                (0, None, None)
            } else {
                let mc = max_cut(&g, None)?.witness.edges.len();
                let b = rational::rat(mc as i64, m as i64);
                let x = if with_x { Some(x_exact(&g)?.value) } else { None };
                (mc, Some(b), x)
            };
            Ok(TrialRecord {
                trial: t,
                edges: m,
                max_cut: mc,
                b,
                x,
                claim_edges: rational::from_usize(m) > edge_floor,
                claim_max_cut: rational::from_usize(mc) < cut_ceiling,
            })
        })
        .collect::<Result<_>>()?;
    let freq = |f: &dyn Fn(&TrialRecord) -> bool| records.iter().filter(|r| f(r)).count() as f64 / trials as f64;
    let bs: Vec<&Rational> = records.iter().filter_map(|r| r.b.as_ref()).collect();
    let mean_b = (!bs.is_empty()).then(|| bs.iter().copied().sum::<Rational>() / rational::from_usize(bs.len()));
    let density_ceiling = (n >= 2).then(|| (&one + delta) * &nn / (rational::int(2) * (&one - delta) * (&nn - &one)));
    let below = match &density_ceiling {
        Some(c) => freq(&|r| r.b.as_ref().is_some_and(|b| b < c)),
        None => 0.0,
    };
    let d = rational::to_f64(delta);
    let lhs = d * d * rational::to_f64(p);
    let summary = ExperimentSummary {
        claim_edges_frequency: freq(&|r| r.claim_edges),
        claim_max_cut_frequency: freq(&|r| r.claim_max_cut),
        mean_b,
        density_ceiling,
        below_ceiling_frequency: below,
        asymptotic_regime: lhs >= 7.0 * (n as f64).ln() / n as f64,
    };
    Ok(Experiment { n, p: p.clone(), trials, seed, delta: delta.clone(), records, summary })
}

/// `χ_q` of one `G(n, 1/2)` sample next to the unconditional bounds
/// `2/(2 − 1/b) ≤ χ_q ≤ 2⌈χ/2⌉` and the asymptotic scales.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChiQWindow {
    pub n: usize,
    pub seed: u64,
    pub edges: usize,
    #[serde(with = "rational::serde_str")]
    pub b: Rational,
    pub chromatic_number: usize,
    #[serde(with = "rational::serde_str")]
    pub x: Rational,
    #[serde(with = "rational::serde_str")]
    pub chi_q: Rational,
    #[serde(with = "rational::serde_str")]
    pub lower: Rational,
    #[serde(with = "rational::serde_str")]
    pub upper: Rational,
    pub bipartite: bool,
    /// `√(n / ln n)`.
    pub sqrt_scale: f64,
    /// `n / ln n`.
    pub linear_scale: f64,
}

impl ChiQWindow {
    pub fn within_bounds(&self) -> bool {
        self.lower <= self.chi_q && self.chi_q <= self.upper && (self.bipartite || self.chi_q > rational::int(2))
    }
}

pub fn chi_q_window(n: usize, seed: u64) -> Result<ChiQWindow> {
    if n > MAX_WINDOW_VERTICES {
        return Err(Error::SizeLimit { what: "chi_q window vertices", limit: MAX_WINDOW_VERTICES, actual: n });
    }
    let g = sample_gnp(n, &rational::rat(1, 2), seed)?;
    g.require_edges()?;
    let b = rational::rat(max_cut(&g, None)?.witness.edges.len() as i64, g.m() as i64);
    let chi = chromatic_number(&g)?;
    let x = x_exact(&g)?.value;
    let ln = (n as f64).ln();
    Ok(ChiQWindow {
        n,
        seed,
        edges: g.m(),
        lower: chi_q_of(&b.recip()),
        upper: rational::from_usize(2 * chi.div_ceil(2)),
        chi_q: chi_q_of(&x),
        b,
        chromatic_number: chi,
        x,
        bipartite: is_bipartite(&g),
        sqrt_scale: (n as f64 / ln).sqrt(),
        linear_scale: n as f64 / ln,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn extreme_probabilities() {
        let g = sample_gnp(7, &Rational::one(), 3).unwrap();
        assert_eq!(g.m(), 21);
        let g = sample_gnp(7, &Rational::zero(), 3).unwrap();
        assert!(g.is_edgeless());
        assert!(sample_gnp(1, &rat(1, 2), 0).is_err());
        assert!(sample_gnp(5, &rat(3, 2), 0).is_err());
    }

    #[test]
    fn reproducible() {
        let a = sample_gnp(20, &rat(1, 2), 42).unwrap();
        let b = sample_gnp(20, &rat(1, 2), 42).unwrap();
        assert_eq!(a, b);
        let c = sample_gnp(20, &rat(1, 2), 43).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn thresholds() {
        assert_eq!(threshold(&Rational::one()), 1u128 << 64);
        assert_eq!(threshold(&rat(1, 2)), 1u128 << 63);
        assert_eq!(threshold(&rat(1, 3)), (1u128 << 64) / 3 + 1);
        assert_eq!(threshold(&Rational::zero()), 0);
    }

    #[test]
    fn experiment_records_match_samples() {
        let e = run_experiment(8, &rat(1, 2), 5, 9, &rat(1, 2), true).unwrap();
        assert_eq!(e.records.len(), 5);
        assert_eq!(e.records[0].edges, sample_gnp(8, &rat(1, 2), 9).unwrap().m());
        let again = run_experiment(8, &rat(1, 2), 5, 9, &rat(1, 2), true).unwrap();
        assert_eq!(e.records, again.records);
        assert!(e.to_csv().starts_with("trial,edges"));
        assert_eq!(e.to_csv().lines().count(), 6);
    }

    #[test]
    fn complete_graph_claim_always_holds() {
        let e = run_experiment(20, &Rational::one(), 3, 1, &rat(1, 10), false).unwrap();
        assert_eq!(e.summary.claim_edges_frequency, 1.0);
    }

    #[test]
    fn window_bounds() {
        for seed in 0..3 {
            let w = chi_q_window(12, seed).unwrap();
            assert!(w.within_bounds(), "{w:?}");
        }
        assert!(chi_q_window(22, 0).is_err());
    }

    #[test]
    fn argument_checks() {
        assert!(run_experiment(25, &rat(1, 2), 1, 0, &rat(1, 2), false).is_err());
        assert!(run_experiment(5, &rat(1, 2), 0, 0, &rat(1, 2), false).is_err());
        assert!(run_experiment(5, &rat(1, 2), 1, 0, &rat(0, 1), false).is_err());
    }
}
