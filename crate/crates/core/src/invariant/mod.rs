//! The fractional cut-covering number `x(G)`, `χ_q(G)`, their bounds, and
//! certificates for both sides of the covering LP.
//!
//! `x(G)` is the optimum of
//! `min Σ_X w(X)` over cut weights with every edge covered at least once,
//! and equally of its dual `max Σ_e y(e)` with every cut carrying at most 1.

mod bounds;
mod certificate;
mod laws;

pub use bounds::{bounds, induced_density_bound, BoundsReport, InducedBound, MAX_INDUCED_SCAN_VERTICES};
pub use certificate::{
    dual_symmetric, verify_certificate, verify_certificate_file, verify_cover, verify_dual, Certificate,
    CertificateCheck, CertificateFile, CoverCertificate, DualCertificate,
};
pub use laws::{check_hom_monotone, check_operations_laws, HomOutcome, HomReport, OperationsReport};

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::cutspace::{cut_edges, enumerate_cuts, CutFamily, MaxCutSolver, WeightedCut};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::lp::{solve, solve_with_separation, Constraint, LpProblem, LpStatus, Relation, Sense};
use crate::rational::{self, Rational};

/// Largest graph solved by listing every cut as a primal variable.
pub const MAX_PRIMAL_ROUTE_VERTICES: usize = 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    /// Covering LP over all cuts.
    Enumeration,
    /// Packing LP with cut rows generated by weighted MAXCUT.
    Separation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XResult {
    pub value: Rational,
    pub primal: CoverCertificate,
    pub dual: DualCertificate,
    pub route: Route,
}

impl XResult {
    pub fn chi_q(&self) -> Rational {
        chi_q_of(&self.value)
    }
}

/// `2 / (2 − x)`.
pub fn chi_q_of(x: &Rational) -> Rational {
    let two = rational::int(2);
    &two / (&two - x)
}

pub fn x_exact(g: &Graph) -> Result<XResult> {
    g.require_edges()?;
    if g.n() <= MAX_PRIMAL_ROUTE_VERTICES {
        x_by_enumeration(g)
    } else {
        x_by_separation(g)
    }
}

pub fn chi_q(g: &Graph) -> Result<Rational> {
    Ok(x_exact(g)?.chi_q())
}

/// Runs the named route regardless of size (within the route's own limits).
pub fn x_exact_with_route(g: &Graph, route: Route) -> Result<XResult> {
    g.require_edges()?;
    match route {
        Route::Enumeration => x_by_enumeration(g),
        Route::Separation => x_by_separation(g),
    }
}

fn finish(g: &Graph, value: Rational, family: CutFamily, y: Vec<Rational>, route: Route) -> Result<XResult> {
    let primal = CoverCertificate { value: family.total_weight(), family };
    let dual = DualCertificate { value: y.iter().sum(), y, orbit_constant: false };
    if primal.value != value || dual.value != value {
        return Err(Error::Verification(format!(
            "certificate values {} and {} differ from the LP optimum {value}",
            primal.value, dual.value
        )));
    }
    if !verify_cover(g, &primal)? || !verify_dual(g, &dual)? {
        return Err(Error::Verification("certificate failed independent re-check".into()));
    }
    Ok(XResult { value, primal, dual, route })
}

fn x_by_enumeration(g: &Graph) -> Result<XResult> {
    // equal edge sets arise from isolated vertices or several components;
    // keep the smallest mask for each
    let mut seen: HashMap<Vec<usize>, ()> = HashMap::new();
    let cuts: Vec<_> = enumerate_cuts(g)?.into_iter().filter(|c| seen.insert(c.edges.clone(), ()).is_none()).collect();
    let mut rows: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); g.m()];
    for (j, c) in cuts.iter().enumerate() {
        for &e in &c.edges {
            rows[e].push((j, Rational::one()));
        }
    }
    let mut lp = LpProblem::new(Sense::Minimize, vec![Rational::one(); cuts.len()]);
    for r in rows {
        lp.push(Constraint::new(r, Relation::Ge, Rational::one()));
    }
    let sol = solve(&lp)?;
    if sol.status != LpStatus::Optimal {
        return Err(Error::Verification(format!("covering LP ended {:?}", sol.status)));
    }
    let family = CutFamily::new(
        cuts.iter()
            .zip(&sol.primal)
            .filter(|(_, w)| !w.is_zero())
            .map(|(c, w)| WeightedCut { mask: c.member_mask, weight: w.clone() })
            .collect(),
    );
    finish(g, sol.objective_value, family, sol.dual, Route::Enumeration)
}

fn cut_row(g: &Graph, mask: u64) -> Constraint {
    let coeffs = cut_edges(g, mask).into_iter().map(|e| (e, Rational::one())).collect();
    Constraint::new(coeffs, Relation::Le, Rational::one())
}

fn x_by_separation(g: &Graph) -> Result<XResult> {
    let solver = MaxCutSolver::new(g)?;
    let mut lp = LpProblem::new(Sense::Maximize, vec![Rational::one(); g.m()]);
    let mut masks = Vec::new();
    for v in 0..g.n() {
        if g.degree(v) == 0 {
            continue;
        }
        let mask = crate::cutspace::canonical_mask(g.n(), 1u64 << v)?;
        if masks.contains(&mask) {
            continue;
        }
        masks.push(mask);
        lp.push(cut_row(g, mask));
    }
    let mut generated = Vec::new();
    let out = solve_with_separation(&lp, |y| {
        let mc = solver.solve(Some(y))?;
        if mc.value > Rational::one() {
            generated.push(mc.witness.member_mask);
            Ok(Some(cut_row(g, mc.witness.member_mask)))
        } else {
            Ok(None)
        }
    })?;
    if out.solution.status != LpStatus::Optimal {
        return Err(Error::Verification(format!("packing LP ended {:?}", out.solution.status)));
    }
    masks.extend(generated);
    let mut weights: Vec<(u64, Rational)> = masks
        .into_iter()
        .zip(out.solution.dual)
        .filter(|(_, w)| !w.is_zero())
        .collect();
    weights.sort_by_key(|(m, _)| *m);
    let family = CutFamily::new(weights.into_iter().map(|(mask, weight)| WeightedCut { mask, weight }).collect());
    finish(g, out.solution.objective_value, family, out.solution.primal, Route::Separation)
}
