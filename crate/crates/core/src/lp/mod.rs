//! Exact rational linear programming.
//!
//! [`solve`] runs a dense, fraction-free two-phase primal simplex. Pricing
//! picks the largest reduced cost and falls back to Bland's smallest-index
//! rule during degenerate stretches, so it cannot cycle. [`solve_with_separation`] adds rows lazily from a
//! separation oracle and re-optimizes with the dual simplex.
//!
//! Dual values follow the Lagrangian convention: the dual objective is
//! `b·y`; for a maximization, `≤` rows carry `y ≥ 0`, `≥` rows `y ≤ 0`,
//! and every nonnegative variable satisfies `(Aᵀy)_j ≥ c_j` (equality for
//! free variables). Minimization flips every sign condition.

mod separation;
mod tableau;

pub use separation::{solve_with_separation, SeparationOutcome};

use std::fmt::Write as _;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

/// One sparse row `Σ coeffs · x (relation) rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<(usize, Rational)>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(coeffs: Vec<(usize, Rational)>, relation: Relation, rhs: Rational) -> Self {
        Constraint { coeffs, relation, rhs }
    }

    pub fn lhs(&self, x: &[Rational]) -> Rational {
        self.coeffs.iter().map(|(j, a)| a * &x[*j]).sum()
    }

    pub fn is_satisfied(&self, x: &[Rational]) -> bool {
        let lhs = self.lhs(x);
        match self.relation {
            Relation::Le => lhs <= self.rhs,
            Relation::Ge => lhs >= self.rhs,
            Relation::Eq => lhs == self.rhs,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpProblem {
    pub sense: Sense,
    /// `true` for `x_j ≥ 0`, `false` for a free variable.
    pub nonnegative: Vec<bool>,
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
}

impl LpProblem {
    /// A problem over `n` nonnegative variables.
    pub fn new(sense: Sense, objective: Vec<Rational>) -> Self {
        let n = objective.len();
        LpProblem { sense, nonnegative: vec![true; n], objective, constraints: Vec::new() }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn push(&mut self, c: Constraint) {
        self.constraints.push(c);
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.num_vars();
        if n == 0 {
            return Err(Error::InvalidParameters("LP needs at least one variable".into()));
        }
        if self.nonnegative.len() != n {
            return Err(Error::InvalidParameters("nonnegativity flags do not match variables".into()));
        }
        for (i, c) in self.constraints.iter().enumerate() {
            if let Some((j, _)) = c.coeffs.iter().find(|(j, _)| *j >= n) {
                return Err(Error::InvalidParameters(format!("row {i} references variable {j} of {n}")));
            }
        }
        Ok(())
    }

    pub fn objective_at(&self, x: &[Rational]) -> Rational {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }

    /// Debug dump: objective then one row per line, rationals as `p/q`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let sense = match self.sense {
            Sense::Maximize => "maximize",
            Sense::Minimize => "minimize",
        };
        let _ = write!(out, "{sense}");
        for (j, c) in self.objective.iter().enumerate() {
            if !c.is_zero() {
                let _ = write!(out, " {c}*x{j}");
            }
        }
        out.push('\n');
        for c in &self.constraints {
            for (j, a) in &c.coeffs {
                let _ = write!(out, "{a}*x{j} ");
            }
            let rel = match c.relation {
                Relation::Le => "<=",
                Relation::Ge => ">=",
                Relation::Eq => "=",
            };
            let _ = writeln!(out, "{rel} {}", c.rhs);
        }
        for (j, nn) in self.nonnegative.iter().enumerate() {
            if !nn {
                let _ = writeln!(out, "free x{j}");
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpSolution {
    pub status: LpStatus,
    pub objective_value: Rational,
    /// One value per variable (empty unless optimal).
    pub primal: Vec<Rational>,
    /// One value per constraint (empty unless optimal).
    pub dual: Vec<Rational>,
    pub pivots: usize,
}

impl LpSolution {
    pub(crate) fn without_point(status: LpStatus, pivots: usize) -> Self {
        LpSolution { status, objective_value: Rational::zero(), primal: Vec::new(), dual: Vec::new(), pivots }
    }
}

/// Solves `p` exactly. Infeasibility and unboundedness are statuses, not errors.
pub fn solve(p: &LpProblem) -> Result<LpSolution> {
    p.validate()?;
    let (t, status) = tableau::Tableau::solve(p);
    let solution = t.solution(p, status);
    if status == LpStatus::Optimal {
        verify_solution(p, &solution)?;
    }
    Ok(solution)
}

/// Re-checks an optimal solution by substitution: primal feasibility, dual
/// feasibility under the sign convention of this module, and equality of
/// the two objectives.
pub fn verify_solution(p: &LpProblem, s: &LpSolution) -> Result<()> {
    let fail = |m: String| Err(Error::Verification(m));
    if s.status != LpStatus::Optimal {
        return fail("solution is not optimal".into());
    }
    let n = p.num_vars();
    if s.primal.len() != n || s.dual.len() != p.constraints.len() {
        return fail("solution vector lengths do not match the problem".into());
    }
    for j in 0..n {
        if p.nonnegative[j] && s.primal[j].is_negative() {
            return fail(format!("x{j} is negative"));
        }
    }
    for (i, c) in p.constraints.iter().enumerate() {
        if !c.is_satisfied(&s.primal) {
            return fail(format!("row {i} violated"));
        }
    }
    let flip = p.sense == Sense::Minimize;
    for (i, c) in p.constraints.iter().enumerate() {
        let y = &s.dual[i];
        let ok = match (c.relation, flip) {
            (Relation::Eq, _) => true,
            (Relation::Le, false) | (Relation::Ge, true) => !y.is_negative(),
            (Relation::Ge, false) | (Relation::Le, true) => !y.is_positive(),
        };
        if !ok {
            return fail(format!("dual of row {i} has the wrong sign"));
        }
    }
    let mut aty = vec![Rational::zero(); n];
    for (c, y) in p.constraints.iter().zip(&s.dual) {
        for (j, a) in &c.coeffs {
            aty[*j] += a * y;
        }
    }
    for j in 0..n {
        let slack = &aty[j] - &p.objective[j];
        let ok = if !p.nonnegative[j] {
            slack.is_zero()
        } else if flip {
            !slack.is_positive()
        } else {
            !slack.is_negative()
        };
        if !ok {
            return fail(format!("dual constraint for x{j} violated"));
        }
    }
    let primal_value = p.objective_at(&s.primal);
    let dual_value: Rational = p.constraints.iter().zip(&s.dual).map(|(c, y)| &c.rhs * y).sum();
    if primal_value != dual_value || primal_value != s.objective_value {
        return fail(format!("objectives differ: primal {primal_value}, dual {dual_value}"));
    }
    Ok(())
}
