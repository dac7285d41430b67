use super::tableau::Tableau;
use super::{verify_solution, Constraint, LpProblem, LpSolution, LpStatus, Relation};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Final state of a row-generation run.
#[derive(Clone, Debug)]
pub struct SeparationOutcome {
    /// Base rows followed by every generated row, in order of generation.
    pub problem: LpProblem,
    pub solution: LpSolution,
    pub rounds: usize,
}

/// Optimizes `base` over the rows it already has plus rows produced lazily
/// by `oracle`. The oracle receives the current optimum and returns a
/// violated `≤` or `≥` row, or `None` when the point is feasible for the
/// full family. A returned row that is not violated is an
/// [`Error::OracleContract`]. The family the oracle draws from must be finite.
pub fn solve_with_separation<F>(base: &LpProblem, mut oracle: F) -> Result<SeparationOutcome>
where
    F: FnMut(&[Rational]) -> Result<Option<Constraint>>,
{
    base.validate()?;
    let mut problem = base.clone();
    let (mut t, mut status) = Tableau::solve(&problem);
    let mut rounds = 0;
    match status {
        LpStatus::Infeasible => {
            let solution = t.solution(&problem, status);
            return Ok(SeparationOutcome { problem, solution, rounds });
        }
        LpStatus::Unbounded => {
            return Err(Error::InvalidParameters("base relaxation is unbounded".into()));
        }
        LpStatus::Optimal => {}
    }
    loop {
        let current = t.solution(&problem, status);
        let Some(row) = oracle(&current.primal)? else {
            verify_solution(&problem, &current)?;
            return Ok(SeparationOutcome { problem, solution: current, rounds });
        };
        if let Some((j, _)) = row.coeffs.iter().find(|(j, _)| *j >= problem.num_vars()) {
            return Err(Error::OracleContract(format!("row references unknown variable {j}")));
        }
        let negate = match row.relation {
            Relation::Le => false,
            Relation::Ge => true,
            Relation::Eq => return Err(Error::OracleContract("equality rows cannot be separated".into())),
        };
        if row.is_satisfied(&current.primal) {
            return Err(Error::OracleContract("returned row is not violated".into()));
        }
        problem.push(row);
        rounds += 1;
        status = t.add_row(&problem, negate);
        if status == LpStatus::Infeasible {
            let solution = t.solution(&problem, status);
            return Ok(SeparationOutcome { problem, solution, rounds });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::{solve, Sense};
    use crate::rational::{int, rat};

    /// max x + y over the unit disc approximated by 12 tangent half-planes.
    fn polygon_rows() -> Vec<Constraint> {
        let pts = [(1, 0), (3, 4), (4, 3), (0, 1), (-3, 4), (-4, 3), (-1, 0), (-3, -4), (-4, -3), (0, -1), (3, -4), (4, -3)];
        pts.iter()
            .map(|&(a, b)| {
                let d = if a == 0 || b == 0 { 1 } else { 5 };
                Constraint::new(vec![(0, rat(a, d)), (1, rat(b, d))], Relation::Le, int(1))
            })
            .collect()
    }

    #[test]
    fn lazy_rows_match_full_lp() {
        let mut base = LpProblem::new(Sense::Maximize, vec![int(1), int(1)]);
        base.nonnegative = vec![false, false];
        base.push(Constraint::new(vec![(0, int(1))], Relation::Le, int(1)));
        base.push(Constraint::new(vec![(1, int(1))], Relation::Le, int(1)));
        base.push(Constraint::new(vec![(0, int(1))], Relation::Ge, int(-1)));
        base.push(Constraint::new(vec![(1, int(1))], Relation::Ge, int(-1)));
        let rows = polygon_rows();
        let mut full = base.clone();
        for r in &rows {
            full.push(r.clone());
        }
        let expect = solve(&full).unwrap().objective_value;
        let out = solve_with_separation(&base, |x| Ok(rows.iter().find(|r| !r.is_satisfied(x)).cloned())).unwrap();
        assert_eq!(out.solution.objective_value, expect);
        assert_eq!(out.solution.objective_value, rat(10, 7));
        assert!(out.rounds >= 1);
        verify_solution(&out.problem, &out.solution).unwrap();
    }

    #[test]
    fn ge_rows_and_minimization() {
        // min x + 2y, rows generated: x + y >= 2, x >= 1/2
        let base = LpProblem::new(Sense::Minimize, vec![int(1), int(2)]);
        let rows = [Constraint::new(vec![(0, int(1)), (1, int(1))], Relation::Ge, int(2)),
            Constraint::new(vec![(0, int(1)), (1, int(-1))], Relation::Le, int(1))];
        let out = solve_with_separation(&base, |x| Ok(rows.iter().find(|r| !r.is_satisfied(x)).cloned())).unwrap();
        assert_eq!(out.solution.objective_value, rat(5, 2));
    }

    #[test]
    fn generated_infeasibility() {
        let mut base = LpProblem::new(Sense::Maximize, vec![int(1)]);
        base.push(Constraint::new(vec![(0, int(1))], Relation::Le, int(3)));
        let row = Constraint::new(vec![(0, int(1))], Relation::Ge, int(5));
        let out = solve_with_separation(&base, |x| Ok((!row.is_satisfied(x)).then(|| row.clone()))).unwrap();
        assert_eq!(out.solution.status, LpStatus::Infeasible);
    }

    #[test]
    fn overflow_midway_switches_to_big_integers() {
        let huge = Rational::from_integer(num_bigint::BigInt::from(10).pow(20));
        let mut base = LpProblem::new(Sense::Maximize, vec![int(1), int(1)]);
        base.push(Constraint::new(vec![(0, int(1))], Relation::Le, int(1)));
        base.push(Constraint::new(vec![(1, int(1))], Relation::Le, int(1)));
        let rows = [Constraint::new(vec![(0, huge.clone()), (1, huge.clone() + int(1))], Relation::Le, huge.clone()),
            Constraint::new(vec![(0, int(3)), (1, huge.clone())], Relation::Le, huge.clone())];
        let out = solve_with_separation(&base, |x| Ok(rows.iter().find(|r| !r.is_satisfied(x)).cloned())).unwrap();
        let mut full = base.clone();
        full.constraints.extend(rows.iter().cloned());
        assert_eq!(out.solution.objective_value, solve(&full).unwrap().objective_value);
        assert!(out.rounds >= 1);
    }

    #[test]
    fn satisfied_row_is_contract_violation() {
        let mut base = LpProblem::new(Sense::Maximize, vec![int(1)]);
        base.push(Constraint::new(vec![(0, int(1))], Relation::Le, int(1)));
        let err = solve_with_separation(&base, |_| Ok(Some(Constraint::new(vec![(0, int(1))], Relation::Le, int(2)))))
            .unwrap_err();
        assert!(matches!(err, Error::OracleContract(_)));
    }

    #[test]
    fn unbounded_base_rejected() {
        let base = LpProblem::new(Sense::Maximize, vec![int(1)]);
        assert!(solve_with_separation(&base, |_| Ok(None)).is_err());
    }
}
