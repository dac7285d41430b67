//! Fraction-free simplex tableau.
//!
//! Rows are scaled to integers once; afterwards every entry is kept as
//! `D · (B⁻¹A)_ij` for the current basis determinant `D > 0`, and a pivot
//! on `p = T_rc` updates `T_ij ← (p·T_ij − T_ic·T_rj) / D` with exact
//! division. Arithmetic runs in `i128` and restarts in `BigInt` on overflow.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{LpProblem, LpSolution, LpStatus, Relation, Sense};
use crate::rational::Rational;

#[derive(Debug)]
pub(crate) struct Overflow;

type R<T> = Result<T, Overflow>;

/// Degenerate pivots tolerated before switching to the smallest-index rule.
const DEGENERATE_RUN: usize = 16;

pub(crate) trait Int: Clone + Debug + Ord {
    fn from_big(v: &BigInt) -> R<Self>;
    fn to_big(&self) -> BigInt;
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn is_pos(&self) -> bool;
    fn is_neg(&self) -> bool;
    fn neg(&self) -> R<Self>;
    fn abs(&self) -> R<Self>;
    fn mul(&self, o: &Self) -> R<Self>;
    fn sub(&self, o: &Self) -> R<Self>;
    fn div_exact(&self, o: &Self) -> Self;
}

impl Int for i128 {
    fn from_big(v: &BigInt) -> R<Self> {
        v.to_i128().ok_or(Overflow)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_pos(&self) -> bool {
        *self > 0
    }
    fn is_neg(&self) -> bool {
        *self < 0
    }
    fn neg(&self) -> R<Self> {
        self.checked_neg().ok_or(Overflow)
    }
    fn abs(&self) -> R<Self> {
        self.checked_abs().ok_or(Overflow)
    }
    fn mul(&self, o: &Self) -> R<Self> {
        self.checked_mul(*o).ok_or(Overflow)
    }
    fn sub(&self, o: &Self) -> R<Self> {
        self.checked_sub(*o).ok_or(Overflow)
    }
    fn div_exact(&self, o: &Self) -> Self {
        debug_assert_eq!(self % o, 0);
        self / o
    }
}

impl Int for BigInt {
    fn from_big(v: &BigInt) -> R<Self> {
        Ok(v.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_pos(&self) -> bool {
        Signed::is_positive(self)
    }
    fn is_neg(&self) -> bool {
        Signed::is_negative(self)
    }
    fn neg(&self) -> R<Self> {
        Ok(-self)
    }
    fn abs(&self) -> R<Self> {
        Ok(Signed::abs(self))
    }
    fn mul(&self, o: &Self) -> R<Self> {
        Ok(self * o)
    }
    fn sub(&self, o: &Self) -> R<Self> {
        Ok(self - o)
    }
    fn div_exact(&self, o: &Self) -> Self {
        debug_assert!(Zero::is_zero(&(self % o)));
        self / o
    }
}

/// Integer row `s·a`, `s·b` with `s` the lcm of all denominators.
fn integer_row(coeffs: &[(usize, Rational)], rhs: &Rational) -> (Vec<(usize, BigInt)>, BigInt, BigInt) {
    let mut s = rhs.denom().clone();
    for (_, a) in coeffs {
        s = s.lcm(a.denom());
    }
    let scale = |v: &Rational| (v * Rational::from_integer(s.clone())).to_integer();
    (coeffs.iter().map(|(j, a)| (*j, scale(a))).collect(), scale(rhs), s)
}

fn relation_after(rel: Relation, flip: bool) -> Relation {
    match (rel, flip) {
        (Relation::Le, true) => Relation::Ge,
        (Relation::Ge, true) => Relation::Le,
        (r, _) => r,
    }
}

/// `max price·x, rows·x = rhs, x ≥ 0` over split and slack columns.
pub(crate) struct Tab<T> {
    rows: Vec<Vec<T>>,
    rhs: Vec<T>,
    /// `D · (c_j − z_j)`.
    cost: Vec<T>,
    /// `−D · z`.
    obj: T,
    det: T,
    basis: Vec<usize>,
    blocked: Vec<bool>,
    price: Vec<T>,
    plus: Vec<usize>,
    minus: Vec<Option<usize>>,
    identity: Vec<usize>,
    row_sign: Vec<bool>,
    row_scale: Vec<BigInt>,
    obj_scale: BigInt,
    sense_sign: bool,
    pivots: usize,
}

impl<T: Int> Tab<T> {
    fn build(p: &LpProblem) -> R<Self> {
        let flip_obj = p.sense == Sense::Minimize;
        let mut obj_scale = BigInt::one();
        for c in &p.objective {
            obj_scale = obj_scale.lcm(c.denom());
        }
        let mut price = Vec::new();
        let mut plus = Vec::new();
        let mut minus = Vec::new();
        for (j, c) in p.objective.iter().enumerate() {
            let v = (c * Rational::from_integer(obj_scale.clone())).to_integer();
            let v = if flip_obj { -v } else { v };
            plus.push(price.len());
            price.push(T::from_big(&v)?);
            if p.nonnegative[j] {
                minus.push(None);
            } else {
                minus.push(Some(price.len()));
                price.push(T::from_big(&-v)?);
            }
        }
        let mut t = Tab {
            rows: Vec::new(),
            rhs: Vec::new(),
            cost: Vec::new(),
            obj: T::zero(),
            det: T::from_big(&BigInt::one())?,
            basis: Vec::new(),
            blocked: vec![false; price.len()],
            price,
            plus,
            minus,
            identity: Vec::new(),
            row_sign: Vec::new(),
            row_scale: Vec::new(),
            obj_scale,
            sense_sign: flip_obj,
            pivots: 0,
        };
        let mut relations = Vec::new();
        for c in &p.constraints {
            let (coeffs, rhs, s) = integer_row(&c.coeffs, &c.rhs);
            let flip = rhs.is_negative();
            let sign = |v: BigInt| if flip { -v } else { v };
            let mut dense = vec![<BigInt as Zero>::zero(); t.price.len()];
            for (j, a) in coeffs {
                dense[t.plus[j]] += &a;
                if let Some(mj) = t.minus[j] {
                    dense[mj] -= &a;
                }
            }
            t.rows.push(dense.into_iter().map(|v| T::from_big(&sign(v))).collect::<R<_>>()?);
            t.rhs.push(T::from_big(&sign(rhs))?);
            t.row_sign.push(flip);
            t.row_scale.push(s);
            t.identity.push(usize::MAX);
            t.basis.push(usize::MAX);
            relations.push(relation_after(c.relation, flip));
        }
        let one = T::from_big(&BigInt::one())?;
        let mut needs_art = Vec::new();
        for (i, rel) in relations.iter().enumerate() {
            match rel {
                Relation::Le => {
                    let col = t.add_column(false);
                    t.rows[i][col] = one.clone();
                    t.identity[i] = col;
                    t.basis[i] = col;
                }
                Relation::Ge => {
                    let col = t.add_column(false);
                    t.rows[i][col] = one.neg()?;
                    needs_art.push(i);
                }
                Relation::Eq => needs_art.push(i),
            }
        }
        for i in needs_art {
            let col = t.add_column(true);
            t.rows[i][col] = one.clone();
            t.identity[i] = col;
            t.basis[i] = col;
        }
        Ok(t)
    }

    fn add_column(&mut self, artificial: bool) -> usize {
        for r in &mut self.rows {
            r.push(T::zero());
        }
        if !self.cost.is_empty() {
            self.cost.push(T::zero());
        }
        self.price.push(T::zero());
        self.blocked.push(artificial);
        self.price.len() - 1
    }

    fn ncols(&self) -> usize {
        self.price.len()
    }

    /// `(p·x − f·y) / D`, negated when the pivot is negative.
    fn combine(p: &T, x: &T, f: &T, y: &T, det: &T, flip: bool) -> R<T> {
        let v = if f.is_zero() || y.is_zero() {
            if x.is_zero() {
                return Ok(T::zero());
            }
            p.mul(x)?
        } else if x.is_zero() {
            f.mul(y)?.neg()?
        } else {
            p.mul(x)?.sub(&f.mul(y)?)?
        };
        let v = v.div_exact(det);
        if flip {
            v.neg()
        } else {
            Ok(v)
        }
    }

    fn pivot(&mut self, r: usize, c: usize) -> R<()> {
        self.pivots += 1;
        let p = self.rows[r][c].clone();
        let flip = p.is_neg();
        let prow = std::mem::take(&mut self.rows[r]);
        let prhs = self.rhs[r].clone();
        let det = self.det.clone();
        for i in 0..self.rows.len() {
            if i == r {
                continue;
            }
            let f = self.rows[i][c].clone();
            let row = &mut self.rows[i];
            for j in 0..row.len() {
                row[j] = Self::combine(&p, &row[j], &f, &prow[j], &det, flip)?;
            }
            self.rhs[i] = Self::combine(&p, &self.rhs[i], &f, &prhs, &det, flip)?;
        }
        let f = self.cost[c].clone();
        for j in 0..self.cost.len() {
            self.cost[j] = Self::combine(&p, &self.cost[j], &f, &prow[j], &det, flip)?;
        }
        self.obj = Self::combine(&p, &self.obj, &f, &prhs, &det, flip)?;
        if flip {
            self.rows[r] = prow.iter().map(|v| v.neg()).collect::<R<_>>()?;
            self.rhs[r] = prhs.neg()?;
            self.det = p.neg()?;
        } else {
            self.rows[r] = prow;
            self.det = p;
        }
        self.basis[r] = c;
        Ok(())
    }

    /// Largest reduced cost enters; after [`DEGENERATE_RUN`] pivots without
    /// progress the smallest eligible index enters instead, until the
    /// objective moves again. Bland's rule forbids cycling within such a
    /// run, and each run ends at a strictly better basis.
    fn primal(&mut self) -> R<LpStatus> {
        let mut stalled = 0;
        loop {
            let eligible = (0..self.ncols()).filter(|&j| !self.blocked[j] && self.cost[j].is_pos());
            let entering = if stalled >= DEGENERATE_RUN {
                eligible.min()
            } else {
                eligible.fold(None, |best: Option<usize>, j| match best {
                    Some(b) if self.cost[b] >= self.cost[j] => Some(b),
                    _ => Some(j),
                })
            };
            let Some(c) = entering else { return Ok(LpStatus::Optimal) };
            let mut best: Option<usize> = None;
            for i in 0..self.rows.len() {
                if !self.rows[i][c].is_pos() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some(k) => {
                        // rhs_i / a_ic against rhs_k / a_kc
                        let lhs = self.rhs[i].mul(&self.rows[k][c])?;
                        let rhs = self.rhs[k].mul(&self.rows[i][c])?;
                        lhs < rhs || (lhs == rhs && self.basis[i] < self.basis[k])
                    }
                };
                if better {
                    best = Some(i);
                }
            }
            let Some(r) = best else { return Ok(LpStatus::Unbounded) };
            stalled = if self.rhs[r].is_zero() { stalled + 1 } else { 0 };
            self.pivot(r, c)?;
        }
    }

    fn dual(&mut self) -> R<LpStatus> {
        loop {
            let leaving = (0..self.rows.len()).filter(|&i| self.rhs[i].is_neg()).min_by_key(|&i| self.basis[i]);
            let Some(r) = leaving else { return Ok(LpStatus::Optimal) };
            let mut best: Option<usize> = None;
            for j in 0..self.ncols() {
                if self.blocked[j] || !self.rows[r][j].is_neg() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some(k) => {
                        // |cost_j| / |a_rj| against |cost_k| / |a_rk|
                        let lhs = self.cost[j].abs()?.mul(&self.rows[r][k].abs()?)?;
                        let rhs = self.cost[k].abs()?.mul(&self.rows[r][j].abs()?)?;
                        lhs < rhs
                    }
                };
                if better {
                    best = Some(j);
                }
            }
            let Some(c) = best else { return Ok(LpStatus::Infeasible) };
            self.pivot(r, c)?;
        }
    }

    fn reprice(&mut self, price: &[T]) -> R<()> {
        let mut cost: Vec<T> = price.iter().map(|c| c.mul(&self.det)).collect::<R<_>>()?;
        let mut obj = T::zero();
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = &price[b];
            if cb.is_zero() {
                continue;
            }
            for (j, a) in self.rows[i].iter().enumerate() {
                if !a.is_zero() {
                    cost[j] = cost[j].sub(&cb.mul(a)?)?;
                }
            }
            obj = obj.sub(&cb.mul(&self.rhs[i])?)?;
        }
        self.cost = cost;
        self.obj = obj;
        Ok(())
    }

    fn two_phase(&mut self) -> R<LpStatus> {
        if self.blocked.iter().any(|&b| b) {
            let minus_one = T::from_big(&-BigInt::one())?;
            let phase1: Vec<T> =
                self.blocked.iter().map(|&a| if a { minus_one.clone() } else { T::zero() }).collect();
            let saved = std::mem::replace(&mut self.blocked, vec![false; phase1.len()]);
            self.reprice(&phase1)?;
            let status = self.primal()?;
            self.blocked = saved;
            debug_assert_eq!(status, LpStatus::Optimal);
            // optimum −z < 0 means some artificial stays positive
            if self.obj.is_pos() {
                return Ok(LpStatus::Infeasible);
            }
            for r in 0..self.rows.len() {
                if !self.blocked[self.basis[r]] {
                    continue;
                }
                if let Some(c) = (0..self.ncols()).find(|&j| !self.blocked[j] && !self.rows[r][j].is_zero()) {
                    self.pivot(r, c)?;
                }
            }
        }
        let price = self.price.clone();
        self.reprice(&price)?;
        self.primal()
    }

    fn add_row(&mut self, coeffs: &[(usize, Rational)], rhs: &Rational, negate: bool) -> R<()> {
        let (coeffs, b, s) = integer_row(coeffs, rhs);
        let sign = |v: BigInt| if negate { -v } else { v };
        let slack = self.add_column(false);
        let mut raw = vec![<BigInt as Zero>::zero(); self.ncols()];
        for (j, a) in coeffs {
            raw[self.plus[j]] += &a;
            if let Some(mj) = self.minus[j] {
                raw[mj] -= &a;
            }
        }
        let raw: Vec<T> = raw.into_iter().map(|v| T::from_big(&sign(v))).collect::<R<_>>()?;
        let mut dense: Vec<T> = raw.iter().map(|a| a.mul(&self.det)).collect::<R<_>>()?;
        dense[slack] = self.det.clone();
        let mut b = T::from_big(&sign(b))?.mul(&self.det)?;
        for i in 0..self.rows.len() {
            let f = &raw[self.basis[i]];
            if f.is_zero() {
                continue;
            }
            for (j, a) in self.rows[i].iter().enumerate() {
                if !a.is_zero() {
                    dense[j] = dense[j].sub(&f.mul(a)?)?;
                }
            }
            b = b.sub(&f.mul(&self.rhs[i])?)?;
        }
        self.rows.push(dense);
        self.rhs.push(b);
        self.basis.push(slack);
        self.identity.push(slack);
        self.row_sign.push(negate);
        self.row_scale.push(s);
        Ok(())
    }

    fn solution(&self, p: &LpProblem, status: LpStatus) -> LpSolution {
        if status != LpStatus::Optimal {
            return LpSolution::without_point(status, self.pivots);
        }
        let det = self.det.to_big();
        let frac = |v: &T| Rational::new(v.to_big(), det.clone());
        let mut col_value = vec![Rational::zero(); self.ncols()];
        for (i, &b) in self.basis.iter().enumerate() {
            col_value[b] = frac(&self.rhs[i]);
        }
        let primal = (0..p.num_vars())
            .map(|j| match self.minus[j] {
                Some(mj) => &col_value[self.plus[j]] - &col_value[mj],
                None => col_value[self.plus[j]].clone(),
            })
            .collect();
        let obj_scale = Rational::from_integer(self.obj_scale.clone());
        let dual = (0..self.rows.len())
            .map(|i| {
                let y = -frac(&self.cost[self.identity[i]]) * Rational::from_integer(self.row_scale[i].clone())
                    / &obj_scale;
                if self.sense_sign != self.row_sign[i] {
                    -y
                } else {
                    y
                }
            })
            .collect();
        let z = -frac(&self.obj) / &obj_scale;
        LpSolution {
            status,
            objective_value: if self.sense_sign { -z } else { z },
            primal,
            dual,
            pivots: self.pivots,
        }
    }
}

/// A tableau in machine integers, promoted to big integers on overflow.
pub(crate) enum Tableau {
    Small(Tab<i128>),
    Big(Tab<BigInt>),
}

const BIG: &str = "big-integer tableau cannot overflow";

impl Tableau {
    fn big(p: &LpProblem) -> Tab<BigInt> {
        Tab::build(p).expect(BIG)
    }

    /// Builds and solves `p` from scratch.
    pub(crate) fn solve(p: &LpProblem) -> (Tableau, LpStatus) {
        if let Ok(mut t) = Tab::<i128>::build(p) {
            if let Ok(status) = t.two_phase() {
                return (Tableau::Small(t), status);
            }
        }
        let mut t = Self::big(p);
        let status = t.two_phase().expect(BIG);
        (Tableau::Big(t), status)
    }

    /// Appends the last row of `p` (a `≤` row, or `≥` with `negate`) and
    /// re-optimizes with the dual simplex.
    pub(crate) fn add_row(&mut self, p: &LpProblem, negate: bool) -> LpStatus {
        let row = p.constraints.last().expect("row was pushed");
        if let Tableau::Small(t) = self {
            if let Ok(status) = t.add_row(&row.coeffs, &row.rhs, negate).and_then(|_| t.dual()) {
                return status;
            }
            let mut fresh = Self::big(p);
            let status = fresh.two_phase().expect(BIG);
            *self = Tableau::Big(fresh);
            return status;
        }
        let Tableau::Big(t) = self else { unreachable!() };
        t.add_row(&row.coeffs, &row.rhs, negate).expect(BIG);
        t.dual().expect(BIG)
    }

    pub(crate) fn solution(&self, p: &LpProblem, status: LpStatus) -> LpSolution {
        match self {
            Tableau::Small(t) => t.solution(p, status),
            Tableau::Big(t) => t.solution(p, status),
        }
    }

    #[cfg(test)]
    pub(crate) fn is_big(&self) -> bool {
        matches!(self, Tableau::Big(_))
    }
}
