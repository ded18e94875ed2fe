//! Linear programs over exact rationals and a two-phase simplex solver.
//!
//! Pivoting follows Bland's rule (lowest eligible column enters, lowest
//! basic index leaves on ratio ties), which guarantees termination on
//! degenerate programs. Everything is exact, so "optimal" means optimal.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Relation {
    #[cfg_attr(feature = "serde", serde(rename = "<="))]
    Le,
    #[cfg_attr(feature = "serde", serde(rename = ">="))]
    Ge,
    #[cfg_attr(feature = "serde", serde(rename = "="))]
    Eq,
}

impl Relation {
    fn flipped(self) -> Relation {
        match self {
            Relation::Le => Relation::Ge,
            Relation::Ge => Relation::Le,
            Relation::Eq => Relation::Eq,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> Self {
        Constraint { coeffs, relation, rhs }
    }

    pub fn lhs(&self, point: &[Rational]) -> Rational {
        dot(&self.coeffs, point)
    }

    /// Signed slack: nonnegative when satisfied (for `=`, zero when satisfied).
    pub fn slack(&self, point: &[Rational]) -> Rational {
        let lhs = self.lhs(point);
        match self.relation {
            Relation::Le | Relation::Eq => &self.rhs - lhs,
            Relation::Ge => lhs - &self.rhs,
        }
    }

    pub fn is_satisfied(&self, point: &[Rational]) -> bool {
        let slack = self.slack(point);
        match self.relation {
            Relation::Eq => slack.is_zero(),
            _ => !slack.is_negative(),
        }
    }
}

/// Optimization problem `opt objective·x` subject to rows and variable bounds.
///
/// Every variable has a finite lower bound (default 0) and an optional upper
/// bound.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LinearProgram {
    pub num_vars: usize,
    pub sense: Sense,
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
    pub lower: Vec<Rational>,
    pub upper: Vec<Option<Rational>>,
}

impl LinearProgram {
    pub fn new(num_vars: usize, sense: Sense, objective: Vec<Rational>) -> Result<Self> {
        if num_vars == 0 {
            return Err(Error::invalid("a linear program needs at least one variable"));
        }
        if objective.len() != num_vars {
            return Err(Error::invalid("objective length differs from variable count"));
        }
        Ok(LinearProgram {
            num_vars,
            sense,
            objective,
            constraints: Vec::new(),
            lower: vec![Rational::zero(); num_vars],
            upper: vec![None; num_vars],
        })
    }

    pub fn add_constraint(
        &mut self,
        coeffs: Vec<Rational>,
        relation: Relation,
        rhs: Rational,
    ) -> Result<&mut Self> {
        if coeffs.len() != self.num_vars {
            return Err(Error::invalid("constraint length differs from variable count"));
        }
        self.constraints.push(Constraint::new(coeffs, relation, rhs));
        Ok(self)
    }

    pub fn with_constraint(mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> Result<Self> {
        self.add_constraint(coeffs, relation, rhs)?;
        Ok(self)
    }

    pub fn set_bounds(&mut self, var: usize, lower: Rational, upper: Option<Rational>) -> Result<()> {
        if var >= self.num_vars {
            return Err(Error::invalid("bound on a nonexistent variable"));
        }
        self.lower[var] = lower;
        self.upper[var] = upper;
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.num_vars == 0 {
            return Err(Error::invalid("a linear program needs at least one variable"));
        }
        if self.objective.len() != self.num_vars
            || self.lower.len() != self.num_vars
            || self.upper.len() != self.num_vars
        {
            return Err(Error::invalid("objective or bound vectors have the wrong length"));
        }
        if let Some(i) = self.constraints.iter().position(|c| c.coeffs.len() != self.num_vars) {
            return Err(Error::Invalid(alloc::format!(
                "constraint {i} has {} coefficients, expected {}",
                self.constraints[i].coeffs.len(),
                self.num_vars
            )));
        }
        Ok(())
    }

    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        dot(&self.objective, point)
    }

    /// True when `candidate` is strictly better than `incumbent` under this sense.
    pub fn better(&self, candidate: &Rational, incumbent: &Rational) -> bool {
        match self.sense {
            Sense::Maximize => candidate > incumbent,
            Sense::Minimize => candidate < incumbent,
        }
    }
}

pub(crate) fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(tag = "status", rename_all = "lowercase"))]
pub enum LpOutcome {
    Optimal { point: Vec<Rational>, value: Rational },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn status(&self) -> LpStatus {
        match self {
            LpOutcome::Optimal { .. } => LpStatus::Optimal,
            LpOutcome::Infeasible => LpStatus::Infeasible,
            LpOutcome::Unbounded => LpStatus::Unbounded,
        }
    }

    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn point(&self) -> Option<&[Rational]> {
        match self {
            LpOutcome::Optimal { point, .. } => Some(point),
            _ => None,
        }
    }
}

/// Which constraint of a program a violation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case", tag = "kind", content = "index"))]
pub enum ConstraintRef {
    Row(usize),
    LowerBound(usize),
    UpperBound(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Violation {
    pub constraint: ConstraintRef,
    /// How far the point is on the wrong side, always positive.
    pub amount: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct FeasibilityReport {
    pub violations: Vec<Violation>,
}

impl FeasibilityReport {
    pub fn is_feasible(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Evaluates every row and bound of `lp` at `point` exactly.
pub fn check_feasible(lp: &LinearProgram, point: &[Rational]) -> Result<FeasibilityReport> {
    lp.validate()?;
    if point.len() != lp.num_vars {
        return Err(Error::Invalid(alloc::format!(
            "point has {} coordinates, program has {} variables",
            point.len(),
            lp.num_vars
        )));
    }
    let mut violations = Vec::new();
    for (i, c) in lp.constraints.iter().enumerate() {
        let slack = c.slack(point);
        let amount = match c.relation {
            Relation::Eq => slack.abs(),
            _ if slack.is_negative() => -slack,
            _ => continue,
        };
        if !amount.is_zero() {
            violations.push(Violation { constraint: ConstraintRef::Row(i), amount });
        }
    }
    for (j, x) in point.iter().enumerate() {
        if x < &lp.lower[j] {
            violations.push(Violation {
                constraint: ConstraintRef::LowerBound(j),
                amount: &lp.lower[j] - x,
            });
        }
        if let Some(u) = &lp.upper[j] {
            if x > u {
                violations.push(Violation { constraint: ConstraintRef::UpperBound(j), amount: x - u });
            }
        }
    }
    Ok(FeasibilityReport { violations })
}

/// Solves `lp` exactly with two-phase simplex.
pub fn solve_lp(lp: &LinearProgram) -> Result<LpOutcome> {
    lp.validate()?;
    let n = lp.num_vars;

    // Shift x = lower + x' so every working variable is nonnegative.
    let mut rows: Vec<(Vec<Rational>, Relation, Rational)> = lp
        .constraints
        .iter()
        .map(|c| {
            let shift = dot(&c.coeffs, &lp.lower);
            (c.coeffs.clone(), c.relation, &c.rhs - shift)
        })
        .collect();
    for j in 0..n {
        let Some(u) = &lp.upper[j] else { continue };
        let room = u - &lp.lower[j];
        if upper_bound_implied(&rows, j, &room) {
            continue;
        }
        let mut coeffs = vec![Rational::zero(); n];
        coeffs[j] = Rational::one();
        rows.push((coeffs, Relation::Le, room));
    }

    // Internally always minimize.
    let cost: Vec<Rational> = match lp.sense {
        Sense::Minimize => lp.objective.clone(),
        Sense::Maximize => lp.objective.iter().map(|c| -c).collect(),
    };

    let shifted = match Tableau::build(n, rows)?.solve(&cost) {
        Phase::Infeasible => return Ok(LpOutcome::Infeasible),
        Phase::Unbounded => return Ok(LpOutcome::Unbounded),
        Phase::Optimal(x) => x,
    };
    let point: Vec<Rational> = shifted.iter().zip(&lp.lower).map(|(x, l)| x + l).collect();
    let value = lp.evaluate(&point);
    Ok(LpOutcome::Optimal { point, value })
}

/// An upper bound `x_j <= room` is redundant when some equality row with
/// nonnegative coefficients already caps `a_j x_j` at its right-hand side.
fn upper_bound_implied(rows: &[(Vec<Rational>, Relation, Rational)], j: usize, room: &Rational) -> bool {
    rows.iter().any(|(coeffs, rel, rhs)| {
        *rel == Relation::Eq
            && coeffs[j].is_positive()
            && coeffs.iter().all(|a| !a.is_negative())
            && &(rhs / &coeffs[j]) <= room
    })
}

enum Phase {
    Optimal(Vec<Rational>),
    Infeasible,
    Unbounded,
}

/// Dense simplex tableau. Column layout: structural variables, then one
/// slack/surplus per inequality row, then artificials. The final entry of
/// each row is its right-hand side.
struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    structural: usize,
    /// First artificial column; columns at or past it never re-enter in phase 2.
    first_artificial: usize,
    width: usize,
}

impl Tableau {
    fn build(n: usize, rows: Vec<(Vec<Rational>, Relation, Rational)>) -> Result<Self> {
        let normalized: Vec<_> = rows
            .into_iter()
            .map(|(coeffs, rel, rhs)| {
                if rhs.is_negative() {
                    (coeffs.iter().map(|a| -a).collect(), rel.flipped(), -rhs)
                } else {
                    (coeffs, rel, rhs)
                }
            })
            .collect();
        let slacks = normalized.iter().filter(|r| r.1 != Relation::Eq).count();
        let artificials = normalized.iter().filter(|r| r.1 != Relation::Le).count();
        let first_artificial = n + slacks;
        let width = first_artificial + artificials;

        let mut table = Vec::with_capacity(normalized.len());
        let mut basis = Vec::with_capacity(normalized.len());
        let (mut next_slack, mut next_art) = (n, first_artificial);
        for (coeffs, rel, rhs) in normalized {
            let mut row = coeffs;
            row.resize(width + 1, Rational::zero());
            match rel {
                Relation::Le => {
                    row[next_slack] = Rational::one();
                    basis.push(next_slack);
                    next_slack += 1;
                }
                Relation::Ge => {
                    row[next_slack] = -Rational::one();
                    next_slack += 1;
                    row[next_art] = Rational::one();
                    basis.push(next_art);
                    next_art += 1;
                }
                Relation::Eq => {
                    row[next_art] = Rational::one();
                    basis.push(next_art);
                    next_art += 1;
                }
            }
            row[width] = rhs;
            table.push(row);
        }
        Ok(Tableau { rows: table, basis, structural: n, first_artificial, width })
    }

    fn solve(mut self, cost: &[Rational]) -> Phase {
        if self.first_artificial < self.width {
            let mut phase1 = vec![Rational::zero(); self.width];
            for c in &mut phase1[self.first_artificial..] {
                *c = Rational::one();
            }
            let mut obj = self.objective_row(&phase1);
            // Phase 1 is bounded below by zero, so it always reaches optimality.
            let _ = self.optimize(&mut obj, self.width);
            // obj rhs holds -z.
            if !obj[self.width].is_zero() {
                return Phase::Infeasible;
            }
            self.evict_artificials();
        }
        let mut full_cost = vec![Rational::zero(); self.width];
        full_cost[..self.structural].clone_from_slice(cost);
        let mut obj = self.objective_row(&full_cost);
        if !self.optimize(&mut obj, self.first_artificial) {
            return Phase::Unbounded;
        }
        let mut x = vec![Rational::zero(); self.structural];
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            if b < self.structural {
                x[b] = row[self.width].clone();
            }
        }
        Phase::Optimal(x)
    }

    /// Reduced-cost row `c - c_B B^-1 A` with `-c_B x_B` in the rhs slot.
    fn objective_row(&self, cost: &[Rational]) -> Vec<Rational> {
        let mut obj: Vec<Rational> = cost.to_vec();
        obj.push(Rational::zero());
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            for (o, a) in obj.iter_mut().zip(row) {
                if !a.is_zero() {
                    *o -= &(cb * a);
                }
            }
        }
        obj
    }

    /// Runs Bland pivots over columns `< allowed`. Returns false if unbounded.
    fn optimize(&mut self, obj: &mut [Rational], allowed: usize) -> bool {
        loop {
            let Some(enter) = (0..allowed).find(|&j| obj[j].is_negative()) else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                let a = &row[enter];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &row[self.width] / a;
                let replace = match &leave {
                    None => true,
                    Some((li, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*li])
                    }
                };
                if replace {
                    leave = Some((i, ratio));
                }
            }
            let Some((pivot_row, _)) = leave else {
                return false;
            };
            self.pivot(pivot_row, enter, Some(obj));
        }
    }

    fn pivot(&mut self, r: usize, col: usize, obj: Option<&mut [Rational]>) {
        let inv = self.rows[r][col].recip().expect("pivot element is nonzero");
        let support: Vec<usize> = {
            let row = &mut self.rows[r];
            for v in row.iter_mut() {
                if !v.is_zero() {
                    *v *= &inv;
                }
            }
            (0..=self.width).filter(|&j| !row[j].is_zero()).collect()
        };
        let pivot_row = self.rows[r].clone();
        let eliminate = |target: &mut [Rational]| {
            let factor = target[col].clone();
            if factor.is_zero() {
                return;
            }
            for &j in &support {
                target[j] -= &(&factor * &pivot_row[j]);
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        if let Some(obj) = obj {
            eliminate(obj);
        }
        self.basis[r] = col;
    }

    /// After a zero-cost phase 1, pivot remaining artificials out of the
    /// basis or drop their rows when they are linearly dependent.
    fn evict_artificials(&mut self) {
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] < self.first_artificial {
                i += 1;
                continue;
            }
            match (0..self.first_artificial).find(|&j| !self.rows[i][j].is_zero()) {
                Some(j) => {
                    self.pivot(i, j, None);
                    i += 1;
                }
                None => {
                    self.rows.remove(i);
                    self.basis.remove(i);
                }
            }
        }
    }
}
