//! Integer solvers: LP-based branch-and-bound and exact TSP oracles.

mod tsp;

pub use tsp::{
    tsp_exhaustive, tsp_held_karp, tsp_oracle, OracleMethod, TspTour, EXHAUSTIVE_LIMIT,
    HELD_KARP_LIMIT,
};

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::lp::{solve_lp, LinearProgram, LpOutcome};
use crate::rational::Rational;

/// Node limit used by [`solve_ilp`].
pub const DEFAULT_NODE_BUDGET: usize = 100_000;

/// A linear program with integrality demanded on some variables.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct IlpProblem {
    pub base: LinearProgram,
    pub integer_vars: Vec<usize>,
}

impl IlpProblem {
    pub fn new(base: LinearProgram, mut integer_vars: Vec<usize>) -> Result<Self> {
        integer_vars.sort_unstable();
        integer_vars.dedup();
        let p = IlpProblem { base, integer_vars };
        p.validate()?;
        Ok(p)
    }

    /// Every variable integral.
    pub fn all_integer(base: LinearProgram) -> Self {
        let integer_vars = (0..base.num_vars).collect();
        IlpProblem { base, integer_vars }
    }

    pub fn validate(&self) -> Result<()> {
        self.base.validate()?;
        if let Some(&v) = self.integer_vars.iter().find(|&&v| v >= self.base.num_vars) {
            return Err(Error::Invalid(format!("integer variable {v} out of range")));
        }
        Ok(())
    }
}

pub fn solve_ilp(problem: &IlpProblem) -> Result<LpOutcome> {
    solve_ilp_with_budget(problem, DEFAULT_NODE_BUDGET)
}

/// Depth-first branch-and-bound. Branches on the integer variable with the
/// largest fractional part (lowest index on ties), down branch first.
///
/// An unbounded root relaxation is reported as unbounded: with rational
/// data the integer program is then either infeasible or unbounded.
/// Exceeding `max_nodes` LP solves returns [`Error::BudgetExhausted`].
pub fn solve_ilp_with_budget(problem: &IlpProblem, max_nodes: usize) -> Result<LpOutcome> {
    problem.validate()?;
    let base = &problem.base;
    let mut stack: Vec<(Vec<Rational>, Vec<Option<Rational>>)> =
        alloc::vec![(base.lower.clone(), base.upper.clone())];
    let mut incumbent: Option<(Vec<Rational>, Rational)> = None;
    let mut nodes = 0usize;

    while let Some((lower, upper)) = stack.pop() {
        if lower.iter().zip(&upper).any(|(l, u)| u.as_ref().is_some_and(|u| u < l)) {
            continue;
        }
        nodes += 1;
        if nodes > max_nodes {
            return Err(Error::BudgetExhausted(format!(
                "branch-and-bound exceeded {max_nodes} nodes"
            )));
        }
        let mut lp = base.clone();
        lp.lower = lower;
        lp.upper = upper;
        let (point, value) = match solve_lp(&lp)? {
            LpOutcome::Optimal { point, value } => (point, value),
            LpOutcome::Infeasible => continue,
            LpOutcome::Unbounded => {
                if nodes == 1 {
                    return Ok(LpOutcome::Unbounded);
                }
                continue;
            }
        };
        if let Some((_, best)) = &incumbent {
            if !base.better(&value, best) {
                continue;
            }
        }
        let branch = problem
            .integer_vars
            .iter()
            .map(|&v| (v, point[v].fract_part()))
            .filter(|(_, f)| !f.is_zero())
            .fold(None::<(usize, Rational)>, |best, (v, f)| match best {
                Some((_, ref bf)) if &f <= bf => best,
                _ => Some((v, f)),
            });
        let Some((var, _)) = branch else {
            incumbent = Some((point, value));
            continue;
        };
        let x = &point[var];
        let mut up = (lp.lower.clone(), lp.upper.clone());
        up.0[var] = x.ceil().max(up.0[var].clone());
        let mut down = (lp.lower, lp.upper);
        let floor = x.floor();
        down.1[var] = Some(match down.1[var].take() {
            Some(u) if u < floor => u,
            _ => floor,
        });
        stack.push(up);
        stack.push(down);
    }
    Ok(match incumbent {
        Some((point, value)) => LpOutcome::Optimal { point, value },
        None => LpOutcome::Infeasible,
    })
}
