use alloc::vec::Vec;

use super::relax::{degree_lp, subtour_cut};
use super::separate::separate_subtour;
use super::TspInstance;
use crate::error::{Error, Result};
use crate::lp::{solve_lp, LpOutcome};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Round {
    pub lp_value: Rational,
    /// Rows in the program this round's LP was solved on.
    pub constraints: usize,
    /// Subset whose cut was appended after this round, if any.
    pub cut_added: Option<Vec<usize>>,
    pub cut_value: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct CuttingPlaneTrace {
    pub rounds: Vec<Round>,
    /// False when the round budget ran out with a cut still violated.
    pub complete: bool,
    pub final_value: Rational,
    pub final_point: Vec<Rational>,
    pub integral: bool,
    pub variables: usize,
    pub constraints: usize,
}

impl CuttingPlaneTrace {
    pub fn cuts(&self) -> Vec<Vec<usize>> {
        self.rounds.iter().filter_map(|r| r.cut_added.clone()).collect()
    }
}

/// Degree LP plus one most-violated subtour cut per round, for at most
/// `max_rounds` LP solves.
pub fn cutting_plane_loop(inst: &TspInstance, max_rounds: usize) -> Result<CuttingPlaneTrace> {
    if max_rounds == 0 {
        return Err(Error::invalid("max_rounds must be at least 1"));
    }
    inst.validate()?;
    let mut lp = degree_lp(inst);
    let mut rounds = Vec::new();
    loop {
        let (point, value) = match solve_lp(&lp)? {
            LpOutcome::Optimal { point, value } => (point, value),
            other => {
                return Err(Error::Invalid(alloc::format!(
                    "subtour relaxation ended {:?}",
                    other.status()
                )))
            }
        };
        let constraints = lp.constraints.len();
        let violation = separate_subtour(inst, &point)?;
        let budget_left = rounds.len() + 1 < max_rounds;
        let done = violation.is_none();
        let (cut_added, cut_value) = match violation {
            Some(v) if budget_left => {
                lp.constraints.push(subtour_cut(inst, &v.subset)?);
                (Some(v.subset), Some(v.cut_value))
            }
            _ => (None, None),
        };
        rounds.push(Round { lp_value: value.clone(), constraints, cut_added, cut_value });
        if done || !budget_left {
            let integral = point.iter().all(Rational::is_integer);
            return Ok(CuttingPlaneTrace {
                rounds,
                complete: done,
                final_value: value,
                final_point: point,
                integral,
                variables: lp.num_vars,
                constraints,
            });
        }
    }
}
