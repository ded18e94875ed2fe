//! Valley/mountain TSP instances.
//!
//! Cities are grouped into `k` valleys of `c` cities each. Travel inside a
//! valley costs `intra_cost`, crossing between valleys costs
//! `crossing_cost`. With a zero intra cost every tour pays exactly `k`
//! crossings, while fractional flows can circulate inside valleys for free.

mod cutting;
mod flow;
mod relax;
mod separate;

pub use cutting::{cutting_plane_loop, CuttingPlaneTrace, Round};
pub use flow::{
    check_flow_feasibility, internal_cycles_flow, tour_flow, CutCheck, DegreeViolation, FlowArc,
    FlowReport, FlowSolution,
};
pub use relax::{arc_index, arc_of, degree_lp, flow_from_point, subtour_cut, valley_cuts};
pub use separate::{cut_value, separate_subtour, SubtourViolation};

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Parameters a valley instance was generated from.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ValleyParams {
    pub valleys: usize,
    pub cities_per_valley: usize,
    pub intra_cost: Rational,
    pub crossing_cost: Rational,
}

/// Directed TSP instance. `cost[i][j]` is the price of arc `i -> j`; the
/// diagonal is ignored.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TspInstance {
    pub n: usize,
    pub valley_of: Vec<usize>,
    pub cost: Vec<Vec<Rational>>,
    pub params: Option<ValleyParams>,
}

impl TspInstance {
    /// Instance from an explicit cost matrix. Cities with the same entry in
    /// `valley_of` share a valley.
    pub fn from_matrix(cost: Vec<Vec<Rational>>, valley_of: Vec<usize>) -> Result<Self> {
        let inst = TspInstance { n: cost.len(), valley_of, cost, params: None };
        inst.validate()?;
        Ok(inst)
    }

    /// Every city in its own valley.
    pub fn from_costs(cost: Vec<Vec<Rational>>) -> Result<Self> {
        let valley_of = (0..cost.len()).collect();
        Self::from_matrix(cost, valley_of)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::invalid("a TSP instance needs at least two cities"));
        }
        if self.cost.len() != self.n || self.cost.iter().any(|row| row.len() != self.n) {
            return Err(Error::invalid("cost matrix must be n x n"));
        }
        if self.valley_of.len() != self.n {
            return Err(Error::invalid("valley assignment must list every city"));
        }
        if let Some(p) = &self.params {
            check_params(p.valleys, p.cities_per_valley, &p.intra_cost, &p.crossing_cost)?;
            if p.valleys * p.cities_per_valley != self.n {
                return Err(Error::invalid("valleys * cities_per_valley must equal n"));
            }
            for i in 0..self.n {
                if self.valley_of[i] != i / p.cities_per_valley {
                    return Err(Error::invalid("valley assignment is not valley-major"));
                }
                for j in (0..self.n).filter(|&j| j != i) {
                    let expected = if self.valley_of[i] == self.valley_of[j] {
                        &p.intra_cost
                    } else {
                        &p.crossing_cost
                    };
                    if &self.cost[i][j] != expected {
                        return Err(Error::Invalid(format!(
                            "cost({i},{j}) disagrees with the valley parameters"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn cost(&self, from: usize, to: usize) -> &Rational {
        &self.cost[from][to]
    }

    pub fn valley_count(&self) -> usize {
        self.valley_of.iter().max().map_or(0, |m| m + 1)
    }

    /// Cities of valley `v`, ascending.
    pub fn valley(&self, v: usize) -> Vec<usize> {
        (0..self.n).filter(|&i| self.valley_of[i] == v).collect()
    }

    /// Cost of the closed tour visiting `order` and returning to its start.
    pub fn tour_cost(&self, order: &[usize]) -> Rational {
        let mut total = Rational::zero();
        for (idx, &from) in order.iter().enumerate() {
            let to = order[(idx + 1) % order.len()];
            total += self.cost(from, to);
        }
        total
    }

    /// True when `order` visits each city exactly once.
    pub fn is_tour(&self, order: &[usize]) -> bool {
        if order.len() != self.n {
            return false;
        }
        let mut seen = vec![false; self.n];
        for &c in order {
            if c >= self.n || seen[c] {
                return false;
            }
            seen[c] = true;
        }
        true
    }

    pub fn describe(&self) -> alloc::string::String {
        match &self.params {
            Some(p) => format!(
                "valleys k={} c={} eps={} M={}",
                p.valleys, p.cities_per_valley, p.intra_cost, p.crossing_cost
            ),
            None => format!("matrix n={}", self.n),
        }
    }
}

fn check_params(k: usize, c: usize, eps: &Rational, m: &Rational) -> Result<()> {
    if k < 2 {
        return Err(Error::invalid("need at least two valleys"));
    }
    if c < 1 {
        return Err(Error::invalid("need at least one city per valley"));
    }
    if eps.is_negative() {
        return Err(Error::invalid("intra-valley cost must be nonnegative"));
    }
    if m <= eps {
        return Err(Error::invalid("crossing cost must exceed intra-valley cost"));
    }
    Ok(())
}

/// Generates `k` valleys of `c` cities, numbered valley-major.
pub fn gen_valley_instance(
    k: usize,
    c: usize,
    intra_cost: Rational,
    crossing_cost: Rational,
) -> Result<TspInstance> {
    check_params(k, c, &intra_cost, &crossing_cost)?;
    let n = k.checked_mul(c).ok_or_else(|| Error::invalid("instance too large"))?;
    let valley_of: Vec<usize> = (0..n).map(|i| i / c).collect();
    let cost = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Rational::zero()
                    } else if valley_of[i] == valley_of[j] {
                        intra_cost.clone()
                    } else {
                        crossing_cost.clone()
                    }
                })
                .collect()
        })
        .collect();
    Ok(TspInstance {
        n,
        valley_of,
        cost,
        params: Some(ValleyParams { valleys: k, cities_per_valley: c, intra_cost, crossing_cost }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_valleys_of_two() {
        let inst = gen_valley_instance(4, 2, Rational::zero(), Rational::one()).unwrap();
        assert_eq!(inst.n, 8);
        let (mut intra, mut inter) = (0, 0);
        for i in 0..8 {
            for j in (0..8).filter(|&j| j != i) {
                if inst.cost(i, j).is_zero() {
                    intra += 1;
                } else {
                    assert_eq!(inst.cost(i, j), &Rational::one());
                    inter += 1;
                }
            }
        }
        assert_eq!((intra, inter), (8, 48));
        assert_eq!(inst.valley(3), [6, 7]);
        inst.validate().unwrap();
    }

    #[test]
    fn singleton_valleys_are_uniform() {
        let inst = gen_valley_instance(10, 1, Rational::zero(), Rational::one()).unwrap();
        assert_eq!(inst.n, 10);
        assert!((0..10).all(|i| (0..10).filter(|&j| j != i).all(|j| inst.cost(i, j) == &Rational::one())));
    }

    #[test]
    fn rejects_bad_parameters() {
        let z = Rational::zero;
        let one = Rational::one;
        assert!(gen_valley_instance(1, 2, z(), one()).is_err());
        assert!(gen_valley_instance(2, 0, z(), one()).is_err());
        assert!(gen_valley_instance(2, 2, one(), one()).is_err());
        assert!(gen_valley_instance(2, 2, Rational::from(-1), one()).is_err());
    }

    #[test]
    fn tampered_matrix_fails_validation() {
        let mut inst = gen_valley_instance(3, 2, Rational::zero(), Rational::one()).unwrap();
        inst.cost[0][5] = Rational::from(7);
        assert!(inst.validate().is_err());
        inst.params = None;
        inst.validate().unwrap();
    }
}
