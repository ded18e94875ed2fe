//! Hand-encoded fractional flows and their exact audit.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::relax::subset_mask;
use super::TspInstance;
use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FlowArc {
    pub from: usize,
    pub to: usize,
    pub weight: Rational,
}

/// Validated arc-weight assignment with its exact cost.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct FlowSolution {
    pub arcs: Vec<FlowArc>,
    pub total_cost: Rational,
}

impl FlowSolution {
    pub fn new(inst: &TspInstance, arcs: Vec<FlowArc>) -> Result<Self> {
        validate_arcs(inst, &arcs)?;
        let total_cost = arcs.iter().map(|a| &a.weight * inst.cost(a.from, a.to)).sum();
        Ok(FlowSolution { arcs, total_cost })
    }
}

fn validate_arcs(inst: &TspInstance, arcs: &[FlowArc]) -> Result<()> {
    let n = inst.n;
    let mut seen = vec![false; n * n];
    for a in arcs {
        if a.from >= n || a.to >= n {
            return Err(Error::Invalid(format!("arc {} -> {} names a missing city", a.from, a.to)));
        }
        if a.from == a.to {
            return Err(Error::Invalid(format!("self-loop at city {}", a.from)));
        }
        if a.weight.is_negative() || a.weight > Rational::one() {
            return Err(Error::Invalid(format!(
                "arc {} -> {} weight {} outside [0, 1]",
                a.from, a.to, a.weight
            )));
        }
        let key = a.from * n + a.to;
        if seen[key] {
            return Err(Error::Invalid(format!("arc {} -> {} listed twice", a.from, a.to)));
        }
        seen[key] = true;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct DegreeViolation {
    pub city: usize,
    pub out_flow: Rational,
    pub in_flow: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct CutCheck {
    pub subset: Vec<usize>,
    pub value: Rational,
    pub violated: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct FlowReport {
    pub degree_ok: bool,
    pub degree_violations: Vec<DegreeViolation>,
    pub cuts: Vec<CutCheck>,
    pub violated_cuts: usize,
    pub cost: Rational,
    /// Cost carried by arcs between different valleys.
    pub crossing_cost: Rational,
    pub crossing_weight: Rational,
}

/// Audits `arcs` against the degree equations and each listed cut subset.
pub fn check_flow_feasibility(
    inst: &TspInstance,
    arcs: &[FlowArc],
    cut_subsets: &[Vec<usize>],
) -> Result<FlowReport> {
    validate_arcs(inst, arcs)?;
    let n = inst.n;
    let masks = cut_subsets
        .iter()
        .map(|s| subset_mask(n, s))
        .collect::<Result<Vec<_>>>()?;

    let mut out_flow = vec![Rational::zero(); n];
    let mut in_flow = vec![Rational::zero(); n];
    let mut cost = Rational::zero();
    let mut crossing_cost = Rational::zero();
    let mut crossing_weight = Rational::zero();
    for a in arcs {
        out_flow[a.from] += &a.weight;
        in_flow[a.to] += &a.weight;
        let c = &a.weight * inst.cost(a.from, a.to);
        if inst.valley_of[a.from] != inst.valley_of[a.to] {
            crossing_cost += &c;
            crossing_weight += &a.weight;
        }
        cost += c;
    }
    let one = Rational::one();
    let degree_violations: Vec<DegreeViolation> = (0..n)
        .filter(|&c| out_flow[c] != one || in_flow[c] != one)
        .map(|c| DegreeViolation { city: c, out_flow: out_flow[c].clone(), in_flow: in_flow[c].clone() })
        .collect();

    let cuts: Vec<CutCheck> = cut_subsets
        .iter()
        .zip(&masks)
        .map(|(subset, mask)| {
            let value: Rational = arcs
                .iter()
                .filter(|a| mask[a.from] && !mask[a.to])
                .map(|a| a.weight.clone())
                .sum();
            let mut subset = subset.clone();
            subset.sort_unstable();
            CutCheck { subset, violated: value < one, value }
        })
        .collect();

    Ok(FlowReport {
        degree_ok: degree_violations.is_empty(),
        degree_violations,
        violated_cuts: cuts.iter().filter(|c| c.violated).count(),
        cuts,
        cost,
        crossing_cost,
        crossing_weight,
    })
}

/// Unit flow along the closed tour `order`.
pub fn tour_flow(order: &[usize]) -> Vec<FlowArc> {
    (0..order.len())
        .map(|i| FlowArc { from: order[i], to: order[(i + 1) % order.len()], weight: Rational::one() })
        .collect()
}

/// Each valley circulates internally at weight 1: degree-feasible and free
/// when the intra cost is zero, yet it violates every valley cut.
pub fn internal_cycles_flow(inst: &TspInstance) -> Result<Vec<FlowArc>> {
    let mut arcs = Vec::new();
    for v in 0..inst.valley_count() {
        let cities = inst.valley(v);
        if cities.len() < 2 {
            return Err(Error::Invalid(format!("valley {v} has fewer than two cities")));
        }
        arcs.extend(tour_flow(&cities));
    }
    Ok(arcs)
}
