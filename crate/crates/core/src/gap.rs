//! LP-versus-ILP comparisons on TSP instances.
//!
//! A [`GapReport`] puts a relaxation's optimum next to the true tour optimum,
//! records the model size that produced it, and replays the decision
//! question "is there a tour of cost at most X" through both.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::ilp::{tsp_oracle, OracleMethod};
use crate::lp::{solve_lp, LpOutcome};
use crate::rational::Rational;
use crate::valleys::{cutting_plane_loop, degree_lp, subtour_cut, TspInstance};

/// Decision form used throughout: YES iff some tour costs at most X.
pub const DECISION_FORM: &str = "tour cost <= X";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Relaxation {
    Degree,
    DegreeWithCuts(Vec<Vec<usize>>),
    CuttingPlane { max_rounds: usize },
}

impl Relaxation {
    pub fn describe(&self) -> String {
        match self {
            Relaxation::Degree => "degree".into(),
            Relaxation::DegreeWithCuts(cuts) => format!("degree+cuts({})", cuts.len()),
            Relaxation::CuttingPlane { max_rounds } => format!("cutting-plane(max_rounds={max_rounds})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "UPPERCASE"))]
pub enum Answer {
    Yes,
    No,
}

impl Answer {
    fn from_bool(yes: bool) -> Self {
        if yes { Answer::Yes } else { Answer::No }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Via {
    Lp(Relaxation),
    Ilp,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct DecisionAnswer {
    pub threshold: Rational,
    pub lp: Answer,
    pub ilp: Answer,
    /// False exactly when the relaxation says YES and the truth is NO.
    pub agree: bool,
}

impl DecisionAnswer {
    pub fn new(threshold: Rational, lp: Answer, ilp: Answer) -> Self {
        let agree = !(lp == Answer::Yes && ilp == Answer::No);
        DecisionAnswer { threshold, lp, ilp, agree }
    }
}

/// `ilp / lp`, or a flag when the LP value is not positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GapRatio {
    Value(Rational),
    Undefined,
}

#[cfg(feature = "serde")]
impl serde::Serialize for GapRatio {
    fn serialize<S: serde::Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        match self {
            GapRatio::Value(v) => v.serialize(s),
            GapRatio::Undefined => s.serialize_str("undefined"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct GapReport {
    pub instance: String,
    pub cities: usize,
    pub relaxation: String,
    pub cuts: Vec<Vec<usize>>,
    pub lp_value: Rational,
    pub ilp_value: Rational,
    pub optimal_tour: Vec<usize>,
    pub oracle: OracleMethod,
    pub gap: Rational,
    pub gap_ratio: GapRatio,
    pub constraints_used: usize,
    pub variables_used: usize,
    /// LP solves made by the cutting-plane loop; absent for static models.
    pub rounds: Option<usize>,
    pub cutting_plane_complete: Option<bool>,
    pub decision_form: &'static str,
    pub decision_answers: Vec<DecisionAnswer>,
}

impl GapReport {
    pub fn disagreements(&self) -> usize {
        self.decision_answers.iter().filter(|d| !d.agree).count()
    }
}

struct RelaxedValue {
    value: Rational,
    cuts: Vec<Vec<usize>>,
    constraints: usize,
    variables: usize,
    rounds: Option<usize>,
    complete: Option<bool>,
}

fn relaxed_value(inst: &TspInstance, relaxation: &Relaxation) -> Result<RelaxedValue> {
    inst.validate()?;
    match relaxation {
        Relaxation::Degree | Relaxation::DegreeWithCuts(_) => {
            let cuts = match relaxation {
                Relaxation::DegreeWithCuts(c) => c.clone(),
                _ => Vec::new(),
            };
            let mut lp = degree_lp(inst);
            for s in &cuts {
                lp.constraints.push(subtour_cut(inst, s)?);
            }
            match solve_lp(&lp)? {
                LpOutcome::Optimal { value, .. } => Ok(RelaxedValue {
                    value,
                    cuts,
                    constraints: lp.constraints.len(),
                    variables: lp.num_vars,
                    rounds: None,
                    complete: None,
                }),
                other => Err(Error::Invalid(format!("relaxation ended {:?}", other.status()))),
            }
        }
        Relaxation::CuttingPlane { max_rounds } => {
            let trace = cutting_plane_loop(inst, *max_rounds)?;
            Ok(RelaxedValue {
                value: trace.final_value.clone(),
                cuts: trace.cuts(),
                constraints: trace.constraints,
                variables: trace.variables,
                rounds: Some(trace.rounds.len()),
                complete: Some(trace.complete),
            })
        }
    }
}

/// Solves `relaxation` and the exact oracle on `inst`, and answers the
/// decision question at each threshold both ways.
pub fn integrality_gap(inst: &TspInstance, relaxation: &Relaxation, thresholds: &[Rational]) -> Result<GapReport> {
    let relaxed = relaxed_value(inst, relaxation)?;
    let oracle = tsp_oracle(inst)?;
    let gap = &oracle.cost - &relaxed.value;
    debug_assert!(!gap.is_negative(), "relaxation exceeded the tour optimum");
    let gap_ratio = if relaxed.value.is_positive() {
        GapRatio::Value(&oracle.cost / &relaxed.value)
    } else {
        GapRatio::Undefined
    };
    let decision_answers = thresholds
        .iter()
        .map(|x| {
            DecisionAnswer::new(
                x.clone(),
                Answer::from_bool(&relaxed.value <= x),
                Answer::from_bool(&oracle.cost <= x),
            )
        })
        .collect();
    Ok(GapReport {
        instance: inst.describe(),
        cities: inst.n,
        relaxation: relaxation.describe(),
        cuts: relaxed.cuts,
        lp_value: relaxed.value,
        ilp_value: oracle.cost,
        optimal_tour: oracle.tour,
        oracle: oracle.method,
        gap,
        gap_ratio,
        constraints_used: relaxed.constraints,
        variables_used: relaxed.variables,
        rounds: relaxed.rounds,
        cutting_plane_complete: relaxed.complete,
        decision_form: DECISION_FORM,
        decision_answers,
    })
}

/// Answers "is there a tour of cost at most `threshold`". The LP route
/// answers YES iff the relaxation value is at most the threshold, which can
/// be wrong; the ILP route is exact.
pub fn decide_tour_at_most(inst: &TspInstance, threshold: &Rational, via: &Via) -> Result<Answer> {
    let value = match via {
        Via::Ilp => tsp_oracle(inst)?.cost,
        Via::Lp(relaxation) => relaxed_value(inst, relaxation)?.value,
    };
    Ok(Answer::from_bool(&value <= threshold))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::valleys::{gen_valley_instance, valley_cuts};

    fn valleys(k: usize, c: usize) -> TspInstance {
        gen_valley_instance(k, c, Rational::zero(), Rational::one()).unwrap()
    }

    #[test]
    fn four_valleys_with_all_cuts_is_tight() {
        let inst = valleys(4, 2);
        let report = integrality_gap(&inst, &Relaxation::DegreeWithCuts(valley_cuts(&inst)), &[]).unwrap();
        assert_eq!(report.lp_value, Rational::from(4));
        assert_eq!(report.ilp_value, Rational::from(4));
        assert!(report.gap.is_zero());
        assert_eq!(report.gap_ratio, GapRatio::Value(Rational::one()));
        assert_eq!(report.constraints_used, 20);
        assert_eq!(report.variables_used, 56);
    }

    #[test]
    fn singleton_valleys_have_no_gap() {
        let report = integrality_gap(&valleys(4, 1), &Relaxation::Degree, &[]).unwrap();
        assert_eq!((report.lp_value.clone(), report.ilp_value.clone()), (Rational::from(4), Rational::from(4)));
    }

    #[test]
    fn ratio_flagged_when_lp_is_zero() {
        for k in 2..=4 {
            let report = integrality_gap(&valleys(k, 2), &Relaxation::Degree, &[]).unwrap();
            assert!(report.lp_value.is_zero());
            assert_eq!(report.ilp_value, Rational::from(k as i64));
            assert_eq!(report.gap_ratio, GapRatio::Undefined);
        }
    }

    #[test]
    fn disagreement_is_one_way() {
        let inst = valleys(4, 2);
        let xs: Vec<Rational> = (-1..6).map(Rational::from).collect();
        let report = integrality_gap(&inst, &Relaxation::Degree, &xs).unwrap();
        for d in &report.decision_answers {
            if d.lp == Answer::No {
                assert_eq!(d.ilp, Answer::No);
            }
            assert_eq!(d.agree, !(d.lp == Answer::Yes && d.ilp == Answer::No));
        }
        // X = 0, 1, 2, 3 are phantom YES answers.
        assert_eq!(report.disagreements(), 4);
    }

    #[test]
    fn decision_examples() {
        let inst = valleys(10, 1);
        assert_eq!(decide_tour_at_most(&inst, &Rational::from(10), &Via::Ilp).unwrap(), Answer::Yes);
        assert_eq!(decide_tour_at_most(&inst, &Rational::from(9), &Via::Ilp).unwrap(), Answer::No);
    }

    #[test]
    fn cutting_plane_relaxation_reports_rounds() {
        let report = integrality_gap(&valleys(4, 2), &Relaxation::CuttingPlane { max_rounds: 50 }, &[]).unwrap();
        assert!(report.gap.is_zero());
        assert_eq!(report.cutting_plane_complete, Some(true));
        let rounds = report.rounds.unwrap();
        assert_eq!(report.cuts.len() + 1, rounds);
        assert_eq!(report.constraints_used, 16 + report.cuts.len());
    }
}
