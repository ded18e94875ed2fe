//! Dispatch from parsed arguments to report documents.

use num_bigint::BigUint;
use relaxgap_core::gap::{decide_tour_at_most, integrality_gap, Answer, DecisionAnswer, Relaxation, Via, DECISION_FORM};
use relaxgap_core::hull::{adversarial_objective, gen_arc, subset_gap_scan};
use relaxgap_core::ilp::{solve_ilp_with_budget, IlpProblem};
use relaxgap_core::space::{factorial, min_symbols_single, min_symbols_subset, monotone_model_demo, subset_growth};
use relaxgap_core::valleys::{check_flow_feasibility, cutting_plane_loop, gen_valley_instance, valley_cuts, TspInstance};
use relaxgap_core::{solve_lp, Error, Rational};
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::*;
use crate::error::CliError;
use crate::files::{load_flow, load_instance, load_program};
use crate::report::{Report, Table, SCHEMA};

type Output = (Value, Option<Table>);

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let (command, (result, table)) = match &cli.command {
        Command::HullAdversary(a) => ("hull-adversary", hull_adversary(a)?),
        Command::HullScan(a) => ("hull-scan", hull_scan(a, cli.seed)?),
        Command::ValleyGap(a) => ("valley-gap", valley_gap(a)?),
        Command::CuttingPlane(a) => ("cutting-plane", cutting_plane(a)?),
        Command::Decide(a) => ("decide", decide(a)?),
        Command::CheckFlow(a) => ("check-flow", check_flow(a)?),
        Command::SpaceBounds(a) => ("space-bounds", space_bounds(a)?),
        Command::ModelDemo(a) => ("model-demo", model_demo(a)?),
        Command::SolveLp(a) => ("solve-lp", solve(a)?),
    };
    Ok(Report { schema: SCHEMA, command, config: to_value(cli), result, table })
}

fn hull_adversary(a: &HullAdversaryArgs) -> Result<Output, CliError> {
    let poly = gen_arc(a.vertices)?;
    let adv = adversarial_objective(&poly, a.omit)?;
    let mut result = to_value(&adv);
    result["facet_count"] = json!(poly.facet_count());
    Ok((result, None))
}

fn hull_scan(a: &HullScanArgs, seed: u64) -> Result<Output, CliError> {
    let poly = gen_arc(a.vertices)?;
    let scan = subset_gap_scan(&poly, a.budget, a.samples, seed)?;
    let records: Vec<Value> = scan
        .subsets
        .iter()
        .map(|s| {
            json!({
                "id": s.id,
                "omitted": s.omitted.iter().map(usize::to_string).collect::<Vec<_>>().join(" "),
                "worst_gap": s.worst_gap,
                "worst_facet": s.worst_facet,
                "any_unbounded": s.any_unbounded,
                "exposes_gap": s.exposes_gap(),
            })
        })
        .collect();
    Ok((to_value(&scan), Some(Table::from_records(&records))))
}

fn instance(a: &InstanceArgs) -> Result<TspInstance, CliError> {
    if let Some(path) = &a.instance {
        return load_instance(path);
    }
    let (Some(k), Some(c)) = (a.valleys, a.cities_per_valley) else {
        return Err(Error::invalid("either --instance or --valleys with --cities-per-valley is required").into());
    };
    let intra = a.intra_cost.clone().unwrap_or_else(Rational::zero);
    let crossing = a.crossing_cost.clone().unwrap_or_else(Rational::one);
    Ok(gen_valley_instance(k, c, intra, crossing)?)
}

fn relaxation(kind: RelaxationKind, rounds: usize, inst: &TspInstance) -> Relaxation {
    match kind {
        RelaxationKind::Degree => Relaxation::Degree,
        RelaxationKind::ValleyCuts => Relaxation::DegreeWithCuts(valley_cuts(inst)),
        RelaxationKind::CuttingPlane => Relaxation::CuttingPlane { max_rounds: rounds },
    }
}

fn answer(yes: bool) -> Answer {
    if yes { Answer::Yes } else { Answer::No }
}

fn valley_gap(a: &ValleyGapArgs) -> Result<Output, CliError> {
    let inst = instance(&a.instance)?;
    let relax = relaxation(a.relaxation, a.rounds, &inst);
    let mut report = integrality_gap(&inst, &relax, &a.thresholds)?;
    if a.thresholds.is_empty() {
        let x = &report.ilp_value - Rational::one();
        let lp = answer(report.lp_value <= x);
        let ilp = answer(report.ilp_value <= x);
        report.decision_answers.push(DecisionAnswer::new(x, lp, ilp));
    }
    let table = Table::from_records(&report.decision_answers.iter().map(to_value).collect::<Vec<_>>());
    let mut result = to_value(&report);
    result["disagreements"] = json!(report.disagreements());
    Ok((result, Some(table)))
}

fn cutting_plane(a: &CuttingPlaneArgs) -> Result<Output, CliError> {
    let inst = instance(&a.instance)?;
    let trace = cutting_plane_loop(&inst, a.rounds)?;
    let records: Vec<Value> = trace
        .rounds
        .iter()
        .enumerate()
        .map(|(i, r)| {
            json!({
                "round": i,
                "lp_value": r.lp_value,
                "constraints": r.constraints,
                "cut_added": r.cut_added.as_ref().map(|s| s.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")),
                "cut_value": r.cut_value,
            })
        })
        .collect();
    let mut result = to_value(&trace);
    result["instance"] = json!(inst.describe());
    Ok((result, Some(Table::from_records(&records))))
}

fn decide(a: &DecideArgs) -> Result<Output, CliError> {
    let inst = instance(&a.instance)?;
    let via = match a.via {
        ViaKind::Lp => Via::Lp(relaxation(a.relaxation, a.rounds, &inst)),
        ViaKind::Ilp => Via::Ilp,
    };
    let ans = decide_tour_at_most(&inst, &a.threshold, &via)?;
    let method = match &via {
        Via::Lp(r) => format!("lp:{}", r.describe()),
        Via::Ilp => "ilp".to_string(),
    };
    let result = json!({
        "instance": inst.describe(),
        "decision_form": DECISION_FORM,
        "threshold": a.threshold,
        "via": method,
        "answer": ans,
    });
    Ok((result, None))
}

fn check_flow(a: &CheckFlowArgs) -> Result<Output, CliError> {
    let inst = instance(&a.instance)?;
    let arcs = load_flow(&a.flow)?;
    let mut cuts: Vec<Vec<usize>> = a.cuts.iter().map(|s| s.0.clone()).collect();
    if a.valley_cuts {
        cuts.extend(valley_cuts(&inst));
    }
    let report = check_flow_feasibility(&inst, &arcs, &cuts)?;
    let mut result = to_value(&report);
    result["instance"] = json!(inst.describe());
    result["arc_count"] = json!(arcs.len());
    Ok((result, None))
}

/// Integer, `a^b`, or `n!`.
pub fn parse_count(s: &str) -> Result<BigUint, Error> {
    let bad = || Error::Invalid(format!("cannot read count {s:?}"));
    let s = s.trim();
    if let Some(n) = s.strip_suffix('!') {
        return Ok(factorial(n.trim().parse().map_err(|_| bad())?));
    }
    if let Some((base, exp)) = s.split_once('^') {
        let base: BigUint = base.trim().parse().map_err(|_| bad())?;
        let exp: usize = exp.trim().parse().map_err(|_| bad())?;
        return Ok(num_traits::pow(base, exp));
    }
    s.parse().map_err(|_| bad())
}

fn space_bounds(a: &SpaceBoundsArgs) -> Result<Output, CliError> {
    match a.mode {
        SpaceMode::Single => {
            let count = parse_count(a.count.as_deref().unwrap_or_default())?;
            let b = min_symbols_single(&count)?;
            let mut result = to_value(&b);
            result["bracket_holds"] = json!(b.bracket_holds());
            Ok((result, None))
        }
        SpaceMode::Subset => {
            let (Some(n), Some(m)) = (a.universe, a.subset) else {
                return Err(Error::invalid("--universe and --subset are required").into());
            };
            let b = min_symbols_subset(n, m)?;
            let mut result = to_value(&b);
            result["bracket_holds"] = json!(b.bracket_holds());
            Ok((result, None))
        }
        SpaceMode::Growth => {
            if a.from > a.to {
                return Err(Error::invalid("--from must not exceed --to").into());
            }
            let rows = subset_growth(a.from..=a.to, a.divisor)?;
            let doubles = rows.windows(2).all(|w| w[1].min_bits >= 2 * w[0].min_bits);
            let records: Vec<Value> = rows.iter().map(to_value).collect();
            let result = json!({ "rows": records, "doubles_each_step": doubles });
            Ok((result, Some(Table::from_records(&records))))
        }
    }
}

fn model_demo(a: &ModelDemoArgs) -> Result<Output, CliError> {
    let demo = monotone_model_demo(&a.start, &a.end, &a.step)?;
    let records: Vec<Value> = demo
        .grid
        .iter()
        .zip(&demo.values)
        .map(|(x, v)| json!({ "x": x, "lo": v.lo, "hi": v.hi, "exact": v.exact }))
        .collect();
    Ok((to_value(&demo), Some(Table::from_records(&records))))
}

fn solve(a: &SolveLpArgs) -> Result<Output, CliError> {
    let lp = load_program(&a.program)?;
    let integer = if a.integer_all { (0..lp.num_vars).collect() } else { a.integer.clone() };
    let outcome = if integer.is_empty() {
        solve_lp(&lp)?
    } else {
        solve_ilp_with_budget(&IlpProblem::new(lp, integer)?, a.max_nodes)?
    };
    Ok((to_value(&outcome), None))
}
