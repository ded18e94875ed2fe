//! End-to-end acceptance checks. Each criterion runs under its own time
//! limit and prints one PASS/FAIL line; the test fails if any criterion does.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::{brute_force_tsp, random_lp, random_tsp, vertex_enumeration};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use relaxgap_core::gap::{decide_tour_at_most, integrality_gap, Answer, Relaxation, Via};
use relaxgap_core::hull::{adversarial_objective, gen_arc, subset_gap_scan, Point2};
use relaxgap_core::ilp::tsp_oracle;
use relaxgap_core::space::{factorial, min_symbols_single, min_symbols_subset, monotone_model_demo};
use relaxgap_core::valleys::{check_flow_feasibility, gen_valley_instance, valley_cuts, FlowArc, TspInstance};
use relaxgap_core::{solve_lp, LpOutcome, Rational};

fn valleys(k: usize, c: usize) -> TspInstance {
    gen_valley_instance(k, c, Rational::zero(), Rational::one()).unwrap()
}

fn valley_headline() {
    assert_eq!(tsp_oracle(&valleys(10, 1)).unwrap().cost, Rational::from(10));
    assert_eq!(tsp_oracle(&valleys(4, 1)).unwrap().cost, Rational::from(4));
}

fn fractional_below_integer() {
    let inst = valleys(10, 2);
    let nine = Rational::from(9);
    let report = integrality_gap(&inst, &Relaxation::Degree, std::slice::from_ref(&nine)).unwrap();
    assert_eq!(report.lp_value, Rational::zero());
    assert_eq!(report.ilp_value, Rational::from(10));
    assert!(report.lp_value < report.ilp_value);
    assert_eq!(report.disagreements(), 1);
    let answer = &report.decision_answers[0];
    assert_eq!((answer.lp, answer.ilp, answer.agree), (Answer::Yes, Answer::No, false));
    assert_eq!(decide_tour_at_most(&inst, &nine, &Via::Lp(Relaxation::Degree)).unwrap(), Answer::Yes);
    assert_eq!(decide_tour_at_most(&inst, &nine, &Via::Ilp).unwrap(), Answer::No);
}

/// Three circulations of weight 1/3; circulation `s` skips valley `s` and
/// crosses the other nine in cyclic order, while each skipped valley carries
/// an internal 2-cycle of the same weight.
fn three_circulations(inst: &TspInstance) -> Vec<Vec<(usize, usize)>> {
    let k = inst.valley_count();
    (0..3)
        .map(|skip| {
            let visited: Vec<usize> = (0..k).filter(|&v| v != skip).collect();
            let mut arcs = Vec::new();
            for (i, &v) in visited.iter().enumerate() {
                arcs.push((2 * v, 2 * v + 1));
                arcs.push((2 * v + 1, 2 * visited[(i + 1) % visited.len()]));
            }
            arcs.push((2 * skip, 2 * skip + 1));
            arcs.push((2 * skip + 1, 2 * skip));
            arcs
        })
        .collect()
}

fn circulation_arithmetic() {
    let inst = valleys(10, 2);
    let third = Rational::frac(1, 3);
    let circulations = three_circulations(&inst);
    let mut merged = std::collections::BTreeMap::<(usize, usize), Rational>::new();
    for circ in &circulations {
        let crossings: Vec<_> = circ.iter().filter(|&&(u, v)| inst.valley_of[u] != inst.valley_of[v]).collect();
        assert_eq!(crossings.len(), 9);
        assert!(crossings.iter().all(|&&(u, v)| inst.cost[u][v] == Rational::one()));
        for &arc in circ {
            *merged.entry(arc).or_insert_with(Rational::zero) += &third;
        }
    }
    let arcs: Vec<FlowArc> = merged.into_iter().map(|((from, to), weight)| FlowArc { from, to, weight }).collect();
    let report = check_flow_feasibility(&inst, &arcs, &valley_cuts(&inst)).unwrap();
    assert!(report.degree_ok, "{:?}", report.degree_violations);
    assert_eq!(report.crossing_weight, Rational::from(9));
    assert_eq!(report.crossing_cost, Rational::from(9));
    assert_eq!(report.cost, Rational::from(9));
    // Each skipped valley is left by only two of the three circulations.
    assert_eq!(report.violated_cuts, 3);
}

fn missing_facet_adversary() {
    let poly = gen_arc(64).unwrap();
    assert_eq!(poly.facet_count(), 63);
    let mut cases = 0;
    for j in 0..poly.facet_count() {
        let adv = adversarial_objective(&poly, j).unwrap();
        let gap = adv.gap.expect("bounded when V > 2");
        assert!(gap.is_positive(), "facet {j}");
        cases += 1;
    }
    assert_eq!(cases, 63);

    let small = adversarial_objective(&gen_arc(4).unwrap(), 1).unwrap();
    assert_eq!(small.gap, Some(Rational::one()));
    assert_eq!(small.witness, Some(Point2 { x: Rational::frac(3, 2), y: Rational::frac(21, 2) }));
}

fn budget_scan() {
    let small = subset_gap_scan(&gen_arc(8).unwrap(), 6, 0, 1).unwrap();
    assert!(small.enumerated);
    assert_eq!(small.subsets.len(), 7);
    assert_eq!(small.with_gap, 7);

    let big = subset_gap_scan(&gen_arc(64).unwrap(), 32, 100, 7).unwrap();
    assert!(!big.enumerated);
    assert_eq!(big.subsets.len(), 100);
    assert_eq!(big.with_gap, 100);
    assert!(big.subsets.iter().all(|s| s.exposes_gap()));
}

fn cutting_plane_closure() {
    let inst = valleys(4, 2);
    let report = integrality_gap(&inst, &Relaxation::CuttingPlane { max_rounds: 64 }, &[]).unwrap();
    assert_eq!(report.cutting_plane_complete, Some(true));
    assert_eq!(report.lp_value, Rational::from(4));
    assert_eq!(report.ilp_value, Rational::from(4));

    let trace = relaxgap_core::valleys::cutting_plane_loop(&inst, 64).unwrap();
    assert!(trace.complete);
    assert!(trace.rounds.windows(2).all(|w| w[0].lp_value <= w[1].lp_value));
    assert!(trace.rounds.windows(2).all(|w| w[0].constraints < w[1].constraints));
    assert_eq!(trace.final_value, Rational::from(4));
}

fn solver_oracles() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0007);
    for trial in 0..1000 {
        let lp = random_lp(&mut rng);
        match (solve_lp(&lp).unwrap(), vertex_enumeration(&lp)) {
            (LpOutcome::Optimal { value, .. }, Some(best)) => assert_eq!(value, best, "lp {trial}"),
            (LpOutcome::Infeasible, None) => {}
            (out, reference) => panic!("lp {trial}: {out:?} vs {reference:?}"),
        }
    }
    for trial in 0..200 {
        let n = rng.gen_range(2..=8);
        let inst = random_tsp(&mut rng, n);
        assert_eq!(tsp_oracle(&inst).unwrap().cost, brute_force_tsp(&inst), "tsp {trial}");
    }
}

fn storage_bounds() {
    assert_eq!(min_symbols_single(&(BigUint::from(1u8) << 20u32)).unwrap().min_bits, 20);
    assert_eq!(min_symbols_single(&factorial(10)).unwrap().min_bits, 22);
    assert_eq!(min_symbols_subset(16, 8).unwrap().min_bits, 14);
    let bits: Vec<u64> = (4..=12u32)
        .map(|n| min_symbols_subset(1 << n, 1 << (n - 2)).unwrap().min_bits)
        .collect();
    assert!(bits.windows(2).all(|w| w[1] >= 2 * w[0]), "{bits:?}");
}

fn model_fidelity() {
    let integer = monotone_model_demo(&Rational::zero(), &Rational::from(8), &Rational::one()).unwrap();
    assert!(integer.grid_monotone);
    assert!(integer.witness.is_none());
    let half = monotone_model_demo(&Rational::zero(), &Rational::from(8), &Rational::frac(1, 2)).unwrap();
    assert!(!half.grid_monotone);
    assert_eq!(half.witness, Some((Rational::zero(), Rational::frac(1, 2))));
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn(), Duration); 9] = [
        ("valley headline optima", valley_headline, Duration::from_secs(5)),
        ("fractional relaxation below tour optimum", fractional_below_integer, Duration::from_secs(60)),
        ("three-circulation witness costs 9", circulation_arithmetic, Duration::from_secs(5)),
        ("missing-facet adversary", missing_facet_adversary, Duration::from_secs(5)),
        ("budgeted facet scan", budget_scan, Duration::from_secs(30)),
        ("cutting-plane closure", cutting_plane_closure, Duration::from_secs(30)),
        ("solver oracles", solver_oracles, Duration::from_secs(60)),
        ("storage bounds", storage_bounds, Duration::from_secs(5)),
        ("model fidelity demo", model_fidelity, Duration::from_secs(1)),
    ];
    let mut failed = Vec::new();
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run));
        let elapsed = start.elapsed();
        let verdict = match outcome {
            Ok(()) if elapsed <= *limit => "PASS",
            Ok(()) => "FAIL (time limit)",
            Err(_) => "FAIL",
        };
        println!("criterion {}: {verdict} {name} ({:.2?} of {:?})", i + 1, elapsed, limit);
        if verdict != "PASS" {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
