//! Reference oracles shared by the integration tests. None of these call
//! into the solvers they are used to check.
#![allow(dead_code)]

use itertools::Itertools;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use relaxgap_core::lp::Constraint;
use relaxgap_core::valleys::TspInstance;
use relaxgap_core::{LinearProgram, Rational, Relation, Sense};

/// Solves a square system by Gauss-Jordan elimination; `None` if singular.
pub fn solve_square(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        let inv = a[col][col].recip().unwrap();
        for v in a[col].iter_mut() {
            *v = &*v * &inv;
        }
        b[col] = &b[col] * &inv;
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (v, p) in a[r].iter_mut().zip(&pivot_row) {
                    *v = &*v - &(&f * p);
                }
                b[r] = &b[r] - &(&f * &b[col]);
            }
        }
    }
    Some(b)
}

fn feasible(lp: &LinearProgram, x: &[Rational]) -> bool {
    lp.constraints.iter().all(|c| c.is_satisfied(x))
        && x.iter().zip(&lp.lower).all(|(v, l)| v >= l)
        && x.iter().zip(&lp.upper).all(|(v, u)| u.as_ref().is_none_or(|u| v <= u))
}

/// Best objective over all basic points: every choice of `num_vars`
/// hyperplanes from the rows and bounds, intersected and filtered for
/// feasibility. Only meaningful when the feasible region is bounded.
pub fn vertex_enumeration(lp: &LinearProgram) -> Option<Rational> {
    let n = lp.num_vars;
    let mut planes: Vec<(Vec<Rational>, Rational)> =
        lp.constraints.iter().map(|c| (c.coeffs.clone(), c.rhs.clone())).collect();
    for j in 0..n {
        let mut e = vec![Rational::zero(); n];
        e[j] = Rational::one();
        planes.push((e.clone(), lp.lower[j].clone()));
        if let Some(u) = &lp.upper[j] {
            planes.push((e, u.clone()));
        }
    }
    let mut best: Option<Rational> = None;
    for combo in (0..planes.len()).combinations(n) {
        let a = combo.iter().map(|&i| planes[i].0.clone()).collect();
        let b = combo.iter().map(|&i| planes[i].1.clone()).collect();
        let Some(x) = solve_square(a, b) else { continue };
        if !feasible(lp, &x) {
            continue;
        }
        let v = lp.evaluate(&x);
        let better = match (&best, lp.sense) {
            (None, _) => true,
            (Some(b), Sense::Maximize) => &v > b,
            (Some(b), Sense::Minimize) => &v < b,
        };
        if better {
            best = Some(v);
        }
    }
    best
}

pub fn small_rational(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> Rational {
    let q = rng.gen_range(1..=3);
    Rational::frac(rng.gen_range(lo * q..=hi * q), q)
}

/// Random bounded program with up to 3 variables and 6 rows.
pub fn random_lp(rng: &mut ChaCha8Rng) -> LinearProgram {
    let n = rng.gen_range(1..=3);
    let sense = if rng.gen_bool(0.5) { Sense::Maximize } else { Sense::Minimize };
    let objective = (0..n).map(|_| small_rational(rng, -5, 5)).collect();
    let mut lp = LinearProgram::new(n, sense, objective).unwrap();
    for _ in 0..rng.gen_range(0..=6) {
        let coeffs = (0..n).map(|_| small_rational(rng, -4, 4)).collect();
        let relation = match rng.gen_range(0..10) {
            0..=4 => Relation::Le,
            5..=8 => Relation::Ge,
            _ => Relation::Eq,
        };
        lp.constraints.push(Constraint::new(coeffs, relation, small_rational(rng, -6, 12)));
    }
    for j in 0..n {
        let lower = small_rational(rng, -2, 2);
        let upper = &lower + small_rational(rng, 0, 8);
        lp.set_bounds(j, lower, Some(upper)).unwrap();
    }
    lp
}

pub fn random_tsp(rng: &mut ChaCha8Rng, n: usize) -> TspInstance {
    let cost = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::zero() } else { small_rational(rng, 0, 20) }).collect())
        .collect();
    TspInstance::from_costs(cost).unwrap()
}

/// Minimum over every permutation of cities `1..n` after city 0.
pub fn brute_force_tsp(inst: &TspInstance) -> Rational {
    let n = inst.n;
    (1..n)
        .permutations(n - 1)
        .map(|rest| {
            let mut order = vec![0];
            order.extend(rest);
            (0..n).map(|i| inst.cost[order[i]][order[(i + 1) % n]].clone()).sum::<Rational>()
        })
        .min()
        .unwrap()
}
