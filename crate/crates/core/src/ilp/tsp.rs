//! Exact TSP oracles: exhaustive permutation search and Held-Karp.
//!
//! Costs are first scaled to a common denominator; when the scaled integers
//! fit comfortably in `i64` both searches run on machine integers, otherwise
//! they fall back to exact rationals. The reported cost is always recomputed
//! from the instance's own rational matrix.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::valleys::TspInstance;

pub const EXHAUSTIVE_LIMIT: usize = 10;
pub const HELD_KARP_LIMIT: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum OracleMethod {
    Exhaustive,
    HeldKarp,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct TspTour {
    /// City order starting at 0; the tour closes back to 0.
    pub tour: Vec<usize>,
    pub cost: Rational,
    pub method: OracleMethod,
}

/// Optimal tour: exhaustive for `n <= 10`, Held-Karp up to `n = 20`.
pub fn tsp_oracle(inst: &TspInstance) -> Result<TspTour> {
    if inst.n <= EXHAUSTIVE_LIMIT {
        tsp_exhaustive(inst)
    } else {
        tsp_held_karp(inst)
    }
}

pub fn tsp_exhaustive(inst: &TspInstance) -> Result<TspTour> {
    inst.validate()?;
    check_budget(inst.n, EXHAUSTIVE_LIMIT, "exhaustive search")?;
    let tour = match scaled(inst) {
        Some(c) => exhaustive(&c),
        None => exhaustive(&exact(inst)),
    };
    Ok(finish(inst, tour, OracleMethod::Exhaustive))
}

pub fn tsp_held_karp(inst: &TspInstance) -> Result<TspTour> {
    inst.validate()?;
    check_budget(inst.n, HELD_KARP_LIMIT, "Held-Karp")?;
    let tour = match scaled(inst) {
        Some(c) => held_karp(&c),
        None => held_karp(&exact(inst)),
    };
    Ok(finish(inst, tour, OracleMethod::HeldKarp))
}

fn check_budget(n: usize, limit: usize, what: &str) -> Result<()> {
    if n > limit {
        return Err(Error::BudgetExhausted(format!("{what} is limited to {limit} cities, got {n}")));
    }
    Ok(())
}

fn finish(inst: &TspInstance, tour: Vec<usize>, method: OracleMethod) -> TspTour {
    debug_assert!(inst.is_tour(&tour));
    TspTour { cost: inst.tour_cost(&tour), tour, method }
}

trait Weight: Clone + Ord {
    fn zero() -> Self;
    /// Strictly greater than any reachable path cost.
    fn unreachable() -> Self;
    fn plus(&self, other: &Self) -> Self;
}

impl Weight for i64 {
    fn zero() -> Self {
        0
    }
    fn unreachable() -> Self {
        i64::MAX
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
}

/// Rational with a top element; variant order makes `Finite < Unreachable`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Ext {
    Finite(Rational),
    Unreachable,
}

impl Weight for Ext {
    fn zero() -> Self {
        Ext::Finite(Rational::zero())
    }
    fn unreachable() -> Self {
        Ext::Unreachable
    }
    fn plus(&self, other: &Self) -> Self {
        match (self, other) {
            (Ext::Finite(a), Ext::Finite(b)) => Ext::Finite(a + b),
            _ => Ext::Unreachable,
        }
    }
}

fn exact(inst: &TspInstance) -> Vec<Vec<Ext>> {
    inst.cost.iter().map(|row| row.iter().cloned().map(Ext::Finite).collect()).collect()
}

/// Integer matrix `cost * lcm(denominators)`, if every tour sum stays well
/// inside `i64`.
fn scaled(inst: &TspInstance) -> Option<Vec<Vec<i64>>> {
    let n = inst.n;
    let mut lcm = BigInt::one();
    for (i, row) in inst.cost.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            if i != j {
                lcm = lcm.lcm(&c.denom());
            }
        }
    }
    let limit = i64::MAX / 4 / n as i64;
    let mut out = vec![vec![0i64; n]; n];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate().filter(|&(j, _)| j != i) {
            let c = &inst.cost[i][j];
            let v = (c.numer() * (&lcm / c.denom())).to_i64()?;
            if v.abs() > limit {
                return None;
            }
            *slot = v;
        }
    }
    Some(out)
}

/// Tries every order of cities `1..n` after city 0, keeping the
/// lexicographically first optimum.
fn exhaustive<W: Weight>(cost: &[Vec<W>]) -> Vec<usize> {
    struct Search<'a, W> {
        cost: &'a [Vec<W>],
        path: Vec<usize>,
        used: Vec<bool>,
        best: Option<(W, Vec<usize>)>,
    }
    impl<W: Weight> Search<'_, W> {
        fn go(&mut self, so_far: W) {
            let n = self.cost.len();
            let last = *self.path.last().expect("path starts at city 0");
            if self.path.len() == n {
                let total = so_far.plus(&self.cost[last][0]);
                if self.best.as_ref().is_none_or(|(b, _)| &total < b) {
                    self.best = Some((total, self.path.clone()));
                }
                return;
            }
            for next in 1..n {
                if self.used[next] {
                    continue;
                }
                self.used[next] = true;
                self.path.push(next);
                let step = so_far.plus(&self.cost[last][next]);
                self.go(step);
                self.path.pop();
                self.used[next] = false;
            }
        }
    }
    let n = cost.len();
    let mut used = vec![false; n];
    used[0] = true;
    let mut s = Search { cost, path: vec![0], used, best: None };
    s.go(W::zero());
    s.best.expect("n >= 2 has at least one tour").1
}

/// Subset dynamic program over cities `1..n`; `dp[mask][j]` is the cheapest
/// path from 0 through `mask` ending at `j`.
fn held_karp<W: Weight>(cost: &[Vec<W>]) -> Vec<usize> {
    let n = cost.len();
    let m = n - 1;
    let full = (1usize << m) - 1;
    let idx = |mask: usize, j: usize| mask * m + j;
    let mut dp = vec![W::unreachable(); (full + 1) * m];
    for j in 0..m {
        dp[idx(1 << j, j)] = cost[0][j + 1].clone();
    }
    for mask in 1..=full {
        for j in 0..m {
            if mask & (1 << j) == 0 {
                continue;
            }
            let here = dp[idx(mask, j)].clone();
            if here == W::unreachable() {
                continue;
            }
            let mut rest = full & !mask;
            while rest != 0 {
                let k = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let cand = here.plus(&cost[j + 1][k + 1]);
                let slot = &mut dp[idx(mask | (1 << k), k)];
                if cand < *slot {
                    *slot = cand;
                }
            }
        }
    }

    let close = |j: usize, dp: &[W]| dp[idx(full, j)].plus(&cost[j + 1][0]);
    let mut last = 0;
    for j in 1..m {
        if close(j, &dp) < close(last, &dp) {
            last = j;
        }
    }
    let mut order = vec![last + 1];
    let mut mask = full;
    let mut j = last;
    while mask != 1 << j {
        let prev_mask = mask & !(1 << j);
        let target = &dp[idx(mask, j)];
        let i = (0..m)
            .filter(|&i| prev_mask & (1 << i) != 0)
            .find(|&i| &dp[idx(prev_mask, i)].plus(&cost[i + 1][j + 1]) == target)
            .expect("Held-Karp table is consistent");
        order.push(i + 1);
        mask = prev_mask;
        j = i;
    }
    order.push(0);
    order.reverse();
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::valleys::gen_valley_instance;

    fn uniform(n: usize) -> TspInstance {
        let cost = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Rational::zero() } else { Rational::one() }).collect())
            .collect();
        TspInstance::from_costs(cost).unwrap()
    }

    #[test]
    fn three_uniform_cities() {
        let t = tsp_oracle(&uniform(3)).unwrap();
        assert_eq!(t.cost, Rational::from(3));
        assert_eq!(t.tour, [0, 1, 2]);
    }

    #[test]
    fn two_cities() {
        let t = tsp_oracle(&uniform(2)).unwrap();
        assert_eq!(t.tour, [0, 1]);
        assert_eq!(t.cost, Rational::from(2));
        assert_eq!(tsp_held_karp(&uniform(2)).unwrap().cost, Rational::from(2));
    }

    #[test]
    fn valley_headline_costs() {
        for (k, want) in [(4, 4), (10, 10)] {
            let inst = gen_valley_instance(k, 1, Rational::zero(), Rational::one()).unwrap();
            assert_eq!(tsp_oracle(&inst).unwrap().cost, Rational::from(want));
        }
    }

    #[test]
    fn methods_agree_on_valleys() {
        let inst = gen_valley_instance(3, 3, Rational::frac(1, 7), Rational::frac(5, 3)).unwrap();
        let a = tsp_exhaustive(&inst).unwrap();
        let b = tsp_held_karp(&inst).unwrap();
        assert_eq!(a.cost, b.cost);
        // 3 crossings and 6 intra steps.
        assert_eq!(a.cost, Rational::from(5) + Rational::frac(6, 7));
    }

    #[test]
    fn huge_denominators_use_exact_path() {
        let big = Rational::new(1, BigInt::from(10).pow(30u32)).unwrap();
        let mut inst = uniform(5);
        inst.cost[0][1] = big.clone();
        assert!(scaled(&inst).is_none());
        let t = tsp_held_karp(&inst).unwrap();
        assert_eq!(t.cost, Rational::from(4) + big);
        assert_eq!(tsp_exhaustive(&inst).unwrap().cost, t.cost);
    }

    #[test]
    fn budget_limits() {
        assert!(tsp_exhaustive(&uniform(11)).unwrap_err().is_budget());
        assert!(tsp_oracle(&uniform(21)).unwrap_err().is_budget());
        assert!(TspInstance::from_costs(vec![vec![Rational::zero()]]).is_err());
    }
}
