//! Subtour separation: connected components of the support graph first,
//! then exact max-flow/min-cut between city 0 and every other city.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use super::relax::{arc_index, subset_mask};
use super::TspInstance;
use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SubtourViolation {
    /// Sorted city subset whose outgoing flow is below 1.
    pub subset: Vec<usize>,
    pub cut_value: Rational,
}

/// Total weight on arcs leaving `subset` under `point`.
pub fn cut_value(inst: &TspInstance, point: &[Rational], subset: &[usize]) -> Result<Rational> {
    let n = inst.n;
    if point.len() != n * (n - 1) {
        return Err(Error::invalid("point length must be n(n-1)"));
    }
    let mask = subset_mask(n, subset)?;
    Ok(leaving(n, point, &mask))
}

fn leaving(n: usize, point: &[Rational], mask: &[bool]) -> Rational {
    let mut total = Rational::zero();
    for i in (0..n).filter(|&i| mask[i]) {
        for j in (0..n).filter(|&j| !mask[j]) {
            total += &point[arc_index(n, i, j)];
        }
    }
    total
}

/// Finds the most violated cut-form subtour constraint, or `None` when every
/// cut carries at least 1. Ties go to the lexicographically smallest subset.
pub fn separate_subtour(inst: &TspInstance, point: &[Rational]) -> Result<Option<SubtourViolation>> {
    let n = inst.n;
    if point.len() != n * (n - 1) {
        return Err(Error::invalid("point length must be n(n-1)"));
    }
    let capacity = capacity_matrix(n, point);

    let components = weak_components(&capacity);
    let mut best: Option<SubtourViolation> = None;
    let mut offer = |subset: Vec<usize>, value: Rational| {
        if subset.len() < 2 || subset.len() > n - 1 || value >= Rational::one() {
            return;
        }
        let better = match &best {
            None => true,
            Some(b) => value < b.cut_value || (value == b.cut_value && subset < b.subset),
        };
        if better {
            best = Some(SubtourViolation { subset, cut_value: value });
        }
    };

    if components.len() > 1 {
        for comp in components {
            let mut mask = vec![false; n];
            comp.iter().for_each(|&c| mask[c] = true);
            let value = leaving(n, point, &mask);
            offer(comp, value);
        }
        return Ok(best);
    }

    for t in 1..n {
        for (s, t) in [(0, t), (t, 0)] {
            let (value, side) = min_cut(&capacity, s, t);
            let subset: Vec<usize> = (0..n).filter(|&c| side[c]).collect();
            offer(subset, value);
        }
    }
    Ok(best)
}

fn capacity_matrix(n: usize, point: &[Rational]) -> Vec<Vec<Rational>> {
    let mut cap = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for j in (0..n).filter(|&j| j != i) {
            cap[i][j] = point[arc_index(n, i, j)].clone();
        }
    }
    cap
}

/// Components of the undirected support graph, each sorted, ordered by
/// smallest member.
fn weak_components(cap: &[Vec<Rational>]) -> Vec<Vec<usize>> {
    let n = cap.len();
    let mut label = vec![usize::MAX; n];
    let mut comps = Vec::new();
    for start in 0..n {
        if label[start] != usize::MAX {
            continue;
        }
        let id = comps.len();
        let mut members = vec![start];
        label[start] = id;
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for v in 0..n {
                if label[v] == usize::MAX && (!cap[u][v].is_zero() || !cap[v][u].is_zero()) {
                    label[v] = id;
                    members.push(v);
                    stack.push(v);
                }
            }
        }
        members.sort_unstable();
        comps.push(members);
    }
    comps
}

/// Edmonds-Karp max flow. Returns the flow value and the source side of a
/// minimum cut (vertices reachable in the final residual graph).
fn min_cut(cap: &[Vec<Rational>], s: usize, t: usize) -> (Rational, Vec<bool>) {
    let n = cap.len();
    let mut residual = cap.to_vec();
    let mut total = Rational::zero();
    loop {
        let mut parent = vec![usize::MAX; n];
        parent[s] = s;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            if u == t {
                break;
            }
            for v in 0..n {
                if parent[v] == usize::MAX && residual[u][v].is_positive() {
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if parent[t] == usize::MAX {
            let side = parent.iter().map(|&p| p != usize::MAX).collect();
            return (total, side);
        }
        let mut bottleneck: Option<Rational> = None;
        let mut v = t;
        while v != s {
            let u = parent[v];
            let c = &residual[u][v];
            if bottleneck.as_ref().is_none_or(|b| c < b) {
                bottleneck = Some(c.clone());
            }
            v = u;
        }
        let push = bottleneck.expect("augmenting path has at least one arc");
        let mut v = t;
        while v != s {
            let u = parent[v];
            residual[u][v] -= &push;
            residual[v][u] += &push;
            v = u;
        }
        total += push;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::valleys::{gen_valley_instance, internal_cycles_flow, tour_flow, FlowArc};

    fn point_from(inst: &TspInstance, arcs: &[FlowArc]) -> Vec<Rational> {
        let n = inst.n;
        let mut p = vec![Rational::zero(); n * (n - 1)];
        for a in arcs {
            p[arc_index(n, a.from, a.to)] += &a.weight;
        }
        p
    }

    #[test]
    fn internal_cycles_expose_a_valley() {
        let inst = gen_valley_instance(4, 2, Rational::zero(), Rational::one()).unwrap();
        let point = point_from(&inst, &internal_cycles_flow(&inst).unwrap());
        let v = separate_subtour(&inst, &point).unwrap().unwrap();
        assert_eq!(v.subset, [0, 1]);
        assert!(v.cut_value.is_zero());
    }

    #[test]
    fn tour_point_has_no_violation() {
        let inst = gen_valley_instance(4, 2, Rational::zero(), Rational::one()).unwrap();
        let order: Vec<usize> = (0..8).collect();
        let point = point_from(&inst, &tour_flow(&order));
        assert_eq!(separate_subtour(&inst, &point).unwrap(), None);
    }

    #[test]
    fn two_half_tours_pass_min_cut() {
        // Two different Hamiltonian cycles at weight 1/2: connected, every
        // cut carries at least 1.
        let inst = gen_valley_instance(3, 2, Rational::zero(), Rational::one()).unwrap();
        let half = Rational::frac(1, 2);
        let mut arcs = Vec::new();
        for order in [[0usize, 1, 2, 3, 4, 5], [0, 2, 4, 1, 5, 3]] {
            for a in tour_flow(&order) {
                arcs.push(FlowArc { weight: half.clone(), ..a });
            }
        }
        let point = point_from(&inst, &arcs);
        assert_eq!(separate_subtour(&inst, &point).unwrap(), None);
    }

    #[test]
    fn min_cut_finds_weak_bridge() {
        // Cycles 0-1-2 and 3-4-5 at weight 3/4 joined by a 1/4 ring over
        // all six: connected, but {0,1,2} only sends 1/4 out.
        let inst = gen_valley_instance(2, 3, Rational::zero(), Rational::one()).unwrap();
        let mut arcs = Vec::new();
        for cyc in [[0usize, 1, 2], [3, 4, 5]] {
            for a in tour_flow(&cyc) {
                arcs.push(FlowArc { weight: Rational::frac(3, 4), ..a });
            }
        }
        for a in tour_flow(&[0, 1, 2, 3, 4, 5]) {
            arcs.push(FlowArc { weight: Rational::frac(1, 4), ..a });
        }
        let point = point_from(&inst, &arcs);
        let v = separate_subtour(&inst, &point).unwrap().unwrap();
        assert_eq!(v.subset, [0, 1, 2]);
        assert_eq!(v.cut_value, Rational::frac(1, 4));
        assert_eq!(cut_value(&inst, &point, &v.subset).unwrap(), v.cut_value);
    }
}
