//! LP relaxations with one variable per directed arc.
//!
//! Arc `(i, j)` with `i != j` maps to variable `i * (n - 1) + j'`, where `j'`
//! is `j` with the diagonal skipped.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::TspInstance;
use crate::error::{Error, Result};
use crate::lp::{Constraint, LinearProgram, Relation, Sense};
use crate::rational::Rational;

pub fn arc_index(n: usize, from: usize, to: usize) -> usize {
    debug_assert!(from != to && from < n && to < n);
    from * (n - 1) + if to < from { to } else { to - 1 }
}

pub fn arc_of(n: usize, index: usize) -> (usize, usize) {
    let from = index / (n - 1);
    let rest = index % (n - 1);
    (from, if rest < from { rest } else { rest + 1 })
}

/// Assignment relaxation: every city has in- and out-flow 1, arcs in `[0, 1]`.
pub fn degree_lp(inst: &TspInstance) -> LinearProgram {
    let n = inst.n;
    let vars = n * (n - 1);
    let objective = (0..vars)
        .map(|v| {
            let (i, j) = arc_of(n, v);
            inst.cost(i, j).clone()
        })
        .collect();
    let mut lp = LinearProgram::new(vars, Sense::Minimize, objective)
        .expect("n >= 2 gives at least two arc variables");
    for city in 0..n {
        let mut out = vec![Rational::zero(); vars];
        let mut inn = vec![Rational::zero(); vars];
        for other in (0..n).filter(|&o| o != city) {
            out[arc_index(n, city, other)] = Rational::one();
            inn[arc_index(n, other, city)] = Rational::one();
        }
        lp.constraints.push(Constraint::new(out, Relation::Eq, Rational::one()));
        lp.constraints.push(Constraint::new(inn, Relation::Eq, Rational::one()));
    }
    for u in lp.upper.iter_mut() {
        *u = Some(Rational::one());
    }
    lp
}

/// Checks `subset` and returns a membership mask.
pub(crate) fn subset_mask(n: usize, subset: &[usize]) -> Result<Vec<bool>> {
    if subset.len() < 2 || subset.len() > n - 1 {
        return Err(Error::Invalid(format!(
            "cut subset must have between 2 and {} cities, got {}",
            n - 1,
            subset.len()
        )));
    }
    let mut mask = vec![false; n];
    for &c in subset {
        if c >= n {
            return Err(Error::Invalid(format!("city {c} out of range")));
        }
        if mask[c] {
            return Err(Error::Invalid(format!("city {c} repeated in cut subset")));
        }
        mask[c] = true;
    }
    Ok(mask)
}

/// `sum of x(i, j) over i in S, j not in S  >=  1`.
pub fn subtour_cut(inst: &TspInstance, subset: &[usize]) -> Result<Constraint> {
    let n = inst.n;
    let mask = subset_mask(n, subset)?;
    let mut coeffs = vec![Rational::zero(); n * (n - 1)];
    for i in (0..n).filter(|&i| mask[i]) {
        for j in (0..n).filter(|&j| !mask[j]) {
            coeffs[arc_index(n, i, j)] = Rational::one();
        }
    }
    Ok(Constraint::new(coeffs, Relation::Ge, Rational::one()))
}

/// One subset per valley, in valley order.
pub fn valley_cuts(inst: &TspInstance) -> Vec<Vec<usize>> {
    (0..inst.valley_count()).map(|v| inst.valley(v)).collect()
}

/// Nonzero arcs of an LP point as `(from, to, weight)`.
pub fn flow_from_point(inst: &TspInstance, point: &[Rational]) -> Vec<(usize, usize, Rational)> {
    point
        .iter()
        .enumerate()
        .filter(|(_, w)| !w.is_zero())
        .map(|(v, w)| {
            let (i, j) = arc_of(inst.n, v);
            (i, j, w.clone())
        })
        .collect()
}
