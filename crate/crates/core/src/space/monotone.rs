//! Sampling `f(x) = sin(2^x pi) + x` on a grid.
//!
//! On the integer grid the sine term vanishes identically, so the samples
//! read `f(x) = x` and look monotone. A finer grid exposes the dips. Every
//! comparison is decided from rigorous enclosures; if two enclosures overlap
//! the precision is raised before the pair is set aside as undecided.

use alloc::vec::Vec;

use super::interval::{sin_pow2_pi, Enclosure};
use crate::error::{Error, Result};
use crate::rational::Rational;

const START_PREC: u32 = 128;
const MAX_PREC: u32 = 1024;
const MAX_POINTS: usize = 100_000;
/// Fractional bits kept in reported enclosures.
const REPORT_BITS: u32 = 48;

/// Encloses `sin(2^x pi) + x`. Nonnegative integers are exact, since
/// `2^x` is then an integer.
pub fn eval_wave(x: &Rational, prec: u32) -> Enclosure {
    if x.is_integer() && !x.is_negative() {
        return Enclosure::point(x.clone());
    }
    sin_pow2_pi(x, prec).shift(x)
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct MonotoneDemo {
    pub grid: Vec<Rational>,
    pub values: Vec<Enclosure>,
    /// No consecutive pair was proven to decrease.
    pub grid_monotone: bool,
    /// First consecutive pair `(x1, x2)` with `f(x1) > f(x2)`.
    pub witness: Option<(Rational, Rational)>,
    /// Pairs whose order could not be settled even at the top precision.
    pub undecided: Vec<(Rational, Rational)>,
}

pub fn monotone_model_demo(start: &Rational, end: &Rational, step: &Rational) -> Result<MonotoneDemo> {
    if !step.is_positive() {
        return Err(Error::invalid("step must be positive"));
    }
    if start > end {
        return Err(Error::invalid("grid start must not exceed grid end"));
    }
    let span = (end - start).checked_div(step)?.floor_int();
    let count = usize::try_from(span + 1u8).ok().filter(|&c| c <= MAX_POINTS);
    let Some(count) = count else {
        return Err(Error::invalid("grid has too many points"));
    };
    let grid: Vec<Rational> = (0..count).map(|i| start + step * Rational::from(i)).collect();

    let mut prec = START_PREC;
    let mut values: Vec<Enclosure> = grid.iter().map(|x| eval_wave(x, prec)).collect();
    let mut witness = None;
    let mut undecided = Vec::new();
    for i in 1..grid.len() {
        loop {
            let (a, b) = (&values[i - 1], &values[i]);
            if a.lo > b.hi {
                witness.get_or_insert_with(|| (grid[i - 1].clone(), grid[i].clone()));
                break;
            }
            if a.hi <= b.lo {
                break;
            }
            if prec >= MAX_PREC {
                undecided.push((grid[i - 1].clone(), grid[i].clone()));
                break;
            }
            prec *= 2;
            values[i - 1] = eval_wave(&grid[i - 1], prec);
            values[i] = eval_wave(&grid[i], prec);
        }
    }
    Ok(MonotoneDemo {
        grid_monotone: witness.is_none(),
        values: values.iter().map(|e| e.coarsen(REPORT_BITS)).collect(),
        grid,
        witness,
        undecided,
    })
}
