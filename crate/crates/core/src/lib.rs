//! Exact LP/ILP kernels and the counterexample families they are run on.
//!
//! The crate is `no_std` (it needs `alloc`). Every solver works over
//! [`Rational`], so every reported optimum, gap and witness is exact.
//!
//! - [`rational`]: the scalar type.
//! - [`lp`]: linear programs and a two-phase simplex solver.
//! - [`ilp`]: branch-and-bound plus exact TSP oracles.
//! - [`hull`]: the concave arc polytope and missing-facet adversaries.
//! - [`valleys`]: valley/mountain TSP instances, relaxations, separation and
//!   the cutting-plane loop.
//! - [`gap`]: LP-vs-ILP reports and the decision-form query.
//! - [`space`]: storage lower bounds and the sampled-monotonicity demo.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod gap;
pub mod hull;
pub mod ilp;
pub mod lp;
pub mod rational;
pub mod space;
pub mod valleys;

pub use error::{Error, Result};
pub use lp::{check_feasible, solve_lp, LinearProgram, LpOutcome, LpStatus, Relation, Sense};
pub use rational::Rational;
