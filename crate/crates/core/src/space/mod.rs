//! Storage lower bounds, in bits, and the sampled-monotonicity demo.
//!
//! Pointing at one of `k` objects takes `ceil(log2 k)` bits. Pointing at one
//! `m`-subset of `N` objects takes `ceil(log2 C(N, m))` bits, which for
//! `m = N / 4` grows linearly in `N` and so exponentially in `log2 N`.

mod interval;
mod monotone;

pub use interval::Enclosure;
pub use monotone::{eval_wave, monotone_model_demo, MonotoneDemo};

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case", tag = "kind"))]
pub enum Derivation {
    SingleSolution,
    SubsetOfSolutions {
        universe: u64,
        subset_size: u64,
        /// Listing the subset element by element: `m * ceil(log2 N)` bits.
        #[cfg_attr(feature = "serde", serde(serialize_with = "ser_big"))]
        list_bits: BigUint,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct StorageBound {
    #[cfg_attr(feature = "serde", serde(serialize_with = "ser_big"))]
    pub object_count: BigUint,
    pub min_bits: u64,
    pub derivation: Derivation,
}

#[cfg(feature = "serde")]
fn ser_big<S: serde::Serializer>(v: &BigUint, s: S) -> core::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

impl StorageBound {
    /// `2^(b-1) < count <= 2^b` (or `b = 0` for a single object).
    pub fn bracket_holds(&self) -> bool {
        let one = BigUint::one();
        if self.object_count.is_zero() {
            return false;
        }
        if self.object_count == one {
            return self.min_bits == 0;
        }
        let upper = &one << self.min_bits;
        let lower = &one << (self.min_bits - 1);
        self.object_count <= upper && self.object_count > lower
    }
}

/// `ceil(log2 count)` for `count >= 1`.
fn ceil_log2(count: &BigUint) -> u64 {
    if count.is_one() {
        0
    } else {
        (count - 1u8).bits()
    }
}

pub fn min_symbols_single(k: &BigUint) -> Result<StorageBound> {
    if k.is_zero() {
        return Err(Error::invalid("solution count must be at least 1"));
    }
    Ok(StorageBound { object_count: k.clone(), min_bits: ceil_log2(k), derivation: Derivation::SingleSolution })
}

pub fn min_symbols_subset(universe: u64, subset_size: u64) -> Result<StorageBound> {
    if universe == 0 {
        return Err(Error::invalid("universe must be nonempty"));
    }
    if subset_size > universe {
        return Err(Error::invalid("subset size exceeds universe"));
    }
    let count = binomial(universe, subset_size);
    let list_bits = BigUint::from(subset_size) * ceil_log2(&BigUint::from(universe));
    Ok(StorageBound {
        min_bits: ceil_log2(&count),
        object_count: count,
        derivation: Derivation::SubsetOfSolutions { universe, subset_size, list_bits },
    })
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct GrowthRow {
    pub n: u32,
    pub universe: u64,
    pub subset_size: u64,
    pub min_bits: u64,
}

/// Subset bounds for `N = 2^n`, `m = N / divisor`, over `ns`.
pub fn subset_growth(ns: core::ops::RangeInclusive<u32>, divisor: u64) -> Result<Vec<GrowthRow>> {
    if divisor == 0 {
        return Err(Error::invalid("divisor must be positive"));
    }
    ns.map(|n| {
        if n >= 63 {
            return Err(Error::invalid("n must be below 63"));
        }
        let universe = 1u64 << n;
        let subset_size = universe / divisor;
        let b = min_symbols_subset(universe, subset_size)?;
        Ok(GrowthRow { n, universe, subset_size, min_bits: b.min_bits })
    })
    .collect()
}
