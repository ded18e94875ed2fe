//! Rigorous enclosures for `sin(2^x * pi)` at rational `x`.
//!
//! Every quantity is carried as a rational interval rounded outward to a
//! dyadic grid of `2^-prec`, so the true value always lies inside.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive};

use crate::rational::Rational;

/// Closed rational interval known to contain a real value.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Enclosure {
    pub lo: Rational,
    pub hi: Rational,
    /// Set when the value is known exactly (`lo == hi`).
    pub exact: bool,
}

impl Enclosure {
    pub fn point(v: Rational) -> Self {
        Enclosure { lo: v.clone(), hi: v, exact: true }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    /// Same enclosure rounded outward to `bits` fractional bits.
    pub fn coarsen(&self, bits: u32) -> Self {
        if self.exact {
            return self.clone();
        }
        Enclosure { lo: round_down(&self.lo, bits), hi: round_up(&self.hi, bits), exact: false }
    }

    pub fn shift(&self, by: &Rational) -> Self {
        Enclosure { lo: &self.lo + by, hi: &self.hi + by, exact: self.exact }
    }
}

fn scale(bits: u32) -> Rational {
    Rational::from_integer(BigInt::one() << bits)
}

pub(crate) fn round_down(x: &Rational, bits: u32) -> Rational {
    let s = scale(bits);
    (x * &s).floor() / s
}

pub(crate) fn round_up(x: &Rational, bits: u32) -> Rational {
    let s = scale(bits);
    (x * &s).ceil() / s
}

/// `(lo, hi)` around pi from Machin's formula `16 atan(1/5) - 4 atan(1/239)`.
pub(crate) fn pi(prec: u32) -> (Rational, Rational) {
    let (a_lo, a_hi) = atan_inv(5, prec + 8);
    let (b_lo, b_hi) = atan_inv(239, prec + 8);
    let lo = Rational::from(16) * a_lo - Rational::from(4) * b_hi;
    let hi = Rational::from(16) * a_hi - Rational::from(4) * b_lo;
    (round_down(&lo, prec), round_up(&hi, prec))
}

/// Brackets `atan(1/m)` between consecutive partial sums of its alternating
/// series, stopping once a term drops below `2^-prec`.
fn atan_inv(m: i64, prec: u32) -> (Rational, Rational) {
    let tol = Rational::one() / scale(prec);
    let m2 = Rational::from(m * m);
    let mut power = Rational::frac(1, m); // 1 / m^(2k+1)
    let mut sum = Rational::zero();
    let mut k = 0i64;
    loop {
        let term = &power / Rational::from(2 * k + 1);
        let next = if k % 2 == 0 { &sum + &term } else { &sum - &term };
        if term < tol {
            return if next < sum { (next, sum) } else { (sum, next) };
        }
        sum = next;
        power = power / &m2;
        k += 1;
    }
}

/// Encloses `2^x`.
pub(crate) fn pow2(x: &Rational, prec: u32) -> Enclosure {
    let whole = x.floor();
    let frac = x - &whole;
    let shift = whole.floor_int().to_i32().expect("exponent fits in i32");
    let base = Rational::from(2).pow(shift);
    if frac.is_zero() {
        return Enclosure::point(base);
    }
    // 2^(r/q) = (2^r)^(1/q), bracketed by an integer q-th root at scale 2^prec.
    let r = frac.numer().to_u32().expect("small numerator");
    let q = frac.denom().to_u32().expect("small denominator");
    let radicand: BigUint = BigUint::one() << (r as u64 + prec as u64 * q as u64);
    let root = radicand.nth_root(q);
    let s = scale(prec);
    let lo = Rational::from_integer(BigInt::from(root.clone())) / &s;
    let hi = Rational::from_integer(BigInt::from(root + 1u8)) / &s;
    Enclosure { lo: lo * &base, hi: hi * &base, exact: false }
}

/// Taylor series of sin at an exact rational `t`, returning the partial sum
/// and a bound on the truncation error.
fn sin_taylor(t: &Rational, prec: u32) -> (Rational, Rational) {
    let tol = Rational::one() / scale(prec);
    let t2 = t * t;
    let mut term = t.clone(); // t^(2n+1) / (2n+1)!
    let mut sum = Rational::zero();
    let mut n = 0i64;
    loop {
        if n % 2 == 0 {
            sum += &term;
        } else {
            sum -= &term;
        }
        term = &term * &t2 / Rational::from((2 * n + 2) * (2 * n + 3));
        n += 1;
        // Remainder after the last added term is bounded by the next term.
        if term.abs() < tol {
            return (sum, term.abs());
        }
    }
}

/// Encloses `sin(2^x * pi)`.
pub(crate) fn sin_pow2_pi(x: &Rational, prec: u32) -> Enclosure {
    let (pi_lo, pi_hi) = pi(prec + 16);
    let p = pow2(x, prec + 16);
    if p.exact && p.lo.is_integer() {
        return Enclosure::point(Rational::zero());
    }
    let arg_lo = round_down(&(&p.lo * &pi_lo), prec + 8);
    let arg_hi = round_up(&(&p.hi * &pi_hi), prec + 8);

    // Reduce by 2k*pi; the true reduced argument lies in [t_lo, t_hi].
    let two_pi_mid = &pi_lo + &pi_hi;
    let mid = (&arg_lo + &arg_hi) / Rational::from(2);
    let k = (mid.checked_div(&two_pi_mid).expect("pi > 0") + Rational::frac(1, 2)).floor();
    let (t_lo, t_hi) = if k.is_negative() {
        let two_k = Rational::from(2) * &k;
        (&arg_lo - &two_k * &pi_lo, &arg_hi - &two_k * &pi_hi)
    } else {
        let two_k = Rational::from(2) * &k;
        (&arg_lo - &two_k * &pi_hi, &arg_hi - &two_k * &pi_lo)
    };

    // |sin(a) - sin(b)| <= |a - b|.
    let center = round_down(&((&t_lo + &t_hi) / Rational::from(2)), prec + 8);
    let radius = (&t_hi - &center).max(&center - &t_lo);
    let (s, err) = sin_taylor(&center, prec + 8);
    let slack = radius + err;
    let one = Rational::one();
    let lo = round_down(&(&s - &slack), prec).max(-&one);
    let hi = round_up(&(&s + &slack), prec).min(one);
    Enclosure { lo, hi, exact: false }
}
