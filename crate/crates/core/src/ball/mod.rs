//! Midpoint-radius ball arithmetic over dyadic numbers.
//!
//! A [`Ball`] `m ± r` stands for the real interval `[m - r, m + r]`. Every
//! operation returns a ball containing the exact image of its input sets:
//! midpoints are rounded to the working precision and the rounding error is
//! folded into the radius, which itself is only ever rounded up.

mod dyadic;
mod elementary;
mod precision;
mod render;

pub use dyadic::{Dyadic, Round};
pub use elementary::{const_e, const_ln2, const_pi, factorial};
pub use precision::{refine_until, PrecisionPolicy, Refined};
pub use render::{rational_to_decimal, rational_truncated, scientific_upper};

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

/// Mantissa bits kept in radii.
const RAD_BITS: u32 = 30;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BallError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("division by a ball containing zero")]
    DivisionByZero,
    #[error("precision exhausted: still undecided at {max_bits} bits")]
    PrecisionExhausted { max_bits: u32 },
    #[error("invalid precision policy: {0}")]
    InvalidPolicy(String),
}

/// Three-valued outcome of a comparison between enclosures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certified {
    True,
    False,
    Undecided,
}

impl Certified {
    pub fn is_true(self) -> bool {
        self == Certified::True
    }

    pub fn is_decided(self) -> bool {
        self != Certified::Undecided
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ball {
    mid: Dyadic,
    rad: Dyadic,
    prec: u32,
}

fn rad_up(r: Dyadic) -> Dyadic {
    r.round(RAD_BITS, Round::Up)
}

impl Ball {
    /// Ball around `x` at working precision `prec`; exact when `x` fits.
    pub fn from_dyadic(x: Dyadic, prec: u32) -> Ball {
        let mid = x.round(prec, Round::Nearest);
        let err = x.sub(&mid).abs();
        Ball { mid, rad: rad_up(err), prec }
    }

    pub fn from_int(v: impl Into<BigInt>, prec: u32) -> Ball {
        Self::from_dyadic(Dyadic::from_int(v), prec)
    }

    /// Exact when the rational is a dyadic that fits in `prec` bits, otherwise
    /// one outward rounding.
    pub fn from_rational(q: &BigRational, prec: u32) -> Ball {
        let (lo, exact) = Dyadic::from_rational(q, prec, Round::Down);
        if exact {
            return Ball { mid: lo, rad: Dyadic::zero(), prec };
        }
        let (hi, _) = Dyadic::from_rational(q, prec, Round::Up);
        Self::from_endpoints(&lo, &hi, prec)
    }

    /// Smallest-ish ball containing `[lo, hi]`.
    pub fn from_endpoints(lo: &Dyadic, hi: &Dyadic, prec: u32) -> Ball {
        debug_assert!(lo <= hi);
        let mid_exact = lo.add(hi).mul_pow2(-1);
        let half = hi.sub(lo).mul_pow2(-1);
        let b = Self::from_dyadic(mid_exact, prec);
        Ball { rad: rad_up(b.rad.add(&half)), ..b }
    }

    /// `mid ± rad`; the radius is taken as an upper bound.
    pub fn with_radius(mid: Dyadic, rad: Dyadic, prec: u32) -> Ball {
        let b = Self::from_dyadic(mid, prec);
        Ball { rad: rad_up(b.rad.add(&rad.abs())), ..b }
    }

    pub fn mid(&self) -> &Dyadic {
        &self.mid
    }

    pub fn rad(&self) -> &Dyadic {
        &self.rad
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn lower(&self) -> Dyadic {
        self.mid.sub(&self.rad)
    }

    pub fn upper(&self) -> Dyadic {
        self.mid.add(&self.rad)
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.lower().is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.upper().is_negative()
    }

    pub fn contains_zero(&self) -> bool {
        !self.is_positive() && !self.is_negative()
    }

    pub fn contains_rational(&self, q: &BigRational) -> bool {
        self.lower().to_rational() <= *q && *q <= self.upper().to_rational()
    }

    /// `other` lies inside `self`.
    pub fn contains(&self, other: &Ball) -> bool {
        self.lower() <= other.lower() && other.upper() <= self.upper()
    }

    pub fn overlaps(&self, other: &Ball) -> bool {
        self.lower() <= other.upper() && other.lower() <= self.upper()
    }

    /// Add `extra` (an upper bound on an error) to the radius.
    pub fn add_error(&self, extra: &Dyadic) -> Ball {
        Ball { rad: rad_up(self.rad.add(&extra.abs())), ..self.clone() }
    }

    /// Re-round to a new working precision.
    pub fn set_prec(&self, prec: u32) -> Ball {
        Self::from_dyadic(self.mid.clone(), prec).add_error(&self.rad)
    }

    pub fn mul_pow2(&self, k: i64) -> Ball {
        Ball { mid: self.mid.mul_pow2(k), rad: self.rad.mul_pow2(k), prec: self.prec }
    }

    pub fn abs_upper(&self) -> Dyadic {
        self.mid.abs().add(&self.rad)
    }

    fn round_mid(exact: Dyadic, rad: Dyadic, prec: u32) -> Ball {
        let mid = exact.round(prec, Round::Nearest);
        let err = exact.sub(&mid).abs();
        Ball { mid, rad: rad_up(rad.add(&err)), prec }
    }

    pub fn try_div(&self, rhs: &Ball) -> Result<Ball, BallError> {
        if rhs.contains_zero() {
            return Err(BallError::DivisionByZero);
        }
        let prec = self.prec.max(rhs.prec);
        let lo = self.mid.div(&rhs.mid, prec, Round::Down);
        let hi = self.mid.div(&rhs.mid, prec, Round::Up);
        let mut q = Ball::from_endpoints(&lo, &hi, prec);
        if !self.rad.is_zero() || !rhs.rad.is_zero() {
            // |a/b - am/bm| <= (ra + |am/bm| rb) / (|bm| - rb)
            let ratio = hi.abs().max(lo.abs());
            let num = self.rad.add(&ratio.mul(&rhs.rad)).round(RAD_BITS + 2, Round::Up);
            let den = rhs.mid.abs().sub(&rhs.rad).round(RAD_BITS + 2, Round::Down);
            q = q.add_error(&num.div(&den, RAD_BITS, Round::Up));
        }
        Ok(q)
    }

    pub fn sqr(&self) -> Ball {
        self * self
    }

    /// Integer power by repeated squaring; negative exponents divide.
    pub fn pow_int(&self, k: i64) -> Result<Ball, BallError> {
        if k < 0 {
            let p = self.pow_int(-k)?;
            return Ball::from_int(1, self.prec).try_div(&p);
        }
        let mut base = self.clone();
        let mut acc = Ball::from_int(1, self.prec);
        let mut e = k as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.sqr();
            }
        }
        Ok(acc)
    }

    pub fn exp(&self) -> Result<Ball, BallError> {
        elementary::exp(self)
    }

    pub fn ln(&self) -> Result<Ball, BallError> {
        elementary::ln(self)
    }

    pub fn sqrt(&self) -> Result<Ball, BallError> {
        elementary::sqrt(self)
    }

    pub fn to_f64(&self) -> f64 {
        self.mid.to_f64()
    }
}

/// `a < b` proven by disjoint enclosures.
pub fn certified_less(a: &Ball, b: &Ball) -> Certified {
    if a.upper() < b.lower() {
        Certified::True
    } else if a.lower() > b.upper() {
        Certified::False
    } else {
        Certified::Undecided
    }
}

/// `a < q` for an exact rational `q`.
pub fn certified_less_than_rational(a: &Ball, q: &BigRational) -> Certified {
    if a.upper().to_rational() < *q {
        Certified::True
    } else if a.lower().to_rational() > *q {
        Certified::False
    } else {
        Certified::Undecided
    }
}

/// `q < a` for an exact rational `q`.
pub fn certified_rational_less_than(q: &BigRational, a: &Ball) -> Certified {
    if *q < a.lower().to_rational() {
        Certified::True
    } else if *q > a.upper().to_rational() {
        Certified::False
    } else {
        Certified::Undecided
    }
}

impl<'a> Add<&'a Ball> for &'a Ball {
    type Output = Ball;

    fn add(self, rhs: &Ball) -> Ball {
        Ball::round_mid(self.mid.add(&rhs.mid), self.rad.add(&rhs.rad), self.prec.max(rhs.prec))
    }
}

impl<'a> Sub<&'a Ball> for &'a Ball {
    type Output = Ball;

    fn sub(self, rhs: &Ball) -> Ball {
        Ball::round_mid(self.mid.sub(&rhs.mid), self.rad.add(&rhs.rad), self.prec.max(rhs.prec))
    }
}

impl<'a> Mul<&'a Ball> for &'a Ball {
    type Output = Ball;

    fn mul(self, rhs: &Ball) -> Ball {
        let rad = self
            .mid
            .abs()
            .mul(&rhs.rad)
            .add(&rhs.mid.abs().mul(&self.rad))
            .add(&self.rad.mul(&rhs.rad));
        Ball::round_mid(self.mid.mul(&rhs.mid), rad, self.prec.max(rhs.prec))
    }
}

impl Neg for &Ball {
    type Output = Ball;

    fn neg(self) -> Ball {
        Ball { mid: self.mid.neg(), rad: self.rad.clone(), prec: self.prec }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Ball> for Ball {
            type Output = Ball;
            fn $m(self, rhs: Ball) -> Ball {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn third(prec: u32) -> Ball {
        Ball::from_rational(&rat(1, 3), prec)
    }

    #[test]
    fn rational_embedding_is_exact_when_dyadic() {
        let b = Ball::from_rational(&rat(5, 8), 64);
        assert!(b.is_exact());
        let t = third(64);
        assert!(!t.is_exact());
        assert!(t.contains_rational(&rat(1, 3)));
    }

    #[test]
    fn arithmetic_contains_exact_results() {
        let t = third(64);
        let s = &(&t + &t) + &t;
        assert!(s.contains_rational(&rat(1, 1)));
        let p = &t * &t;
        assert!(p.contains_rational(&rat(1, 9)));
        let q = Ball::from_int(2, 64).try_div(&Ball::from_int(7, 64)).unwrap();
        assert!(q.contains_rational(&rat(2, 7)));
        let qq = t.try_div(&Ball::from_rational(&rat(1, 7), 64)).unwrap();
        assert!(qq.contains_rational(&rat(7, 3)));
        let d = &t - &t;
        assert!(d.contains_rational(&rat(0, 1)));
    }

    #[test]
    fn division_by_zero_ball() {
        let z = &third(64) - &third(64);
        assert_eq!(Ball::from_int(1, 64).try_div(&z), Err(BallError::DivisionByZero));
    }

    #[test]
    fn comparisons() {
        let one = Ball::from_int(1, 64);
        let two = Ball::from_int(2, 64);
        assert_eq!(certified_less(&one, &two), Certified::True);
        assert_eq!(certified_less(&two, &one), Certified::False);
        let t = third(64);
        assert_eq!(certified_less(&t, &t), Certified::Undecided);
        assert_eq!(certified_less_than_rational(&t, &rat(1, 2)), Certified::True);
        assert_eq!(certified_rational_less_than(&rat(1, 2), &t), Certified::False);
    }

    #[test]
    fn powers() {
        let b = Ball::from_rational(&rat(3, 2), 64);
        assert!(b.pow_int(5).unwrap().contains_rational(&rat(243, 32)));
        assert!(b.pow_int(-2).unwrap().contains_rational(&rat(4, 9)));
        assert_eq!(b.pow_int(0).unwrap(), Ball::from_int(1, 64));
    }
}
