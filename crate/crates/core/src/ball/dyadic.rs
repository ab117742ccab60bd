//! Dyadic numbers `mantissa * 2^exponent` with arbitrary-size mantissa.
//!
//! Addition, subtraction and multiplication are exact; rounding happens only
//! when asked for, in an explicit direction.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Round {
    /// toward negative infinity
    Down,
    /// toward positive infinity
    Up,
    Nearest,
}

/// Exact binary float. The mantissa is odd unless the value is zero, so the
/// representation is canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    man: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn new(man: BigInt, exp: i64) -> Self {
        if man.is_zero() {
            return Dyadic { man, exp: 0 };
        }
        let tz = man.trailing_zeros().unwrap_or(0);
        Dyadic { man: man >> tz, exp: exp + tz as i64 }
    }

    pub fn zero() -> Self {
        Dyadic { man: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        Dyadic { man: BigInt::one(), exp: 0 }
    }

    pub fn from_int(v: impl Into<BigInt>) -> Self {
        Self::new(v.into(), 0)
    }

    /// `2^k`
    pub fn pow2(k: i64) -> Self {
        Dyadic { man: BigInt::one(), exp: k }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.man
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.man.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.man.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.man.is_negative()
    }

    pub fn abs(&self) -> Self {
        Dyadic { man: self.man.abs(), exp: self.exp }
    }

    /// Bit length of the mantissa.
    pub fn bits(&self) -> u64 {
        self.man.bits()
    }

    /// `e` with `2^(e-1) <= |x| < 2^e`; zero for zero.
    pub fn magnitude_exp(&self) -> i64 {
        if self.is_zero() {
            return 0;
        }
        self.bits() as i64 + self.exp
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Dyadic { man: self.man.clone(), exp: self.exp + k }
    }

    pub fn add(&self, rhs: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(rhs.exp);
        let a = &self.man << (self.exp - e) as u64;
        let b = &rhs.man << (rhs.exp - e) as u64;
        Dyadic::new(a + b, e)
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic { man: -&self.man, exp: self.exp }
    }

    pub fn sub(&self, rhs: &Dyadic) -> Dyadic {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Dyadic) -> Dyadic {
        Dyadic::new(&self.man * &rhs.man, self.exp + rhs.exp)
    }

    /// Round to at most `prec` mantissa bits.
    pub fn round(&self, prec: u32, mode: Round) -> Dyadic {
        let bits = self.bits();
        if bits <= prec as u64 {
            return self.clone();
        }
        let shift = bits - prec as u64;
        let neg = self.man.is_negative();
        let mag = self.man.magnitude();
        let q = mag >> shift;
        let rem = mag - (&q << shift);
        let away = match (mode, neg) {
            (_, _) if rem.is_zero() => false,
            (Round::Down, false) | (Round::Up, true) => false,
            (Round::Down, true) | (Round::Up, false) => true,
            (Round::Nearest, _) => {
                let half = num_bigint::BigUint::one() << (shift - 1);
                rem > half || (rem == half && q.is_odd())
            }
        };
        let q = if away { q + 1u32 } else { q };
        let sign = if neg { Sign::Minus } else { Sign::Plus };
        Dyadic::new(BigInt::from_biguint(sign, q), self.exp + shift as i64)
    }

    /// Quotient rounded to `prec` bits in the given direction. `rhs` must be nonzero.
    pub fn div(&self, rhs: &Dyadic, prec: u32, mode: Round) -> Dyadic {
        assert!(!rhs.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return Dyadic::zero();
        }
        let neg = self.is_negative() != rhs.is_negative();
        let a = self.man.magnitude();
        let b = rhs.man.magnitude();
        // enough bits that the integer quotient carries prec + 2 significant bits
        let shift = (prec as i64 + 2 + b.bits() as i64 - a.bits() as i64).max(0) as u64;
        let (q, r) = (a << shift).div_rem(b);
        let exp = self.exp - rhs.exp - shift as i64;
        // q is truncated toward zero; a sticky bit below the last place keeps the
        // final rounding honest.
        let sticky = !r.is_zero();
        let q = (q << 1u32) + if sticky { 1u32 } else { 0u32 };
        let sign = if neg { Sign::Minus } else { Sign::Plus };
        Dyadic::new(BigInt::from_biguint(sign, q), exp - 1).round(prec, mode)
    }

    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.man << self.exp as u64)
        } else {
            BigRational::new(self.man.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    /// Directed rounding of an exact rational; also returns whether it was exact.
    pub fn from_rational(q: &BigRational, prec: u32, mode: Round) -> (Dyadic, bool) {
        let den = q.denom();
        if (den & (den - BigInt::one())).is_zero() {
            // power-of-two denominator: exactly representable
            let k = den.bits() as i64 - 1;
            let d = Dyadic::new(q.numer().clone(), -k);
            let r = d.round(prec, mode);
            let exact = r == d;
            return (r, exact);
        }
        let n = Dyadic::from_int(q.numer().clone());
        let d = Dyadic::from_int(den.clone());
        (n.div(&d, prec, mode), false)
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let r = self.round(60, Round::Nearest);
        let m = r.man.to_f64().unwrap_or(f64::NAN);
        let e = r.exp.clamp(-100_000, 100_000) as i32;
        if e.abs() > 2000 {
            return if e > 0 { m.signum() * f64::INFINITY } else { 0.0 };
        }
        m * 2f64.powi(e)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let d = self.sub(other);
        if d.is_zero() {
            Ordering::Equal
        } else if d.is_negative() {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*2^{}", self.man, self.exp)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(m: i64, e: i64) -> Dyadic {
        Dyadic::new(BigInt::from(m), e)
    }

    #[test]
    fn canonical_form() {
        assert_eq!(d(12, 0), d(3, 2));
        assert_eq!(d(0, 5), Dyadic::zero());
        assert_eq!(d(6, -1), d(3, 0));
    }

    #[test]
    fn exact_ring_ops() {
        assert_eq!(d(3, -2).add(&d(1, 0)), d(7, -2));
        assert_eq!(d(3, -2).sub(&d(3, -2)), Dyadic::zero());
        assert_eq!(d(-3, 1).mul(&d(5, -3)), d(-15, -2));
    }

    #[test]
    fn directed_rounding() {
        let x = d(0b10111, 0); // 23
        assert_eq!(x.round(3, Round::Down), d(0b101, 2)); // 20
        assert_eq!(x.round(3, Round::Up), d(0b110, 2)); // 24
        assert_eq!(x.round(3, Round::Nearest), d(0b110, 2));
        let y = x.neg();
        assert_eq!(y.round(3, Round::Down), d(-24, 0));
        assert_eq!(y.round(3, Round::Up), d(-20, 0));
    }

    #[test]
    fn division_brackets_the_quotient() {
        let one = Dyadic::one();
        let three = Dyadic::from_int(3);
        let lo = one.div(&three, 64, Round::Down);
        let hi = one.div(&three, 64, Round::Up);
        let third = BigRational::new(1.into(), 3.into());
        assert!(lo.to_rational() < third && third < hi.to_rational());
        assert!(hi.sub(&lo) <= Dyadic::pow2(-65));
        let neg = one.neg().div(&three, 64, Round::Down);
        assert!(neg.to_rational() < -third);
        // exact quotients stay exact
        assert_eq!(d(12, 0).div(&d(3, 0), 10, Round::Up), d(4, 0));
    }

    #[test]
    fn rational_embedding() {
        let (x, exact) = Dyadic::from_rational(&BigRational::new(5.into(), 8.into()), 64, Round::Nearest);
        assert!(exact);
        assert_eq!(x, d(5, -3));
        let (_, exact) = Dyadic::from_rational(&BigRational::new(1.into(), 3.into()), 64, Round::Nearest);
        assert!(!exact);
    }

    #[test]
    fn ordering_and_magnitude() {
        assert!(d(1, -1) < d(1, 0));
        assert!(d(-5, 0) < d(1, -10));
        assert_eq!(d(1, 0).magnitude_exp(), 1);
        assert_eq!(d(3, -3).magnitude_exp(), -1);
        assert!((d(1, -1).to_f64() - 0.5).abs() < 1e-18);
    }
}
