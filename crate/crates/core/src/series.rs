//! Taylor truncations of `ln(1+x)` and `e^x` used as one-sided bounds.
//!
//! Each bound is data: the polynomial, the direction of the inequality and the
//! interval on which it holds. Proof steps cite bounds by tag, and substituting
//! outside `valid_on` is rejected.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::ball::{Ball, BallError};
use crate::exact::{Interval, Polynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundTag {
    /// `ln(1+x) <= x - x^2/2 + x^3/3 - x^4/4 + x^5/5`
    LnUpperDeg5,
    /// `ln(1+x) <= x - x^2/2 + ... + x^7/7`
    LnUpperDeg7,
    /// `ln(1+x) >= x - x^2/2 + ... + x^7/7 - x^8/8`
    LnLowerDeg8,
    /// `e^x >= 1 + x + x^2/2! + x^3/3! + x^4/4!`
    ExpLowerDeg4,
}

impl BoundTag {
    pub const ALL: [BoundTag; 4] =
        [BoundTag::LnUpperDeg5, BoundTag::LnUpperDeg7, BoundTag::LnLowerDeg8, BoundTag::ExpLowerDeg4];

    pub fn as_str(self) -> &'static str {
        match self {
            BoundTag::LnUpperDeg5 => "ln-upper-deg5",
            BoundTag::LnUpperDeg7 => "ln-upper-deg7",
            BoundTag::LnLowerDeg8 => "ln-lower-deg8",
            BoundTag::ExpLowerDeg4 => "exp-lower-deg4",
        }
    }
}

impl fmt::Display for BoundTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    /// `f(x) <= poly(x)`
    Upper,
    /// `f(x) >= poly(x)`
    Lower,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Function {
    /// `ln(1 + x)`
    Ln1p,
    Exp,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaylorBound {
    pub tag: BoundTag,
    pub function: Function,
    pub poly: Polynomial,
    pub direction: Direction,
    pub valid_on: Interval,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundCheck {
    Holds,
    Fails,
    Undecided,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("{x} is outside the validity domain {domain} of {tag}")]
    Domain { tag: BoundTag, x: BigRational, domain: Box<Interval> },
    #[error(transparent)]
    Ball(#[from] BallError),
}

/// `sum_{k=1}^{degree} (-1)^(k+1) x^k / k`
fn log_truncation(degree: usize) -> Polynomial {
    let mut coeffs = vec![BigRational::zero()];
    for k in 1..=degree {
        let sign = if k % 2 == 1 { 1 } else { -1 };
        coeffs.push(BigRational::new(BigInt::from(sign), BigInt::from(k)));
    }
    Polynomial::new(coeffs)
}

/// `sum_{k=0}^{degree} x^k / k!`
fn exp_truncation(degree: usize) -> Polynomial {
    let mut coeffs = Vec::with_capacity(degree + 1);
    let mut fact = BigInt::one();
    for k in 0..=degree {
        if k > 0 {
            fact *= k;
        }
        coeffs.push(BigRational::new(BigInt::one(), fact.clone()));
    }
    Polynomial::new(coeffs)
}

fn ln_domain() -> Interval {
    // (-1, 1]
    Interval::left_open(-BigRational::one(), BigRational::one())
}

/// The immutable bound object for `tag`.
pub fn bound(tag: BoundTag) -> TaylorBound {
    match tag {
        BoundTag::LnUpperDeg5 => TaylorBound {
            tag,
            function: Function::Ln1p,
            poly: log_truncation(5),
            direction: Direction::Upper,
            valid_on: ln_domain(),
        },
        BoundTag::LnUpperDeg7 => TaylorBound {
            tag,
            function: Function::Ln1p,
            poly: log_truncation(7),
            direction: Direction::Upper,
            valid_on: ln_domain(),
        },
        // For -1 < x < 0 every term of the series is negative, so the even
        // truncation lies above ln(1+x); the lower bound only holds on [0, 1].
        BoundTag::LnLowerDeg8 => TaylorBound {
            tag,
            function: Function::Ln1p,
            poly: log_truncation(8),
            direction: Direction::Lower,
            valid_on: Interval::closed(BigRational::zero(), BigRational::one()),
        },
        // The degree-4 remainder x^5 e^xi / 120 is negative for x < 0.
        BoundTag::ExpLowerDeg4 => TaylorBound {
            tag,
            function: Function::Exp,
            poly: exp_truncation(4),
            direction: Direction::Lower,
            valid_on: Interval::closed_ray(BigRational::zero()),
        },
    }
}

impl TaylorBound {
    /// The function value at `x`, enclosed at `precision` bits.
    pub fn enclose(&self, x: &BigRational, precision: u32) -> Result<Ball, BallError> {
        match self.function {
            Function::Ln1p => Ball::from_rational(&(BigRational::one() + x), precision).ln(),
            Function::Exp => Ball::from_rational(x, precision).exp(),
        }
    }

    /// Compare the polynomial against a certified enclosure of the function at `x`.
    pub fn check_at(&self, x: &BigRational, precision: u32) -> Result<BoundCheck, SeriesError> {
        if !self.valid_on.contains(x) {
            return Err(SeriesError::Domain { tag: self.tag, x: x.clone(), domain: Box::new(self.valid_on.clone()) });
        }
        let p = self.poly.eval(x);
        let f = self.enclose(x, precision)?;
        let lo = f.lower().to_rational();
        let hi = f.upper().to_rational();
        Ok(match self.direction {
            Direction::Upper if hi <= p => BoundCheck::Holds,
            Direction::Upper if lo > p => BoundCheck::Fails,
            Direction::Lower if lo >= p => BoundCheck::Holds,
            Direction::Lower if hi < p => BoundCheck::Fails,
            _ => BoundCheck::Undecided,
        })
    }
}

pub fn check_bound_at(tag: BoundTag, x: &BigRational, precision: u32) -> Result<BoundCheck, SeriesError> {
    bound(tag).check_at(x, precision)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    #[test]
    fn coefficients() {
        let b = bound(BoundTag::LnUpperDeg5);
        assert_eq!(
            b.poly.coeffs(),
            &[int(0), int(1), rat(-1, 2), rat(1, 3), rat(-1, 4), rat(1, 5)]
        );
        let b = bound(BoundTag::LnLowerDeg8);
        assert_eq!(b.poly.degree(), Some(8));
        assert_eq!(b.poly.leading_coeff(), Some(&rat(-1, 8)));
        assert_eq!(bound(BoundTag::ExpLowerDeg4).poly.eval(&int(0)), int(1));
        assert_eq!(bound(BoundTag::ExpLowerDeg4).poly.coeff(3), rat(1, 6));
    }

    #[test]
    fn alternating_structure() {
        for (tag, deg) in [(BoundTag::LnUpperDeg5, 5), (BoundTag::LnUpperDeg7, 7), (BoundTag::LnLowerDeg8, 8)] {
            let p = bound(tag).poly;
            assert_eq!(p.degree(), Some(deg));
            for k in 1..=deg {
                let sign = if k % 2 == 1 { 1 } else { -1 };
                assert_eq!(p.coeff(k), rat(sign, k as i64));
            }
        }
    }

    #[test]
    fn exp_coefficients_below_taylor() {
        let p = bound(BoundTag::ExpLowerDeg4).poly;
        let mut fact = 1i64;
        for k in 0..12usize {
            if k > 0 {
                fact *= k as i64;
            }
            assert!(p.coeff(k) <= rat(1, fact));
        }
    }

    #[test]
    fn checks_at_one() {
        // 47/60 >= ln 2
        assert_eq!(bound(BoundTag::LnUpperDeg5).poly.eval(&int(1)), rat(47, 60));
        assert_eq!(check_bound_at(BoundTag::LnUpperDeg5, &int(1), 64), Ok(BoundCheck::Holds));
        assert_eq!(check_bound_at(BoundTag::LnLowerDeg8, &int(1), 64), Ok(BoundCheck::Holds));
        assert_eq!(check_bound_at(BoundTag::ExpLowerDeg4, &int(0), 32), Ok(BoundCheck::Holds));
    }

    #[test]
    fn domain_is_enforced() {
        assert!(matches!(
            check_bound_at(BoundTag::LnUpperDeg7, &int(2), 64),
            Err(SeriesError::Domain { .. })
        ));
        assert!(matches!(
            check_bound_at(BoundTag::LnUpperDeg5, &int(-1), 64),
            Err(SeriesError::Domain { .. })
        ));
        assert!(matches!(
            check_bound_at(BoundTag::ExpLowerDeg4, &rat(-1, 2), 64),
            Err(SeriesError::Domain { .. })
        ));
    }

    #[test]
    fn degree8_lower_bound_fails_for_negative_x() {
        // why valid_on stops at 0: at x = -1/2 the truncation sits above ln(1/2)
        let mut b = bound(BoundTag::LnLowerDeg8);
        b.valid_on = ln_domain();
        assert_eq!(b.check_at(&rat(-1, 2), 128), Ok(BoundCheck::Fails));
        let mut e = bound(BoundTag::ExpLowerDeg4);
        e.valid_on = Interval::closed_ray(int(-100));
        assert_eq!(e.check_at(&int(-1), 128), Ok(BoundCheck::Fails));
    }

    #[test]
    fn upper_bounds_hold_on_negative_side() {
        for tag in [BoundTag::LnUpperDeg5, BoundTag::LnUpperDeg7] {
            assert_eq!(check_bound_at(tag, &rat(-9, 10), 128), Ok(BoundCheck::Holds));
        }
    }
}
