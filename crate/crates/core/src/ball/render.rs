//! Decimal rendering. The separator is always `.`; radii are printed in
//! scientific notation and rounded up so the printed bound stays valid.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Ball, Dyadic};

fn pow10(k: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), k as usize)
}

fn fixed(scaled: &BigInt, digits: u32) -> String {
    let neg = scaled.is_negative();
    let s = scaled.abs().to_string();
    let d = digits as usize;
    let s = if s.len() <= d { format!("{}{}", "0".repeat(d + 1 - s.len()), s) } else { s };
    let (int, frac) = s.split_at(s.len() - d);
    let sign = if neg { "-" } else { "" };
    if d == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

/// `q` to `digits` places, round half away from zero.
pub fn rational_to_decimal(q: &BigRational, digits: u32) -> String {
    let scaled = q * BigRational::from_integer(pow10(digits));
    let r = scaled.abs() + BigRational::new(BigInt::one(), BigInt::from(2));
    let mut n = r.floor().to_integer();
    if scaled.is_negative() {
        n = -n;
    }
    fixed(&n, digits)
}

/// `q` to `digits` places, truncated toward zero.
pub fn rational_truncated(q: &BigRational, digits: u32) -> String {
    let scaled = q * BigRational::from_integer(pow10(digits));
    fixed(&scaled.trunc().to_integer(), digits)
}

/// Upper bound of a nonnegative rational in the form `d.de±x`.
pub fn scientific_upper(q: &BigRational) -> String {
    if q.is_zero() {
        return "0".into();
    }
    debug_assert!(q.is_positive());
    // estimate the decimal exponent, then correct it exactly
    let est = q.numer().bits() as f64 - q.denom().bits() as f64;
    let mut e10 = (est * std::f64::consts::LOG10_2).floor() as i64;
    let scale = |e: i64| -> BigRational {
        if e >= 0 {
            BigRational::from_integer(pow10(e as u32))
        } else {
            BigRational::new(BigInt::one(), pow10((-e) as u32))
        }
    };
    while q >= &scale(e10 + 1) {
        e10 += 1;
    }
    while q < &scale(e10) {
        e10 -= 1;
    }
    // mantissa with two significant digits, rounded up
    let m = (q / scale(e10 - 1)).ceil().to_integer();
    let (m, e10) = if m >= BigInt::from(100) { (m.div_ceil(&BigInt::from(10)), e10 + 1) } else { (m, e10) };
    let ms = m.to_string();
    format!("{}.{}e{}", &ms[..1], &ms[1..], e10)
}

impl Dyadic {
    pub fn to_decimal(&self, digits: u32) -> String {
        rational_to_decimal(&self.to_rational(), digits)
    }
}

impl Ball {
    /// Midpoint to `digits` decimal places, round to nearest.
    pub fn mid_decimal(&self, digits: u32) -> String {
        self.mid().to_decimal(digits)
    }

    /// Midpoint truncated to `digits` places: `0.3359...` rather than `0.3360`.
    pub fn mid_truncated(&self, digits: u32) -> String {
        rational_truncated(&self.mid().to_rational(), digits)
    }

    pub fn rad_scientific(&self) -> String {
        scientific_upper(&self.rad().to_rational())
    }

    /// `"0.3359 ± 1.2e-40"`
    pub fn to_decimal_string(&self, digits: u32) -> String {
        format!("{} ± {}", self.mid_decimal(digits), self.rad_scientific())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn fixed_point_rendering() {
        assert_eq!(rational_to_decimal(&rat(1, 3), 4), "0.3333");
        assert_eq!(rational_to_decimal(&rat(2, 3), 4), "0.6667");
        assert_eq!(rational_to_decimal(&rat(-2, 3), 2), "-0.67");
        assert_eq!(rational_to_decimal(&rat(5, 1), 0), "5");
        assert_eq!(rational_to_decimal(&rat(1, 200), 2), "0.01");
        assert_eq!(rational_truncated(&rat(51176, 100000), 4), "0.5117");
        assert_eq!(rational_to_decimal(&rat(51176, 100000), 4), "0.5118");
    }

    #[test]
    fn scientific_is_an_upper_bound() {
        assert_eq!(scientific_upper(&rat(1, 1000)), "1.0e-3");
        assert_eq!(scientific_upper(&rat(1234, 1)), "1.3e3");
        assert_eq!(scientific_upper(&rat(999, 1000)), "1.0e0");
        assert_eq!(scientific_upper(&rat(1, 3)), "3.4e-1");
        assert_eq!(scientific_upper(&rat(0, 1)), "0");
    }

    #[test]
    fn ball_string_uses_period() {
        let b = Ball::from_rational(&rat(1, 3), 64);
        let s = b.to_decimal_string(4);
        assert!(s.starts_with("0.3333 ± "), "{s}");
        assert!(!s.contains(','));
    }
}
