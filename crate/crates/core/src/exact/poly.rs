use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{serde_rational, ExactError};

/// Dense univariate polynomial over the rationals. `coeffs[k]` multiplies `u^k`.
///
/// The coefficient list never ends in a zero, so the zero polynomial is the
/// empty list and structural equality is mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<BigRational>,
}

/// Which term of a polynomial is kept as the positive anchor of a companion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Anchor {
    ConstantTerm,
    LeadingTerm,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    /// The formal variable `u`.
    pub fn x() -> Self {
        Self::monomial(BigRational::one(), 1)
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: BigRational, degree: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    /// Coefficients given as `(numerator, denominator)` pairs, lowest degree first.
    pub fn from_ratios(coeffs: &[(i64, i64)]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigRational> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    /// Horner evaluation, exact.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// `self(inner(u))`, by Horner's scheme over polynomials.
    pub fn compose(&self, inner: &Polynomial) -> Polynomial {
        self.coeffs
            .iter()
            .rev()
            .fold(Polynomial::zero(), |acc, c| {
                &(&acc * inner) + &Polynomial::constant(c.clone())
            })
    }

    pub fn derivative(&self) -> Polynomial {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, mut k: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiply by `u^k`.
    pub fn shift_up(&self, k: usize) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![BigRational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    /// Split off the largest power of `u` dividing `self`: returns `(k, self / u^k)`.
    pub fn split_low_power(&self) -> (usize, Polynomial) {
        let k = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if self.is_zero() {
            return (0, Polynomial::zero());
        }
        (k, Polynomial { coeffs: self.coeffs[k..].to_vec() })
    }

    /// `u^n self(1/u)` for `n = deg self`; the coefficient list reversed.
    pub fn reversed(&self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().rev().cloned().collect())
    }

    /// Keep only the terms of degree `<= max_degree`.
    pub fn truncate(&self, max_degree: usize) -> Polynomial {
        Polynomial::new(self.coeffs.iter().take(max_degree + 1).cloned().collect())
    }

    /// Euclidean division over the rationals.
    pub fn div_rem(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial), ExactError> {
        let dlead = divisor.leading_coeff().ok_or(ExactError::DivisionByZero)?;
        let ddeg = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= ddeg {
            return Ok((Polynomial::zero(), self.clone()));
        }
        let mut quot = vec![BigRational::zero(); rem.len() - ddeg];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + ddeg] / dlead;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * d;
            }
            quot[i] = c;
        }
        rem.truncate(ddeg);
        Ok((Polynomial::new(quot), Polynomial::new(rem)))
    }

    /// Pseudo-remainder `lc(b)^(deg a - deg b + 1) a mod b`.
    pub(crate) fn pseudo_rem(&self, divisor: &Polynomial) -> Result<Polynomial, ExactError> {
        let dlead = divisor.leading_coeff().ok_or(ExactError::DivisionByZero)?;
        let (Some(a_deg), Some(b_deg)) = (self.degree(), divisor.degree()) else {
            return Ok(self.clone());
        };
        if a_deg < b_deg {
            return Ok(self.clone());
        }
        let factor = num_traits::pow(dlead.clone(), a_deg - b_deg + 1);
        Ok(self.scale(&factor).div_rem(divisor)?.1)
    }

    /// Scale to leading coefficient one. The zero polynomial stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            Some(lc) => self.scale(&lc.recip()),
            None => Polynomial::zero(),
        }
    }

    /// Write `self = content * primitive` where `primitive` has coprime integer
    /// coefficients and `content > 0`.
    pub fn primitive_part(&self) -> (BigRational, Polynomial) {
        if self.is_zero() {
            return (BigRational::one(), Polynomial::zero());
        }
        let den_lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num_gcd = self
            .coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(&(c.numer() * (&den_lcm / c.denom()))));
        let content = BigRational::new(num_gcd, den_lcm);
        let primitive = self.scale(&content.recip());
        (content, primitive)
    }

    /// `Q = anchor term + every negative-coefficient term of self`.
    ///
    /// For `u >= 0` the dropped terms are nonnegative, so `Q(u) <= self(u)`.
    /// With the constant anchor every non-constant coefficient of `Q` is
    /// nonpositive and `Q` is non-increasing on `u > 0`.
    pub fn companion(&self, anchor: Anchor) -> Result<Polynomial, ExactError> {
        let anchor_index = match anchor {
            Anchor::ConstantTerm => 0,
            Anchor::LeadingTerm => self.degree().ok_or(ExactError::AnchorNotPositive)?,
        };
        if !self.coeff(anchor_index).is_positive() {
            return Err(ExactError::AnchorNotPositive);
        }
        Ok(Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| {
                    if k == anchor_index || c.is_negative() {
                        c.clone()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect(),
        ))
    }

    /// Render with the given variable name, highest degree first.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let show_coeff = k == 0 || !mag.is_one();
            if show_coeff {
                out.push_str(&mag.to_string());
            }
            match k {
                0 => {}
                1 => out.push_str(var),
                _ => out.push_str(&format!("{var}^{k}")),
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("u"))
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serde_rational::vec::serialize(&self.coeffs, s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        serde_rational::vec::deserialize(d).map(Polynomial::new)
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    #[test]
    fn add_cancels_and_trims() {
        assert_eq!(&p(&[1, 1]) + &p(&[1, -1]), p(&[2]));
        let q = p(&[3, 0, 5]);
        assert_eq!(&q + &Polynomial::zero(), q);
        assert_eq!(&p(&[0, 0, 1]) + &p(&[0, 0, 3]), p(&[0, 0, 4]));
        assert!((&q - &q).is_zero());
    }

    #[test]
    fn mul_expands_and_matches_repeated_product() {
        let one_plus_u = p(&[1, 1]);
        let cube = one_plus_u.pow(3);
        let prod = &cube * &p(&[2, 1]);
        assert_eq!(prod, p(&[2, 7, 9, 5, 1]));
        // oracle: multiply by (1+u) one factor at a time
        let mut step = p(&[2, 1]);
        for _ in 0..3 {
            step = &step * &one_plus_u;
        }
        assert_eq!(step, prod);
        assert_eq!(prod.degree(), Some(4));
        assert_eq!(&prod * &Polynomial::one(), prod);
        assert!((&prod * &Polynomial::zero()).is_zero());
    }

    #[test]
    fn compose_binomial_expansion() {
        let inner = Polynomial::from_ratios(&[(0, 1), (1, 2), (0, 1), (-1, 60)]);
        let sq = p(&[0, 0, 1]).compose(&inner);
        // (u/2 - u^3/60)^2 = u^2/4 - u^4/60 + u^6/3600
        let expected =
            Polynomial::from_ratios(&[(0, 1), (0, 1), (1, 4), (0, 1), (-1, 60), (0, 1), (1, 3600)]);
        assert_eq!(sq, expected);
        let q = p(&[4, -3, 0, 2]);
        assert_eq!(q.compose(&Polynomial::x()), q);
    }

    #[test]
    fn eval_values() {
        let bracket = p(&[20, 0, -561, -1455, -1215, -315]);
        let v = bracket.eval(&rat(1, 7));
        assert_eq!(v, rat(63602, 16807));
        assert_eq!(v, rat(1298, 343));
        assert_eq!(p(&[5, -20, -2]).eval(&rat(1, 5)), rat(23, 25));
        assert_eq!(p(&[-11, -11, 5]).eval(&int(3)), int(1));
    }

    #[test]
    fn companion_cases() {
        let q = p(&[20, 0, -561, 7, 0, -315]);
        assert_eq!(q.companion(Anchor::ConstantTerm).unwrap(), p(&[20, 0, -561, 0, 0, -315]));
        assert_eq!(p(&[0, 0, 4, 1]).companion(Anchor::LeadingTerm).unwrap(), p(&[0, 0, 0, 1]));
        assert_eq!(p(&[-1, 1]).companion(Anchor::ConstantTerm), Err(ExactError::AnchorNotPositive));
        assert_eq!(Polynomial::zero().companion(Anchor::LeadingTerm), Err(ExactError::AnchorNotPositive));
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = p(&[-1, 0, 0, 2, 7]);
        let b = p(&[3, 1, 2]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree().unwrap() < b.degree().unwrap());
        assert_eq!(a.div_rem(&Polynomial::zero()), Err(ExactError::DivisionByZero));
    }

    #[test]
    fn primitive_part_is_integral() {
        let q = Polynomial::from_ratios(&[(1, 6), (-2, 3), (5, 4)]);
        let (c, prim) = q.primitive_part();
        assert_eq!(c, rat(1, 12));
        assert_eq!(prim, p(&[2, -8, 15]));
    }

    #[test]
    fn display_reads_naturally() {
        assert_eq!(p(&[-11, -11, 5]).display_in("n"), "5n^2 - 11n - 11");
        assert_eq!(Polynomial::from_ratios(&[(0, 1), (1, 2)]).to_string(), "1/2u");
        assert_eq!(Polynomial::zero().to_string(), "0");
    }

    #[test]
    fn reversal_and_low_power() {
        let q = p(&[0, 0, 3, 1]);
        let (k, rest) = q.split_low_power();
        assert_eq!(k, 2);
        assert_eq!(rest, p(&[3, 1]));
        assert_eq!(p(&[1, 2, 3]).reversed(), p(&[3, 2, 1]));
    }
}
