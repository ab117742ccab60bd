//! The correction term `theta_n`, the normalised factorial `a_n` and the
//! rational envelopes around `theta_n`.
//!
//! `theta_n` is evaluated from the inverted formula
//!
//! ```text
//! theta_n = 30 ((n! / (sqrt(pi) (n/e)^n))^6 - 8n^3 - 4n^2 - n)
//! ```
//!
//! in this order: `n!` as an exact product rounded once, `sqrt(pi)`,
//! `(n/e)^n = exp(n (ln n - 1))`, the quotient, its sixth power, the exact
//! integer subtraction and the final scaling by 30. The subtraction cancels
//! about `log2(8n^3) = 3 + 3 log2 n` leading bits, so [`theta_at`] raises its
//! working precision by that amount on top of the requested bits.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::ball::{
    certified_less, certified_less_than_rational, certified_rational_less_than, const_pi, factorial,
    refine_until, Ball, BallError, Certified, PrecisionPolicy,
};
use crate::exact::{int, rat};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RamanujanError {
    #[error("n must be at least 1")]
    ZeroIndex,
    #[error(transparent)]
    Ball(#[from] BallError),
    #[error("staircase check at n = {0}: witness sign and envelope order disagree")]
    Inconsistent(u64),
}

fn check_index(n: u64) -> Result<(), RamanujanError> {
    if n == 0 {
        Err(RamanujanError::ZeroIndex)
    } else {
        Ok(())
    }
}

fn bit_len(n: u64) -> u32 {
    64 - n.leading_zeros()
}

/// `(n/e)^n` as `exp(n (ln n - 1))`.
fn n_over_e_pow(n: u64, prec: u32) -> Result<Ball, BallError> {
    let nb = Ball::from_int(n, prec);
    let t = &nb.ln()? - &Ball::from_int(1, prec);
    (&nb * &t).exp()
}

/// `8n^3 + 4n^2 + n` as an exact integer.
pub fn sextic_polynomial(n: u64) -> BigInt {
    let n = BigInt::from(n);
    BigInt::from(8) * &n * &n * &n + BigInt::from(4) * &n * &n + n
}

/// Enclosure of `theta_n` from a single evaluation at `bits` bits plus the
/// cancellation allowance.
pub fn theta_at(n: u64, bits: u32) -> Result<Ball, RamanujanError> {
    check_index(n)?;
    let w = bits + 3 * bit_len(n) + 8;
    let f = factorial(n, w);
    let denom = &const_pi(w).sqrt()? * &n_over_e_pow(n, w)?;
    let q = f.try_div(&denom)?;
    let six = q.pow_int(6)?;
    let diff = &six - &Ball::from_int(sextic_polynomial(n), w);
    Ok((&diff * &Ball::from_int(30, w)).set_prec(bits))
}

/// Radius of `theta` returned by [`theta`] when no target is given.
pub fn default_radius() -> BigRational {
    rat(1, 1_000_000_000_000_000_000)
}

/// `theta_n` refined until its radius is below `radius`.
pub fn theta_within(n: u64, policy: &PrecisionPolicy, radius: &BigRational) -> Result<Ball, RamanujanError> {
    check_index(n)?;
    Ok(refine_until(policy, |bits| theta_at(n, bits).map_err(as_ball_error), |b| {
        (b.rad().to_rational() < *radius).then(|| b.clone())
    })?
    .value)
}

/// `theta_n` to radius below 10^-18.
pub fn theta(n: u64, policy: &PrecisionPolicy) -> Result<Ball, RamanujanError> {
    theta_within(n, policy, &default_radius())
}

/// `a_n = n! / (sqrt(n) (n/e)^n)` at `bits` bits.
pub fn a_n_at(n: u64, bits: u32) -> Result<Ball, RamanujanError> {
    check_index(n)?;
    let w = bits + 8;
    let f = factorial(n, w);
    let denom = &Ball::from_int(n, w).sqrt()? * &n_over_e_pow(n, w)?;
    Ok(f.try_div(&denom)?.set_prec(bits))
}

pub fn a_n_within(n: u64, policy: &PrecisionPolicy, radius: &BigRational) -> Result<Ball, RamanujanError> {
    check_index(n)?;
    Ok(refine_until(policy, |bits| a_n_at(n, bits).map_err(as_ball_error), |b| {
        (b.rad().to_rational() < *radius).then(|| b.clone())
    })?
    .value)
}

pub fn a_n(n: u64, policy: &PrecisionPolicy) -> Result<Ball, RamanujanError> {
    a_n_within(n, policy, &default_radius())
}

/// `a_inf = sqrt(2 pi)`.
pub fn a_infinity(bits: u32) -> Result<Ball, BallError> {
    const_pi(bits).mul_pow2(1).sqrt()
}

fn as_ball_error(e: RamanujanError) -> BallError {
    match e {
        RamanujanError::Ball(b) => b,
        other => BallError::Domain(other.to_string()),
    }
}

/// `(alpha_n, beta_n) = (1 - 11/(8n) + 5/(8n^2), 1 - 11/(8n) + 11/(8n^2))`.
pub fn hirschhorn_bounds(n: u64) -> (BigRational, BigRational) {
    let n = BigInt::from(n);
    let n2 = &n * &n;
    let base = BigRational::one() - BigRational::new(BigInt::from(11), BigInt::from(8) * &n);
    let alpha = &base + BigRational::new(BigInt::from(5), BigInt::from(8) * &n2);
    let beta = base + BigRational::new(BigInt::from(11), BigInt::from(8) * n2);
    (alpha, beta)
}

/// `1 - 3/(2n)`.
pub fn weak_lower(n: u64) -> BigRational {
    BigRational::one() - BigRational::new(BigInt::from(3), BigInt::from(2) * BigInt::from(n))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StaircaseCheck {
    pub n: u64,
    pub holds: bool,
    /// `5n^2 - 11n - 11`
    #[serde(with = "crate::exact::serde_rational")]
    pub witness: BigRational,
    #[serde(with = "crate::exact::serde_rational")]
    pub beta_n: BigRational,
    #[serde(with = "crate::exact::serde_rational")]
    pub alpha_next: BigRational,
}

/// `beta_n <= alpha_{n+1}`, decided both by the sign of `5n^2 - 11n - 11`
/// and by comparing the two rationals.
pub fn staircase_check(n: u64) -> Result<StaircaseCheck, RamanujanError> {
    check_index(n)?;
    let nn = int(n as i64);
    let witness = int(5) * &nn * &nn - int(11) * &nn - int(11);
    let (_, beta_n) = hirschhorn_bounds(n);
    let (alpha_next, _) = hirschhorn_bounds(n + 1);
    let by_witness = !witness.is_negative();
    let by_order = beta_n <= alpha_next;
    if by_witness != by_order {
        return Err(RamanujanError::Inconsistent(n));
    }
    Ok(StaircaseCheck { n, holds: by_order, witness, beta_n, alpha_next })
}

fn decide<F>(policy: &PrecisionPolicy, n: u64, mut f: F) -> Result<Certified, RamanujanError>
where
    F: FnMut(&Ball) -> Certified,
{
    check_index(n)?;
    Ok(refine_until(policy, |bits| theta_at(n, bits).map_err(as_ball_error), |b| {
        let c = f(b);
        c.is_decided().then_some(c)
    })?
    .value)
}

/// `theta_n >= 1 - 3/(2n)`, proven strictly.
pub fn weak_lower_check(n: u64, policy: &PrecisionPolicy) -> Result<Certified, RamanujanError> {
    let w = weak_lower(n);
    decide(policy, n, |t| certified_rational_less_than(&w, t))
}

/// `alpha_n < theta_n < beta_n`.
pub fn sandwich_check(n: u64, policy: &PrecisionPolicy) -> Result<Certified, RamanujanError> {
    let (alpha, beta) = hirschhorn_bounds(n);
    decide(policy, n, |t| {
        match (certified_rational_less_than(&alpha, t), certified_less_than_rational(t, &beta)) {
            (Certified::True, Certified::True) => Certified::True,
            (Certified::False, _) | (_, Certified::False) => Certified::False,
            _ => Certified::Undecided,
        }
    })
}

/// `3/10 < theta_n < 1`.
pub fn bracket_check(n: u64, policy: &PrecisionPolicy) -> Result<Certified, RamanujanError> {
    let lo = rat(3, 10);
    let hi = int(1);
    decide(policy, n, |t| {
        match (certified_rational_less_than(&lo, t), certified_less_than_rational(t, &hi)) {
            (Certified::True, Certified::True) => Certified::True,
            (Certified::False, _) | (_, Certified::False) => Certified::False,
            _ => Certified::Undecided,
        }
    })
}

/// `theta_n < theta_{n+1}`.
pub fn monotone_check(n: u64, policy: &PrecisionPolicy) -> Result<Certified, RamanujanError> {
    check_index(n)?;
    Ok(refine_until(
        policy,
        |bits| Ok((theta_at(n, bits).map_err(as_ball_error)?, theta_at(n + 1, bits).map_err(as_ball_error)?)),
        |(a, b)| {
            let c = certified_less(a, b);
            c.is_decided().then_some(c)
        },
    )?
    .value)
}

/// `1/(2n) - 1/(60n^3)`
pub fn corollary_exponent(n: u64) -> BigRational {
    let n = BigInt::from(n);
    BigRational::new(BigInt::one(), BigInt::from(2) * &n)
        - BigRational::new(BigInt::one(), BigInt::from(60) * &n * &n * &n)
}

/// Both sides of `a_n^6 >= 8 pi^3 exp(1/(2n) - 1/(60n^3))` at `bits` bits.
pub fn corollary_sides(n: u64, bits: u32) -> Result<(Ball, Ball), RamanujanError> {
    let lhs = a_n_at(n, bits)?.pow_int(6)?;
    let pi3 = const_pi(bits).pow_int(3)?.mul_pow2(3);
    let rhs = &pi3 * &Ball::from_rational(&corollary_exponent(n), bits).exp()?;
    Ok((lhs, rhs))
}

/// `a_n^6 > 8 pi^3 exp(1/(2n) - 1/(60n^3))`.
pub fn corollary_check(n: u64, policy: &PrecisionPolicy) -> Result<Certified, RamanujanError> {
    check_index(n)?;
    Ok(refine_until(policy, |bits| corollary_sides(n, bits).map_err(as_ball_error), |(l, r)| {
        let c = certified_less(r, l);
        c.is_decided().then_some(c)
    })?
    .value)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaRecord {
    pub n: u64,
    pub theta: Ball,
    pub alpha: BigRational,
    pub beta: BigRational,
    pub weak_lower: BigRational,
}

impl ThetaRecord {
    pub fn new(n: u64, theta: Ball) -> Self {
        let (alpha, beta) = hirschhorn_bounds(n);
        ThetaRecord { n, theta, alpha, beta, weak_lower: weak_lower(n) }
    }

    /// Whether the stored enclosure already proves `alpha < theta < beta`.
    pub fn sandwich_certified(&self) -> bool {
        certified_rational_less_than(&self.alpha, &self.theta).is_true()
            && certified_less_than_rational(&self.theta, &self.beta).is_true()
    }
}

pub fn theta_record(n: u64, policy: &PrecisionPolicy) -> Result<ThetaRecord, RamanujanError> {
    Ok(ThetaRecord::new(n, theta(n, policy)?))
}
