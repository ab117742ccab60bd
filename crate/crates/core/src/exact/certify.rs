//! Positivity certificates for polynomials on intervals.
//!
//! A certificate is a self-contained record: replaying it needs nothing but
//! its own fields. Failing to certify is not a disproof.

use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{cauchy_root_bound, count_roots, serde_rational, Anchor, ExactError, Polynomial};

/// Real interval with a finite lower end and a finite or infinite upper end.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    #[serde(with = "serde_rational")]
    pub lower: BigRational,
    pub lower_closed: bool,
    /// `None` is `+inf`.
    #[serde(with = "serde_rational::option")]
    pub upper: Option<BigRational>,
    pub upper_closed: bool,
}

impl Interval {
    /// `(lower, upper]`
    pub fn left_open(lower: BigRational, upper: BigRational) -> Self {
        Interval { lower, lower_closed: false, upper: Some(upper), upper_closed: true }
    }

    /// `[lower, upper]`
    pub fn closed(lower: BigRational, upper: BigRational) -> Self {
        Interval { lower, lower_closed: true, upper: Some(upper), upper_closed: true }
    }

    /// `[lower, +inf)`
    pub fn closed_ray(lower: BigRational) -> Self {
        Interval { lower, lower_closed: true, upper: None, upper_closed: false }
    }

    pub fn validate(&self) -> Result<(), ExactError> {
        match &self.upper {
            Some(b) if *b <= self.lower => {
                Err(ExactError::InvalidInterval(format!("empty or degenerate interval {self}")))
            }
            None if self.upper_closed => {
                Err(ExactError::InvalidInterval("an infinite end cannot be closed".into()))
            }
            _ => Ok(()),
        }
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        let above = if self.lower_closed { *x >= self.lower } else { *x > self.lower };
        let below = match &self.upper {
            None => true,
            Some(b) if self.upper_closed => x <= b,
            Some(b) => x < b,
        };
        above && below
    }

    /// `other` lies inside `self`.
    pub fn contains_interval(&self, other: &Interval) -> bool {
        let lower_ok = other.lower > self.lower
            || (other.lower == self.lower && (self.lower_closed || !other.lower_closed));
        let upper_ok = match (&self.upper, &other.upper) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some(a), Some(b)) => b < a || (a == b && (self.upper_closed || !other.upper_closed)),
        };
        lower_ok && upper_ok
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let open = if self.lower_closed { '[' } else { '(' };
        match &self.upper {
            Some(b) => {
                let close = if self.upper_closed { ']' } else { ')' };
                write!(f, "{open}{}, {b}{close}", self.lower)
            }
            None => write!(f, "{open}{}, inf)", self.lower),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Minorize by the constant-anchored companion and evaluate once at the right end.
    Companion,
    /// Count roots exactly with a Sturm sequence and sample one value.
    Roots,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateKind {
    CompanionEvaluation,
    RootIsolation,
    TrivialAllCoefficients,
}

/// Replayable evidence that a polynomial is positive on an interval.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignCertificate {
    pub kind: CertificateKind,
    pub polynomial: Polynomial,
    pub interval: Interval,
    #[serde(with = "serde_rational::option")]
    pub witness_point: Option<BigRational>,
    #[serde(with = "serde_rational::option")]
    pub witness_value: Option<BigRational>,
    /// Present for companion evaluations.
    pub companion: Option<Polynomial>,
    /// Present when the interval is unbounded: no root lies at or above it.
    #[serde(with = "serde_rational::option")]
    pub root_bound: Option<BigRational>,
    /// Factors `(u - lower)` removed before root counting; they are positive on
    /// an interval that is open at `lower`.
    pub stripped_factors: usize,
}

/// Certify `p(u) > 0` for every `u` in `(0, u_max]`.
pub fn certify_positive(
    p: &Polynomial,
    u_max: &BigRational,
    strategy: Strategy,
) -> Result<SignCertificate, ExactError> {
    if !u_max.is_positive() {
        return Err(ExactError::InvalidInterval(format!("u_max must be positive, got {u_max}")));
    }
    certify_positive_on(p, &Interval::left_open(BigRational::zero(), u_max.clone()), strategy)
}

fn all_coeffs_nonnegative(p: &Polynomial) -> bool {
    !p.is_zero() && p.coeffs().iter().all(|c| !c.is_negative())
}

fn trivially_positive(p: &Polynomial, interval: &Interval) -> bool {
    all_coeffs_nonnegative(p)
        && !interval.lower.is_negative()
        && (interval.lower.is_positive() || !interval.lower_closed || p.coeff(0).is_positive())
}

/// Certify `p > 0` on an arbitrary interval.
pub fn certify_positive_on(
    p: &Polynomial,
    interval: &Interval,
    strategy: Strategy,
) -> Result<SignCertificate, ExactError> {
    interval.validate()?;
    match strategy {
        Strategy::Companion => certify_by_companion(p, interval),
        Strategy::Roots => certify_by_roots(p, interval),
    }
}

fn certify_by_companion(p: &Polynomial, interval: &Interval) -> Result<SignCertificate, ExactError> {
    if interval.lower.is_negative() {
        return Err(ExactError::CannotCertify("companion bound needs u >= 0".into()));
    }
    if trivially_positive(p, interval) {
        let point = interval.upper.clone().unwrap_or_else(|| interval.lower.clone());
        return Ok(SignCertificate {
            kind: CertificateKind::TrivialAllCoefficients,
            polynomial: p.clone(),
            interval: interval.clone(),
            witness_value: Some(p.eval(&point)),
            witness_point: Some(point),
            companion: None,
            root_bound: None,
            stripped_factors: 0,
        });
    }
    let Some(upper) = interval.upper.clone() else {
        return Err(ExactError::CannotCertify("companion bound needs a bounded interval".into()));
    };
    let q = p
        .companion(Anchor::ConstantTerm)
        .map_err(|_| ExactError::CannotCertify("constant term is not positive".into()))?;
    let value = q.eval(&upper);
    if !value.is_positive() {
        return Err(ExactError::CannotCertify(format!(
            "companion is not positive at the right end {upper} (value {value})"
        )));
    }
    Ok(SignCertificate {
        kind: CertificateKind::CompanionEvaluation,
        polynomial: p.clone(),
        interval: interval.clone(),
        witness_point: Some(upper),
        witness_value: Some(value),
        companion: Some(q),
        root_bound: None,
        stripped_factors: 0,
    })
}

fn certify_by_roots(p: &Polynomial, interval: &Interval) -> Result<SignCertificate, ExactError> {
    if p.is_zero() {
        return Err(ExactError::CannotCertify("zero polynomial".into()));
    }
    let a = &interval.lower;
    let mut work = p.clone();
    let mut stripped = 0;
    if !interval.lower_closed {
        let linear = Polynomial::new(vec![-a, BigRational::from_integer(1.into())]);
        while work.eval(a).is_zero() {
            work = work.div_rem(&linear)?.0;
            stripped += 1;
        }
    }
    let at_lower = work.eval(a);
    if at_lower.is_zero() || (interval.lower_closed && at_lower.is_negative()) {
        return Err(ExactError::CannotCertify(format!("not positive at the left end {a}")));
    }
    let (right, root_bound) = match &interval.upper {
        Some(b) => (b.clone(), None),
        None => {
            let bound = cauchy_root_bound(&work);
            let b = if bound > *a { bound } else { a.clone() } + BigRational::from_integer(1.into());
            (b.clone(), Some(b))
        }
    };
    if !work.eval(&right).is_positive() {
        return Err(ExactError::CannotCertify(format!("not positive at the right end {right}")));
    }
    let roots = count_roots(&work, a, &right)
        .map_err(|e| ExactError::CannotCertify(format!("root counting failed: {e}")))?;
    if roots != 0 {
        return Err(ExactError::CannotCertify(format!("{roots} root(s) inside ({a}, {right})")));
    }
    let point = if interval.lower_closed { a.clone() } else { right };
    Ok(SignCertificate {
        kind: CertificateKind::RootIsolation,
        polynomial: p.clone(),
        interval: interval.clone(),
        witness_value: Some(p.eval(&point)),
        witness_point: Some(point),
        companion: None,
        root_bound,
        stripped_factors: stripped,
    })
}

fn replay_err(msg: impl Into<String>) -> ExactError {
    ExactError::ReplayFailed(msg.into())
}

impl SignCertificate {
    /// Re-run every check from the stored fields.
    pub fn replay(&self) -> Result<(), ExactError> {
        self.interval.validate()?;
        if let (Some(x), Some(v)) = (&self.witness_point, &self.witness_value) {
            let expect = match (&self.kind, &self.companion) {
                (CertificateKind::CompanionEvaluation, Some(q)) => q.eval(x),
                _ => self.polynomial.eval(x),
            };
            if expect != *v {
                return Err(replay_err("witness value does not match"));
            }
        }
        match self.kind {
            CertificateKind::TrivialAllCoefficients => {
                if !trivially_positive(&self.polynomial, &self.interval) {
                    return Err(replay_err("coefficients are not all nonnegative"));
                }
                Ok(())
            }
            CertificateKind::CompanionEvaluation => {
                let q = self.companion.as_ref().ok_or_else(|| replay_err("missing companion"))?;
                if *q != self.polynomial.companion(Anchor::ConstantTerm)? {
                    return Err(replay_err("companion does not match the polynomial"));
                }
                if q.coeffs().iter().skip(1).any(Signed::is_positive) {
                    return Err(replay_err("companion is not non-increasing"));
                }
                if self.interval.lower.is_negative() {
                    return Err(replay_err("interval leaves u >= 0"));
                }
                let upper = self.interval.upper.as_ref().ok_or_else(|| replay_err("unbounded"))?;
                if self.witness_point.as_ref() != Some(upper) {
                    return Err(replay_err("witness point is not the right end"));
                }
                match &self.witness_value {
                    Some(v) if v.is_positive() => Ok(()),
                    _ => Err(replay_err("witness value is not positive")),
                }
            }
            CertificateKind::RootIsolation => {
                let again = certify_by_roots(&self.polynomial, &self.interval)
                    .map_err(|e| replay_err(e.to_string()))?;
                if again != *self {
                    return Err(replay_err("recomputed certificate differs"));
                }
                Ok(())
            }
        }
    }

    /// Independent oracle: the Sturm route also certifies the same interval.
    pub fn sturm_agrees(&self) -> bool {
        certify_by_roots(&self.polynomial, &self.interval).is_ok()
    }
}
