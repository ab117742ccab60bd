//! Witnesses: the data a proof step keeps so that its check can be re-run
//! from the report alone.

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::ball::{certified_less, const_e, refine_until, Ball, BallError, Certified, PrecisionPolicy};
use crate::exact::{
    certify_positive_on, serde_rational, Anchor, Interval, Polynomial, RationalFunction, SignCertificate, Strategy,
};
use crate::ramanujan::{a_n_at, corollary_sides, theta_at};
use crate::series::{bound, BoundTag};

use super::Status;

/// One factor of a product in an exact identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Factor {
    Poly { poly: Polynomial },
    Ratfun { ratfun: RationalFunction },
    /// `ratfun(at)`
    Substitute { ratfun: RationalFunction, at: RationalFunction },
    /// `poly(argument)` where `poly` is the cited truncation bound.
    Bound { tag: BoundTag, poly: Polynomial, argument: RationalFunction },
}

impl Factor {
    pub fn poly(poly: Polynomial) -> Self {
        Factor::Poly { poly }
    }

    pub fn constant(c: BigRational) -> Self {
        Factor::Poly { poly: Polynomial::constant(c) }
    }

    pub fn ratfun(ratfun: RationalFunction) -> Self {
        Factor::Ratfun { ratfun }
    }

    pub fn substitute(ratfun: RationalFunction, at: RationalFunction) -> Self {
        Factor::Substitute { ratfun, at }
    }

    /// The canonical bound for `tag` applied to `argument`.
    pub fn bound(tag: BoundTag, argument: RationalFunction) -> Self {
        Factor::Bound { tag, poly: bound(tag).poly, argument }
    }

    fn eval(&self) -> Option<RationalFunction> {
        Some(match self {
            Factor::Poly { poly } => RationalFunction::from_poly(poly.clone()),
            Factor::Ratfun { ratfun } => ratfun.clone(),
            Factor::Substitute { ratfun, at } => {
                at.substitute_into(ratfun.numer()).try_div(&at.substitute_into(ratfun.denom())).ok()?
            }
            Factor::Bound { tag, poly, argument } => {
                if *poly != bound(*tag).poly {
                    return None;
                }
                argument.substitute_into(poly)
            }
        })
    }
}

/// A product of factors.
pub type Term = Vec<Factor>;

fn eval_sum(terms: &[Term]) -> Option<RationalFunction> {
    let mut acc = RationalFunction::zero();
    for t in terms {
        let mut prod = RationalFunction::from_poly(Polynomial::one());
        for f in t {
            prod = &prod * &f.eval()?;
        }
        acc = &acc + &prod;
    }
    Some(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sign {
    Positive,
    Negative,
    Zero,
}

impl Sign {
    pub fn of(q: &BigRational) -> Sign {
        if q.is_positive() {
            Sign::Positive
        } else if q.is_negative() {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    Less,
    LessOrEqual,
}

/// A real number that can be enclosed at a requested precision.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "quantity", rename_all = "kebab-case")]
pub enum Quantity {
    Exact {
        #[serde(with = "serde_rational")]
        value: BigRational,
    },
    /// `theta_n`
    Theta { n: u64 },
    /// `ln a_n - ln a_{n+1}`
    LogRatio { n: u64 },
    /// `a_n^6`
    ASixth { n: u64 },
    /// `8 pi^3 exp(1/(2n) - 1/(60n^3))`
    ExpBound { n: u64 },
    /// `e (n-1)^(n-1) / n^(n-1)`, with `0^0 = 1`
    ExpRatio { n: u64 },
}

impl Quantity {
    pub fn exact(value: BigRational) -> Self {
        Quantity::Exact { value }
    }

    pub fn enclose(&self, bits: u32) -> Option<Ball> {
        Some(match self {
            Quantity::Exact { value } => Ball::from_rational(value, bits),
            Quantity::Theta { n } => theta_at(*n, bits).ok()?,
            Quantity::LogRatio { n } => {
                &a_n_at(*n, bits).ok()?.ln().ok()? - &a_n_at(*n + 1, bits).ok()?.ln().ok()?
            }
            Quantity::ASixth { n } => corollary_sides(*n, bits).ok()?.0,
            Quantity::ExpBound { n } => corollary_sides(*n, bits).ok()?.1,
            Quantity::ExpRatio { n } => {
                if *n == 0 {
                    return None;
                }
                let n = *n as i64;
                let base = BigRational::new((n - 1).into(), n.into());
                let r = num_traits::pow(base, (n - 1) as usize);
                &const_e(bits) * &Ball::from_rational(&r, bits)
            }
        })
    }
}

/// `mid ± rad` with exact dyadic endpoints written as rationals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallRecord {
    #[serde(with = "serde_rational")]
    pub mid: BigRational,
    #[serde(with = "serde_rational")]
    pub rad: BigRational,
}

impl From<&Ball> for BallRecord {
    fn from(b: &Ball) -> Self {
        BallRecord { mid: b.mid().to_rational(), rad: b.rad().to_rational() }
    }
}

impl BallRecord {
    pub fn lower(&self) -> BigRational {
        &self.mid - &self.rad
    }

    pub fn upper(&self) -> BigRational {
        &self.mid + &self.rad
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// `sum(lhs) == sum(rhs)` as rational functions.
    Identity { lhs: Vec<Term>, rhs: Vec<Term> },
    /// `expected == companion(poly, anchor)`
    Companion { poly: Polynomial, anchor: Anchor, expected: Polynomial },
    Sign { certificate: SignCertificate },
    /// The argument of a truncation bound stays in the bound's domain for
    /// every `u` in `interval`.
    BoundDomain {
        tag: BoundTag,
        argument: RationalFunction,
        interval: Interval,
        certificates: Vec<SignCertificate>,
    },
    PolynomialValue {
        poly: Polynomial,
        #[serde(with = "serde_rational")]
        point: BigRational,
        #[serde(with = "serde_rational")]
        value: BigRational,
        expect: Sign,
    },
    LeadingCoefficient { poly: Polynomial, expect: Sign },
    RationalOrder {
        #[serde(with = "serde_rational")]
        lhs: BigRational,
        #[serde(with = "serde_rational")]
        rhs: BigRational,
        relation: Relation,
    },
    /// `lhs < rhs`, decided at `bits` bits with the recorded enclosures.
    BallOrder { lhs: Quantity, rhs: Quantity, bits: u32, lhs_ball: BallRecord, rhs_ball: BallRecord },
    /// `|value - expected| <= rel_tol |expected|`
    Approximation {
        #[serde(with = "serde_rational")]
        value: BigRational,
        expected: String,
        #[serde(with = "serde_rational")]
        rel_tol: BigRational,
    },
    /// Holds when every step listed is present and verified.
    Dependency { requires: Vec<String> },
    Batch { items: Vec<Witness> },
    /// A certificate that could not be produced; always fails.
    Unavailable { reason: String },
}

fn status(ok: bool) -> Status {
    if ok {
        Status::Verified
    } else {
        Status::Failed
    }
}

fn parse_decimal(s: &str) -> Option<BigRational> {
    let (int_part, frac) = s.split_once('.').unwrap_or((s, ""));
    let neg = int_part.starts_with('-');
    let digits = format!("{}{}", int_part.trim_start_matches('-'), frac);
    let n: num_bigint::BigInt = digits.parse().ok()?;
    let d = num_traits::pow(num_bigint::BigInt::from(10), frac.len());
    let q = BigRational::new(n, d);
    Some(if neg { -q } else { q })
}

/// Polynomials that must be positive on `interval` for `argument` to stay
/// inside `domain`: the denominator, `numer - lower * denom` and
/// `upper * denom - numer`.
///
/// Denominators are monic, so `u/(1-u)` is stored as `-u/(u-1)`. The pair is
/// flipped when the denominator is negative at the left end of `interval`;
/// a wrong guess only makes the obligations uncertifiable.
pub fn domain_obligations(argument: &RationalFunction, domain: &Interval, interval: &Interval) -> Vec<Polynomial> {
    let (mut n, mut d) = (argument.numer().clone(), argument.denom().clone());
    if d.eval(&interval.lower).is_negative() {
        n = -n;
        d = -d;
    }
    let (n, d) = (&n, &d);
    let mut out = Vec::new();
    if d.degree() != Some(0) {
        out.push(d.clone());
    }
    out.push(n - &d.scale(&domain.lower));
    if let Some(hi) = &domain.upper {
        out.push(&d.scale(hi) - n);
    }
    out
}

fn is_identity(r: &RationalFunction) -> bool {
    r.denom() == &Polynomial::one() && r.numer() == &Polynomial::x()
}

fn check_bound_domain(
    tag: BoundTag,
    argument: &RationalFunction,
    interval: &Interval,
    certificates: &[SignCertificate],
) -> bool {
    let domain = bound(tag).valid_on;
    if interval.validate().is_err() {
        return false;
    }
    if is_identity(argument) {
        return domain.contains_interval(interval);
    }
    // a constant denominator is 1 after normalisation, so positive
    let needed = domain_obligations(argument, &domain, interval);
    needed.len() == certificates.len()
        && needed.iter().zip(certificates).all(|(p, c)| {
            c.polynomial == *p
                && c.interval.contains_interval(interval)
                && c.replay().is_ok()
                && c.sturm_agrees()
        })
}

impl Witness {
    /// Re-run the check. Dependencies are resolved by the report and return
    /// `Verified` here.
    pub fn check(&self) -> Status {
        match self {
            Witness::Identity { lhs, rhs } => match (eval_sum(lhs), eval_sum(rhs)) {
                (Some(a), Some(b)) => status(a == b),
                _ => Status::Failed,
            },
            Witness::Companion { poly, anchor, expected } => {
                status(poly.companion(*anchor).map(|q| q == *expected).unwrap_or(false))
            }
            Witness::Sign { certificate } => {
                status(certificate.replay().is_ok() && certificate.sturm_agrees())
            }
            Witness::BoundDomain { tag, argument, interval, certificates } => {
                status(check_bound_domain(*tag, argument, interval, certificates))
            }
            Witness::PolynomialValue { poly, point, value, expect } => {
                let v = poly.eval(point);
                status(v == *value && Sign::of(&v) == *expect)
            }
            Witness::LeadingCoefficient { poly, expect } => {
                status(poly.leading_coeff().map(Sign::of) == Some(*expect))
            }
            Witness::RationalOrder { lhs, rhs, relation } => status(match relation {
                Relation::Less => lhs < rhs,
                Relation::LessOrEqual => lhs <= rhs,
            }),
            Witness::BallOrder { lhs, rhs, bits, lhs_ball, rhs_ball } => {
                let (Some(a), Some(b)) = (lhs.enclose(*bits), rhs.enclose(*bits)) else {
                    return Status::Failed;
                };
                if BallRecord::from(&a) != *lhs_ball || BallRecord::from(&b) != *rhs_ball {
                    return Status::Failed;
                }
                match certified_less(&a, &b) {
                    Certified::True => Status::Verified,
                    Certified::False => Status::Failed,
                    Certified::Undecided => Status::Undecided,
                }
            }
            Witness::Approximation { value, expected, rel_tol } => match parse_decimal(expected) {
                Some(e) if !e.is_zero() => status((value - &e).abs() <= rel_tol * e.abs()),
                _ => Status::Failed,
            },
            Witness::Dependency { .. } => Status::Verified,
            Witness::Batch { items } => items.iter().map(Witness::check).fold(Status::Verified, Status::and),
            Witness::Unavailable { .. } => Status::Failed,
        }
    }

    /// Every sign certificate carried by this witness, nested ones included.
    pub fn certificates(&self) -> Vec<&SignCertificate> {
        match self {
            Witness::Sign { certificate } => vec![certificate],
            Witness::BoundDomain { certificates, .. } => certificates.iter().collect(),
            Witness::Batch { items } => items.iter().flat_map(Witness::certificates).collect(),
            _ => Vec::new(),
        }
    }
}

/// Find the first precision at which `lhs < rhs` is decided and record it.
/// If the policy runs out the witness is kept at the last precision tried,
/// and checks as undecided.
pub fn ball_order(lhs: Quantity, rhs: Quantity, policy: &PrecisionPolicy) -> Witness {
    let decided = refine_until(
        policy,
        |bits| {
            let a = lhs.enclose(bits).ok_or(BallError::Domain("enclosure failed".into()))?;
            let b = rhs.enclose(bits).ok_or(BallError::Domain("enclosure failed".into()))?;
            Ok((bits, a, b))
        },
        |(bits, a, b)| certified_less(a, b).is_decided().then(|| (*bits, a.clone(), b.clone())),
    );
    let (bits, a, b) = match decided {
        Ok(r) => r.value,
        Err(_) => {
            let bits = policy.schedule().last().unwrap_or(policy.initial_bits);
            match (lhs.enclose(bits), rhs.enclose(bits)) {
                (Some(a), Some(b)) => (bits, a, b),
                _ => {
                    let z = Ball::from_int(0, bits);
                    (bits, z.clone(), z)
                }
            }
        }
    };
    Witness::BallOrder { lhs_ball: BallRecord::from(&a), rhs_ball: BallRecord::from(&b), lhs, rhs, bits }
}

/// Positivity certificate for `p` on `interval`, or the reason it failed.
pub fn sign(p: &Polynomial, interval: &Interval, strategy: Strategy) -> Witness {
    match certify_positive_on(p, interval, strategy) {
        Ok(certificate) => Witness::Sign { certificate },
        Err(e) => Witness::Unavailable { reason: e.to_string() },
    }
}

/// `p(point)` with its sign recorded.
pub fn polynomial_value(poly: &Polynomial, point: BigRational, expect: Sign) -> Witness {
    let value = poly.eval(&point);
    Witness::PolynomialValue { poly: poly.clone(), point, value, expect }
}

pub fn sum(terms: &[Term]) -> Option<RationalFunction> {
    eval_sum(terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn u() -> RationalFunction {
        RationalFunction::from_poly(Polynomial::x())
    }

    #[test]
    fn identity_of_products() {
        // (1 + u)^2 - 1 == u (2 + u)
        let w = Witness::Identity {
            lhs: vec![
                vec![Factor::poly(Polynomial::from_ints(&[1, 1])), Factor::poly(Polynomial::from_ints(&[1, 1]))],
                vec![Factor::constant(int(-1))],
            ],
            rhs: vec![vec![Factor::poly(Polynomial::x()), Factor::poly(Polynomial::from_ints(&[2, 1]))]],
        };
        assert_eq!(w.check(), Status::Verified);
    }

    #[test]
    fn substitution_of_reciprocal() {
        // (n + 1) at n = 1/u is (1 + u)/u
        let w = Witness::Identity {
            lhs: vec![vec![Factor::substitute(
                RationalFunction::from_poly(Polynomial::from_ints(&[1, 1])),
                RationalFunction::new(Polynomial::one(), Polynomial::x()).unwrap(),
            )]],
            rhs: vec![vec![Factor::ratfun(
                RationalFunction::new(Polynomial::from_ints(&[1, 1]), Polynomial::x()).unwrap(),
            )]],
        };
        assert_eq!(w.check(), Status::Verified);
    }

    #[test]
    fn tampered_bound_is_rejected() {
        let mut f = Factor::bound(BoundTag::ExpLowerDeg4, u());
        if let Factor::Bound { poly, .. } = &mut f {
            *poly = poly.scale(&int(2));
        }
        assert!(f.eval().is_none());
    }

    #[test]
    fn domain_of_reciprocal_shift() {
        // u/(1-u) stays in (-1, 1] for u in (0, 1/8]
        let arg = RationalFunction::new(Polynomial::x(), Polynomial::from_ints(&[1, -1])).unwrap();
        let dom = bound(BoundTag::LnUpperDeg7).valid_on;
        let iv = Interval::left_open(int(0), rat(1, 8));
        let certs: Vec<_> = domain_obligations(&arg, &dom, &iv)
            .iter()
            .map(|p| crate::exact::certify_positive_on(p, &iv, crate::exact::Strategy::Companion).unwrap())
            .collect();
        let w = Witness::BoundDomain { tag: BoundTag::LnUpperDeg7, argument: arg.clone(), interval: iv, certificates: certs.clone() };
        assert_eq!(w.check(), Status::Verified);
        // the same certificates do not cover (0, 3/4]
        let w = Witness::BoundDomain {
            tag: BoundTag::LnUpperDeg7,
            argument: arg,
            interval: Interval::left_open(int(0), rat(3, 4)),
            certificates: certs,
        };
        assert_eq!(w.check(), Status::Failed);
    }

    #[test]
    fn identity_argument_domain() {
        let ok = Witness::BoundDomain {
            tag: BoundTag::LnLowerDeg8,
            argument: u(),
            interval: Interval::left_open(int(0), int(1)),
            certificates: vec![],
        };
        assert_eq!(ok.check(), Status::Verified);
        let bad = Witness::BoundDomain {
            tag: BoundTag::LnLowerDeg8,
            argument: u(),
            interval: Interval::left_open(int(-1), int(1)),
            certificates: vec![],
        };
        assert_eq!(bad.check(), Status::Failed);
    }

    #[test]
    fn approximation_tolerance() {
        let w = |v: BigRational| Witness::Approximation { value: v, expected: "0.00036".into(), rel_tol: rat(1, 10) };
        assert_eq!(w(rat(3615, 10_000_000)).check(), Status::Verified);
        assert_eq!(w(rat(5, 10_000)).check(), Status::Failed);
        assert_eq!(parse_decimal("3.78"), Some(rat(378, 100)));
        assert_eq!(parse_decimal("-0.5"), Some(rat(-1, 2)));
    }

    #[test]
    fn ball_order_replays() {
        let p = PrecisionPolicy::default();
        let w = ball_order(Quantity::Theta { n: 1 }, Quantity::Theta { n: 2 }, &p);
        assert_eq!(w.check(), Status::Verified);
        let Witness::BallOrder { bits, .. } = &w else { unreachable!() };
        assert!(*bits <= 128);
        let back = ball_order(Quantity::Theta { n: 2 }, Quantity::Theta { n: 1 }, &p);
        assert_eq!(back.check(), Status::Failed);
        if let Witness::BallOrder { lhs, rhs, bits, lhs_ball, .. } = w {
            let forged = Witness::BallOrder { lhs, rhs, bits, rhs_ball: lhs_ball.clone(), lhs_ball };
            assert_eq!(forged.check(), Status::Failed);
        }
    }

    #[test]
    fn exp_ratio_quantity() {
        // n = 2: e/2
        let b = Quantity::ExpRatio { n: 2 }.enclose(128).unwrap();
        assert!((b.to_f64() - std::f64::consts::E / 2.0).abs() < 1e-15);
        let b = Quantity::ExpRatio { n: 1 }.enclose(128).unwrap();
        assert!((b.to_f64() - std::f64::consts::E).abs() < 1e-15);
    }
}
