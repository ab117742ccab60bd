//! `e (n-1)^(n-1) / n^(n-1) >= S(1/n)` for `n >= 2`, where
//! `S(u) = 1 + u/2 + 7u^2/24 + 3u^3/16 + 743u^4/5760 + 215u^5/2304`.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::ball::PrecisionPolicy;
use crate::exact::{int, rat, Interval, Polynomial, RationalFunction, Strategy};
use crate::series::{bound, BoundTag};

use super::log_ratio::recip_x;
use super::witness::{ball_order, domain_obligations, polynomial_value, sign, Factor, Quantity, Sign, Witness};
use super::{depends, poly, ratfun, sign_step, Method, Part, ProofStep, Severity};

pub fn exp_ratio_series() -> Polynomial {
    poly(&[(1, 1), (1, 2), (7, 24), (3, 16), (743, 5760), (215, 2304)])
}

/// `u / (1 - u)`
fn shifted_argument() -> RationalFunction {
    ratfun(Polynomial::x(), Polynomial::from_ints(&[1, -1]))
}

/// `(1 - u) / u`
fn multiplier() -> RationalFunction {
    ratfun(Polynomial::from_ints(&[1, -1]), Polynomial::x())
}

fn rf(p: Polynomial) -> RationalFunction {
    RationalFunction::from_poly(p)
}

/// The terms of `1 - ((1-u)/u) L7(u/(1-u)) - L5(S(u) - 1)`.
fn gap_terms() -> Vec<Vec<Factor>> {
    let minus = || Factor::constant(-BigRational::one());
    let s_minus_1 = &exp_ratio_series() - &Polynomial::one();
    vec![
        vec![Factor::constant(BigRational::one())],
        vec![minus(), Factor::ratfun(multiplier()), Factor::bound(BoundTag::LnUpperDeg7, shifted_argument())],
        vec![minus(), Factor::bound(BoundTag::LnUpperDeg5, rf(s_minus_1))],
    ]
}

/// `(P, K)` with `1 - RHS = u^6 P(u) / (K (1-u)^6)`, `P` a primitive integer
/// polynomial and `K` the positive rational (an integer here) that makes it so.
pub fn gap_decomposition() -> (Polynomial, BigRational) {
    let g = super::witness::sum(&gap_terms()).expect("terms evaluate");
    let (k, rest) = g.numer().split_low_power();
    assert_eq!(k, 6, "gap vanishes to order 6 at u = 0");
    let (content, p) = rest.primitive_part();
    (p, content.recip())
}

fn domain_certificates(tag: BoundTag, argument: &RationalFunction, interval: &Interval) -> Witness {
    let domain = bound(tag).valid_on;
    let mut certificates = Vec::new();
    for p in domain_obligations(argument, &domain, interval) {
        match sign(&p, interval, Strategy::Roots) {
            Witness::Sign { certificate } => certificates.push(certificate),
            other => return other,
        }
    }
    Witness::BoundDomain { tag, argument: argument.clone(), interval: interval.clone(), certificates }
}

pub(crate) fn run(policy: &PrecisionPolicy) -> Part {
    let mut part = Part::default();
    let iv = Interval::left_open(int(0), rat(1, 8));
    let s = exp_ratio_series();

    part.push(ProofStep::new(
        "exp-ratio.log-form",
        "with u = 1/n: n - 1 = (1-u)/u and n/(n-1) = 1 + u/(1-u), so taking logarithms the inequality reads \
         1 >= ((1-u)/u) ln(1 + u/(1-u)) + ln S(u)",
        Method::ExactRatfun,
        "1 >= (1-u)/u ln(1 + u/(1-u)) + ln(1 + u/2 + 7u^2/24 + 3u^3/16 + 743u^4/5760 + 215u^5/2304)",
        Witness::Batch {
            items: vec![
                Witness::Identity {
                    lhs: vec![vec![Factor::substitute(rf(Polynomial::from_ints(&[-1, 1])), recip_x())]],
                    rhs: vec![vec![Factor::ratfun(multiplier())]],
                },
                Witness::Identity {
                    lhs: vec![vec![Factor::substitute(
                        ratfun(Polynomial::x(), Polynomial::from_ints(&[-1, 1])),
                        recip_x(),
                    )]],
                    rhs: vec![vec![Factor::constant(BigRational::one())], vec![Factor::ratfun(shifted_argument())]],
                },
            ],
        },
    ));
    part.push(ProofStep::new(
        "exp-ratio.ln7-domain",
        "u/(1-u) lies in (-1, 1] for u in (0, 1/8]",
        Method::SignCertificate,
        "ln(1+x) <= x - x^2/2 + ... + x^7/7 on (-1, 1]",
        domain_certificates(BoundTag::LnUpperDeg7, &shifted_argument(), &iv),
    ));
    part.push(ProofStep::new(
        "exp-ratio.ln5-domain",
        "S(u) - 1 lies in (-1, 1] for u in (0, 1/8]",
        Method::SignCertificate,
        "ln(1+x) <= x - x^2/2 + x^3/3 - x^4/4 + x^5/5 on (-1, 1]",
        domain_certificates(BoundTag::LnUpperDeg5, &rf(&s - &Polynomial::one()), &iv),
    ));
    part.push(sign_step(
        "exp-ratio.multiplier-positive",
        "(1-u)/u > 0 on (0, 1/8]: 1 - u > 0 there",
        "(1-u)/u > 0",
        &Polynomial::from_ints(&[1, -1]),
        iv.clone(),
        Strategy::Companion,
    ));

    let (p, k) = gap_decomposition();
    part.constants.insert("exp-ratio.K".into(), k.clone());
    part.push(ProofStep::new(
        "exp-ratio.expansion",
        format!(
            "1 - ((1-u)/u) L7(u/(1-u)) - L5(S(u) - 1) = u^6 P(u) / (K (1-u)^6) with P of degree {} \
             and K = {k}",
            p.degree().unwrap_or(0)
        ),
        Method::ExactRatfun,
        "u^6 P(u) / K(1-u)^6",
        Witness::Identity {
            lhs: gap_terms(),
            rhs: vec![vec![
                Factor::constant(k.recip()),
                Factor::poly(Polynomial::monomial(int(1), 6)),
                Factor::poly(p.clone()),
                Factor::ratfun(ratfun(Polynomial::one(), Polynomial::from_ints(&[1, -1]).pow(6))),
            ]],
        },
    ));
    part.push(ProofStep::new(
        "exp-ratio.p-constant",
        format!("P(0) = {} > 0", p.coeff(0)),
        Method::ExactPolynomial,
        "constant term of P",
        polynomial_value(&p, BigRational::zero(), Sign::Positive),
    ));
    let cert = sign(&p, &iv, Strategy::Companion);
    let q_at = match &cert {
        Witness::Sign { certificate } => certificate.witness_value.clone(),
        _ => None,
    };
    part.push(ProofStep::new(
        "exp-ratio.p-positive",
        "Q = constant term of P plus its negative terms is decreasing, Q <= P for u >= 0 and Q(1/8) > 0, \
         so P > 0 on (0, 1/8]",
        Method::SignCertificate,
        "Q(1/8) > 0",
        cert,
    ));
    if let Some(q) = q_at {
        part.push(
            ProofStep::new(
                "exp-ratio.q-ratio",
                format!("Q(1/8)/K = {} is within 10% of 0.00036", crate::ball::rational_to_decimal(&(&q / &k), 7)),
                Method::ExactPolynomial,
                "Q(1/8)/K = 0.00036",
                Witness::Approximation { value: &q / &k, expected: "0.00036".into(), rel_tol: rat(1, 10) },
            )
            .with_severity(Severity::Soft),
        );
    }

    let mut req: Vec<String> = [
        "exp-ratio.log-form",
        "exp-ratio.ln7-domain",
        "exp-ratio.ln5-domain",
        "exp-ratio.multiplier-positive",
        "exp-ratio.expansion",
        "exp-ratio.p-positive",
    ]
    .into_iter()
    .map(String::from)
    .collect();
    for n in 2..=7u64 {
        let id = format!("exp-ratio.base.n={n}");
        let rhs = s.eval(&rat(1, n as i64));
        part.push(ProofStep::new(
            id.clone(),
            format!("e ({0}-1)^({0}-1) / {0}^({0}-1) > S(1/{0}) = {rhs}", n),
            Method::BallComparison,
            "e(n-1)^(n-1)/n^(n-1) >= S(1/n)",
            ball_order(Quantity::exact(rhs), Quantity::ExpRatio { n }, policy),
        ));
        req.push(id);
    }
    part.push(
        ProofStep::new(
            "exp-ratio.n1-zero-power",
            format!("with 0^0 = 1 the case n = 1 reads e > S(1) = {}", s.eval(&int(1))),
            Method::BallComparison,
            "e(n-1)^(n-1)/n^(n-1) >= S(1/n) at n = 1",
            ball_order(Quantity::exact(s.eval(&int(1))), Quantity::ExpRatio { n: 1 }, policy),
        )
        .with_severity(Severity::Informational),
    );
    let req: Vec<&str> = req.iter().map(String::as_str).collect();
    part.push(depends(
        "exp-ratio.conclusion",
        "for n >= 8 both logarithms are bounded above by their truncations and the gap \
         u^6 P(u)/(K(1-u)^6) is positive; n = 2..7 are the base cases",
        "e(n-1)^(n-1)/n^(n-1) >= S(1/n) for n >= 2",
        &req,
    ));
    part
}

pub fn verify_exp_ratio(policy: &PrecisionPolicy) -> Vec<ProofStep> {
    run(policy).steps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proof::Status;
    use num_bigint::BigInt;

    #[test]
    fn constants() {
        let (p, k) = gap_decomposition();
        assert_eq!(p.degree(), Some(25));
        assert!(k.is_integer());
        assert_eq!(k.to_integer(), "7101178668122112000000".parse::<BigInt>().unwrap());
        assert_eq!(p.coeff(0), BigRational::from_integer("479837863437926400000".parse().unwrap()));
    }

    #[test]
    fn steps_verify() {
        for s in verify_exp_ratio(&PrecisionPolicy::default()) {
            if !matches!(s.witness, Witness::Dependency { .. }) {
                assert_eq!(s.status, Status::Verified, "{}", s.id);
            }
        }
    }

    #[test]
    fn two_rhs() {
        // 1 + 1/4 + 7/96 + 3/128 + 743/92160 + 215/73728
        let v = exp_ratio_series().eval(&rat(1, 2));
        assert_eq!(v, int(1) + rat(1, 4) + rat(7, 96) + rat(3, 128) + rat(743, 92160) + rat(215, 73728));
        assert!(v < rat(135733, 100000) + rat(1, 100000));
    }
}
