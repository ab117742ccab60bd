//! `ln(a_n / a_{n+1}) > (1/n - 1/(n+1))/12 - (1/n^3 - 1/(n+1)^3)/360` and the
//! lower bound for `a_n` obtained by summing it.

use num_rational::BigRational;

use crate::ball::PrecisionPolicy;
use crate::exact::{int, rat, Interval, Polynomial, RationalFunction, Strategy};
use crate::series::BoundTag;

use super::witness::{ball_order, Factor, Quantity, Witness};
use super::{depends, poly, ratfun, sign_step, Method, ProofStep};

fn rf(p: Polynomial) -> RationalFunction {
    RationalFunction::from_poly(p)
}

pub(crate) fn recip_x() -> RationalFunction {
    ratfun(Polynomial::one(), Polynomial::x())
}

/// `1 + (1/n - 1/(n+1))/12 - (1/n^3 - 1/(n+1)^3)/360` as a function of `n`.
fn shifted_rhs() -> RationalFunction {
    let inv_n = recip_x();
    let inv_n1 = ratfun(Polynomial::one(), Polynomial::from_ints(&[1, 1]));
    let d1 = &inv_n - &inv_n1;
    let d3 = &inv_n.pow(3) - &inv_n1.pow(3);
    let c = |q: BigRational| RationalFunction::constant(q);
    &(&c(int(1)) + &(&c(rat(1, 12)) * &d1)) - &(&c(rat(1, 360)) * &d3)
}

/// `360u + 1080u^2 + 1110u^3 + 420u^4 + 27u^5 - 3u^6 - u^7`
pub fn target_numerator() -> Polynomial {
    Polynomial::from_ints(&[0, 360, 1080, 1110, 420, 27, -3, -1])
}

/// `180 (1+u)^3 (2+u)`
pub fn target_denominator() -> Polynomial {
    Polynomial::from_ints(&[1, 1]).pow(3).scale(&int(180)) * Polynomial::from_ints(&[2, 1])
}

/// `20 - 561u^2 - 1455u^3 - 1215u^4 - 315u^5`
pub fn bracket() -> Polynomial {
    Polynomial::from_ints(&[20, 0, -561, -1455, -1215, -315])
}

pub fn verify_log_ratio(policy: &PrecisionPolicy) -> Vec<ProofStep> {
    let u = Polynomial::x();
    let target = ratfun(target_numerator(), target_denominator());
    let mut steps = vec![ProofStep::new(
        "log-ratio.transform",
        "with u = 1/n, (n + 1/2) ln(1 + u) - 1 > R(n) is equivalent to \
         ln(1 + u) > (1 + R(1/u)) / (1/u + 1/2), and the right side reduces to \
         (360u + 1080u^2 + 1110u^3 + 420u^4 + 27u^5 - 3u^6 - u^7) / (180 (1+u)^3 (2+u))",
        Method::ExactRatfun,
        "ln(a_n/a_{n+1}) = (n + 1/2) ln(1 + 1/n) - 1",
        Witness::Identity {
            lhs: vec![vec![
                Factor::substitute(ratfun(Polynomial::one(), poly(&[(1, 2), (1, 1)])), recip_x()),
                Factor::substitute(shifted_rhs(), recip_x()),
            ]],
            rhs: vec![vec![Factor::ratfun(target)]],
        },
    )];
    // 360u(1+u)^3 + 30u^3(1+u)^2 - u^5(3 + 3u + u^2)
    let one_u = Polynomial::from_ints(&[1, 1]);
    steps.push(ProofStep::new(
        "log-ratio.numerator",
        "the numerator equals 360u(1+u)^3 + 30u^3(1+u)^2 - u^5(3 + 3u + u^2)",
        Method::ExactPolynomial,
        "360u + 1080u^2 + 1110u^3 + 420u^4 + 27u^5 - 3u^6 - u^7",
        Witness::Identity {
            lhs: vec![vec![Factor::poly(target_numerator())]],
            rhs: vec![
                vec![Factor::poly(Polynomial::monomial(int(360), 1)), Factor::poly(one_u.pow(3))],
                vec![Factor::poly(Polynomial::monomial(int(30), 3)), Factor::poly(one_u.pow(2))],
                vec![Factor::poly(Polynomial::monomial(int(-1), 5)), Factor::poly(Polynomial::from_ints(&[3, 3, 1]))],
            ],
        },
    ));
    steps.push(sign_step(
        "log-ratio.denominator-positive",
        "180 (1+u)^3 (2+u) > 0 on (0, 1]",
        "180 (1+u)^3 (2+u)",
        &target_denominator(),
        Interval::left_open(int(0), int(1)),
        Strategy::Companion,
    ));
    steps.push(ProofStep::new(
        "log-ratio.ln8-domain",
        "u = 1/n lies in (0, 1], inside the domain [0, 1] of the degree-8 lower bound for ln(1+x)",
        Method::ExactPolynomial,
        "ln(1+x) >= x - x^2/2 + ... - x^8/8",
        Witness::BoundDomain {
            tag: BoundTag::LnLowerDeg8,
            argument: rf(u.clone()),
            interval: Interval::left_open(int(0), int(1)),
            certificates: vec![],
        },
    ));
    steps.push(ProofStep::new(
        "log-ratio.expansion",
        "180(1+u)^3(2+u) T8(u) - N(u) = (u^7/14)(20 - 561u^2 - 1455u^3 - 1215u^4 - 315u^5) exactly, \
         where T8 is the degree-8 lower bound for ln(1+u)",
        Method::ExactPolynomial,
        "u^7/14 (20 - 561u^2 - 1455u^3 - 1215u^4 - 315u^5)",
        Witness::Identity {
            lhs: vec![
                vec![Factor::poly(target_denominator()), Factor::bound(BoundTag::LnLowerDeg8, rf(u))],
                vec![Factor::poly(-target_numerator())],
            ],
            rhs: vec![vec![Factor::poly(Polynomial::monomial(rat(1, 14), 7)), Factor::poly(bracket())]],
        },
    ));
    steps.push(sign_step(
        "log-ratio.bracket",
        "20 - 561u^2 - 1455u^3 - 1215u^4 - 315u^5 > 0 on (0, 1/7]: every non-constant term is \
         negative, so the bracket decreases, and its value at u = 1/7 is 63602/16807",
        "20 - 561u^2 - 1455u^3 - 1215u^4 - 315u^5 at u = 1/7",
        &bracket(),
        Interval::left_open(int(0), rat(1, 7)),
        Strategy::Companion,
    ));
    let mut base = Vec::new();
    for n in 1..=6u64 {
        let id = format!("log-ratio.base.n={n}");
        let r = &shifted_rhs().eval(&int(n as i64)).expect("n > 0") - &int(1);
        steps.push(ProofStep::new(
            id.clone(),
            format!("ln(a_{n}/a_{}) > {r}", n + 1),
            Method::BallComparison,
            "ln(a_n/a_{n+1}) > (1/n - 1/(n+1))/12 - (1/n^3 - 1/(n+1)^3)/360",
            ball_order(Quantity::exact(r), Quantity::LogRatio { n }, policy),
        ));
        base.push(id);
    }
    let mut req = vec![
        "log-ratio.transform",
        "log-ratio.denominator-positive",
        "log-ratio.ln8-domain",
        "log-ratio.expansion",
        "log-ratio.bracket",
    ];
    req.extend(base.iter().map(String::as_str));
    steps.push(depends(
        "log-ratio.conclusion",
        "for n >= 7 the bracket is positive at u = 1/n, so ln(1+u) >= T8(u) > N(u)/D(u); \
         n = 1..6 are the base cases",
        "ln(a_n/a_{n+1}) > (1/n - 1/(n+1))/12 - (1/n^3 - 1/(n+1)^3)/360 for n >= 1",
        &req,
    ));
    steps
}

pub fn verify_a_lower_bound(policy: &PrecisionPolicy) -> Vec<ProofStep> {
    let mut steps = vec![ProofStep::new(
        "a-lower-bound.exponent-algebra",
        "6 (u/12 - u^3/360) = u/2 - u^3/60",
        Method::ExactRatfun,
        "a_n^6 >= 8 pi^3 exp(1/(2n) - 1/(60n^3))",
        Witness::Identity {
            lhs: vec![vec![Factor::constant(int(6)), Factor::poly(poly(&[(0, 1), (1, 12), (0, 1), (-1, 360)]))]],
            rhs: vec![vec![Factor::poly(poly(&[(0, 1), (1, 2), (0, 1), (-1, 60)]))]],
        },
    )];
    steps.push(depends(
        "a-lower-bound.telescoping",
        "summing the log-ratio bound over k >= n telescopes: ln(a_n / a_inf) > 1/(12n) - 1/(360n^3) \
         with a_inf = sqrt(2 pi), hence a_n^6 > 8 pi^3 exp(1/(2n) - 1/(60n^3))",
        "a_n >= a_inf exp(1/(12n) - 1/(360n^3))",
        &["log-ratio.conclusion", "a-lower-bound.exponent-algebra"],
    ));
    for n in [1u64, 5, 50] {
        steps.push(ProofStep::new(
            format!("a-lower-bound.spot.n={n}"),
            format!("a_{n}^6 > 8 pi^3 exp(1/(2*{n}) - 1/(60*{n}^3))"),
            Method::BallComparison,
            "a_n^6 >= 8 pi^3 exp(1/(2n) - 1/(60n^3))",
            ball_order(Quantity::ExpBound { n }, Quantity::ASixth { n }, policy),
        ));
    }
    steps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proof::Status;

    #[test]
    fn log_ratio_steps_verify() {
        for s in verify_log_ratio(&PrecisionPolicy::default()) {
            assert_eq!(s.status, Status::Verified, "{}", s.id);
        }
    }

    #[test]
    fn bracket_value() {
        let v = bracket().eval(&rat(1, 7));
        assert_eq!(v, rat(63602, 16807));
        assert_eq!(crate::ball::rational_to_decimal(&v, 2), "3.78");
    }

    #[test]
    fn first_base_case_rhs() {
        // 1/24 - 7/2880
        let r = &shifted_rhs().eval(&int(1)).unwrap() - &int(1);
        assert_eq!(r, rat(1, 24) - rat(7, 2880));
    }

    #[test]
    fn a_lower_bound_spots() {
        for s in verify_a_lower_bound(&PrecisionPolicy::default()) {
            if !matches!(s.witness, Witness::Dependency { .. }) {
                assert_eq!(s.status, Status::Verified, "{}", s.id);
            }
        }
    }
}
