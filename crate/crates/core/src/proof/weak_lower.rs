//! `theta_n >= 1 - 3/(2n)` for every `n >= 1`.

use crate::ball::PrecisionPolicy;
use crate::exact::{int, rat, Interval, Polynomial, RationalFunction, Strategy};
use crate::ramanujan::weak_lower;
use crate::series::{bound, BoundTag, TaylorBound};

use super::witness::{ball_order, domain_obligations, sign, Factor, Quantity, Witness};
use super::{depends, poly, sign_step, Method, ProofStep};

/// `x = u/2 - u^3/60`
pub fn exponent_argument() -> Polynomial {
    poly(&[(0, 1), (1, 2), (0, 1), (-1, 60)])
}

/// The degree-12 expansion of the exponential truncation at `x = u/2 - u^3/60`,
/// coefficient by coefficient from `u^0` to `u^12`.
pub fn expected_expansion() -> Polynomial {
    poly(&[
        (1, 1),
        (1, 2),
        (1, 8),
        (1, 240),
        (-11, 1920),
        (-1, 480),
        (-1, 4800),
        (1, 14400),
        (1, 57600),
        (-1, 1296000),
        (-1, 2592000),
        (0, 1),
        (1, 311040000),
    ])
}

/// `bound(x)` matches [`expected_expansion`] coefficient by coefficient.
///
/// Taking the bound as a parameter lets a caller check that a wrong
/// truncation is caught.
pub fn composition_step(b: &TaylorBound) -> ProofStep {
    let x = RationalFunction::from_poly(exponent_argument());
    ProofStep::new(
        "weak-lower-bound.composition",
        "1 + x + x^2/2! + x^3/3! + x^4/4! at x = u/2 - u^3/60 expands to \
         1 + u/2 + u^2/8 + u^3/240 - 11u^4/1920 - u^5/480 - u^6/4800 + u^7/14400 + u^8/57600 \
         - u^9/1296000 - u^10/2592000 + u^12/311040000",
        Method::ExactPolynomial,
        "exp(u/2 - u^3/60) >= 1 + u/2 + u^2/8 + u^3/240 - 11u^4/1920 - ... + u^12/311040000",
        Witness::Identity {
            lhs: vec![vec![Factor::Bound { tag: b.tag, poly: b.poly.clone(), argument: x }]],
            rhs: vec![vec![Factor::poly(expected_expansion())]],
        },
    )
}

/// `8 + 4u + u^2 + u^3/30 - u^4/20`, the cleared form of `8n^3 + 4n^2 + n + 1/30 - 1/(20n)`.
fn cleared_target() -> Polynomial {
    poly(&[(8, 1), (4, 1), (1, 1), (1, 30), (-1, 20)])
}

/// `5 - 20u - 2u^2`
pub fn residual() -> Polynomial {
    Polynomial::from_ints(&[5, -20, -2])
}

pub fn verify_weak_lower_bound(policy: &PrecisionPolicy) -> Vec<ProofStep> {
    let unit = Interval::left_open(int(0), int(1));
    let x = RationalFunction::from_poly(exponent_argument());
    let exp_domain = bound(BoundTag::ExpLowerDeg4).valid_on;
    let certificates = domain_obligations(&x, &exp_domain, &unit)
        .iter()
        .filter_map(|p| match sign(p, &unit, Strategy::Roots) {
            Witness::Sign { certificate } => Some(certificate),
            _ => None,
        })
        .collect();

    let mut steps = vec![depends(
        "weak-lower-bound.reduction",
        "(n!/(sqrt(pi)(n/e)^n))^6 = n^3 a_n^6 / pi^3 >= 8n^3 exp(1/(2n) - 1/(60n^3)), so it suffices that \
         8n^3 exp(1/(2n) - 1/(60n^3)) - 8n^3 - 4n^2 - n - 1/30 + 1/(20n) >= 0",
        "(n!/(sqrt(pi)(n/e)^n))^6 - 8n^3 - 4n^2 - n >= (1 - 3/(2n))/30",
        &["a-lower-bound.telescoping"],
    )];
    steps.push(ProofStep::new(
        "weak-lower-bound.exp-domain",
        "x = u/2 - u^3/60 > 0 for u in (0, 1], inside the domain [0, inf) of the exponential lower bound",
        Method::SignCertificate,
        "e^x >= 1 + x + x^2/2! + x^3/3! + x^4/4! for x >= 0",
        Witness::BoundDomain { tag: BoundTag::ExpLowerDeg4, argument: x, interval: unit.clone(), certificates },
    ));
    steps.push(composition_step(&bound(BoundTag::ExpLowerDeg4)));

    let t6 = expected_expansion().truncate(6);
    let tail7 = poly(&[(1, 14400), (0, 1), (-1, 1296000)]);
    let tail8 = poly(&[(1, 57600), (0, 1), (-1, 2592000)]);
    steps.push(ProofStep::new(
        "weak-lower-bound.tail",
        "the expansion minus its terms up to u^6 is u^7 (1/14400 - u^2/1296000) + u^8 (1/57600 - u^2/2592000) + u^12/311040000",
        Method::ExactPolynomial,
        "u^7/14400 - u^9/1296000 + u^8/57600 - u^10/2592000 + u^12/311040000",
        Witness::Identity {
            lhs: vec![
                vec![Factor::bound(BoundTag::ExpLowerDeg4, RationalFunction::from_poly(exponent_argument()))],
                vec![Factor::poly(-&t6)],
            ],
            rhs: vec![
                vec![Factor::poly(Polynomial::monomial(int(1), 7)), Factor::poly(tail7.clone())],
                vec![Factor::poly(Polynomial::monomial(int(1), 8)), Factor::poly(tail8.clone())],
                vec![Factor::poly(Polynomial::monomial(rat(1, 311040000), 12))],
            ],
        },
    ));
    steps.push(sign_step(
        "weak-lower-bound.tail-7",
        "1/14400 - u^2/1296000 > 0 for u in (0, 1]",
        "u^7/14400 - u^9/1296000 > 0",
        &tail7,
        unit.clone(),
        Strategy::Companion,
    ));
    steps.push(sign_step(
        "weak-lower-bound.tail-8",
        "1/57600 - u^2/2592000 > 0 for u in (0, 1]",
        "u^8/57600 - u^10/2592000 > 0",
        &tail8,
        unit,
        Strategy::Companion,
    ));
    let cancelled = poly(&[(0, 1), (0, 1), (0, 1), (0, 1), (1, 240), (-1, 60), (-1, 600)]);
    steps.push(ProofStep::new(
        "weak-lower-bound.cancellation",
        "8 T6(u) - (8 + 4u + u^2 + u^3/30 - u^4/20) = u^4/240 - u^5/60 - u^6/600, \
         i.e. u^3 times the target after dropping the positive tail",
        Method::ExactPolynomial,
        "8n^3 exp(1/(2n) - 1/(60n^3)) - 8n^3 - 4n^2 - n - 1/30 + 1/(20n) >= 0",
        Witness::Identity {
            lhs: vec![
                vec![Factor::constant(int(8)), Factor::poly(t6)],
                vec![Factor::poly(-cleared_target())],
            ],
            rhs: vec![vec![Factor::poly(cancelled.clone())]],
        },
    ));
    steps.push(ProofStep::new(
        "weak-lower-bound.residual-factor",
        "u^4/240 - u^5/60 - u^6/600 = u^3 (u/1200)(5 - 20u - 2u^2)",
        Method::ExactPolynomial,
        "u/1200 (5 - 20u - 2u^2)",
        Witness::Identity {
            lhs: vec![vec![Factor::poly(cancelled)]],
            rhs: vec![vec![
                Factor::poly(Polynomial::monomial(int(1), 3)),
                Factor::poly(Polynomial::monomial(rat(1, 1200), 1)),
                Factor::poly(residual()),
            ]],
        },
    ));
    steps.push(sign_step(
        "weak-lower-bound.residual-positive",
        "5 - 20u - 2u^2 > 0 on (0, 1/5]: it decreases and equals 23/25 at u = 1/5",
        "5 - 20u - 2u^2 at u = 1/5",
        &residual(),
        Interval::left_open(int(0), rat(1, 5)),
        Strategy::Companion,
    ));
    let mut req = vec![
        "weak-lower-bound.reduction",
        "weak-lower-bound.exp-domain",
        "weak-lower-bound.composition",
        "weak-lower-bound.tail",
        "weak-lower-bound.tail-7",
        "weak-lower-bound.tail-8",
        "weak-lower-bound.cancellation",
        "weak-lower-bound.residual-factor",
        "weak-lower-bound.residual-positive",
    ]
    .into_iter()
    .map(String::from)
    .collect::<Vec<_>>();
    for n in 1..=4u64 {
        let id = format!("weak-lower-bound.base.n={n}");
        steps.push(ProofStep::new(
            id.clone(),
            format!("theta_{n} > 1 - 3/(2*{n}) = {}", weak_lower(n)),
            Method::BallComparison,
            "theta_n >= 1 - 3/(2n)",
            ball_order(Quantity::exact(weak_lower(n)), Quantity::Theta { n }, policy),
        ));
        req.push(id);
    }
    let req: Vec<&str> = req.iter().map(String::as_str).collect();
    steps.push(depends(
        "weak-lower-bound.conclusion",
        "for n >= 5 the residual is positive at u = 1/n; n = 1..4 are the base cases; \
         hence theta_n >= 1 - 3/(2n) for all n >= 1",
        "theta_n >= 1 - 3/(2n)",
        &req,
    ));
    steps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proof::Status;

    #[test]
    fn steps_verify() {
        for s in verify_weak_lower_bound(&PrecisionPolicy::default()) {
            if !matches!(s.witness, Witness::Dependency { .. }) {
                assert_eq!(s.status, Status::Verified, "{}", s.id);
            }
        }
    }

    #[test]
    fn composition_oracle() {
        let composed = bound(BoundTag::ExpLowerDeg4).poly.compose(&exponent_argument());
        assert_eq!(composed, expected_expansion());
        assert_eq!(composed.coeff(4), rat(-11, 1920));
        assert_eq!(composed.coeff(12), rat(1, 311040000));
    }

    #[test]
    fn residual_at_one_fifth() {
        assert_eq!(residual().eval(&rat(1, 5)), rat(23, 25));
    }
}
