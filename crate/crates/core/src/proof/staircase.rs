//! `beta_n <= alpha_{n+1}` for every `n >= 3`.

use num_traits::One;

use crate::exact::{int, rat, Interval, Polynomial, Strategy};
use crate::ramanujan::hirschhorn_bounds;

use super::witness::{polynomial_value, Factor, Relation, Sign, Witness};
use super::{poly, ratfun, sign_step, Method, ProofStep};

/// `5n^2 - 11n - 11`
pub(crate) fn quadratic() -> Polynomial {
    Polynomial::from_ints(&[-11, -11, 5])
}

pub fn verify_staircase() -> Vec<ProofStep> {
    // alpha(n) = (8n^2 - 11n + 5) / (8n^2), beta(n) = (8n^2 - 11n + 11) / (8n^2)
    let eight_n2 = poly(&[(0, 1), (0, 1), (8, 1)]);
    let alpha = ratfun(Polynomial::from_ints(&[5, -11, 8]), eight_n2.clone());
    let beta = ratfun(Polynomial::from_ints(&[11, -11, 8]), eight_n2);
    let n_plus_1 = Polynomial::from_ints(&[1, 1]).into();
    // 8 n^2 (n+1)^2
    let denom = &Polynomial::monomial(int(8), 2) * &Polynomial::from_ints(&[1, 1]).pow(2);

    let mut steps = vec![ProofStep::new(
        "staircase.equivalence",
        "alpha_{n+1} - beta_n = (5n^2 - 11n - 11) / (8n^2 (n+1)^2) as rational functions of n, \
         so beta_n <= alpha_{n+1} exactly when 5n^2 - 11n - 11 >= 0",
        Method::ExactRatfun,
        "beta_n <= alpha_{n+1}  <=>  0 <= 5n^2 - 11n - 11",
        Witness::Identity {
            lhs: vec![
                vec![Factor::substitute(alpha, n_plus_1)],
                vec![Factor::constant(-num_rational::BigRational::one()), Factor::ratfun(beta)],
            ],
            rhs: vec![vec![
                Factor::poly(quadratic()),
                Factor::ratfun(ratfun(Polynomial::one(), denom.clone())),
            ]],
        },
    )];
    steps.push(sign_step(
        "staircase.denominator-positive",
        "8n^2 (n+1)^2 > 0 for n >= 1",
        "8n^2 (n+1)^2 > 0",
        &denom,
        Interval::closed_ray(int(1)),
        Strategy::Companion,
    ));
    steps.push(sign_step(
        "staircase.quadratic-positive",
        "5n^2 - 11n - 11 > 0 on [3, inf): no real root up to the Cauchy bound and positive at both ends",
        "0 <= 5n^2 - 11n - 11 for n >= 3",
        &quadratic(),
        Interval::closed_ray(int(3)),
        Strategy::Roots,
    ));
    steps.push(ProofStep::new(
        "staircase.value-at-3",
        "5n^2 - 11n - 11 = 1 at n = 3",
        Method::ExactPolynomial,
        "5n^2 - 11n - 11 at n = 3",
        polynomial_value(&quadratic(), int(3), Sign::Positive),
    ));
    steps.push(ProofStep::new(
        "staircase.n2-expected-fail",
        "expected-fail fixture: 5n^2 - 11n - 11 = -13 < 0 at n = 2, so beta_2 > alpha_3 and the staircase starts at n = 3",
        Method::ExactPolynomial,
        "5n^2 - 11n - 11 at n = 2",
        polynomial_value(&quadratic(), int(2), Sign::Negative),
    ));
    steps.push(ProofStep::new(
        "staircase.n1-expected-fail",
        "expected-fail fixture: 5n^2 - 11n - 11 = -17 < 0 at n = 1",
        Method::ExactPolynomial,
        "5n^2 - 11n - 11 at n = 1",
        polynomial_value(&quadratic(), int(1), Sign::Negative),
    ));
    let (_, beta3) = hirschhorn_bounds(3);
    let (alpha4, _) = hirschhorn_bounds(4);
    debug_assert_eq!((beta3.clone(), alpha4.clone()), (rat(25, 36), rat(89, 128)));
    steps.push(ProofStep::new(
        "staircase.n3-exact",
        "beta_3 = 25/36 <= alpha_4 = 89/128",
        Method::ExactPolynomial,
        "beta_3 <= alpha_4",
        Witness::RationalOrder { lhs: beta3, rhs: alpha4, relation: Relation::LessOrEqual },
    ));
    steps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proof::Status;

    #[test]
    fn all_steps_verify() {
        for s in verify_staircase() {
            assert_eq!(s.status, Status::Verified, "{}", s.id);
        }
    }

    #[test]
    fn witnesses() {
        let steps = verify_staircase();
        let find = |id: &str| steps.iter().find(|s| s.id == id).unwrap().witness.clone();
        match find("staircase.value-at-3") {
            Witness::PolynomialValue { value, .. } => assert_eq!(value, int(1)),
            w => panic!("{w:?}"),
        }
        match find("staircase.n2-expected-fail") {
            Witness::PolynomialValue { value, .. } => assert_eq!(value, int(-13)),
            w => panic!("{w:?}"),
        }
    }
}
