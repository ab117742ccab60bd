//! Monotonicity from `theta_n - theta_{n-1} > 0`.
//!
//! With `A_m = m! / (sqrt(pi) (m/e)^m)` and `E_n = e (n-1)^(n-1) / n^(n-1)`,
//! `A_n = A_{n-1} E_n`, so
//!
//! ```text
//! (theta_n - theta_{n-1}) / 30 = A_{n-1}^6 (E_n^6 - 1) - (24n^2 - 16n + 5).
//! ```
//!
//! The weak lower bound bounds `A_{n-1}^6` from below, the exp-ratio bound
//! bounds `E_n` from below, and what remains is a rational function of `n`.

use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;

use crate::exact::{int, rat, Anchor, Interval, Polynomial, RationalFunction, Strategy};

use super::exp_ratio::exp_ratio_series;
use super::log_ratio::recip_x;
use super::witness::{ball_order, sign, Factor, Quantity, Sign, Witness};
use super::{depends, ratfun, sign_step, Method, Part, ProofConfig, ProofStep, Severity};

/// `8m^3 + 4m^2 + m`
fn sextic() -> Polynomial {
    Polynomial::from_ints(&[0, 1, 4, 8])
}

/// `24n^2 - 16n + 5`
fn increment() -> Polynomial {
    Polynomial::from_ints(&[5, -16, 24])
}

/// `8m^3 + 4m^2 + m + (1 - 3/(2m))/30`
fn weak_sextic() -> RationalFunction {
    &RationalFunction::from_poly(&sextic() + &Polynomial::constant(rat(1, 30)))
        - &ratfun(Polynomial::constant(rat(1, 20)), Polynomial::x())
}

fn n_minus_1() -> RationalFunction {
    RationalFunction::from_poly(Polynomial::from_ints(&[-1, 1]))
}

/// `S(u)^6 - 1`
fn series_sixth_minus_one() -> Polynomial {
    &exp_ratio_series().pow(6) - &Polynomial::one()
}

fn lower_terms() -> Vec<Vec<Factor>> {
    vec![
        vec![
            Factor::substitute(weak_sextic(), n_minus_1()),
            Factor::substitute(RationalFunction::from_poly(series_sixth_minus_one()), recip_x()),
        ],
        vec![Factor::poly(-increment())],
    ]
}

/// `(P, K)` with the lower bound equal to `P(n) / (K n^30 (n-1))`.
pub fn difference_decomposition() -> (Polynomial, BigRational) {
    let g = super::witness::sum(&lower_terms()).expect("terms evaluate");
    let (content, p) = g.numer().primitive_part();
    (p, content.recip())
}

pub(crate) fn run(cfg: &ProofConfig) -> Part {
    let policy = &cfg.policy;
    let mut part = Part::default();
    let m = n_minus_1();

    part.push(ProofStep::new(
        "difference.integer-algebra",
        "(8n^3 + 4n^2 + n) - (8m^3 + 4m^2 + m) at m = n - 1 equals 8(3n^2 - 3n + 1) + 4(2n - 1) + 1 = 24n^2 - 16n + 5",
        Method::ExactPolynomial,
        "8(3n^2 - 3n + 1) + 4(2n - 1) + 1 = 24n^2 - 16n + 5",
        Witness::Batch {
            items: vec![
                Witness::Identity {
                    lhs: vec![
                        vec![Factor::poly(sextic())],
                        vec![Factor::constant(-BigRational::one()), Factor::substitute(sextic().into(), m.clone())],
                    ],
                    rhs: vec![vec![Factor::poly(increment())]],
                },
                Witness::Identity {
                    lhs: vec![
                        vec![Factor::constant(int(8)), Factor::poly(Polynomial::from_ints(&[1, -3, 3]))],
                        vec![Factor::constant(int(4)), Factor::poly(Polynomial::from_ints(&[-1, 2]))],
                        vec![Factor::constant(int(1))],
                    ],
                    rhs: vec![vec![Factor::poly(increment())]],
                },
            ],
        },
    ));
    part.push(depends(
        "difference.factorization",
        "n!/(n/e)^n = (n-1)!/((n-1)/e)^(n-1) * e (n-1)^(n-1)/n^(n-1), so \
         (theta_n - theta_{n-1})/30 = A_{n-1}^6 (E_n^6 - 1) - (24n^2 - 16n + 5)",
        "theta_n - theta_{n-1} = 30(A_{n-1}^6 (E_n^6 - 1) - 24n^2 + 16n - 5)",
        &["difference.integer-algebra"],
    ));
    part.push(depends(
        "difference.weak-lower-input",
        "A_m^6 >= 8m^3 + 4m^2 + m + (1 - 3/(2m))/30 for m >= 1",
        "theta_n >= 1 - 3/(2n)",
        &["weak-lower-bound.conclusion"],
    ));
    part.push(depends(
        "difference.exp-ratio-input",
        "E_n >= S(1/n) > 1 for n >= 2, so E_n^6 - 1 >= S(1/n)^6 - 1 > 0",
        "e(n-1)^(n-1)/n^(n-1) >= S(1/n)",
        &["exp-ratio.conclusion", "difference.s-sixth-positive"],
    ));
    // the dependency above points forward; keep the certificate ahead of it
    let last = part.steps.pop().expect("just pushed");
    part.push(sign_step(
        "difference.s-sixth-positive",
        "S(u)^6 - 1 > 0 for u > 0: all coefficients are nonnegative and the constant term vanishes",
        "S(1/n)^6 - 1 > 0",
        &series_sixth_minus_one(),
        Interval::left_open(int(0), int(1)),
        Strategy::Companion,
    ));
    part.push(last);

    let (p, k) = difference_decomposition();
    part.constants.insert("difference.K".into(), k.clone());
    // n^30 (n - 1)
    let denom = &Polynomial::monomial(int(1), 30) * &Polynomial::from_ints(&[-1, 1]);
    part.push(ProofStep::new(
        "difference.expansion",
        format!(
            "W(n-1) (S(1/n)^6 - 1) - (24n^2 - 16n + 5) = P(n) / (K n^30 (n-1)) with deg P = {} and K = {k}, \
             where W(m) = 8m^3 + 4m^2 + m + (1 - 3/(2m))/30",
            p.degree().unwrap_or(0)
        ),
        Method::ExactRatfun,
        "P(n) / K n^30 (n-1)",
        Witness::Identity {
            lhs: lower_terms(),
            rhs: vec![vec![
                Factor::constant(k.recip()),
                Factor::poly(p.clone()),
                Factor::ratfun(ratfun(Polynomial::one(), denom.clone())),
            ]],
        },
    ));
    part.push(sign_step(
        "difference.denominator-positive",
        "n^30 (n - 1) > 0 for n >= 2",
        "K n^30 (n-1) > 0",
        &denom,
        Interval::closed_ray(int(2)),
        Strategy::Roots,
    ));
    part.push(ProofStep::new(
        "difference.leading-coefficient",
        format!("the leading coefficient of P is {} > 0", p.leading_coeff().expect("nonzero")),
        Method::ExactPolynomial,
        "leading coefficient of P",
        Witness::LeadingCoefficient { poly: p.clone(), expect: Sign::Positive },
    ));
    let q = p.companion(Anchor::LeadingTerm).unwrap_or_else(|_| Polynomial::zero());
    let deg = p.degree().unwrap_or(0);
    part.push(ProofStep::new(
        "difference.companion",
        "Q = leading term of P plus its negative terms, so Q(n) <= P(n) for n >= 0",
        Method::ExactPolynomial,
        "Q consists of the leading term of P and its negative terms",
        Witness::Companion { poly: p.clone(), anchor: Anchor::LeadingTerm, expected: q.clone() },
    ));
    // R(v) = v^deg Q(1/v)
    let r = q.reversed();
    part.push(ProofStep::new(
        "difference.reversal",
        format!("Q(n) = n^{deg} R(1/n)"),
        Method::ExactRatfun,
        "Q(n) = n^29 R(1/n)",
        Witness::Identity {
            lhs: vec![vec![Factor::poly(q)]],
            rhs: vec![vec![
                Factor::poly(Polynomial::monomial(int(1), deg)),
                Factor::substitute(RationalFunction::from_poly(r.clone()), recip_x()),
            ]],
        },
    ));
    let cert = sign(&r, &Interval::left_open(int(0), rat(1, 106)), Strategy::Companion);
    let r_at = r.eval(&rat(1, 106));
    part.push(ProofStep::new(
        "difference.r-positive",
        "R has a positive constant term and nonpositive higher coefficients, so R(1/n) does not \
         decrease as n grows; R(1/106) > 0 gives R(1/n) > 0 for every n >= 106",
        Method::SignCertificate,
        "R(1/106) > 0",
        cert,
    ));
    part.push(
        ProofStep::new(
            "difference.r-ratio",
            format!(
                "R(1/106)/K = {} is within 10% of 0.00023",
                crate::ball::rational_to_decimal(&(&r_at / &k), 7)
            ),
            Method::ExactPolynomial,
            "R(1/106)/K = 0.00023",
            Witness::Approximation { value: &r_at / &k, expected: "0.00023".into(), rel_tol: rat(1, 10) },
        )
        .with_severity(Severity::Soft),
    );
    part.push(sign_step(
        "difference.p-roots",
        "cross-check: P has no real root in [106, inf) by Sturm counting up to the Cauchy bound",
        "P(n) > 0 for n >= 106",
        &p,
        Interval::closed_ray(int(106)),
        Strategy::Roots,
    ));
    part.push(depends(
        "difference.tail",
        "for n >= 106: theta_n - theta_{n-1} >= 30 P(n)/(K n^30 (n-1)) >= 30 Q(n)/(K n^30 (n-1)) > 0",
        "R(1/106)/K > 0, and so the result is valid for n >= 106",
        &[
            "difference.factorization",
            "difference.weak-lower-input",
            "difference.exp-ratio-input",
            "difference.expansion",
            "difference.denominator-positive",
            "difference.companion",
            "difference.reversal",
            "difference.r-positive",
        ],
    ));

    let base: Vec<ProofStep> = (2..=cfg.difference_base_to)
        .into_par_iter()
        .map(|n| {
            ProofStep::new(
                format!("difference.base.n={n}"),
                format!("theta_{} < theta_{n}", n - 1),
                Method::BallComparison,
                "theta_{n-1} < theta_n",
                ball_order(Quantity::Theta { n: n - 1 }, Quantity::Theta { n }, policy),
            )
        })
        .collect();
    let mut req: Vec<String> = base.iter().map(|s| s.id.clone()).collect();
    part.steps.extend(base);
    req.push("difference.tail".into());
    let req: Vec<&str> = req.iter().map(String::as_str).collect();
    part.push(depends(
        "difference.conclusion",
        &format!(
            "theta_n is strictly increasing: n = 2..{} directly, n >= 106 through the expansion",
            cfg.difference_base_to
        ),
        "theta_{n-1} < theta_n for every n >= 2",
        &req,
    ));
    part
}

pub fn verify_difference_proof(cfg: &ProofConfig) -> Vec<ProofStep> {
    run(cfg).steps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ramanujan::sextic_polynomial;
    use num_bigint::BigInt;

    #[test]
    fn decomposition_constants() {
        let (p, k) = difference_decomposition();
        assert_eq!(p.degree(), Some(29));
        assert_eq!(k, BigRational::from_integer("140238134154457251840000000".parse::<BigInt>().unwrap()));
        assert_eq!(
            p.leading_coeff().cloned().unwrap(),
            BigRational::from_integer("4674604471815241728000000".parse::<BigInt>().unwrap())
        );
    }

    #[test]
    fn sextic_matches() {
        for n in 1..20 {
            assert_eq!(sextic().eval(&int(n as i64)), BigRational::from_integer(sextic_polynomial(n)));
        }
    }
}
