//! Exact real-root counting with Sturm sequences.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{ExactError, Polynomial};

/// `p, p', -rem(p, p'), ...` down to a constant. Each member is rescaled by a
/// positive constant to a primitive integer polynomial, which leaves every sign
/// (and hence every variation count) unchanged while keeping coefficients small.
pub fn sturm_sequence(p: &Polynomial) -> Vec<Polynomial> {
    let mut seq = Vec::new();
    if p.is_zero() {
        return seq;
    }
    seq.push(p.primitive_part().1);
    let d = p.derivative();
    if d.is_zero() {
        return seq;
    }
    seq.push(d.primitive_part().1);
    loop {
        let n = seq.len();
        let (_, r) = seq[n - 2].div_rem(&seq[n - 1]).expect("nonzero divisor");
        if r.is_zero() {
            break;
        }
        seq.push((-&r).primitive_part().1);
    }
    seq
}

/// Number of sign changes in the sequence evaluated at `x`, zeros skipped.
pub fn sign_variations(seq: &[Polynomial], x: &BigRational) -> usize {
    let mut count = 0;
    let mut last: Option<bool> = None;
    for p in seq {
        let v = p.eval(x);
        if v.is_zero() {
            continue;
        }
        let pos = v.is_positive();
        if last.is_some_and(|l| l != pos) {
            count += 1;
        }
        last = Some(pos);
    }
    count
}

/// Exact number of distinct real roots of `p` in the open interval `(a, b)`.
pub fn count_roots(p: &Polynomial, a: &BigRational, b: &BigRational) -> Result<usize, ExactError> {
    if a >= b {
        return Err(ExactError::InvalidInterval(format!("need a < b, got ({a}, {b})")));
    }
    if p.is_zero() {
        return Err(ExactError::InvalidInterval("the zero polynomial vanishes everywhere".into()));
    }
    for e in [a, b] {
        if p.eval(e).is_zero() {
            return Err(ExactError::EndpointIsRoot(e.clone()));
        }
    }
    let seq = sturm_sequence(p);
    Ok(sign_variations(&seq, a) - sign_variations(&seq, b))
}

/// Cauchy's bound `1 + max |a_i / a_n|`: every complex root has modulus below it.
pub fn cauchy_root_bound(p: &Polynomial) -> BigRational {
    let Some(lc) = p.leading_coeff() else {
        return BigRational::one();
    };
    let n = p.coeffs().len() - 1;
    let max = p.coeffs()[..n]
        .iter()
        .map(|c| (c / lc).abs())
        .fold(BigRational::zero(), |m, c| if c > m { c } else { m });
    BigRational::one() + max
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    #[test]
    fn sqrt_two_is_counted() {
        assert_eq!(count_roots(&p(&[-2, 0, 1]), &int(0), &int(2)), Ok(1));
        assert_eq!(count_roots(&p(&[-2, 0, 1]), &int(-3), &int(3)), Ok(2));
    }

    #[test]
    fn quadratic_has_no_root_beyond_three() {
        // positive root (11 + sqrt 341)/10 ~ 2.946
        assert_eq!(count_roots(&p(&[-11, -11, 5]), &int(3), &int(1000)), Ok(0));
        assert_eq!(count_roots(&p(&[-11, -11, 5]), &int(2), &int(3)), Ok(1));
    }

    #[test]
    fn no_real_roots() {
        assert_eq!(count_roots(&p(&[1, 0, 1]), &int(-10), &int(10)), Ok(0));
    }

    #[test]
    fn repeated_roots_count_once() {
        let f = &p(&[-1, 1]).pow(3) * &p(&[-3, 1]);
        assert_eq!(count_roots(&f, &int(0), &int(2)), Ok(1));
        assert_eq!(count_roots(&f, &int(0), &int(4)), Ok(2));
    }

    #[test]
    fn endpoint_root_and_bad_interval() {
        assert_eq!(count_roots(&p(&[-1, 1]), &int(1), &int(2)), Err(ExactError::EndpointIsRoot(int(1))));
        assert!(matches!(count_roots(&p(&[-1, 1]), &int(2), &int(2)), Err(ExactError::InvalidInterval(_))));
    }

    #[test]
    fn cauchy_bound_dominates_roots() {
        let f = p(&[-11, -11, 5]);
        assert_eq!(cauchy_root_bound(&f), rat(16, 5));
        let b = cauchy_root_bound(&f);
        assert_eq!(count_roots(&f, &-&b, &b), Ok(2));
    }
}
