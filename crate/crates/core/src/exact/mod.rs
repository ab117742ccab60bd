//! Exact arithmetic kernel: rationals, dense univariate polynomials, rational
//! functions and positivity certificates. Nothing in here rounds.

mod certify;
mod poly;
mod ratfun;
pub mod serde_rational;
mod sturm;

pub use certify::{
    certify_positive, certify_positive_on, CertificateKind, Interval, SignCertificate, Strategy,
};
pub use num_rational::BigRational;
pub use poly::{Anchor, Polynomial};
pub use ratfun::RationalFunction;
pub use sturm::{cauchy_root_bound, count_roots, sign_variations, sturm_sequence};

use num_bigint::BigInt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("anchor coefficient is not positive")]
    AnchorNotPositive,
    #[error("endpoint {0} is a root")]
    EndpointIsRoot(BigRational),
    #[error("invalid interval: {0}")]
    InvalidInterval(String),
    #[error("cannot certify positivity: {0}")]
    CannotCertify(String),
    #[error("certificate replay failed: {0}")]
    ReplayFailed(String),
}

/// `num/den` as an exact rational. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}
