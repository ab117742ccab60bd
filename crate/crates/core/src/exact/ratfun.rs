use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{ExactError, Polynomial};

/// Quotient of two polynomials, kept in lowest terms with a monic denominator.
///
/// Because the form is canonical, equality of rational functions is plain
/// field comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawRatfun")]
pub struct RationalFunction {
    numer: Polynomial,
    denom: Polynomial,
}

#[derive(Deserialize)]
struct RawRatfun {
    numer: Polynomial,
    denom: Polynomial,
}

impl TryFrom<RawRatfun> for RationalFunction {
    type Error = ExactError;

    fn try_from(raw: RawRatfun) -> Result<Self, ExactError> {
        RationalFunction::new(raw.numer, raw.denom)
    }
}

/// Greatest common divisor via the subresultant remainder sequence, returned monic.
pub(crate) fn poly_gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let (mut a, mut b) = if a.degree() >= b.degree() {
        (a.primitive_part().1, b.primitive_part().1)
    } else {
        (b.primitive_part().1, a.primitive_part().1)
    };
    if b.is_zero() {
        return a.monic();
    }
    let mut g = BigRational::one();
    let mut h = BigRational::one();
    loop {
        let delta = a.degree().unwrap_or(0) - b.degree().unwrap_or(0);
        let r = a.pseudo_rem(&b).expect("b is nonzero");
        if r.is_zero() {
            return b.monic();
        }
        if r.degree() == Some(0) {
            return Polynomial::one();
        }
        let divisor = &g * num_traits::pow(h.clone(), delta);
        a = b;
        b = r.scale(&divisor.recip());
        g = a.leading_coeff().cloned().expect("nonzero");
        // h <- g^delta / h^(delta - 1)
        h = if delta == 0 {
            h
        } else {
            num_traits::pow(g.clone(), delta) / num_traits::pow(h, delta - 1)
        };
    }
}

impl RationalFunction {
    /// Build `numer / denom` in canonical form.
    pub fn new(numer: Polynomial, denom: Polynomial) -> Result<Self, ExactError> {
        if denom.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        if numer.is_zero() {
            return Ok(RationalFunction { numer, denom: Polynomial::one() });
        }
        let g = poly_gcd(&numer, &denom);
        let (n, _) = numer.div_rem(&g)?;
        let (d, _) = denom.div_rem(&g)?;
        let lc = d.leading_coeff().cloned().expect("nonzero").recip();
        Ok(RationalFunction { numer: n.scale(&lc), denom: d.scale(&lc) })
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalFunction { numer: p, denom: Polynomial::one() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn numer(&self) -> &Polynomial {
        &self.numer
    }

    pub fn denom(&self) -> &Polynomial {
        &self.denom
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    pub fn recip(&self) -> Result<Self, ExactError> {
        Self::new(self.denom.clone(), self.numer.clone())
    }

    pub fn eval(&self, x: &BigRational) -> Result<BigRational, ExactError> {
        let d = self.denom.eval(x);
        if d.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        Ok(self.numer.eval(x) / d)
    }

    pub fn pow(&self, k: u32) -> Self {
        // already coprime, powers stay coprime
        RationalFunction { numer: self.numer.pow(k), denom: self.denom.pow(k) }
    }

    /// Evaluate the polynomial `p` at this rational function.
    pub fn substitute_into(&self, p: &Polynomial) -> Self {
        p.coeffs().iter().rev().fold(Self::from_poly(Polynomial::zero()), |acc, c| {
            &(&acc * self) + &Self::constant(c.clone())
        })
    }

    pub fn try_div(&self, rhs: &Self) -> Result<Self, ExactError> {
        if rhs.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Self::new(&self.numer * &rhs.denom, &self.denom * &rhs.numer)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom == Polynomial::one() {
            write!(f, "{}", self.numer)
        } else {
            write!(f, "({}) / ({})", self.numer, self.denom)
        }
    }
}

impl<'a> Add<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;

    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.denom == rhs.denom {
            return RationalFunction::new(&self.numer + &rhs.numer, self.denom.clone())
                .expect("nonzero denominator");
        }
        RationalFunction::new(
            &(&self.numer * &rhs.denom) + &(&rhs.numer * &self.denom),
            &self.denom * &rhs.denom,
        )
        .expect("nonzero denominator")
    }
}

impl<'a> Sub<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;

    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;

    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&self.numer * &rhs.numer, &self.denom * &rhs.denom)
            .expect("nonzero denominator")
    }
}

/// Panics when dividing by the zero function; see [`RationalFunction::try_div`].
impl<'a> Div<&'a RationalFunction> for &'a RationalFunction {
    type Output = RationalFunction;

    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self.try_div(rhs).expect("division by the zero rational function")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;

    fn neg(self) -> RationalFunction {
        RationalFunction { numer: -&self.numer, denom: self.denom.clone() }
    }
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        Self::from_poly(p)
    }
}

impl Zero for RationalFunction {
    fn zero() -> Self {
        Self::from_poly(Polynomial::zero())
    }

    fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }
}

impl Add for RationalFunction {
    type Output = RationalFunction;

    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}
