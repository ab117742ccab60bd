use serde::{Deserialize, Serialize};

use super::BallError;

/// Schedule of working precisions for an adaptive computation: start at
/// `initial_bits`, multiply by `growth` after every undecided attempt, give up
/// beyond `max_bits`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrecisionPolicy {
    pub initial_bits: u32,
    pub max_bits: u32,
    pub growth: u32,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        PrecisionPolicy { initial_bits: 64, max_bits: 16384, growth: 2 }
    }
}

impl PrecisionPolicy {
    pub fn new(initial_bits: u32, max_bits: u32, growth: u32) -> Result<Self, BallError> {
        let p = PrecisionPolicy { initial_bits, max_bits, growth };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), BallError> {
        if self.initial_bits < 2 {
            return Err(BallError::InvalidPolicy("initial_bits must be at least 2".into()));
        }
        if self.initial_bits > self.max_bits {
            return Err(BallError::InvalidPolicy(format!(
                "initial_bits {} exceeds max_bits {}",
                self.initial_bits, self.max_bits
            )));
        }
        if self.growth < 2 {
            return Err(BallError::InvalidPolicy("growth must be at least 2".into()));
        }
        Ok(())
    }

    /// Same schedule with a different cap (clamped so the policy stays valid).
    pub fn with_max_bits(self, max_bits: u32) -> Self {
        PrecisionPolicy {
            initial_bits: self.initial_bits.min(max_bits.max(2)),
            max_bits: max_bits.max(2),
            ..self
        }
    }

    /// The precisions tried, in order.
    pub fn schedule(&self) -> impl Iterator<Item = u32> + '_ {
        std::iter::successors(Some(self.initial_bits), move |&b| {
            b.checked_mul(self.growth).filter(|&n| n <= self.max_bits)
        })
    }
}

/// A decided result and the precision that decided it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refined<T> {
    pub value: T,
    pub bits: u32,
}

/// Re-run `producer` at increasing precision until `decide` returns `Some`.
///
/// `producer` should be monotone (tighter enclosures at higher precision);
/// errors other than undecidedness are passed through unchanged.
pub fn refine_until<X, T>(
    policy: &PrecisionPolicy,
    mut producer: impl FnMut(u32) -> Result<X, BallError>,
    mut decide: impl FnMut(&X) -> Option<T>,
) -> Result<Refined<T>, BallError> {
    policy.validate()?;
    for bits in policy.schedule() {
        let x = producer(bits)?;
        if let Some(value) = decide(&x) {
            return Ok(Refined { value, bits });
        }
    }
    Err(BallError::PrecisionExhausted { max_bits: policy.max_bits })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ball::{certified_less, Ball, Certified};
    use crate::exact::rat;

    #[test]
    fn schedule_doubles_up_to_cap() {
        let p = PrecisionPolicy::default();
        let s: Vec<u32> = p.schedule().collect();
        assert_eq!(s.first(), Some(&64));
        assert_eq!(s.last(), Some(&16384));
        assert_eq!(s.len(), 9);
    }

    #[test]
    fn invalid_policies() {
        assert!(PrecisionPolicy::new(128, 64, 2).is_err());
        assert!(PrecisionPolicy::new(64, 128, 1).is_err());
        assert!(PrecisionPolicy::new(64, 128, 3).is_ok());
    }

    #[test]
    fn self_comparison_exhausts() {
        let r = refine_until(
            &PrecisionPolicy::new(64, 1024, 2).unwrap(),
            |bits| Ok(Ball::from_rational(&rat(1, 3), bits)),
            |x| match certified_less(x, x) {
                Certified::Undecided => None,
                c => Some(c),
            },
        );
        assert_eq!(r, Err(BallError::PrecisionExhausted { max_bits: 1024 }));
    }

    #[test]
    fn decides_at_first_sufficient_precision() {
        let r = refine_until(
            &PrecisionPolicy::default(),
            |bits| Ok(Ball::from_rational(&rat(1, 3), bits)),
            |x| (x.rad().magnitude_exp() < -100).then_some(()),
        )
        .unwrap();
        assert_eq!(r.bits, 128);
    }
}
