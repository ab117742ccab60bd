//! Rationals travel as `{"num": "...", "den": "..."}` so nothing is lost in
//! transport. Use with `#[serde(with = "serde_rational")]`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalRepr {
    pub num: String,
    pub den: String,
}

impl From<&BigRational> for RationalRepr {
    fn from(q: &BigRational) -> Self {
        RationalRepr {
            num: q.numer().to_string(),
            den: q.denom().to_string(),
        }
    }
}

impl RationalRepr {
    pub fn to_rational(&self) -> Result<BigRational, String> {
        let num: BigInt = self.num.parse().map_err(|e| format!("bad numerator: {e}"))?;
        let den: BigInt = self.den.parse().map_err(|e| format!("bad denominator: {e}"))?;
        if den.is_zero() {
            return Err("zero denominator".into());
        }
        Ok(BigRational::new(num, den))
    }
}

pub fn serialize<S: Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    RationalRepr::from(q).serialize(s)
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
    RationalRepr::deserialize(d)?
        .to_rational()
        .map_err(D::Error::custom)
}

pub mod option {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
        q.as_ref().map(RationalRepr::from).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigRational>, D::Error> {
        match Option::<RationalRepr>::deserialize(d)? {
            Some(r) => r.to_rational().map(Some).map_err(D::Error::custom),
            None => Ok(None),
        }
    }
}

pub mod vec {
    use super::*;

    pub fn serialize<S: Serializer>(qs: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        qs.iter()
            .map(RationalRepr::from)
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        Vec::<RationalRepr>::deserialize(d)?
            .iter()
            .map(|r| r.to_rational().map_err(D::Error::custom))
            .collect()
    }
}

pub mod map {
    use super::*;
    use std::collections::BTreeMap;

    pub fn serialize<S: Serializer>(
        m: &BTreeMap<String, BigRational>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        m.iter()
            .map(|(k, v)| (k.clone(), RationalRepr::from(v)))
            .collect::<BTreeMap<_, _>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<BTreeMap<String, BigRational>, D::Error> {
        BTreeMap::<String, RationalRepr>::deserialize(d)?
            .into_iter()
            .map(|(k, v)| Ok((k, v.to_rational().map_err(D::Error::custom)?)))
            .collect()
    }
}
