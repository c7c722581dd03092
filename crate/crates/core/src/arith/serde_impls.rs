//! JSON shapes: a Laurent polynomial is a sorted list of
//! `[exponent, numerator, denominator]`, a rational function is `{num, den}`,
//! a series is `{grading, trunc, coeffs: [[degree, {num, den}], ...]}`.
//! Integers that overflow `i64` are written as decimal strings.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{GradedSeries, Grading, LaurentPoly, RationalFunc};
use crate::dimvec::DimVector;

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum IntRepr {
    Small(i64),
    Big(String),
}

impl From<&BigInt> for IntRepr {
    fn from(n: &BigInt) -> Self {
        match n.to_i64() {
            Some(x) => IntRepr::Small(x),
            None => IntRepr::Big(n.to_string()),
        }
    }
}

impl IntRepr {
    fn to_bigint<E: serde::de::Error>(&self) -> Result<BigInt, E> {
        match self {
            IntRepr::Small(x) => Ok(BigInt::from(*x)),
            IntRepr::Big(s) => s.parse().map_err(|_| E::custom(format!("bad integer {s:?}"))),
        }
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let triples: Vec<(i64, IntRepr, IntRepr)> = self
            .terms()
            .map(|(e, c)| (e, c.numer().into(), c.denom().into()))
            .collect();
        triples.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let triples: Vec<(i64, IntRepr, IntRepr)> = Vec::deserialize(de)?;
        let mut terms = Vec::with_capacity(triples.len());
        for (e, n, d) in triples {
            let d = d.to_bigint()?;
            if d.is_zero() {
                return Err(D::Error::custom("zero denominator"));
            }
            terms.push((e, BigRational::new(n.to_bigint()?, d)));
        }
        Ok(LaurentPoly::from_terms(terms))
    }
}

#[derive(Serialize, Deserialize)]
struct RationalRepr {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Serialize for RationalFunc {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        RationalRepr {
            num: self.numer().clone(),
            den: self.denom().clone(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for RationalFunc {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let r = RationalRepr::deserialize(de)?;
        RationalFunc::new(r.num, r.den).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum DegreeRepr {
    Integer(i64),
    Vector(DimVector),
}

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    grading: Grading,
    trunc: i64,
    coeffs: Vec<(DegreeRepr, RationalFunc)>,
}

impl Serialize for GradedSeries {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let coeffs = self
            .iter()
            .map(|(d, c)| {
                let deg = match self.grading() {
                    Grading::Integer => DegreeRepr::Integer(d.get(0)),
                    Grading::Vector(_) => DegreeRepr::Vector(d.clone()),
                };
                (deg, c.clone())
            })
            .collect();
        SeriesRepr {
            grading: self.grading(),
            trunc: self.trunc(),
            coeffs,
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for GradedSeries {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let r = SeriesRepr::deserialize(de)?;
        let mut terms = Vec::with_capacity(r.coeffs.len());
        for (deg, c) in r.coeffs {
            let d = match deg {
                DegreeRepr::Integer(n) => DimVector::new(vec![n]).map_err(D::Error::custom)?,
                DegreeRepr::Vector(d) => d,
            };
            terms.push((d, c));
        }
        GradedSeries::from_coeffs(r.grading, r.trunc, terms).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laurent_json_shape() {
        let p = LaurentPoly::from_terms([
            (-2, BigRational::new(1.into(), 2.into())),
            (4, BigRational::from_integer((-3).into())),
        ]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, "[[-2,1,2],[4,-3,1]]");
        assert_eq!(serde_json::from_str::<LaurentPoly>(&s).unwrap(), p);
    }

    #[test]
    fn big_coefficients_survive() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let p = LaurentPoly::constant(BigRational::from_integer(big));
        let s = serde_json::to_string(&p).unwrap();
        assert!(s.contains("\"123456789012345678901234567890\""));
        assert_eq!(serde_json::from_str::<LaurentPoly>(&s).unwrap(), p);
    }

    #[test]
    fn series_round_trip() {
        let r = RationalFunc::new(
            LaurentPoly::q_pow(-1),
            LaurentPoly::from_int_terms([(0, 1), (4, -1)]),
        )
        .unwrap();
        let s = GradedSeries::from_coeffs(
            Grading::Integer,
            3,
            [(DimVector::scalar(0), RationalFunc::one()), (DimVector::scalar(2), r)],
        )
        .unwrap();
        let json = serde_json::to_string(&s).unwrap();
        assert!(json.starts_with("{\"grading\":\"integer\",\"trunc\":3,\"coeffs\":[[0,"));
        assert_eq!(serde_json::from_str::<GradedSeries>(&json).unwrap(), s);
    }
}
