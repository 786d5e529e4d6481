//! Exact rational helpers and their JSON form.
//!
//! Rationals travel as `"p/q"` strings or plain integers. Decimals are
//! rejected so that no value ever passes through a float.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{de, Deserialize, Deserializer, Serializer};
use std::fmt;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse `{input}` as an exact rational: {reason}")]
pub struct ParseRationalError {
    pub input: String,
    pub reason: &'static str,
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn from_big(v: &BigInt) -> Rational {
    Rational::from_integer(v.clone())
}

pub fn parse_int(s: &str) -> Result<BigInt, ParseRationalError> {
    let t = s.trim();
    let t = t.strip_prefix('+').unwrap_or(t);
    t.parse::<BigInt>().map_err(|_| ParseRationalError {
        input: s.to_string(),
        reason: "expected an integer",
    })
}

pub fn parse(s: &str) -> Result<Rational, ParseRationalError> {
    let err = |reason| ParseRationalError {
        input: s.to_string(),
        reason,
    };
    if s.contains('.') || s.contains('e') || s.contains('E') {
        return Err(err("decimal notation is not accepted"));
    }
    match s.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(s)?)),
        Some((p, q)) => {
            let p = parse_int(p)?;
            let q = parse_int(q)?;
            if q.is_zero() {
                return Err(err("zero denominator"));
            }
            Ok(Rational::new(p, q))
        }
    }
}

/// `p` for integers, `p/q` otherwise, always in lowest terms.
pub fn format(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Binomial coefficient `t choose k` for rational `t`, by falling factorial.
pub fn binom(t: &Rational, k: u32) -> Rational {
    let mut acc = Rational::one();
    for i in 0..k {
        acc *= t - int(i as i64);
        acc /= int(i as i64 + 1);
    }
    acc
}

/// Smallest integer strictly greater than `x`.
pub fn strict_ceil(x: &Rational) -> BigInt {
    x.floor().to_integer() + 1
}

pub fn sign_pow(k: i64) -> BigInt {
    if k.rem_euclid(2) == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

enum Loose {
    Int(i64),
    UInt(u64),
    Str(String),
}

struct LooseVisitor;

impl<'de> de::Visitor<'de> for LooseVisitor {
    type Value = Loose;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a \"p/q\" string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Loose, E> {
        Ok(Loose::Int(v))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Loose, E> {
        Ok(Loose::UInt(v))
    }

    fn visit_f64<E: de::Error>(self, _: f64) -> Result<Loose, E> {
        Err(E::custom("decimal numbers are not accepted; use \"p/q\""))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Loose, E> {
        Ok(Loose::Str(v.to_string()))
    }
}

impl<'de> Deserialize<'de> for Loose {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_any(LooseVisitor)
    }
}

impl Loose {
    fn rational<E: de::Error>(self) -> Result<Rational, E> {
        match self {
            Loose::Int(v) => Ok(int(v)),
            Loose::UInt(v) => Ok(Rational::from_integer(BigInt::from(v))),
            Loose::Str(s) => parse(&s).map_err(E::custom),
        }
    }

    fn integer<E: de::Error>(self) -> Result<BigInt, E> {
        match self {
            Loose::Int(v) => Ok(BigInt::from(v)),
            Loose::UInt(v) => Ok(BigInt::from(v)),
            Loose::Str(s) => parse_int(&s).map_err(E::custom),
        }
    }
}

/// Serde adapter for a single rational.
pub mod q {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        Loose::deserialize(d)?.rational()
    }
}

pub mod q_opt {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => s.serialize_some(&format(v)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        Option::<Loose>::deserialize(d)?
            .map(Loose::rational)
            .transpose()
    }
}

pub mod q_vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&format(x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Vec::<Loose>::deserialize(d)?
            .into_iter()
            .map(Loose::rational)
            .collect()
    }
}

pub mod q_vec_opt {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<Vec<Rational>>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => s.serialize_some(&v.iter().map(format).collect::<Vec<_>>()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<Rational>>, D::Error> {
        Option::<Vec<Loose>>::deserialize(d)?
            .map(|v| v.into_iter().map(Loose::rational).collect())
            .transpose()
    }
}

/// Serde adapter for a big integer; accepts JSON integers or digit strings.
pub mod z {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        Loose::deserialize(d)?.integer()
    }
}

pub mod z_vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&x.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<Loose>::deserialize(d)?
            .into_iter()
            .map(Loose::integer)
            .collect()
    }
}
