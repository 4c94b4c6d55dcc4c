//! Serde helpers that carry big integers as decimal strings.

use num_bigint::BigInt;
use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

pub fn serialize<S: Serializer>(value: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&value.to_string())
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
    let raw = StringOrInt::deserialize(d)?;
    raw.parse().map_err(D::Error::custom)
}

pub mod vec {
    use super::StringOrInt;
    use num_bigint::BigInt;
    use serde::{de::Error as _, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(values: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(values.len()))?;
        for v in values {
            seq.serialize_element(&v.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let raw = Vec::<StringOrInt>::deserialize(d)?;
        raw.into_iter()
            .map(|r| r.parse().map_err(D::Error::custom))
            .collect()
    }
}

pub mod matrix {
    use super::StringOrInt;
    use num_bigint::BigInt;
    use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(rows: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
        let text: Vec<Vec<String>> = rows
            .iter()
            .map(|r| r.iter().map(|v| v.to_string()).collect())
            .collect();
        text.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigInt>>, D::Error> {
        let raw = Vec::<Vec<StringOrInt>>::deserialize(d)?;
        raw.into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|r| r.parse().map_err(D::Error::custom))
                    .collect()
            })
            .collect()
    }
}

/// Decimal strings are canonical; plain JSON integers are accepted on input.
#[derive(Deserialize)]
#[serde(untagged)]
enum StringOrInt {
    Str(String),
    Int(i64),
}

impl StringOrInt {
    fn parse(self) -> Result<BigInt, String> {
        match self {
            StringOrInt::Str(s) => s
                .trim()
                .parse::<BigInt>()
                .map_err(|e| format!("invalid decimal integer {s:?}: {e}")),
            StringOrInt::Int(i) => Ok(BigInt::from(i)),
        }
    }
}

/// Rationals as "p/q" strings (or plain integers).
pub mod rational {
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::Zero;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&q.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let raw = String::deserialize(d)?;
        let (n, den) = match raw.split_once('/') {
            Some((n, den)) => (n.trim(), den.trim()),
            None => (raw.trim(), "1"),
        };
        let n: BigInt = n.parse().map_err(D::Error::custom)?;
        let den: BigInt = den.parse().map_err(D::Error::custom)?;
        if den.is_zero() {
            return Err(D::Error::custom("zero denominator"));
        }
        Ok(BigRational::new(n, den))
    }
}
