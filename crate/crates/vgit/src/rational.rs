//! The rational type used on the GIT side, plus "p/q" string helpers.

use num_rational::Ratio;
use thiserror::Error;

/// Exact rational with 64-bit numerator and denominator.
pub type Q = Ratio<i64>;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("cannot parse `{0}` as a rational (expected `p` or `p/q`)")]
pub struct ParseRationalError(pub String);

pub fn q(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(n)
}

/// Formats as `p` when integral and `p/q` otherwise.
pub fn to_text(x: &Q) -> String {
    x.to_string()
}

pub fn parse_q(text: &str) -> Result<Q, ParseRationalError> {
    let t = text.trim();
    let err = || ParseRationalError(text.to_string());
    match t.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| err())?;
            let d: i64 = d.trim().parse().map_err(|_| err())?;
            if d == 0 {
                return Err(err());
            }
            Ok(Q::new(n, d))
        }
        None => t.parse::<i64>().map(Q::from_integer).map_err(|_| err()),
    }
}

/// Serde adapter writing rationals as "p/q" strings.
pub mod serde_q {
    use super::{parse_q, Q};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let s = String::deserialize(d)?;
        parse_q(&s).map_err(serde::de::Error::custom)
    }
}

/// Same as [`serde_q`] for vectors.
pub mod serde_q_vec {
    use super::{parse_q, Q};
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(xs: &[Q], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&x.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_q(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for x in [q(3, 5), qi(0), q(-7, 4), qi(12)] {
            assert_eq!(parse_q(&to_text(&x)).unwrap(), x);
        }
        assert_eq!(to_text(&q(4, 2)), "2");
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x").is_err());
    }
}
