//! Helpers around [`BigRational`]: `p/q` text form and factorials.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Formats a rational as `p/q`, always with an explicit denominator.
pub fn to_pq(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `p/q` or a bare integer `p`.
pub fn parse_pq(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::validation(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::validation(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(p, q))
        }
        None => {
            let p: BigInt = s.parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(p))
        }
    }
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, k| acc * k)
}

pub fn ratio(num: &BigUint, den: &BigUint) -> BigRational {
    BigRational::new(BigInt::from(num.clone()), BigInt::from(den.clone()))
}

pub fn from_u64(v: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

pub fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Total variation distance `½ Σ |p − q|` between two exact distributions
/// given as aligned weight slices.
pub fn total_variation<'a>(
    pairs: impl IntoIterator<Item = (&'a BigRational, &'a BigRational)>,
) -> BigRational {
    let sum = pairs.into_iter().fold(BigRational::zero(), |acc, (p, q)| {
        let d = p - q;
        if d < BigRational::zero() {
            acc - d
        } else {
            acc + d
        }
    });
    sum / from_u64(2)
}

/// Serde adapters writing rationals as `p/q` strings.
pub mod serde_pq {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::to_pq(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse_pq(&s).map_err(serde::de::Error::custom)
    }

    pub mod vec {
        use num_rational::BigRational;
        use serde::ser::SerializeSeq;
        use serde::{Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for q in v {
                seq.serialize_element(&super::super::to_pq(q))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
            Vec::<String>::deserialize(d)?
                .iter()
                .map(|s| super::super::parse_pq(s).map_err(serde::de::Error::custom))
                .collect()
        }
    }

    pub mod opt {
        use num_rational::BigRational;
        use serde::{Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(q: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
            match q {
                Some(q) => s.serialize_some(&super::super::to_pq(q)),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigRational>, D::Error> {
            Option::<String>::deserialize(d)?
                .map(|s| super::super::parse_pq(&s).map_err(serde::de::Error::custom))
                .transpose()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pq_text_form() {
        let q = parse_pq("4/6").unwrap();
        assert_eq!(to_pq(&q), "2/3");
        assert_eq!(to_pq(&parse_pq("7").unwrap()), "7/1");
        assert_eq!(to_pq(&parse_pq("-1/2").unwrap()), "-1/2");
        assert!(parse_pq("1/0").is_err());
        assert!(parse_pq("x").is_err());
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), BigUint::one());
        assert_eq!(factorial(5), BigUint::from(120u32));
    }
}
