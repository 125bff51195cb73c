//! Exact rational arithmetic.
//!
//! [`Rational`] is an arbitrary-precision fraction kept in canonical form
//! (positive denominator, coprime parts). Its textual form is `"p/q"`, with
//! `"/q"` omitted when the denominator is one; this is the only form in which
//! rationals cross serialization boundaries.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Error;

pub type Rational = BigRational;

/// `p/q` from machine integers. Panics on `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

pub fn from_bigint(p: BigInt) -> Rational {
    Rational::from_integer(p)
}

pub fn parse(s: &str) -> Result<Rational, Error> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

pub fn to_string(r: &Rational) -> String {
    r.to_string()
}

pub fn to_f64(r: &Rational) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // Huge parts: scale both down before dividing.
    let n = r.numer();
    let d = r.denom();
    let shift = n.bits().max(d.bits()).saturating_sub(900);
    let n = (n >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (d >> shift).to_f64().unwrap_or(f64::NAN);
    n / d
}

/// Largest integer not exceeding `r`.
pub fn floor(r: &Rational) -> BigInt {
    r.numer().div_floor(r.denom())
}

/// `r - floor(r)`, always in `[0, 1)`.
pub fn frac(r: &Rational) -> Rational {
    r - from_bigint(floor(r))
}

pub fn pow(r: &Rational, e: u32) -> Rational {
    num_traits::pow(r.clone(), e as usize)
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

/// The rational with the smallest denominator in the closed interval `[lo, hi]`.
///
/// Walks the Stern-Brocot tree via continued fractions. Used to snap tight
/// root enclosures onto exact rational roots.
pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    assert!(lo <= hi, "empty interval");
    if lo.is_negative() && hi.is_positive() || lo.is_zero() || hi.is_zero() {
        return Rational::zero();
    }
    if hi.is_negative() {
        return -simplest_between(&-hi, &-lo);
    }
    simplest_positive(lo, hi)
}

fn simplest_positive(lo: &Rational, hi: &Rational) -> Rational {
    let fl = floor(lo);
    let fl_r = from_bigint(fl.clone());
    if &fl_r == lo {
        return fl_r;
    }
    // Some integer lies in (lo, hi].
    if from_bigint(fl.clone() + 1) <= *hi {
        return from_bigint(fl + 1);
    }
    // Same integer part: recurse on reciprocals of the fractional parts.
    let lo_f = lo - &fl_r;
    let hi_f = hi - &fl_r;
    let inner = simplest_positive(&hi_f.recip(), &lo_f.recip());
    fl_r + inner.recip()
}

/// Serde adapter storing a [`Rational`] as its `"p/q"` string.
pub mod serde_str {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for `Vec<Rational>` as a list of strings.
pub mod serde_vec {
    use super::Rational;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&r.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| super::parse(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

pub mod serde_opt {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_some(&r.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        let v = Option::<String>::deserialize(d)?;
        v.map(|s| super::parse(&s).map_err(serde::de::Error::custom))
            .transpose()
    }
}

pub mod serde_opt_vec {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Vec<Rational>>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => s.serialize_some(&v.iter().map(|r| r.to_string()).collect::<Vec<_>>()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<Rational>>, D::Error> {
        let v = Option::<Vec<String>>::deserialize(d)?;
        v.map(|v| v.iter().map(|s| super::parse(s).map_err(serde::de::Error::custom)).collect())
            .transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_form() {
        let r = rat(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(rat(1, 2) + rat(1, 3), rat(5, 6));
    }

    #[test]
    fn string_form() {
        assert_eq!(to_string(&rat(-3, 2)), "-3/2");
        assert_eq!(to_string(&int(7)), "7");
        assert_eq!(parse("10/-4").unwrap(), rat(-5, 2));
        assert_eq!(parse(" 3 ").unwrap(), int(3));
        assert!(parse("1/0").is_err());
        assert!(parse("abc").is_err());
    }

    #[test]
    fn floor_and_frac() {
        assert_eq!(frac(&rat(-1, 2)), rat(1, 2));
        assert_eq!(frac(&rat(7, 4)), rat(3, 4));
        assert_eq!(floor(&rat(-7, 4)), BigInt::from(-2));
        assert_eq!(frac(&int(3)), int(0));
    }

    #[test]
    fn simplest_rational() {
        assert_eq!(simplest_between(&rat(1, 3), &rat(1, 2)), rat(1, 2));
        assert_eq!(simplest_between(&rat(3, 10), &rat(4, 10)), rat(1, 3));
        let eps = rat(1, 1_000_000_000);
        let target = rat(5, 7680);
        assert_eq!(simplest_between(&(&target - &eps * &eps), &(&target + &eps * &eps)), target);
        assert_eq!(simplest_between(&rat(-1, 2), &rat(-1, 3)), rat(-1, 2));
        assert_eq!(simplest_between(&rat(-1, 2), &rat(1, 3)), int(0));
    }

    #[test]
    fn huge_to_f64() {
        let big = pow(&int(10), 400) / (pow(&int(10), 399) * int(4));
        assert!((to_f64(&big) - 2.5).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn string_round_trip(p in -10_000i64..10_000, q in 1i64..10_000) {
            let r = rat(p, q);
            prop_assert_eq!(parse(&to_string(&r)).unwrap(), r);
        }

        #[test]
        fn simplest_lies_inside(p in -1000i64..1000, q in 1i64..500, w in 1i64..1000) {
            let lo = rat(p, q);
            let hi = &lo + rat(w, 1000);
            let s = simplest_between(&lo, &hi);
            prop_assert!(lo <= s && s <= hi);
        }
    }
}
