use std::fmt;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{ensure, Error, Result};

/// Denominator used when an irrational root has to be rounded.
pub const ROOT_DENOMINATOR: u64 = 1_000_000_000_000;

/// A closed interval `[lo, hi]` inside `[0, 1]` with exact rational ends.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DensityInterval {
    lo: BigRational,
    hi: BigRational,
}

impl DensityInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Result<Self> {
        ensure!(!lo.is_negative(), "lower end {lo} is negative");
        ensure!(lo <= hi, "empty interval [{lo}, {hi}]");
        ensure!(hi <= BigRational::one(), "upper end {hi} exceeds 1");
        Ok(DensityInterval { lo, hi })
    }

    pub fn point(x: BigRational) -> Result<Self> {
        Self::new(x.clone(), x)
    }

    /// Shorthand for `[a/b, c/d]` in small integers.
    pub fn from_ratios((a, b): (i64, i64), (c, d): (i64, i64)) -> Result<Self> {
        ensure!(b != 0 && d != 0, "zero denominator");
        Self::new(ratio(a, b), ratio(c, d))
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// Whether `self` lies inside `other`.
    pub fn is_subset_of(&self, other: &DensityInterval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    /// `[1 - hi, 1 - lo]`: turns a co-density into a density and back.
    pub fn complement(&self) -> DensityInterval {
        let one = BigRational::one();
        DensityInterval { lo: &one - &self.hi, hi: one - &self.lo }
    }

    pub fn lo_f64(&self) -> f64 {
        self.lo.to_f64().unwrap_or(f64::NAN)
    }

    pub fn hi_f64(&self) -> f64 {
        self.hi.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for DensityInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", fraction(&self.lo), fraction(&self.hi))
    }
}

pub(crate) fn ratio(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

/// `p/q` with the denominator always written out.
pub fn fraction(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub(crate) fn serialize_fraction<S: Serializer>(x: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fraction(x))
}

/// Parses `p/q`, a plain integer, or a finite decimal such as `0.438334`.
pub fn parse_fraction(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::invalid(format!("not a rational number: {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        ensure!(!q.is_zero(), "zero denominator in {s:?}");
        return Ok(BigRational::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        ensure!(frac.chars().all(|c| c.is_ascii_digit()), "not a rational number: {s:?}");
        let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        return Ok(BigRational::new(digits, scale));
    }
    s.parse::<BigInt>().map(BigRational::from_integer).map_err(|_| bad())
}

impl Serialize for DensityInterval {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("DensityInterval", 2)?;
        st.serialize_field("lo", &fraction(&self.lo))?;
        st.serialize_field("hi", &fraction(&self.hi))?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for DensityInterval {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            lo: String,
            hi: String,
        }
        let raw = Raw::deserialize(deserializer)?;
        let lo = parse_fraction(&raw.lo).map_err(serde::de::Error::custom)?;
        let hi = parse_fraction(&raw.hi).map_err(serde::de::Error::custom)?;
        DensityInterval::new(lo, hi).map_err(serde::de::Error::custom)
    }
}

/// Exact `n`-th root of a non-negative integer, if there is one.
fn exact_root(x: &BigInt, n: u32) -> Option<BigInt> {
    let a = x.nth_root(n);
    (num_traits::pow(a.clone(), n as usize) == *x).then_some(a)
}

fn ceil_root(x: &BigInt, n: u32) -> BigInt {
    let a = x.nth_root(n);
    if num_traits::pow(a.clone(), n as usize) == *x {
        a
    } else {
        a + 1
    }
}

/// Rational bounds `(lo, hi)` with `lo <= x^(1/n) <= hi`. Exact when the
/// root is rational, otherwise both ends have denominator [`ROOT_DENOMINATOR`].
pub(crate) fn root_enclosure(x: &BigRational, n: u32) -> (BigRational, BigRational) {
    debug_assert!(!x.is_negative() && n >= 1);
    if let (Some(p), Some(q)) = (exact_root(x.numer(), n), exact_root(x.denom(), n)) {
        let r = BigRational::new(p, q);
        return (r.clone(), r);
    }
    let d = BigInt::from(ROOT_DENOMINATOR);
    let scaled = x * BigRational::from_integer(num_traits::pow(d.clone(), n as usize));
    let down = scaled.floor().to_integer();
    let up = scaled.ceil().to_integer();
    debug_assert!(down.sign() != Sign::Minus);
    (BigRational::new(down.nth_root(n), d.clone()), BigRational::new(ceil_root(&up, n), d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_bad_intervals() {
        assert!(DensityInterval::from_ratios((1, 2), (1, 3)).is_err());
        assert!(DensityInterval::from_ratios((-1, 2), (1, 3)).is_err());
        assert!(DensityInterval::from_ratios((1, 2), (3, 2)).is_err());
        assert!(DensityInterval::from_ratios((0, 1), (1, 1)).is_ok());
    }

    #[test]
    fn fractions_parse_and_print() {
        assert_eq!(parse_fraction("0.438334").unwrap(), ratio(219167, 500000));
        assert_eq!(parse_fraction("4/9").unwrap(), ratio(4, 9));
        assert_eq!(parse_fraction("1").unwrap(), ratio(1, 1));
        assert!(parse_fraction("1/0").is_err());
        assert!(parse_fraction("x").is_err());
        assert_eq!(fraction(&ratio(2, 2)), "1/1");
    }

    #[test]
    fn json_round_trip() {
        let x = DensityInterval::from_ratios((1, 6), (1, 4)).unwrap();
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"lo":"1/6","hi":"1/4"}"#);
        assert_eq!(serde_json::from_str::<DensityInterval>(&s).unwrap(), x);
        assert!(serde_json::from_str::<DensityInterval>(r#"{"lo":"1/2","hi":"1/3"}"#).is_err());
    }

    #[test]
    fn roots_exact_when_possible() {
        let (lo, hi) = root_enclosure(&ratio(9, 4), 2);
        assert_eq!((lo.clone(), hi), (ratio(3, 2), ratio(3, 2)));
        let (lo, hi) = root_enclosure(&ratio(2, 1), 2);
        assert!(lo < hi);
        assert_eq!(lo.denom(), &BigInt::from(ROOT_DENOMINATOR));
        assert_eq!(&hi - &lo, BigRational::new(1.into(), ROOT_DENOMINATOR.into()));
    }

    proptest! {
        #[test]
        fn roots_enclose(p in 1i64..1_000_000, q in 1i64..1_000_000, n in 1u32..5) {
            let x = ratio(p, q);
            let (lo, hi) = root_enclosure(&x, n);
            prop_assert!(num_traits::pow(lo.clone(), n as usize) <= x);
            prop_assert!(num_traits::pow(hi.clone(), n as usize) >= x);
            prop_assert!(&hi - &lo <= BigRational::new(1.into(), ROOT_DENOMINATOR.into()));
        }
    }
}
