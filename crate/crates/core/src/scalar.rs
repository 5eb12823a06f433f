//! Coefficient fields.
//!
//! Everything that does linear algebra or carries coefficients (Laurent
//! polynomials, potentials, cone membership) is generic over [`Scalar`].
//! The verdict paths of the library use exact rationals; `f64` is supported
//! for quick numerical experiments but zero tests on it are only as good as
//! floating point.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

pub trait Scalar: Clone + Debug + Display + PartialEq + PartialOrd + Num + Signed + Send + Sync + 'static {
    fn from_i64(v: i64) -> Self;

    /// `true` when `==` against zero is exact.
    fn is_exact() -> bool;

    /// Parse `"p/q"`, `"p"` or a decimal literal for floats.
    fn parse(s: &str) -> Option<Self>;

    fn to_f64(&self) -> f64;

    /// Integer value, if this scalar is an integer.
    fn to_integer(&self) -> Option<BigInt>;

    /// Exact quotient, or `None` when `self / rhs` is not representable.
    fn checked_exact_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        let q = self.clone() / rhs.clone();
        if Self::is_exact() && q.clone() * rhs.clone() != *self {
            return None;
        }
        Some(q)
    }
}

impl Scalar for BigRational {
    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(BigInt::from(v))
    }
    fn is_exact() -> bool {
        true
    }
    fn parse(s: &str) -> Option<Self> {
        parse_ratio(s).map(|(n, d)| Ratio::new(n, d))
    }
    fn to_f64(&self) -> f64 {
        let n = ToPrimitive::to_f64(self.numer()).unwrap_or(f64::NAN);
        let d = ToPrimitive::to_f64(self.denom()).unwrap_or(f64::NAN);
        n / d
    }
    fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.numer().clone())
    }
}

impl Scalar for Ratio<i128> {
    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(v as i128)
    }
    fn is_exact() -> bool {
        true
    }
    fn parse(s: &str) -> Option<Self> {
        let (n, d) = parse_ratio(s)?;
        Some(Ratio::new(n.to_i128()?, d.to_i128()?))
    }
    fn to_f64(&self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }
    fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| BigInt::from(*self.numer()))
    }
}

impl Scalar for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_exact() -> bool {
        true
    }
    fn parse(s: &str) -> Option<Self> {
        BigInt::from_str(s.trim()).ok()
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn to_integer(&self) -> Option<BigInt> {
        Some(self.clone())
    }
}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            fn from_i64(v: i64) -> Self {
                v as $t
            }
            fn is_exact() -> bool {
                false
            }
            fn parse(s: &str) -> Option<Self> {
                if let Some((n, d)) = parse_ratio(s) {
                    return Some((ToPrimitive::to_f64(&n)? / ToPrimitive::to_f64(&d)?) as $t);
                }
                s.trim().parse().ok()
            }
            fn to_f64(&self) -> f64 {
                *self as f64
            }
            fn to_integer(&self) -> Option<BigInt> {
                (self.fract() == 0.0).then(|| BigInt::from(*self as i64))
            }
        }
    };
}

float_scalar!(f32);
float_scalar!(f64);

fn parse_ratio(s: &str) -> Option<(BigInt, BigInt)> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (BigInt::from_str(n.trim()).ok()?, BigInt::from_str(d.trim()).ok()?),
        None => (BigInt::from_str(s).ok()?, BigInt::one()),
    };
    if d.is_zero() {
        return None;
    }
    Some((n, d))
}

/// Renders a scalar as `"p/q"` or `"p"`; the inverse of [`Scalar::parse`] for rationals.
pub fn format_scalar<T: Scalar>(v: &T) -> String {
    v.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_rationals() {
        let q = BigRational::parse("-6/4").unwrap();
        assert_eq!(q.to_string(), "-3/2");
        assert_eq!(BigRational::parse("7").unwrap(), BigRational::from_i64(7));
        assert!(BigRational::parse("1/0").is_none());
        assert_eq!(f64::parse("1/4"), Some(0.25));
    }

    #[test]
    fn exact_division_detects_remainders() {
        let a = BigInt::from(7);
        let b = BigInt::from(2);
        assert!(a.checked_exact_div(&b).is_none());
        assert_eq!(BigInt::from(8).checked_exact_div(&b), Some(BigInt::from(4)));
        let r = BigRational::from_i64(7);
        assert!(r.checked_exact_div(&BigRational::from_i64(2)).is_some());
    }
}
