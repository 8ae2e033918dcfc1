//! The exact field every computation runs over.
//!
//! Rank, ideal equality and every acceptance check are decided by exact
//! arithmetic, so only exact fields implement [`Scalar`]. Floating point
//! types are deliberately left out.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

/// An exact field of characteristic zero.
pub trait Scalar: Num + Neg<Output = Self> + Clone + Debug + Display + PartialEq + Send + Sync + 'static {
    /// Builds `num / den`; `None` when the value does not fit or `den` is zero.
    fn from_ratio(num: &BigInt, den: &BigInt) -> Option<Self>;

    /// Lowest-terms numerator and positive denominator.
    fn to_ratio(&self) -> (BigInt, BigInt);

    fn from_int(n: i64) -> Self {
        Self::from_ratio(&BigInt::from(n), &BigInt::one()).expect("small integers are representable")
    }

    /// Reciprocal of a non-zero element.
    fn recip(&self) -> Self {
        Self::one() / self.clone()
    }

    /// Renders as `p` or `p/q`.
    fn to_ratio_string(&self) -> String {
        let (n, d) = self.to_ratio();
        if d.is_one() {
            n.to_string()
        } else {
            format!("{n}/{d}")
        }
    }

    /// Parses `p`, `-p` or `p/q`.
    fn parse_ratio(text: &str) -> Option<Self> {
        let text = text.trim();
        let (n, d) = match text.split_once('/') {
            Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
            None => (text.parse::<BigInt>().ok()?, BigInt::one()),
        };
        Self::from_ratio(&n, &d)
    }

    fn is_negative_value(&self) -> bool {
        self.to_ratio().0.is_negative()
    }
}

impl Scalar for BigRational {
    fn from_ratio(num: &BigInt, den: &BigInt) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(BigRational::new(num.clone(), den.clone()))
    }

    fn to_ratio(&self) -> (BigInt, BigInt) {
        (self.numer().clone(), self.denom().clone())
    }

    fn recip(&self) -> Self {
        Ratio::recip(self)
    }
}

macro_rules! machine_ratio {
    ($t:ty) => {
        impl Scalar for Ratio<$t> {
            fn from_ratio(num: &BigInt, den: &BigInt) -> Option<Self> {
                let n = num.to_i128()?;
                let d = den.to_i128()?;
                if d == 0 {
                    return None;
                }
                let n = <$t>::try_from(n).ok()?;
                let d = <$t>::try_from(d).ok()?;
                Some(Ratio::new(n, d))
            }

            fn to_ratio(&self) -> (BigInt, BigInt) {
                (BigInt::from(*self.numer()), BigInt::from(*self.denom()))
            }

            fn recip(&self) -> Self {
                Ratio::recip(self)
            }
        }
    };
}

machine_ratio!(i64);
machine_ratio!(i128);
