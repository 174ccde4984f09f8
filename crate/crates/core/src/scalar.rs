//! Exact scalar types.
//!
//! Everything in the engine is generic over [`Scalar`], an exact field with a
//! notion of numerator and denominator. The crate root fixes the default
//! to arbitrary-precision rationals ([`crate::Rational`]); `Ratio<i64>` is
//! also implemented for small experiments and tests.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, Zero};

/// An exact field element with reduced numerator/denominator access.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Eq
    + PartialOrd
    + Zero
    + One
    + std::ops::Add<Output = Self>
    + std::ops::Sub<Output = Self>
    + std::ops::Mul<Output = Self>
    + std::ops::Div<Output = Self>
    + std::ops::Neg<Output = Self>
    + for<'a> std::ops::AddAssign<&'a Self>
    + for<'a> std::ops::SubAssign<&'a Self>
    + Send
    + Sync
    + 'static
{
    fn from_ratio(num: i64, den: i64) -> Self;
    fn from_bigint(n: BigInt) -> Self;
    /// Reduced numerator.
    fn numer_big(&self) -> BigInt;
    /// Reduced, positive denominator.
    fn denom_big(&self) -> BigInt;

    fn from_int(n: i64) -> Self {
        Self::from_ratio(n, 1)
    }

    fn is_integer(&self) -> bool {
        self.denom_big().is_one()
    }
}

impl Scalar for BigRational {
    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
    fn from_bigint(n: BigInt) -> Self {
        BigRational::from_integer(n)
    }
    fn numer_big(&self) -> BigInt {
        self.numer().clone()
    }
    fn denom_big(&self) -> BigInt {
        self.denom().clone()
    }
}

impl Scalar for Ratio<i64> {
    fn from_ratio(num: i64, den: i64) -> Self {
        Ratio::new(num, den)
    }
    fn from_bigint(n: BigInt) -> Self {
        let v: i64 = n.try_into().expect("integer does not fit in i64");
        Ratio::from_integer(v)
    }
    fn numer_big(&self) -> BigInt {
        BigInt::from(*self.numer())
    }
    fn denom_big(&self) -> BigInt {
        BigInt::from(*self.denom())
    }
}

/// Least common multiple of the denominators of an iterator of scalars.
pub fn lcm_of_denominators<'a, S: Scalar>(xs: impl IntoIterator<Item = &'a S>) -> BigInt {
    xs.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(&x.denom_big()))
}

/// `p/q` rendering used by reports; integers print without a slash.
pub fn format_scalar<S: Scalar>(x: &S) -> String {
    let d = x.denom_big();
    if d.is_one() {
        x.numer_big().to_string()
    } else {
        format!("{}/{}", x.numer_big(), d)
    }
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_scalar<S: Scalar>(s: &str) -> Option<S> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(S::from_bigint(n) / S::from_bigint(d))
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Largest prime factor of `|n|` (1 for units and zero).
pub fn largest_prime_factor(n: &BigInt) -> u64 {
    let mut n = n.abs();
    if n <= BigInt::one() {
        return 1;
    }
    let mut best = 1u64;
    let mut p = 2u64;
    while BigInt::from(p) * BigInt::from(p) <= n {
        let bp = BigInt::from(p);
        while (&n % &bp).is_zero() {
            best = p;
            n /= &bp;
        }
        p += 1;
    }
    if n > BigInt::one() {
        best = best.max(u64::try_from(n).expect("prime factor overflow"));
    }
    best
}

pub fn divides(a: &BigInt, b: &BigInt) -> bool {
    if a.is_zero() {
        return b.is_zero();
    }
    (b % a).is_zero()
}
