//! Exact coefficient fields.
//!
//! Everything above this module is generic over [`Scalar`]. Two families are
//! provided: prime fields [`Fp`] with the modulus fixed at compile time, and
//! the rationals through [`num_rational::BigRational`].

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::linalg::{self, SparseVec};

/// Which coefficient field a computation ran over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum FieldKind {
    Prime(u32),
    Rationals,
}

impl Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Prime(p) => write!(f, "GF({p})"),
            FieldKind::Rationals => write!(f, "QQ"),
        }
    }
}

impl From<FieldKind> for String {
    fn from(k: FieldKind) -> String {
        k.to_string()
    }
}

impl TryFrom<String> for FieldKind {
    type Error = String;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl std::str::FromStr for FieldKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "QQ" {
            return Ok(FieldKind::Rationals);
        }
        let inner = s
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| format!("expected GF(p) or QQ, got `{s}`"))?;
        let p: u32 = inner
            .trim()
            .parse()
            .map_err(|_| format!("bad modulus `{inner}`"))?;
        if p <= 2 || !is_prime(p) {
            return Err(format!("modulus {p} is not an odd prime"));
        }
        Ok(FieldKind::Prime(p))
    }
}

pub const fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let n = n as u64;
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element.
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + Eq
    + Hash
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn field() -> FieldKind;

    /// Multiplicative inverse, `None` for zero.
    fn inverse(&self) -> Option<Self>;

    fn from_i64(v: i64) -> Self;

    fn from_bigint(v: &BigInt) -> Self;

    /// `num / den`, `None` when `den` vanishes in the field.
    fn from_ratio(num: &BigInt, den: &BigInt) -> Option<Self> {
        Self::from_bigint(den)
            .inverse()
            .map(|d| Self::from_bigint(num) * d)
    }

    /// A random element. Uniform for prime fields; small integers for `QQ`.
    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self;

    /// True when the printed form would start with a minus sign.
    fn is_negative_repr(&self) -> bool;

    /// Rank of a family of sparse vectors living in a space of dimension `ncols`.
    fn rank(vectors: Vec<SparseVec<Self>>, ncols: usize) -> usize {
        linalg::rank_over_field(vectors, ncols)
    }
}

/// The prime field `Z/P`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Fp<const P: u32>(u32);

impl<const P: u32> Fp<P> {
    const CHECK: () = assert!(P > 2 && is_prime(P), "modulus must be an odd prime");

    pub fn new(v: u64) -> Self {
        #[allow(clippy::let_unit_value)]
        let _ = Self::CHECK;
        Fp((v % P as u64) as u32)
    }

    pub fn value(self) -> u32 {
        self.0
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Representative in `(-P/2, P/2]`.
    fn centered(self) -> i64 {
        let v = self.0 as i64;
        if v > (P / 2) as i64 {
            v - P as i64
        } else {
            v
        }
    }
}

impl<const P: u32> Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.centered())
    }
}

impl<const P: u32> Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.centered())
    }
}

impl<const P: u32> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u32> One for Fp<P> {
    fn one() -> Self {
        Fp(1)
    }
}

impl<const P: u32> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let s = self.0 as u64 + rhs.0 as u64;
        Fp(if s >= P as u64 { s - P as u64 } else { s } as u32)
    }
}

impl<const P: u32> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        if self.0 >= rhs.0 {
            Fp(self.0 - rhs.0)
        } else {
            Fp((self.0 as u64 + P as u64 - rhs.0 as u64) as u32)
        }
    }
}

impl<const P: u32> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(((self.0 as u64 * rhs.0 as u64) % P as u64) as u32)
    }
}

impl<const P: u32> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        if self.0 == 0 {
            self
        } else {
            Fp(P - self.0)
        }
    }
}

impl<const P: u32> Div for Fp<P> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.inverse().expect("division by zero in prime field")
    }
}

impl<const P: u32> Scalar for Fp<P> {
    fn field() -> FieldKind {
        FieldKind::Prime(P)
    }

    fn inverse(&self) -> Option<Self> {
        if self.0 == 0 {
            return None;
        }
        // extended Euclid on (a, P)
        let (mut r0, mut r1) = (P as i64, self.0 as i64);
        let (mut s0, mut s1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        Some(Fp(s0.rem_euclid(P as i64) as u32))
    }

    fn from_i64(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u32)
    }

    fn from_bigint(v: &BigInt) -> Self {
        let m = BigInt::from(P);
        let r = ((v % &m) + &m) % &m;
        Fp(r.to_u32().expect("residue fits in u32"))
    }

    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Fp(rng.gen_range(0..P))
    }

    fn is_negative_repr(&self) -> bool {
        self.centered() < 0
    }
}

impl Scalar for BigRational {
    fn field() -> FieldKind {
        FieldKind::Rationals
    }

    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_bigint(v: &BigInt) -> Self {
        BigRational::from_integer(v.clone())
    }

    fn from_ratio(num: &BigInt, den: &BigInt) -> Option<Self> {
        if den.is_zero() {
            None
        } else {
            Some(BigRational::new(num.clone(), den.clone()))
        }
    }

    fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self::from_i64(rng.gen_range(-32..=32))
    }

    fn is_negative_repr(&self) -> bool {
        self.is_negative()
    }

    fn rank(vectors: Vec<SparseVec<Self>>, ncols: usize) -> usize {
        linalg::rank_fraction_free(vectors, ncols)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type F5 = Fp<5>;
    type F = Fp<32003>;

    #[test]
    fn small_field_arithmetic() {
        // 3 * 2 = 6 = 1 mod 5
        assert_eq!(F5::new(3) * F5::new(2), F5::one());
        assert_eq!(F5::new(2).inverse(), Some(F5::new(3)));
        assert_eq!(F5::zero().inverse(), None);
        assert_eq!(-F5::new(1), F5::new(4));
        assert_eq!(F5::from_i64(-1), F5::new(4));
        assert_eq!(format!("{}", F5::new(4)), "-1");
    }

    #[test]
    fn field_kind_round_trip() {
        for k in [FieldKind::Prime(32003), FieldKind::Prime(101), FieldKind::Rationals] {
            assert_eq!(k.to_string().parse::<FieldKind>().unwrap(), k);
        }
        assert!("GF(2)".parse::<FieldKind>().is_err());
        assert!("GF(15)".parse::<FieldKind>().is_err());
    }

    #[test]
    fn rational_from_ratio() {
        let q = BigRational::from_ratio(&BigInt::from(3), &BigInt::from(6)).unwrap();
        assert_eq!(q, BigRational::new(BigInt::from(1), BigInt::from(2)));
        assert!(BigRational::from_ratio(&BigInt::from(1), &BigInt::from(0)).is_none());
        assert!(F5::from_ratio(&BigInt::from(1), &BigInt::from(10)).is_none());
    }

    proptest! {
        #[test]
        fn prime_field_axioms(a in 0u64..32003, b in 0u64..32003, c in 0u64..32003) {
            let (a, b, c) = (F::new(a), F::new(b), F::new(c));
            prop_assert_eq!((a + b) + c, a + (b + c));
            prop_assert_eq!((a * b) * c, a * (b * c));
            prop_assert_eq!(a * (b + c), a * b + a * c);
            prop_assert_eq!(a - a, F::zero());
            if !a.is_zero() {
                prop_assert_eq!(a * a.inverse().unwrap(), F::one());
            }
        }

        #[test]
        fn rational_field_axioms(a in -50i64..50, b in 1i64..50, c in -50i64..50) {
            let a = BigRational::new(a.into(), b.into());
            let c = BigRational::from_i64(c);
            prop_assert_eq!(a.clone() * (c.clone() + a.clone()), a.clone() * c.clone() + a.clone() * a.clone());
            if !a.is_zero() {
                prop_assert_eq!(a.clone() * a.inverse().unwrap(), BigRational::one());
            }
        }
    }
}
