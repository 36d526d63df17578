//! Exact scalar and matrix arithmetic over prime fields and the rationals.
//!
//! Everything in the crate that solves a linear system goes through [`Mat`].
//! There is no floating point anywhere.

pub mod eigen;
mod mat;
pub mod poly;
pub mod small;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use mat::{Mat, Reduction};

/// Largest admissible characteristic. Products of two residues must fit in a `u64`.
pub const MAX_PRIME: u64 = (1 << 31) - 1;

/// The ground field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    Prime(u32),
    Rationals,
}

impl Field {
    /// `F_p`; rejects composites and anything outside `2..=MAX_PRIME`.
    pub fn prime(p: u64) -> Result<Field> {
        if !(2..=MAX_PRIME).contains(&p) || !is_prime(p) {
            return Err(Error::BadParameter(format!("{p} is not a supported prime")));
        }
        Ok(Field::Prime(p as u32))
    }

    pub fn characteristic(self) -> u32 {
        match self {
            Field::Prime(p) => p,
            Field::Rationals => 0,
        }
    }

    /// Number of elements, `None` for `Q`.
    pub fn order(self) -> Option<u64> {
        match self {
            Field::Prime(p) => Some(p as u64),
            Field::Rationals => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Field::Prime(_))
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, x: i64) -> Scalar {
        match self {
            Field::Prime(p) => Scalar::Fp(x.rem_euclid(p as i64) as u32),
            Field::Rationals => Scalar::Q(BigRational::from_integer(BigInt::from(x))),
        }
    }

    pub fn from_ratio(self, num: i64, den: i64) -> Result<Scalar> {
        if den == 0 {
            return Err(Error::Parse("zero denominator".into()));
        }
        match self {
            Field::Prime(_) => {
                let n = self.from_i64(num);
                let d = self.from_i64(den);
                if d.is_zero() {
                    return Err(Error::Parse(format!(
                        "denominator {den} vanishes in characteristic {}",
                        self.characteristic()
                    )));
                }
                Ok(self.mul(&n, &self.inv(&d)))
            }
            Field::Rationals => Ok(Scalar::Q(BigRational::new(num.into(), den.into()))),
        }
    }

    /// All elements of a prime field in the order `0, 1, …, p − 1`.
    ///
    /// # Panics
    /// On `Q`.
    pub fn elements(self) -> impl Iterator<Item = Scalar> {
        let p = match self {
            Field::Prime(p) => p,
            Field::Rationals => panic!("cannot enumerate the rationals"),
        };
        (0..p).map(Scalar::Fp)
    }

    pub fn add(self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp(FpRing(p).add(x, y)),
            (Field::Rationals, Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x + y),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn sub(self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp(FpRing(p).mul(x, y)),
            (Field::Rationals, Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x * y),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    pub fn neg(self, a: &Scalar) -> Scalar {
        match (self, a) {
            (Field::Prime(p), Scalar::Fp(x)) => Scalar::Fp(FpRing(p).neg(x)),
            (Field::Rationals, Scalar::Q(x)) => Scalar::Q(-x),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    /// # Panics
    /// On zero.
    pub fn inv(self, a: &Scalar) -> Scalar {
        assert!(!a.is_zero(), "inverse of zero");
        match (self, a) {
            (Field::Prime(p), Scalar::Fp(x)) => Scalar::Fp(FpRing(p).inv(x)),
            (Field::Rationals, Scalar::Q(x)) => Scalar::Q(x.recip()),
            _ => panic!("scalar does not belong to {self}"),
        }
    }

    /// Parses `3`, `-2`, `1/2`. Decimal notation is rejected.
    pub fn parse_scalar(self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad scalar literal {s:?}"));
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num = BigInt::from_str(num).map_err(|_| bad())?;
        let den = BigInt::from_str(den).map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        match self {
            Field::Rationals => Ok(Scalar::Q(BigRational::new(num, den))),
            Field::Prime(p) => {
                let reduce = |x: &BigInt| -> u32 {
                    let m = BigInt::from(p);
                    let r = ((x % &m) + &m) % &m;
                    r.try_into().expect("residue fits in u32")
                };
                let (n, d) = (reduce(&num), reduce(&den));
                if d == 0 {
                    return Err(bad());
                }
                let r = FpRing(p);
                Ok(Scalar::Fp(r.mul(&n, &r.inv(&d))))
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Prime(p) => write!(f, "p:{p}"),
            Field::Rationals => write!(f, "Q"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    /// Accepts `Q` or `p:<prime>`.
    fn from_str(s: &str) -> Result<Field> {
        let s = s.trim();
        if s == "Q" || s == "q" {
            return Ok(Field::Rationals);
        }
        let p = s
            .strip_prefix("p:")
            .ok_or_else(|| Error::Parse(format!("field must be `Q` or `p:<prime>`, got {s:?}")))?;
        let p: u64 = p
            .parse()
            .map_err(|_| Error::Parse(format!("bad characteristic {p:?}")))?;
        Field::prime(p)
    }
}

/// A field element. Prime-field residues are stored reduced to `0..p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Scalar {
    Fp(u32),
    Q(BigRational),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Fp(x) => *x == 0,
            Scalar::Q(x) => x.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Fp(x) => *x == 1,
            Scalar::Q(x) => x.is_one(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Fp(x) => write!(f, "{x}"),
            Scalar::Q(x) if x.denom().is_one() => write!(f, "{}", x.numer()),
            Scalar::Q(x) => {
                let sign = if x.is_negative() { "-" } else { "" };
                write!(f, "{sign}{}/{}", x.numer().abs(), x.denom())
            }
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Arithmetic on the raw storage type of one of the two backends.
pub(crate) trait Ring {
    type E: Clone + PartialEq + std::fmt::Debug;
    fn zero(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
    fn to_scalar(&self, a: &Self::E) -> Scalar;
    fn from_scalar(&self, s: &Scalar) -> Self::E;
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct FpRing(pub u32);

impl Ring for FpRing {
    type E = u32;
    #[inline]
    fn zero(&self) -> u32 {
        0
    }
    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + *b as u64;
        (s % self.0 as u64) as u32
    }
    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + self.0 as u64 - *b as u64;
        (s % self.0 as u64) as u32
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.0 as u64) as u32
    }
    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.0 - a
        }
    }
    fn inv(&self, a: &u32) -> u32 {
        // Fermat: a^(p-2)
        let p = self.0 as u64;
        let (mut base, mut exp, mut acc) = (*a as u64 % p, p - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        acc as u32
    }
    fn to_scalar(&self, a: &u32) -> Scalar {
        Scalar::Fp(*a)
    }
    fn from_scalar(&self, s: &Scalar) -> u32 {
        match s {
            Scalar::Fp(x) => *x % self.0,
            Scalar::Q(_) => panic!("rational scalar used over F_{}", self.0),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct QRing;

impl Ring for QRing {
    type E = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn to_scalar(&self, a: &BigRational) -> Scalar {
        Scalar::Q(a.clone())
    }
    fn from_scalar(&self, s: &Scalar) -> BigRational {
        match s {
            Scalar::Q(x) => x.clone(),
            Scalar::Fp(_) => panic!("prime-field scalar used over Q"),
        }
    }
}
