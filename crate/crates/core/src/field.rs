//! Exact scalar fields.
//!
//! Every algorithm in the crate is generic over a [`Field`] object. A field
//! value is a small context (the modulus for [`PrimeField`], nothing for
//! [`RationalField`]) and all arithmetic goes through it, so elements stay
//! plain data that can be compared, hashed and stored in matrices.

use std::fmt;
use std::hash::Hash;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Default modulus: the Mersenne prime 2^31 - 1.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

/// Smallest modulus accepted by [`PrimeField::new`].
pub const MIN_PRIME: u64 = 1 << 20;

/// Range of the integers drawn by [`RationalField::random`].
const RATIONAL_SAMPLE_BOUND: i64 = 1 << 16;

/// An exact field.
pub trait Field: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Ord + Hash + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn from_bigint(&self, v: &BigInt) -> Self::Elem;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` exactly when `a` is zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// Uniform sample (prime mode) or a bounded random integer (rational mode).
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    /// Sign and magnitude for printing: `(negative, "|a|")`.
    fn to_signed_string(&self, a: &Self::Elem) -> (bool, String);

    /// Human readable description, e.g. `prime 2147483647` or `rational`.
    fn describe(&self) -> String;

    /// Number of elements, `None` when infinite.
    fn order(&self) -> Option<u64>;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|b| self.mul(a, &b))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<Self::Elem> {
        self.div(&self.from_bigint(num), &self.from_bigint(den))
    }

    /// Scalar taking a nonzero vector to the preferred representative of its
    /// line: monic by default, overridden where a nicer normal form exists.
    fn associate_scale(&self, coeffs: &[Self::Elem]) -> Option<Self::Elem> {
        coeffs.iter().find(|c| !self.is_zero(c)).and_then(|c| self.inv(c))
    }

    fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem {
        loop {
            let v = self.random(rng);
            if !self.is_zero(&v) {
                return v;
            }
        }
    }

    fn format(&self, a: &Self::Elem) -> String {
        let (neg, mag) = self.to_signed_string(a);
        if neg {
            format!("-{mag}")
        } else {
            mag
        }
    }
}

/// The prime field `Z/pZ` for a prime `MIN_PRIME <= p < 2^63`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, Error> {
        if p < MIN_PRIME {
            return Err(Error::InvalidField(format!(
                "modulus {p} is below the minimum {MIN_PRIME}"
            )));
        }
        if p >= 1 << 63 {
            return Err(Error::InvalidField(format!("modulus {p} does not fit in 63 bits")));
        }
        if !is_prime_u64(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    fn reduce(&self, v: u128) -> u64 {
        (v % self.p as u128) as u64
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        Self { p: DEFAULT_PRIME }
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, v: i64) -> u64 {
        let r = (v as i128).rem_euclid(self.p as i128);
        r as u64
    }
    fn from_bigint(&self, v: &BigInt) -> u64 {
        let r = v.mod_floor(&BigInt::from(self.p));
        r.to_u64().expect("residue fits in u64")
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = *a + *b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.reduce(*a as u128 * *b as u128)
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // extended Euclid on signed 128-bit values
        let (mut r0, mut r1) = (self.p as i128, *a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Some(t0.rem_euclid(self.p as i128) as u64)
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }
    fn to_signed_string(&self, a: &u64) -> (bool, String) {
        // symmetric representative in (-p/2, p/2]
        if *a > self.p / 2 {
            (true, (self.p - a).to_string())
        } else {
            (false, a.to_string())
        }
    }
    fn describe(&self) -> String {
        format!("prime {}", self.p)
    }
    fn order(&self) -> Option<u64> {
        Some(self.p)
    }
}

/// The rationals, with arbitrary-precision numerators and denominators.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct RationalField;

impl Field for RationalField {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_bigint(&self, v: &BigInt) -> BigRational {
        BigRational::from_integer(v.clone())
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
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        self.from_i64(rng.gen_range(-RATIONAL_SAMPLE_BOUND..=RATIONAL_SAMPLE_BOUND))
    }
    fn to_signed_string(&self, a: &BigRational) -> (bool, String) {
        let neg = a.numer().sign() == Sign::Minus;
        (neg, a.abs().to_string())
    }
    fn describe(&self) -> String {
        "rational".to_string()
    }
    /// Primitive integer vector with a positive first nonzero entry.
    fn associate_scale(&self, coeffs: &[BigRational]) -> Option<BigRational> {
        let lead = coeffs.iter().find(|c| !c.is_zero())?;
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(&(c.numer() * &den / c.denom())));
        let scale = BigRational::new(den, num);
        Some(if lead.is_negative() { -scale } else { scale })
    }
    fn order(&self) -> Option<u64> {
        None
    }
}

/// Field selection as written in instance files.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "mode")]
pub enum FieldMode {
    Prime { p: u64 },
    Rational,
}

impl Default for FieldMode {
    fn default() -> Self {
        FieldMode::Prime { p: DEFAULT_PRIME }
    }
}

impl fmt::Display for FieldMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldMode::Prime { p } => write!(f, "prime {p}"),
            FieldMode::Rational => f.write_str("rational"),
        }
    }
}

/// Field plus the seed that drives every randomized step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldConfig {
    pub mode: FieldMode,
    pub seed: u64,
}

impl FieldConfig {
    pub fn new(mode: FieldMode, seed: u64) -> Result<Self, Error> {
        if let FieldMode::Prime { p } = mode {
            PrimeField::new(p)?;
        }
        Ok(Self { mode, seed })
    }
}

/// Deterministic Miller-Rabin, exact for every `n < 2^64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &SMALL {
        if n % q == 0 {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        acc
    };
    'witness: for &a in &SMALL {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
