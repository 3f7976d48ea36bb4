use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Coefficient field of every module and matrix in the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    /// The rationals, with arbitrary-precision numerators and denominators.
    Rational,
    /// The prime field of the given characteristic.
    Prime(u64),
}

impl Field {
    /// Builds `F_p`, rejecting non-primes and moduli whose products overflow `u64`.
    pub fn prime(p: u64) -> Result<Self> {
        if p < 2 || p > u32::MAX as u64 || !is_prime(p) {
            return Err(Error::InvalidField(format!("Fp:{p}")));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(self) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::zero()),
            Field::Prime(p) => Scalar::Modular { value: 0, modulus: p },
        }
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Modular { value: n.rem_euclid(p as i64) as u64, modulus: p },
        }
    }

    pub fn from_rational(self, r: &BigRational) -> Result<Scalar> {
        match self {
            Field::Rational => Ok(Scalar::Rational(r.clone())),
            Field::Prime(p) => {
                let modulus = BigInt::from(p);
                let reduce = |n: &BigInt| -> u64 {
                    let m = ((n % &modulus) + &modulus) % &modulus;
                    u64::try_from(m).expect("residue fits in u64")
                };
                let den = reduce(r.denom());
                if den == 0 {
                    return Err(Error::InvalidScalar(format!("{r} has a denominator divisible by {p}")));
                }
                let num = Scalar::Modular { value: reduce(r.numer()), modulus: p };
                let den = Scalar::Modular { value: den, modulus: p };
                Ok(&num * &den.inverse().expect("nonzero residue"))
            }
        }
    }

    /// Parses a scalar literal: an integer `"a"` or a fraction `"a/b"`.
    ///
    /// The Unicode minus sign is accepted alongside `-`.
    pub fn parse_scalar(self, text: &str) -> Result<Scalar> {
        let normalized = text.trim().replace('\u{2212}', "-");
        let invalid = || Error::InvalidScalar(text.to_string());
        let value = match normalized.split_once('/') {
            Some((num, den)) => {
                let num = BigInt::from_str(num.trim()).map_err(|_| invalid())?;
                let den = BigInt::from_str(den.trim()).map_err(|_| invalid())?;
                if den.is_zero() {
                    return Err(invalid());
                }
                BigRational::new(num, den)
            }
            None => BigRational::from_integer(BigInt::from_str(&normalized).map_err(|_| invalid())?),
        };
        self.from_rational(&value)
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Q" {
            return Ok(Field::Rational);
        }
        match s.strip_prefix("Fp:") {
            Some(p) => {
                let p: u64 = p.parse().map_err(|_| Error::InvalidField(s.to_string()))?;
                Field::prime(p)
            }
            None => Err(Error::InvalidField(s.to_string())),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of a [`Field`].
///
/// Rationals are kept in lowest terms with a positive denominator (guaranteed by
/// `BigRational`); residues lie in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Modular { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Modular { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Modular { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inverse(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Modular { value, modulus } => {
                Scalar::Modular { value: pow_mod(*value, modulus - 2, *modulus), modulus: *modulus }
            }
        })
    }

    /// Integer value when the scalar is a rational integer (or any residue).
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Rational(r) if r.is_integer() => i64::try_from(r.to_integer()).ok(),
            Scalar::Rational(_) => None,
            Scalar::Modular { value, .. } => i64::try_from(*value).ok(),
        }
    }

    fn expect_same(&self, other: &Scalar) {
        debug_assert_eq!(self.field(), other.field(), "scalar field mismatch");
    }
}

fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1u64;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;

    fn add(self, rhs: &Scalar) -> Scalar {
        self.expect_same(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Modular { value: a, modulus }, Scalar::Modular { value: b, .. }) => {
                Scalar::Modular { value: (a + b) % modulus, modulus: *modulus }
            }
            _ => panic!("scalar field mismatch"),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;

    fn sub(self, rhs: &Scalar) -> Scalar {
        self.expect_same(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Modular { value: a, modulus }, Scalar::Modular { value: b, .. }) => {
                Scalar::Modular { value: (a + modulus - b) % modulus, modulus: *modulus }
            }
            _ => panic!("scalar field mismatch"),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;

    fn mul(self, rhs: &Scalar) -> Scalar {
        self.expect_same(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Modular { value: a, modulus }, Scalar::Modular { value: b, .. }) => {
                Scalar::Modular { value: a * b % modulus, modulus: *modulus }
            }
            _ => panic!("scalar field mismatch"),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Modular { value, modulus } => {
                Scalar::Modular { value: (modulus - value) % modulus, modulus: *modulus }
            }
        }
    }
}

impl Scalar {
    pub fn abs_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Rational(r) => Some(r.abs()),
            Scalar::Modular { .. } => None,
        }
    }
}
