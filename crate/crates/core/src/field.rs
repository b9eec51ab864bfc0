//! Exact scalars: arbitrary-precision rationals and residues modulo a prime.
//!
//! A [`Scalar`] carries its field with it. Arithmetic between scalars of
//! different fields is an error (`checked_*`) or a panic (operators); the
//! operators are meant for code that has already validated its inputs.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The field a computation runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldConfig {
    Rationals,
    Prime(u64),
}

impl FieldConfig {
    /// GF(p), after checking that `p` is prime.
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime_u64(p) {
            Ok(FieldConfig::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    /// 0 for the rationals.
    pub fn characteristic(self) -> u64 {
        match self {
            FieldConfig::Rationals => 0,
            FieldConfig::Prime(p) => p,
        }
    }

    /// Characteristic zero, or at least the largest multiplicity.
    pub fn check_multiplicities(self, multiplicities: &[usize]) -> Result<()> {
        if let FieldConfig::Prime(p) = self {
            let max = multiplicities.iter().copied().max().unwrap_or(0);
            if (p as u128) < max as u128 {
                return Err(Error::CharacteristicTooSmall { p, max });
            }
        }
        Ok(())
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        self.from_bigint(&BigInt::from(v))
    }

    pub fn from_bigint(self, v: &BigInt) -> Scalar {
        match self {
            FieldConfig::Rationals => Scalar::Rational(BigRational::from_integer(v.clone())),
            FieldConfig::Prime(p) => Scalar::Prime(Residue {
                value: reduce_bigint(v, p),
                modulus: p,
            }),
        }
    }

    /// Maps a rational into the field; fails in GF(p) when p divides the denominator.
    pub fn from_ratio(self, r: &BigRational) -> Result<Scalar> {
        match self {
            FieldConfig::Rationals => Ok(Scalar::Rational(r.clone())),
            FieldConfig::Prime(p) => {
                let num = reduce_bigint(r.numer(), p);
                let den = reduce_bigint(r.denom(), p);
                if den == 0 {
                    return Err(Error::InvalidInput(format!(
                        "denominator of {r} vanishes modulo {p}"
                    )));
                }
                Ok(Scalar::Prime(Residue {
                    value: mul_mod(num, inv_mod(den, p), p),
                    modulus: p,
                }))
            }
        }
    }

    /// Parses `"a"` or `"a/b"` and maps it into the field.
    pub fn parse(self, text: &str) -> Result<Scalar> {
        self.from_ratio(&parse_rational(text)?)
    }

    /// Brings a scalar into this field, accepting rationals for prime fields.
    pub fn coerce(self, s: &Scalar) -> Result<Scalar> {
        match (self, s) {
            (_, Scalar::Rational(r)) => self.from_ratio(r),
            (FieldConfig::Prime(p), Scalar::Prime(x)) if x.modulus == p => Ok(s.clone()),
            _ => Err(Error::MixedFields(self, s.field())),
        }
    }
}

impl fmt::Display for FieldConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldConfig::Rationals => write!(f, "Q"),
            FieldConfig::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

impl FromStr for FieldConfig {
    type Err = Error;

    /// Accepts `Q` or `p:PRIME`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Q" || s == "q" {
            return Ok(FieldConfig::Rationals);
        }
        let digits = s
            .strip_prefix("p:")
            .ok_or_else(|| Error::InvalidInput(format!("field must be Q or p:PRIME, got {s:?}")))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad prime {digits:?}")))?;
        FieldConfig::prime(p)
    }
}

/// An element of GF(p).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    modulus: u64,
}

impl Residue {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Prime(Residue),
}

impl Scalar {
    pub fn field(&self) -> FieldConfig {
        match self {
            Scalar::Rational(_) => FieldConfig::Rationals,
            Scalar::Prime(r) => FieldConfig::Prime(r.modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Prime(r) => r.value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Prime(r) => r.value == 1,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Prime(_) => None,
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a + b)),
            (Scalar::Prime(a), Scalar::Prime(b)) if a.modulus == b.modulus => {
                Ok(a.with(add_mod(a.value, b.value, a.modulus)))
            }
            _ => Err(Error::MixedFields(self.field(), other.field())),
        }
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a - b)),
            (Scalar::Prime(a), Scalar::Prime(b)) if a.modulus == b.modulus => {
                Ok(a.with(sub_mod(a.value, b.value, a.modulus)))
            }
            _ => Err(Error::MixedFields(self.field(), other.field())),
        }
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a * b)),
            (Scalar::Prime(a), Scalar::Prime(b)) if a.modulus == b.modulus => {
                Ok(a.with(mul_mod(a.value, b.value, a.modulus)))
            }
            _ => Err(Error::MixedFields(self.field(), other.field())),
        }
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        if self.field() != other.field() {
            return Err(Error::MixedFields(self.field(), other.field()));
        }
        self.checked_mul(&other.inv()?)
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Prime(a) => a.with(inv_mod(a.value, a.modulus)),
        })
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    fn expect_same(&self, other: &Scalar) {
        assert_eq!(
            self.field(),
            other.field(),
            "scalar arithmetic across different fields"
        );
    }
}

impl Residue {
    fn with(&self, value: u64) -> Scalar {
        Scalar::Prime(Residue {
            value,
            modulus: self.modulus,
        })
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.expect_same(rhs);
                self.$checked(rhs).expect("same field")
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

scalar_binop!(Add, add, checked_add);
scalar_binop!(Sub, sub, checked_sub);
scalar_binop!(Mul, mul, checked_mul);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Prime(a) => a.with(sub_mod(0, a.value, a.modulus)),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Prime(a) => write!(f, "{}", a.value),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Scalar::Rational(_) => serializer.serialize_str(&self.to_string()),
            Scalar::Prime(a) => {
                let mut st = serializer.serialize_struct("Residue", 2)?;
                st.serialize_field("residue", &a.value)?;
                st.serialize_field("p", &a.modulus)?;
                st.end()
            }
        }
    }
}

/// Scalar as it appears in JSON before a field is attached.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum RawScalar {
    Text(String),
    Int(i64),
    Residue { residue: u64, p: u64 },
}

impl RawScalar {
    /// Interprets the raw value in `field`.
    pub fn into_field(self, field: FieldConfig) -> Result<Scalar> {
        match self {
            RawScalar::Text(s) => field.parse(&s),
            RawScalar::Int(v) => Ok(field.from_i64(v)),
            RawScalar::Residue { residue, p } => {
                if field != FieldConfig::Prime(p) {
                    return Err(Error::MixedFields(field, FieldConfig::Prime(p)));
                }
                if residue >= p {
                    return Err(Error::InvalidInput(format!("residue {residue} not below {p}")));
                }
                Ok(Scalar::Prime(Residue {
                    value: residue,
                    modulus: p,
                }))
            }
        }
    }

    fn standalone(self) -> Result<Scalar> {
        match self {
            RawScalar::Residue { p, .. } => {
                let field = FieldConfig::prime(p)?;
                self.into_field(field)
            }
            other => other.into_field(FieldConfig::Rationals),
        }
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        RawScalar::deserialize(deserializer)?
            .standalone()
            .map_err(de::Error::custom)
    }
}

/// Falling factorial (j)_t = j(j-1)...(j-t+1), with (j)_0 = 1.
pub fn pochhammer(field: FieldConfig, j: u64, t: u64) -> Scalar {
    if t > j {
        return field.zero();
    }
    let mut acc = BigInt::one();
    for s in 0..t {
        acc *= BigInt::from(j - s);
    }
    field.from_bigint(&acc)
}

/// Binomial coefficient, zero when j > k.
pub fn binomial(field: FieldConfig, k: u64, j: u64) -> Scalar {
    field.from_bigint(&binomial_int(k, j))
}

pub(crate) fn binomial_int(k: u64, j: u64) -> BigInt {
    if j > k {
        return BigInt::zero();
    }
    let j = j.min(k - j);
    let mut acc = BigInt::one();
    for s in 0..j {
        acc = acc * BigInt::from(k - s) / BigInt::from(s + 1);
    }
    acc
}

pub(crate) fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    let bad = || Error::InvalidInput(format!("not a rational number: {text:?}"));
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(BigRational::new(num, den))
}

fn reduce_bigint(v: &BigInt, p: u64) -> u64 {
    let r = v.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + p as u128 - b as u128) % p as u128) as u64
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    t0.rem_euclid(p as i128) as u64
}

/// Deterministic Miller-Rabin, exact for every u64.
pub fn is_prime_u64(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

impl Scalar {
    /// Sign of a rational (-1, 0, 1); `None` in a prime field.
    pub fn signum(&self) -> Option<i8> {
        match self {
            Scalar::Rational(r) => Some(if r.is_zero() {
                0
            } else if r.is_positive() {
                1
            } else {
                -1
            }),
            Scalar::Prime(_) => None,
        }
    }
}
