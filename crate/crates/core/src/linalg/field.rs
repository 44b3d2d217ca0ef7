//! Base fields: the rationals and prime fields `F_p` with `p >= 5`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A base field. Characteristics 2 and 3 are excluded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u32),
}

impl Field {
    /// Builds `F_p`, rejecting composites and `p < 5`.
    pub fn prime(p: u32) -> Result<Self> {
        if p < 5 || !is_prime(p) || p >= (1 << 31) {
            return Err(Error::InvalidField(format!("fp:{p}")));
        }
        Ok(Field::Prime(p))
    }

    pub fn modulus(self) -> Option<u32> {
        match self {
            Field::Rational => None,
            Field::Prime(p) => Some(p),
        }
    }

    pub fn zero(self) -> Scalar {
        self.int(0)
    }

    pub fn one(self) -> Scalar {
        self.int(1)
    }

    pub fn int(self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Fp(Fp::new(n.rem_euclid(p as i64) as u32, p)),
        }
    }

    pub fn ratio(self, num: i64, den: i64) -> Scalar {
        assert!(den != 0, "zero denominator");
        match self {
            Field::Rational => Scalar::Q(BigRational::new(num.into(), den.into())),
            Field::Prime(_) => {
                &self.int(num) * &self.int(den).inv().expect("denominator divisible by p")
            }
        }
    }

    /// Residue constructor; only meaningful for prime fields.
    pub fn residue(self, v: u32) -> Scalar {
        match self {
            Field::Rational => self.int(v as i64),
            Field::Prime(p) => Scalar::Fp(Fp::new(v % p, p)),
        }
    }

    /// The elements of `F_p` in the order `0, 1, ..., p-1`.
    pub fn elements(self) -> Option<impl Iterator<Item = Scalar>> {
        self.modulus()
            .map(move |p| (0..p).map(move |v| self.residue(v)))
    }

    pub fn vector(self, entries: &[i64]) -> Vec<Scalar> {
        entries.iter().map(|&e| self.int(e)).collect()
    }

    pub fn unit_vector(self, n: usize, i: usize) -> Vec<Scalar> {
        (0..n)
            .map(|k| if k == i { self.one() } else { self.zero() })
            .collect()
    }

    pub fn zero_vector(self, n: usize) -> Vec<Scalar> {
        vec![self.zero(); n]
    }

    /// Parses a JSON scalar: `"a/b"` or `"a"` strings, or integers.
    pub fn scalar_from_json(self, v: &serde_json::Value) -> Result<Scalar> {
        match (self, v) {
            (Field::Rational, serde_json::Value::String(s)) => s.parse::<Scalar>(),
            (_, serde_json::Value::Number(n)) => {
                let n = n
                    .as_i64()
                    .ok_or_else(|| Error::Parse(format!("scalar {n} is not an integer")))?;
                Ok(self.int(n))
            }
            (Field::Prime(p), serde_json::Value::String(s)) => Err(Error::Parse(format!(
                "residue mod {p} must be a JSON integer, got string {s:?}"
            ))),
            (_, other) => Err(Error::Parse(format!("not a scalar: {other}"))),
        }
    }

    pub fn vector_from_json(self, v: &serde_json::Value) -> Result<Vec<Scalar>> {
        v.as_array()
            .ok_or_else(|| Error::Parse(format!("expected an array of scalars, got {v}")))?
            .iter()
            .map(|x| self.scalar_from_json(x))
            .collect()
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "q"),
            Field::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "q" || s == "Q" {
            return Ok(Field::Rational);
        }
        let digits = s
            .strip_prefix("fp:")
            .ok_or_else(|| Error::InvalidField(format!("{s:?} (expected \"q\" or \"fp:P\")")))?;
        let p: u32 = digits
            .parse()
            .map_err(|_| Error::InvalidField(format!("{s:?}: modulus is not an integer")))?;
        Field::prime(p)
    }
}

impl Serialize for Field {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Field {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A residue modulo an odd prime, always reduced into `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u32,
    modulus: u32,
}

impl Fp {
    fn new(value: u32, modulus: u32) -> Self {
        debug_assert!(value < modulus);
        Fp { value, modulus }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.modulus
    }
}

pub fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub fn inv_mod(a: u32, p: u32) -> Option<u32> {
    if a.is_multiple_of(p) {
        return None;
    }
    // Fermat: a^(p-2)
    let (mut base, mut exp, mut acc) = (a % p, p - 2, 1u32);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    Some(acc)
}

/// An exact field element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    Fp(Fp),
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rational,
            Scalar::Fp(x) => Field::Prime(x.modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_zero(),
            Scalar::Fp(x) => x.value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_one(),
            Scalar::Fp(x) => x.value == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Q(q) if q.is_zero() => None,
            Scalar::Q(q) => Some(Scalar::Q(q.recip())),
            Scalar::Fp(x) => inv_mod(x.value, x.modulus).map(|v| Scalar::Fp(Fp::new(v, x.modulus))),
        }
    }

    /// Residue value, for prime-field scalars.
    pub fn residue(&self) -> Option<u32> {
        match self {
            Scalar::Fp(x) => Some(x.value),
            Scalar::Q(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Q(q) => Some(q),
            Scalar::Fp(_) => None,
        }
    }

    /// Reduces a rational into `F_p`; `None` when the denominator vanishes mod `p`.
    pub fn reduce_mod(&self, field: Field) -> Option<Scalar> {
        match (self, field) {
            (Scalar::Q(q), Field::Prime(p)) => {
                let m = BigInt::from(p);
                let n = (q.numer() % &m + &m) % &m;
                let d = (q.denom() % &m + &m) % &m;
                let n = field.residue(n.to_u32().expect("reduced"));
                let d = field.residue(d.to_u32().expect("reduced"));
                d.inv().map(|di| &n * &di)
            }
            (s, f) if s.field() == f => Some(s.clone()),
            _ => None,
        }
    }

    fn same_field(&self, other: &Scalar) {
        if let (Scalar::Fp(a), Scalar::Fp(b)) = (self, other) {
            assert_eq!(a.modulus, b.modulus, "mixed prime fields");
        } else {
            assert_eq!(self.field(), other.field(), "mixed fields");
        }
    }

    /// Total order used for canonical sorting: by residue, or by rational value.
    pub fn canonical_cmp(&self, other: &Scalar) -> Ordering {
        match (self, other) {
            (Scalar::Fp(a), Scalar::Fp(b)) => a.value.cmp(&b.value),
            (Scalar::Q(a), Scalar::Q(b)) => a.cmp(b),
            (Scalar::Q(_), Scalar::Fp(_)) => Ordering::Less,
            (Scalar::Fp(_), Scalar::Q(_)) => Ordering::Greater,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Scalar::Fp(x) => serde_json::Value::from(x.value),
            Scalar::Q(q) => serde_json::Value::String(format_rational(q)),
        }
    }
}

fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Fp(x) => write!(f, "{}", x.value),
            Scalar::Q(q) => write!(f, "{}", format_rational(q)),
        }
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Parses a rational `"a/b"` or `"a"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid rational {s:?}"));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(Scalar::Q(BigRational::new(n, d)))
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Scalar::Fp(x) => s.serialize_u32(x.value),
            Scalar::Q(q) => s.serialize_str(&format_rational(q)),
        }
    }
}

impl<'a> Add for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Fp(a), Scalar::Fp(b)) => {
                self.same_field(rhs);
                let s = a.value as u64 + b.value as u64;
                Scalar::Fp(Fp::new((s % a.modulus as u64) as u32, a.modulus))
            }
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            _ => panic!("mixed fields"),
        }
    }
}

impl<'a> Sub for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Fp(a), Scalar::Fp(b)) => {
                self.same_field(rhs);
                let s = a.value as u64 + (a.modulus - b.value) as u64;
                Scalar::Fp(Fp::new((s % a.modulus as u64) as u32, a.modulus))
            }
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a - b),
            _ => panic!("mixed fields"),
        }
    }
}

impl<'a> Mul for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Fp(a), Scalar::Fp(b)) => {
                self.same_field(rhs);
                Scalar::Fp(Fp::new(mul_mod(a.value, b.value, a.modulus), a.modulus))
            }
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            _ => panic!("mixed fields"),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Fp(a) => Scalar::Fp(Fp::new((a.modulus - a.value) % a.modulus, a.modulus)),
            Scalar::Q(q) => Scalar::Q(-q),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// Division helper; panics on a zero divisor.
pub fn div(a: &Scalar, b: &Scalar) -> Scalar {
    a * &b.inv().expect("division by zero")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_reduced() {
        let q = Field::Rational.ratio(6, -4);
        assert_eq!(q.to_string(), "-3/2");
        let q: Scalar = "10/4".parse().unwrap();
        assert_eq!(q.to_json(), serde_json::json!("5/2"));
        assert_eq!(Field::Rational.int(7).to_json(), serde_json::json!("7"));
    }

    #[test]
    fn residues_in_range() {
        let f = Field::prime(11).unwrap();
        assert_eq!(f.int(-1).residue(), Some(10));
        assert_eq!(f.int(23).residue(), Some(1));
        let x = f.int(3);
        assert!((&x * &x.inv().unwrap()).is_one());
        assert!(f.zero().inv().is_none());
    }

    #[test]
    fn small_characteristic_rejected() {
        for bad in ["fp:2", "fp:3", "fp:4", "fp:9", "fp:x", "r"] {
            assert!(bad.parse::<Field>().is_err(), "{bad}");
        }
        assert_eq!("fp:7".parse::<Field>().unwrap(), Field::Prime(7));
        assert_eq!("q".parse::<Field>().unwrap(), Field::Rational);
    }

    #[test]
    fn reduce_rational_mod_p() {
        let f = Field::prime(7).unwrap();
        let half = Field::Rational.ratio(1, 2);
        assert_eq!(half.reduce_mod(f), Some(f.int(4)));
        assert_eq!(Field::Rational.ratio(1, 7).reduce_mod(f), None);
    }

    #[test]
    fn json_scalars() {
        let f = Field::prime(11).unwrap();
        assert_eq!(
            f.scalar_from_json(&serde_json::json!(13)).unwrap(),
            f.int(2)
        );
        assert!(f.scalar_from_json(&serde_json::json!("1/2")).is_err());
        let q = Field::Rational
            .scalar_from_json(&serde_json::json!("-1/3"))
            .unwrap();
        assert_eq!(q, Field::Rational.ratio(-1, 3));
    }
}
