//! Exact scalars over the rationals or a prime field.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::LinAlgError;

/// The ground field every scalar of one computation lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", content = "characteristic", rename_all = "snake_case")]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

impl FieldSpec {
    /// Prime field of characteristic `p`; rejects composite or tiny moduli.
    pub fn prime(p: u64) -> Result<Self, LinAlgError> {
        if is_prime(p) {
            Ok(FieldSpec::PrimeField(p))
        } else {
            Err(LinAlgError::NotPrime(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p,
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> FieldElement {
        match *self {
            FieldSpec::Rationals => FieldElement::Rational(BigRational::from_integer(BigInt::from(v))),
            FieldSpec::PrimeField(p) => FieldElement::Modular {
                value: (v as i128).rem_euclid(p as i128) as u64,
                modulus: p,
            },
        }
    }

    /// `(-1)^exponent` as a field element.
    pub fn sign(&self, exponent: i64) -> FieldElement {
        if exponent.rem_euclid(2) == 0 {
            self.one()
        } else {
            self.from_i64(-1)
        }
    }

    /// Maps an exact rational into this field. Fails when the denominator
    /// vanishes modulo the characteristic.
    pub fn from_rational(&self, q: &BigRational) -> Result<FieldElement, LinAlgError> {
        match *self {
            FieldSpec::Rationals => Ok(FieldElement::Rational(q.clone())),
            FieldSpec::PrimeField(p) => {
                let m = BigInt::from(p);
                let num = q.numer().mod_floor(&m).to_u64().unwrap_or(0);
                let den = q.denom().mod_floor(&m).to_u64().unwrap_or(0);
                if den == 0 {
                    return Err(LinAlgError::DenominatorVanishes { value: q.to_string(), p });
                }
                let den = FieldElement::Modular { value: den, modulus: p };
                let num = FieldElement::Modular { value: num, modulus: p };
                Ok(num * den.inverse().expect("nonzero residue is invertible"))
            }
        }
    }

    pub fn contains(&self, x: &FieldElement) -> bool {
        x.field() == *self
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = LinAlgError;

    /// Accepts `Q`, `QQ`, `rationals`, `F<p>`, `GF(<p>)` and `Z/<p>`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        match t {
            "Q" | "QQ" | "rationals" | "rational" => return Ok(FieldSpec::Rationals),
            _ => {}
        }
        let digits = t
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| t.strip_prefix("Z/"))
            .or_else(|| t.strip_prefix('F'))
            .or_else(|| t.strip_prefix("Fp"))
            .ok_or_else(|| LinAlgError::BadFieldSpec(s.to_string()))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| LinAlgError::BadFieldSpec(s.to_string()))?;
        FieldSpec::prime(p)
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    // Residue products go through u128, so any u64 prime is usable.
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact scalar in canonical form: reduced fraction, or least
/// non-negative residue.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rational(BigRational),
    Modular { value: u64, modulus: u64 },
}

impl FieldElement {
    pub fn field(&self) -> FieldSpec {
        match self {
            FieldElement::Rational(_) => FieldSpec::Rationals,
            FieldElement::Modular { modulus, .. } => FieldSpec::PrimeField(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_zero(),
            FieldElement::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Rational(q) => q.is_one(),
            FieldElement::Modular { value, .. } => *value == 1,
        }
    }

    pub fn inverse(&self) -> Option<FieldElement> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            FieldElement::Rational(q) => FieldElement::Rational(q.recip()),
            FieldElement::Modular { value, modulus } => FieldElement::Modular {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    /// Multiplies by `(-1)^exponent` in place.
    pub fn apply_sign(&mut self, exponent: i64) {
        if exponent.rem_euclid(2) != 0 {
            *self = -&*self;
        }
    }

    /// The exact rational value, when over the rationals.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldElement::Rational(q) => Some(q),
            FieldElement::Modular { .. } => None,
        }
    }

    fn check_same(&self, other: &FieldElement) {
        debug_assert_eq!(
            self.field(),
            other.field(),
            "scalars from different fields combined"
        );
    }
}

fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc: u128 = 1;
    let mut b = (base % m) as u128;
    let m128 = m as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    acc as u64
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            FieldElement::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &'a FieldElement) -> FieldElement {
        self.check_same(rhs);
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a + b),
            (
                FieldElement::Modular { value: a, modulus },
                FieldElement::Modular { value: b, .. },
            ) => FieldElement::Modular {
                value: ((*a as u128 + *b as u128) % *modulus as u128) as u64,
                modulus: *modulus,
            },
            _ => panic!("scalars from different fields combined"),
        }
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &'a FieldElement) -> FieldElement {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &'a FieldElement) -> FieldElement {
        self.check_same(rhs);
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a * b),
            (
                FieldElement::Modular { value: a, modulus },
                FieldElement::Modular { value: b, .. },
            ) => FieldElement::Modular {
                value: ((*a as u128 * *b as u128) % *modulus as u128) as u64,
                modulus: *modulus,
            },
            _ => panic!("scalars from different fields combined"),
        }
    }
}

impl<'a> Div<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &'a FieldElement) -> FieldElement {
        self * &rhs.inverse().expect("division by zero")
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        match self {
            FieldElement::Rational(a) => FieldElement::Rational(-a),
            FieldElement::Modular { value, modulus } => FieldElement::Modular {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        match self {
            FieldElement::Rational(a) => FieldElement::Rational(-a),
            m => -&m,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &'a FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&FieldElement> for FieldElement {
    fn add_assign(&mut self, rhs: &FieldElement) {
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => *a += b,
            (s, r) => *s = &*s + r,
        }
    }
}

impl SubAssign<&FieldElement> for FieldElement {
    fn sub_assign(&mut self, rhs: &FieldElement) {
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => *a -= b,
            (s, r) => *s = &*s - r,
        }
    }
}

impl MulAssign<&FieldElement> for FieldElement {
    fn mul_assign(&mut self, rhs: &FieldElement) {
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => *a *= b,
            (s, r) => *s = &*s * r,
        }
    }
}

/// Parses a decimal rational such as `-3`, `2/5`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let t = s.trim();
    if let Some((n, d)) = t.split_once('/') {
        let n = BigInt::from_str(n.trim()).ok()?;
        let d = BigInt::from_str(d.trim()).ok()?;
        if d.is_zero() {
            return None;
        }
        Some(BigRational::new(n, d))
    } else {
        BigInt::from_str(t).ok().map(BigRational::from_integer)
    }
}

/// Renders a rational the way [`parse_rational`] reads it.
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else if q.is_negative() {
        format!("-{}/{}", q.numer().abs(), q.denom())
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
