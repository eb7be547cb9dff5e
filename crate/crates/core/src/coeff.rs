//! Exact coefficient fields: the rationals and prime fields `F_p`.
//!
//! Every [`Scalar`] carries enough information to identify its field, so
//! arithmetic between elements of different fields is caught. The operator
//! impls panic on such a mix; the `checked_*` methods report it as
//! [`Error::Usage`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest prime modulus accepted, so that products of residues fit in a `u64`.
pub const MAX_MODULUS: u64 = (1 << 31) - 1;

/// Which field the coefficients live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl FieldSpec {
    /// The prime field with `p` elements. Rejects composite `p` and `p > MAX_MODULUS`.
    pub fn prime(p: u64) -> Result<Self> {
        if p > MAX_MODULUS {
            return Err(Error::usage(format!(
                "modulus {p} exceeds the supported maximum {MAX_MODULUS}"
            )));
        }
        if !is_prime(p) {
            return Err(Error::usage(format!("{p} is not prime")));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(n.clone())),
            FieldSpec::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(*p));
                Scalar::Residue {
                    value: r.to_u64().expect("residue fits in u64"),
                    modulus: *p,
                }
            }
        }
    }

    /// `numer / denom` in this field.
    pub fn from_ratio(&self, numer: &BigInt, denom: &BigInt) -> Result<Scalar> {
        if denom.is_zero() {
            return Err(Error::Arithmetic("division by zero".into()));
        }
        self.from_bigint(numer).checked_div(&self.from_bigint(denom))
    }

    /// Parses `a` or `a/b` with optional leading sign.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        let text = text.trim();
        let parse_int = |s: &str| {
            BigInt::from_str(s.trim())
                .map_err(|_| Error::usage(format!("malformed number '{text}'")))
        };
        match text.split_once('/') {
            Some((n, d)) => self.from_ratio(&parse_int(n)?, &parse_int(d)?),
            None => Ok(self.from_bigint(&parse_int(text)?)),
        }
    }

    /// Whether `s` belongs to this field.
    pub fn contains(&self, s: &Scalar) -> bool {
        s.field() == *self
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "q"),
            FieldSpec::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `q` or `fp:<p>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(FieldSpec::Rationals);
        }
        if let Some(p) = s.strip_prefix("fp:") {
            let p: u64 = p
                .trim()
                .parse()
                .map_err(|_| Error::usage(format!("malformed modulus in '{s}'")))?;
            return FieldSpec::prime(p);
        }
        Err(Error::usage(format!(
            "unknown coefficient field '{s}' (expected q or fp:<p>)"
        )))
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of a [`FieldSpec`], always in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    /// Lowest terms, positive denominator (maintained by `BigRational`).
    Rational(BigRational),
    /// `value` in `[0, modulus)`.
    Residue { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Residue { modulus, .. } => FieldSpec::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    /// True for rationals with negative sign. Residues are never negative.
    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Rational(q) if q.is_negative())
    }

    pub fn zero_like(&self) -> Scalar {
        self.field().zero()
    }

    pub fn one_like(&self) -> Scalar {
        self.field().one()
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a + b)),
            (
                Scalar::Residue { value: a, modulus: p },
                Scalar::Residue { value: b, modulus: q },
            ) if p == q => Ok(Scalar::Residue {
                value: (a + b) % p,
                modulus: *p,
            }),
            _ => Err(mixed(self, other)),
        }
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a * b)),
            (
                Scalar::Residue { value: a, modulus: p },
                Scalar::Residue { value: b, modulus: q },
            ) if p == q => Ok(Scalar::Residue {
                value: (a * b) % p,
                modulus: *p,
            }),
            _ => Err(mixed(self, other)),
        }
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        if self.field() != other.field() {
            return Err(mixed(self, other));
        }
        self.checked_mul(&other.inv()?)
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::Arithmetic("division by zero".into()));
        }
        Ok(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    /// Panicking division, for internal use where the divisor is known nonzero.
    pub fn div(&self, other: &Scalar) -> Scalar {
        self.checked_div(other).expect("scalar division")
    }
}

fn mixed(a: &Scalar, b: &Scalar) -> Error {
    Error::usage(format!(
        "mixed coefficient fields {} and {}",
        a.field(),
        b.field()
    ))
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

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.checked_add(rhs).expect("scalar addition")
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.checked_sub(rhs).expect("scalar subtraction")
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.checked_mul(rhs).expect("scalar multiplication")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
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
            Scalar::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Scalar {
        FieldSpec::Rationals.parse_scalar(s).unwrap()
    }

    #[test]
    fn rational_addition() {
        assert_eq!(&q("1/2") + &q("1/3"), q("5/6"));
        assert_eq!(q("4/-6").to_string(), "-2/3");
    }

    #[test]
    fn prime_field_inverse() {
        let f7 = FieldSpec::prime(7).unwrap();
        let r = f7.one().checked_div(&f7.from_i64(5)).unwrap();
        assert_eq!(r, f7.from_i64(3));
        assert_eq!(f7.from_i64(-1).to_string(), "6");
    }

    #[test]
    fn division_by_zero() {
        let err = q("1").checked_div(&q("0")).unwrap_err();
        assert!(matches!(err, Error::Arithmetic(_)));
        let f7 = FieldSpec::prime(7).unwrap();
        assert!(f7.one().checked_div(&f7.from_i64(14)).is_err());
    }

    #[test]
    fn mixed_fields_rejected() {
        let f7 = FieldSpec::prime(7).unwrap();
        let f5 = FieldSpec::prime(5).unwrap();
        assert!(matches!(
            f7.one().checked_add(&f5.one()),
            Err(Error::Usage(_))
        ));
        assert!(q("1").checked_mul(&f7.one()).is_err());
    }

    #[test]
    fn field_parsing() {
        assert_eq!("q".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
        assert_eq!(
            "fp:32003".parse::<FieldSpec>().unwrap(),
            FieldSpec::Prime(32003)
        );
        assert!("fp:32004".parse::<FieldSpec>().is_err());
        assert!("fp:1".parse::<FieldSpec>().is_err());
        assert!("r".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn residues_from_fractions() {
        let f7 = FieldSpec::prime(7).unwrap();
        // 1/2 = 4 in F_7
        assert_eq!(f7.parse_scalar("1/2").unwrap(), f7.from_i64(4));
        assert!(f7.parse_scalar("1/7").is_err());
    }
}
