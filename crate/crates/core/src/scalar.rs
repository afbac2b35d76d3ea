//! Exact field elements: arbitrary-precision rationals and prime fields GF(p).
//!
//! Every scalar carries a field tag so that values from different fields can
//! never be combined silently. Rationals are kept in lowest terms with a
//! positive denominator (num-rational maintains this), GF(p) values are
//! canonical representatives in [0, p).

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// The coefficient field: the rationals or a prime field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    /// Arbitrary-precision rationals.
    Q,
    /// Integers modulo a prime p.
    Gf(u64),
}

impl Field {
    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, value: i64) -> Scalar {
        match self {
            Field::Q => Scalar::Q(BigRational::from_integer(BigInt::from(value))),
            Field::Gf(p) => {
                let p_i = *p as i128;
                let v = ((value as i128 % p_i) + p_i) % p_i;
                Scalar::Gf {
                    value: v as u64,
                    modulus: *p,
                }
            }
        }
    }

    /// Parse an exact scalar from a decimal string `"a"` or `"a/b"`.
    ///
    /// Over GF(p) the fraction form means a * b^{-1} mod p; a denominator
    /// divisible by p is rejected.
    pub fn parse(&self, text: &str) -> Result<Scalar> {
        let text = text.trim();
        let (num_str, den_str) = match text.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (text, None),
        };
        let num = parse_bigint(num_str)?;
        let den = match den_str {
            Some(d) => {
                let den = parse_unsigned_bigint(d)?;
                if den.is_zero() {
                    return Err(Error::Parse(format!("zero denominator in `{text}`")));
                }
                Some(den)
            }
            None => None,
        };
        match self {
            Field::Q => {
                let den = den.unwrap_or_else(BigInt::one);
                Ok(Scalar::Q(BigRational::new(num, den)))
            }
            Field::Gf(p) => {
                let n = bigint_mod_u64(&num, *p);
                let value = match den {
                    None => n,
                    Some(d) => {
                        let d = bigint_mod_u64(&d, *p);
                        if d == 0 {
                            return Err(Error::Parse(format!(
                                "denominator of `{text}` is divisible by {p}"
                            )));
                        }
                        mul_mod(n, inv_mod(d, *p), *p)
                    }
                };
                Ok(Scalar::Gf { value, modulus: *p })
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Q => write!(f, "Q"),
            Field::Gf(p) => write!(f, "GF({p})"),
        }
    }
}

/// An exact field element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    Gf { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Q,
            Scalar::Gf { modulus, .. } => Field::Gf(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Gf { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_one(),
            Scalar::Gf { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Q(r) => {
                assert!(!r.is_zero(), "division by zero");
                Scalar::Q(r.recip())
            }
            Scalar::Gf { value, modulus } => {
                assert!(*value != 0, "division by zero");
                Scalar::Gf {
                    value: inv_mod(*value, *modulus),
                    modulus: *modulus,
                }
            }
        }
    }

    /// The underlying rational, for Q scalars only.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Q(r) => Some(r),
            Scalar::Gf { .. } => None,
        }
    }

    pub fn as_gf(&self) -> Option<u64> {
        match self {
            Scalar::Q(_) => None,
            Scalar::Gf { value, .. } => Some(*value),
        }
    }

    fn check_same_field(&self, other: &Scalar) {
        assert_eq!(
            self.field(),
            other.field(),
            "scalar arithmetic across different fields"
        );
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Gf { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.check_same_field(rhs);
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Gf { value: a, modulus }, Scalar::Gf { value: b, .. }) => Scalar::Gf {
                value: add_mod(*a, *b, *modulus),
                modulus: *modulus,
            },
            _ => unreachable!(),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.check_same_field(rhs);
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Gf { value: a, modulus }, Scalar::Gf { value: b, .. }) => Scalar::Gf {
                value: mul_mod(*a, *b, *modulus),
                modulus: *modulus,
            },
            _ => unreachable!(),
        }
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    // Division is multiplication by the inverse in both fields.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Gf { value, modulus } => Scalar::Gf {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }
}

fn parse_bigint(text: &str) -> Result<BigInt> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::Parse("empty numeric literal".into()));
    }
    let body = text.strip_prefix('-').unwrap_or(text);
    if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(format!("malformed integer `{text}`")));
    }
    text.parse::<BigInt>()
        .map_err(|e| Error::Parse(format!("malformed integer `{text}`: {e}")))
}

fn parse_unsigned_bigint(text: &str) -> Result<BigInt> {
    let value = parse_bigint(text)?;
    if value.is_negative() {
        return Err(Error::Parse(format!(
            "denominator `{text}` must be positive"
        )));
    }
    Ok(value)
}

fn bigint_mod_u64(value: &BigInt, p: u64) -> u64 {
    use num_traits::ToPrimitive;
    let p_big = BigInt::from(p);
    let mut r = value % &p_big;
    if r.is_negative() {
        r += &p_big;
    }
    r.to_u64().expect("residue fits in u64")
}

pub(crate) fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    // p is prime, so a^{p-2} is the inverse of any nonzero a.
    debug_assert!(!a.is_multiple_of(p), "inverse of zero");
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin, valid for all u64 inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_reduce_and_round_trip() {
        let f = Field::Q;
        let a = f.parse("6/4").unwrap();
        assert_eq!(a.to_string(), "3/2");
        let b = f.parse("-7/3").unwrap();
        let sum = &a + &b;
        assert_eq!(&(&sum - &b), &a, "a + b - b must round-trip bit-exactly");
        assert_eq!(sum.to_string(), "-5/6");
    }

    #[test]
    fn gf_values_are_canonical() {
        let f = Field::Gf(7);
        assert_eq!(f.from_i64(-1).to_string(), "6");
        assert_eq!(f.parse("15").unwrap().to_string(), "1");
        let half = f.parse("1/2").unwrap();
        assert_eq!(&half + &half, f.one());
    }

    #[test]
    fn malformed_scalars_rejected() {
        assert!(Field::Q.parse("1.5").is_err());
        assert!(Field::Q.parse("1/0").is_err());
        assert!(Field::Q.parse("").is_err());
        assert!(Field::Q.parse("2/-3").is_err());
        assert!(Field::Gf(5).parse("1/5").is_err());
    }

    #[test]
    fn inverse_agrees_with_division() {
        let f = Field::Gf(13);
        for v in 1..13 {
            let x = f.from_i64(v);
            assert!((&x * &x.inv()).is_one());
        }
        let q = Field::Q.parse("-3/7").unwrap();
        assert!((&q * &q.inv()).is_one());
    }

    #[test]
    fn primality_check() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(5));
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(91));
        assert!(!is_prime_u64(u64::MAX));
    }
}
