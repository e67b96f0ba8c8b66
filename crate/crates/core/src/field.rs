//! Exact scalars: residues modulo a prime below 2^31, or arbitrary-precision rationals.
//!
//! A [`Scalar`] always carries enough information to know its field, so equality is
//! structural. Arithmetic between scalars of different fields is a programming error
//! and panics; every public operation of the crate validates fields up front.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest admissible prime modulus is below this bound.
pub const PRIME_BOUND: u64 = 1 << 31;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Prime(u32),
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if !(2..PRIME_BOUND).contains(&p) {
            return Err(Error::InvalidField(format!("modulus {p} outside [2, 2^31)")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(Field::Prime(p as u32))
    }

    pub fn is_prime_field(&self) -> bool {
        matches!(self, Field::Prime(_))
    }

    /// Number of elements, if finite.
    pub fn order(&self) -> Option<u64> {
        match self {
            Field::Rational => None,
            Field::Prime(p) => Some(u64::from(*p)),
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(BigRational::zero()),
            Field::Prime(p) => Scalar::Fp { residue: 0, p: *p },
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => {
                let r = v.rem_euclid(i64::from(*p));
                Scalar::Fp {
                    residue: r as u32,
                    p: *p,
                }
            }
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(BigRational::from_integer(v.clone())),
            Field::Prime(p) => {
                let r = v.mod_floor(&BigInt::from(*p));
                Scalar::Fp {
                    residue: r.to_u32().expect("residue fits"),
                    p: *p,
                }
            }
        }
    }

    /// Field element from a canonical residue; panics on the rationals.
    pub(crate) fn residue(&self, r: u64) -> Scalar {
        match self {
            Field::Prime(p) => {
                debug_assert!(r < u64::from(*p));
                Scalar::Fp {
                    residue: r as u32,
                    p: *p,
                }
            }
            Field::Rational => panic!("residue() on the rational field"),
        }
    }

    /// All elements in canonical residue order (prime fields only).
    pub fn elements(&self) -> Result<Vec<Scalar>> {
        match self {
            Field::Prime(p) => Ok((0..u64::from(*p)).map(|r| self.residue(r)).collect()),
            Field::Rational => Err(Error::EnumerationUnsupported(self.to_string())),
        }
    }

    /// Parses a scalar literal: `-?[0-9]+` or `-?[0-9]+/-?[0-9]+`.
    pub fn parse_scalar(&self, token: &str) -> std::result::Result<Scalar, String> {
        let (num, den) = match token.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (token, None),
        };
        let parse_int = |s: &str| -> std::result::Result<BigInt, String> {
            let digits = s.strip_prefix('-').unwrap_or(s);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(format!("malformed scalar literal `{token}`"));
            }
            s.parse::<BigInt>()
                .map_err(|_| format!("malformed scalar literal `{token}`"))
        };
        let num = parse_int(num)?;
        let den = match den {
            Some(d) => parse_int(d)?,
            None => BigInt::one(),
        };
        if den.is_zero() {
            return Err(format!("zero denominator in `{token}`"));
        }
        match self {
            Field::Rational => Ok(Scalar::Q(BigRational::new(num, den))),
            Field::Prime(p) => {
                let n = self.from_bigint(&num);
                let d = self.from_bigint(&den);
                let inv = d
                    .inv()
                    .ok_or_else(|| format!("denominator of `{token}` vanishes modulo {p}"))?;
                Ok(&n * &inv)
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "rational"),
            Field::Prime(p) => write!(f, "gf{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field> {
        if s == "rational" {
            return Ok(Field::Rational);
        }
        let digits = s
            .strip_prefix("gf")
            .ok_or_else(|| Error::InvalidField(format!("`{s}` (expected `rational` or `gf<p>`)")))?;
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::InvalidField(format!("`{s}`")));
        }
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::InvalidField(format!("`{s}`")))?;
        Field::prime(p)
    }
}

/// An exact field element in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Fp { residue: u32, p: u32 },
    Q(BigRational),
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, (a % p) as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    t.rem_euclid(p as i64) as u64
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Fp { p, .. } => Field::Prime(*p),
            Scalar::Q(_) => Field::Rational,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Fp { residue, .. } => *residue == 0,
            Scalar::Q(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Fp { residue, .. } => *residue == 1,
            Scalar::Q(q) => q.is_one(),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Fp { residue, p } => Scalar::Fp {
                residue: inv_mod(u64::from(*residue), u64::from(*p)) as u32,
                p: *p,
            },
            Scalar::Q(q) => Scalar::Q(q.recip()),
        })
    }

    pub(crate) fn as_residue(&self) -> u64 {
        match self {
            Scalar::Fp { residue, .. } => u64::from(*residue),
            Scalar::Q(_) => panic!("as_residue() on a rational scalar"),
        }
    }

    pub(crate) fn as_rational(&self) -> &BigRational {
        match self {
            Scalar::Q(q) => q,
            Scalar::Fp { .. } => panic!("as_rational() on a prime-field scalar"),
        }
    }

    fn binary(&self, rhs: &Scalar, op: fn(u64, u64, u64) -> u64, qop: fn(&BigRational, &BigRational) -> BigRational) -> Scalar {
        match (self, rhs) {
            (Scalar::Fp { residue: a, p }, Scalar::Fp { residue: b, p: p2 }) => {
                assert_eq!(p, p2, "scalar arithmetic across different prime fields");
                Scalar::Fp {
                    residue: op(u64::from(*a), u64::from(*b), u64::from(*p)) as u32,
                    p: *p,
                }
            }
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(qop(a, b)),
            _ => panic!("scalar arithmetic across different fields"),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Fp { residue, .. } => write!(f, "{residue}"),
            Scalar::Q(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical residue order on prime fields, numeric order on the rationals.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Fp { residue: a, p }, Scalar::Fp { residue: b, p: q }) => p.cmp(q).then(a.cmp(b)),
            (Scalar::Q(a), Scalar::Q(b)) => a.cmp(b),
            (Scalar::Fp { .. }, Scalar::Q(_)) => Ordering::Less,
            (Scalar::Q(_), Scalar::Fp { .. }) => Ordering::Greater,
        }
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.binary(rhs, |a, b, p| (a + b) % p, |a, b| a + b)
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.binary(rhs, |a, b, p| (a + p - b) % p, |a, b| a - b)
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.binary(rhs, mul_mod, |a, b| a * b)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Fp { residue, p } => Scalar::Fp {
                residue: ((u64::from(*p) - u64::from(*residue)) % u64::from(*p)) as u32,
                p: *p,
            },
            Scalar::Q(q) => Scalar::Q(-q),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_check() {
        assert!(Field::prime(2).is_ok());
        assert!(Field::prime(7).is_ok());
        assert!(Field::prime(2_147_483_647).is_ok());
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(9).is_err());
        assert!(Field::prime(1 << 31).is_err());
    }

    #[test]
    fn field_tokens() {
        assert_eq!("gf7".parse::<Field>().unwrap(), Field::Prime(7));
        assert_eq!("rational".parse::<Field>().unwrap(), Field::Rational);
        assert!("gf8".parse::<Field>().is_err());
        assert!("gf".parse::<Field>().is_err());
        assert!("GF7".parse::<Field>().is_err());
        assert_eq!(Field::Prime(13).to_string(), "gf13");
    }

    #[test]
    fn literal_parsing() {
        let q = Field::Rational;
        assert_eq!(q.parse_scalar("4/6").unwrap().to_string(), "2/3");
        assert_eq!(q.parse_scalar("3/-6").unwrap().to_string(), "-1/2");
        assert_eq!(q.parse_scalar("-10/5").unwrap().to_string(), "-2");
        assert!(q.parse_scalar("1/0").is_err());
        assert!(q.parse_scalar("1.5").is_err());
        assert!(q.parse_scalar("").is_err());
        assert!(q.parse_scalar("+3").is_err());

        let f7 = Field::Prime(7);
        assert_eq!(f7.parse_scalar("-1").unwrap().to_string(), "6");
        assert_eq!(f7.parse_scalar("1/2").unwrap().to_string(), "4");
        assert_eq!(f7.parse_scalar("100").unwrap().to_string(), "2");
        assert!(f7.parse_scalar("1/7").is_err());
    }

    #[test]
    fn modular_arithmetic() {
        let f = Field::Prime(5);
        let a = f.from_i64(3);
        let b = f.from_i64(4);
        assert_eq!((&a + &b).to_string(), "2");
        assert_eq!((&a - &b).to_string(), "4");
        assert_eq!((&a * &b).to_string(), "2");
        assert_eq!((-&a).to_string(), "2");
        assert_eq!(&a * &a.inv().unwrap(), f.one());
        assert!(f.zero().inv().is_none());
        for r in 1..5u64 {
            assert_eq!(mul_mod(r, inv_mod(r, 5), 5), 1);
        }
    }

    #[test]
    fn ordering() {
        let q = Field::Rational;
        assert!(q.parse_scalar("-1/2").unwrap() < q.zero());
        assert!(q.parse_scalar("1/3").unwrap() < q.parse_scalar("1/2").unwrap());
        let f = Field::Prime(3);
        assert!(f.from_i64(-1) > f.one());
    }
}
