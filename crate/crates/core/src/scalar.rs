//! Base fields: the rationals and prime fields of odd characteristic.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ring::{ExprRing, InvolutiveRing, NonUnit, NonUnitWitness, Ring};

/// An exact scalar. Rationals are kept in lowest terms with positive
/// denominator (guaranteed by `BigRational`); residues lie in `[0, p)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{q}"),
            Scalar::Residue { value, modulus } => write!(f, "{value} mod {modulus}"),
        }
    }
}

/// The base field `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseField {
    Rationals,
    Prime(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Tonelli–Shanks; `None` when `a` is a non-residue.
fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(a, (p + 1) / 4, p));
    }
    let mut q = p - 1;
    let mut s = 0u32;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let mut z = 2u64;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0u32;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1u64 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

impl BaseField {
    /// Prime field of odd characteristic `p`.
    pub fn prime(p: u64) -> Result<Self> {
        if p == 2 {
            return Err(Error::CharacteristicTwo("prime field F_2 requested".into()));
        }
        if !is_prime(p) || p >= 1 << 32 {
            return Err(Error::InvalidModulus(p));
        }
        Ok(BaseField::Prime(p))
    }

    pub fn rational(&self, q: BigRational) -> Result<Scalar> {
        match *self {
            BaseField::Rationals => Ok(Scalar::Rational(q)),
            BaseField::Prime(p) => {
                let pb = BigInt::from(p);
                let den = q.denom().mod_floor(&pb).to_u64().unwrap();
                if den == 0 {
                    return Err(Error::NotInvertible {
                        element: q.to_string(),
                        witness: format!("denominator vanishes mod {p}"),
                    });
                }
                let num = q.numer().mod_floor(&pb).to_u64().unwrap();
                let value = mul_mod(num, pow_mod(den, p - 2, p), p);
                Ok(Scalar::Residue { value, modulus: p })
            }
        }
    }

    pub fn int(&self, n: i64) -> Scalar {
        match *self {
            BaseField::Rationals => Scalar::Rational(BigRational::from_integer(n.into())),
            BaseField::Prime(p) => Scalar::Residue {
                value: n.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    /// Parse a decimal integer or `p/q` literal.
    pub fn parse(&self, s: &str) -> Result<Scalar> {
        let q = parse_rational(s.trim())?;
        self.rational(q)
    }

    /// A square root in the base field, if one exists.
    pub fn sqrt(&self, a: &Scalar) -> Option<Scalar> {
        match a {
            Scalar::Rational(q) => {
                if q.is_negative() {
                    return None;
                }
                let n = q.numer().sqrt();
                let d = q.denom().sqrt();
                if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
                    Some(Scalar::Rational(BigRational::new(n, d)))
                } else {
                    None
                }
            }
            Scalar::Residue { value, modulus } => {
                sqrt_mod(*value, *modulus).map(|v| Scalar::Residue {
                    value: v,
                    modulus: *modulus,
                })
            }
        }
    }

    /// Every element of the prime field, for exhaustive searches.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match *self {
            BaseField::Rationals => None,
            BaseField::Prime(p) => Some(
                (0..p)
                    .map(|v| Scalar::Residue {
                        value: v,
                        modulus: p,
                    })
                    .collect(),
            ),
        }
    }

    pub fn name(&self) -> String {
        match self {
            BaseField::Rationals => "Q".into(),
            BaseField::Prime(p) => format!("F{p}"),
        }
    }

    /// Accepts `Q`, `F7`, `F_7`, `GF(7)`.
    pub fn from_name(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "Q" || t == "QQ" {
            return Ok(BaseField::Rationals);
        }
        let digits = t
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| t.strip_prefix("F_"))
            .or_else(|| t.strip_prefix('F'));
        match digits.and_then(|d| d.parse::<u64>().ok()) {
            Some(p) => BaseField::prime(p),
            None => Err(Error::Parse {
                pos: 0,
                msg: format!("unknown base field '{s}'"),
            }),
        }
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse {
        pos: 0,
        msg: format!("not a rational literal: '{s}'"),
    };
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

impl Scalar {
    pub fn is_negative_rational(&self) -> bool {
        matches!(self, Scalar::Rational(q) if q.is_negative())
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            _ => None,
        }
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

impl Ring for BaseField {
    type Elem = Scalar;

    fn zero(&self) -> Scalar {
        self.int(0)
    }

    fn one(&self) -> Scalar {
        self.int(1)
    }

    fn from_int(&self, n: i64) -> Scalar {
        self.int(n)
    }

    fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(if x.is_zero() {
                y.clone()
            } else if y.is_zero() {
                x.clone()
            } else if x.is_integer() && y.is_integer() {
                BigRational::from_integer(x.numer() + y.numer())
            } else {
                x + y
            }),
            (
                Scalar::Residue {
                    value: x,
                    modulus: p,
                },
                Scalar::Residue { value: y, .. },
            ) => Scalar::Residue {
                value: ((*x as u128 + *y as u128) % *p as u128) as u64,
                modulus: *p,
            },
            _ => panic!("scalar kind mismatch: {a:?} + {b:?}"),
        }
    }

    fn neg(&self, a: &Scalar) -> Scalar {
        match a {
            Scalar::Rational(x) => Scalar::Rational(-x),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }

    fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Rational(x), Scalar::Rational(y)) => {
                Scalar::Rational(if x.is_zero() || y.is_zero() {
                    BigRational::zero()
                } else if x.is_integer() && y.is_integer() {
                    BigRational::from_integer(x.numer() * y.numer())
                } else {
                    x * y
                })
            }
            (
                Scalar::Residue {
                    value: x,
                    modulus: p,
                },
                Scalar::Residue { value: y, .. },
            ) => Scalar::Residue {
                value: mul_mod(*x, *y, *p),
                modulus: *p,
            },
            _ => panic!("scalar kind mismatch: {a:?} * {b:?}"),
        }
    }

    fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Rational(x) => x.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    fn equal(&self, a: &Scalar, b: &Scalar) -> bool {
        a == b
    }

    fn invert(&self, a: &Scalar) -> std::result::Result<Scalar, NonUnit<Scalar>> {
        if self.is_zero(a) {
            return Err(NonUnit::new(NonUnitWitness::Zero));
        }
        Ok(match a {
            Scalar::Rational(x) => Scalar::Rational(x.recip()),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    fn is_field(&self) -> bool {
        true
    }

    fn characteristic(&self) -> u64 {
        match self {
            BaseField::Rationals => 0,
            BaseField::Prime(p) => *p,
        }
    }

    fn contains(&self, a: &Scalar) -> bool {
        match (self, a) {
            (BaseField::Rationals, Scalar::Rational(_)) => true,
            (BaseField::Prime(p), Scalar::Residue { value, modulus }) => p == modulus && value < p,
            _ => false,
        }
    }

    fn format(&self, a: &Scalar) -> String {
        a.to_string()
    }
}

impl InvolutiveRing for BaseField {
    fn conj(&self, a: &Scalar) -> Scalar {
        a.clone()
    }

    fn search_basis(&self) -> Vec<Scalar> {
        vec![self.one()]
    }

    fn involution_is_trivial(&self) -> bool {
        true
    }
}

impl ExprRing for BaseField {
    fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        self.rational(q.clone())
    }

    fn generator(&self, _name: &str) -> Option<Scalar> {
        None
    }
}

/// Sign of a rational scalar, used for canonical printing.
pub(crate) fn scalar_sign(a: &Scalar) -> Sign {
    match a {
        Scalar::Rational(q) if q.is_negative() => Sign::Minus,
        Scalar::Rational(q) if q.is_zero() => Sign::NoSign,
        Scalar::Residue { value: 0, .. } => Sign::NoSign,
        _ => Sign::Plus,
    }
}
