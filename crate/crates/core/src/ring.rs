//! Ring contexts.
//!
//! Elements are plain values; every operation goes through a ring context
//! object, so runtime parameters (a modulus, a structure-constant table, a
//! tower of square roots) live in one place and elements stay small.

use std::fmt;

use num_rational::BigRational;

use crate::error::{Error, Result};

/// Why an element failed to be a unit.
#[derive(Debug, Clone, PartialEq)]
pub enum NonUnitWitness<E> {
    Zero,
    /// A nonzero `w` with `a * w = 0`.
    ZeroDivisor(E),
    /// Laurent element with more than one term; the exponents of its support.
    MultiTermSupport(Vec<i64>),
    /// Norm down to the base polynomial ring is not a nonzero constant.
    NonConstantNorm(String),
    /// No certificate available (base ring is not a field).
    Unknown,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NonUnit<E> {
    pub witness: NonUnitWitness<E>,
}

impl<E> NonUnit<E> {
    pub fn new(witness: NonUnitWitness<E>) -> Self {
        NonUnit { witness }
    }
}

pub trait Ring: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn invert(&self, a: &Self::Elem) -> std::result::Result<Self::Elem, NonUnit<Self::Elem>>;
    /// True when every nonzero element is invertible.
    fn is_field(&self) -> bool;
    /// 0 for characteristic zero.
    fn characteristic(&self) -> u64;
    /// Membership test used to detect ring mismatches.
    fn contains(&self, a: &Self::Elem) -> bool;
    /// Canonical printing in the element-expression grammar.
    fn format(&self, a: &Self::Elem) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        self.is_zero(&self.sub(a, &self.one()))
    }

    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.is_zero(&self.sub(a, b))
    }

    fn is_unit(&self, a: &Self::Elem) -> bool {
        self.invert(a).is_ok()
    }

    fn pow(&self, a: &Self::Elem, mut n: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            n >>= 1;
        }
        acc
    }

    fn sum<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items
            .into_iter()
            .fold(self.zero(), |acc, x| self.add(&acc, x))
    }

    /// Inversion with the witness rendered into the crate error type.
    fn try_invert(&self, a: &Self::Elem) -> Result<Self::Elem> {
        self.invert(a).map_err(|e| Error::NotInvertible {
            element: self.format(a),
            witness: match e.witness {
                NonUnitWitness::Zero => "zero".to_string(),
                NonUnitWitness::ZeroDivisor(w) => {
                    format!("zero divisor, annihilated by {}", self.format(&w))
                }
                NonUnitWitness::MultiTermSupport(s) => format!("multi-term support {s:?}"),
                NonUnitWitness::NonConstantNorm(n) => format!("norm {n} is not a nonzero constant"),
                NonUnitWitness::Unknown => "no inverse".to_string(),
            },
        })
    }

    /// A gcd of `items` up to units, for rings where that is meaningful.
    /// Used to clear common factors from Skolem–Noether witnesses.
    fn content(&self, _items: &[Self::Elem]) -> Option<Self::Elem> {
        None
    }

    /// Exact quotient `a / b` when `b` divides `a`.
    fn exact_div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.invert(b).ok().map(|bi| self.mul(a, &bi))
    }

    fn checked_add(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        self.check_members(a, b)?;
        Ok(self.add(a, b))
    }

    fn checked_mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        self.check_members(a, b)?;
        Ok(self.mul(a, b))
    }

    fn checked_sub(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        self.check_members(a, b)?;
        Ok(self.sub(a, b))
    }

    fn check_members(&self, a: &Self::Elem, b: &Self::Elem) -> Result<()> {
        for x in [a, b] {
            if !self.contains(x) {
                return Err(Error::RingMismatch(format!(
                    "{x:?} is not an element of {self:?}"
                )));
            }
        }
        Ok(())
    }
}

/// A commutative ring together with an involution `lambda`.
pub trait InvolutiveRing: Ring {
    fn conj(&self, a: &Self::Elem) -> Self::Elem;

    /// Module generators used as search candidates by the constructive
    /// proofs (Hilbert 90 witnesses, isotropy searches, etale witnesses).
    fn search_basis(&self) -> Vec<Self::Elem>;

    /// True when `lambda` is the identity.
    fn involution_is_trivial(&self) -> bool {
        self.search_basis()
            .iter()
            .all(|b| self.equal(&self.conj(b), b))
    }

    fn is_fixed(&self, a: &Self::Elem) -> bool {
        self.equal(&self.conj(a), a)
    }

    /// `lambda(r) * r`.
    fn norm(&self, a: &Self::Elem) -> Self::Elem {
        self.mul(&self.conj(a), a)
    }

    /// `r + lambda(r)`.
    fn trace(&self, a: &Self::Elem) -> Self::Elem {
        self.add(&self.conj(a), a)
    }
}

/// Rings whose elements can be built from the expression grammar.
pub trait ExprRing: Ring {
    fn from_rational(&self, q: &BigRational) -> Result<Self::Elem>;
    fn generator(&self, name: &str) -> Option<Self::Elem>;
    /// The two factors of a product ring, for the `(a | b)` syntax.
    fn factors(&self) -> Option<(Self, Self)>
    where
        Self: Sized,
    {
        None
    }

    /// `(a | b)` with `a`, `b` elements of the respective factors.
    fn pair(&self, _a: &Self::Elem, _b: &Self::Elem) -> Option<Self::Elem> {
        None
    }
}
