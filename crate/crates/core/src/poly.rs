//! Univariate polynomials over a base field.

use crate::ring::{NonUnit, NonUnitWitness, Ring};
use crate::scalar::{BaseField, Scalar};
use crate::terms::format_terms;

/// Coefficients in increasing degree, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    pub base: BaseField,
    pub var: String,
}

impl PolyRing {
    pub fn new(base: BaseField, var: &str) -> Self {
        PolyRing {
            base,
            var: var.to_string(),
        }
    }

    pub fn from_coeffs(&self, mut coeffs: Vec<Scalar>) -> Poly {
        while coeffs.last().is_some_and(|c| self.base.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(&self, c: Scalar) -> Poly {
        self.from_coeffs(vec![c])
    }

    pub fn x(&self) -> Poly {
        self.from_coeffs(vec![self.base.zero(), self.base.one()])
    }

    /// `x - a`.
    pub fn linear(&self, a: &Scalar) -> Poly {
        self.from_coeffs(vec![self.base.neg(a), self.base.one()])
    }

    pub fn scale(&self, c: &Scalar, p: &Poly) -> Poly {
        self.from_coeffs(p.coeffs.iter().map(|x| self.base.mul(c, x)).collect())
    }

    pub fn eval(&self, p: &Poly, at: &Scalar) -> Scalar {
        p.coeffs.iter().rev().fold(self.base.zero(), |acc, c| {
            self.base.add(&self.base.mul(&acc, at), c)
        })
    }

    pub fn as_constant(&self, p: &Poly) -> Option<Scalar> {
        match p.coeffs.len() {
            0 => Some(self.base.zero()),
            1 => Some(p.coeffs[0].clone()),
            _ => None,
        }
    }

    /// Euclidean division; `None` when dividing by zero.
    pub fn divrem(&self, a: &Poly, b: &Poly) -> Option<(Poly, Poly)> {
        let db = b.degree()?;
        let lead_inv = self.base.invert(b.leading()?).ok()?;
        let mut rem = a.coeffs.clone();
        let mut quot = vec![self.base.zero(); a.coeffs.len().saturating_sub(db)];
        while rem.len() > db {
            let top = rem.len() - 1;
            let c = self.base.mul(&rem[top], &lead_inv);
            let shift = top - db;
            for (i, bc) in b.coeffs.iter().enumerate() {
                rem[shift + i] = self.base.sub(&rem[shift + i], &self.base.mul(&c, bc));
            }
            quot[shift] = c;
            rem.pop();
            while rem.last().is_some_and(|x| self.base.is_zero(x)) {
                rem.pop();
            }
        }
        Some((self.from_coeffs(quot), self.from_coeffs(rem)))
    }

    pub fn monic(&self, p: &Poly) -> Poly {
        match p.leading() {
            Some(l) => self.scale(
                &self.base.invert(l).expect("nonzero leading coefficient"),
                p,
            ),
            None => p.clone(),
        }
    }

    pub fn gcd(&self, a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while b.degree().is_some() {
            let (_, r) = self.divrem(&a, &b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        self.monic(&a)
    }
}

impl Ring for PolyRing {
    type Elem = Poly;

    fn zero(&self) -> Poly {
        Poly { coeffs: Vec::new() }
    }

    fn one(&self) -> Poly {
        self.constant(self.base.one())
    }

    fn from_int(&self, n: i64) -> Poly {
        self.constant(self.base.int(n))
    }

    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        let n = a.coeffs.len().max(b.coeffs.len());
        let z = self.base.zero();
        self.from_coeffs(
            (0..n)
                .map(|i| {
                    self.base
                        .add(a.coeffs.get(i).unwrap_or(&z), b.coeffs.get(i).unwrap_or(&z))
                })
                .collect(),
        )
    }

    fn neg(&self, a: &Poly) -> Poly {
        Poly {
            coeffs: a.coeffs.iter().map(|x| self.base.neg(x)).collect(),
        }
    }

    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        if a.coeffs.is_empty() || b.coeffs.is_empty() {
            return self.zero();
        }
        let mut out = vec![self.base.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            for (j, y) in b.coeffs.iter().enumerate() {
                out[i + j] = self.base.add(&out[i + j], &self.base.mul(x, y));
            }
        }
        self.from_coeffs(out)
    }

    fn is_zero(&self, a: &Poly) -> bool {
        a.coeffs.is_empty()
    }

    fn invert(&self, a: &Poly) -> Result<Poly, NonUnit<Poly>> {
        match a.degree() {
            None => Err(NonUnit::new(NonUnitWitness::Zero)),
            Some(0) => Ok(self.constant(self.base.invert(&a.coeffs[0]).expect("nonzero"))),
            Some(_) => Err(NonUnit::new(NonUnitWitness::Unknown)),
        }
    }

    fn is_field(&self) -> bool {
        false
    }

    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }

    fn contains(&self, a: &Poly) -> bool {
        a.coeffs.iter().all(|c| self.base.contains(c))
            && a.coeffs.last().is_none_or(|c| !self.base.is_zero(c))
    }

    fn format(&self, a: &Poly) -> String {
        let terms = a
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !self.base.is_zero(c))
            .map(|(i, c)| {
                let m = match i {
                    0 => String::new(),
                    1 => self.var.clone(),
                    _ => format!("{}^{i}", self.var),
                };
                (c.clone(), m)
            })
            .collect();
        format_terms(terms)
    }
}
