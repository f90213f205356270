//! `k[x, x^-1]` with the involution `x -> x^-1`.
//!
//! Its fixed ring is `k[x + x^-1]`; the units are `c * x^i`, so the norm-one
//! elements are exactly `+-x^i`.

use std::collections::BTreeMap;

use num_rational::BigRational;

use crate::error::Result;
use crate::poly::{Poly, PolyRing};
use crate::ring::{ExprRing, InvolutiveRing, NonUnit, NonUnitWitness, Ring};
use crate::scalar::{BaseField, Scalar};
use crate::terms::format_terms;

/// Finitely supported map exponent -> coefficient, no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Scalar>,
}

impl LaurentPoly {
    pub fn terms(&self) -> &BTreeMap<i64, Scalar> {
        &self.terms
    }

    pub fn support(&self) -> Vec<i64> {
        self.terms.keys().copied().collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentRing {
    base: BaseField,
}

impl LaurentRing {
    pub fn new(base: BaseField) -> Self {
        LaurentRing { base }
    }

    pub fn base(&self) -> BaseField {
        self.base
    }

    pub fn monomial(&self, c: Scalar, e: i64) -> LaurentPoly {
        let mut terms = BTreeMap::new();
        if !self.base.is_zero(&c) {
            terms.insert(e, c);
        }
        LaurentPoly { terms }
    }

    pub fn x(&self) -> LaurentPoly {
        self.monomial(self.base.one(), 1)
    }

    pub fn from_terms(&self, terms: impl IntoIterator<Item = (i64, Scalar)>) -> LaurentPoly {
        let mut out = LaurentPoly::default();
        for (e, c) in terms {
            self.add_term(&mut out, e, &c);
        }
        out
    }

    fn add_term(&self, p: &mut LaurentPoly, e: i64, c: &Scalar) {
        let v = match p.terms.get(&e) {
            Some(old) => self.base.add(old, c),
            None => c.clone(),
        };
        if self.base.is_zero(&v) {
            p.terms.remove(&e);
        } else {
            p.terms.insert(e, v);
        }
    }

    /// `(c, i)` when the element is the monomial `c * x^i`.
    pub fn as_monomial(&self, p: &LaurentPoly) -> Option<(Scalar, i64)> {
        if p.terms.len() == 1 {
            let (e, c) = p.terms.iter().next().unwrap();
            Some((c.clone(), *e))
        } else {
            None
        }
    }

    /// Evaluate at a nonzero point of `k`.
    pub fn eval(&self, p: &LaurentPoly, at: &Scalar) -> Result<Scalar> {
        let inv = self.base.try_invert(at)?;
        let mut acc = self.base.zero();
        for (e, c) in &p.terms {
            let pw = if *e >= 0 {
                self.base.pow(at, *e as u64)
            } else {
                self.base.pow(&inv, e.unsigned_abs())
            };
            acc = self.base.add(&acc, &self.base.mul(c, &pw));
        }
        Ok(acc)
    }

    fn poly_ring(&self) -> PolyRing {
        PolyRing::new(self.base, "x")
    }

    /// `(p, shift)` with `a = x^shift * p(x)` and `p(0) != 0`.
    fn to_poly(&self, a: &LaurentPoly) -> Option<(Poly, i64)> {
        let lo = *a.terms.keys().next()?;
        let hi = *a.terms.keys().next_back()?;
        let mut c = vec![self.base.zero(); (hi - lo) as usize + 1];
        for (e, v) in &a.terms {
            c[(e - lo) as usize] = v.clone();
        }
        Some((self.poly_ring().from_coeffs(c), lo))
    }

    fn from_poly(&self, p: &Poly, shift: i64) -> LaurentPoly {
        self.from_terms(
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| (i as i64 + shift, c.clone())),
        )
    }
}

impl Ring for LaurentRing {
    type Elem = LaurentPoly;

    fn zero(&self) -> LaurentPoly {
        LaurentPoly::default()
    }

    fn one(&self) -> LaurentPoly {
        self.monomial(self.base.one(), 0)
    }

    fn from_int(&self, n: i64) -> LaurentPoly {
        self.monomial(self.base.int(n), 0)
    }

    fn add(&self, a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        let mut out = a.clone();
        for (e, c) in &b.terms {
            self.add_term(&mut out, *e, c);
        }
        out
    }

    fn neg(&self, a: &LaurentPoly) -> LaurentPoly {
        LaurentPoly {
            terms: a
                .terms
                .iter()
                .map(|(e, c)| (*e, self.base.neg(c)))
                .collect(),
        }
    }

    fn mul(&self, a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::default();
        for (e1, c1) in &a.terms {
            for (e2, c2) in &b.terms {
                self.add_term(&mut out, e1 + e2, &self.base.mul(c1, c2));
            }
        }
        out
    }

    fn is_zero(&self, a: &LaurentPoly) -> bool {
        a.terms.is_empty()
    }

    fn equal(&self, a: &LaurentPoly, b: &LaurentPoly) -> bool {
        a == b
    }

    fn invert(&self, a: &LaurentPoly) -> std::result::Result<LaurentPoly, NonUnit<LaurentPoly>> {
        match self.as_monomial(a) {
            Some((c, e)) => {
                Ok(self.monomial(self.base.invert(&c).expect("nonzero coefficient"), -e))
            }
            None if a.terms.is_empty() => Err(NonUnit::new(NonUnitWitness::Zero)),
            None => Err(NonUnit::new(NonUnitWitness::MultiTermSupport(a.support()))),
        }
    }

    fn is_field(&self) -> bool {
        false
    }

    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }

    fn contains(&self, a: &LaurentPoly) -> bool {
        a.terms
            .values()
            .all(|c| self.base.contains(c) && !self.base.is_zero(c))
    }

    fn format(&self, a: &LaurentPoly) -> String {
        let terms = a
            .terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let m = match e {
                    0 => String::new(),
                    1 => "x".to_string(),
                    _ => format!("x^{e}"),
                };
                (c.clone(), m)
            })
            .collect();
        format_terms(terms)
    }

    fn content(&self, items: &[LaurentPoly]) -> Option<LaurentPoly> {
        let pr = self.poly_ring();
        let mut g: Option<Poly> = None;
        for a in items {
            if let Some((p, _)) = self.to_poly(a) {
                g = Some(match g {
                    None => pr.monic(&p),
                    Some(h) => pr.gcd(&h, &p),
                });
            }
        }
        g.map(|p| self.from_poly(&p, 0))
    }

    fn exact_div(&self, a: &LaurentPoly, b: &LaurentPoly) -> Option<LaurentPoly> {
        if a.terms.is_empty() {
            return Some(self.zero());
        }
        let (pa, sa) = self.to_poly(a)?;
        let (pb, sb) = self.to_poly(b)?;
        let (q, r) = self.poly_ring().divrem(&pa, &pb)?;
        if !r.coeffs().is_empty() {
            return None;
        }
        Some(self.from_poly(&q, sa - sb))
    }
}

impl InvolutiveRing for LaurentRing {
    fn conj(&self, a: &LaurentPoly) -> LaurentPoly {
        LaurentPoly {
            terms: a.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    fn search_basis(&self) -> Vec<LaurentPoly> {
        vec![self.one(), self.x()]
    }

    fn involution_is_trivial(&self) -> bool {
        false
    }
}

impl ExprRing for LaurentRing {
    fn from_rational(&self, q: &BigRational) -> Result<LaurentPoly> {
        Ok(self.monomial(self.base.rational(q.clone())?, 0))
    }

    fn generator(&self, name: &str) -> Option<LaurentPoly> {
        (name == "x").then(|| self.x())
    }
}
