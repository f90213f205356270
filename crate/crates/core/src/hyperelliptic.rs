//! Affine hyperelliptic coordinate rings `k[x, y] / (y^2 - f(x))` with
//! `f = (x - a_1) ... (x - a_(2g+1))` and the involution `y -> -y`.
//!
//! The ring is free of rank 2 over `k[x]`, so `p + q y` is a unit exactly when
//! its norm `p^2 - q^2 f` is a nonzero constant.

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::poly::{Poly, PolyRing};
use crate::ring::{ExprRing, InvolutiveRing, NonUnit, NonUnitWitness, Ring};
use crate::scalar::{BaseField, Scalar};

/// `p(x) + q(x) y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HypElem {
    pub p: Poly,
    pub q: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperellipticRing {
    polys: PolyRing,
    roots: Vec<Scalar>,
    f: Poly,
}

impl HyperellipticRing {
    /// `roots` must be `2g + 1` pairwise distinct elements of `k`.
    pub fn new(base: BaseField, roots: Vec<Scalar>) -> Result<Self> {
        if base.characteristic() == 2 {
            return Err(Error::CharacteristicTwo("hyperelliptic family".into()));
        }
        if roots.len().is_multiple_of(2) || roots.is_empty() {
            return Err(Error::Unsupported(format!(
                "need 2g+1 roots, got {}",
                roots.len()
            )));
        }
        for (i, a) in roots.iter().enumerate() {
            if !base.contains(a) {
                return Err(Error::RingMismatch(format!(
                    "root {a:?} not in {}",
                    base.name()
                )));
            }
            if roots[..i].iter().any(|b| b == a) {
                return Err(Error::Unsupported(format!(
                    "roots must be distinct; {a} repeats"
                )));
            }
        }
        let polys = PolyRing::new(base, "x");
        let f = roots
            .iter()
            .fold(polys.one(), |acc, a| polys.mul(&acc, &polys.linear(a)));
        Ok(HyperellipticRing { polys, roots, f })
    }

    pub fn genus(&self) -> usize {
        (self.roots.len() - 1) / 2
    }

    pub fn roots(&self) -> &[Scalar] {
        &self.roots
    }

    pub fn base(&self) -> BaseField {
        self.polys.base
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    pub fn from_parts(&self, p: Poly, q: Poly) -> HypElem {
        HypElem { p, q }
    }

    pub fn x(&self) -> HypElem {
        HypElem {
            p: self.polys.x(),
            q: self.polys.zero(),
        }
    }

    pub fn y(&self) -> HypElem {
        HypElem {
            p: self.polys.zero(),
            q: self.polys.one(),
        }
    }

    /// Norm down to `k[x]`: `p^2 - q^2 f`.
    pub fn norm_poly(&self, a: &HypElem) -> Poly {
        let pr = &self.polys;
        pr.sub(&pr.mul(&a.p, &a.p), &pr.mul(&pr.mul(&a.q, &a.q), &self.f))
    }

    /// Value at the ramification point `(a_i, 0)`.
    pub fn eval_at_root(&self, a: &HypElem, root: usize) -> Scalar {
        self.polys.eval(&a.p, &self.roots[root])
    }
}

impl Ring for HyperellipticRing {
    type Elem = HypElem;

    fn zero(&self) -> HypElem {
        HypElem {
            p: self.polys.zero(),
            q: self.polys.zero(),
        }
    }

    fn one(&self) -> HypElem {
        HypElem {
            p: self.polys.one(),
            q: self.polys.zero(),
        }
    }

    fn from_int(&self, n: i64) -> HypElem {
        HypElem {
            p: self.polys.from_int(n),
            q: self.polys.zero(),
        }
    }

    fn add(&self, a: &HypElem, b: &HypElem) -> HypElem {
        HypElem {
            p: self.polys.add(&a.p, &b.p),
            q: self.polys.add(&a.q, &b.q),
        }
    }

    fn neg(&self, a: &HypElem) -> HypElem {
        HypElem {
            p: self.polys.neg(&a.p),
            q: self.polys.neg(&a.q),
        }
    }

    fn mul(&self, a: &HypElem, b: &HypElem) -> HypElem {
        let pr = &self.polys;
        let qq = pr.mul(&pr.mul(&a.q, &b.q), &self.f);
        HypElem {
            p: pr.add(&pr.mul(&a.p, &b.p), &qq),
            q: pr.add(&pr.mul(&a.p, &b.q), &pr.mul(&a.q, &b.p)),
        }
    }

    fn is_zero(&self, a: &HypElem) -> bool {
        self.polys.is_zero(&a.p) && self.polys.is_zero(&a.q)
    }

    fn equal(&self, a: &HypElem, b: &HypElem) -> bool {
        a == b
    }

    fn invert(&self, a: &HypElem) -> std::result::Result<HypElem, NonUnit<HypElem>> {
        if self.is_zero(a) {
            return Err(NonUnit::new(NonUnitWitness::Zero));
        }
        let n = self.norm_poly(a);
        match self.polys.as_constant(&n) {
            Some(c) if !self.base().is_zero(&c) => {
                let ci = self.base().invert(&c).expect("nonzero");
                Ok(HypElem {
                    p: self.polys.scale(&ci, &a.p),
                    q: self.polys.scale(&self.base().neg(&ci), &a.q),
                })
            }
            _ => Err(NonUnit::new(NonUnitWitness::NonConstantNorm(
                self.polys.format(&n),
            ))),
        }
    }

    fn is_field(&self) -> bool {
        false
    }

    fn characteristic(&self) -> u64 {
        self.base().characteristic()
    }

    fn contains(&self, a: &HypElem) -> bool {
        self.polys.contains(&a.p) && self.polys.contains(&a.q)
    }

    fn format(&self, a: &HypElem) -> String {
        let p = (!self.polys.is_zero(&a.p)).then(|| self.polys.format(&a.p));
        let q = (!self.polys.is_zero(&a.q)).then(|| {
            let s = self.polys.format(&a.q);
            if a.q.degree() == Some(0) {
                match s.as_str() {
                    "1" => "y".to_string(),
                    _ if s.starts_with('-') && &s[1..] == "1" => "-y".to_string(),
                    _ => format!("{s}*y"),
                }
            } else {
                format!("({s})*y")
            }
        });
        match (p, q) {
            (None, None) => "0".into(),
            (Some(p), None) => p,
            (None, Some(q)) => q,
            (Some(p), Some(q)) => match q.strip_prefix('-') {
                Some(rest) => format!("{p} - {rest}"),
                None => format!("{p} + {q}"),
            },
        }
    }
}

impl InvolutiveRing for HyperellipticRing {
    fn conj(&self, a: &HypElem) -> HypElem {
        HypElem {
            p: a.p.clone(),
            q: self.polys.neg(&a.q),
        }
    }

    fn search_basis(&self) -> Vec<HypElem> {
        vec![self.one(), self.y()]
    }

    fn involution_is_trivial(&self) -> bool {
        false
    }
}

impl ExprRing for HyperellipticRing {
    fn from_rational(&self, q: &BigRational) -> Result<HypElem> {
        Ok(HypElem {
            p: self.polys.constant(self.base().rational(q.clone())?),
            q: self.polys.zero(),
        })
    }

    fn generator(&self, name: &str) -> Option<HypElem> {
        match name {
            "x" => Some(self.x()),
            "y" => Some(self.y()),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn genus_one() -> HyperellipticRing {
        let q = BaseField::Rationals;
        HyperellipticRing::new(q, vec![q.int(0), q.int(1), q.int(-1)]).unwrap()
    }

    #[test]
    fn y_squared_is_f() {
        let r = genus_one();
        let y2 = r.mul(&r.y(), &r.y());
        assert_eq!(y2.p, *r.f());
        assert_eq!(r.format(&y2), "x^3 - x");
    }

    #[test]
    fn units_have_constant_norm() {
        let r = genus_one();
        assert!(r.invert(&r.from_int(-3)).is_ok());
        assert!(r.invert(&r.y()).is_err());
        assert!(r.invert(&r.x()).is_err());
        assert_eq!(
            r.norm(&r.y()),
            r.neg(&HypElem {
                p: r.f().clone(),
                q: r.polys.zero()
            })
        );
    }

    #[test]
    fn distinct_roots_required() {
        let q = BaseField::Rationals;
        assert!(HyperellipticRing::new(q, vec![q.int(1), q.int(1), q.int(2)]).is_err());
        assert!(HyperellipticRing::new(q, vec![q.int(1), q.int(2)]).is_err());
    }

    #[test]
    fn involution_squares_to_identity() {
        let r = genus_one();
        for g in [r.x(), r.y(), r.add(&r.x(), &r.y())] {
            assert_eq!(r.conj(&r.conj(&g)), g);
        }
    }
}
