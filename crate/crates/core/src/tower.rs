//! Square-root towers `k[r1, ..., rl] / (r1^2 - s1, ..., rl^2 - sl)`.
//!
//! Each `s_j` lies in the previous stage and is fixed by the involution. The
//! involution is trivial on `k` and sends `r_j` to `sign_j * r_j`. A stage
//! whose `s_j` is already a square is split (isomorphic to a product), not an
//! error. Elements are coordinate vectors over the `2^l` square-free monomials;
//! bit `j-1` of a coordinate index records the presence of `r_j`.

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::ring::{ExprRing, InvolutiveRing, NonUnit, NonUnitWitness, Ring};
use crate::scalar::{BaseField, Scalar};
use crate::terms::format_terms;

pub type TowerElem = Vec<Scalar>;

#[derive(Clone, Debug, PartialEq)]
pub struct Generator {
    /// `r_j^2`, an element of the previous stage.
    pub square: TowerElem,
    /// `lambda(r_j) = sign * r_j`.
    pub sign: i8,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SqrtTower {
    base: BaseField,
    gens: Vec<Generator>,
    field: bool,
}

impl SqrtTower {
    pub fn new(base: BaseField) -> Self {
        SqrtTower {
            base,
            gens: Vec::new(),
            field: true,
        }
    }

    /// `k(sqrt(d))` with `lambda(sqrt d) = -sqrt d`; split when `d` is a square.
    pub fn quadratic(base: BaseField, d: Scalar) -> Result<Self> {
        SqrtTower::new(base).adjoin(vec![d], -1)
    }

    pub fn base(&self) -> BaseField {
        self.base
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn dim(&self) -> usize {
        1 << self.gens.len()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    /// The tower truncated to its first `k` stages.
    pub fn stage(&self, k: usize) -> SqrtTower {
        let gens = self.gens[..k].to_vec();
        let mut t = SqrtTower::new(self.base);
        for g in gens {
            let field = t.field && !t.is_zero(&g.square) && t.sqrt(&g.square).is_none();
            t.gens.push(g);
            t.field = field;
        }
        t
    }

    /// Adjoin `sqrt(s)` with `lambda(sqrt s) = sign * sqrt s`.
    pub fn adjoin(&self, s: TowerElem, sign: i8) -> Result<SqrtTower> {
        if self.base.characteristic() == 2 {
            return Err(Error::CharacteristicTwo(
                "square-root towers need 2 invertible".into(),
            ));
        }
        if !self.contains(&s) {
            return Err(Error::RingMismatch(
                "adjoined square is not in the tower".into(),
            ));
        }
        if sign != 1 && sign != -1 {
            return Err(Error::InvalidInvolution(format!("generator sign {sign}")));
        }
        if !self.is_fixed(&s) {
            return Err(Error::InvalidInvolution(format!(
                "{} is not fixed by the involution",
                self.format(&s)
            )));
        }
        // 4s invertible, so the stage is etale
        if !self.is_unit(&s) {
            return Err(Error::Unsupported(format!(
                "{} is not a unit; the stage would not be etale",
                self.format(&s)
            )));
        }
        let split = self.sqrt(&s).is_some();
        let mut gens = self.gens.clone();
        gens.push(Generator { square: s, sign });
        Ok(SqrtTower {
            base: self.base,
            gens,
            field: self.field && !split,
        })
    }

    /// Image of an element of a lower stage in this tower.
    pub fn embed(&self, a: &[Scalar]) -> TowerElem {
        let mut v = a.to_vec();
        v.resize(self.dim(), self.base.zero());
        v
    }

    pub fn from_scalar(&self, c: Scalar) -> TowerElem {
        let mut v = vec![self.base.zero(); self.dim()];
        v[0] = c;
        v
    }

    /// The generator `r_j` (1-based).
    pub fn gen(&self, j: usize) -> TowerElem {
        let mut v = vec![self.base.zero(); self.dim()];
        v[1 << (j - 1)] = self.base.one();
        v
    }

    fn mul_stage(&self, k: usize, a: &[Scalar], b: &[Scalar]) -> TowerElem {
        if k == 0 {
            return vec![self.base.mul(&a[0], &b[0])];
        }
        let h = 1 << (k - 1);
        let (a0, a1) = a.split_at(h);
        let (b0, b1) = b.split_at(h);
        let s = &self.gens[k - 1].square;
        // sparse operands are common (witness entries are combinations of generators)
        let nz = [
            self.zero_v(a0),
            self.zero_v(a1),
            self.zero_v(b0),
            self.zero_v(b1),
        ]
        .map(|z| !z);
        let prod = |x: &[Scalar], y: &[Scalar], live: bool| {
            if live {
                self.mul_stage(k - 1, x, y)
            } else {
                vec![self.base.zero(); h]
            }
        };
        let a0b0 = prod(a0, b0, nz[0] && nz[2]);
        let a1b1 = prod(a1, b1, nz[1] && nz[3]);
        let a1b1s = prod(&a1b1, s, nz[1] && nz[3]);
        let a0b1 = prod(a0, b1, nz[0] && nz[3]);
        let a1b0 = prod(a1, b0, nz[1] && nz[2]);
        let mut out: Vec<Scalar> = a0b0
            .iter()
            .zip(&a1b1s)
            .map(|(x, y)| self.base.add(x, y))
            .collect();
        out.extend(a0b1.iter().zip(&a1b0).map(|(x, y)| self.base.add(x, y)));
        out
    }

    fn add_v(&self, a: &[Scalar], b: &[Scalar]) -> TowerElem {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }

    fn sub_v(&self, a: &[Scalar], b: &[Scalar]) -> TowerElem {
        a.iter().zip(b).map(|(x, y)| self.base.sub(x, y)).collect()
    }

    fn zero_v(&self, a: &[Scalar]) -> bool {
        a.iter().all(|x| self.base.is_zero(x))
    }

    fn scale_v(&self, c: &Scalar, a: &[Scalar]) -> TowerElem {
        a.iter().map(|x| self.base.mul(c, x)).collect()
    }

    fn invert_stage(
        &self,
        k: usize,
        a: &[Scalar],
    ) -> std::result::Result<TowerElem, NonUnit<TowerElem>> {
        if self.zero_v(a) {
            return Err(NonUnit::new(NonUnitWitness::Zero));
        }
        if k == 0 {
            return self
                .base
                .invert(&a[0])
                .map(|x| vec![x])
                .map_err(|_| NonUnit::new(NonUnitWitness::Zero));
        }
        let h = 1 << (k - 1);
        let (a0, a1) = a.split_at(h);
        let s = &self.gens[k - 1].square;
        let a1sq = self.mul_stage(k - 1, a1, a1);
        let norm = self.sub_v(
            &self.mul_stage(k - 1, a0, a0),
            &self.mul_stage(k - 1, &a1sq, s),
        );
        // conj over the previous stage: a0 - a1 r
        let mut bar = a0.to_vec();
        bar.extend(a1.iter().map(|x| self.base.neg(x)));
        match self.invert_stage(k - 1, &norm) {
            Ok(ninv) => {
                let mut ninv_full = ninv.clone();
                ninv_full.resize(2 * h, self.base.zero());
                Ok(self.mul_stage(k, &bar, &ninv_full))
            }
            Err(e) => {
                // a * bar = norm; a witness w for norm gives a * (bar w) = 0.
                let w = match e.witness {
                    NonUnitWitness::ZeroDivisor(w) => w,
                    _ => {
                        let mut one = vec![self.base.zero(); h];
                        one[0] = self.base.one();
                        one
                    }
                };
                let mut w_full = w.clone();
                w_full.resize(2 * h, self.base.zero());
                let cand = self.mul_stage(k, &bar, &w_full);
                let wit = if self.zero_v(&cand) { w_full } else { cand };
                Err(NonUnit::new(NonUnitWitness::ZeroDivisor(wit)))
            }
        }
    }

    fn sqrt_stage(&self, k: usize, z: &[Scalar]) -> Option<TowerElem> {
        if k == 0 {
            return self.base.sqrt(&z[0]).map(|x| vec![x]);
        }
        let h = 1 << (k - 1);
        let (c, e) = z.split_at(h);
        let s = &self.gens[k - 1].square;
        let zero_h = vec![self.base.zero(); h];
        let mut candidates: Vec<(TowerElem, TowerElem)> = Vec::new();
        if self.zero_v(e) {
            if let Some(x) = self.sqrt_stage(k - 1, c) {
                candidates.push((x, zero_h.clone()));
            }
            if let Ok(sinv) = self.invert_stage(k - 1, s) {
                if let Some(y) = self.sqrt_stage(k - 1, &self.mul_stage(k - 1, c, &sinv)) {
                    candidates.push((zero_h.clone(), y));
                }
            }
        } else {
            // (x + y r)^2 = c + e r  =>  x^2 = (c +- sqrt(c^2 - e^2 s)) / 2, y = e / (2x)
            let e2s = self.mul_stage(k - 1, &self.mul_stage(k - 1, e, e), s);
            let disc = self.sub_v(&self.mul_stage(k - 1, c, c), &e2s);
            if let Some(m) = self.sqrt_stage(k - 1, &disc) {
                let half = self.base.invert(&self.base.int(2)).ok()?;
                for sum in [self.add_v(c, &m), self.sub_v(c, &m)] {
                    let x2 = self.scale_v(&half, &sum);
                    let Some(x) = self.sqrt_stage(k - 1, &x2) else {
                        continue;
                    };
                    let Ok(xinv) = self.invert_stage(k - 1, &x) else {
                        continue;
                    };
                    let y = self.scale_v(&half, &self.mul_stage(k - 1, e, &xinv));
                    candidates.push((x, y));
                }
            }
        }
        candidates
            .into_iter()
            .map(|(x, y)| [x, y].concat())
            .find(|w| {
                let sq = self.mul_stage(k, w, w);
                sq.iter().zip(z).all(|(p, q)| self.base.equal(p, q))
            })
    }

    /// A square root in the tower, found by the recursive candidate system.
    /// Complete whenever the tower is a field.
    pub fn sqrt(&self, a: &TowerElem) -> Option<TowerElem> {
        self.sqrt_stage(self.gens.len(), a)
    }

    /// A square root fixed by the involution.
    pub fn fixed_sqrt(&self, a: &TowerElem) -> Option<TowerElem> {
        let w = self.sqrt(a)?;
        if self.is_fixed(&w) {
            Some(w)
        } else {
            None
        }
    }

    fn monomial_name(&self, idx: usize) -> String {
        (0..self.gens.len())
            .filter(|j| idx >> j & 1 == 1)
            .map(|j| format!("r{}", j + 1))
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Projection to the coordinate of the constant monomial.
    pub fn constant_part(&self, a: &TowerElem) -> Scalar {
        a[0].clone()
    }

    /// Elements living in the base field.
    pub fn as_scalar(&self, a: &TowerElem) -> Option<Scalar> {
        if a[1..].iter().all(|x| self.base.is_zero(x)) {
            Some(a[0].clone())
        } else {
            None
        }
    }

    /// The squares `s_j` rendered in the grammar of their own stage.
    pub fn describe(&self) -> Vec<String> {
        self.gens
            .iter()
            .enumerate()
            .map(|(j, g)| self.stage(j).format(&g.square))
            .collect()
    }
}

impl Ring for SqrtTower {
    type Elem = TowerElem;

    fn zero(&self) -> TowerElem {
        vec![self.base.zero(); self.dim()]
    }

    fn one(&self) -> TowerElem {
        self.from_scalar(self.base.one())
    }

    fn from_int(&self, n: i64) -> TowerElem {
        self.from_scalar(self.base.int(n))
    }

    fn add(&self, a: &TowerElem, b: &TowerElem) -> TowerElem {
        self.add_v(a, b)
    }

    fn neg(&self, a: &TowerElem) -> TowerElem {
        a.iter().map(|x| self.base.neg(x)).collect()
    }

    fn sub(&self, a: &TowerElem, b: &TowerElem) -> TowerElem {
        self.sub_v(a, b)
    }

    fn mul(&self, a: &TowerElem, b: &TowerElem) -> TowerElem {
        self.mul_stage(self.gens.len(), a, b)
    }

    fn is_zero(&self, a: &TowerElem) -> bool {
        self.zero_v(a)
    }

    fn invert(&self, a: &TowerElem) -> std::result::Result<TowerElem, NonUnit<TowerElem>> {
        self.invert_stage(self.gens.len(), a)
    }

    fn is_field(&self) -> bool {
        self.field
    }

    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }

    fn contains(&self, a: &TowerElem) -> bool {
        a.len() == self.dim() && a.iter().all(|x| self.base.contains(x))
    }

    fn format(&self, a: &TowerElem) -> String {
        let terms = a
            .iter()
            .enumerate()
            .filter(|(_, c)| !self.base.is_zero(c))
            .map(|(i, c)| (c.clone(), self.monomial_name(i)))
            .collect();
        format_terms(terms)
    }
}

impl InvolutiveRing for SqrtTower {
    fn conj(&self, a: &TowerElem) -> TowerElem {
        a.iter()
            .enumerate()
            .map(|(i, x)| {
                let flips = (0..self.gens.len())
                    .filter(|&j| i >> j & 1 == 1 && self.gens[j].sign < 0)
                    .count();
                if flips % 2 == 1 {
                    self.base.neg(x)
                } else {
                    x.clone()
                }
            })
            .collect()
    }

    fn search_basis(&self) -> Vec<TowerElem> {
        (0..self.dim())
            .map(|i| {
                let mut v = self.zero();
                v[i] = self.base.one();
                v
            })
            .collect()
    }

    fn involution_is_trivial(&self) -> bool {
        self.gens.iter().all(|g| g.sign > 0)
    }
}

impl ExprRing for SqrtTower {
    fn from_rational(&self, q: &BigRational) -> Result<TowerElem> {
        Ok(self.from_scalar(self.base.rational(q.clone())?))
    }

    fn generator(&self, name: &str) -> Option<TowerElem> {
        let j: usize = name.strip_prefix('r')?.parse().ok()?;
        (1..=self.gens.len()).contains(&j).then(|| self.gen(j))
    }

    fn factors(&self) -> Option<(Self, Self)> {
        if self.gens.len() != 1 || self.field {
            return None;
        }
        Some((SqrtTower::new(self.base), SqrtTower::new(self.base)))
    }

    /// `(a | b)` in a single split stage `k[r]/(r^2 - c^2)`, under the two
    /// projections `r -> c` and `r -> -c`.
    fn pair(&self, a: &TowerElem, b: &TowerElem) -> Option<TowerElem> {
        if self.gens.len() != 1 {
            return None;
        }
        let c = self.base.sqrt(&self.gens[0].square[0])?;
        let (a, b) = (self.as_scalar(a)?, self.as_scalar(b)?);
        let half = self.base.invert(&self.base.int(2)).ok()?;
        let x = self.base.mul(&half, &self.base.add(&a, &b));
        let y = self.base.mul(
            &self.base.mul(&half, &self.base.sub(&a, &b)),
            &self.base.invert(&c).ok()?,
        );
        Some(vec![x, y])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{self, Matrix};

    fn q() -> BaseField {
        BaseField::Rationals
    }

    /// Regular representation of multiplication by `a` in the monomial basis.
    fn regular(t: &SqrtTower, a: &TowerElem) -> Matrix<Scalar> {
        let basis = t.search_basis();
        let cols: Vec<TowerElem> = basis.iter().map(|b| t.mul(a, b)).collect();
        Matrix::from_fn(t.dim(), t.dim(), |i, j| cols[j][i].clone())
    }

    #[test]
    fn conjugate_product_in_q_sqrt2() {
        let t = SqrtTower::quadratic(q(), q().int(2)).unwrap();
        let a = vec![q().int(1), q().int(1)];
        let b = vec![q().int(1), q().int(-1)];
        let prod = t.mul(&a, &b);
        assert_eq!(prod, t.from_int(-1));
        // cross-check through the regular representation
        let m = linalg::mul(&q(), &regular(&t, &a), &regular(&t, &b));
        assert!(linalg::equal(&q(), &m, &regular(&t, &t.from_int(-1))));
    }

    #[test]
    fn split_stage_is_not_a_field() {
        let t = SqrtTower::quadratic(q(), q().int(9)).unwrap();
        assert!(!t.is_field());
        let e = vec![q().int(3), q().int(1)]; // 3 + r, zero divisor against 3 - r
        match t.invert(&e) {
            Err(NonUnit {
                witness: NonUnitWitness::ZeroDivisor(w),
            }) => assert!(t.is_zero(&t.mul(&e, &w))),
            other => panic!("expected zero divisor, got {other:?}"),
        }
    }

    #[test]
    fn sqrt_in_gaussian_rationals() {
        let t = SqrtTower::quadratic(q(), q().int(-1)).unwrap();
        // 2i = (1 + i)^2
        let two_i = vec![q().int(0), q().int(2)];
        let r = t.sqrt(&two_i).unwrap();
        assert_eq!(t.mul(&r, &r), two_i);
        // -1 is a square, but not a fixed one
        assert!(t.sqrt(&t.from_int(-1)).is_some());
        assert!(t.fixed_sqrt(&t.from_int(-1)).is_none());
        assert!(t.sqrt(&vec![q().int(0), q().int(1)]).is_none());
    }

    #[test]
    fn two_stage_tower() {
        let t = SqrtTower::new(q()).adjoin(vec![q().int(2)], 1).unwrap();
        let t = t.adjoin(t.embed(&[q().int(3)]), 1).unwrap();
        assert!(t.is_field());
        let six = t.from_int(6);
        let r = t.sqrt(&six).unwrap();
        assert_eq!(t.mul(&r, &r), six);
        assert_eq!(t.format(&r).replace('-', ""), "r1*r2");
        let x = vec![q().int(1), q().int(2), q().int(-1), q().int(3)];
        let xi = t.invert(&x).unwrap();
        assert_eq!(t.mul(&x, &xi), t.one());
        // a square already present reuses the tower: 8 = (2 r1)^2
        assert!(t.sqrt(&t.from_int(8)).is_some());
    }

    #[test]
    fn adjoin_rejects_non_fixed_square() {
        let t = SqrtTower::quadratic(q(), q().int(-1)).unwrap();
        assert!(t.adjoin(t.gen(1), 1).is_err());
        assert!(t.adjoin(t.zero(), 1).is_err());
    }
}
