//! The coarse-type group `T = N / {lambda(r) r^-1}` of each supported family,
//! canonical representatives, ramification loci and the standard subgroup.
//!
//! `T` is computed from explicit unit-group descriptions:
//! - a field with trivial involution has `N = T = {+-1}`;
//! - a quadratic étale extension of a field has `T = 1` (Hilbert 90);
//! - `k[x, x^-1]` has units `c x^i`, so `N = {+-x^i}` and the image of
//!   `r -> lambda(r) r^-1` is `{x^2i}`, leaving the Klein group
//!   `{1, -1, x, -x}`;
//! - the hyperelliptic coordinate rings have only constant units (affine) or
//!   constant global functions (complete), and their types are sign vectors
//!   over the ramification points, one coordinate each.

use std::fmt;

use crate::error::{Error, Result};
use crate::hyperelliptic::HyperellipticRing;
use crate::involutive::{hilbert90_witness, Family, NormOneElement};
use crate::laurent::LaurentRing;
use crate::ring::{InvolutiveRing, Ring};
use crate::scalar::{BaseField, Scalar};
use crate::tower::SqrtTower;

/// A class in `T`, held by its canonical representative. For unramified
/// families the class is trivial and `hilbert90` carries `a` with
/// `eps = a^-1 lambda(a)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoarseTypeClass<E> {
    pub rep: E,
    pub hilbert90: Option<E>,
}

/// Rings whose norm-one elements have a canonical form modulo
/// `{lambda(r) r^-1}`.
pub trait CoarseTypes: InvolutiveRing {
    fn reduce_to_canonical(&self, eps: &Self::Elem) -> Result<CoarseTypeClass<Self::Elem>>;

    /// Product of classes.
    fn class_mul(
        &self,
        a: &CoarseTypeClass<Self::Elem>,
        b: &CoarseTypeClass<Self::Elem>,
    ) -> Result<CoarseTypeClass<Self::Elem>> {
        self.reduce_to_canonical(&self.mul(&a.rep, &b.rep))
    }

    fn is_identity_class(&self, a: &CoarseTypeClass<Self::Elem>) -> bool {
        self.is_one(&a.rep)
    }
}

fn require_norm_one<R: InvolutiveRing>(ring: &R, eps: &R::Elem) -> Result<()> {
    if !ring.is_one(&ring.norm(eps)) {
        return Err(Error::NotNormOne(ring.format(eps)));
    }
    Ok(())
}

/// `c` with `c^2 = 1`, which is `+-1` since the base is a field.
fn sign_of<R: Ring>(ring: &R, c: &R::Elem) -> Result<i8> {
    if ring.is_one(c) {
        Ok(1)
    } else if ring.equal(c, &ring.from_int(-1)) {
        Ok(-1)
    } else {
        Err(Error::NotNormOne(ring.format(c)))
    }
}

impl CoarseTypes for BaseField {
    fn reduce_to_canonical(&self, eps: &Scalar) -> Result<CoarseTypeClass<Scalar>> {
        require_norm_one(self, eps)?;
        sign_of(self, eps)?;
        Ok(CoarseTypeClass {
            rep: eps.clone(),
            hilbert90: None,
        })
    }
}

impl CoarseTypes for SqrtTower {
    fn reduce_to_canonical(&self, eps: &Vec<Scalar>) -> Result<CoarseTypeClass<Vec<Scalar>>> {
        require_norm_one(self, eps)?;
        if self.involution_is_trivial() {
            return match self.as_scalar(eps) {
                Some(c) if sign_of(&self.base(), &c).is_ok() => Ok(CoarseTypeClass {
                    rep: eps.clone(),
                    hilbert90: None,
                }),
                _ => Err(Error::Unsupported(
                    "norm-one element outside +-1 in a trivial tower".into(),
                )),
            };
        }
        let a = hilbert90_witness(self, &NormOneElement::new(self, eps.clone())?)?;
        Ok(CoarseTypeClass {
            rep: self.one(),
            hilbert90: Some(a),
        })
    }
}

impl CoarseTypes for LaurentRing {
    fn reduce_to_canonical(
        &self,
        eps: &crate::laurent::LaurentPoly,
    ) -> Result<CoarseTypeClass<crate::laurent::LaurentPoly>> {
        require_norm_one(self, eps)?;
        let (c, i) = self
            .as_monomial(eps)
            .ok_or_else(|| Error::NotNormOne(self.format(eps)))?;
        sign_of(&self.base(), &c)?;
        Ok(CoarseTypeClass {
            rep: self.monomial(c, i.rem_euclid(2)),
            hilbert90: None,
        })
    }
}

impl CoarseTypes for HyperellipticRing {
    fn reduce_to_canonical(
        &self,
        eps: &crate::hyperelliptic::HypElem,
    ) -> Result<CoarseTypeClass<crate::hyperelliptic::HypElem>> {
        require_norm_one(self, eps)?;
        // the units are the nonzero constants; norm one leaves +-1
        sign_of(self, eps)?;
        Ok(CoarseTypeClass {
            rep: eps.clone(),
            hilbert90: None,
        })
    }
}

/// A point where `lambda` induces the identity on the residue field.
#[derive(Clone, Debug, PartialEq)]
pub struct RamPoint {
    pub label: String,
    /// The `x`-coordinate, when the point is evaluated.
    pub x: Option<Scalar>,
}

impl fmt::Display for RamPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

/// Rings whose ramification points are evaluated by substitution.
pub trait Ramified: InvolutiveRing {
    fn ramification(&self) -> Vec<RamPoint>;

    fn residue_field(&self) -> BaseField;

    /// Image in the residue field at `z`.
    fn specialize_elem(&self, a: &Self::Elem, z: &RamPoint) -> Result<Scalar>;
}

impl Ramified for BaseField {
    fn residue_field(&self) -> BaseField {
        *self
    }

    fn ramification(&self) -> Vec<RamPoint> {
        vec![RamPoint {
            label: "pt".into(),
            x: None,
        }]
    }

    fn specialize_elem(&self, a: &Scalar, _z: &RamPoint) -> Result<Scalar> {
        Ok(a.clone())
    }
}

impl Ramified for LaurentRing {
    fn residue_field(&self) -> BaseField {
        self.base()
    }

    fn ramification(&self) -> Vec<RamPoint> {
        let b = self.base();
        [1, -1]
            .iter()
            .map(|&v| RamPoint {
                label: format!("x={v}"),
                x: Some(b.int(v)),
            })
            .collect()
    }

    fn specialize_elem(&self, a: &crate::laurent::LaurentPoly, z: &RamPoint) -> Result<Scalar> {
        let b = self.base();
        match &z.x {
            Some(x) if b.is_one(&b.mul(x, x)) => self.eval(a, x),
            _ => Err(Error::NotRamificationPoint(z.label.clone())),
        }
    }
}

impl Ramified for HyperellipticRing {
    fn residue_field(&self) -> BaseField {
        self.base()
    }

    fn ramification(&self) -> Vec<RamPoint> {
        self.roots()
            .iter()
            .map(|a| RamPoint {
                label: format!("({a}:0)"),
                x: Some(a.clone()),
            })
            .collect()
    }

    fn specialize_elem(&self, e: &crate::hyperelliptic::HypElem, z: &RamPoint) -> Result<Scalar> {
        let i =
            z.x.as_ref()
                .and_then(|x| self.roots().iter().position(|a| a == x))
                .ok_or_else(|| Error::NotRamificationPoint(z.label.clone()))?;
        Ok(self.eval_at_root(e, i))
    }
}

/// Label of the point at infinity of the complete hyperelliptic model.
pub const INFINITY: &str = "infinity";

/// Ramification points of a family.
pub fn ramification_points(family: &Family) -> Result<Vec<RamPoint>> {
    Ok(match family {
        Family::TrivialField(b) => b.ramification(),
        Family::QuadraticEtale { .. } => Vec::new(),
        Family::LaurentFlip(b) => LaurentRing::new(*b).ramification(),
        Family::HyperellipticFlip { complete, .. } => {
            let mut pts = family.hyperelliptic_ring()?.ramification();
            if *complete {
                pts.push(RamPoint {
                    label: INFINITY.into(),
                    x: None,
                });
            }
            pts
        }
        Family::FiniteAlgebra(_) => {
            return Err(Error::Unsupported(
                "type groups of finite-dimensional algebras".into(),
            ));
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupStructure {
    Trivial,
    /// `mu_2 = {+-1}`.
    Mu2,
    /// Elementary abelian of the given rank (the Klein group is rank 2).
    Elementary(u32),
}

impl fmt::Display for GroupStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupStructure::Trivial => f.write_str("trivial"),
            GroupStructure::Mu2 => f.write_str("mu2"),
            GroupStructure::Elementary(2) => f.write_str("klein4"),
            GroupStructure::Elementary(r) => write!(f, "(Z/2)^{r}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TypeGroupReport {
    pub family: String,
    pub structure: GroupStructure,
    pub order: u64,
    /// Canonical representatives: ring elements in the canonical grammar, or
    /// sign vectors such as `+-+` for hyperelliptic families.
    pub representatives: Vec<String>,
    pub ramification_points: Vec<String>,
    pub standard: Vec<String>,
    pub standard_order: u64,
}

fn sign_vector(bits: u64, len: usize) -> String {
    (0..len)
        .map(|i| if bits >> i & 1 == 1 { '-' } else { '+' })
        .collect()
}

/// The canonical form of the class of `eps` in the Laurent family, with the
/// closure of `N = {+-x^i}` computed over a window of exponents.
fn laurent_classes(ring: &LaurentRing) -> Result<Vec<String>> {
    let b = ring.base();
    let mut reps: Vec<crate::laurent::LaurentPoly> = Vec::new();
    for c in [1, -1] {
        for i in -3..=3 {
            let class = ring.reduce_to_canonical(&ring.monomial(b.int(c), i))?;
            if !reps.contains(&class.rep) {
                reps.push(class.rep);
            }
        }
    }
    for a in &reps {
        for r in &reps {
            let prod = ring.reduce_to_canonical(&ring.mul(a, r))?;
            if !reps.contains(&prod.rep) {
                return Err(Error::Verification(
                    "canonical representatives are not closed".into(),
                ));
            }
        }
        if !ring.is_one(&ring.reduce_to_canonical(&ring.mul(a, a))?.rep) {
            return Err(Error::Verification(
                "class does not square to the identity".into(),
            ));
        }
    }
    Ok(reps.iter().map(|r| ring.format(r)).collect())
}

pub fn coarse_type_group(family: &Family) -> Result<TypeGroupReport> {
    let points = ramification_points(family)?;
    let labels: Vec<String> = points.iter().map(|p| p.label.clone()).collect();
    let report = match family {
        Family::TrivialField(b) => {
            let reps = vec![b.format(&b.one()), b.format(&b.from_int(-1))];
            TypeGroupReport {
                family: family.tag().into(),
                structure: GroupStructure::Mu2,
                order: 2,
                standard: reps.clone(),
                representatives: reps,
                ramification_points: labels,
                standard_order: 2,
            }
        }
        Family::QuadraticEtale { .. } => TypeGroupReport {
            family: family.tag().into(),
            structure: GroupStructure::Trivial,
            order: 1,
            representatives: vec!["1".into()],
            ramification_points: labels,
            standard: vec!["1".into()],
            standard_order: 1,
        },
        Family::LaurentFlip(b) => {
            let reps = laurent_classes(&LaurentRing::new(*b))?;
            TypeGroupReport {
                family: family.tag().into(),
                structure: GroupStructure::Elementary(2),
                order: reps.len() as u64,
                standard: reps.clone(),
                standard_order: reps.len() as u64,
                representatives: reps,
                ramification_points: labels,
            }
        }
        Family::HyperellipticFlip { .. } => {
            let k = points.len();
            let order = 1u64 << k;
            let all = 0..order;
            TypeGroupReport {
                family: family.tag().into(),
                structure: GroupStructure::Elementary(k as u32),
                order,
                representatives: all.map(|bits| sign_vector(bits, k)).collect(),
                ramification_points: labels,
                standard: vec![sign_vector(0, k), sign_vector(order - 1, k)],
                standard_order: 2,
            }
        }
        Family::FiniteAlgebra(_) => unreachable!("rejected by ramification_points"),
    };
    if report.representatives.len() as u64 != report.order {
        return Err(Error::Verification(
            "representative count differs from the group order".into(),
        ));
    }
    if report
        .standard
        .iter()
        .any(|s| !report.representatives.contains(s))
    {
        return Err(Error::Verification(
            "standard subgroup is not contained in the group".into(),
        ));
    }
    Ok(report)
}

/// `(representatives, order)` of the image of the global norm-one elements.
pub fn standard_subgroup(family: &Family) -> Result<(Vec<String>, u64)> {
    let r = coarse_type_group(family)?;
    Ok((r.standard, r.standard_order))
}

/// Membership of a canonical representative (or hyperelliptic sign vector)
/// in the standard subgroup.
pub fn is_standard_type(family: &Family, class: &str) -> Result<bool> {
    let r = coarse_type_group(family)?;
    if !r.representatives.iter().any(|c| c == class) {
        return Err(Error::Unsupported(format!(
            "{class} is not a canonical class of the {} family",
            r.family
        )));
    }
    Ok(r.standard.iter().any(|c| c == class))
}

/// Sign vector string of per-point signs.
pub fn format_signs(signs: &[i8]) -> String {
    signs
        .iter()
        .map(|&s| if s > 0 { '+' } else { '-' })
        .collect()
}
