//! Rings with involution: family descriptors, norm and trace, quadratic étale
//! detection, the dichotomy for rings whose fixed ring is a field, and
//! constructive Hilbert 90.

use crate::algebra::{AlgElem, FiniteAlgebra};
use crate::error::{Error, Result};
use crate::hyperelliptic::HyperellipticRing;
use crate::laurent::LaurentRing;
use crate::linalg::{self, Matrix};
use crate::ring::{InvolutiveRing, Ring};
use crate::scalar::{BaseField, Scalar};
use crate::tower::SqrtTower;

/// A supported ring with involution.
#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    /// A field with the trivial involution.
    TrivialField(BaseField),
    /// `k[x]/(x^2 - alpha x + beta)` with `x -> alpha - x`.
    QuadraticEtale {
        base: BaseField,
        alpha: Scalar,
        beta: Scalar,
    },
    FiniteAlgebra(FiniteAlgebra),
    /// `k[x, x^-1]` with `x -> x^-1`.
    LaurentFlip(BaseField),
    /// `k[x, y]/(y^2 - prod (x - a_i))` with `y -> -y`; `complete` adds the
    /// point at infinity of the smooth projective model.
    HyperellipticFlip {
        base: BaseField,
        roots: Vec<Scalar>,
        complete: bool,
    },
}

/// Description of the fixed subring `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedSubring {
    pub description: String,
    /// Ring generators (or a basis, for finite-dimensional rings) in the
    /// canonical grammar of the ambient ring.
    pub generators: Vec<String>,
}

impl Family {
    pub fn quadratic_etale(base: BaseField, alpha: Scalar, beta: Scalar) -> Result<Self> {
        if !is_quadratic_etale_presentation(&base, &alpha, &beta) {
            return Err(Error::Unsupported(format!(
                "alpha^2 - 4 beta is not a unit for alpha = {alpha}, beta = {beta}"
            )));
        }
        let f = Family::QuadraticEtale { base, alpha, beta };
        f.check()?;
        Ok(f)
    }

    /// `k(sqrt d)` with conjugation, as the presentation `x^2 - d`.
    pub fn quadratic_sqrt(base: BaseField, d: Scalar) -> Result<Self> {
        let beta = base.neg(&d);
        Self::quadratic_etale(base, base.zero(), beta)
    }

    pub fn hyperelliptic(base: BaseField, roots: Vec<Scalar>, complete: bool) -> Result<Self> {
        HyperellipticRing::new(base, roots.clone())?;
        Ok(Family::HyperellipticFlip {
            base,
            roots,
            complete,
        })
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Family::TrivialField(_) => "trivial",
            Family::QuadraticEtale { .. } => "quadratic",
            Family::FiniteAlgebra(_) => "algebra",
            Family::LaurentFlip(_) => "laurent",
            Family::HyperellipticFlip { .. } => "hyperelliptic",
        }
    }

    pub fn base(&self) -> BaseField {
        match self {
            Family::TrivialField(b) | Family::LaurentFlip(b) => *b,
            Family::QuadraticEtale { base, .. } | Family::HyperellipticFlip { base, .. } => *base,
            Family::FiniteAlgebra(a) => a.base(),
        }
    }

    /// The ring `k[x]/(x^2 - alpha x + beta)` realised as `k[r1]/(r1^2 - d)`
    /// with `d = alpha^2 / 4 - beta` and `x = alpha / 2 + r1`, so that
    /// `quadratic_sqrt(d)` has `r1 = sqrt d`.
    pub fn quadratic_ring(&self) -> Result<SqrtTower> {
        match self {
            Family::QuadraticEtale { base, alpha, beta } => {
                let quarter = base.try_invert(&base.int(4))?;
                let d = base.sub(&base.mul(&quarter, &base.mul(alpha, alpha)), beta);
                SqrtTower::quadratic(*base, d)
            }
            _ => Err(Error::Unsupported(format!(
                "{} is not a quadratic etale family",
                self.tag()
            ))),
        }
    }

    /// The generator `x` of the quadratic presentation.
    pub fn quadratic_generator(&self) -> Result<Vec<Scalar>> {
        match self {
            Family::QuadraticEtale { base, alpha, .. } => {
                let t = self.quadratic_ring()?;
                let half = base.try_invert(&base.int(2))?;
                Ok(t.add(&t.from_scalar(base.mul(&half, alpha)), &t.gen(1)))
            }
            _ => Err(Error::Unsupported(format!(
                "{} is not a quadratic etale family",
                self.tag()
            ))),
        }
    }

    pub fn hyperelliptic_ring(&self) -> Result<HyperellipticRing> {
        match self {
            Family::HyperellipticFlip { base, roots, .. } => {
                HyperellipticRing::new(*base, roots.clone())
            }
            _ => Err(Error::Unsupported(format!(
                "{} is not a hyperelliptic family",
                self.tag()
            ))),
        }
    }

    /// `lambda o lambda = id` and multiplicativity on generators.
    pub fn check(&self) -> Result<()> {
        fn on_generators<R: InvolutiveRing>(ring: &R, gens: &[R::Elem]) -> Result<()> {
            for g in gens {
                if !ring.equal(&ring.conj(&ring.conj(g)), g) {
                    return Err(Error::InvalidInvolution(format!(
                        "lambda^2 moves {}",
                        ring.format(g)
                    )));
                }
                for h in gens {
                    let lhs = ring.conj(&ring.mul(g, h));
                    if !ring.equal(&lhs, &ring.mul(&ring.conj(g), &ring.conj(h))) {
                        return Err(Error::InvalidInvolution(
                            "lambda is not multiplicative".into(),
                        ));
                    }
                }
            }
            Ok(())
        }
        match self {
            Family::TrivialField(b) => on_generators(b, &b.search_basis()),
            Family::QuadraticEtale { .. } => {
                let t = self.quadratic_ring()?;
                on_generators(&t, &[self.quadratic_generator()?])
            }
            // validated on every basis pair at construction
            Family::FiniteAlgebra(_) => Ok(()),
            Family::LaurentFlip(b) => {
                let r = LaurentRing::new(*b);
                let x = r.x();
                if r.conj(&x) != r.invert(&x).expect("monomial") {
                    return Err(Error::InvalidInvolution("lambda(x) != x^-1".into()));
                }
                on_generators(&r, &[x])
            }
            Family::HyperellipticFlip { .. } => {
                let r = self.hyperelliptic_ring()?;
                if r.conj(&r.y()) != r.neg(&r.y()) {
                    return Err(Error::InvalidInvolution("lambda(y) != -y".into()));
                }
                on_generators(&r, &[r.x(), r.y()])
            }
        }
    }

    pub fn fixed_subring(&self) -> Result<FixedSubring> {
        Ok(match self {
            Family::TrivialField(b) => FixedSubring {
                description: b.name(),
                generators: vec!["1".into()],
            },
            Family::QuadraticEtale { base, .. } => FixedSubring {
                description: base.name(),
                generators: vec!["1".into()],
            },
            Family::FiniteAlgebra(a) => FixedSubring {
                description: format!("ker(lambda - id), dimension {}", a.fixed_basis().len()),
                generators: a.fixed_basis().iter().map(|v| a.format(v)).collect(),
            },
            Family::LaurentFlip(b) => FixedSubring {
                description: format!("{}[x + x^-1]", b.name()),
                generators: vec!["x + x^-1".into()],
            },
            Family::HyperellipticFlip { base, .. } => FixedSubring {
                description: format!("{}[x]", base.name()),
                generators: vec!["x".into()],
            },
        })
    }
}

/// `alpha^2 - 4 beta` is a unit of `S`.
pub fn is_quadratic_etale_presentation<R: Ring>(s: &R, alpha: &R::Elem, beta: &R::Elem) -> bool {
    let disc = s.sub(&s.mul(alpha, alpha), &s.mul(&s.from_int(4), beta));
    s.is_unit(&disc)
}

/// `(lambda(r) r, r + lambda(r))`, both checked to be fixed.
pub fn norm_trace<R: InvolutiveRing>(ring: &R, r: &R::Elem) -> Result<(R::Elem, R::Elem)> {
    let (n, t) = (ring.norm(r), ring.trace(r));
    if !ring.is_fixed(&n) || !ring.is_fixed(&t) {
        return Err(Error::Verification(format!(
            "norm or trace of {} is not fixed",
            ring.format(r)
        )));
    }
    Ok((n, t))
}

/// A unit `r` with `lambda(r) r = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct NormOneElement<E> {
    r: E,
}

impl<E: Clone> NormOneElement<E> {
    pub fn new<R: InvolutiveRing<Elem = E>>(ring: &R, r: E) -> Result<Self> {
        if !ring.is_one(&ring.norm(&r)) {
            return Err(Error::NotNormOne(ring.format(&r)));
        }
        Ok(NormOneElement { r })
    }

    pub fn value(&self) -> &E {
        &self.r
    }
}

/// `a` with `r = a^-1 lambda(a)`: find `x` with `t = x + lambda(x) r`
/// invertible and take `a = t^-1`. Candidates are `1`, the module basis, then
/// sums of two basis elements.
pub fn hilbert90_witness<R: InvolutiveRing>(
    ring: &R,
    r: &NormOneElement<R::Elem>,
) -> Result<R::Elem> {
    let r = r.value();
    let basis = ring.search_basis();
    let mut candidates = vec![ring.one()];
    candidates.extend(basis.iter().cloned());
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            candidates.push(ring.add(&basis[i], &basis[j]));
        }
    }
    for x in candidates {
        let t = ring.add(&x, &ring.mul(&ring.conj(&x), r));
        if let Ok(a) = ring.invert(&t) {
            let check = ring.mul(&t, &ring.conj(&a));
            if !ring.equal(&check, r) {
                return Err(Error::Verification(format!(
                    "a^-1 lambda(a) != {}",
                    ring.format(r)
                )));
            }
            return Ok(a);
        }
    }
    Err(Error::HypothesisViolated(format!(
        "no candidate x with x + lambda(x) r invertible for r = {}",
        ring.format(r)
    )))
}

/// `R = S[x]/(x^2 - t x + n)` with `x = r`.
#[derive(Clone, Debug, PartialEq)]
pub struct EtalePresentation {
    pub r: AlgElem,
    /// `r + lambda(r)`.
    pub t: AlgElem,
    /// `lambda(r) r`.
    pub n: AlgElem,
}

fn span_rank(base: BaseField, vectors: &[AlgElem], dim: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    linalg::rank(
        &base,
        &Matrix::from_fn(vectors.len(), dim, |r, c| vectors[r][c].clone()),
    )
}

/// Search for `r` with `r - lambda(r)` invertible: basis elements, pairwise
/// sums, then points `sum c^i e_i` of the moment curve. Each maximal ideal `m`
/// cuts out the linear subspace `{r : r - lambda(r) in m}`, and a proper
/// subspace meets the moment curve in fewer than `dim` points, so over `Q`
/// the final stage finds a witness whenever one exists.
pub fn etale_criterion(a: &FiniteAlgebra) -> Result<Option<EtalePresentation>> {
    let d = a.dim();
    let b = a.base();
    let basis = a.search_basis();
    let mut candidates = basis.clone();
    for i in 0..d {
        for j in i + 1..d {
            candidates.push(a.add(&basis[i], &basis[j]));
        }
    }
    let ideal_bound = a.maximal_ideals().map(|m| m.len()).unwrap_or(d);
    let points = ideal_bound * d.saturating_sub(1) + 1;
    for c in 0..points as i64 {
        if b.characteristic() != 0 && c as u64 >= b.characteristic() {
            break;
        }
        let c = b.int(c);
        candidates.push((0..d).map(|i| b.pow(&c, i as u64)).collect());
    }
    for r in candidates {
        let diff = a.sub(&r, &a.conj(&r));
        if a.is_unit(&diff) {
            let (n, t) = norm_trace(a, &r)?;
            let quad = a.add(&a.sub(&a.mul(&r, &r), &a.mul(&t, &r)), &n);
            if !a.is_zero(&quad) {
                return Err(Error::Verification("r^2 - t r + n != 0".into()));
            }
            let fixed = a.fixed_basis();
            let mut span = fixed.clone();
            span.extend(fixed.iter().map(|f| a.mul(f, &r)));
            if 2 * fixed.len() != d || span_rank(b, &span, d) != d {
                return Err(Error::Verification(
                    "1, r is not a basis over the fixed ring".into(),
                ));
            }
            return Ok(Some(EtalePresentation { r, t, n }));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    QuadraticEtaleOverFixed(EtalePresentation),
    /// `R` is local and the involution induced on `R / Jac(R)` is trivial.
    LocalNotEtale,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LocalStructure {
    pub verdict: Verdict,
    pub maximal_ideals: usize,
    /// `lambda` acting on the maximal ideals by index.
    pub ideal_permutation: Vec<usize>,
    pub radical: Vec<AlgElem>,
    pub fixed_basis: Vec<AlgElem>,
    /// Whether `lambda` induces the identity on `R / Jac(R)`.
    pub residue_involution_trivial: bool,
}

/// For `R` finite-dimensional whose fixed ring `S` is a field: either `R` is
/// quadratic étale over `S`, or `R` is local with trivial residual involution.
pub fn classify_fixed_local(a: &FiniteAlgebra) -> Result<LocalStructure> {
    if a.characteristic() == 2 {
        return Err(Error::CharacteristicTwo("structure theorem".into()));
    }
    let b = a.base();
    let d = a.dim();
    let ideals = a.maximal_ideals()?;
    let perm = a.ideal_permutation(&ideals)?;
    let radical = a.radical();
    let fixed = a.fixed_basis();

    let orbits = (0..perm.len()).filter(|&i| perm[i] >= i).count();
    let mut both = radical.clone();
    both.extend(fixed.iter().cloned());
    let meet = radical.len() + fixed.len() - span_rank(b, &both, d);
    if meet != 0 {
        return Err(Error::FixedRingNotField(format!(
            "the fixed ring has a radical of dimension {meet}"
        )));
    }
    if orbits != 1 {
        return Err(Error::FixedRingNotField(format!(
            "the fixed ring has {orbits} maximal ideals"
        )));
    }

    let mut trace_units = vec![a.one()];
    trace_units.extend(a.search_basis());
    if !trace_units.iter().any(|r| a.is_unit(&a.trace(r))) {
        return Err(Error::CharacteristicTwoObstruction);
    }

    // image(lambda - id) inside the radical
    let mut moved = radical.clone();
    moved.extend((0..d).map(|i| a.sub(&a.conj(&a.basis(i)), &a.basis(i))));
    let residue_trivial = span_rank(b, &moved, d) == radical.len();

    if ideals.len() > 2 {
        return Err(Error::Verification(format!(
            "{} maximal ideals over a field",
            ideals.len()
        )));
    }
    let verdict = match etale_criterion(a)? {
        Some(p) => {
            if residue_trivial {
                return Err(Error::Verification(
                    "etale over the fixed ring with trivial residual involution".into(),
                ));
            }
            Verdict::QuadraticEtaleOverFixed(p)
        }
        None => {
            if ideals.len() != 1 || !residue_trivial {
                return Err(Error::Verification(
                    "not etale, yet not local with trivial residual involution".into(),
                ));
            }
            Verdict::LocalNotEtale
        }
    };
    Ok(LocalStructure {
        verdict,
        maximal_ideals: ideals.len(),
        ideal_permutation: perm,
        radical,
        fixed_basis: fixed,
        residue_involution_trivial: residue_trivial,
    })
}
