//! Executes jobs against the core library.

use std::fmt;

use invol_core::expr::parse_element;
use invol_core::hermitian::{
    congruence_witness, diagonalize, symplectic_normal_form, HermitianMatrix,
};
use invol_core::involutive::{
    classify_fixed_local, hilbert90_witness, Family, NormOneElement, Verdict,
};
use invol_core::linalg::format_matrix;
use invol_core::matrix_involution::{
    classify_first_kind, coarse_type, from_linear_action, gram_from_matrix, involution_from_gram,
    type_vector, MatrixInvolution,
};
use invol_core::tower::SqrtTower;
use invol_core::types::{
    coarse_type_group, format_signs, is_standard_type, ramification_points, CoarseTypes, Ramified,
};
use invol_core::{Error, ExprRing, InvolutiveRing, Ring};

use crate::report::*;
use crate::reproduce;
use crate::spec::{FamilySpec, Job, MatrixInput};

#[derive(Debug)]
pub enum CliError {
    /// Raised by the core library.
    Core(Error),
    /// Malformed job or flag combination.
    Input(String),
    /// A serialized report failed its independent re-check.
    Verify(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Input(m) => write!(f, "invalid input: {m}"),
            CliError::Verify(m) => write!(f, "re-verification failed: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    /// 1 when an asserted identity failed, 2 for bad input or domain errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::Verification(_)) | CliError::Verify(_) => 1,
            _ => 2,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Input(_) => "input",
            CliError::Verify(_) => "verification",
            CliError::Core(e) => match e {
                Error::RingMismatch(_) => "ring-mismatch",
                Error::NotInvertible { .. } => "not-invertible",
                Error::CharacteristicTwo(_) => "characteristic-two",
                Error::InvalidModulus(_) => "invalid-modulus",
                Error::InvalidStructure(_) => "invalid-structure",
                Error::Unsupported(_) => "unsupported",
                Error::InvalidInvolution(_) => "invalid-involution",
                Error::NotNormOne(_) => "not-norm-one",
                Error::FixedRingNotField(_) => "fixed-ring-not-field",
                Error::CharacteristicTwoObstruction => "characteristic-two-obstruction",
                Error::NotHermitian { .. } => "not-hermitian",
                Error::Singular => "singular",
                Error::HypothesisViolated(_) => "hypothesis-violated",
                Error::OddDimensionAlternating(_) => "odd-dimension-alternating",
                Error::NotInner(_) => "not-inner",
                Error::InvalidGram(_) => "invalid-gram",
                Error::NotRamificationPoint(_) => "not-ramification-point",
                Error::DimensionAnomaly { .. } => "dimension-anomaly",
                Error::Parse { .. } => "parse",
                Error::Verification(_) => "verification",
            },
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::json!({ "kind": self.kind(), "message": self.to_string() });
        if let CliError::Core(Error::Parse { pos, .. }) = self {
            v["pos"] = (*pos).into();
        }
        v
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

pub fn run_job(job: &Job) -> CliResult<Report> {
    Ok(match job {
        Job::ClassifyInvolution {
            family,
            gram,
            action,
        } => Report::ClassifyInvolution(classify(family, gram.as_ref(), action.as_ref())?),
        Job::TypeGroup { family } => Report::TypeGroup(type_group(family)?),
        Job::Diagonalize { family, gram } => Report::Diagonalize(diagonalize_job(family, gram)?),
        Job::SymplecticForm { family, gram } => {
            Report::SymplecticForm(symplectic_job(family, gram)?)
        }
        Job::Congruence {
            family,
            gram,
            target,
        } => Report::Congruence(congruence_job(family, gram, target)?),
        Job::Hilbert90 { family, r } => Report::Hilbert90(hilbert90_job(family, r)?),
        Job::Structure { family } => Report::Structure(structure_job(family)?),
        Job::Reproduce {
            example,
            seed,
            count,
        } => Report::Reproduce(reproduce::run(*example, *seed, *count)?),
    })
}

/// Involution from exactly one of a Gram matrix or a linear action.
pub(crate) fn read_involution<R: InvolutiveRing + ExprRing>(
    ring: &R,
    gram: Option<&MatrixInput>,
    action: Option<&MatrixInput>,
) -> CliResult<MatrixInvolution<R::Elem>> {
    match (gram, action) {
        (Some(g), None) => Ok(involution_from_gram(
            ring,
            &gram_from_matrix(ring, &g.parse(ring)?)?,
        )?),
        (None, Some(a)) => {
            let a = a.parse(ring)?;
            let n = (a.rows() as f64).sqrt().round() as usize;
            if n * n != a.rows() || !a.is_square() {
                return Err(CliError::Input(format!(
                    "linear action must be n^2 x n^2, got {}x{}",
                    a.rows(),
                    a.cols()
                )));
            }
            Ok(from_linear_action(ring, n, &a)?)
        }
        _ => Err(CliError::Input(
            "give exactly one of a Gram matrix or a linear action".into(),
        )),
    }
}

/// Class string, Hilbert 90 witness, type vector and first-kind data.
pub(crate) struct Classified {
    pub class: String,
    pub hilbert90: Option<String>,
    pub types: Option<String>,
    pub type_vector: Vec<TypeSign>,
    pub kind: Option<String>,
    pub symmetric_dim: Option<usize>,
}

fn class_of<R: CoarseTypes>(
    ring: &R,
    tau: &MatrixInvolution<R::Elem>,
) -> CliResult<(String, Option<String>, R::Elem)> {
    let c = coarse_type(ring, tau)?;
    Ok((
        ring.format(&c.rep),
        c.hilbert90.as_ref().map(|a| ring.format(a)),
        c.rep,
    ))
}

fn ramified<R: Ramified + CoarseTypes>(
    ring: &R,
    family: &Family,
    tau: &MatrixInvolution<R::Elem>,
) -> CliResult<Classified> {
    let (class, hilbert90, rep) = class_of(ring, tau)?;
    let points = ramification_points(family)?;
    let vector = type_vector(ring, tau, &points)?;
    let rep_sign = if ring.is_one(&rep) { 1 } else { -1 };
    // hyperelliptic units are constants, so the sign at infinity is that of the class
    let signs: Vec<i8> = vector.iter().map(|e| e.sign.unwrap_or(rep_sign)).collect();
    let type_vector = vector
        .into_iter()
        .map(|e| TypeSign {
            point: e.point,
            sign: e.sign,
        })
        .collect();
    let class = if matches!(family, Family::HyperellipticFlip { .. }) {
        format_signs(&signs)
    } else {
        class
    };
    Ok(Classified {
        class,
        hilbert90,
        types: Some(format_signs(&signs)),
        type_vector,
        kind: None,
        symmetric_dim: None,
    })
}

pub(crate) fn classify_family(
    family: &Family,
    gram: Option<&MatrixInput>,
    action: Option<&MatrixInput>,
) -> CliResult<(usize, Rows, String, Classified)> {
    fn finish<R: InvolutiveRing>(
        ring: &R,
        tau: &MatrixInvolution<R::Elem>,
        c: Classified,
    ) -> (usize, Rows, String, Classified) {
        (
            tau.n(),
            format_matrix(ring, tau.gram().matrix()),
            ring.format(tau.eps()),
            c,
        )
    }
    Ok(match family {
        Family::TrivialField(b) => {
            let tau = read_involution(b, gram, action)?;
            let mut c = ramified(b, family, &tau)?;
            let fk = classify_first_kind(b, &tau)?;
            c.kind = Some(fk.kind.to_string());
            c.symmetric_dim = Some(fk.symmetric_dim);
            finish(b, &tau, c)
        }
        Family::QuadraticEtale { .. } => {
            let t = family.quadratic_ring()?;
            let tau = read_involution(&t, gram, action)?;
            let (class, hilbert90, _) = class_of(&t, &tau)?;
            let c = Classified {
                class,
                hilbert90,
                types: None,
                type_vector: Vec::new(),
                kind: None,
                symmetric_dim: None,
            };
            finish(&t, &tau, c)
        }
        Family::LaurentFlip(b) => {
            let r = invol_core::laurent::LaurentRing::new(*b);
            let tau = read_involution(&r, gram, action)?;
            let c = ramified(&r, family, &tau)?;
            finish(&r, &tau, c)
        }
        Family::HyperellipticFlip { .. } => {
            let r = family.hyperelliptic_ring()?;
            let tau = read_involution(&r, gram, action)?;
            let c = ramified(&r, family, &tau)?;
            finish(&r, &tau, c)
        }
        Family::FiniteAlgebra(_) => {
            return Err(
                Error::Unsupported("coarse types over finite-dimensional algebras".into()).into(),
            );
        }
    })
}

fn classify(
    spec: &FamilySpec,
    gram: Option<&MatrixInput>,
    action: Option<&MatrixInput>,
) -> CliResult<ClassifyReport> {
    let family = spec.build()?;
    let (n, gram_rows, eps, c) = classify_family(&family, gram, action)?;
    let standard = is_standard_type(&family, &c.class)?;
    let action_rows = match action {
        Some(a) => Some(with_ring_rows(&family, a)?),
        None => None,
    };
    Ok(ClassifyReport {
        family: spec.tag().into(),
        ring: spec.canonical()?,
        n,
        source: if action.is_some() {
            "linear-action"
        } else {
            "gram"
        }
        .into(),
        action: action_rows,
        gram: gram_rows,
        eps,
        class: c.class,
        hilbert90: c.hilbert90,
        types: c.types,
        type_vector: c.type_vector,
        kind: c.kind,
        symmetric_dim: c.symmetric_dim,
        standard,
    })
}

/// A matrix input re-printed in canonical form.
fn with_ring_rows(family: &Family, m: &MatrixInput) -> CliResult<Rows> {
    fn rows<R: ExprRing>(ring: &R, m: &MatrixInput) -> CliResult<Rows> {
        Ok(format_matrix(ring, &m.parse(ring)?))
    }
    match family {
        Family::TrivialField(b) => rows(b, m),
        Family::QuadraticEtale { .. } => rows(&family.quadratic_ring()?, m),
        Family::LaurentFlip(b) => rows(&invol_core::laurent::LaurentRing::new(*b), m),
        Family::HyperellipticFlip { .. } => rows(&family.hyperelliptic_ring()?, m),
        Family::FiniteAlgebra(a) => rows(a, m),
    }
}

fn type_group(spec: &FamilySpec) -> CliResult<TypeGroupOut> {
    let r = coarse_type_group(&spec.build()?)?;
    Ok(TypeGroupOut {
        family: r.family,
        ring: spec.canonical()?,
        structure: r.structure.to_string(),
        order: r.order,
        representatives: r.representatives,
        ramification_points: r.ramification_points,
        standard: r.standard,
        standard_order: r.standard_order,
    })
}

/// The field (as a square-root tower) underlying a trivial or quadratic family.
pub(crate) fn field_tower(family: &Family) -> CliResult<SqrtTower> {
    match family {
        Family::TrivialField(b) => Ok(SqrtTower::new(*b)),
        Family::QuadraticEtale { .. } => {
            let t = family.quadratic_ring()?;
            if !t.is_field() {
                return Err(Error::Unsupported(
                    "normal forms are computed over fields; this quadratic algebra splits".into(),
                )
                .into());
            }
            Ok(t)
        }
        other => Err(Error::Unsupported(format!(
            "normal forms need a field; got the {} family",
            other.tag()
        ))
        .into()),
    }
}

fn read_gram(
    t: &SqrtTower,
    m: &MatrixInput,
) -> CliResult<HermitianMatrix<Vec<invol_core::Scalar>>> {
    Ok(gram_from_matrix(t, &m.parse(t)?)?)
}

fn diagonalize_job(spec: &FamilySpec, gram: &MatrixInput) -> CliResult<DiagonalizeReport> {
    let t = field_tower(&spec.build()?)?;
    let h = read_gram(&t, gram)?;
    let d = diagonalize(&t, &h)?;
    Ok(DiagonalizeReport {
        family: spec.tag().into(),
        ring: spec.canonical()?,
        gram: format_matrix(&t, h.matrix()),
        eps: t.format(h.eps()),
        v: format_matrix(&t, &d.v),
        diagonal: d.diagonal.iter().map(|a| t.format(a)).collect(),
    })
}

fn symplectic_job(spec: &FamilySpec, gram: &MatrixInput) -> CliResult<SymplecticReport> {
    let t = field_tower(&spec.build()?)?;
    let h = read_gram(&t, gram)?;
    let v = symplectic_normal_form(&t, &h)?;
    let j = invol_core::hermitian::symplectic_block(&t, h.n() / 2);
    Ok(SymplecticReport {
        family: spec.tag().into(),
        ring: spec.canonical()?,
        gram: format_matrix(&t, h.matrix()),
        v: format_matrix(&t, &v),
        normal_form: format_matrix(&t, &j),
    })
}

fn congruence_job(
    spec: &FamilySpec,
    gram: &MatrixInput,
    target: &MatrixInput,
) -> CliResult<CongruenceReport> {
    let t = field_tower(&spec.build()?)?;
    let h = read_gram(&t, gram)?;
    let h2 = read_gram(&t, target)?;
    let w = congruence_witness(&t, &h, &h2)?;
    Ok(CongruenceReport {
        family: spec.tag().into(),
        ring: spec.canonical()?,
        gram: format_matrix(&t, h.matrix()),
        target: format_matrix(&t, h2.matrix()),
        eps: t.format(h.eps()),
        tower: w.tower.describe(),
        signs: w.tower.generators().iter().map(|g| g.sign).collect(),
        adjoined: w.adjoined.len(),
        v: format_matrix(&w.tower, &w.v),
    })
}

fn hilbert90_job(spec: &FamilySpec, r: &str) -> CliResult<Hilbert90Report> {
    fn solve<R: InvolutiveRing + ExprRing>(ring: &R, r: &str) -> CliResult<(String, String)> {
        let x = parse_element(ring, r)?;
        let a = hilbert90_witness(ring, &NormOneElement::new(ring, x.clone())?)?;
        Ok((ring.format(&x), ring.format(&a)))
    }
    let family = spec.build()?;
    let (r, a) = match &family {
        Family::TrivialField(b) => solve(b, r)?,
        Family::QuadraticEtale { .. } => solve(&family.quadratic_ring()?, r)?,
        Family::LaurentFlip(b) => solve(&invol_core::laurent::LaurentRing::new(*b), r)?,
        Family::HyperellipticFlip { .. } => solve(&family.hyperelliptic_ring()?, r)?,
        Family::FiniteAlgebra(alg) => solve(alg, r)?,
    };
    Ok(Hilbert90Report {
        family: spec.tag().into(),
        ring: spec.canonical()?,
        r,
        a,
    })
}

fn structure_job(spec: &FamilySpec) -> CliResult<StructureReport> {
    let Family::FiniteAlgebra(alg) = spec.build()? else {
        return Err(CliError::Input("structure needs the algebra family".into()));
    };
    let s = classify_fixed_local(&alg)?;
    let fmt = |v: &Vec<invol_core::Scalar>| alg.format(v);
    let (verdict, presentation) = match &s.verdict {
        Verdict::QuadraticEtaleOverFixed(p) => (
            "quadratic-etale-over-fixed",
            Some(Presentation {
                r: fmt(&p.r),
                t: fmt(&p.t),
                n: fmt(&p.n),
            }),
        ),
        Verdict::LocalNotEtale => ("local-not-etale", None),
    };
    Ok(StructureReport {
        family: spec.tag().into(),
        ring: spec.canonical()?,
        dim: alg.dim(),
        verdict: verdict.into(),
        maximal_ideals: s.maximal_ideals,
        ideal_permutation: s.ideal_permutation,
        residue_involution_trivial: s.residue_involution_trivial,
        fixed_basis: s.fixed_basis.iter().map(fmt).collect(),
        radical: s.radical.iter().map(fmt).collect(),
        presentation,
    })
}
