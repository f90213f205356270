//! Re-checks a report from its serialized form: every element is parsed back
//! from its string and every asserted identity is evaluated again.

use invol_core::expr::parse_element;
use invol_core::hermitian::{congruent, symplectic_block, validate_hermitian};
use invol_core::involutive::{classify_fixed_local, Family, Verdict};
use invol_core::linalg::{self, format_matrix, Matrix};
use invol_core::matrix_involution::{involution_from_gram, linear_action};
use invol_core::tower::SqrtTower;
use invol_core::types::{coarse_type_group, is_standard_type};
use invol_core::{ExprRing, InvolutiveRing, Ring};

use crate::report::*;
use crate::run::{classify_family, field_tower, CliError, CliResult};
use crate::spec::MatrixInput;

fn fail<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Verify(msg.into()))
}

fn ensure(cond: bool, msg: impl Into<String>) -> CliResult<()> {
    if cond {
        Ok(())
    } else {
        fail(msg)
    }
}

fn mat<R: ExprRing>(ring: &R, rows: &Rows) -> CliResult<Matrix<R::Elem>> {
    Ok(MatrixInput::Rows(rows.clone()).parse(ring)?)
}

fn elem<R: ExprRing>(ring: &R, s: &str) -> CliResult<R::Elem> {
    Ok(parse_element(ring, s)?)
}

/// Parse a serialized report and re-check it.
pub fn verify_json(json: &str) -> CliResult<Report> {
    let report: Report = serde_json::from_str(json)
        .map_err(|e| CliError::Verify(format!("malformed report: {e}")))?;
    verify(&report)?;
    Ok(report)
}

pub fn verify(report: &Report) -> CliResult<()> {
    match report {
        Report::ClassifyInvolution(r) => classify(r),
        Report::TypeGroup(r) => type_group(r),
        Report::Diagonalize(r) => diagonal(r),
        Report::SymplecticForm(r) => symplectic(r),
        Report::Congruence(r) => congruence(r),
        Report::Hilbert90(r) => hilbert90(r),
        Report::Structure(r) => structure(r),
        Report::Reproduce(r) => {
            let all = r.checks.iter().all(|c| c.pass);
            ensure(r.pass == all, "overall verdict disagrees with the checks")?;
            ensure(!r.checks.is_empty(), "no checks recorded")?;
            let failed: Vec<&str> = r
                .checks
                .iter()
                .filter(|c| !c.pass)
                .map(|c| c.name.as_str())
                .collect();
            ensure(
                failed.is_empty(),
                format!("failed checks: {}", failed.join(", ")),
            )
        }
    }
}

/// `a^-1 lambda(a) = r` with `a` a unit.
fn check_hilbert90<R: InvolutiveRing + ExprRing>(ring: &R, r: &str, a: &str) -> CliResult<()> {
    let r = elem(ring, r)?;
    let a = elem(ring, a)?;
    let a_inv = ring.try_invert(&a)?;
    ensure(
        ring.equal(&ring.mul(&a_inv, &ring.conj(&a)), &r),
        "a^-1 lambda(a) != r",
    )
}

fn classify(r: &ClassifyReport) -> CliResult<()> {
    let family = r.ring.build()?;
    ensure(
        r.family == family.tag(),
        "family tag disagrees with the ring descriptor",
    )?;
    ensure(r.gram.len() == r.n, "Gram matrix size differs from n")?;

    fn gram_checks<R: InvolutiveRing + ExprRing>(ring: &R, r: &ClassifyReport) -> CliResult<()> {
        let h = mat(ring, &r.gram)?;
        let eps = elem(ring, &r.eps)?;
        let gram = validate_hermitian(ring, &h, &eps)?;
        let tau = involution_from_gram(ring, &gram)?;
        if let Some(action) = &r.action {
            let a = mat(ring, action)?;
            ensure(
                linalg::equal(ring, &linear_action(ring, &tau), &a),
                "Gram matrix does not reproduce the linear action",
            )?;
        }
        if let Some(a) = &r.hilbert90 {
            check_hilbert90(ring, &r.eps, a)?;
        }
        Ok(())
    }
    match &family {
        Family::TrivialField(b) => gram_checks(b, r)?,
        Family::QuadraticEtale { .. } => gram_checks(&family.quadratic_ring()?, r)?,
        Family::LaurentFlip(b) => gram_checks(&invol_core::laurent::LaurentRing::new(*b), r)?,
        Family::HyperellipticFlip { .. } => gram_checks(&family.hyperelliptic_ring()?, r)?,
        Family::FiniteAlgebra(_) => {
            return fail("coarse types over finite-dimensional algebras are not reported")
        }
    }

    let gram = MatrixInput::Rows(r.gram.clone());
    let (_, _, eps, c) = classify_family(&family, Some(&gram), None)?;
    ensure(
        eps == r.eps,
        format!("eps recomputes to {eps}, report has {}", r.eps),
    )?;
    ensure(
        c.class == r.class,
        format!("class recomputes to {}, report has {}", c.class, r.class),
    )?;
    ensure(c.types == r.types, "type vector string differs")?;
    ensure(c.type_vector == r.type_vector, "type vector differs")?;
    ensure(
        c.kind == r.kind && c.symmetric_dim == r.symmetric_dim,
        "first-kind classification differs",
    )?;
    ensure(
        is_standard_type(&family, &r.class)? == r.standard,
        "standardness differs",
    )
}

fn type_group(r: &TypeGroupOut) -> CliResult<()> {
    let g = coarse_type_group(&r.ring.build()?)?;
    ensure(g.family == r.family, "family differs")?;
    ensure(
        g.structure.to_string() == r.structure,
        "group structure differs",
    )?;
    ensure(
        g.order == r.order && g.representatives == r.representatives,
        "representatives differ",
    )?;
    ensure(
        r.order == r.representatives.len() as u64,
        "order differs from the representative count",
    )?;
    ensure(
        g.ramification_points == r.ramification_points,
        "ramification points differ",
    )?;
    ensure(
        g.standard == r.standard && g.standard_order == r.standard_order,
        "standard subgroup differs",
    )?;
    ensure(
        r.standard.iter().all(|s| r.representatives.contains(s)),
        "standard class outside the group",
    )
}

fn diagonal(r: &DiagonalizeReport) -> CliResult<()> {
    let t = field_tower(&r.ring.build()?)?;
    let h = mat(&t, &r.gram)?;
    validate_hermitian(&t, &h, &elem(&t, &r.eps)?)?;
    let v = mat(&t, &r.v)?;
    let d = r
        .diagonal
        .iter()
        .map(|s| elem(&t, s))
        .collect::<CliResult<Vec<_>>>()?;
    ensure(t.is_unit(&linalg::det(&t, &v)), "v is not invertible")?;
    ensure(
        d.iter().all(|a| t.is_unit(a)),
        "diagonal entry is not a unit",
    )?;
    ensure(
        linalg::equal(&t, &congruent(&t, &v, &h), &linalg::diagonal(&t, &d)),
        "v^(lambda tr) h v != diagonal",
    )
}

fn symplectic(r: &SymplecticReport) -> CliResult<()> {
    let t = field_tower(&r.ring.build()?)?;
    ensure(
        t.involution_is_trivial(),
        "symplectic normal form needs a trivial involution",
    )?;
    let h = mat(&t, &r.gram)?;
    validate_hermitian(&t, &h, &t.from_int(-1))?;
    let v = mat(&t, &r.v)?;
    let j = mat(&t, &r.normal_form)?;
    ensure(h.rows() % 2 == 0, "odd size")?;
    ensure(
        linalg::equal(&t, &j, &symplectic_block(&t, h.rows() / 2)),
        "normal form is not J",
    )?;
    ensure(t.is_unit(&linalg::det(&t, &v)), "v is not invertible")?;
    ensure(
        linalg::equal(&t, &congruent(&t, &v, &h), &j),
        "v^tr h v != J",
    )
}

/// Rebuild the tower of a congruence witness from its squares and signs.
fn rebuild_tower(base: &SqrtTower, squares: &[String], signs: &[i8]) -> CliResult<SqrtTower> {
    ensure(
        squares.len() == signs.len(),
        "tower squares and signs differ in length",
    )?;
    let mut t = SqrtTower::new(base.base());
    for (s, &sign) in squares.iter().zip(signs) {
        let s = elem(&t, s)?;
        t = t.adjoin(s, sign)?;
    }
    let k = base.len();
    ensure(
        t.len() >= k,
        "witness tower is shorter than the input field",
    )?;
    ensure(
        t.stage(k).generators() == base.generators(),
        "witness tower does not extend the input field",
    )?;
    Ok(t)
}

fn congruence(r: &CongruenceReport) -> CliResult<()> {
    let base = field_tower(&r.ring.build()?)?;
    let big = rebuild_tower(&base, &r.tower, &r.signs)?;
    ensure(
        big.len() - base.len() == r.adjoined,
        "adjoined count differs",
    )?;
    let eps = elem(&base, &r.eps)?;
    let h = mat(&base, &r.gram)?;
    let h2 = mat(&base, &r.target)?;
    validate_hermitian(&base, &h, &eps)?;
    validate_hermitian(&base, &h2, &eps)?;
    let lift = |m: &Matrix<Vec<invol_core::Scalar>>| m.map(|e| big.embed(e));
    let v = mat(&big, &r.v)?;
    ensure(big.is_unit(&linalg::det(&big, &v)), "v is not invertible")?;
    let lhs = congruent(&big, &v, &lift(&h));
    if !linalg::equal(&big, &lhs, &lift(&h2)) {
        return fail(format!(
            "v^(lambda tr) h v = {:?}, expected the target",
            format_matrix(&big, &lhs)
        ));
    }
    Ok(())
}

fn hilbert90(r: &Hilbert90Report) -> CliResult<()> {
    let family = r.ring.build()?;
    match &family {
        Family::TrivialField(b) => check_hilbert90(b, &r.r, &r.a),
        Family::QuadraticEtale { .. } => check_hilbert90(&family.quadratic_ring()?, &r.r, &r.a),
        Family::LaurentFlip(b) => {
            check_hilbert90(&invol_core::laurent::LaurentRing::new(*b), &r.r, &r.a)
        }
        Family::HyperellipticFlip { .. } => {
            check_hilbert90(&family.hyperelliptic_ring()?, &r.r, &r.a)
        }
        Family::FiniteAlgebra(a) => check_hilbert90(a, &r.r, &r.a),
    }
}

fn structure(r: &StructureReport) -> CliResult<()> {
    let Family::FiniteAlgebra(a) = r.ring.build()? else {
        return fail("structure reports describe finite-dimensional algebras");
    };
    ensure(a.dim() == r.dim, "dimension differs")?;
    ensure(r.maximal_ideals <= 2, "more than two maximal ideals")?;
    let perm = &r.ideal_permutation;
    ensure(
        perm.len() == r.maximal_ideals,
        "permutation length differs from the ideal count",
    )?;
    ensure(
        perm.iter()
            .enumerate()
            .all(|(i, &j)| j < perm.len() && perm[j] == i),
        "lambda does not permute the ideals",
    )?;
    for f in &r.fixed_basis {
        let f = elem(&a, f)?;
        ensure(
            a.equal(&a.conj(&f), &f),
            "fixed basis element is moved by lambda",
        )?;
    }
    for x in &r.radical {
        let x = elem(&a, x)?;
        let d = a.dim();
        let nilpotent = (0..d).fold(x.clone(), |acc, _| a.mul(&acc, &x));
        ensure(a.is_zero(&nilpotent), "radical element is not nilpotent")?;
    }
    match (&r.verdict[..], &r.presentation) {
        ("quadratic-etale-over-fixed", Some(p)) => {
            let (x, t, n) = (elem(&a, &p.r)?, elem(&a, &p.t)?, elem(&a, &p.n)?);
            ensure(
                a.is_unit(&a.sub(&x, &a.conj(&x))),
                "r - lambda(r) is not a unit",
            )?;
            ensure(a.equal(&t, &a.add(&x, &a.conj(&x))), "t != r + lambda(r)")?;
            ensure(a.equal(&n, &a.mul(&x, &a.conj(&x))), "n != r lambda(r)")?;
            ensure(
                a.is_zero(&a.add(&a.sub(&a.mul(&x, &x), &a.mul(&t, &x)), &n)),
                "r^2 - t r + n != 0",
            )?;
        }
        ("local-not-etale", None) => {
            ensure(
                r.maximal_ideals == 1,
                "local verdict with several maximal ideals",
            )?;
            ensure(
                r.residue_involution_trivial,
                "local verdict with nontrivial residual involution",
            )?;
        }
        (v, _) => return fail(format!("inconsistent verdict {v}")),
    }
    let s = classify_fixed_local(&a)?;
    let verdict = match s.verdict {
        Verdict::QuadraticEtaleOverFixed(_) => "quadratic-etale-over-fixed",
        Verdict::LocalNotEtale => "local-not-etale",
    };
    ensure(
        verdict == r.verdict && s.maximal_ideals == r.maximal_ideals,
        "verdict recomputes differently",
    )?;
    ensure(
        s.residue_involution_trivial == r.residue_involution_trivial,
        "residual involution differs",
    )
}
