//! Named worked examples, each run as a list of exact checks.

use serde_json::json;

use invol_core::algebra::FiniteAlgebra;
use invol_core::expr::{parse_element, parse_matrix};
use invol_core::hermitian::{
    congruence_witness, symplectic_block, symplectic_normal_form, validate_hermitian,
};
use invol_core::involutive::{hilbert90_witness, Family, NormOneElement};
use invol_core::laurent::{LaurentPoly, LaurentRing};
use invol_core::linalg::{self, Matrix};
use invol_core::matrix_involution::{
    apply, classify_first_kind, coarse_type, gram_from_matrix, involution_from_gram,
    standard_involution, type_vector, FirstKind,
};
use invol_core::sample::{self, SeededRng};
use invol_core::tower::SqrtTower;
use invol_core::types::{
    coarse_type_group, format_signs, is_standard_type, ramification_points, GroupStructure,
};
use invol_core::{BaseField, Error, InvolutiveRing, Result, Ring};

use crate::report::{Check, ReproduceReport};
use crate::run::CliResult;
use crate::spec::{default_roots, Example};

type Outcome = Result<(String, Option<serde_json::Value>)>;

fn check(name: &str, outcome: Outcome) -> Check {
    match outcome {
        Ok((detail, data)) => Check {
            name: name.into(),
            pass: true,
            detail,
            data,
        },
        Err(e) => Check {
            name: name.into(),
            pass: false,
            detail: e.to_string(),
            data: None,
        },
    }
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Verification(msg.into()))
    }
}

fn q() -> BaseField {
    BaseField::Rationals
}

pub fn default_count(example: Example) -> usize {
    match example {
        Example::UnitaryTriviality => 200,
        Example::Hyperelliptic => 0,
        _ => 20,
    }
}

pub fn run(example: Example, seed: u64, count: Option<usize>) -> CliResult<ReproduceReport> {
    let count = count.unwrap_or_else(|| default_count(example));
    let mut rng = sample::seeded(seed);
    let checks = match example {
        Example::MixedExample => mixed(&mut rng, count),
        Example::SymplecticModel => symplectic(&mut rng, count),
        Example::UnitaryTriviality => unitary(&mut rng, count),
        Example::Hyperelliptic => hyperelliptic(),
        Example::TrivialDichotomy => dichotomy(&mut rng, count),
    };
    let pass = checks.iter().all(|c| c.pass);
    Ok(ReproduceReport {
        example,
        seed,
        count,
        checks,
        pass,
    })
}

fn laurent_elem(rng: &mut SeededRng, r: &LaurentRing) -> LaurentPoly {
    r.from_terms(
        (-2..=2)
            .map(|e| (e, sample::scalar(rng, &r.base())))
            .collect::<Vec<_>>(),
    )
}

fn mixed(rng: &mut SeededRng, count: usize) -> Vec<Check> {
    let r = LaurentRing::new(q());
    let family = Family::LaurentFlip(q());
    let h = parse_matrix(&r, "[[0, 1], [x, 0]]").expect("literal");
    let tau = gram_from_matrix(&r, &h).and_then(|g| involution_from_gram(&r, &g));
    vec![
        check(
            "klein-four",
            (|| {
                let g = coarse_type_group(&family)?;
                let mut reps = g.representatives.clone();
                reps.sort();
                ensure(
                    g.structure == GroupStructure::Elementary(2),
                    format!("structure {}", g.structure),
                )?;
                ensure(
                    reps == ["-1", "-x", "1", "x"],
                    format!("representatives {reps:?}"),
                )?;
                Ok((
                    format!(
                        "{} with representatives {}",
                        g.structure,
                        g.representatives.join(", ")
                    ),
                    None,
                ))
            })(),
        ),
        check(
            "flip-formula",
            (|| {
                let tau = tau.clone()?;
                let xi = r.try_invert(&r.x())?;
                for _ in 0..count.max(1) {
                    let [a, b, c, d] = [(); 4].map(|_| laurent_elem(rng, &r));
                    let m = Matrix::from_rows(vec![
                        vec![a.clone(), b.clone()],
                        vec![c.clone(), d.clone()],
                    ])?;
                    let expect = Matrix::from_rows(vec![
                        vec![r.conj(&d), r.mul(&xi, &r.conj(&b))],
                        vec![r.mul(&r.x(), &r.conj(&c)), r.conj(&a)],
                    ])?;
                    ensure(
                        apply(&r, &tau, &m) == expect,
                        "Gram [[0, 1], [x, 0]] differs from the flip formula",
                    )?;
                }
                Ok((
                    format!(
                        "[[a, b], [c, d]] -> [[d*, b*/x], [x c*, a*]] on {} random matrices",
                        count.max(1)
                    ),
                    None,
                ))
            })(),
        ),
        check(
            "coarse-type",
            (|| {
                let tau = tau.clone()?;
                let class = r.format(&coarse_type(&r, &tau)?.rep);
                let standard = is_standard_type(&family, &class)?;
                ensure(class == "x", format!("class {class}"))?;
                ensure(standard, "class x is not standard")?;
                Ok((
                    format!("class {class}, standard"),
                    Some(json!({"family": "laurent", "class": class, "standard": standard})),
                ))
            })(),
        ),
        check(
            "specializations",
            (|| {
                let tau = tau.clone()?;
                let entries = type_vector(&r, &tau, &ramification_points(&family)?)?;
                let got: Vec<(String, Option<i8>)> =
                    entries.iter().map(|e| (e.point.clone(), e.sign)).collect();
                let expect = vec![("x=1".to_string(), Some(1)), ("x=-1".to_string(), Some(-1))];
                ensure(got == expect, format!("type vector {got:?}"))?;
                Ok((
                    "orthogonal at x=1, symplectic at x=-1".into(),
                    Some(json!({"types": "+-"})),
                ))
            })(),
        ),
    ]
}

fn symplectic(rng: &mut SeededRng, count: usize) -> Vec<Check> {
    let mut checks = Vec::new();
    for b in [q(), BaseField::Prime(7)] {
        let name = b.name();
        let family = Family::TrivialField(b);
        checks.push(check(
            &format!("type-group-{name}"),
            (|| {
                let g = coarse_type_group(&family)?;
                let minus = b.format(&b.from_int(-1));
                ensure(
                    g.structure == GroupStructure::Mu2
                        && g.representatives == ["1".to_string(), minus],
                    "type group is not {1, -1}",
                )?;
                ensure(g.standard_order == 2, "symplectic type is not standard")?;
                Ok(("{1, -1}, both standard".into(), None))
            })(),
        ));
        checks.push(check(
            &format!("syp-{name}"),
            (|| {
                let mut dims = Vec::new();
                for n in 1..=3 {
                    let syp = standard_involution(&b, n, &b.from_int(-1))?;
                    let fk = classify_first_kind(&b, &syp)?;
                    let class = b.format(&coarse_type(&b, &syp)?.rep);
                    ensure(
                        fk.kind == FirstKind::Symplectic,
                        format!("h_{}(-1) is {}", 2 * n, fk.kind),
                    )?;
                    ensure(
                        fk.symmetric_dim == n * (2 * n - 1),
                        format!("symmetric dimension {}", fk.symmetric_dim),
                    )?;
                    ensure(
                        class == b.format(&b.from_int(-1)) && is_standard_type(&family, &class)?,
                        format!("class {class}"),
                    )?;
                    dims.push(fk.symmetric_dim.to_string());
                }
                Ok((
                    format!(
                        "degrees 2, 4, 6: symplectic, class -1, symmetric dimensions {}",
                        dims.join(", ")
                    ),
                    None,
                ))
            })(),
        ));
        checks.push(check(
            &format!("syp-formula-{name}"),
            (|| {
                let syp = standard_involution(&b, 1, &b.from_int(-1))?;
                for _ in 0..count.max(1) {
                    let [a, x, c, d] = [(); 4].map(|_| sample::scalar(rng, &b));
                    let m = Matrix::from_rows(vec![
                        vec![a.clone(), x.clone()],
                        vec![c.clone(), d.clone()],
                    ])?;
                    let expect = Matrix::from_rows(vec![vec![d, b.neg(&x)], vec![b.neg(&c), a]])?;
                    ensure(
                        apply(&b, &syp, &m) == expect,
                        "syp differs from [[d, -b], [-c, a]]",
                    )?;
                }
                Ok(("[[a, b], [c, d]] -> [[d, -b], [-c, a]]".into(), None))
            })(),
        ));
        checks.push(check(
            &format!("alternating-{name}"),
            (|| {
                for k in 0..count.max(1) {
                    let n = 2 * (1 + k % 3);
                    let h = sample::hermitian(&b, n, &b.from_int(-1), || sample::scalar(rng, &b))?;
                    let tau = involution_from_gram(&b, &h)?;
                    ensure(
                        classify_first_kind(&b, &tau)?.kind == FirstKind::Symplectic,
                        "alternating form is not symplectic",
                    )?;
                    let v = symplectic_normal_form(&b, &h)?;
                    let vt = linalg::conj_transpose(&b, &v);
                    ensure(
                        linalg::mul(&b, &linalg::mul(&b, &vt, h.matrix()), &v)
                            == symplectic_block(&b, n / 2),
                        "v^tr h v != J",
                    )?;
                }
                Ok((
                    format!("{} random alternating forms reduced to J", count.max(1)),
                    None,
                ))
            })(),
        ));
        checks.push(check(
            &format!("odd-degree-{name}"),
            (|| {
                for n in [1, 3, 5] {
                    let e = sample::hermitian(&b, n, &b.from_int(-1), || sample::scalar(rng, &b));
                    ensure(
                        matches!(e, Err(Error::OddDimensionAlternating(_))),
                        format!("odd alternating form of size {n} accepted"),
                    )?;
                    let skew = Matrix::from_fn(n, n, |i, j| b.int(i as i64 - j as i64));
                    ensure(
                        validate_hermitian(&b, &skew, &b.from_int(-1)).is_err(),
                        format!("singular skew matrix of size {n} accepted"),
                    )?;
                }
                Ok((
                    "no invertible alternating form in degrees 1, 3, 5".into(),
                    None,
                ))
            })(),
        ));
    }
    checks.push(check(
        "congruence-without-extension",
        (|| {
            let t = SqrtTower::new(q());
            let h = gram_from_matrix(&t, &parse_matrix(&t, "[[0, 3], [-3, 0]]")?)?;
            let j = gram_from_matrix(&t, &parse_matrix(&t, "[[0, 1], [-1, 0]]")?)?;
            let w = congruence_witness(&t, &h, &j)?;
            ensure(
                w.adjoined.is_empty(),
                "the symplectic case extended the field",
            )?;
            Ok(("[[0, 3], [-3, 0]] ~ [[0, 1], [-1, 0]] over Q".into(), None))
        })(),
    ));
    checks
}

fn hilbert90_all<R: InvolutiveRing>(ring: &R, rs: &[R::Elem]) -> Result<()> {
    for r in rs {
        let a = hilbert90_witness(ring, &NormOneElement::new(ring, r.clone())?)?;
        let a_inv = ring.try_invert(&a)?;
        ensure(
            ring.equal(&ring.mul(&a_inv, &ring.conj(&a)), r),
            format!("a^-1 lambda(a) != {}", ring.format(r)),
        )?;
    }
    Ok(())
}

fn unitary(rng: &mut SeededRng, count: usize) -> Vec<Check> {
    let mut checks = Vec::new();
    for d in [1i64, -1, 2, 5, -7] {
        let label = if d == 1 {
            "Q x Q".to_string()
        } else {
            format!("Q(sqrt {d})")
        };
        checks.push(check(&format!("sqrt-{d}"), (|| {
            let family = Family::quadratic_sqrt(q(), q().int(d))?;
            let g = coarse_type_group(&family)?;
            ensure(g.order == 1 && g.structure == GroupStructure::Trivial, "type group is not trivial")?;
            let t = family.quadratic_ring()?;
            let rs: Vec<_> = (0..count).map(|_| sample::norm_one(&t, || sample::tower_elem(rng, &t))).collect();
            hilbert90_all(&t, &rs)?;
            for k in 0..(count / 20).max(1) {
                let eps = sample::norm_one(&t, || sample::tower_elem(rng, &t));
                let h = sample::hermitian(&t, 1 + k % 3, &eps, || sample::tower_elem(rng, &t))?;
                let c = coarse_type(&t, &involution_from_gram(&t, &h)?)?;
                ensure(t.is_one(&c.rep), "unitary involution with nontrivial class")?;
                let a = c.hilbert90.ok_or_else(|| Error::Verification("no Hilbert 90 witness for eps".into()))?;
                ensure(t.mul(&t.try_invert(&a)?, &t.conj(&a)) == eps, "eps != a^-1 lambda(a)")?;
            }
            Ok((
                format!("{label}: trivial type group, {count} norm-one elements with verified witnesses"),
                Some(json!({"d": d, "types": g.order, "witnesses": count})),
            ))
        })()));
    }
    checks.push(check(
        "swap-product",
        (|| {
            let split = FiniteAlgebra::swap(FiniteAlgebra::field(q()))?;
            let rs: Vec<_> = (0..count)
                .map(|_| {
                    sample::norm_one(&split, || {
                        (0..2).map(|_| sample::scalar(rng, &q())).collect()
                    })
                })
                .collect();
            hilbert90_all(&split, &rs)?;
            Ok((format!("Q x Q with the swap: {count} witnesses"), None))
        })(),
    ));
    checks.push(check(
        "gaussian",
        (|| {
            let gi = SqrtTower::quadratic(q(), q().int(-1))?;
            let r = parse_element(&gi, "3/5 + 4/5*r1")?;
            hilbert90_all(&gi, &[r])?;
            Ok(("(3 + 4i)/5 = a^-1 lambda(a) over Q(i)".into(), None))
        })(),
    ));
    checks
}

fn hyperelliptic() -> Vec<Check> {
    let mut checks = Vec::new();
    for g in 1..=3usize {
        for complete in [false, true] {
            let model = if complete { "complete" } else { "affine" };
            checks.push(check(&format!("genus-{g}-{model}"), (|| {
                let roots = default_roots(g).iter().map(|s| q().parse(s)).collect::<Result<Vec<_>>>()?;
                let family = Family::hyperelliptic(q(), roots, complete)?;
                let report = coarse_type_group(&family)?;
                let expect = 1u64 << (2 * g + 1 + complete as usize);
                ensure(report.order == expect, format!("{} types, expected {expect}", report.order))?;
                ensure(report.standard_order == 2, format!("{} standard types", report.standard_order))?;
                let ring = family.hyperelliptic_ring()?;
                let points = ramification_points(&family)?;
                for (sign, eps) in [(1i8, ring.one()), (-1, ring.from_int(-1))] {
                    let tau = standard_involution(&ring, 1, &eps)?;
                    let signs: Vec<i8> = type_vector(&ring, &tau, &points)?.iter().map(|e| e.sign.unwrap_or(sign)).collect();
                    ensure(signs.iter().all(|&s| s == sign), "standard involution has a mixed type vector")?;
                    ensure(report.standard.contains(&format_signs(&signs)), "realized type is not standard")?;
                }
                Ok((
                    format!("{} types, {} standard, both realized", report.order, report.standard_order),
                    Some(json!({"genus": g, "complete": complete, "types": report.order, "standard": report.standard_order})),
                ))
            })()));
        }
    }
    checks
}

fn dichotomy(rng: &mut SeededRng, count: usize) -> Vec<Check> {
    let fields = [
        q(),
        BaseField::Prime(3),
        BaseField::Prime(5),
        BaseField::Prime(7),
    ];
    fields
        .iter()
        .map(|&b| {
            check(
                &format!("dichotomy-{}", b.name()),
                (|| {
                    let family = Family::TrivialField(b);
                    let g = coarse_type_group(&family)?;
                    ensure(
                        g.order == 2 && g.representatives[1] == b.format(&b.from_int(-1)),
                        "type group is not {1, -1}",
                    )?;
                    let mut forms = 0;
                    for n in 1..=6usize {
                        for sign in [1i64, -1] {
                            if sign < 0 && n % 2 == 1 {
                                continue;
                            }
                            let eps = b.int(sign);
                            for _ in 0..count.max(1) {
                                let h = sample::hermitian(&b, n, &eps, || sample::scalar(rng, &b))?;
                                let tau = involution_from_gram(&b, &h)?;
                                let fk = classify_first_kind(&b, &tau)?;
                                let expect = if sign > 0 {
                                    n * (n + 1) / 2
                                } else {
                                    n * (n - 1) / 2
                                };
                                ensure(
                                    fk.kind.sign() as i64 == sign,
                                    format!("eps = {sign} classified {}", fk.kind),
                                )?;
                                ensure(
                                    fk.symmetric_dim == expect,
                                    format!("symmetric dimension {} for n = {n}", fk.symmetric_dim),
                                )?;
                                ensure(
                                    coarse_type(&b, &tau)?.rep == eps,
                                    "class differs from eps",
                                )?;
                                forms += 1;
                            }
                        }
                    }
                    Ok((
                        format!(
                            "{forms} forms, n <= 6: sign and dimension agree, odd n orthogonal"
                        ),
                        None,
                    ))
                })(),
            )
        })
        .collect()
}
