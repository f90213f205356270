//! Every report re-verifies from its serialized form, and corrupting a
//! witness is caught.

use std::path::Path;

use proptest::prelude::*;
use serde_json::{json, Value};

use invol_cli::report::Report;
use invol_cli::spec::{FamilySpec, Job, MatrixInput};
use invol_cli::verify::verify_json;
use invol_cli::{run_job, run_verified};
use invol_core::hermitian::HermitianMatrix;
use invol_core::linalg::format_matrix;
use invol_core::sample;
use invol_core::tower::SqrtTower;
use invol_core::{BaseField, InvolutiveRing, Ring};

fn corpus() -> Vec<Job> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/corpus/jobs.json");
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn corpus_round_trips() {
    for job in corpus() {
        let outcome = run_verified(&job);
        assert!(outcome.error.is_none(), "{job:?}: {:?}", outcome.error);
        let json = outcome.report.unwrap().to_json();
        let back = verify_json(&json).unwrap();
        assert_eq!(back.to_json(), json, "serialization is not stable");
    }
}

#[test]
fn reports_are_deterministic() {
    for job in corpus() {
        assert_eq!(
            run_job(&job).unwrap().to_json(),
            run_job(&job).unwrap().to_json()
        );
    }
}

#[test]
fn job_schema_is_strict() {
    let bad = [
        json!({"command": "type-group", "family": {"kind": "laurent", "base": "Q", "extra": 1}}),
        json!({"command": "type-group", "family": {"kind": "elliptic", "base": "Q"}}),
        json!({"command": "nope"}),
        json!({"command": "hilbert90", "family": {"kind": "trivial", "base": "Q"}}),
    ];
    for b in bad {
        assert!(serde_json::from_value::<Job>(b.clone()).is_err(), "{b}");
    }
    let ok: Job =
        serde_json::from_value(json!({"command": "reproduce", "example": "hyperelliptic"}))
            .unwrap();
    assert_eq!(ok.command(), "reproduce");
}

fn corrupt(report: &Report, edit: impl FnOnce(&mut Value)) -> bool {
    let mut v = serde_json::to_value(report).unwrap();
    edit(&mut v);
    verify_json(&v.to_string()).is_err()
}

#[test]
fn corrupted_reports_are_rejected() {
    for job in corpus() {
        let report = run_job(&job).unwrap();
        let caught = match &report {
            Report::ClassifyInvolution(_) => {
                corrupt(&report, |v| v["class"] = json!("2/9"))
                    && corrupt(&report, |v| v["standard"] = json!(false))
            }
            Report::TypeGroup(_) => corrupt(&report, |v| v["order"] = json!(3)),
            Report::Diagonalize(_) => corrupt(&report, |v| v["diagonal"][0] = json!("7")),
            Report::SymplecticForm(_) => corrupt(&report, |v| v["v"][0][0] = json!("5")),
            Report::Congruence(_) => {
                corrupt(&report, |v| v["v"][0][0] = json!("3"))
                    && corrupt(&report, |v| v["tower"] = json!(["5"]))
            }
            Report::Hilbert90(_) => corrupt(&report, |v| v["a"] = json!("2")),
            Report::Structure(_) => corrupt(&report, |v| {
                let flipped = if v["verdict"] == "local-not-etale" {
                    "quadratic-etale-over-fixed"
                } else {
                    "local-not-etale"
                };
                v["verdict"] = json!(flipped);
            }),
            Report::Reproduce(_) => corrupt(&report, |v| v["checks"][0]["pass"] = json!(false)),
        };
        assert!(caught, "corruption of {} went unnoticed", report.command());
    }
}

fn rows<R: Ring>(ring: &R, h: &HermitianMatrix<R::Elem>) -> MatrixInput {
    MatrixInput::Rows(format_matrix(ring, h.matrix()))
}

fn family(base: &str) -> FamilySpec {
    match base {
        "Q(i)" => FamilySpec::Quadratic {
            base: "Q".into(),
            alpha: "0".into(),
            beta: "1".into(),
        },
        b => FamilySpec::Trivial { base: b.into() },
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_forms_round_trip(seed in any::<u64>(), which in 0usize..3, n in 1usize..=4) {
        let mut rng = sample::seeded(seed);
        let (name, t) = match which {
            0 => ("Q", SqrtTower::new(BaseField::Rationals)),
            1 => ("F7", SqrtTower::new(BaseField::Prime(7))),
            _ => ("Q(i)", SqrtTower::quadratic(BaseField::Rationals, BaseField::Rationals.int(-1)).unwrap()),
        };
        let eps = if t.involution_is_trivial() { t.one() } else { sample::norm_one(&t, || sample::tower_elem(&mut rng, &t)) };
        let h = sample::hermitian(&t, n, &eps, || sample::tower_elem(&mut rng, &t)).unwrap();
        let h2 = sample::hermitian(&t, n, &eps, || sample::tower_elem(&mut rng, &t)).unwrap();
        let jobs = [
            Job::ClassifyInvolution { family: family(name), gram: Some(rows(&t, &h)), action: None },
            Job::Diagonalize { family: family(name), gram: rows(&t, &h) },
            Job::Congruence { family: family(name), gram: rows(&t, &h), target: rows(&t, &h2) },
        ];
        for job in &jobs {
            let outcome = run_verified(job);
            prop_assert!(outcome.error.is_none(), "{:?}", outcome.error);
        }
        if t.involution_is_trivial() && n % 2 == 0 {
            let minus = t.from_int(-1);
            let a = sample::hermitian(&t, n, &minus, || sample::tower_elem(&mut rng, &t)).unwrap();
            let b = sample::hermitian(&t, n, &minus, || sample::tower_elem(&mut rng, &t)).unwrap();
            for job in [
                Job::SymplecticForm { family: family(name), gram: rows(&t, &a) },
                Job::Congruence { family: family(name), gram: rows(&t, &a), target: rows(&t, &b) },
            ] {
                let outcome = run_verified(&job);
                prop_assert!(outcome.error.is_none(), "{:?}", outcome.error);
            }
        }
    }

    #[test]
    fn hilbert90_round_trips(seed in any::<u64>(), d in prop::sample::select(vec![-7i64, -1, 2, 5])) {
        let mut rng = sample::seeded(seed);
        let fam = FamilySpec::Quadratic { base: "Q".into(), alpha: "0".into(), beta: (-d).to_string() };
        let t = SqrtTower::quadratic(BaseField::Rationals, BaseField::Rationals.int(d)).unwrap();
        let r = sample::norm_one(&t, || sample::tower_elem(&mut rng, &t));
        let outcome = run_verified(&Job::Hilbert90 { family: fam, r: t.format(&r) });
        prop_assert!(outcome.error.is_none(), "{:?}", outcome.error);
    }
}
