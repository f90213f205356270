//! Structural invariants checked on random inputs.

use proptest::prelude::*;

use invol_core::hermitian::{
    congruence_witness, diagonalize, symplectic_block, symplectic_normal_form,
};
use invol_core::involutive::{hilbert90_witness, NormOneElement};
use invol_core::laurent::{LaurentPoly, LaurentRing};
use invol_core::linalg::{self, Matrix};
use invol_core::matrix_involution::{
    apply, from_linear_action, gram_from_matrix, involution_from_gram, linear_action,
};
use invol_core::sample;
use invol_core::tower::SqrtTower;
use invol_core::{BaseField, Error, InvolutiveRing, Ring, Scalar};

fn q() -> BaseField {
    BaseField::Rationals
}

fn tower(which: usize) -> SqrtTower {
    match which {
        0 => SqrtTower::new(q()),
        1 => SqrtTower::new(BaseField::Prime(7)),
        2 => SqrtTower::quadratic(q(), q().int(-1)).unwrap(),
        _ => SqrtTower::quadratic(BaseField::Prime(11), BaseField::Prime(11).int(2)).unwrap(),
    }
}

fn laurent_poly(r: &LaurentRing, terms: &[(i64, i64)]) -> LaurentPoly {
    r.from_terms(terms.iter().map(|&(e, c)| (e, q().int(c))))
}

fn terms() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-3i64..=3, -4i64..=4), 0..4)
}

fn congruence<R: InvolutiveRing>(
    ring: &R,
    v: &Matrix<R::Elem>,
    h: &Matrix<R::Elem>,
) -> Matrix<R::Elem> {
    linalg::mul(
        ring,
        &linalg::mul(ring, &linalg::conj_transpose(ring, v), h),
        v,
    )
}

fn is_diagonal<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> bool {
    (0..m.rows()).all(|i| (0..m.cols()).all(|j| i == j || ring.is_zero(m.get(i, j))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn laurent_flip_is_an_involution(a in terms(), b in terms()) {
        let r = LaurentRing::new(q());
        let (a, b) = (laurent_poly(&r, &a), laurent_poly(&r, &b));
        prop_assert!(r.equal(&r.conj(&r.conj(&a)), &a));
        prop_assert!(r.equal(&r.conj(&r.mul(&a, &b)), &r.mul(&r.conj(&a), &r.conj(&b))));
        prop_assert!(r.equal(&r.conj(&r.add(&a, &b)), &r.add(&r.conj(&a), &r.conj(&b))));
    }

    #[test]
    fn laurent_units_are_monomials(a in terms()) {
        let r = LaurentRing::new(q());
        let a = laurent_poly(&r, &a);
        prop_assert_eq!(r.is_unit(&a), r.as_monomial(&a).is_some());
        if let Ok(inv) = r.try_invert(&a) {
            prop_assert!(r.is_one(&r.mul(&a, &inv)));
        }
    }

    #[test]
    fn gram_and_linear_action_agree(seed in any::<u64>(), which in 0usize..4, n in 1usize..=3) {
        let t = tower(which);
        let mut rng = sample::seeded(seed);
        let eps = if t.involution_is_trivial() { t.one() } else { sample::norm_one(&t, || sample::tower_elem(&mut rng, &t)) };
        let h = sample::hermitian(&t, n, &eps, || sample::tower_elem(&mut rng, &t)).unwrap();
        let tau = involution_from_gram(&t, &h).unwrap();
        let action = linear_action(&t, &tau);
        let back = from_linear_action(&t, n, &action).unwrap();
        prop_assert!(linalg::equal(&t, &linear_action(&t, &back), &action));

        let m = Matrix::from_fn(n, n, |_, _| sample::tower_elem(&mut rng, &t));
        let once = apply(&t, &tau, &m);
        prop_assert!(linalg::equal(&t, &apply(&t, &tau, &once), &m), "tau is not an involution");
        let m2 = Matrix::from_fn(n, n, |_, _| sample::tower_elem(&mut rng, &t));
        let prod = apply(&t, &tau, &linalg::mul(&t, &m, &m2));
        prop_assert!(linalg::equal(&t, &prod, &linalg::mul(&t, &apply(&t, &tau, &m2), &once)), "tau is not an anti-automorphism");
    }

    #[test]
    fn diagonalization_is_a_congruence(seed in any::<u64>(), which in 0usize..4, n in 1usize..=4) {
        let t = tower(which);
        let mut rng = sample::seeded(seed);
        let eps = if t.involution_is_trivial() { t.one() } else { sample::norm_one(&t, || sample::tower_elem(&mut rng, &t)) };
        let h = sample::hermitian(&t, n, &eps, || sample::tower_elem(&mut rng, &t)).unwrap();
        let d = diagonalize(&t, &h).unwrap();
        let c = congruence(&t, &d.v, h.matrix());
        prop_assert!(is_diagonal(&t, &c));
        prop_assert!(linalg::equal(&t, &c, &linalg::diagonal(&t, &d.diagonal)));
        prop_assert!(t.is_unit(&linalg::det(&t, &d.v)));
    }

    #[test]
    fn congruence_witnesses_hold(seed in any::<u64>(), which in 0usize..4, n in 1usize..=4, alternating in any::<bool>()) {
        let t = tower(which);
        let mut rng = sample::seeded(seed);
        let alternating = alternating && t.involution_is_trivial() && n % 2 == 0;
        let eps = if alternating {
            t.from_int(-1)
        } else if t.involution_is_trivial() {
            t.one()
        } else {
            sample::norm_one(&t, || sample::tower_elem(&mut rng, &t))
        };
        let h = sample::hermitian(&t, n, &eps, || sample::tower_elem(&mut rng, &t)).unwrap();
        let h2 = sample::hermitian(&t, n, &eps, || sample::tower_elem(&mut rng, &t)).unwrap();
        let w = congruence_witness(&t, &h, &h2).unwrap();
        let lift = |m: &Matrix<Vec<Scalar>>| m.map(|e| w.tower.embed(e));
        let got = congruence(&w.tower, &w.v, &lift(h.matrix()));
        prop_assert!(linalg::equal(&w.tower, &got, &lift(h2.matrix())));
        prop_assert!(w.tower.is_unit(&linalg::det(&w.tower, &w.v)));
        prop_assert_eq!(w.tower.len(), t.len() + w.adjoined.len());
        if alternating {
            prop_assert!(w.adjoined.is_empty(), "alternating forms need no extension");
        }
    }

    #[test]
    fn alternating_forms_reduce_to_the_standard_block(seed in any::<u64>(), which in 0usize..2, m in 1usize..=3) {
        let t = tower(which);
        let mut rng = sample::seeded(seed);
        let minus = t.from_int(-1);
        let h = sample::hermitian(&t, 2 * m, &minus, || sample::tower_elem(&mut rng, &t)).unwrap();
        let v = symplectic_normal_form(&t, &h).unwrap();
        prop_assert!(linalg::equal(&t, &congruence(&t, &v, h.matrix()), &symplectic_block(&t, m)));
    }

    #[test]
    fn odd_degree_has_no_alternating_forms(seed in any::<u64>(), which in 0usize..2, m in 0usize..3) {
        let t = tower(which);
        let mut rng = sample::seeded(seed);
        let n = 2 * m + 1;
        let minus = t.from_int(-1);
        let r = sample::hermitian(&t, n, &minus, || sample::tower_elem(&mut rng, &t));
        prop_assert!(matches!(r, Err(Error::OddDimensionAlternating(k)) if k == n));
        let any = Matrix::from_fn(n, n, |_, _| sample::tower_elem(&mut rng, &t));
        let skew = linalg::sub(&t, &any, &any.transpose());
        prop_assert!(t.is_zero(&linalg::det(&t, &skew)), "odd skew matrices are singular");
        prop_assert!(gram_from_matrix(&t, &skew).is_err());
    }

    #[test]
    fn hilbert90_on_quadratic_fields(seed in any::<u64>(), which in 2usize..4) {
        let t = tower(which);
        let mut rng = sample::seeded(seed);
        let r = sample::norm_one(&t, || sample::tower_elem(&mut rng, &t));
        let a = hilbert90_witness(&t, &NormOneElement::new(&t, r.clone()).unwrap()).unwrap();
        let lhs = t.mul(&t.try_invert(&a).unwrap(), &t.conj(&a));
        prop_assert!(t.equal(&lhs, &r));
    }
}
