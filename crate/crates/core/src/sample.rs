//! Seeded random inputs: scalars, invertible matrices, hermitian Gram
//! matrices and norm-one elements.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::hermitian::{symplectic_block, validate_hermitian, HermitianMatrix};
use crate::linalg::{self, Matrix};
use crate::ring::{InvolutiveRing, Ring};
use crate::scalar::{BaseField, Scalar};
use crate::tower::{SqrtTower, TowerElem};

pub use rand_chacha::ChaCha8Rng as SeededRng;

pub fn seeded(seed: u64) -> SeededRng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// Small rationals `a/b` with `|a| <= 5`, `1 <= b <= 3`, or uniform residues.
pub fn scalar(rng: &mut impl rand::Rng, base: &BaseField) -> Scalar {
    match base {
        BaseField::Rationals => {
            let n = BigInt::from(rng.gen_range(-5i64..=5));
            let d = BigInt::from(rng.gen_range(1i64..=3));
            Scalar::Rational(BigRational::new(n, d))
        }
        BaseField::Prime(p) => base.int(rng.gen_range(0..*p) as i64),
    }
}

pub fn tower_elem(rng: &mut impl rand::Rng, tower: &SqrtTower) -> TowerElem {
    let b = tower.base();
    (0..tower.dim()).map(|_| scalar(rng, &b)).collect()
}

/// Invertible `n x n` matrix with entries from `draw`.
pub fn invertible<R: Ring>(
    ring: &R,
    n: usize,
    mut draw: impl FnMut() -> R::Elem,
) -> Matrix<R::Elem> {
    loop {
        let m = Matrix::from_fn(n, n, |_, _| draw());
        if ring.is_unit(&linalg::det(ring, &m)) {
            return m;
        }
    }
}

fn unit<R: Ring>(ring: &R, draw: &mut impl FnMut() -> R::Elem) -> R::Elem {
    loop {
        let a = draw();
        if ring.is_unit(&a) {
            return a;
        }
    }
}

/// `beta` with `lambda(beta) = eps beta`: `theta + lambda(eps theta)` for a
/// search-basis element `theta`.
fn eps_scalar<R: InvolutiveRing>(ring: &R, eps: &R::Elem) -> Option<R::Elem> {
    let mut cands = vec![ring.one()];
    cands.extend(ring.search_basis());
    cands
        .iter()
        .map(|t| ring.add(t, &ring.conj(&ring.mul(eps, t))))
        .find(|b| ring.is_unit(b))
}

/// A random `(eps, lambda tr)`-hermitian Gram matrix over a field, as
/// `v^(lambda tr) d v` scaled into the `eps` eigenspace, or `v^tr J v` for
/// alternating forms.
pub fn hermitian<R: InvolutiveRing>(
    ring: &R,
    n: usize,
    eps: &R::Elem,
    mut draw: impl FnMut() -> R::Elem,
) -> Result<HermitianMatrix<R::Elem>> {
    let v = invertible(ring, n, &mut draw);
    let h = match eps_scalar(ring, eps) {
        Some(beta) => {
            let d: Vec<_> = (0..n)
                .map(|_| loop {
                    let t = ring.trace(&unit(ring, &mut draw));
                    if ring.is_unit(&t) {
                        break t;
                    }
                })
                .collect();
            let core = linalg::mul(
                ring,
                &linalg::conj_transpose(ring, &v),
                &linalg::mul(ring, &linalg::diagonal(ring, &d), &v),
            );
            linalg::scale(ring, &beta, &core)
        }
        None if ring.involution_is_trivial() && ring.equal(eps, &ring.from_int(-1)) => {
            if n % 2 == 1 {
                return Err(Error::OddDimensionAlternating(n));
            }
            let j = symplectic_block(ring, n / 2);
            linalg::mul(
                ring,
                &linalg::conj_transpose(ring, &v),
                &linalg::mul(ring, &j, &v),
            )
        }
        None => {
            return Err(Error::Unsupported(format!(
                "no eps-hermitian scalar for eps = {}",
                ring.format(eps)
            )))
        }
    };
    validate_hermitian(ring, &h, eps)
}

/// `lambda(a) a^-1` for a random unit `a`, which has norm one.
pub fn norm_one<R: InvolutiveRing>(ring: &R, mut draw: impl FnMut() -> R::Elem) -> R::Elem {
    let a = unit(ring, &mut draw);
    let r = ring.mul(&ring.conj(&a), &ring.try_invert(&a).expect("unit"));
    debug_assert!(ring.is_one(&ring.norm(&r)));
    r
}
