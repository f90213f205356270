//! `(eps, lambda tr)`-hermitian matrices over fields with involution: exact
//! diagonalization, symplectic normal form, normalization of `eps` and
//! congruence witnesses over square-root towers.
//!
//! The form attached to `h` is `H(x, y) = lambda(x)^tr h y`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::ring::{InvolutiveRing, Ring};
use crate::scalar::Scalar;
use crate::tower::{SqrtTower, TowerElem};

/// `h` with `h^(lambda tr) = eps h`, `lambda(eps) eps = 1` and `h` invertible.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix<E> {
    h: Matrix<E>,
    eps: E,
}

impl<E: Clone> HermitianMatrix<E> {
    pub fn matrix(&self) -> &Matrix<E> {
        &self.h
    }

    pub fn eps(&self) -> &E {
        &self.eps
    }

    pub fn n(&self) -> usize {
        self.h.rows()
    }
}

/// Checks `h^(lambda tr) = eps h` entrywise, reporting the first violation,
/// then invertibility.
pub fn validate_hermitian<R: InvolutiveRing>(
    ring: &R,
    h: &Matrix<R::Elem>,
    eps: &R::Elem,
) -> Result<HermitianMatrix<R::Elem>> {
    if !h.is_square() {
        return Err(Error::InvalidGram(format!(
            "{}x{} matrix is not square",
            h.rows(),
            h.cols()
        )));
    }
    if !ring.is_one(&ring.norm(eps)) {
        return Err(Error::NotNormOne(ring.format(eps)));
    }
    let n = h.rows();
    for i in 0..n {
        for j in 0..n {
            let lhs = ring.conj(h.get(j, i));
            if !ring.equal(&lhs, &ring.mul(eps, h.get(i, j))) {
                return Err(Error::NotHermitian { row: i, col: j });
            }
        }
    }
    if !ring.is_unit(&linalg::det(ring, h)) {
        return Err(Error::Singular);
    }
    Ok(HermitianMatrix {
        h: h.clone(),
        eps: eps.clone(),
    })
}

/// `H(x, y) = lambda(x)^tr h y`.
pub fn form<R: InvolutiveRing>(
    ring: &R,
    h: &Matrix<R::Elem>,
    x: &[R::Elem],
    y: &[R::Elem],
) -> R::Elem {
    let n = h.rows();
    let mut acc = ring.zero();
    for i in 0..n {
        let xi = ring.conj(&x[i]);
        if ring.is_zero(&xi) {
            continue;
        }
        let hy = ring.sum(
            (0..n)
                .map(|j| ring.mul(h.get(i, j), &y[j]))
                .collect::<Vec<_>>()
                .iter(),
        );
        acc = ring.add(&acc, &ring.mul(&xi, &hy));
    }
    acc
}

fn combine<R: Ring>(ring: &R, a: &[R::Elem], c: &R::Elem, b: &[R::Elem]) -> Vec<R::Elem> {
    a.iter()
        .zip(b)
        .map(|(x, y)| ring.add(x, &ring.mul(c, y)))
        .collect()
}

fn columns<E: Clone>(vectors: &[Vec<E>]) -> Matrix<E> {
    Matrix::from_fn(vectors[0].len(), vectors.len(), |r, c| {
        vectors[c][r].clone()
    })
}

/// `v^(lambda tr) h v`, computed entrywise rather than through `linalg::mul`
/// so that witnesses are re-checked along an independent path.
pub fn congruent<R: InvolutiveRing>(
    ring: &R,
    v: &Matrix<R::Elem>,
    h: &Matrix<R::Elem>,
) -> Matrix<R::Elem> {
    let (m, n) = (v.rows(), v.cols());
    let hv: Vec<Vec<R::Elem>> = (0..n)
        .map(|j| {
            let y = v.col(j);
            (0..m)
                .map(|k| {
                    let terms: Vec<_> = (0..m)
                        .filter(|&l| !ring.is_zero(h.get(k, l)))
                        .map(|l| ring.mul(h.get(k, l), &y[l]))
                        .collect();
                    ring.sum(terms.iter())
                })
                .collect()
        })
        .collect();
    Matrix::from_fn(n, n, |i, j| {
        let terms: Vec<_> = (0..m)
            .filter(|&k| !ring.is_zero(v.get(k, i)))
            .map(|k| ring.mul(&ring.conj(v.get(k, i)), &hv[j][k]))
            .collect();
        ring.sum(terms.iter())
    })
}

fn require_field<R: Ring>(ring: &R) -> Result<()> {
    if !ring.is_field() {
        return Err(Error::Unsupported(
            "normal forms are computed over fields".into(),
        ));
    }
    if ring.characteristic() == 2 {
        return Err(Error::CharacteristicTwo("hermitian normal forms".into()));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct Diagonalization<E> {
    pub v: Matrix<E>,
    pub diagonal: Vec<E>,
}

/// `v` with `v^(lambda tr) h v` diagonal. A non-isotropic vector is searched
/// among `w_k`, `w_i + w_j`, `w_i + 2 w_j` and `w_i + theta w_j` with `theta`
/// moved by `lambda`; unless `lambda` is trivial and `eps = -1`, polarization
/// shows one of them has `H(x, x) != 0`.
pub fn diagonalize<R: InvolutiveRing>(
    ring: &R,
    h: &HermitianMatrix<R::Elem>,
) -> Result<Diagonalization<R::Elem>> {
    require_field(ring)?;
    let trivial = ring.involution_is_trivial();
    if trivial && ring.equal(&h.eps, &ring.from_int(-1)) {
        return Err(Error::HypothesisViolated(
            "alternating form over a field with trivial involution".into(),
        ));
    }
    let n = h.n();
    let thetas: Vec<R::Elem> = ring
        .search_basis()
        .into_iter()
        .filter(|t| !ring.is_fixed(t))
        .collect();
    let mut basis: Vec<Vec<R::Elem>> = (0..n).map(|i| linalg::identity(ring, n).col(i)).collect();
    let mut vectors = Vec::with_capacity(n);
    let mut diagonal = Vec::with_capacity(n);
    let two = ring.from_int(2);
    while !basis.is_empty() {
        let m = basis.len();
        let mut candidates: Vec<(Vec<R::Elem>, usize)> =
            (0..m).map(|k| (basis[k].clone(), k)).collect();
        for i in 0..m {
            for j in 0..m {
                if i == j {
                    continue;
                }
                if i < j {
                    candidates.push((combine(ring, &basis[i], &ring.one(), &basis[j]), i));
                }
                candidates.push((combine(ring, &basis[i], &two, &basis[j]), i));
                for t in &thetas {
                    candidates.push((combine(ring, &basis[i], t, &basis[j]), i));
                }
            }
        }
        let found = candidates.into_iter().find_map(|(x, pivot)| {
            let a = form(ring, &h.h, &x, &x);
            (!ring.is_zero(&a)).then_some((x, pivot, a))
        });
        let Some((x, pivot, a)) = found else {
            return Err(Error::HypothesisViolated(
                "no non-isotropic vector among the search candidates".into(),
            ));
        };
        let a_inv = ring.try_invert(&a)?;
        basis = basis
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != pivot)
            .map(|(_, w)| {
                let c = ring.neg(&ring.mul(&a_inv, &form(ring, &h.h, &x, w)));
                combine(ring, w, &c, &x)
            })
            .collect();
        vectors.push(x);
        diagonal.push(a);
    }
    let v = columns(&vectors);
    let check = congruent(ring, &v, &h.h);
    if !linalg::equal(ring, &check, &linalg::diagonal(ring, &diagonal))
        || !ring.is_unit(&linalg::det(ring, &v))
    {
        return Err(Error::Verification(
            "diagonalizing congruence does not hold".into(),
        ));
    }
    Ok(Diagonalization { v, diagonal })
}

/// `J_n = diag([[0, 1], [-1, 0]], ...)` of size `2m`.
pub fn symplectic_block<R: Ring>(ring: &R, m: usize) -> Matrix<R::Elem> {
    let j = Matrix::from_rows(vec![
        vec![ring.zero(), ring.one()],
        vec![ring.from_int(-1), ring.zero()],
    ])
    .expect("square");
    linalg::block_diag(ring, &vec![j; m])
}

/// `v` with `v^tr h v = J` for an invertible alternating `h` over a field
/// with trivial involution: pick `x`, find `y` with `H(x, y) = 1`, project
/// the rest onto the orthogonal complement of the plane and recurse.
pub fn symplectic_normal_form<R: InvolutiveRing>(
    ring: &R,
    h: &HermitianMatrix<R::Elem>,
) -> Result<Matrix<R::Elem>> {
    require_field(ring)?;
    if !ring.involution_is_trivial() || !ring.equal(&h.eps, &ring.from_int(-1)) {
        return Err(Error::HypothesisViolated(
            "symplectic form needs trivial involution and eps = -1".into(),
        ));
    }
    let n = h.n();
    if n % 2 == 1 {
        return Err(Error::OddDimensionAlternating(n));
    }
    let mut basis: Vec<Vec<R::Elem>> = (0..n).map(|i| linalg::identity(ring, n).col(i)).collect();
    let mut vectors = Vec::with_capacity(n);
    while !basis.is_empty() {
        let x = basis[0].clone();
        let Some((j, c)) = (1..basis.len())
            .map(|j| (j, form(ring, &h.h, &x, &basis[j])))
            .find(|(_, c)| !ring.is_zero(c))
        else {
            return Err(Error::Singular);
        };
        let c_inv = ring.try_invert(&c)?;
        let y: Vec<R::Elem> = basis[j].iter().map(|e| ring.mul(e, &c_inv)).collect();
        basis = basis
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != 0 && *k != j)
            .map(|(_, w)| {
                let w = combine(ring, w, &form(ring, &h.h, &y, w), &x);
                let hxw = form(ring, &h.h, &x, &w);
                combine(ring, &w, &ring.neg(&hxw), &y)
            })
            .collect();
        vectors.push(x);
        vectors.push(y);
    }
    let v = columns(&vectors);
    if !linalg::equal(
        ring,
        &congruent(ring, &v, &h.h),
        &symplectic_block(ring, n / 2),
    ) {
        return Err(Error::Verification(
            "symplectic congruence does not hold".into(),
        ));
    }
    Ok(v)
}

/// `(sigma, beta)` with `beta^-1 lambda(beta) = sigma eps`, using
/// `beta = 1 + lambda(eps)` when that is a unit and `1 - lambda(eps)`
/// otherwise. Then `beta^-1 h` is `sigma`-hermitian whenever `h` is
/// `eps`-hermitian.
pub fn normalize_epsilon<R: InvolutiveRing>(ring: &R, eps: &R::Elem) -> Result<(i8, R::Elem)> {
    if !ring.is_one(&ring.norm(eps)) {
        return Err(Error::NotNormOne(ring.format(eps)));
    }
    let le = ring.conj(eps);
    for (sigma, beta) in [
        (1i8, ring.add(&ring.one(), &le)),
        (-1, ring.sub(&ring.one(), &le)),
    ] {
        if let Ok(bi) = ring.invert(&beta) {
            let target = if sigma > 0 {
                eps.clone()
            } else {
                ring.neg(eps)
            };
            if !ring.equal(&ring.mul(&bi, &ring.conj(&beta)), &target) {
                return Err(Error::Verification(
                    "beta^-1 lambda(beta) != sigma eps".into(),
                ));
            }
            return Ok((sigma, beta));
        }
    }
    Err(Error::HypothesisViolated(format!(
        "neither 1 + lambda(eps) nor 1 - lambda(eps) is a unit for {}",
        ring.format(eps)
    )))
}

/// `v` over a (possibly larger) tower with `v^(lambda tr) h v = h'`.
#[derive(Clone, Debug, PartialEq)]
pub struct CongruenceWitness {
    pub tower: SqrtTower,
    /// The squares adjoined to the input tower, in order.
    pub adjoined: Vec<TowerElem>,
    pub v: Matrix<TowerElem>,
}

fn embed_matrix(t: &SqrtTower, m: &Matrix<TowerElem>) -> Matrix<TowerElem> {
    m.map(|e| t.embed(e))
}

/// Congruence of two `eps`-hermitian forms over a field tower. After scaling
/// both by `beta^-1`, alternating pairs are matched through their symplectic
/// normal forms; otherwise both are diagonalized and the ratios
/// `s_i = alpha_i^-1 alpha'_i`, which are fixed, get fixed square roots,
/// adjoined only when the tower lacks them and shared between equal ratios.
pub fn congruence_witness(
    tower: &SqrtTower,
    h: &HermitianMatrix<TowerElem>,
    h2: &HermitianMatrix<TowerElem>,
) -> Result<CongruenceWitness> {
    require_field(tower)?;
    if h.n() != h2.n() {
        return Err(Error::InvalidGram(format!(
            "sizes {} and {} differ",
            h.n(),
            h2.n()
        )));
    }
    if !tower.equal(&h.eps, &h2.eps) {
        return Err(Error::InvalidGram("forms have different eps".into()));
    }
    let n = h.n();
    let (sigma, beta) = normalize_epsilon(tower, &h.eps)?;
    let b_inv = tower.try_invert(&beta)?;
    let sigma_e = tower.from_int(sigma as i64);
    let scaled = |m: &HermitianMatrix<TowerElem>| HermitianMatrix {
        h: linalg::scale(tower, &b_inv, &m.h),
        eps: sigma_e.clone(),
    };
    let (g1, g2) = (scaled(h), scaled(h2));

    let (big, adjoined, v) = if sigma < 0 && tower.involution_is_trivial() {
        let v1 = symplectic_normal_form(tower, &g1)?;
        let v2 = symplectic_normal_form(tower, &g2)?;
        (
            tower.clone(),
            Vec::new(),
            linalg::mul(tower, &v1, &linalg::inverse(tower, &v2)?),
        )
    } else {
        let d1 = diagonalize(tower, &g1)?;
        let d2 = diagonalize(tower, &g2)?;
        let mut big = tower.clone();
        let mut adjoined = Vec::new();
        let mut roots: HashMap<TowerElem, TowerElem> = HashMap::new();
        let mut ws = Vec::with_capacity(n);
        for (a, a2) in d1.diagonal.iter().zip(&d2.diagonal) {
            let s = tower.mul(&tower.try_invert(a)?, a2);
            if !tower.is_fixed(&s) {
                return Err(Error::Verification(
                    "ratio of diagonal entries is not fixed".into(),
                ));
            }
            let w = match roots.get(&s) {
                Some(w) => w.clone(),
                None => {
                    let w = match tower.fixed_sqrt(&s) {
                        Some(w) => w,
                        None => {
                            big = big.adjoin(big.embed(&s), 1)?;
                            adjoined.push(s.clone());
                            big.gen(big.len())
                        }
                    };
                    roots.insert(s, w.clone());
                    w
                }
            };
            ws.push(w);
        }
        let ws: Vec<TowerElem> = ws.iter().map(|w| big.embed(w)).collect();
        let vd = embed_matrix(&big, &d1.v);
        let wd = embed_matrix(&big, &linalg::inverse(tower, &d2.v)?);
        let v = linalg::mul(
            &big,
            &linalg::mul(&big, &vd, &linalg::diagonal(&big, &ws)),
            &wd,
        );
        (big, adjoined, v)
    };

    let v = embed_matrix(&big, &v);
    let target = embed_matrix(&big, &h2.h);
    if !linalg::equal(
        &big,
        &congruent(&big, &v, &embed_matrix(&big, &h.h)),
        &target,
    ) {
        return Err(Error::Verification("v^(lambda tr) h v != h'".into()));
    }
    // det(h') = lambda(det v) det(h) det(v) is a unit, so det(v) is one too
    Ok(CongruenceWitness {
        tower: big,
        adjoined,
        v,
    })
}

/// Embed a matrix over the base field into a tower.
pub fn lift_to_tower(tower: &SqrtTower, m: &Matrix<Scalar>) -> Matrix<TowerElem> {
    m.map(|c| tower.from_scalar(c.clone()))
}
