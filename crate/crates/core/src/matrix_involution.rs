//! `lambda`-involutions of `Mat_n(R)`: anti-automorphisms `tau` with
//! `tau^2 = id` and `tau(a I) = lambda(a) I`.
//!
//! Every such `tau` is `M -> h M^(lambda tr) h^-1` for a Gram matrix `h` with
//! `h^(lambda tr) = eps h`. The coarse type of `tau` is the class of
//! `eps = h^-1 h^(lambda tr)` in `T`.
//!
//! A linear action is a matrix `A` of size `n^2 x n^2` with
//! `vec(tau(M)) = A lambda(vec(M))`, where `vec` lists entries row by row.

use std::fmt;

use crate::error::{Error, Result};
use crate::hermitian::{validate_hermitian, HermitianMatrix};
use crate::linalg::{self, Matrix};
use crate::ring::{InvolutiveRing, Ring};
use crate::scalar::{BaseField, Scalar};
use crate::types::{CoarseTypeClass, CoarseTypes, RamPoint, Ramified, INFINITY};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    Gram,
    LinearAction,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MatrixInvolution<E> {
    gram: HermitianMatrix<E>,
    h_inv: Matrix<E>,
    source: Source,
}

impl<E: Clone> MatrixInvolution<E> {
    pub fn n(&self) -> usize {
        self.gram.n()
    }

    pub fn gram(&self) -> &HermitianMatrix<E> {
        &self.gram
    }

    /// `eps = h^-1 h^(lambda tr)`.
    pub fn eps(&self) -> &E {
        self.gram.eps()
    }

    pub fn source(&self) -> Source {
        self.source
    }
}

/// `tau(M) = h M^(lambda tr) h^-1`.
pub fn apply<R: InvolutiveRing>(
    ring: &R,
    tau: &MatrixInvolution<R::Elem>,
    m: &Matrix<R::Elem>,
) -> Matrix<R::Elem> {
    let hm = linalg::mul(ring, tau.gram.matrix(), &linalg::conj_transpose(ring, m));
    linalg::mul(ring, &hm, &tau.h_inv)
}

fn unit_index(n: usize, i: usize, j: usize) -> usize {
    i * n + j
}

fn unvec<E: Clone>(n: usize, v: &[E]) -> Matrix<E> {
    Matrix::new(n, n, v.to_vec())
}

/// `tau(E_ij) = h E_ji h^-1`, the outer product of column `j` of `h` with row
/// `i` of `h^-1`.
fn unit_image<R: Ring>(
    ring: &R,
    tau: &MatrixInvolution<R::Elem>,
    i: usize,
    j: usize,
) -> Matrix<R::Elem> {
    let n = tau.n();
    let (h, hi) = (tau.gram.matrix(), &tau.h_inv);
    Matrix::from_fn(n, n, |r, c| ring.mul(h.get(r, j), hi.get(i, c)))
}

/// The `n^2 x n^2` matrix of `tau` on matrix units.
pub fn linear_action<R: InvolutiveRing>(
    ring: &R,
    tau: &MatrixInvolution<R::Elem>,
) -> Matrix<R::Elem> {
    let n = tau.n();
    let images: Vec<Matrix<R::Elem>> = (0..n * n)
        .map(|k| unit_image(ring, tau, k / n, k % n))
        .collect();
    Matrix::from_fn(n * n, n * n, |r, c| images[c].entries()[r].clone())
}

/// Applies a `lambda`-semilinear map given on matrix units.
fn apply_semilinear<R: InvolutiveRing>(
    ring: &R,
    images: &[Matrix<R::Elem>],
    m: &Matrix<R::Elem>,
) -> Matrix<R::Elem> {
    let n = m.rows();
    let mut acc = linalg::zeros(ring, n, n);
    for i in 0..n {
        for j in 0..n {
            let a = ring.conj(m.get(i, j));
            if !ring.is_zero(&a) {
                acc = linalg::add(
                    ring,
                    &acc,
                    &linalg::scale(ring, &a, &images[unit_index(n, i, j)]),
                );
            }
        }
    }
    acc
}

/// Checks that the linear map `E_ij -> g[ij]` is a unital ring endomorphism.
/// It suffices that `g_ij = g_i0 g_0j` and `g_0i g_j0 = delta_ij g_00`:
/// then `g_ij g_kl = g_i0 g_0j g_k0 g_0l = delta_jk g_i0 g_00 g_0l = delta_jk g_il`.
fn check_multiplicative<R: Ring>(ring: &R, n: usize, g: &[Matrix<R::Elem>]) -> Result<()> {
    let at = |i: usize, j: usize| &g[unit_index(n, i, j)];
    let zero = linalg::zeros(ring, n, n);
    for i in 0..n {
        for j in 0..n {
            if !linalg::equal(ring, at(i, j), &linalg::mul(ring, at(i, 0), at(0, j))) {
                return Err(Error::InvalidInvolution(format!(
                    "image of E_{i}{j} is not multiplicative"
                )));
            }
            let expect = if i == j { at(0, 0) } else { &zero };
            if !linalg::equal(ring, &linalg::mul(ring, at(0, i), at(j, 0)), expect) {
                return Err(Error::InvalidInvolution(format!(
                    "images of E_0{i} and E_{j}0 violate the unit relations"
                )));
            }
        }
    }
    let total = g
        .iter()
        .step_by(n + 1)
        .fold(zero, |acc, m| linalg::add(ring, &acc, m));
    if !linalg::equal(ring, &total, &linalg::identity(ring, n)) {
        return Err(Error::InvalidInvolution("identity is not preserved".into()));
    }
    Ok(())
}

/// Validates `tau` given by its images of matrix units: an anti-automorphism
/// (through `lambda tr o tau` being multiplicative) squaring to the identity.
fn validate_unit_images<R: InvolutiveRing>(
    ring: &R,
    n: usize,
    images: &[Matrix<R::Elem>],
) -> Result<()> {
    let g: Vec<_> = images
        .iter()
        .map(|t| linalg::conj_transpose(ring, t))
        .collect();
    check_multiplicative(ring, n, &g)?;
    for i in 0..n {
        for j in 0..n {
            let back = apply_semilinear(ring, images, &images[unit_index(n, i, j)]);
            if !linalg::equal(ring, &back, &linalg::elementary(ring, n, i, j)) {
                return Err(Error::InvalidInvolution(format!(
                    "tau(tau(E_{i}{j})) != E_{i}{j}"
                )));
            }
        }
    }
    Ok(())
}

/// `M -> h M^(lambda tr) h^-1`, validated as an involution on matrix units.
/// With `tau(E_ij) = a_j b_i^tr` (`a_j` column `j` of `h`, `b_i` row `i` of
/// `h^-1`), `tau(E_ij) tau(E_kl) = (b_i . a_l) a_j b_k^tr`, so reversal of
/// products and `tau(I) = I` amount to `h^-1 h = I`; `tau(tau(E_ij))` is the
/// outer product of `h lambda(b_i)` and `lambda(a_j)^tr h^-1`.
pub fn involution_from_gram<R: InvolutiveRing>(
    ring: &R,
    h: &HermitianMatrix<R::Elem>,
) -> Result<MatrixInvolution<R::Elem>> {
    let hm = h.matrix();
    let n = h.n();
    let h_inv = linalg::inverse(ring, hm)
        .map_err(|_| Error::InvalidGram("Gram matrix is not invertible".into()))?;
    if !linalg::equal(
        ring,
        &linalg::mul(ring, &h_inv, hm),
        &linalg::identity(ring, n),
    ) {
        return Err(Error::InvalidGram("h^-1 h != I".into()));
    }
    let mv = |m: &Matrix<R::Elem>, v: &[R::Elem]| -> Vec<R::Elem> {
        (0..n)
            .map(|r| {
                ring.sum(
                    (0..n)
                        .map(|c| ring.mul(m.get(r, c), &v[c]))
                        .collect::<Vec<_>>()
                        .iter(),
                )
            })
            .collect()
    };
    let hi_t = h_inv.transpose();
    let x: Vec<Vec<R::Elem>> = (0..n)
        .map(|i| {
            mv(
                hm,
                &hi_t.col(i).iter().map(|e| ring.conj(e)).collect::<Vec<_>>(),
            )
        })
        .collect();
    let y: Vec<Vec<R::Elem>> = (0..n)
        .map(|j| {
            mv(
                &hi_t,
                &hm.col(j).iter().map(|e| ring.conj(e)).collect::<Vec<_>>(),
            )
        })
        .collect();
    for i in 0..n {
        for j in 0..n {
            for r in 0..n {
                for c in 0..n {
                    let v = ring.mul(&x[i][r], &y[j][c]);
                    let want = (r, c) == (i, j);
                    if !(if want {
                        ring.is_one(&v)
                    } else {
                        ring.is_zero(&v)
                    }) {
                        return Err(Error::InvalidGram(format!(
                            "tau(tau(E_{i}{j})) != E_{i}{j}"
                        )));
                    }
                }
            }
        }
    }
    Ok(MatrixInvolution {
        gram: h.clone(),
        h_inv,
        source: Source::Gram,
    })
}

/// Validates and then parses a raw Gram matrix, reading `eps` off
/// `h^-1 h^(lambda tr)`.
pub fn gram_from_matrix<R: InvolutiveRing>(
    ring: &R,
    h: &Matrix<R::Elem>,
) -> Result<HermitianMatrix<R::Elem>> {
    if !h.is_square() || h.rows() == 0 {
        return Err(Error::InvalidGram(
            "Gram matrix must be square and nonempty".into(),
        ));
    }
    let h_inv = linalg::inverse(ring, h).map_err(|_| Error::Singular)?;
    let e = linalg::mul(ring, &h_inv, &linalg::conj_transpose(ring, h));
    let eps = e.get(0, 0).clone();
    if !linalg::equal(
        ring,
        &e,
        &linalg::scale(ring, &eps, &linalg::identity(ring, h.rows())),
    ) {
        return Err(Error::InvalidGram(
            "h^-1 h^(lambda tr) is not a scalar matrix".into(),
        ));
    }
    validate_hermitian(ring, h, &eps)
}

/// `u` with `phi(M) = u M u^-1`, from the images `phi(E_ij)` (index `i n + j`).
///
/// Column `k` of `u` is `phi(E_k0) w` for any nonzero `w` in the image of
/// `phi(E_00)`; taking `w` to be column `p` of `phi(E_00)` makes it column
/// `p` of `phi(E_k0)`. Over rings with a gcd the candidate is divided by the
/// content of its entries.
pub fn skolem_noether_witness<R: Ring>(
    ring: &R,
    n: usize,
    images: &[Matrix<R::Elem>],
) -> Result<Matrix<R::Elem>> {
    if images.len() != n * n {
        return Err(Error::InvalidInvolution(format!(
            "expected {} images, got {}",
            n * n,
            images.len()
        )));
    }
    check_multiplicative(ring, n, images).map_err(|e| Error::NotInner(e.to_string()))?;
    let mut tried = Vec::new();
    for p in 0..n {
        let mut u = Matrix::from_fn(n, n, |r, k| images[unit_index(n, k, 0)].get(r, p).clone());
        if linalg::is_zero(ring, &u) {
            continue;
        }
        if let Some(c) = ring.content(u.entries()) {
            if let Some(v) = u
                .entries()
                .iter()
                .map(|a| ring.exact_div(a, &c))
                .collect::<Option<Vec<_>>>()
            {
                u = Matrix::new(n, n, v);
            }
        }
        if !ring.is_unit(&linalg::det(ring, &u)) {
            tried.push(linalg::format_matrix(ring, &u));
            continue;
        }
        for i in 0..n {
            for j in 0..n {
                let lhs = linalg::mul(ring, &images[unit_index(n, i, j)], &u);
                let rhs = linalg::mul(ring, &u, &linalg::elementary(ring, n, i, j));
                if !linalg::equal(ring, &lhs, &rhs) {
                    return Err(Error::Verification(format!(
                        "conjugation identity fails on E_{i}{j}"
                    )));
                }
            }
        }
        return Ok(u);
    }
    Err(Error::NotInner(format!(
        "no candidate has a unit determinant; candidates {tried:?}"
    )))
}

/// Converts a linear action to a Gram form: `g = lambda tr o tau` is an
/// automorphism, `g = conj(u)` gives `tau(M) = h M^(lambda tr) h^-1` with
/// `h = (u^(lambda tr))^-1`.
pub fn from_linear_action<R: InvolutiveRing>(
    ring: &R,
    n: usize,
    action: &Matrix<R::Elem>,
) -> Result<MatrixInvolution<R::Elem>> {
    if action.rows() != n * n || action.cols() != n * n {
        return Err(Error::InvalidInvolution(format!(
            "linear action must be {0}x{0}",
            n * n
        )));
    }
    let images: Vec<_> = (0..n * n).map(|k| unvec(n, &action.col(k))).collect();
    validate_unit_images(ring, n, &images)?;
    let g: Vec<_> = images
        .iter()
        .map(|t| linalg::conj_transpose(ring, t))
        .collect();
    let u = skolem_noether_witness(ring, n, &g)?;
    let h = linalg::inverse(ring, &linalg::conj_transpose(ring, &u))?;
    let gram = gram_from_matrix(ring, &h)?;
    let mut tau = involution_from_gram(ring, &gram)?;
    tau.source = Source::LinearAction;
    if !linalg::equal(ring, &linear_action(ring, &tau), action) {
        return Err(Error::Verification(
            "Gram form does not reproduce the linear action".into(),
        ));
    }
    Ok(tau)
}

/// `h_2n(eps) = [[0, I], [eps I, 0]]`, whose hermitian constant is
/// `lambda(eps)`; its class equals that of `eps`.
pub fn standard_gram<R: InvolutiveRing>(
    ring: &R,
    n: usize,
    eps: &R::Elem,
) -> Result<HermitianMatrix<R::Elem>> {
    if !ring.is_one(&ring.norm(eps)) {
        return Err(Error::NotNormOne(ring.format(eps)));
    }
    let h = Matrix::from_fn(2 * n, 2 * n, |i, j| {
        if i < n && j == i + n {
            ring.one()
        } else if i >= n && j + n == i {
            eps.clone()
        } else {
            ring.zero()
        }
    });
    validate_hermitian(ring, &h, &ring.conj(eps))
}

pub fn standard_involution<R: InvolutiveRing>(
    ring: &R,
    n: usize,
    eps: &R::Elem,
) -> Result<MatrixInvolution<R::Elem>> {
    involution_from_gram(ring, &standard_gram(ring, n, eps)?)
}

/// `tau (x) tau'` on `Mat_nm`, from the Kronecker product of Gram matrices.
pub fn tensor<R: InvolutiveRing>(
    ring: &R,
    a: &MatrixInvolution<R::Elem>,
    b: &MatrixInvolution<R::Elem>,
) -> Result<MatrixInvolution<R::Elem>> {
    let h = linalg::kronecker(ring, a.gram.matrix(), b.gram.matrix());
    let eps = ring.mul(a.eps(), b.eps());
    involution_from_gram(ring, &validate_hermitian(ring, &h, &eps)?)
}

pub fn coarse_type<R: CoarseTypes>(
    ring: &R,
    tau: &MatrixInvolution<R::Elem>,
) -> Result<CoarseTypeClass<R::Elem>> {
    ring.reduce_to_canonical(tau.eps())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FirstKind {
    Orthogonal,
    Symplectic,
}

impl FirstKind {
    pub fn sign(self) -> i8 {
        match self {
            FirstKind::Orthogonal => 1,
            FirstKind::Symplectic => -1,
        }
    }
}

impl fmt::Display for FirstKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FirstKind::Orthogonal => "orthogonal",
            FirstKind::Symplectic => "symplectic",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FirstKindClassification {
    pub kind: FirstKind,
    /// `dim ker(tau - id)`.
    pub symmetric_dim: usize,
}

/// Orthogonal iff the symmetric elements have dimension `n(n+1)/2`,
/// symplectic iff `n(n-1)/2`, cross-checked against the sign of `eps`.
pub fn classify_first_kind(
    field: &BaseField,
    tau: &MatrixInvolution<Scalar>,
) -> Result<FirstKindClassification> {
    if field.characteristic() == 2 {
        return Err(Error::CharacteristicTwo("first-kind classification".into()));
    }
    let n = tau.n();
    // M = S h^-1 turns tau(M) - M into (C S^tr - S) h^-1 with C = h h^-tr, so
    // ker(tau - id) has the dimension of ker(S -> C S^tr - S), whose matrix
    // has n + 1 nonzeros per row
    let c = linalg::mul(field, tau.gram.matrix(), &tau.h_inv.transpose());
    let k = Matrix::from_fn(n * n, n * n, |row, col| {
        let (a, b, p, q) = (row / n, row % n, col / n, col % n);
        let mut v = if p == b {
            c.get(a, q).clone()
        } else {
            field.zero()
        };
        if (p, q) == (a, b) {
            v = field.sub(&v, &field.one());
        }
        v
    });
    let dim = linalg::nullspace(field, &k).len();
    let kind = if dim == n * (n + 1) / 2 {
        FirstKind::Orthogonal
    } else if dim == n * (n - 1) / 2 {
        FirstKind::Symplectic
    } else {
        return Err(Error::DimensionAnomaly { n, dim });
    };
    let eps_sign = if field.is_one(tau.eps()) {
        1
    } else if field.equal(tau.eps(), &field.from_int(-1)) {
        -1
    } else {
        return Err(Error::NotNormOne(field.format(tau.eps())));
    };
    if eps_sign != kind.sign() {
        return Err(Error::Verification(format!(
            "eps sign {eps_sign} disagrees with {kind} fixed dimension {dim}"
        )));
    }
    Ok(FirstKindClassification {
        kind,
        symmetric_dim: dim,
    })
}

/// Evaluates the Gram form at a ramification point.
pub fn specialize<R: Ramified>(
    ring: &R,
    tau: &MatrixInvolution<R::Elem>,
    z: &RamPoint,
) -> Result<(BaseField, MatrixInvolution<Scalar>)> {
    let field = ring.residue_field();
    let h = tau.gram.matrix();
    let entries = h
        .entries()
        .iter()
        .map(|a| ring.specialize_elem(a, z))
        .collect::<Result<Vec<_>>>()?;
    let hz = Matrix::new(h.rows(), h.cols(), entries);
    let eps = ring.specialize_elem(tau.eps(), z)?;
    let gram = validate_hermitian(&field, &hz, &eps)?;
    Ok((field, involution_from_gram(&field, &gram)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeEntry {
    pub point: String,
    /// `None` for points whose specialization is not evaluated.
    pub sign: Option<i8>,
}

/// `f_tau`: the orthogonal/symplectic sign at every ramification point,
/// asserted equal to the canonical representative of the coarse type
/// evaluated at that point.
pub fn type_vector<R: Ramified + CoarseTypes>(
    ring: &R,
    tau: &MatrixInvolution<R::Elem>,
    points: &[RamPoint],
) -> Result<Vec<TypeEntry>> {
    let class = coarse_type(ring, tau)?;
    let field = ring.residue_field();
    points
        .iter()
        .map(|z| {
            if z.label == INFINITY {
                return Ok(TypeEntry {
                    point: z.label.clone(),
                    sign: None,
                });
            }
            let (f, tz) = specialize(ring, tau, z)?;
            let kind = classify_first_kind(&f, &tz)?.kind;
            let rep = ring.specialize_elem(&class.rep, z)?;
            let rep_sign = if field.is_one(&rep) { 1 } else { -1 };
            if rep_sign != kind.sign() || !field.equal(&rep, &field.from_int(rep_sign as i64)) {
                return Err(Error::Verification(format!(
                    "{kind} at {} but the canonical representative evaluates to {rep}",
                    z.label
                )));
            }
            Ok(TypeEntry {
                point: z.label.clone(),
                sign: Some(kind.sign()),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::involutive::Family;
    use crate::laurent::{LaurentPoly, LaurentRing};
    use crate::tower::SqrtTower;
    use crate::types::ramification_points;

    fn q() -> BaseField {
        BaseField::Rationals
    }

    fn qmat(rows: &[&[i64]]) -> Matrix<Scalar> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| q().int(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn laurent_gram(r: &LaurentRing) -> HermitianMatrix<LaurentPoly> {
        let h = Matrix::from_rows(vec![vec![r.zero(), r.one()], vec![r.x(), r.zero()]]).unwrap();
        gram_from_matrix(r, &h).unwrap()
    }

    #[test]
    fn gram_examples() {
        let f = q();
        let t = involution_from_gram(&f, &gram_from_matrix(&f, &linalg::identity(&f, 3)).unwrap())
            .unwrap();
        let m = qmat(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        assert_eq!(apply(&f, &t, &m), m.transpose());

        let syp = standard_involution(&f, 1, &f.from_int(-1)).unwrap();
        assert_eq!(syp.gram().matrix(), &qmat(&[&[0, 1], &[-1, 0]]));
        assert_eq!(coarse_type(&f, &syp).unwrap().rep, f.from_int(-1));
        // syp [[a, b], [c, d]] = [[d, -b], [-c, a]]
        assert_eq!(
            apply(&f, &syp, &qmat(&[&[1, 2], &[3, 4]])),
            qmat(&[&[4, -2], &[-3, 1]])
        );
    }

    #[test]
    fn laurent_gram_is_the_flip_example_on_the_nose() {
        let r = LaurentRing::new(q());
        let g = laurent_gram(&r);
        assert_eq!(g.eps(), &r.invert(&r.x()).unwrap());
        let tau = involution_from_gram(&r, &g).unwrap();
        // [[a, b], [c, d]] -> [[d(1/x), b(1/x)/x], [x c(1/x), a(1/x)]]
        let b = r.base();
        let a = r.from_terms([(2, b.int(1)), (0, b.int(3))]);
        let bb = r.from_terms([(1, b.int(-2))]);
        let c = r.from_terms([(-1, b.int(5)), (0, b.int(1))]);
        let d = r.from_terms([(3, b.int(7))]);
        let m = Matrix::from_rows(vec![
            vec![a.clone(), bb.clone()],
            vec![c.clone(), d.clone()],
        ])
        .unwrap();
        let xi = r.invert(&r.x()).unwrap();
        let expect = Matrix::from_rows(vec![
            vec![r.conj(&d), r.mul(&xi, &r.conj(&bb))],
            vec![r.mul(&r.x(), &r.conj(&c)), r.conj(&a)],
        ])
        .unwrap();
        assert_eq!(apply(&r, &tau, &m), expect);
        assert_eq!(coarse_type(&r, &tau).unwrap().rep, r.x());
    }

    #[test]
    fn specialization_at_ramification_points() {
        let r = LaurentRing::new(q());
        let tau = involution_from_gram(&r, &laurent_gram(&r)).unwrap();
        let pts = r.ramification();
        let (f, t1) = specialize(&r, &tau, &pts[0]).unwrap();
        assert_eq!(t1.gram().matrix(), &qmat(&[&[0, 1], &[1, 0]]));
        assert_eq!(
            classify_first_kind(&f, &t1).unwrap().kind,
            FirstKind::Orthogonal
        );
        let (f, t2) = specialize(&r, &tau, &pts[1]).unwrap();
        assert_eq!(t2.eps(), &f.from_int(-1));
        assert_eq!(
            classify_first_kind(&f, &t2).unwrap().kind,
            FirstKind::Symplectic
        );
        let bad = RamPoint {
            label: "x=2".into(),
            x: Some(q().int(2)),
        };
        assert!(matches!(
            specialize(&r, &tau, &bad),
            Err(Error::NotRamificationPoint(_))
        ));

        let signs: Vec<_> = type_vector(&r, &tau, &pts)
            .unwrap()
            .iter()
            .map(|e| e.sign)
            .collect();
        assert_eq!(signs, vec![Some(1), Some(-1)]);
        let std = standard_involution(&r, 1, &r.from_int(-1)).unwrap();
        let signs: Vec<_> = type_vector(&r, &std, &pts)
            .unwrap()
            .iter()
            .map(|e| e.sign)
            .collect();
        assert_eq!(signs, vec![Some(-1), Some(-1)]);
        let plain =
            involution_from_gram(&r, &gram_from_matrix(&r, &linalg::identity(&r, 2)).unwrap())
                .unwrap();
        let signs: Vec<_> = type_vector(&r, &plain, &pts)
            .unwrap()
            .iter()
            .map(|e| e.sign)
            .collect();
        assert_eq!(signs, vec![Some(1), Some(1)]);
    }

    #[test]
    fn complete_hyperelliptic_marks_infinity() {
        let fam =
            Family::hyperelliptic(q(), vec![q().int(0), q().int(1), q().int(-1)], true).unwrap();
        let ring = fam.hyperelliptic_ring().unwrap();
        let pts = ramification_points(&fam).unwrap();
        let tau = standard_involution(&ring, 2, &ring.from_int(-1)).unwrap();
        let tv = type_vector(&ring, &tau, &pts).unwrap();
        assert_eq!(tv.len(), 4);
        assert!(tv[..3].iter().all(|e| e.sign == Some(-1)));
        assert_eq!(
            tv[3],
            TypeEntry {
                point: INFINITY.into(),
                sign: None
            }
        );
    }

    #[test]
    fn first_kind_examples() {
        let f = q();
        let t = involution_from_gram(&f, &gram_from_matrix(&f, &linalg::identity(&f, 3)).unwrap())
            .unwrap();
        assert_eq!(
            classify_first_kind(&f, &t).unwrap(),
            FirstKindClassification {
                kind: FirstKind::Orthogonal,
                symmetric_dim: 6
            }
        );
        let syp = standard_involution(&f, 1, &f.from_int(-1)).unwrap();
        assert_eq!(classify_first_kind(&f, &syp).unwrap().symmetric_dim, 1);
    }

    #[test]
    fn skolem_noether_examples() {
        let f = q();
        let conj_images = |u: &Matrix<Scalar>| -> Vec<Matrix<Scalar>> {
            let ui = linalg::inverse(&f, u).unwrap();
            (0..4)
                .map(|k| {
                    linalg::mul(
                        &f,
                        &linalg::mul(&f, u, &linalg::elementary(&f, 2, k / 2, k % 2)),
                        &ui,
                    )
                })
                .collect()
        };
        let id = linalg::identity(&f, 2);
        assert_eq!(
            skolem_noether_witness(&f, 2, &conj_images(&id)).unwrap(),
            id
        );
        let d = qmat(&[&[1, 0], &[0, 2]]);
        let u = skolem_noether_witness(&f, 2, &conj_images(&d)).unwrap();
        // equal to d up to a scalar
        let c = f.mul(u.get(0, 0), &f.invert(d.get(0, 0)).unwrap());
        assert_eq!(u, linalg::scale(&f, &c, &d));

        let r = LaurentRing::new(q());
        let w = Matrix::from_rows(vec![vec![r.zero(), r.one()], vec![r.x(), r.zero()]]).unwrap();
        let wi = linalg::inverse(&r, &w).unwrap();
        let images: Vec<_> = (0..4)
            .map(|k| {
                linalg::mul(
                    &r,
                    &linalg::mul(&r, &w, &linalg::elementary(&r, 2, k / 2, k % 2)),
                    &wi,
                )
            })
            .collect();
        let u = skolem_noether_witness(&r, 2, &images).unwrap();
        assert!(r.as_monomial(&linalg::det(&r, &u)).is_some());
    }

    #[test]
    fn linear_action_round_trip() {
        let r = LaurentRing::new(q());
        let tau = involution_from_gram(&r, &laurent_gram(&r)).unwrap();
        let back = from_linear_action(&r, 2, &linear_action(&r, &tau)).unwrap();
        assert_eq!(back.source(), Source::LinearAction);
        assert_eq!(
            coarse_type(&r, &back).unwrap(),
            coarse_type(&r, &tau).unwrap()
        );

        let g = SqrtTower::quadratic(q(), q().int(-1)).unwrap();
        let h = Matrix::from_rows(vec![
            vec![g.one(), g.gen(1)],
            vec![g.neg(&g.gen(1)), g.from_int(3)],
        ])
        .unwrap();
        let tau = involution_from_gram(&g, &gram_from_matrix(&g, &h).unwrap()).unwrap();
        let back = from_linear_action(&g, 2, &linear_action(&g, &tau)).unwrap();
        assert_eq!(linear_action(&g, &back), linear_action(&g, &tau));
    }

    #[test]
    fn rejects_non_involutions() {
        let f = q();
        // conjugation by diag(1, 2) is an automorphism, not an anti-automorphism
        let d = qmat(&[&[1, 0], &[0, 2]]);
        let di = linalg::inverse(&f, &d).unwrap();
        let images: Vec<_> = (0..4)
            .map(|k| {
                linalg::mul(
                    &f,
                    &linalg::mul(&f, &d, &linalg::elementary(&f, 2, k / 2, k % 2)),
                    &di,
                )
            })
            .collect();
        let a = Matrix::from_fn(4, 4, |r, c| images[c].entries()[r].clone());
        assert!(matches!(
            from_linear_action(&f, 2, &a),
            Err(Error::InvalidInvolution(_))
        ));
        assert!(matches!(
            gram_from_matrix(&f, &qmat(&[&[1, 1], &[0, 1]])),
            Err(Error::InvalidGram(_))
        ));
    }

    #[test]
    fn tensor_examples() {
        let f = q();
        let syp = standard_involution(&f, 1, &f.from_int(-1)).unwrap();
        let t = tensor(&f, &syp, &syp).unwrap();
        assert_eq!(t.n(), 4);
        assert!(f.is_one(&coarse_type(&f, &t).unwrap().rep));
        assert_eq!(
            classify_first_kind(&f, &t).unwrap().kind,
            FirstKind::Orthogonal
        );

        let r = LaurentRing::new(q());
        let tx = standard_involution(&r, 1, &r.x()).unwrap();
        let tm = standard_involution(&r, 1, &r.from_int(-1)).unwrap();
        let rep = coarse_type(&r, &tensor(&r, &tx, &tm).unwrap()).unwrap().rep;
        assert_eq!(rep, r.neg(&r.x()));
    }
}
