//! Finite-dimensional commutative algebras given by structure constants,
//! optionally carrying an involution and a constructor presentation.
//!
//! Constructed algebras (fields, products, quadratic extensions, nilpotent
//! thickenings) know their maximal ideals: each one is the kernel of a map to
//! a square-root tower over the base field, so splitting only ever needs
//! square detection.

use rand::seq::SliceRandom;
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::ring::{ExprRing, InvolutiveRing, NonUnit, NonUnitWitness, Ring};
use crate::scalar::{BaseField, Scalar};
use crate::terms::format_terms;
use crate::tower::{SqrtTower, TowerElem};

pub type AlgElem = Vec<Scalar>;

#[derive(Clone, Debug, PartialEq)]
enum Shape {
    Raw,
    Field,
    /// `swap` marks `A x A` with `(a, b) -> (lambda b, lambda a)`.
    Product {
        left: Box<FiniteAlgebra>,
        right: Box<FiniteAlgebra>,
        swap: bool,
    },
    /// `A[t]/(t^2 - s)`; `s = 0` for a thickening.
    Ext {
        base: Box<FiniteAlgebra>,
        s: AlgElem,
        var: String,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct FiniteAlgebra {
    base: BaseField,
    dim: usize,
    /// `table[i * dim + j]` = coordinates of `e_i e_j`.
    table: Vec<AlgElem>,
    unity: AlgElem,
    /// Column `j` holds the coordinates of `lambda(e_j)`.
    lambda: Matrix<Scalar>,
    shape: Shape,
    field: bool,
}

/// A maximal ideal, as the kernel of a surjection onto a field.
#[derive(Clone, Debug, PartialEq)]
pub struct MaximalIdeal {
    pub residue_field: SqrtTower,
    /// Images of the basis elements.
    pub images: Vec<TowerElem>,
    /// Reduced row-echelon basis of the kernel.
    pub kernel: Vec<AlgElem>,
}

impl FiniteAlgebra {
    /// Validates commutativity, associativity and the unity. The involution
    /// starts out trivial.
    pub fn new(base: BaseField, dim: usize, table: Vec<AlgElem>, unity: AlgElem) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidStructure("dimension 0".into()));
        }
        if table.len() != dim * dim || table.iter().any(|v| v.len() != dim) || unity.len() != dim {
            return Err(Error::InvalidStructure(format!(
                "expected {dim}x{dim} products of length {dim}"
            )));
        }
        if table
            .iter()
            .flatten()
            .chain(&unity)
            .any(|c| !base.contains(c))
        {
            return Err(Error::RingMismatch(format!(
                "structure constants outside {}",
                base.name()
            )));
        }
        let alg = FiniteAlgebra {
            base,
            dim,
            table,
            unity,
            lambda: linalg::identity(&base, dim),
            shape: Shape::Raw,
            field: false,
        };
        alg.validate()?;
        Ok(alg)
    }

    fn validate(&self) -> Result<()> {
        let d = self.dim;
        for i in 0..d {
            for j in 0..i {
                if self.table[i * d + j] != self.table[j * d + i] {
                    return Err(Error::InvalidStructure(format!("e{i} e{j} != e{j} e{i}")));
                }
            }
        }
        let check = |i: usize, j: usize, k: usize| -> Result<()> {
            let left = self.mul(&self.table[i * d + j], &self.basis(k));
            let right = self.mul(&self.basis(i), &self.table[j * d + k]);
            if left != right {
                return Err(Error::InvalidStructure(format!(
                    "(e{i} e{j}) e{k} != e{i} (e{j} e{k})"
                )));
            }
            Ok(())
        };
        if d <= 6 {
            for i in 0..d {
                for j in 0..d {
                    for k in 0..d {
                        check(i, j, k)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..4 * d * d {
                check(
                    rng.gen_range(0..d),
                    rng.gen_range(0..d),
                    rng.gen_range(0..d),
                )?;
            }
        }
        for i in 0..d {
            if self.mul(&self.unity, &self.basis(i)) != self.basis(i) {
                return Err(Error::InvalidStructure(format!("unity does not fix e{i}")));
            }
        }
        Ok(())
    }

    /// Replace the involution; `matrix` has `lambda(e_j)` in column `j`.
    pub fn with_involution(mut self, matrix: Matrix<Scalar>) -> Result<Self> {
        let d = self.dim;
        if matrix.rows() != d || matrix.cols() != d {
            return Err(Error::InvalidInvolution(format!(
                "expected a {d}x{d} matrix"
            )));
        }
        self.lambda = matrix;
        self.check_involution()?;
        Ok(self)
    }

    fn check_involution(&self) -> Result<()> {
        let d = self.dim;
        let b = &self.base;
        if !linalg::equal(
            b,
            &linalg::mul(b, &self.lambda, &self.lambda),
            &linalg::identity(b, d),
        ) {
            return Err(Error::InvalidInvolution(
                "lambda does not square to the identity".into(),
            ));
        }
        if self.conj(&self.unity) != self.unity {
            return Err(Error::InvalidInvolution("lambda(1) != 1".into()));
        }
        for i in 0..d {
            for j in 0..=i {
                let lhs = self.conj(&self.table[i * d + j]);
                let rhs = self.mul(&self.lambda.col(i), &self.lambda.col(j));
                if lhs != rhs {
                    return Err(Error::InvalidInvolution(format!(
                        "lambda(e{i} e{j}) != lambda(e{i}) lambda(e{j})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// The base field itself.
    pub fn field(base: BaseField) -> Self {
        FiniteAlgebra {
            base,
            dim: 1,
            table: vec![vec![base.one()]],
            unity: vec![base.one()],
            lambda: linalg::identity(&base, 1),
            shape: Shape::Field,
            field: true,
        }
    }

    /// `A x B` with the involution acting factorwise.
    pub fn product(a: FiniteAlgebra, b: FiniteAlgebra) -> Result<Self> {
        Self::product_impl(a, b, false)
    }

    /// `A x A` with `(a, b) -> (lambda b, lambda a)`.
    pub fn swap(a: FiniteAlgebra) -> Result<Self> {
        Self::product_impl(a.clone(), a, true)
    }

    fn product_impl(a: FiniteAlgebra, b: FiniteAlgebra, swap: bool) -> Result<Self> {
        if a.base != b.base {
            return Err(Error::RingMismatch(
                "factors over different base fields".into(),
            ));
        }
        let base = a.base;
        let (da, db) = (a.dim, b.dim);
        let d = da + db;
        let split = |x: &[Scalar]| (x[..da].to_vec(), x[da..].to_vec());
        let join = |x: AlgElem, y: AlgElem| [x, y].concat();
        let mut table = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                let (xi, yi) = split(&unit_vec(base, d, i));
                let (xj, yj) = split(&unit_vec(base, d, j));
                table.push(join(a.mul(&xi, &xj), b.mul(&yi, &yj)));
            }
        }
        let lambda = Matrix::from_fn(d, d, |r, c| {
            let (x, y) = split(&unit_vec(base, d, c));
            let img = if swap {
                join(a.conj(&y), a.conj(&x))
            } else {
                join(a.conj(&x), b.conj(&y))
            };
            img[r].clone()
        });
        let alg = FiniteAlgebra {
            base,
            dim: d,
            table,
            unity: join(a.unity.clone(), b.unity.clone()),
            lambda,
            shape: Shape::Product {
                left: Box::new(a),
                right: Box::new(b),
                swap,
            },
            field: false,
        };
        alg.check_involution()?;
        Ok(alg)
    }

    /// `A[t]/(t^2 - s)` with `lambda(t) = -t` when `flip`, else `t`. `s` must be
    /// a unit of `A` fixed by its involution.
    pub fn ext(a: FiniteAlgebra, s: AlgElem, flip: bool) -> Result<Self> {
        if !a.contains(&s) {
            return Err(Error::RingMismatch(
                "adjoined square is not in the algebra".into(),
            ));
        }
        if !a.is_fixed(&s) {
            return Err(Error::InvalidInvolution(format!(
                "{} is not fixed by the involution",
                a.format(&s)
            )));
        }
        if a.characteristic() == 2 {
            return Err(Error::CharacteristicTwo(
                "quadratic extensions need 2 invertible".into(),
            ));
        }
        if !a.is_unit(&s) {
            return Err(Error::Unsupported(format!(
                "{} is not a unit; the extension would not be etale",
                a.format(&s)
            )));
        }
        let mut alg = Self::double(a, s, flip)?;
        alg.field = alg.shape_is_field();
        Ok(alg)
    }

    /// `A[t]/(t^2)` with `lambda(t) = -t` when `flip`, else `t`.
    pub fn thicken(a: FiniteAlgebra, flip: bool) -> Result<Self> {
        let s = a.zero();
        Self::double(a, s, flip)
    }

    fn double(a: FiniteAlgebra, s: AlgElem, flip: bool) -> Result<Self> {
        let base = a.base;
        let da = a.dim;
        let d = 2 * da;
        let split = |x: &[Scalar]| (x[..da].to_vec(), x[da..].to_vec());
        let mut table = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                let (x0, x1) = split(&unit_vec(base, d, i));
                let (y0, y1) = split(&unit_vec(base, d, j));
                let c0 = a.add(&a.mul(&x0, &y0), &a.mul(&a.mul(&x1, &y1), &s));
                let c1 = a.add(&a.mul(&x0, &y1), &a.mul(&x1, &y0));
                table.push([c0, c1].concat());
            }
        }
        let lambda = Matrix::from_fn(d, d, |r, c| {
            let (x0, x1) = split(&unit_vec(base, d, c));
            let t = if flip {
                a.neg(&a.conj(&x1))
            } else {
                a.conj(&x1)
            };
            [a.conj(&x0), t].concat()[r].clone()
        });
        let var = format!("t{}", a.chain_len() + 1);
        let alg = FiniteAlgebra {
            base,
            dim: d,
            table,
            unity: [a.unity.clone(), a.zero()].concat(),
            lambda,
            shape: Shape::Ext {
                base: Box::new(a),
                s,
                var,
            },
            field: false,
        };
        alg.check_involution()?;
        Ok(alg)
    }

    /// Number of adjoined generators when the presentation has no products,
    /// which is when monomial names are available.
    fn chain_len(&self) -> usize {
        match &self.shape {
            Shape::Ext { base, .. } => base.chain_len() + 1,
            _ => 0,
        }
    }

    fn shape_is_field(&self) -> bool {
        match &self.shape {
            Shape::Field => true,
            Shape::Ext { base, s, .. } => {
                base.field
                    && !base.is_zero(s)
                    && self.maximal_ideals().map(|m| m.len() == 1).unwrap_or(false)
            }
            _ => false,
        }
    }

    pub fn base(&self) -> BaseField {
        self.base
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unity(&self) -> &AlgElem {
        &self.unity
    }

    pub fn involution_matrix(&self) -> &Matrix<Scalar> {
        &self.lambda
    }

    pub fn basis(&self, i: usize) -> AlgElem {
        unit_vec(self.base, self.dim, i)
    }

    pub fn from_scalar(&self, c: &Scalar) -> AlgElem {
        self.unity.iter().map(|u| self.base.mul(u, c)).collect()
    }

    /// Matrix of multiplication by `a`.
    pub fn regular(&self, a: &AlgElem) -> Matrix<Scalar> {
        let cols: Vec<AlgElem> = (0..self.dim).map(|j| self.mul(a, &self.basis(j))).collect();
        Matrix::from_fn(self.dim, self.dim, |r, c| cols[c][r].clone())
    }

    /// Nilradical, which is the Jacobson radical of an artinian ring. In
    /// characteristic 0 it is the kernel of the trace form; over `F_p` the
    /// Frobenius is linear and the radical is the kernel of a high enough
    /// power of it.
    pub fn radical(&self) -> Vec<AlgElem> {
        let b = &self.base;
        let d = self.dim;
        let m = match b.characteristic() {
            0 => Matrix::from_fn(d, d, |i, j| {
                let l = self.regular(&self.table[i * d + j]);
                b.sum((0..d).map(|k| l.get(k, k)))
            }),
            p => {
                let cols: Vec<AlgElem> = (0..d).map(|j| self.pow(&self.basis(j), p)).collect();
                let frob = Matrix::from_fn(d, d, |r, c| cols[c][r].clone());
                let mut power = frob.clone();
                let mut reach = p as u128;
                while reach < d as u128 {
                    power = linalg::mul(b, &power, &frob);
                    reach *= p as u128;
                }
                power
            }
        };
        linalg::nullspace(b, &m)
    }

    /// Basis of the fixed subring `ker(lambda - id)`.
    pub fn fixed_basis(&self) -> Vec<AlgElem> {
        let b = &self.base;
        linalg::nullspace(
            b,
            &linalg::sub(b, &self.lambda, &linalg::identity(b, self.dim)),
        )
    }

    /// All maximal ideals, for algebras built from the constructors.
    pub fn maximal_ideals(&self) -> Result<Vec<MaximalIdeal>> {
        let maps = self.residue_maps()?;
        Ok(maps
            .into_iter()
            .map(|(field, images)| {
                let kernel = self.kernel_of(&field, &images);
                MaximalIdeal {
                    residue_field: field,
                    images,
                    kernel,
                }
            })
            .collect())
    }

    fn kernel_of(&self, field: &SqrtTower, images: &[TowerElem]) -> Vec<AlgElem> {
        let m = Matrix::from_fn(field.dim(), self.dim, |r, c| images[c][r].clone());
        canonical_span(self.base, &linalg::nullspace(&self.base, &m), self.dim)
    }

    fn residue_maps(&self) -> Result<Vec<(SqrtTower, Vec<TowerElem>)>> {
        let b = self.base;
        match &self.shape {
            Shape::Raw => Err(Error::Unsupported(
                "maximal ideals need a constructor presentation".into(),
            )),
            Shape::Field => {
                let k = SqrtTower::new(b);
                Ok(vec![(k.clone(), vec![k.one()])])
            }
            Shape::Product { left, right, .. } => {
                let mut out = Vec::new();
                for (k, imgs) in left.residue_maps()? {
                    let z = k.zero();
                    out.push((
                        k,
                        imgs.into_iter()
                            .chain(std::iter::repeat_n(z, right.dim))
                            .collect(),
                    ));
                }
                for (k, imgs) in right.residue_maps()? {
                    let z = k.zero();
                    out.push((k, std::iter::repeat_n(z, left.dim).chain(imgs).collect()));
                }
                Ok(out)
            }
            Shape::Ext { base, s, .. } => {
                let mut out = Vec::new();
                for (k, imgs) in base.residue_maps()? {
                    let c = k.sum(
                        s.iter()
                            .zip(&imgs)
                            .map(|(si, e)| k.mul(&k.from_scalar(si.clone()), e))
                            .collect::<Vec<_>>()
                            .iter(),
                    );
                    if k.is_zero(&c) {
                        let z = k.zero();
                        out.push((
                            k,
                            imgs.iter()
                                .cloned()
                                .chain(std::iter::repeat_n(z, base.dim))
                                .collect(),
                        ));
                    } else if let Some(w) = k.sqrt(&c) {
                        for root in [w.clone(), k.neg(&w)] {
                            let t: Vec<TowerElem> = imgs.iter().map(|e| k.mul(e, &root)).collect();
                            out.push((k.clone(), imgs.iter().cloned().chain(t).collect()));
                        }
                    } else {
                        let big = k.adjoin(c, 1)?;
                        let r = big.gen(big.len());
                        let lifted: Vec<TowerElem> = imgs.iter().map(|e| big.embed(e)).collect();
                        let t: Vec<TowerElem> = lifted.iter().map(|e| big.mul(e, &r)).collect();
                        out.push((big, lifted.into_iter().chain(t).collect()));
                    }
                }
                Ok(out)
            }
        }
    }

    /// Index permutation of the maximal ideals induced by `lambda`.
    pub fn ideal_permutation(&self, ideals: &[MaximalIdeal]) -> Result<Vec<usize>> {
        ideals
            .iter()
            .map(|m| {
                let image: Vec<AlgElem> = m.kernel.iter().map(|v| self.conj(v)).collect();
                let image = canonical_span(self.base, &image, self.dim);
                ideals
                    .iter()
                    .position(|n| n.kernel == image)
                    .ok_or_else(|| {
                        Error::Verification("lambda does not permute the maximal ideals".into())
                    })
            })
            .collect()
    }

    /// Factor algebras of a product presentation.
    pub fn product_factors(&self) -> Option<(&FiniteAlgebra, &FiniteAlgebra)> {
        match &self.shape {
            Shape::Product { left, right, .. } => Some((left, right)),
            _ => None,
        }
    }

    fn monomial_names(&self) -> Option<Vec<String>> {
        match &self.shape {
            Shape::Field => Some(vec![String::new()]),
            Shape::Ext { base, var, .. } => {
                let inner = base.monomial_names()?;
                let with: Vec<String> = inner
                    .iter()
                    .map(|m| {
                        if m.is_empty() {
                            var.clone()
                        } else {
                            format!("{m}*{var}")
                        }
                    })
                    .collect();
                Some(inner.into_iter().chain(with).collect())
            }
            _ => None,
        }
    }
}

/// Reduced row-echelon form of the span, as a sorted list of rows.
fn canonical_span(base: BaseField, vectors: &[AlgElem], dim: usize) -> Vec<AlgElem> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let mut m = Matrix::from_fn(vectors.len(), dim, |r, c| vectors[r][c].clone());
    let pivots = linalg::rref(&base, &mut m);
    (0..pivots.len())
        .map(|r| (0..dim).map(|c| m.get(r, c).clone()).collect())
        .collect()
}

fn unit_vec(base: BaseField, d: usize, i: usize) -> AlgElem {
    let mut v = vec![base.zero(); d];
    v[i] = base.one();
    v
}

impl Ring for FiniteAlgebra {
    type Elem = AlgElem;

    fn zero(&self) -> AlgElem {
        vec![self.base.zero(); self.dim]
    }

    fn one(&self) -> AlgElem {
        self.unity.clone()
    }

    fn from_int(&self, n: i64) -> AlgElem {
        self.from_scalar(&self.base.int(n))
    }

    fn add(&self, a: &AlgElem, b: &AlgElem) -> AlgElem {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }

    fn neg(&self, a: &AlgElem) -> AlgElem {
        a.iter().map(|x| self.base.neg(x)).collect()
    }

    fn mul(&self, a: &AlgElem, b: &AlgElem) -> AlgElem {
        let b_ = &self.base;
        let d = self.dim;
        let mut out = self.zero();
        for (i, x) in a.iter().enumerate() {
            if b_.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if b_.is_zero(y) {
                    continue;
                }
                let c = b_.mul(x, y);
                for (k, t) in self.table[i * d + j].iter().enumerate() {
                    if !b_.is_zero(t) {
                        out[k] = b_.add(&out[k], &b_.mul(&c, t));
                    }
                }
            }
        }
        out
    }

    fn is_zero(&self, a: &AlgElem) -> bool {
        a.iter().all(|x| self.base.is_zero(x))
    }

    fn equal(&self, a: &AlgElem, b: &AlgElem) -> bool {
        a == b
    }

    fn invert(&self, a: &AlgElem) -> std::result::Result<AlgElem, NonUnit<AlgElem>> {
        if self.is_zero(a) {
            return Err(NonUnit::new(NonUnitWitness::Zero));
        }
        let l = self.regular(a);
        match linalg::solve(&self.base, &l, &self.unity) {
            Some(y) => Ok(y),
            None => {
                let w = linalg::nullspace(&self.base, &l)
                    .into_iter()
                    .next()
                    .expect("singular regular representation");
                Err(NonUnit::new(NonUnitWitness::ZeroDivisor(w)))
            }
        }
    }

    fn is_field(&self) -> bool {
        self.field
    }

    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }

    fn contains(&self, a: &AlgElem) -> bool {
        a.len() == self.dim && a.iter().all(|x| self.base.contains(x))
    }

    fn format(&self, a: &AlgElem) -> String {
        if let Shape::Product { left, right, .. } = &self.shape {
            let (x, y) = a.split_at(left.dim);
            return format!(
                "({} | {})",
                left.format(&x.to_vec()),
                right.format(&y.to_vec())
            );
        }
        let names = self.monomial_names().unwrap_or_else(|| {
            (0..self.dim)
                .map(|i| {
                    if self.unity == self.basis(i) {
                        String::new()
                    } else {
                        format!("e{i}")
                    }
                })
                .collect()
        });
        format_terms(
            a.iter()
                .zip(names)
                .filter(|(c, _)| !self.base.is_zero(c))
                .map(|(c, m)| (c.clone(), m))
                .collect(),
        )
    }
}

impl InvolutiveRing for FiniteAlgebra {
    fn conj(&self, a: &AlgElem) -> AlgElem {
        let b = &self.base;
        (0..self.dim)
            .map(|r| {
                b.sum(
                    a.iter()
                        .enumerate()
                        .map(|(c, x)| b.mul(self.lambda.get(r, c), x))
                        .collect::<Vec<_>>()
                        .iter(),
                )
            })
            .collect()
    }

    fn search_basis(&self) -> Vec<AlgElem> {
        (0..self.dim).map(|i| self.basis(i)).collect()
    }
}

impl ExprRing for FiniteAlgebra {
    fn from_rational(&self, q: &BigRational) -> Result<AlgElem> {
        Ok(self.from_scalar(&self.base.rational(q.clone())?))
    }

    fn generator(&self, name: &str) -> Option<AlgElem> {
        if let Some(names) = self.monomial_names() {
            return names.iter().position(|m| m == name).map(|i| self.basis(i));
        }
        let i: usize = name.strip_prefix('e')?.parse().ok()?;
        (i < self.dim && self.product_factors().is_none()).then(|| self.basis(i))
    }

    fn factors(&self) -> Option<(Self, Self)> {
        self.product_factors().map(|(a, b)| (a.clone(), b.clone()))
    }

    fn pair(&self, a: &AlgElem, b: &AlgElem) -> Option<AlgElem> {
        let (l, r) = self.product_factors()?;
        (l.contains(a) && r.contains(b)).then(|| [a.clone(), b.clone()].concat())
    }
}

/// Random constructor trees of bounded dimension, for fuzzing.
pub fn random_algebra(rng: &mut impl rand::Rng, base: BaseField, max_dim: usize) -> FiniteAlgebra {
    loop {
        if let Some(a) = random_tree(rng, base, max_dim) {
            return a;
        }
    }
}

fn random_tree(rng: &mut impl rand::Rng, base: BaseField, max_dim: usize) -> Option<FiniteAlgebra> {
    let field = FiniteAlgebra::field(base);
    if max_dim < 2 {
        return Some(field);
    }
    let choices: &[u8] = if max_dim >= 4 {
        &[0, 1, 2, 3, 4]
    } else {
        &[0, 1, 3, 4]
    };
    match *choices.choose(rng)? {
        0 => Some(field),
        1 => {
            let a = random_tree(rng, base, max_dim / 2)?;
            let b = random_tree(rng, base, max_dim - a.dim)?;
            FiniteAlgebra::product(a, b).ok()
        }
        2 => FiniteAlgebra::swap(random_tree(rng, base, max_dim / 2)?).ok(),
        3 => {
            let a = random_tree(rng, base, max_dim / 2)?;
            let fixed = a.fixed_basis();
            let s = fixed.iter().fold(a.zero(), |acc, f| {
                let c = base.int(rng.gen_range(-4..=4));
                a.add(&acc, &f.iter().map(|x| base.mul(x, &c)).collect())
            });
            FiniteAlgebra::ext(a, s, rng.gen_bool(0.5)).ok()
        }
        _ => FiniteAlgebra::thicken(random_tree(rng, base, max_dim / 2)?, rng.gen_bool(0.5)).ok(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_element;
    use proptest::prelude::*;

    fn q() -> BaseField {
        BaseField::Rationals
    }

    fn qsqrt(n: i64) -> FiniteAlgebra {
        let k = FiniteAlgebra::field(q());
        FiniteAlgebra::ext(k.clone(), k.from_int(n), true).unwrap()
    }

    fn dual_numbers() -> FiniteAlgebra {
        FiniteAlgebra::thicken(FiniteAlgebra::field(q()), true).unwrap()
    }

    fn split() -> FiniteAlgebra {
        FiniteAlgebra::swap(FiniteAlgebra::field(q())).unwrap()
    }

    #[test]
    fn defining_relations() {
        let a = qsqrt(2);
        let t = a.generator("t1").unwrap();
        assert_eq!(a.mul(&t, &t), a.from_int(2));
        assert_eq!(a.format(&a.mul(&t, &t)), "2");
    }

    #[test]
    fn inverses_and_witnesses() {
        let s = split();
        let e = parse_element(&s, "(1 | 0)").unwrap();
        assert_eq!(
            s.invert(&e),
            Err(NonUnit::new(NonUnitWitness::ZeroDivisor(vec![
                q().zero(),
                q().one()
            ])))
        );
        let d = dual_numbers();
        let x = parse_element(&d, "1 + t1").unwrap();
        let y = d.invert(&x).unwrap();
        assert_eq!(d.format(&y), "1 - t1");
        assert_eq!(d.mul(&x, &y), d.one());
    }

    #[test]
    fn rejects_bad_tables() {
        let b = q();
        let b_int = |n| b.int(n);
        let (z, o) = (b.zero(), b.one());
        // e0 e1 = e0 but e1 e0 = 0
        let table = vec![
            vec![o.clone(), z.clone()],
            vec![o.clone(), z.clone()],
            vec![z.clone(), z.clone()],
            vec![z.clone(), o.clone()],
        ];
        assert!(matches!(
            FiniteAlgebra::new(b, 2, table, vec![o.clone(), o.clone()]),
            Err(Error::InvalidStructure(_))
        ));
        // commutative with unity e0 but (e1 e1) e2 = 0 while e1 (e1 e2) = e2
        let v = |a: i64, b: i64, c: i64| vec![b_int(a), b_int(b), b_int(c)];
        let table = vec![
            v(1, 0, 0),
            v(0, 1, 0),
            v(0, 0, 1),
            v(0, 1, 0),
            v(0, 0, 1),
            v(0, 1, 0),
            v(0, 0, 1),
            v(0, 1, 0),
            v(0, 0, 0),
        ];
        assert!(matches!(
            FiniteAlgebra::new(b, 3, table, v(1, 0, 0)),
            Err(Error::InvalidStructure(_))
        ));
    }

    #[test]
    fn radicals() {
        let d = dual_numbers();
        assert_eq!(d.radical(), vec![vec![q().zero(), q().one()]]);
        assert!(qsqrt(2).radical().is_empty());
        // Q[t]/(t^2 - t) as a raw table: basis 1, t
        let b = q();
        let (z, o) = (b.zero(), b.one());
        let table = vec![
            vec![o.clone(), z.clone()],
            vec![z.clone(), o.clone()],
            vec![z.clone(), o.clone()],
            vec![z.clone(), o.clone()],
        ];
        let a = FiniteAlgebra::new(b, 2, table, vec![o.clone(), z.clone()]).unwrap();
        assert!(a.radical().is_empty());
        // brute force: no nonzero c0 + c1 t with small coefficients is nilpotent
        for c0 in -3..=3 {
            for c1 in -3..=3 {
                let x = vec![b.int(c0), b.int(c1)];
                assert_eq!(a.is_zero(&a.pow(&x, 2)), c0 == 0 && c1 == 0);
            }
        }
    }

    #[test]
    fn radical_over_prime_field() {
        let f5 = BaseField::prime(5).unwrap();
        let k = FiniteAlgebra::field(f5);
        let a = FiniteAlgebra::thicken(FiniteAlgebra::thicken(k, false).unwrap(), true).unwrap();
        let rad = a.radical();
        assert_eq!(rad.len(), 3);
        for v in &rad {
            assert!(a.is_zero(&a.pow(v, a.dim() as u64)));
        }
    }

    #[test]
    fn maximal_ideal_counts() {
        assert_eq!(split().maximal_ideals().unwrap().len(), 2);
        assert_eq!(qsqrt(2).maximal_ideals().unwrap().len(), 1);
        let a = qsqrt(9);
        let ms = a.maximal_ideals().unwrap();
        assert_eq!(ms.len(), 2);
        let t = a.generator("t1").unwrap();
        let mut roots = Vec::new();
        for m in &ms {
            let k = &m.residue_field;
            let img = &m.images[1];
            assert_eq!(k.sub(&k.mul(img, img), &k.from_int(9)), k.zero());
            roots.push(k.as_scalar(img).unwrap());
            // t -/+ root lies in the kernel
            let root = roots.last().unwrap();
            let v = a.sub(&t, &a.from_scalar(root));
            let mat = Matrix::from_fn(k.dim(), a.dim(), |r, c| m.images[c][r].clone());
            let image = linalg::mul(
                &q(),
                &mat,
                &Matrix::from_fn(a.dim(), 1, |r, _| v[r].clone()),
            );
            assert!(linalg::is_zero(&q(), &image));
        }
        roots.sort_by_key(|r| r.to_string());
        assert_eq!(roots, vec![q().int(-3), q().int(3)]);
    }

    #[test]
    fn swap_permutes_ideals() {
        let s = split();
        let ms = s.maximal_ideals().unwrap();
        assert_eq!(s.ideal_permutation(&ms).unwrap(), vec![1, 0]);
        let p =
            FiniteAlgebra::product(FiniteAlgebra::field(q()), FiniteAlgebra::field(q())).unwrap();
        let ms = p.maximal_ideals().unwrap();
        assert_eq!(p.ideal_permutation(&ms).unwrap(), vec![0, 1]);
    }

    #[test]
    fn format_round_trip() {
        let a = FiniteAlgebra::ext(split(), parse_element(&split(), "(2 | 2)").unwrap(), false)
            .unwrap();
        for x in [a.from_int(3), a.basis(1), a.add(&a.basis(0), &a.basis(3))] {
            assert_eq!(parse_element(&a, &a.format(&x)).unwrap(), x);
        }
        let s = split();
        let x = parse_element(&s, "(4 | 1/4)").unwrap();
        assert_eq!(s.format(&x), "(4 | 1/4)");
    }

    proptest! {
        #[test]
        fn invert_iff_regular_determinant(seed in any::<u64>(), coeffs in proptest::collection::vec(-3i64..=3, 8)) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_algebra(&mut rng, q(), 6);
            let x: AlgElem = (0..a.dim()).map(|i| q().int(coeffs[i % coeffs.len()] + i as i64 % 2)).collect();
            let det = linalg::det(&q(), &a.regular(&x));
            match a.invert(&x) {
                Ok(y) => {
                    prop_assert!(!q().is_zero(&det));
                    prop_assert_eq!(a.mul(&x, &y), a.one());
                }
                Err(e) => {
                    prop_assert!(q().is_zero(&det));
                    if let NonUnitWitness::ZeroDivisor(w) = e.witness {
                        prop_assert!(a.is_zero(&a.mul(&x, &w)) && !a.is_zero(&w));
                    }
                }
            }
        }

        #[test]
        fn radical_is_nilpotent(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_algebra(&mut rng, q(), 6);
            for v in a.radical() {
                prop_assert!(a.is_zero(&a.pow(&v, a.dim() as u64)));
            }
        }

        #[test]
        fn involution_is_an_automorphism(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_algebra(&mut rng, q(), 6);
            prop_assert!(a.check_involution().is_ok());
            let ms = a.maximal_ideals().unwrap();
            let perm = a.ideal_permutation(&ms).unwrap();
            for (i, &j) in perm.iter().enumerate() {
                prop_assert_eq!(perm[j], i);
            }
        }
    }
}
