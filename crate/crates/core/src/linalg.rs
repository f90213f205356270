//! Dense matrices over a ring context.
//!
//! Determinants and inverses use Gauss–Jordan elimination over fields and the
//! division-free Berkowitz characteristic polynomial otherwise.

use crate::error::{Error, Result};
use crate::ring::{InvolutiveRing, Ring};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn new(rows: usize, cols: usize, data: Vec<E>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has the wrong length");
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidGram("ragged rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[E] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        self.data
            .chunks(self.cols.max(1))
            .take(self.rows)
            .map(<[E]>::to_vec)
            .collect()
    }

    pub fn col(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<F: Clone>(&self, f: impl Fn(&E) -> F) -> Matrix<F> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |i, j| self.get(r0 + i, c0 + j).clone())
    }
}

pub fn identity<R: Ring>(ring: &R, n: usize) -> Matrix<R::Elem> {
    Matrix::from_fn(n, n, |i, j| if i == j { ring.one() } else { ring.zero() })
}

pub fn zeros<R: Ring>(ring: &R, rows: usize, cols: usize) -> Matrix<R::Elem> {
    Matrix::from_fn(rows, cols, |_, _| ring.zero())
}

pub fn diagonal<R: Ring>(ring: &R, d: &[R::Elem]) -> Matrix<R::Elem> {
    Matrix::from_fn(d.len(), d.len(), |i, j| {
        if i == j {
            d[i].clone()
        } else {
            ring.zero()
        }
    })
}

/// Elementary matrix `E_ij` of size `n`.
pub fn elementary<R: Ring>(ring: &R, n: usize, i: usize, j: usize) -> Matrix<R::Elem> {
    Matrix::from_fn(n, n, |a, b| {
        if a == i && b == j {
            ring.one()
        } else {
            ring.zero()
        }
    })
}

pub fn mul<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    assert_eq!(a.cols, b.rows, "dimension mismatch in matrix product");
    Matrix::from_fn(a.rows, b.cols, |i, j| {
        let mut acc = ring.zero();
        for k in 0..a.cols {
            let x = a.get(i, k);
            if ring.is_zero(x) {
                continue;
            }
            acc = ring.add(&acc, &ring.mul(x, b.get(k, j)));
        }
        acc
    })
}

pub fn add<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols));
    Matrix::from_fn(a.rows, a.cols, |i, j| ring.add(a.get(i, j), b.get(i, j)))
}

pub fn sub<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols));
    Matrix::from_fn(a.rows, a.cols, |i, j| ring.sub(a.get(i, j), b.get(i, j)))
}

pub fn scale<R: Ring>(ring: &R, c: &R::Elem, a: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    a.map(|x| ring.mul(c, x))
}

pub fn equal<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> bool {
    a.rows == b.rows
        && a.cols == b.cols
        && a.data.iter().zip(&b.data).all(|(x, y)| ring.equal(x, y))
}

pub fn is_zero<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> bool {
    a.data.iter().all(|x| ring.is_zero(x))
}

/// `M^(lambda tr)`: transpose, then apply the involution entrywise.
pub fn conj_transpose<R: InvolutiveRing>(ring: &R, a: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    Matrix::from_fn(a.cols, a.rows, |i, j| ring.conj(a.get(j, i)))
}

pub fn kronecker<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    Matrix::from_fn(a.rows * b.rows, a.cols * b.cols, |i, j| {
        ring.mul(a.get(i / b.rows, j / b.cols), b.get(i % b.rows, j % b.cols))
    })
}

pub fn block_diag<R: Ring>(ring: &R, blocks: &[Matrix<R::Elem>]) -> Matrix<R::Elem> {
    let n: usize = blocks.iter().map(|b| b.rows).sum();
    let m: usize = blocks.iter().map(|b| b.cols).sum();
    let mut out = zeros(ring, n, m);
    let (mut r, mut c) = (0, 0);
    for b in blocks {
        for i in 0..b.rows {
            for j in 0..b.cols {
                out.set(r + i, c + j, b.get(i, j).clone());
            }
        }
        r += b.rows;
        c += b.cols;
    }
    out
}

/// Coefficients `[1, c1, ..., cn]` of `det(tI - M)`, division free.
pub fn charpoly<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> Vec<R::Elem> {
    assert!(m.is_square());
    let n = m.rows;
    if n == 0 {
        return vec![ring.one()];
    }
    if n == 1 {
        return vec![ring.one(), ring.neg(m.get(0, 0))];
    }
    let a = m.get(0, 0).clone();
    let row: Vec<R::Elem> = (1..n).map(|j| m.get(0, j).clone()).collect();
    let sub_m = m.submatrix(1, 1, n - 1, n - 1);
    // diags[k] = -R * A^k * C
    let mut col: Vec<R::Elem> = (1..n).map(|i| m.get(i, 0).clone()).collect();
    let mut diags = vec![ring.one(), ring.neg(&a)];
    for k in 0..n - 1 {
        if k > 0 {
            col = (0..n - 1)
                .map(|i| {
                    let terms: Vec<_> = (0..n - 1)
                        .map(|j| ring.mul(sub_m.get(i, j), &col[j]))
                        .collect();
                    ring.sum(&terms)
                })
                .collect();
        }
        let dot: Vec<_> = row.iter().zip(&col).map(|(r, c)| ring.mul(r, c)).collect();
        diags.push(ring.neg(&ring.sum(&dot)));
    }
    let inner = charpoly(ring, &sub_m);
    // Toeplitz (n+1) x n lower triangular times inner (length n).
    (0..=n)
        .map(|i| {
            let terms: Vec<_> = (0..n)
                .filter(|&j| j <= i)
                .map(|j| ring.mul(&diags[i - j], &inner[j]))
                .collect();
            ring.sum(&terms)
        })
        .collect()
}

pub fn det<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> R::Elem {
    assert!(m.is_square());
    if ring.is_field() {
        return gauss_det(ring, m);
    }
    let n = m.rows;
    let c = charpoly(ring, m);
    if n % 2 == 0 {
        c[n].clone()
    } else {
        ring.neg(&c[n])
    }
}

fn gauss_det<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> R::Elem {
    let n = m.rows;
    let mut a = m.clone();
    let mut d = ring.one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !ring.is_zero(a.get(i, k))) else {
            return ring.zero();
        };
        if p != k {
            for j in 0..n {
                a.data.swap(p * n + j, k * n + j);
            }
            d = ring.neg(&d);
        }
        let piv = a.get(k, k).clone();
        d = ring.mul(&d, &piv);
        let inv = ring.invert(&piv).expect("nonzero pivot in a field");
        for i in k + 1..n {
            let f = ring.mul(a.get(i, k), &inv);
            if ring.is_zero(&f) {
                continue;
            }
            for j in k..n {
                let v = ring.sub(a.get(i, j), &ring.mul(&f, a.get(k, j)));
                a.set(i, j, v);
            }
        }
    }
    d
}

/// Adjugate via Cayley–Hamilton: `adj(M) = (-1)^(n+1) (M^(n-1) + c1 M^(n-2) + ... + c_(n-1) I)`.
pub fn adjugate<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    let n = m.rows;
    if n == 0 {
        return m.clone();
    }
    let c = charpoly(ring, m);
    let mut acc = identity(ring, n);
    for ck in c.iter().take(n).skip(1) {
        acc = add(
            ring,
            &mul(ring, &acc, m),
            &scale(ring, ck, &identity(ring, n)),
        );
    }
    if n % 2 == 0 {
        acc.map(|x| ring.neg(x))
    } else {
        acc
    }
}

pub fn inverse<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> Result<Matrix<R::Elem>> {
    if !m.is_square() {
        return Err(Error::Singular);
    }
    if ring.is_field() {
        return gauss_inverse(ring, m);
    }
    let d = det(ring, m);
    let dinv = ring.invert(&d).map_err(|_| Error::Singular)?;
    Ok(scale(ring, &dinv, &adjugate(ring, m)))
}

fn gauss_inverse<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> Result<Matrix<R::Elem>> {
    let n = m.rows;
    let mut a = m.clone();
    let mut inv = identity(ring, n);
    for k in 0..n {
        let p = (k..n)
            .find(|&i| !ring.is_zero(a.get(i, k)))
            .ok_or(Error::Singular)?;
        if p != k {
            for j in 0..n {
                a.data.swap(p * n + j, k * n + j);
                inv.data.swap(p * n + j, k * n + j);
            }
        }
        let pinv = ring.invert(a.get(k, k)).map_err(|_| Error::Singular)?;
        for j in 0..n {
            a.set(k, j, ring.mul(&pinv, a.get(k, j)));
            inv.set(k, j, ring.mul(&pinv, inv.get(k, j)));
        }
        for i in 0..n {
            if i == k || ring.is_zero(a.get(i, k)) {
                continue;
            }
            let f = a.get(i, k).clone();
            for j in 0..n {
                let v = ring.sub(a.get(i, j), &ring.mul(&f, a.get(k, j)));
                a.set(i, j, v);
                let w = ring.sub(inv.get(i, j), &ring.mul(&f, inv.get(k, j)));
                inv.set(i, j, w);
            }
        }
    }
    Ok(inv)
}

/// Reduced row echelon form over a field; returns the pivot columns.
pub fn rref<R: Ring>(ring: &R, m: &mut Matrix<R::Elem>) -> Vec<usize> {
    debug_assert!(ring.is_field());
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !ring.is_zero(m.get(i, c))) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                m.data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = ring.invert(m.get(r, c)).expect("nonzero pivot");
        for j in 0..cols {
            m.set(r, j, ring.mul(&inv, m.get(r, j)));
        }
        for i in 0..rows {
            if i != r && !ring.is_zero(m.get(i, c)) {
                let f = m.get(i, c).clone();
                for j in 0..cols {
                    let v = ring.sub(m.get(i, j), &ring.mul(&f, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> usize {
    let mut a = m.clone();
    rref(ring, &mut a).len()
}

/// Basis of `{x : M x = 0}` over a field.
pub fn nullspace<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> Vec<Vec<R::Elem>> {
    let mut a = m.clone();
    let pivots = rref(ring, &mut a);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![ring.zero(); m.cols];
            v[f] = ring.one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = ring.neg(a.get(r, f));
            }
            v
        })
        .collect()
}

/// One solution of `M x = b` over a field, if any.
pub fn solve<R: Ring>(ring: &R, m: &Matrix<R::Elem>, b: &[R::Elem]) -> Option<Vec<R::Elem>> {
    let aug = Matrix::from_fn(m.rows, m.cols + 1, |i, j| {
        if j < m.cols {
            m.get(i, j).clone()
        } else {
            b[i].clone()
        }
    });
    let mut a = aug;
    let pivots = rref(ring, &mut a);
    if pivots.last() == Some(&m.cols) {
        return None;
    }
    let mut x = vec![ring.zero(); m.cols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = a.get(r, m.cols).clone();
    }
    Some(x)
}

/// Render entries with the ring's canonical printer.
pub fn format_matrix<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> Vec<Vec<String>> {
    (0..m.rows)
        .map(|i| (0..m.cols).map(|j| ring.format(m.get(i, j))).collect())
        .collect()
}
