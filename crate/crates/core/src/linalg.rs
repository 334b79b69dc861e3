//! Dense exact linear algebra over the rationals.

use num::{BigInt, BigRational, One, Signed, Zero};
use std::fmt;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().ok()?;
            let b: BigInt = b.trim().parse().ok()?;
            if b.is_zero() {
                return None;
            }
            Some(Q::new(a, b))
        }
        None => Some(Q::from_integer(s.parse().ok()?)),
    }
}

pub fn fmt_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Q>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| fmt_q(self.get(r, c))).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>, cols: usize) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix");
            data.extend(row);
        }
        Matrix { rows: r, cols, data }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect(), cols)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<Q>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (c, v) in cols.iter().enumerate() {
            assert_eq!(v.len(), rows);
            for (r, x) in v.iter().enumerate() {
                m.set(r, c, x.clone());
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &Q {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Q) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> Vec<Q> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn col(&self, c: usize) -> Vec<Q> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        let mut m = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(c, r, self.get(r, c).clone());
            }
        }
        m
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut m = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = r * m.cols + c;
                    m.data[idx] += a * b;
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut s = Q::zero();
                for (c, x) in v.iter().enumerate() {
                    if !x.is_zero() {
                        s += self.get(r, c) * x;
                    }
                }
                s
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: &Q) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s).collect() }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(&q(-1))
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(r, c, self.get(r, c).clone());
            }
            for c in 0..other.cols {
                m.set(r, self.cols + c, other.get(r, c).clone());
            }
        }
        m
    }

    pub fn block_diag(blocks: &[Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for r in 0..b.rows {
                for c in 0..b.cols {
                    m.set(r0 + r, c0 + c, b.get(r, c).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut m = Self::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                m.set(i, j, self.get(r, c).clone());
            }
        }
        m
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).recip();
            for c in col..m.cols {
                let v = m.get(row, c) * &inv;
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let sub = m.get(row, c) * &factor;
                    if !sub.is_zero() {
                        let idx = r * m.cols + c;
                        m.data[idx] -= sub;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        self.rref().1.len()
    }

    /// Basis of the right kernel `{x : A x = 0}`; one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Q>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![Q::zero(); self.cols];
            v[free] = Q::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(i, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of `A x = b`, if any.
    pub fn solve(&self, b: &[Q]) -> Option<Vec<Q>> {
        assert_eq!(b.len(), self.rows);
        let aug = self.hstack(&Matrix::from_cols(&[b.to_vec()], self.rows));
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Q::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r.get(i, self.cols).clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(Matrix::zeros(0, 0));
        }
        let aug = self.hstack(&Matrix::identity(n));
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        Some(r.submatrix(&rows, &cols))
    }

    /// Left inverse of a matrix with full column rank.
    pub fn left_inverse(&self) -> Option<Matrix> {
        let t = self.transpose();
        let gram = t.mul(self).inverse()?;
        Some(gram.mul(&t))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn trace(&self) -> Q {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn pow(&self, e: usize) -> Matrix {
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn is_nilpotent(&self) -> bool {
        self.pow(self.rows.max(1)).is_zero()
    }

    pub fn max_abs_bits(&self) -> u64 {
        self.data.iter().map(|x| x.numer().abs().bits() + x.denom().bits()).max().unwrap_or(0)
    }
}

/// Basis (as rows of an echelon matrix) of the span of the given vectors.
pub fn span_basis(vectors: &[Vec<Q>], dim: usize) -> Vec<Vec<Q>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_rows(vectors.to_vec(), dim);
    let (r, pivots) = m.rref();
    (0..pivots.len()).map(|i| r.row(i)).collect()
}

/// Rank of a list of vectors of length `dim`.
pub fn vectors_rank(vectors: &[Vec<Q>], dim: usize) -> usize {
    if vectors.is_empty() || dim == 0 {
        return 0;
    }
    Matrix::from_rows(vectors.to_vec(), dim).rank()
}

/// Coefficients `c` with `sum c_i basis_i = v`, if `v` lies in the span.
pub fn express_in_span(basis: &[Vec<Q>], v: &[Q]) -> Option<Vec<Q>> {
    if basis.is_empty() {
        return if v.iter().all(|x| x.is_zero()) { Some(Vec::new()) } else { None };
    }
    Matrix::from_cols(basis, v.len()).solve(v)
}

pub fn in_span(basis: &[Vec<Q>], v: &[Q]) -> bool {
    express_in_span(basis, v).is_some()
}

/// Indices of vectors from `candidates` extending the span of `base` to a basis
/// of the span of `base` plus `candidates` (greedy, in order).
pub fn complement_indices(base: &[Vec<Q>], candidates: &[Vec<Q>], dim: usize) -> Vec<usize> {
    let mut current: Vec<Vec<Q>> = span_basis(base, dim);
    let mut chosen = Vec::new();
    let mut rank = current.len();
    for (i, c) in candidates.iter().enumerate() {
        let mut trial = current.clone();
        trial.push(c.clone());
        let r = vectors_rank(&trial, dim);
        if r > rank {
            rank = r;
            current = trial;
            chosen.push(i);
        }
    }
    chosen
}

pub fn vec_zero(n: usize) -> Vec<Q> {
    vec![Q::zero(); n]
}

pub fn vec_is_zero(v: &[Q]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn vec_add(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[Q], s: &Q) -> Vec<Q> {
    a.iter().map(|x| x * s).collect()
}

pub fn vec_axpy(acc: &mut [Q], s: &Q, x: &[Q]) {
    if s.is_zero() {
        return;
    }
    for (a, b) in acc.iter_mut().zip(x) {
        if !b.is_zero() {
            *a += s * b;
        }
    }
}

pub fn unit_vec(n: usize, i: usize) -> Vec<Q> {
    let mut v = vec_zero(n);
    v[i] = Q::one();
    v
}

/// Rational roots of a polynomial given by coefficients `c[0] + c[1] t + ...`.
/// Only divisors found by trial division up to `10^6` are tried.
pub fn rational_roots(coeffs: &[Q]) -> Vec<Q> {
    let mut c: Vec<Q> = coeffs.to_vec();
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    if c.len() <= 1 {
        return Vec::new();
    }
    let mut roots = Vec::new();
    let mut lead = 0;
    while c[lead].is_zero() {
        lead += 1;
    }
    if lead > 0 {
        roots.push(Q::zero());
        c.drain(0..lead);
    }
    if c.len() <= 1 {
        return roots;
    }
    let mut l = BigInt::one();
    for x in &c {
        l = num::integer::lcm(l, x.denom().clone());
    }
    let ints: Vec<BigInt> = c.iter().map(|x| (x * Q::from_integer(l.clone())).to_integer()).collect();
    let p_divs = small_divisors(&ints[0]);
    let q_divs = small_divisors(ints.last().unwrap());
    let eval = |t: &Q| -> Q {
        let mut acc = Q::zero();
        for x in c.iter().rev() {
            acc = acc * t + x;
        }
        acc
    };
    for p in &p_divs {
        for qd in &q_divs {
            for sign in [1i64, -1] {
                let cand = Q::new(p * BigInt::from(sign), qd.clone());
                if !roots.contains(&cand) && eval(&cand).is_zero() {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    roots
}

fn small_divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let limit = BigInt::from(1_000_000i64);
    let mut d = BigInt::one();
    while &d * &d <= n && d <= limit {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            let other = &n / &d;
            if other != d {
                out.push(other);
            }
        }
        d += 1;
    }
    out
}

/// Minimal polynomial of a square matrix (monic, low degree first).
pub fn minimal_polynomial(m: &Matrix) -> Vec<Q> {
    let n = m.rows;
    let flat = |a: &Matrix| -> Vec<Q> { (0..n * n).map(|i| a.get(i / n, i % n).clone()).collect() };
    let mut powers = vec![flat(&Matrix::identity(n))];
    let mut cur = Matrix::identity(n);
    loop {
        cur = cur.mul(m);
        let v = flat(&cur);
        if let Some(c) = express_in_span(&powers, &v) {
            let mut poly: Vec<Q> = c.into_iter().map(|x| -x).collect();
            poly.push(Q::one());
            return poly;
        }
        powers.push(v);
    }
}

pub fn eval_poly_matrix(coeffs: &[Q], m: &Matrix) -> Matrix {
    let n = m.rows;
    let mut acc = Matrix::zeros(n, n);
    for c in coeffs.iter().rev() {
        acc = acc.mul(m).add(&Matrix::identity(n).scale(c));
    }
    acc
}
