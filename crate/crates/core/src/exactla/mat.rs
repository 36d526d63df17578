use std::fmt;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::{Field, FpRing, QRing, Ring, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
enum Store {
    Fp { p: u32, v: Vec<u32> },
    Q(Vec<BigRational>),
}

/// Dense row-major matrix over a [`Field`].
///
/// Matrices act on column vectors. Zero-sized shapes are allowed everywhere
/// and behave as the obvious empty maps.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Store,
}

/// Output of [`Mat::reduce`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub rref: Mat,
    pub rank: usize,
    pub pivots: Vec<usize>,
    /// `cols × (cols − rank)`; column `j` is the basis vector attached to the
    /// `j`-th free column (free variable set to 1, other free variables 0).
    pub null_basis: Mat,
}

macro_rules! unary {
    ($m:expr, |$r:ident, $v:ident| $body:expr) => {
        match &$m.data {
            Store::Fp { p, v: $v } => {
                let $r = FpRing(*p);
                Store::Fp { p: *p, v: $body }
            }
            Store::Q($v) => {
                let $r = QRing;
                Store::Q($body)
            }
        }
    };
}

macro_rules! binary {
    ($a:expr, $b:expr, |$r:ident, $x:ident, $y:ident| $body:expr) => {
        match (&$a.data, &$b.data) {
            (Store::Fp { p, v: $x }, Store::Fp { p: q, v: $y }) => {
                assert_eq!(p, q, "matrices over different prime fields");
                let $r = FpRing(*p);
                Store::Fp { p: *p, v: $body }
            }
            (Store::Q($x), Store::Q($y)) => {
                let $r = QRing;
                Store::Q($body)
            }
            _ => panic!("matrices over different fields"),
        }
    };
}

macro_rules! inspect {
    ($m:expr, |$r:ident, $v:ident| $body:expr) => {
        match &$m.data {
            Store::Fp { p, v: $v } => {
                let $r = FpRing(*p);
                $body
            }
            Store::Q($v) => {
                let $r = QRing;
                $body
            }
        }
    };
}

impl Mat {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Mat {
        let data = match field {
            Field::Prime(p) => Store::Fp { p, v: vec![0; rows * cols] },
            Field::Rationals => Store::Q(vec![QRing.zero(); rows * cols]),
        };
        Mat { rows, cols, data }
    }

    pub fn identity(field: Field, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, &field.one());
        }
        m
    }

    /// Row-major integer entries, reduced into `field`.
    pub fn from_i64(field: Field, rows: usize, cols: usize, entries: &[i64]) -> Mat {
        assert_eq!(entries.len(), rows * cols, "entry count does not match shape");
        Mat::from_scalars(
            field,
            rows,
            cols,
            entries.iter().map(|&x| field.from_i64(x)).collect(),
        )
    }

    pub fn from_rows(field: Field, rows: &[Vec<i64>]) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let flat: Vec<i64> = rows.iter().flatten().copied().collect();
        Mat::from_i64(field, r, c, &flat)
    }

    pub fn from_scalars(field: Field, rows: usize, cols: usize, entries: Vec<Scalar>) -> Mat {
        assert_eq!(entries.len(), rows * cols, "entry count does not match shape");
        let data = match field {
            Field::Prime(p) => {
                let r = FpRing(p);
                Store::Fp { p, v: entries.iter().map(|s| r.from_scalar(s)).collect() }
            }
            Field::Rationals => Store::Q(entries.iter().map(|s| QRing.from_scalar(s)).collect()),
        };
        Mat { rows, cols, data }
    }

    /// Builds an `F_p` matrix from residues already reduced mod `p`.
    pub fn from_residues(p: u32, rows: usize, cols: usize, v: Vec<u32>) -> Mat {
        assert_eq!(v.len(), rows * cols);
        debug_assert!(v.iter().all(|&x| x < p));
        Mat { rows, cols, data: Store::Fp { p, v } }
    }

    /// Residues of an `F_p` matrix; `None` over `Q`.
    pub fn residues(&self) -> Option<&[u32]> {
        match &self.data {
            Store::Fp { v, .. } => Some(v),
            Store::Q(_) => None,
        }
    }

    pub fn field(&self) -> Field {
        match self.data {
            Store::Fp { p, .. } => Field::Prime(p),
            Store::Q(_) => Field::Rationals,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        let k = i * self.cols + j;
        inspect!(self, |r, v| r.to_scalar(&v[k]))
    }

    pub fn set(&mut self, i: usize, j: usize, s: &Scalar) {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        let k = i * self.cols + j;
        match &mut self.data {
            Store::Fp { p, v } => v[k] = FpRing(*p).from_scalar(s),
            Store::Q(v) => v[k] = QRing.from_scalar(s),
        }
    }

    pub fn entries(&self) -> Vec<Scalar> {
        inspect!(self, |r, v| v.iter().map(|x| r.to_scalar(x)).collect())
    }

    pub fn is_zero(&self) -> bool {
        inspect!(self, |r, v| v.iter().all(|x| r.is_zero(x)))
    }

    pub fn transpose(&self) -> Mat {
        let (m, n) = (self.rows, self.cols);
        let data = unary!(self, |_r, v| {
            let mut out = Vec::with_capacity(m * n);
            for j in 0..n {
                for i in 0..m {
                    out.push(v[i * n + j].clone());
                }
            }
            out
        });
        Mat { rows: n, cols: m, data }
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in add");
        let data = binary!(self, other, |r, x, y| x
            .iter()
            .zip(y)
            .map(|(a, b)| r.add(a, b))
            .collect());
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!(self.shape(), other.shape(), "shape mismatch in sub");
        let data = binary!(self, other, |r, x, y| x
            .iter()
            .zip(y)
            .map(|(a, b)| r.sub(a, b))
            .collect());
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Mat {
        let data = unary!(self, |r, v| v.iter().map(|a| r.neg(a)).collect());
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &Scalar) -> Mat {
        let data = unary!(self, |r, v| {
            let c = r.from_scalar(s);
            v.iter().map(|a| r.mul(a, &c)).collect()
        });
        Mat { rows: self.rows, cols: self.cols, data }
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(
            self.cols, other.rows,
            "shape mismatch in mul: {:?} * {:?}",
            self.shape(),
            other.shape()
        );
        let (m, k, n) = (self.rows, self.cols, other.cols);
        let data = binary!(self, other, |r, a, b| matmul(&r, a, b, m, k, n));
        Mat { rows: m, cols: n, data }
    }

    /// `Σ cᵢ·Mᵢ`; all matrices must share a shape.
    pub fn lin_comb(field: Field, rows: usize, cols: usize, terms: &[(Scalar, &Mat)]) -> Mat {
        let mut acc = Mat::zeros(field, rows, cols);
        for (c, m) in terms {
            if c.is_zero() {
                continue;
            }
            acc = acc.add(&m.scale(c));
        }
        acc
    }

    pub fn pow(&self, mut e: u32) -> Mat {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Mat::identity(self.field(), self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Block-diagonal sum.
    pub fn direct_sum(field: Field, blocks: &[&Mat]) -> Mat {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Mat::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.paste(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Writes `block` with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &Mat) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        let cols = self.cols;
        match (&mut self.data, &block.data) {
            (Store::Fp { v, .. }, Store::Fp { v: b, .. }) => {
                for i in 0..block.rows {
                    let dst = (r0 + i) * cols + c0;
                    v[dst..dst + block.cols].copy_from_slice(&b[i * block.cols..(i + 1) * block.cols]);
                }
            }
            (Store::Q(v), Store::Q(b)) => {
                for i in 0..block.rows {
                    let dst = (r0 + i) * cols + c0;
                    v[dst..dst + block.cols]
                        .clone_from_slice(&b[i * block.cols..(i + 1) * block.cols]);
                }
            }
            _ => panic!("matrices over different fields"),
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Mat {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols, "block out of range");
        let n = self.cols;
        let data = unary!(self, |_r, v| {
            let mut out = Vec::with_capacity(rows * cols);
            for i in 0..rows {
                let s = (r0 + i) * n + c0;
                out.extend_from_slice(&v[s..s + cols]);
            }
            out
        });
        Mat { rows, cols, data }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Mat {
        let n = self.cols;
        let m = self.rows;
        let data = unary!(self, |_r, v| {
            let mut out = Vec::with_capacity(m * idx.len());
            for i in 0..m {
                for &j in idx {
                    out.push(v[i * n + j].clone());
                }
            }
            out
        });
        Mat { rows: m, cols: idx.len(), data }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        let n = self.cols;
        let data = unary!(self, |_r, v| {
            let mut out = Vec::with_capacity(n * idx.len());
            for &i in idx {
                out.extend_from_slice(&v[i * n..(i + 1) * n]);
            }
            out
        });
        Mat { rows: idx.len(), cols: n, data }
    }

    pub fn column(&self, j: usize) -> Mat {
        self.select_cols(&[j])
    }

    pub fn hstack(field: Field, rows: usize, parts: &[&Mat]) -> Mat {
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Mat::zeros(field, rows, cols);
        let mut c0 = 0;
        for m in parts {
            assert_eq!(m.rows, rows, "hstack row mismatch");
            out.paste(0, c0, m);
            c0 += m.cols;
        }
        out
    }

    pub fn vstack(field: Field, cols: usize, parts: &[&Mat]) -> Mat {
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut out = Mat::zeros(field, rows, cols);
        let mut r0 = 0;
        for m in parts {
            assert_eq!(m.cols, cols, "vstack column mismatch");
            out.paste(r0, 0, m);
            r0 += m.rows;
        }
        out
    }

    /// Reduced row-echelon form with first-nonzero pivoting, plus a null-space basis.
    pub fn reduce(&self) -> Reduction {
        let (m, n) = (self.rows, self.cols);
        let mut rref = self.clone();
        let pivots = match &mut rref.data {
            Store::Fp { p, v } => rref_in_place(&FpRing(*p), v, m, n),
            Store::Q(v) => rref_in_place(&QRing, v, m, n),
        };
        let rank = pivots.len();
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let field = self.field();
        let mut null_basis = Mat::zeros(field, n, free.len());
        for (k, &fc) in free.iter().enumerate() {
            null_basis.set(fc, k, &field.one());
            for (row, &pc) in pivots.iter().enumerate() {
                let e = rref.get(row, fc);
                if !e.is_zero() {
                    null_basis.set(pc, k, &field.neg(&e));
                }
            }
        }
        Reduction { rref, rank, pivots, null_basis }
    }

    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        let (m, n) = (self.rows, self.cols);
        match &mut work.data {
            Store::Fp { p, v } => rref_in_place(&FpRing(*p), v, m, n).len(),
            Store::Q(v) => rref_in_place(&QRing, v, m, n).len(),
        }
    }

    /// Columns spanning `{x : A x = 0}`.
    pub fn null_space(&self) -> Mat {
        self.reduce().null_basis
    }

    /// Rows spanning `{y : y A = 0}`.
    pub fn left_null_space(&self) -> Mat {
        self.transpose().null_space().transpose()
    }

    /// The pivot columns of `self`: a basis of the column space drawn from its own columns.
    pub fn column_basis(&self) -> Mat {
        let red = self.reduce();
        self.select_cols(&red.pivots)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        self.solve(&Mat::identity(self.field(), self.rows))
    }

    /// Some `X` with `self · X = rhs`, if the system is consistent.
    pub fn solve(&self, rhs: &Mat) -> Option<Mat> {
        assert_eq!(self.rows, rhs.rows, "solve: row mismatch");
        let field = self.field();
        let aug = Mat::hstack(field, self.rows, &[self, rhs]);
        let red = aug.reduce();
        let n = self.cols;
        if red.pivots.iter().any(|&c| c >= n) {
            return None;
        }
        let mut x = Mat::zeros(field, n, rhs.cols);
        for (row, &pc) in red.pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(pc, j, &red.rref.get(row, n + j));
            }
        }
        Some(x)
    }

    /// Exact nilpotency test: `A^n = 0` for an `n × n` matrix.
    pub fn is_nilpotent(&self) -> bool {
        assert!(self.is_square());
        self.pow(self.rows as u32).is_zero()
    }

    pub fn trace(&self) -> Scalar {
        assert!(self.is_square());
        let f = self.field();
        (0..self.rows).fold(f.zero(), |acc, i| f.add(&acc, &self.get(i, i)))
    }

    /// Lexicographic key used for canonical orderings.
    pub fn sort_key(&self) -> Vec<Scalar> {
        self.entries()
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

fn matmul<R: Ring>(r: &R, a: &[R::E], b: &[R::E], m: usize, k: usize, n: usize) -> Vec<R::E> {
    let mut out = vec![r.zero(); m * n];
    for i in 0..m {
        for l in 0..k {
            let x = &a[i * k + l];
            if r.is_zero(x) {
                continue;
            }
            for j in 0..n {
                let y = &b[l * n + j];
                if !r.is_zero(y) {
                    out[i * n + j] = r.add(&out[i * n + j], &r.mul(x, y));
                }
            }
        }
    }
    out
}

/// Gauss–Jordan elimination in place; returns the pivot columns.
pub(crate) fn rref_in_place<R: Ring>(r: &R, a: &mut [R::E], m: usize, n: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        if row == m {
            break;
        }
        let Some(pr) = (row..m).find(|&i| !r.is_zero(&a[i * n + col])) else {
            continue;
        };
        if pr != row {
            for j in 0..n {
                a.swap(pr * n + j, row * n + j);
            }
        }
        let inv = r.inv(&a[row * n + col]);
        for j in col..n {
            a[row * n + j] = r.mul(&a[row * n + j], &inv);
        }
        for i in 0..m {
            if i == row || r.is_zero(&a[i * n + col]) {
                continue;
            }
            let f = a[i * n + col].clone();
            for j in col..n {
                if r.is_zero(&a[row * n + j]) {
                    continue;
                }
                let t = r.mul(&f, &a[row * n + j]);
                a[i * n + j] = r.sub(&a[i * n + j], &t);
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_over_f2() {
        let red = Mat::identity(Field::Prime(2), 2).reduce();
        assert_eq!(red.rank, 2);
        assert_eq!(red.null_basis.cols(), 0);
    }

    #[test]
    fn zero_matrix_over_q() {
        let red = Mat::zeros(Field::Rationals, 3, 4).reduce();
        assert_eq!(red.rank, 0);
        assert_eq!(red.null_basis, Mat::identity(Field::Rationals, 4));
    }

    #[test]
    fn rank_one_over_f5() {
        let f = Field::Prime(5);
        let a = Mat::from_rows(f, &[vec![1, 2], vec![2, 4]]);
        let red = a.reduce();
        assert_eq!(red.rank, 1);
        // (-2, 1) = (3, 1) mod 5; 1*3 + 2*1 = 5 = 0, 2*3 + 4*1 = 10 = 0
        assert_eq!(red.null_basis, Mat::from_rows(f, &[vec![3], vec![1]]));
        assert!(a.mul(&red.null_basis).is_zero());
    }

    #[test]
    fn inverse_and_solve() {
        let q = Field::Rationals;
        let a = Mat::from_rows(q, &[vec![2, 1], vec![1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Mat::identity(q, 2));
        let singular = Mat::from_rows(q, &[vec![1, 2], vec![2, 4]]);
        assert!(singular.inverse().is_none());
        let rhs = Mat::from_rows(q, &[vec![1], vec![3]]);
        assert!(singular.solve(&rhs).is_none());
        let rhs = Mat::from_rows(q, &[vec![1], vec![2]]);
        let x = singular.solve(&rhs).unwrap();
        assert_eq!(singular.mul(&x), rhs);
    }

    #[test]
    fn empty_shapes() {
        let f = Field::Prime(3);
        let a = Mat::zeros(f, 0, 3);
        assert_eq!(a.reduce().null_basis, Mat::identity(f, 3));
        let b = Mat::zeros(f, 2, 0);
        assert_eq!(b.mul(&Mat::zeros(f, 0, 4)), Mat::zeros(f, 2, 4));
        assert!(Mat::zeros(f, 0, 0).is_invertible());
    }

    #[test]
    fn nilpotent_detection() {
        let f = Field::Prime(2);
        assert!(Mat::from_rows(f, &[vec![0, 1], vec![0, 0]]).is_nilpotent());
        assert!(!Mat::from_rows(f, &[vec![1, 1], vec![0, 0]]).is_nilpotent());
    }
}
