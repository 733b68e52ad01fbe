//! Dense exact linear algebra over a [`Scalar`] field.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldKind, Scalar};

pub type Vector = Vec<Scalar>;

pub fn zero_vector(field: FieldKind, n: usize) -> Vector {
    vec![Scalar::zero(field); n]
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// `acc += c * v`.
pub fn axpy(acc: &mut [Scalar], c: &Scalar, v: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (a, b) in acc.iter_mut().zip(v) {
        if !b.is_zero() {
            *a = &*a + &(c * b);
        }
    }
}

/// Incrementally built row-echelon basis of a subspace of `k^ncols`.
///
/// Every stored row has a pivot entry equal to one, and each row is zero at
/// the pivots of the rows inserted before it, so reducing in insertion order
/// clears all pivot positions.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: FieldKind,
    ncols: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(field: FieldKind, ncols: usize) -> Self {
        Echelon { field, ncols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let c = -&v[p];
                axpy(&mut v, &c, row);
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        is_zero_vector(&self.reduce(v))
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        debug_assert_eq!(v.len(), self.ncols);
        let r = self.reduce(v);
        match r.iter().position(|c| !c.is_zero()) {
            None => false,
            Some(p) => {
                let inv = r[p].inv().expect("nonzero pivot");
                let r: Vector = r.iter().map(|c| c * &inv).collect();
                self.rows.push(r);
                self.pivots.push(p);
                true
            }
        }
    }

    /// Columns that carry no pivot; they index a basis of the quotient space.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ncols).filter(|&c| !is_pivot[c]).collect()
    }

    pub fn field(&self) -> FieldKind {
        self.field
    }
}

/// Rank of the row space spanned by `rows`.
pub fn rank(field: FieldKind, ncols: usize, rows: &[Vector]) -> usize {
    let mut e = Echelon::new(field, ncols);
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Reduced row-echelon basis of the span of `rows`, sorted by pivot column.
///
/// Each returned row has a unit pivot and is zero at every other pivot.
pub fn rref(field: FieldKind, ncols: usize, rows: &[Vector]) -> Vec<(usize, Vector)> {
    let mut e = Echelon::new(field, ncols);
    for r in rows {
        e.insert(r);
    }
    let mut out: Vec<(usize, Vector)> = e.pivots.iter().copied().zip(e.rows).collect();
    out.sort_by_key(|(p, _)| *p);
    for i in (0..out.len()).rev() {
        let (p, row) = out[i].clone();
        for (j, (_, other)) in out.iter_mut().enumerate() {
            if j != i && !other[p].is_zero() {
                let c = -&other[p];
                axpy(other, &c, &row);
            }
        }
    }
    out
}

/// Basis of `{c : sum_i c_i rows_i = 0}`.
pub fn left_kernel(field: FieldKind, rows: &[Vector]) -> Vec<Vector> {
    let m = rows.len();
    // Echelon on [row | combination]; the combination part tracks provenance.
    let mut basis: Vec<(Vector, Vector, usize)> = Vec::new();
    let mut kernel = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let mut v = row.clone();
        let mut combo = zero_vector(field, m);
        combo[i] = Scalar::one(field);
        for (brow, bcombo, p) in &basis {
            if !v[*p].is_zero() {
                let c = -&v[*p];
                axpy(&mut v, &c, brow);
                axpy(&mut combo, &c, bcombo);
            }
        }
        match v.iter().position(|c| !c.is_zero()) {
            None => kernel.push(combo),
            Some(p) => {
                let inv = v[p].inv().unwrap();
                let v: Vector = v.iter().map(|c| c * &inv).collect();
                let combo: Vector = combo.iter().map(|c| c * &inv).collect();
                basis.push((v, combo, p));
            }
        }
    }
    kernel
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    field: FieldKind,
    nrows: usize,
    ncols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: FieldKind, nrows: usize, ncols: usize) -> Self {
        Matrix { field, nrows, ncols, data: zero_vector(field, nrows * ncols) }
    }

    pub fn identity(field: FieldKind, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one(field));
        }
        m
    }

    pub fn from_rows(field: FieldKind, rows: Vec<Vector>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in rows {
            if r.len() != ncols {
                return Err(Error::DimensionMismatch { expected: ncols, got: r.len() });
            }
            for c in r {
                if c.kind() != field {
                    return Err(crate::field::FieldError::FieldMismatch(c.kind(), field).into());
                }
                data.push(c);
            }
        }
        Ok(Matrix { field, nrows, ncols, data })
    }

    pub fn field(&self) -> FieldKind {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn is_square(&self) -> bool {
        self.nrows == self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.ncols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.ncols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.ncols..(i + 1) * self.ncols]
    }

    pub fn rows(&self) -> Vec<Vector> {
        (0..self.nrows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.ncols, self.nrows);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.ncols != other.nrows {
            return Err(Error::DimensionMismatch { expected: self.ncols, got: other.nrows });
        }
        let mut out = Matrix::zeros(self.field, self.nrows, other.ncols);
        for i in 0..self.nrows {
            for k in 0..self.ncols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.ncols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, exp: u32) -> Result<Matrix> {
        let mut acc = Matrix::identity(self.field, self.nrows);
        for _ in 0..exp {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn rank(&self) -> usize {
        rank(self.field, self.ncols, &self.rows())
    }

    pub fn determinant(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch { expected: self.nrows, got: self.ncols });
        }
        let n = self.nrows;
        let mut a = self.rows();
        let mut det = Scalar::one(self.field);
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Ok(Scalar::zero(self.field));
            };
            if p != col {
                a.swap(p, col);
                det = -det;
            }
            let pivot = a[col][col].clone();
            det = &det * &pivot;
            let inv = pivot.inv()?;
            for r in col + 1..n {
                if !a[r][col].is_zero() {
                    let c = -&(&a[r][col] * &inv);
                    let src = a[col].clone();
                    axpy(&mut a[r], &c, &src);
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch { expected: self.nrows, got: self.ncols });
        }
        let n = self.nrows;
        let mut a: Vec<Vector> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| if i == j { Scalar::one(self.field) } else { Scalar::zero(self.field) }));
                r
            })
            .collect();
        for col in 0..n {
            let p = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::SingularMatrix)?;
            a.swap(p, col);
            let inv = a[col][col].inv()?;
            a[col] = a[col].iter().map(|c| c * &inv).collect();
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let c = -&a[r][col];
                    let src = a[col].clone();
                    axpy(&mut a[r], &c, &src);
                }
            }
        }
        let rows = a.into_iter().map(|r| r[n..].to_vec()).collect();
        Matrix::from_rows(self.field, rows)
    }

    /// `v * self` for a row vector `v`.
    pub fn left_apply(&self, v: &[Scalar]) -> Vector {
        let mut out = zero_vector(self.field, self.ncols);
        for (i, c) in v.iter().enumerate() {
            axpy(&mut out, c, self.row(i));
        }
        out
    }

    /// `self * v` for a column vector `v`.
    pub fn apply(&self, v: &[Scalar]) -> Vector {
        (0..self.nrows)
            .map(|i| {
                let mut acc = Scalar::zero(self.field);
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    /// Basis of `{x : self * x = 0}`.
    pub fn kernel(&self) -> Vec<Vector> {
        left_kernel(self.field, &self.transpose().rows())
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.nrows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.ncols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
