//! Dense exact matrices and Gauss–Jordan elimination.
//!
//! Elimination over a prime field runs on raw `u64` residues; over the rationals it
//! runs on `BigRational`s and skips zero multipliers. Pivots are always the first
//! nonzero entry in column order, so results are deterministic.

use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::{inv_mod, Field, Scalar};
use crate::subspace::Subspace;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, field: Field, data: Vec<Scalar>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|s| s.field() != field) {
            return Err(Error::field_mismatch(field, bad.field()));
        }
        Ok(Matrix {
            rows,
            cols,
            field,
            data,
        })
    }

    pub(crate) fn from_parts(rows: usize, cols: usize, field: Field, data: Vec<Scalar>) -> Matrix {
        debug_assert_eq!(data.len(), rows * cols);
        Matrix {
            rows,
            cols,
            field,
            data,
        }
    }

    /// Builds a matrix from integer entries, reduced into `field`.
    pub fn from_i64(field: Field, rows: usize, cols: usize, entries: &[i64]) -> Result<Matrix> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        let data = entries.iter().map(|&v| field.from_i64(v)).collect();
        Ok(Matrix::from_parts(rows, cols, field, data))
    }

    /// Builds a matrix whose rows are the given vectors, each of length `cols`.
    pub fn from_rows(field: Field, cols: usize, rows: &[Vec<Scalar>]) -> Result<Matrix> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::ShapeMismatch(format!(
                    "row {i} has length {}, expected {cols}",
                    r.len()
                )));
            }
            data.extend(r.iter().cloned());
        }
        Matrix::new(rows.len(), cols, field, data)
    }

    pub fn zeros(rows: usize, cols: usize, field: Field) -> Matrix {
        Matrix::from_parts(rows, cols, field, vec![field.zero(); rows * cols])
    }

    pub fn identity(n: usize, field: Field) -> Matrix {
        let mut m = Matrix::zeros(n, n, field);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
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

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn data(&self) -> &[Scalar] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        assert_eq!(value.field(), self.field, "entry from a different field");
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix::from_parts(self.cols, self.rows, self.field, data)
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        assert_eq!(c.field(), self.field);
        let data = self.data.iter().map(|x| x * c).collect();
        Matrix::from_parts(self.rows, self.cols, self.field, data)
    }

    fn check_field(&self, other: Field) -> Result<()> {
        if self.field != other {
            return Err(Error::field_mismatch(self.field, other));
        }
        Ok(())
    }

    pub fn matmul(&self, rhs: &Matrix) -> Result<Matrix> {
        self.check_field(rhs.field)?;
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let (n, m, k) = (self.rows, rhs.cols, self.cols);
        let data = match self.field {
            Field::Prime(p) => {
                let p = u64::from(p);
                let a: Vec<u64> = self.data.iter().map(Scalar::as_residue).collect();
                let b: Vec<u64> = rhs.data.iter().map(Scalar::as_residue).collect();
                let mut out = vec![0u64; n * m];
                for i in 0..n {
                    for l in 0..k {
                        let x = a[i * k + l];
                        if x == 0 {
                            continue;
                        }
                        for j in 0..m {
                            out[i * m + j] = (out[i * m + j] + x * b[l * m + j]) % p;
                        }
                    }
                }
                out.into_iter().map(|r| self.field.residue(r)).collect()
            }
            Field::Rational => {
                let mut out = vec![BigRational::zero(); n * m];
                for i in 0..n {
                    for l in 0..k {
                        let x = self.data[i * k + l].as_rational();
                        if x.is_zero() {
                            continue;
                        }
                        for j in 0..m {
                            let y = rhs.data[l * m + j].as_rational();
                            if !y.is_zero() {
                                out[i * m + j] += x * y;
                            }
                        }
                    }
                }
                out.into_iter().map(Scalar::Q).collect()
            }
        };
        Ok(Matrix::from_parts(n, m, self.field, data))
    }

    /// Matrix–vector product.
    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch(format!(
                "vector of length {} for a {}x{} matrix",
                v.len(),
                self.rows,
                self.cols
            )));
        }
        if let Some(bad) = v.iter().find(|s| s.field() != self.field) {
            return Err(Error::field_mismatch(self.field, bad.field()));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (x, y) in self.row(i).iter().zip(v) {
                    if !x.is_zero() && !y.is_zero() {
                        acc = &acc + &(x * y);
                    }
                }
                acc
            })
            .collect())
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix> {
        self.check_field(rhs.field)?;
        if self.shape() != rhs.shape() {
            return Err(Error::ShapeMismatch(format!(
                "cannot add {:?} and {:?}",
                self.shape(),
                rhs.shape()
            )));
        }
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        Ok(Matrix::from_parts(self.rows, self.cols, self.field, data))
    }

    /// Stacks matrices vertically; all must share column count and field.
    pub fn vstack(field: Field, cols: usize, parts: &[&Matrix]) -> Result<Matrix> {
        let mut data = Vec::new();
        let mut rows = 0;
        for m in parts {
            m.check_field(field)?;
            if m.cols != cols {
                return Err(Error::ShapeMismatch(format!(
                    "vstack: {} columns, expected {cols}",
                    m.cols
                )));
            }
            data.extend(m.data.iter().cloned());
            rows += m.rows;
        }
        Ok(Matrix::from_parts(rows, cols, field, data))
    }

    /// Concatenates matrices horizontally; all must share row count and field.
    pub fn hstack(field: Field, rows: usize, parts: &[&Matrix]) -> Result<Matrix> {
        for m in parts {
            m.check_field(field)?;
            if m.rows != rows {
                return Err(Error::ShapeMismatch(format!(
                    "hstack: {} rows, expected {rows}",
                    m.rows
                )));
            }
        }
        let cols: usize = parts.iter().map(|m| m.cols).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for m in parts {
                data.extend(m.row(i).iter().cloned());
            }
        }
        Ok(Matrix::from_parts(rows, cols, field, data))
    }

    /// Block-diagonal matrix `diag(self, other)`.
    pub fn block_diagonal(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other.field)?;
        let rows = self.rows + other.rows;
        let cols = self.cols + other.cols;
        let mut m = Matrix::zeros(rows, cols, self.field);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.data[i * cols + j] = self.get(i, j).clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m.data[(self.rows + i) * cols + self.cols + j] = other.get(i, j).clone();
            }
        }
        Ok(m)
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for i in 0..self.rows {
            for &j in cols {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix::from_parts(self.rows, cols.len(), self.field, data)
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &i in rows {
            data.extend(self.row(i).iter().cloned());
        }
        Matrix::from_parts(rows.len(), self.cols, self.field, data)
    }

    /// Reduced row-echelon form and the strictly increasing pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        match self.field {
            Field::Prime(p) => {
                let mut a: Vec<u64> = self.data.iter().map(Scalar::as_residue).collect();
                let pivots = rref_mod(&mut a, self.rows, self.cols, u64::from(p));
                let data = a.into_iter().map(|r| self.field.residue(r)).collect();
                (Matrix::from_parts(self.rows, self.cols, self.field, data), pivots)
            }
            Field::Rational => {
                let mut a: Vec<BigRational> =
                    self.data.iter().map(|s| s.as_rational().clone()).collect();
                let pivots = rref_rational(&mut a, self.rows, self.cols);
                let data = a.into_iter().map(Scalar::Q).collect();
                (Matrix::from_parts(self.rows, self.cols, self.field, data), pivots)
            }
        }
    }

    pub fn rank(&self) -> usize {
        match self.field {
            Field::Prime(p) => {
                let mut a: Vec<u64> = self.data.iter().map(Scalar::as_residue).collect();
                rref_mod(&mut a, self.rows, self.cols, u64::from(p)).len()
            }
            Field::Rational => self.rref().1.len(),
        }
    }

    /// Null space `{v : self · v = 0}` as a canonical subspace of `k^cols`.
    pub fn kernel(&self) -> Subspace {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (row, &c) in pivots.iter().enumerate() {
                v[c] = -r.get(row, free);
            }
            basis.push(v);
        }
        let m = Matrix::from_rows(self.field, self.cols, &basis).expect("kernel rows are well formed");
        Subspace::span(&m)
    }

    /// Column space as a subspace of `k^rows`.
    pub fn image(&self) -> Subspace {
        Subspace::span(&self.transpose())
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let aug = Matrix::hstack(self.field, n, &[self, &Matrix::identity(n, self.field)]).ok()?;
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        Some(r.select_columns(&cols))
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

fn rref_mod(a: &mut [u64], rows: usize, cols: usize, p: u64) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(found) = (r..rows).find(|&i| a[i * cols + c] != 0) else {
            continue;
        };
        if found != r {
            for j in c..cols {
                a.swap(found * cols + j, r * cols + j);
            }
        }
        let inv = inv_mod(a[r * cols + c], p);
        for j in c..cols {
            a[r * cols + j] = a[r * cols + j] * inv % p;
        }
        let (before, rest) = a.split_at_mut(r * cols);
        let (pivot_row, after) = rest.split_at_mut(cols);
        let eliminate = |row: &mut [u64]| {
            let f = row[c];
            if f == 0 {
                return;
            }
            let neg = p - f;
            for j in c..cols {
                let x = pivot_row[j];
                if x != 0 {
                    row[j] = (row[j] + neg * x) % p;
                }
            }
        };
        before.chunks_exact_mut(cols).for_each(eliminate);
        after.chunks_exact_mut(cols).for_each(eliminate);
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn rref_rational(a: &mut [BigRational], rows: usize, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(found) = (r..rows).find(|&i| !a[i * cols + c].is_zero()) else {
            continue;
        };
        if found != r {
            for j in c..cols {
                a.swap(found * cols + j, r * cols + j);
            }
        }
        let inv = a[r * cols + c].recip();
        for j in c..cols {
            if !a[r * cols + j].is_zero() {
                a[r * cols + j] *= &inv;
            }
        }
        let (before, rest) = a.split_at_mut(r * cols);
        let (pivot_row, after) = rest.split_at_mut(cols);
        let eliminate = |row: &mut [BigRational]| {
            if row[c].is_zero() {
                return;
            }
            let f = row[c].clone();
            for j in c..cols {
                if !pivot_row[j].is_zero() {
                    row[j] -= &f * &pivot_row[j];
                }
            }
        };
        before.chunks_exact_mut(cols).for_each(eliminate);
        after.chunks_exact_mut(cols).for_each(eliminate);
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// `Σ x_i y_i`.
pub fn dot(field: Field, x: &[Scalar], y: &[Scalar]) -> Scalar {
    x.iter()
        .zip(y)
        .filter(|(a, b)| !a.is_zero() && !b.is_zero())
        .fold(field.zero(), |acc, (a, b)| &acc + &(a * b))
}
