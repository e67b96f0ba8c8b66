//! Subspaces of a coordinate space, stored by their reduced row-echelon basis.
//!
//! The echelon basis has no zero rows, so two subspaces are equal exactly when their
//! basis matrices are identical.

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    /// Span of the rows of `vectors`.
    pub fn span(vectors: &Matrix) -> Subspace {
        let (r, pivots) = vectors.rref();
        let keep: Vec<usize> = (0..pivots.len()).collect();
        Subspace {
            basis: r.select_rows(&keep),
            pivots,
        }
    }

    pub fn from_vectors(field: Field, ambient: usize, vectors: &[Vec<Scalar>]) -> Result<Subspace> {
        Ok(Subspace::span(&Matrix::from_rows(field, ambient, vectors)?))
    }

    pub fn zero(ambient: usize, field: Field) -> Subspace {
        Subspace {
            basis: Matrix::zeros(0, ambient, field),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize, field: Field) -> Subspace {
        Subspace {
            basis: Matrix::identity(ambient, field),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    /// Echelon basis, one vector per row.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim()
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.field() != other.field() {
            return Err(Error::field_mismatch(self.field(), other.field()));
        }
        if self.ambient_dim() != other.ambient_dim() {
            return Err(Error::DimensionMismatch(format!(
                "subspaces of k^{} and k^{}",
                self.ambient_dim(),
                other.ambient_dim()
            )));
        }
        Ok(())
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is not in the subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if v.len() != self.ambient_dim() {
            return None;
        }
        // Echelon rows carry 1 at their own pivot and 0 at every other pivot.
        let coords: Vec<Scalar> = self.pivots.iter().map(|&c| v[c].clone()).collect();
        let mut residual = v.to_vec();
        for (row, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (x, b) in residual.iter_mut().zip(self.basis.row(row)) {
                if !b.is_zero() {
                    *x = &*x - &(c * b);
                }
            }
        }
        residual.iter().all(Scalar::is_zero).then_some(coords)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.row_vecs().iter().all(|v| self.contains(v))
    }

    /// Linear combination `Σ c_i b_i` of the basis rows.
    pub fn combine(&self, coeffs: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(coeffs.len(), self.dim());
        let field = self.field();
        let mut out = vec![field.zero(); self.ambient_dim()];
        for (row, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (x, b) in out.iter_mut().zip(self.basis.row(row)) {
                if !b.is_zero() {
                    *x = &*x + &(c * b);
                }
            }
        }
        out
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let stacked = Matrix::vstack(self.field(), self.ambient_dim(), &[&self.basis, &other.basis])?;
        Ok(Subspace::span(&stacked))
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        // x = Σ a_i u_i = Σ b_j v_j  ⇔  (a, b) ∈ ker [Uᵀ | −Vᵀ].
        let field = self.field();
        let n = self.ambient_dim();
        let neg_v = other.basis.scale(&-field.one());
        let system = Matrix::hstack(field, n, &[&self.basis.transpose(), &neg_v.transpose()])?;
        let ker = system.kernel();
        let du = self.dim();
        let vectors: Vec<Vec<Scalar>> = ker
            .basis()
            .row_vecs()
            .into_iter()
            .map(|k| self.combine(&k[..du]))
            .collect();
        Subspace::from_vectors(field, n, &vectors)
    }

    /// Image of the subspace under `m` (a linear map `k^ambient → k^rows(m)`).
    pub fn image_under(&self, m: &Matrix) -> Result<Subspace> {
        if m.cols() != self.ambient_dim() {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} map applied to a subspace of k^{}",
                m.rows(),
                m.cols(),
                self.ambient_dim()
            )));
        }
        let images = m.matmul(&self.basis.transpose())?;
        Ok(images.image())
    }

    /// Non-pivot coordinates; the matching unit vectors span a complement.
    pub fn complement_coordinates(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient_dim()];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.ambient_dim()).filter(|&c| !is_pivot[c]).collect()
    }
}
