//! Matrix pencils `(a, b; α_1, …, α_n)`, equivalently n-Kronecker modules presented in
//! coordinates: `α_i : k^a → k^b`, each stored as a `b × a` matrix.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::projective::ProjectivePoint;
use crate::subspace::Subspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimensionVector {
    pub a: usize,
    pub b: usize,
}

impl DimensionVector {
    pub fn new(a: usize, b: usize) -> Self {
        DimensionVector { a, b }
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }
}

impl fmt::Display for DimensionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatrixPencil {
    a: usize,
    b: usize,
    field: Field,
    alphas: Vec<Matrix>,
}

/// Which simple module: `S(1) = (1,0)` (injective) or `S(2) = (0,1)` (projective).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Vertex {
    Source,
    Sink,
}

impl MatrixPencil {
    pub fn new(a: usize, b: usize, field: Field, alphas: Vec<Matrix>) -> Result<MatrixPencil> {
        if alphas.is_empty() {
            return Err(Error::InvalidParameter("a pencil needs at least one matrix".into()));
        }
        for (i, m) in alphas.iter().enumerate() {
            if m.field() != field {
                return Err(Error::field_mismatch(field, m.field()));
            }
            if m.shape() != (b, a) {
                return Err(Error::ShapeMismatch(format!(
                    "matrix {} is {}x{}, expected {b}x{a}",
                    i + 1,
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(MatrixPencil { a, b, field, alphas })
    }

    /// Infers `(a, b)` from the first matrix.
    pub fn from_matrices(alphas: Vec<Matrix>) -> Result<MatrixPencil> {
        let first = alphas
            .first()
            .ok_or_else(|| Error::InvalidParameter("a pencil needs at least one matrix".into()))?;
        let (b, a, field) = (first.rows(), first.cols(), first.field());
        MatrixPencil::new(a, b, field, alphas)
    }

    pub fn zero(n: usize, a: usize, b: usize, field: Field) -> Result<MatrixPencil> {
        MatrixPencil::new(a, b, field, vec![Matrix::zeros(b, a, field); n])
    }

    /// The pencil `(0,0)` with `n` empty matrices.
    pub fn empty(n: usize, field: Field) -> Result<MatrixPencil> {
        MatrixPencil::zero(n, 0, 0, field)
    }

    pub fn n(&self) -> usize {
        self.alphas.len()
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn dim_vector(&self) -> DimensionVector {
        DimensionVector::new(self.a, self.b)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn alphas(&self) -> &[Matrix] {
        &self.alphas
    }

    pub fn alpha(&self, i: usize) -> &Matrix {
        &self.alphas[i]
    }

    pub fn into_alphas(self) -> Vec<Matrix> {
        self.alphas
    }

    pub(crate) fn check_compatible(&self, other: &MatrixPencil) -> Result<()> {
        if self.field != other.field {
            return Err(Error::field_mismatch(self.field, other.field));
        }
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch(format!(
                "pencils with {} and {} matrices",
                self.n(),
                other.n()
            )));
        }
        Ok(())
    }

    /// The `nb × a` matrix `[α_1; …; α_n]`.
    pub fn stacked(&self) -> Matrix {
        let parts: Vec<&Matrix> = self.alphas.iter().collect();
        Matrix::vstack(self.field, self.a, &parts).expect("uniform shapes")
    }

    /// The `b × na` matrix `[α_1 | … | α_n]`.
    pub fn combined(&self) -> Matrix {
        let parts: Vec<&Matrix> = self.alphas.iter().collect();
        Matrix::hstack(self.field, self.b, &parts).expect("uniform shapes")
    }

    /// `∩ ker α_i`.
    pub fn common_kernel(&self) -> Subspace {
        self.stacked().kernel()
    }

    pub fn is_reduced(&self) -> bool {
        self.stacked().rank() == self.a
    }

    pub(crate) fn require_reduced(&self) -> Result<()> {
        let rank = self.stacked().rank();
        if rank != self.a {
            return Err(Error::NotReduced {
                kernel_dim: self.a - rank,
            });
        }
        Ok(())
    }

    pub fn direct_sum(&self, other: &MatrixPencil) -> Result<MatrixPencil> {
        self.check_compatible(other)?;
        let alphas = self
            .alphas
            .iter()
            .zip(&other.alphas)
            .map(|(x, y)| x.block_diagonal(y))
            .collect::<Result<Vec<_>>>()?;
        MatrixPencil::new(self.a + other.a, self.b + other.b, self.field, alphas)
    }

    /// `n`-fold direct sum of copies of `self`.
    pub fn power(&self, copies: usize) -> Result<MatrixPencil> {
        let mut out = MatrixPencil::empty(self.n(), self.field)?;
        for _ in 0..copies {
            out = out.direct_sum(self)?;
        }
        Ok(out)
    }

    /// `γ α_i β` for every i.
    pub fn transform(&self, beta: &Matrix, gamma: &Matrix) -> Result<MatrixPencil> {
        let alphas = self
            .alphas
            .iter()
            .map(|m| gamma.matmul(m)?.matmul(beta))
            .collect::<Result<Vec<_>>>()?;
        MatrixPencil::new(beta.cols(), gamma.rows(), self.field, alphas)
    }

    /// Restriction to the submodule `(u1, u2)`, in the echelon bases of both spaces.
    ///
    /// Fails unless `α_i(u1) ⊆ u2` for all i.
    pub fn restrict(&self, u1: &Subspace, u2: &Subspace) -> Result<MatrixPencil> {
        if u1.ambient_dim() != self.a || u2.ambient_dim() != self.b {
            return Err(Error::DimensionMismatch(format!(
                "submodule of k^{} x k^{} inside a ({},{}) pencil",
                u1.ambient_dim(),
                u2.ambient_dim(),
                self.a,
                self.b
            )));
        }
        let basis = u1.basis().row_vecs();
        let mut alphas = Vec::with_capacity(self.n());
        for alpha in &self.alphas {
            let mut columns = Vec::with_capacity(basis.len());
            for v in &basis {
                let image = alpha.apply(v)?;
                let coords = u2.coordinates(&image).ok_or_else(|| {
                    Error::InvalidParameter("subspace pair is not a submodule".into())
                })?;
                columns.push(coords);
            }
            let m = Matrix::from_rows(self.field, u2.dim(), &columns)?.transpose();
            alphas.push(m);
        }
        MatrixPencil::new(u1.dim(), u2.dim(), self.field, alphas)
    }

    /// The `n × b` matrix `[α_1 v | … | α_n v]` transposed, i.e. rows are `α_i v`.
    pub(crate) fn images(&self, v: &[crate::field::Scalar]) -> Result<Matrix> {
        let rows = self
            .alphas
            .iter()
            .map(|m| m.apply(v))
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(self.field, self.b, &rows)
    }
}

/// `S(1)` or `S(2)` for the `n`-Kronecker quiver.
pub fn simple(which: Vertex, n: usize, field: Field) -> Result<MatrixPencil> {
    match which {
        Vertex::Source => MatrixPencil::zero(n, 1, 0, field),
        Vertex::Sink => MatrixPencil::zero(n, 0, 1, field),
    }
}

/// The bristle `B(λ) = (1,1; [λ_1], …, [λ_n])`.
pub fn bristle(lambda: &ProjectivePoint) -> MatrixPencil {
    let field = lambda.field();
    let alphas = lambda
        .coords()
        .iter()
        .map(|c| Matrix::new(1, 1, field, vec![c.clone()]).expect("1x1"))
        .collect();
    MatrixPencil::new(1, 1, field, alphas).expect("bristle shape")
}

/// Dimension of `Hom(p, q)`: pairs `(F1, F2)` with `α'_i F1 = F2 α_i` for all i.
pub fn hom_dim(p: &MatrixPencil, q: &MatrixPencil) -> Result<usize> {
    p.check_compatible(q)?;
    let (a, b) = (p.a, p.b);
    let (a2, b2) = (q.a, q.b);
    let field = p.field;
    let unknowns = a2 * a + b2 * b;
    let equations = p.n() * b2 * a;
    if equations == 0 {
        return Ok(unknowns);
    }
    // F1[k][c] ↦ column k*a + c;  F2[r][k] ↦ column a2*a + r*b + k.
    let mut sys = Matrix::zeros(equations, unknowns, field);
    for i in 0..p.n() {
        let alpha = p.alpha(i);
        let alpha2 = q.alpha(i);
        for r in 0..b2 {
            for c in 0..a {
                let row = (i * b2 + r) * a + c;
                for k in 0..a2 {
                    let x = alpha2.get(r, k);
                    if !x.is_zero() {
                        let col = k * a + c;
                        let cur = sys.get(row, col).clone();
                        sys.set(row, col, &cur + x);
                    }
                }
                for k in 0..b {
                    let x = alpha.get(k, c);
                    if !x.is_zero() {
                        let col = a2 * a + r * b + k;
                        let cur = sys.get(row, col).clone();
                        sys.set(row, col, &cur - x);
                    }
                }
            }
        }
    }
    Ok(unknowns - sys.rank())
}

/// `p ≅ S(1)^s ⊕ reduced`, witnessed by `beta` with `α_i β = [0 | reduced α_i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedDecomposition {
    /// Multiplicity of `S(1)`, the dimension of the common kernel.
    pub s: usize,
    pub reduced: MatrixPencil,
    pub common_kernel: Subspace,
    /// Coordinates whose unit vectors span the chosen complement of the common kernel.
    pub complement: Vec<usize>,
    /// Change of basis on `k^a`: kernel basis columns first, then complement unit vectors.
    pub beta: Matrix,
}

impl ReducedDecomposition {
    /// The pencil `S(1)^s ⊕ reduced`, equivalent to the input via `(beta, I)`.
    pub fn split_form(&self) -> Result<MatrixPencil> {
        let s1 = simple(Vertex::Source, self.reduced.n(), self.reduced.field())?;
        s1.power(self.s)?.direct_sum(&self.reduced)
    }
}

pub fn reduced_decomposition(p: &MatrixPencil) -> ReducedDecomposition {
    let kernel = p.common_kernel();
    let complement = kernel.complement_coordinates();
    let alphas = p
        .alphas
        .iter()
        .map(|m| m.select_columns(&complement))
        .collect();
    let reduced = MatrixPencil::new(complement.len(), p.b, p.field, alphas).expect("restricted shapes");
    let mut columns = kernel.basis().row_vecs();
    for &c in &complement {
        let mut e = vec![p.field.zero(); p.a];
        e[c] = p.field.one();
        columns.push(e);
    }
    let beta = Matrix::from_rows(p.field, p.a, &columns)
        .expect("basis vectors")
        .transpose();
    ReducedDecomposition {
        s: kernel.dim(),
        reduced,
        common_kernel: kernel,
        complement,
        beta,
    }
}

/// Checks `γ α_i β = α'_i` for all i; `beta` and `gamma` must be invertible.
pub fn is_equivalence_witness(
    p: &MatrixPencil,
    p2: &MatrixPencil,
    beta: &Matrix,
    gamma: &Matrix,
) -> Result<bool> {
    p.check_compatible(p2)?;
    if beta.shape() != (p.a, p.a) || gamma.shape() != (p.b, p.b) {
        return Err(Error::ShapeMismatch(format!(
            "witness shapes {:?}, {:?} for a ({},{}) pencil",
            beta.shape(),
            gamma.shape(),
            p.a,
            p.b
        )));
    }
    if beta.field() != p.field || gamma.field() != p.field {
        return Err(Error::field_mismatch(p.field, beta.field()));
    }
    if !beta.is_invertible() {
        return Err(Error::InvalidWitness("beta is singular".into()));
    }
    if !gamma.is_invertible() {
        return Err(Error::InvalidWitness("gamma is singular".into()));
    }
    if p.dim_vector() != p2.dim_vector() {
        return Ok(false);
    }
    for (x, y) in p.alphas.iter().zip(&p2.alphas) {
        if &gamma.matmul(x)?.matmul(beta)? != y {
            return Ok(false);
        }
    }
    Ok(true)
}
