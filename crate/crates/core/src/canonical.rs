//! The canonical bristled module `C`, the degree-2 Veronese map, and quadratic forms.
//!
//! `C_1` has basis `c_{ij}` for `1 ≤ i ≤ j ≤ n`, `C_2` has basis `c_1, …, c_n`, and
//! `α_i(c_{ij}) = c_j`, `α_j(c_{ij}) = c_i`, `α_r(c_{ij}) = 0` for `r ∉ {i, j}`.
//! Pairs are ordered `(1,1), (1,2), …, (1,n), (2,2), …, (n,n)` everywhere, which is
//! also the coefficient order of [`QuadraticForm`]. Indices are 0-based in code.

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::{dot, Matrix};
use crate::pencil::MatrixPencil;

/// `n(n+1)/2`.
pub fn pair_count(n: usize) -> usize {
    n * (n + 1) / 2
}

/// Position of the pair `{i, j}` (0-based, any order) in the fixed pair order.
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    assert!(j < n);
    // Rows 0..i contribute n, n-1, …, n-i+1 pairs.
    i * n - i * i.saturating_sub(1) / 2 + (j - i)
}

/// All pairs `(i, j)` with `i ≤ j`, in the fixed order.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalModule {
    n: usize,
    pencil: MatrixPencil,
    pairs: Vec<(usize, usize)>,
}

impl CanonicalModule {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pencil(&self) -> &MatrixPencil {
        &self.pencil
    }

    pub fn into_pencil(self) -> MatrixPencil {
        self.pencil
    }

    pub fn field(&self) -> Field {
        self.pencil.field()
    }

    /// Basis pair of the `k`-th vector of `C_1`.
    pub fn pair(&self, k: usize) -> (usize, usize) {
        self.pairs[k]
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }
}

pub fn build_canonical(n: usize, field: Field) -> Result<CanonicalModule> {
    if n == 0 {
        return Err(Error::InvalidParameter("canonical module needs n >= 1".into()));
    }
    let ps = pairs(n);
    let cols = ps.len();
    let mut alphas = vec![Matrix::zeros(n, cols, field); n];
    for (k, &(i, j)) in ps.iter().enumerate() {
        alphas[i].set(j, k, field.one());
        alphas[j].set(i, k, field.one());
    }
    let pencil = MatrixPencil::new(cols, n, field, alphas)?;
    Ok(CanonicalModule { n, pencil, pairs: ps })
}

/// `d(c) = Σ_{i≤j} c_i c_j c_{ij}`.
pub fn veronese_d(c: &[Scalar]) -> Vec<Scalar> {
    pairs(c.len())
        .into_iter()
        .map(|(i, j)| &c[i] * &c[j])
        .collect()
}

/// A quadratic form `Σ_{r≤s} λ_{rs} x_r x_s`, coefficients in the fixed pair order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticForm {
    n: usize,
    field: Field,
    coeffs: Vec<Scalar>,
}

impl QuadraticForm {
    pub fn new(n: usize, field: Field, coeffs: Vec<Scalar>) -> Result<QuadraticForm> {
        if coeffs.len() != pair_count(n) {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for a quadratic form in {n} variables (expected {})",
                coeffs.len(),
                pair_count(n)
            )));
        }
        if let Some(bad) = coeffs.iter().find(|c| c.field() != field) {
            return Err(Error::field_mismatch(field, bad.field()));
        }
        Ok(QuadraticForm { n, field, coeffs })
    }

    pub fn from_i64(n: usize, field: Field, coeffs: &[i64]) -> Result<QuadraticForm> {
        QuadraticForm::new(n, field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(n: usize, field: Field) -> QuadraticForm {
        QuadraticForm {
            n,
            field,
            coeffs: vec![field.zero(); pair_count(n)],
        }
    }

    /// The monomial `x_r x_s` (0-based).
    pub fn monomial(n: usize, field: Field, r: usize, s: usize) -> QuadraticForm {
        let mut q = QuadraticForm::zero(n, field);
        q.coeffs[pair_index(n, r, s)] = field.one();
        q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn add(&self, other: &QuadraticForm) -> Result<QuadraticForm> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!("forms in {} and {} variables", self.n, other.n)));
        }
        if self.field != other.field {
            return Err(Error::field_mismatch(self.field, other.field));
        }
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(x, y)| x + y).collect();
        QuadraticForm::new(self.n, self.field, coeffs)
    }
}

/// The functional `φ′ : C_1 → k`, `Σ λ_{ij} c_{ij} ↦ Σ q_{rs} λ_{rs}`, as a `1 × n(n+1)/2` matrix.
pub fn quad_to_hom(q: &QuadraticForm, c: &CanonicalModule) -> Result<Matrix> {
    if q.n != c.n {
        return Err(Error::DimensionMismatch(format!(
            "quadratic form in {} variables against C for n = {}",
            q.n, c.n
        )));
    }
    if q.field != c.field() {
        return Err(Error::field_mismatch(c.field(), q.field));
    }
    Matrix::new(1, q.coeffs.len(), q.field, q.coeffs.clone())
}

pub fn eval_quadratic(q: &QuadraticForm, c: &[Scalar]) -> Result<Scalar> {
    if c.len() != q.n {
        return Err(Error::DimensionMismatch(format!(
            "point with {} coordinates for a form in {} variables",
            c.len(),
            q.n
        )));
    }
    if let Some(bad) = c.iter().find(|x| x.field() != q.field) {
        return Err(Error::field_mismatch(q.field, bad.field()));
    }
    let mut acc = q.field.zero();
    for (k, (r, s)) in pairs(q.n).into_iter().enumerate() {
        let coeff = &q.coeffs[k];
        if !coeff.is_zero() {
            acc = &acc + &(&(coeff * &c[r]) * &c[s]);
        }
    }
    Ok(acc)
}

/// Applies `φ′` to a vector of `C_1`.
pub fn apply_functional(functional: &Matrix, v: &[Scalar]) -> Scalar {
    dot(functional.field(), functional.row(0), v)
}

/// Extends `C` by `C_3 = k`, `α_i(c_j) = δ_{ij}`, and checks the commutativity relations
/// and the dimension vector `(n(n+1)/2, n, 1)`.
pub fn beilinson_check(n: usize, field: Field) -> Result<bool> {
    let c = build_canonical(n, field)?;
    let lower: Vec<Matrix> = (0..n)
        .map(|i| {
            let mut m = Matrix::zeros(1, n, field);
            m.set(0, i, field.one());
            m
        })
        .collect();
    let upper = c.pencil().alphas();
    for i in 0..n {
        for j in 0..n {
            let lhs = lower[i].matmul(&upper[j])?;
            let rhs = lower[j].matmul(&upper[i])?;
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    let dims = (upper[0].cols(), upper[0].rows(), lower[0].rows());
    Ok(dims == (pair_count(n), n, 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pencil::{bristle, hom_dim, DimensionVector};
    use crate::projective::ProjectivePoint;

    fn gf(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    #[test]
    fn pair_indexing() {
        for n in 1..7 {
            for (k, (i, j)) in pairs(n).into_iter().enumerate() {
                assert_eq!(pair_index(n, i, j), k);
                assert_eq!(pair_index(n, j, i), k);
            }
        }
    }

    #[test]
    fn n1_is_the_bristle() {
        let f = gf(5);
        let c = build_canonical(1, f).unwrap();
        let b = bristle(&ProjectivePoint::from_i64(f, &[1]).unwrap());
        assert_eq!(c.pencil(), &b);
        assert!(build_canonical(0, f).is_err());
    }

    #[test]
    fn n2_matches_diagram() {
        // c11 -α1-> c1, c12 -α2-> c1, c12 -α1-> c2, c22 -α2-> c2.
        let f = gf(3);
        let c = build_canonical(2, f).unwrap();
        assert_eq!(c.pencil().dim_vector(), DimensionVector::new(3, 2));
        assert_eq!(c.pencil().alpha(0), &Matrix::from_i64(f, 2, 3, &[1, 0, 0, 0, 1, 0]).unwrap());
        assert_eq!(c.pencil().alpha(1), &Matrix::from_i64(f, 2, 3, &[0, 1, 0, 0, 0, 1]).unwrap());
        assert!(c.pencil().is_reduced());
    }

    #[test]
    fn n3_matches_diagram() {
        let f = gf(7);
        let c = build_canonical(3, f).unwrap();
        let p = c.pencil();
        assert_eq!(p.dim_vector(), DimensionVector::new(6, 3));
        let c13 = pair_index(3, 0, 2);
        // α1 c13 = c3, α3 c13 = c1, α2 c13 = 0.
        assert_eq!(p.alpha(0).column(c13), vec![f.zero(), f.zero(), f.one()]);
        assert_eq!(p.alpha(2).column(c13), vec![f.one(), f.zero(), f.zero()]);
        assert!(p.alpha(1).column(c13).iter().all(Scalar::is_zero));
        assert_eq!(hom_dim(p, p).unwrap(), 1);
    }

    #[test]
    fn veronese_examples() {
        let f = gf(5);
        let n = 3;
        let c = build_canonical(n, f).unwrap();
        for i in 0..n {
            let mut e = vec![f.zero(); n];
            e[i] = f.one();
            let d = veronese_d(&e);
            let k = pair_index(n, i, i);
            assert!(d.iter().enumerate().all(|(t, x)| x.is_one() == (t == k) && (t == k || x.is_zero())));
            for j in 0..n {
                if j == i {
                    continue;
                }
                let mut e2 = e.clone();
                e2[j] = f.one();
                let d = veronese_d(&e2);
                let support: Vec<usize> = (0..d.len()).filter(|&t| !d[t].is_zero()).collect();
                let mut expect = vec![pair_index(n, i, i), pair_index(n, i, j), pair_index(n, j, j)];
                expect.sort();
                assert_eq!(support, expect);
            }
        }
        let v: Vec<Scalar> = [2, 3, 4].iter().map(|&x| f.from_i64(x)).collect();
        let d = veronese_d(&v);
        for r in 0..n {
            let lhs = c.pencil().alpha(r).apply(&d).unwrap();
            let rhs: Vec<Scalar> = v.iter().map(|x| x * &v[r]).collect();
            assert_eq!(lhs, rhs);
        }
        assert!(veronese_d(&[f.zero(), f.zero()]).iter().all(Scalar::is_zero));
    }

    #[test]
    fn quadratic_dictionary() {
        let f = gf(7);
        let n = 3;
        let c = build_canonical(n, f).unwrap();
        let q = QuadraticForm::monomial(n, f, 0, 1);
        let phi = quad_to_hom(&q, &c).unwrap();
        let mut unit = vec![f.zero(); pair_count(n)];
        unit[pair_index(n, 0, 1)] = f.from_i64(4);
        assert_eq!(apply_functional(&phi, &unit), f.from_i64(4));
        assert!(quad_to_hom(&QuadraticForm::zero(n, f), &c).unwrap().is_zero());
        let ones = vec![f.one(); n];
        assert!(eval_quadratic(&q, &ones).unwrap().is_one());
        assert!(eval_quadratic(&q, &[f.zero(), f.zero(), f.zero()]).unwrap().is_zero());
        assert!(quad_to_hom(&QuadraticForm::zero(2, f), &c).is_err());
        assert!(eval_quadratic(&q, &ones[..2]).is_err());
    }

    #[test]
    fn beilinson_relations_hold() {
        for n in 1..=5 {
            assert!(beilinson_check(n, gf(5)).unwrap());
        }
        assert!(beilinson_check(3, Field::Rational).unwrap());
    }
}
