//! Eigenvectors, eigenvalues and eigenvector varieties of reduced pencils.
//!
//! A nonzero `v ∈ k^a` is an eigenvector when `⟨α_1 v, …, α_n v⟩` is one-dimensional;
//! writing `α_i v = λ_i w` gives its eigenvalue `(λ_1 : … : λ_n) ∈ P(k^n)`.
//!
//! The main variety computation is eigenvalue-indexed: one linear solve per
//! `λ ∈ P(F_q^n)`. [`eigenvector_variety_oracle`] scans all of `P(F_q^a)` instead and
//! exists only to cross-check it.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;
use crate::pencil::MatrixPencil;
use crate::projective::{subspace_points, ProjectivePoint, ProjectiveSpace};
use crate::subspace::Subspace;

/// Where eigenvalues are drawn from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EigenvalueSource {
    /// Every point of `P(F_q^n)`; prime fields only.
    All,
    List(Vec<ProjectivePoint>),
}

impl EigenvalueSource {
    /// Materializes the eigenvalue list for `n`-matrix pencils over `field`.
    pub fn points(&self, n: usize, field: Field, budget: u64) -> Result<Vec<ProjectivePoint>> {
        match self {
            EigenvalueSource::All => {
                if !field.is_prime_field() {
                    return Err(Error::ExplicitEigenvaluesRequired);
                }
                let space = ProjectiveSpace::new(n, field, budget)?;
                Ok(space.iter().collect())
            }
            EigenvalueSource::List(points) => {
                for p in points {
                    if p.len() != n {
                        return Err(Error::DimensionMismatch(format!(
                            "eigenvalue {p} has {} coordinates, pencil has {n} matrices",
                            p.len()
                        )));
                    }
                    if p.field() != field {
                        return Err(Error::field_mismatch(field, p.field()));
                    }
                }
                Ok(points.clone())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenReport {
    pub eigenvalue: ProjectivePoint,
    pub eigenspace: Subspace,
}

fn check_vector(p: &MatrixPencil, v: &[Scalar]) -> Result<()> {
    if v.len() != p.a() {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} for a pencil with a = {}",
            v.len(),
            p.a()
        )));
    }
    if let Some(bad) = v.iter().find(|s| s.field() != p.field()) {
        return Err(Error::field_mismatch(p.field(), bad.field()));
    }
    Ok(())
}

pub fn is_eigenvector(p: &MatrixPencil, v: &[Scalar]) -> Result<bool> {
    p.require_reduced()?;
    check_vector(p, v)?;
    Ok(is_eigenvector_unchecked(p, v))
}

/// Rank test without the reducedness check.
pub(crate) fn is_eigenvector_unchecked(p: &MatrixPencil, v: &[Scalar]) -> bool {
    p.images(v).expect("checked shapes").rank() == 1
}

pub fn eigenvalue_of(p: &MatrixPencil, v: &[Scalar]) -> Result<ProjectivePoint> {
    p.require_reduced()?;
    check_vector(p, v)?;
    let images = p.images(v)?;
    if images.rank() != 1 {
        return Err(Error::NotAnEigenvector);
    }
    // w = first nonzero α_i v; λ_i = (α_i v)_r / w_r at w's leading coordinate r.
    let w_row = (0..p.n())
        .find(|&i| images.row(i).iter().any(|x| !x.is_zero()))
        .expect("rank one");
    let w = images.row(w_row);
    let r = w.iter().position(|x| !x.is_zero()).expect("nonzero");
    let w_inv = w[r].inv().expect("nonzero");
    let lambda = (0..p.n()).map(|i| images.get(i, r) * &w_inv).collect();
    ProjectivePoint::new(lambda)
}

/// All `v` admitting `w` with `α_i v = λ_i w` for every i.
pub fn eigenvector_space(p: &MatrixPencil, lambda: &ProjectivePoint) -> Result<Subspace> {
    p.require_reduced()?;
    if lambda.len() != p.n() {
        return Err(Error::DimensionMismatch(format!(
            "eigenvalue with {} coordinates for a pencil of {} matrices",
            lambda.len(),
            p.n()
        )));
    }
    if lambda.field() != p.field() {
        return Err(Error::field_mismatch(p.field(), lambda.field()));
    }
    Ok(eigenvector_space_unchecked(p, lambda))
}

/// Kernel of the stacked `nb × (a+b)` system `α_i v − λ_i w = 0`, projected to `v`.
pub(crate) fn eigenvector_space_unchecked(p: &MatrixPencil, lambda: &ProjectivePoint) -> Subspace {
    let (a, b, n) = (p.a(), p.b(), p.n());
    let field = p.field();
    let cols = a + b;
    let mut data = Vec::with_capacity(n * b * cols);
    for (i, l) in lambda.coords().iter().enumerate() {
        let alpha = p.alpha(i);
        let neg = -l;
        for r in 0..b {
            data.extend(alpha.row(r).iter().cloned());
            for c in 0..b {
                data.push(if c == r { neg.clone() } else { field.zero() });
            }
        }
    }
    let system = Matrix::new(n * b, cols, field, data).expect("system shape");
    let kernel = system.kernel();
    let vs: Vec<Vec<Scalar>> = kernel
        .basis()
        .row_vecs()
        .into_iter()
        .map(|mut x| {
            x.truncate(a);
            x
        })
        .collect();
    Subspace::from_vectors(field, a, &vs).expect("projection shape")
}

/// Nonzero eigenspaces for every eigenvalue in the source, in source order.
pub fn eigen_reports(p: &MatrixPencil, source: &EigenvalueSource, budget: u64) -> Result<Vec<EigenReport>> {
    p.require_reduced()?;
    let lambdas = source.points(p.n(), p.field(), budget)?;
    let reports = lambdas
        .into_par_iter()
        .filter_map(|lambda| {
            let space = eigenvector_space_unchecked(p, &lambda);
            (!space.is_zero()).then_some(EigenReport {
                eigenvalue: lambda,
                eigenspace: space,
            })
        })
        .collect();
    Ok(reports)
}

/// Sorted eigenvalues (with a nonzero eigenspace) drawn from the source.
pub fn eigenvalues(p: &MatrixPencil, source: &EigenvalueSource, budget: u64) -> Result<Vec<ProjectivePoint>> {
    let mut out: Vec<ProjectivePoint> = eigen_reports(p, source, budget)?
        .into_iter()
        .map(|r| r.eigenvalue)
        .collect();
    out.sort();
    Ok(out)
}

/// Eigenvectors up to scaling whose eigenvalue lies in the source, sorted.
///
/// Over the rationals this succeeds only while every eigenspace is at most a line.
pub fn eigenvectors_for(p: &MatrixPencil, source: &EigenvalueSource, budget: u64) -> Result<Vec<ProjectivePoint>> {
    let reports = eigen_reports(p, source, budget)?;
    let mut out = Vec::new();
    for r in reports {
        if r.eigenspace.dim() == 1 {
            out.push(ProjectivePoint::new(r.eigenspace.basis().row(0).to_vec())?);
        } else if p.field().is_prime_field() {
            out.extend(subspace_points(&r.eigenspace, budget)?);
        } else {
            return Err(Error::EnumerationUnsupported(format!(
                "{}-dimensional eigenspace over {}",
                r.eigenspace.dim(),
                p.field()
            )));
        }
        if out.len() as u64 > budget {
            return Err(Error::EnumerationTooLarge {
                count: out.len() as u128,
                budget,
            });
        }
    }
    out.sort();
    Ok(out)
}

/// `ε(P)`, computed one eigenvalue at a time.
pub fn eigenvector_variety(p: &MatrixPencil, budget: u64) -> Result<Vec<ProjectivePoint>> {
    if !p.field().is_prime_field() {
        return Err(Error::EnumerationUnsupported(p.field().to_string()));
    }
    eigenvectors_for(p, &EigenvalueSource::All, budget)
}

/// `ε(P)` by brute force over every point of `P(F_q^a)`.
pub fn eigenvector_variety_oracle(p: &MatrixPencil, budget: u64) -> Result<Vec<ProjectivePoint>> {
    if !p.field().is_prime_field() {
        return Err(Error::EnumerationUnsupported(p.field().to_string()));
    }
    p.require_reduced()?;
    let space = ProjectiveSpace::new(p.a(), p.field(), budget)?;
    let mut out: Vec<ProjectivePoint> = (0..space.len())
        .into_par_iter()
        .map(|i| space.point(i))
        .filter(|v| is_eigenvector_unchecked(p, v.coords()))
        .collect();
    out.sort();
    Ok(out)
}

/// Whether eigenvectors with eigenvalue in the source span `k^a`.
pub fn has_sufficiently_many(p: &MatrixPencil, source: &EigenvalueSource, budget: u64) -> Result<bool> {
    p.require_reduced()?;
    let lambdas = source.points(p.n(), p.field(), budget)?;
    let mut span = Subspace::zero(p.a(), p.field());
    for lambda in &lambdas {
        if span.is_full() {
            break;
        }
        span = span.sum(&eigenvector_space_unchecked(p, lambda))?;
    }
    Ok(span.is_full())
}

/// The sum `(U1, U2)` of all bristle submodules with eigenvalue in the source.
pub fn bristle_sum_submodule(p: &MatrixPencil, source: &EigenvalueSource, budget: u64) -> Result<(Subspace, Subspace)> {
    let reports = eigen_reports(p, source, budget)?;
    let mut u1 = Subspace::zero(p.a(), p.field());
    for r in &reports {
        u1 = u1.sum(&r.eigenspace)?;
    }
    let mut u2 = Subspace::zero(p.b(), p.field());
    for alpha in p.alphas() {
        u2 = u2.sum(&u1.image_under(alpha)?)?;
    }
    Ok((u1, u2))
}
