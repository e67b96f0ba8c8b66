//! Realizing quadric-defined varieties as eigenvalue sets of reduced pencils, and
//! shrinking a reduced pencil to a square one with the same bristles.
//!
//! Given quadrics `q_1, …, q_m` in `n` variables, the module `M ⊆ C` has
//! `M_1 = ∩ ker φ′_i` and `M_2 = C_2`. Since `q(c) = φ′(d(c))`, the bristles of `M` are
//! exactly the `d(c)` with `c` a common zero, so the eigenvalues of `M` are the points of
//! `V(q_1, …, q_m)`.

use crate::canonical::{build_canonical, eval_quadratic, pair_count, QuadraticForm};
use crate::eigen::{bristle_sum_submodule, eigen_reports, EigenvalueSource};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;
use crate::pencil::{simple, MatrixPencil, Vertex};
use crate::projective::{ProjectivePoint, ProjectiveSpace};
use crate::subspace::Subspace;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizationResult {
    /// The module `M`, in the echelon basis of `M_1`.
    pub pencil: MatrixPencil,
    /// `M_1` as a subspace of `C_1`.
    pub inclusion: Subspace,
    pub n: usize,
    pub quadrics: Vec<QuadraticForm>,
}

pub fn realize_variety(n: usize, field: Field, quadrics: &[QuadraticForm]) -> Result<RealizationResult> {
    if n == 0 {
        return Err(Error::InvalidParameter("need at least one variable".into()));
    }
    for (i, q) in quadrics.iter().enumerate() {
        if q.n() != n {
            return Err(Error::InvalidParameter(format!(
                "quadric {} has {} variables, expected {n}",
                i + 1,
                q.n()
            )));
        }
        if q.field() != field {
            return Err(Error::field_mismatch(field, q.field()));
        }
    }
    let c = build_canonical(n, field)?;
    let rows: Vec<Vec<Scalar>> = quadrics.iter().map(|q| q.coeffs().to_vec()).collect();
    let coefficients = Matrix::from_rows(field, pair_count(n), &rows)?;
    let inclusion = coefficients.kernel();
    let embed = inclusion.basis().transpose();
    let alphas = c
        .pencil()
        .alphas()
        .iter()
        .map(|alpha| alpha.matmul(&embed))
        .collect::<Result<Vec<_>>>()?;
    let pencil = MatrixPencil::new(inclusion.dim(), n, field, alphas)?;
    Ok(RealizationResult {
        pencil,
        inclusion,
        n,
        quadrics: quadrics.to_vec(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    /// Eigenvalues of the realized pencil, sorted.
    pub eigenvalues: Vec<ProjectivePoint>,
    /// Common zeros of the quadrics in `P(F_q^n)`, sorted.
    pub zero_set: Vec<ProjectivePoint>,
    pub max_eigenspace_dim: usize,
    pub passed: bool,
}

/// Compares the pencil's eigenvalues against a direct scan of the quadrics' zero set.
pub fn verify_realization(r: &RealizationResult, budget: u64) -> Result<VerificationReport> {
    let field = r.pencil.field();
    if !field.is_prime_field() {
        return Err(Error::EnumerationUnsupported(field.to_string()));
    }
    let reports = eigen_reports(&r.pencil, &EigenvalueSource::All, budget)?;
    let max_eigenspace_dim = reports.iter().map(|x| x.eigenspace.dim()).max().unwrap_or(0);
    let mut eigenvalues: Vec<ProjectivePoint> = reports.into_iter().map(|x| x.eigenvalue).collect();
    eigenvalues.sort();

    let space = ProjectiveSpace::new(r.n, field, budget)?;
    let mut zero_set = Vec::new();
    for point in space.iter() {
        let mut vanishes = true;
        for q in &r.quadrics {
            if !eval_quadratic(q, point.coords())?.is_zero() {
                vanishes = false;
                break;
            }
        }
        if vanishes {
            zero_set.push(point);
        }
    }
    zero_set.sort();
    let passed = eigenvalues == zero_set && max_eigenspace_dim <= 1;
    Ok(VerificationReport {
        eigenvalues,
        zero_set,
        max_eigenspace_dim,
        passed,
    })
}

/// Restricts to the bristle-generated part `(U1, U2)` and pads with `S(2)^{a′−b′}`.
pub fn squareize(p: &MatrixPencil, source: &EigenvalueSource, budget: u64) -> Result<MatrixPencil> {
    let (u1, u2) = bristle_sum_submodule(p, source, budget)?;
    if u1.dim() < u2.dim() {
        return Err(Error::InternalInvariant(format!(
            "bristle sum has dimension vector ({},{}) with a' < b'",
            u1.dim(),
            u2.dim()
        )));
    }
    let restricted = p.restrict(&u1, &u2)?;
    let pad = simple(Vertex::Sink, p.n(), p.field())?.power(u1.dim() - u2.dim())?;
    restricted.direct_sum(&pad)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratingBristle {
    pub eigenvalue: ProjectivePoint,
    pub vector: Vec<Scalar>,
}

/// Greedily picks eigenvectors that enlarge the vertex-1 span until it reaches `U1`.
///
/// Returns exactly `dim U1` bristles, whose submodules sum to `(U1, U2)`.
pub fn select_generating_bristles(
    p: &MatrixPencil,
    source: &EigenvalueSource,
    budget: u64,
) -> Result<Vec<GeneratingBristle>> {
    let reports = eigen_reports(p, source, budget)?;
    let (u1, u2) = bristle_sum_submodule(p, source, budget)?;
    let field = p.field();
    let mut span1 = Subspace::zero(p.a(), field);
    let mut chosen = Vec::new();
    'outer: for r in &reports {
        for v in r.eigenspace.basis().row_vecs() {
            if span1.dim() == u1.dim() {
                break 'outer;
            }
            if span1.contains(&v) {
                continue;
            }
            span1 = span1.sum(&Subspace::from_vectors(field, p.a(), std::slice::from_ref(&v))?)?;
            chosen.push(GeneratingBristle {
                eigenvalue: r.eigenvalue.clone(),
                vector: v,
            });
        }
    }
    if span1 != u1 || chosen.len() != u1.dim() {
        return Err(Error::InternalInvariant(format!(
            "selected {} bristles spanning dimension {}, expected {}",
            chosen.len(),
            span1.dim(),
            u1.dim()
        )));
    }
    let mut span2 = Subspace::zero(p.b(), field);
    for g in &chosen {
        let images = p.images(&g.vector)?;
        span2 = span2.sum(&Subspace::span(&images))?;
    }
    if span2 != u2 || u1.dim() < u2.dim() {
        return Err(Error::InternalInvariant(
            "selected bristles do not generate the bristle sum".into(),
        ));
    }
    Ok(chosen)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::build_canonical;
    use crate::eigen::{eigenvalues, eigenvector_variety_oracle};
    use crate::pencil::{bristle, DimensionVector};
    use crate::projective::DEFAULT_ENUM_BUDGET as BUDGET;

    fn gf(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    fn conic(f: Field) -> QuadraticForm {
        // x2^2 - x1 x3, pair order (11,12,13,22,23,33).
        QuadraticForm::from_i64(3, f, &[0, 0, -1, 1, 0, 0]).unwrap()
    }

    /// Independent count of conic points in P^2(F_5), scanning raw triples.
    fn conic_points_by_scan(p: i64) -> usize {
        let mut count = 0;
        for x in 0..p {
            for y in 0..p {
                for z in 0..p {
                    if (x, y, z) == (0, 0, 0) {
                        continue;
                    }
                    let lead = [x, y, z].into_iter().find(|&t| t != 0).unwrap();
                    if lead != 1 {
                        continue;
                    }
                    if (y * y - x * z).rem_euclid(p) == 0 {
                        count += 1;
                    }
                }
            }
        }
        count
    }

    #[test]
    fn conic_over_gf5() {
        let f = gf(5);
        assert_eq!(conic_points_by_scan(5), 6);
        let r = realize_variety(3, f, &[conic(f)]).unwrap();
        assert_eq!(r.pencil.dim_vector(), DimensionVector::new(5, 3));
        assert!(r.pencil.is_reduced());
        let rep = verify_realization(&r, BUDGET).unwrap();
        assert!(rep.passed);
        assert_eq!(rep.eigenvalues.len(), 6);
        assert_eq!(eigenvector_variety_oracle(&r.pencil, BUDGET).unwrap().len(), 6);
    }

    #[test]
    fn no_quadrics_gives_c() {
        for p in [2, 3, 5] {
            let f = gf(p);
            let r = realize_variety(2, f, &[]).unwrap();
            assert_eq!(&r.pencil, build_canonical(2, f).unwrap().pencil());
            let rep = verify_realization(&r, BUDGET).unwrap();
            assert!(rep.passed);
            assert_eq!(rep.eigenvalues.len() as u64, p + 1);
        }
    }

    #[test]
    fn full_rank_quadrics_give_empty_variety() {
        let f = gf(3);
        let qs: Vec<QuadraticForm> = (0..3)
            .map(|k| {
                let mut c = vec![0; 3];
                c[k] = 1;
                QuadraticForm::from_i64(2, f, &c).unwrap()
            })
            .collect();
        let r = realize_variety(2, f, &qs).unwrap();
        assert_eq!(r.pencil.dim_vector(), DimensionVector::new(0, 2));
        assert!(verify_realization(&r, BUDGET).unwrap().eigenvalues.is_empty());
    }

    #[test]
    fn double_line() {
        let f = gf(3);
        let q = QuadraticForm::from_i64(2, f, &[1, 0, 0]).unwrap();
        let rep = verify_realization(&realize_variety(2, f, &[q]).unwrap(), BUDGET).unwrap();
        assert!(rep.passed);
        assert_eq!(rep.zero_set, vec![ProjectivePoint::from_i64(f, &[0, 1]).unwrap()]);
    }

    #[test]
    fn mixed_variable_counts_are_rejected() {
        let f = gf(3);
        let q2 = QuadraticForm::zero(2, f);
        let q3 = QuadraticForm::zero(3, f);
        assert!(matches!(realize_variety(2, f, &[q2, q3]), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn squareize_canonical_n2() {
        let f = gf(3);
        let c = build_canonical(2, f).unwrap();
        let sq = squareize(c.pencil(), &EigenvalueSource::All, BUDGET).unwrap();
        assert_eq!(sq.dim_vector(), DimensionVector::new(3, 3));
        assert!(sq.is_reduced());
        let before = eigenvalues(c.pencil(), &EigenvalueSource::All, BUDGET).unwrap();
        let after = eigenvalues(&sq, &EigenvalueSource::All, BUDGET).unwrap();
        assert_eq!(before.len(), 4);
        assert_eq!(before, after);
    }

    #[test]
    fn squareize_bristle_plus_projective() {
        let f = gf(5);
        let lambda = ProjectivePoint::from_i64(f, &[1, 2]).unwrap();
        let p = bristle(&lambda).direct_sum(&simple(Vertex::Sink, 2, f).unwrap()).unwrap();
        let sq = squareize(&p, &EigenvalueSource::All, BUDGET).unwrap();
        assert_eq!(sq, bristle(&lambda));
    }

    #[test]
    fn generating_bristle_counts() {
        let c = build_canonical(2, gf(3)).unwrap();
        assert_eq!(select_generating_bristles(c.pencil(), &EigenvalueSource::All, BUDGET).unwrap().len(), 3);
        let c = build_canonical(3, gf(2)).unwrap();
        assert_eq!(select_generating_bristles(c.pencil(), &EigenvalueSource::All, BUDGET).unwrap().len(), 6);
        let f = gf(5);
        let b = bristle(&ProjectivePoint::from_i64(f, &[1, 1, 0]).unwrap());
        let picked = select_generating_bristles(&b, &EigenvalueSource::All, BUDGET).unwrap();
        assert_eq!(picked.len(), 1);
        assert_eq!(picked[0].eigenvalue, ProjectivePoint::from_i64(f, &[1, 1, 0]).unwrap());
    }
}
