//! Reflection functors on pencils, their iteration, the preprojective series, and the
//! orbit harness testing `E_0`-sufficiency along `σ^t P`.

use std::fmt;

use rayon::prelude::*;

use crate::eigen::{eigenvector_space_unchecked, has_sufficiently_many, EigenvalueSource};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::pencil::{reduced_decomposition, simple, DimensionVector, MatrixPencil, Vertex};
use crate::projective::{ProjectivePoint, DEFAULT_ENUM_BUDGET};
use crate::subspace::Subspace;

/// The `n + 2` eigenvalues `<e_{n-1}>, <e_n>, <e_i + e_{i+1}>, <e_1 + e_n>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct E0Set {
    pub n: usize,
    pub points: Vec<ProjectivePoint>,
}

pub fn e0_set(n: usize, field: Field) -> Result<E0Set> {
    if n < 3 {
        return Err(Error::Unsupported(format!(
            "the E0 eigenvalue set needs n >= 3, got n = {n}"
        )));
    }
    let unit = |idx: &[usize]| {
        let mut v = vec![field.zero(); n];
        for &i in idx {
            v[i] = field.one();
        }
        ProjectivePoint::new(v).expect("nonzero")
    };
    let mut points = vec![unit(&[n - 2]), unit(&[n - 1])];
    for i in 0..n - 1 {
        points.push(unit(&[i, i + 1]));
    }
    points.push(unit(&[0, n - 1]));
    Ok(E0Set { n, points })
}

/// Sink reflection followed by swapping the vertices.
///
/// With `U = ker([α_1 | … | α_n])` and its echelon basis, `ω_i` is the `i`-th block of
/// `a` coordinates of that basis, as an `a × dim U` matrix.
pub fn sigma(p: &MatrixPencil) -> MatrixPencil {
    let (a, n, field) = (p.a(), p.n(), p.field());
    let combined = p.combined();
    let kernel = combined.kernel();
    let z = kernel.dim();
    debug_assert_eq!(z, n * a - combined.rank());
    let basis = kernel.basis();
    let omegas = (0..n)
        .map(|i| {
            let cols: Vec<usize> = (i * a..(i + 1) * a).collect();
            basis.select_columns(&cols).transpose()
        })
        .collect();
    MatrixPencil::new(z, a, field, omegas).expect("reflected shapes")
}

/// Source reflection followed by swapping the vertices; left adjoint of [`sigma`].
///
/// The cokernel of `v ↦ (α_1 v, …, α_n v)` is identified with the coordinates that are not
/// pivots of the image's echelon basis.
pub fn sigma_minus(p: &MatrixPencil) -> MatrixPencil {
    let (b, n, field) = (p.b(), p.n(), p.field());
    let total = n * b;
    let image = Subspace::span(&p.stacked().transpose());
    let free = image.complement_coordinates();
    let mut slot = vec![usize::MAX; total];
    for (k, &j) in free.iter().enumerate() {
        slot[j] = k;
    }
    // Quotient map onto the free coordinates, one column per coordinate of (k^b)^n.
    let mut quotient = Matrix::zeros(free.len(), total, field);
    for (j, &k) in free.iter().enumerate() {
        quotient.set(j, k, field.one());
    }
    for (row, &pivot) in image.pivots().iter().enumerate() {
        for &j in &free {
            let x = image.basis().get(row, j);
            if !x.is_zero() {
                quotient.set(slot[j], pivot, -x);
            }
        }
    }
    let omegas = (0..n)
        .map(|i| {
            let cols: Vec<usize> = (i * b..(i + 1) * b).collect();
            quotient.select_columns(&cols)
        })
        .collect();
    MatrixPencil::new(b, free.len(), field, omegas).expect("reflected shapes")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum E0Status {
    Yes,
    No,
    Skipped,
}

impl fmt::Display for E0Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            E0Status::Yes => "yes",
            E0Status::No => "no",
            E0Status::Skipped => "skipped",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitRecord {
    pub t: usize,
    pub dim: DimensionVector,
    pub e0: E0Status,
    /// Sufficiency over every eigenvalue, when requested.
    pub full: Option<bool>,
    /// Copies of `S(1)` split off before testing.
    pub stripped: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OrbitReport {
    pub records: Vec<OrbitRecord>,
}

impl OrbitReport {
    pub fn first_sufficient(&self) -> Option<usize> {
        self.records.iter().find(|r| r.e0 == E0Status::Yes).map(|r| r.t)
    }

    /// One `t=… dim=(a,b) e0=…` line per iterate, then `first_sufficient_t=…`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&format!("t={} dim={} e0={}\n", r.t, r.dim, r.e0));
        }
        match self.first_sufficient() {
            Some(t) => out.push_str(&format!("first_sufficient_t={t}\n")),
            None => out.push_str("first_sufficient_t=none\n"),
        }
        out
    }

    /// Human-readable notes that are not part of the fixed line format.
    pub fn notes(&self) -> Vec<String> {
        let mut notes = Vec::new();
        for r in &self.records {
            if r.stripped > 0 {
                notes.push(format!(
                    "t={}: tested the reduced part after splitting off S(1)^{}",
                    r.t, r.stripped
                ));
            }
            if let Some(full) = r.full {
                notes.push(format!("t={}: sufficient over all eigenvalues = {full}", r.t));
            }
        }
        notes
    }
}

/// Limits for the orbit harness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HarnessConfig {
    pub t_max: usize,
    /// Iterates with `a + b` above this are not tested (`e0=skipped`).
    pub max_dim: usize,
    /// Also test sufficiency over all of `P(F_q^n)`.
    pub full: bool,
    pub budget: u64,
}

impl HarnessConfig {
    pub fn new(t_max: usize) -> HarnessConfig {
        HarnessConfig {
            t_max,
            max_dim: 1000,
            full: false,
            budget: DEFAULT_ENUM_BUDGET,
        }
    }
}

fn e0_sufficient(p: &MatrixPencil, e0: &E0Set) -> bool {
    let spaces: Vec<Subspace> = e0
        .points
        .par_iter()
        .map(|lambda| eigenvector_space_unchecked(p, lambda))
        .collect();
    let mut span = Subspace::zero(p.a(), p.field());
    for s in &spaces {
        span = span.sum(s).expect("same ambient space");
    }
    span.is_full()
}

fn record(p: &MatrixPencil, t: usize, e0: Option<&E0Set>, config: &HarnessConfig) -> Result<OrbitRecord> {
    let dim = p.dim_vector();
    let mut rec = OrbitRecord {
        t,
        dim,
        e0: E0Status::Skipped,
        full: None,
        stripped: 0,
    };
    let Some(e0) = e0 else { return Ok(rec) };
    if dim.a + dim.b > config.max_dim {
        return Ok(rec);
    }
    let decomposition = reduced_decomposition(p);
    rec.stripped = decomposition.s;
    let reduced = &decomposition.reduced;
    rec.e0 = if e0_sufficient(reduced, e0) {
        E0Status::Yes
    } else {
        E0Status::No
    };
    if config.full {
        rec.full = Some(has_sufficiently_many(reduced, &EigenvalueSource::All, config.budget)?);
    }
    Ok(rec)
}

fn step(p: &MatrixPencil, direction: Direction) -> MatrixPencil {
    match direction {
        Direction::Forward => sigma(p),
        Direction::Inverse => sigma_minus(p),
    }
}

/// Applies the reflection `t` times, stopping early once the pencil is `(0,0)`.
///
/// With `track_e0` and `n ≥ 3`, each iterate is tested for `E_0`-sufficiency; otherwise
/// records say `skipped`.
pub fn sigma_iterate(
    p: &MatrixPencil,
    t: usize,
    direction: Direction,
    track_e0: bool,
) -> Result<(MatrixPencil, OrbitReport)> {
    let e0 = if track_e0 && p.n() >= 3 {
        Some(e0_set(p.n(), p.field())?)
    } else {
        None
    };
    let config = HarnessConfig::new(t);
    let mut report = OrbitReport::default();
    let mut current = p.clone();
    report.records.push(record(&current, 0, e0.as_ref(), &config)?);
    for k in 1..=t {
        if current.dim_vector().is_zero() {
            break;
        }
        current = step(&current, direction);
        report.records.push(record(&current, k, e0.as_ref(), &config)?);
    }
    Ok((current, report))
}

/// Tests `E_0`-sufficiency of `σ^t p` for `t = 0..=t_max`, recording every flag.
pub fn orbit_harness(p: &MatrixPencil, config: &HarnessConfig) -> Result<OrbitReport> {
    let e0 = e0_set(p.n(), p.field())?;
    if !p.field().is_prime_field() {
        return Err(Error::EnumerationUnsupported(p.field().to_string()));
    }
    let mut report = OrbitReport::default();
    let mut current = p.clone();
    for t in 0..=config.t_max {
        if t > 0 {
            if current.dim_vector().is_zero() {
                break;
            }
            current = sigma(&current);
        }
        report.records.push(record(&current, t, Some(&e0), config)?);
    }
    Ok(report)
}

/// `(0,1), (1,n), …` under `(a,b) ↦ (b, nb − a)`; stops early on overflow.
pub fn preprojective_dimvecs(n: usize, count: usize) -> Result<Vec<DimensionVector>> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("preprojective series needs n >= 2, got {n}")));
    }
    let mut out = Vec::with_capacity(count);
    let (mut a, mut b) = (0usize, 1usize);
    for _ in 0..count {
        out.push(DimensionVector::new(a, b));
        let Some(next) = n.checked_mul(b).and_then(|x| x.checked_sub(a)) else {
            break;
        };
        (a, b) = (b, next);
    }
    Ok(out)
}

/// `a² + b² − nab`, as a signed integer.
pub fn tits_form(n: usize, d: DimensionVector) -> i128 {
    let (a, b, n) = (d.a as i128, d.b as i128, n as i128);
    a * a + b * b - n * a * b
}

/// `[S(2), σ⁻ S(2), σ⁻² S(2), …]`.
pub fn build_preprojectives(n: usize, count: usize, field: Field) -> Result<Vec<MatrixPencil>> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("preprojective series needs n >= 2, got {n}")));
    }
    let mut out = Vec::with_capacity(count);
    let mut current = simple(Vertex::Sink, n, field)?;
    for _ in 0..count {
        let next = sigma_minus(&current);
        out.push(current);
        current = next;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::build_canonical;
    use crate::eigen::eigenvector_variety;
    use crate::pencil::{bristle, hom_dim};

    fn gf(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    #[test]
    fn e0_points_n3() {
        let f = gf(5);
        let e0 = e0_set(3, f).unwrap();
        let expect: Vec<ProjectivePoint> = [[0, 1, 0], [0, 0, 1], [1, 1, 0], [0, 1, 1], [1, 0, 1]]
            .iter()
            .map(|c| ProjectivePoint::from_i64(f, c).unwrap())
            .collect();
        assert_eq!(e0.points, expect);
        assert_eq!(e0_set(4, f).unwrap().points.len(), 6);
        for n in 3..=6 {
            let mut pts = e0_set(n, gf(2)).unwrap().points;
            pts.sort();
            pts.dedup();
            assert_eq!(pts.len(), n + 2);
        }
        assert!(matches!(e0_set(2, f), Err(Error::Unsupported(_))));
    }

    #[test]
    fn sigma_on_simples_and_bristles() {
        let f = gf(3);
        assert_eq!(sigma(&simple(Vertex::Sink, 3, f).unwrap()).dim_vector(), DimensionVector::new(0, 0));
        let s = sigma(&simple(Vertex::Source, 3, f).unwrap());
        assert_eq!(s.dim_vector(), DimensionVector::new(3, 1));
        for i in 0..3 {
            let mut e = vec![0; 3];
            e[i] = 1;
            assert_eq!(s.alpha(i), &Matrix::from_i64(f, 1, 3, &e).unwrap());
        }
        let b = bristle(&ProjectivePoint::from_i64(f, &[1, 2, 0]).unwrap());
        assert_eq!(sigma(&b).dim_vector(), DimensionVector::new(2, 1));
    }

    #[test]
    fn sigma_of_first_bristle() {
        let f = gf(5);
        let b = bristle(&ProjectivePoint::from_i64(f, &[1, 0, 0]).unwrap());
        let s = sigma(&b);
        assert_eq!(s.alpha(0), &Matrix::from_i64(f, 1, 2, &[0, 0]).unwrap());
        assert_eq!(s.alpha(1), &Matrix::from_i64(f, 1, 2, &[1, 0]).unwrap());
        assert_eq!(s.alpha(2), &Matrix::from_i64(f, 1, 2, &[0, 1]).unwrap());
    }

    #[test]
    fn sigma_minus_on_simples() {
        let f = gf(3);
        let p = sigma_minus(&simple(Vertex::Sink, 3, f).unwrap());
        assert_eq!(p.dim_vector(), DimensionVector::new(1, 3));
        for i in 0..3 {
            let mut e = vec![0; 3];
            e[i] = 1;
            assert_eq!(p.alpha(i), &Matrix::from_i64(f, 3, 1, &e).unwrap());
        }
        assert!(sigma_minus(&simple(Vertex::Source, 3, f).unwrap()).dim_vector().is_zero());
    }

    #[test]
    fn adjoint_round_trip_on_canonical() {
        for n in [2, 3] {
            let c = build_canonical(n, gf(3)).unwrap();
            let back = sigma_minus(&sigma(c.pencil()));
            assert_eq!(back.dim_vector(), c.pencil().dim_vector());
            assert_eq!(hom_dim(&back, &back).unwrap(), hom_dim(c.pencil(), c.pencil()).unwrap());
        }
    }

    #[test]
    fn coxeter_dimension_on_canonical() {
        for n in [2usize, 3] {
            let c = build_canonical(n, gf(5)).unwrap();
            let d = c.pencil().dim_vector();
            let s2 = sigma(&sigma(c.pencil())).dim_vector();
            let (a, b) = (d.a as i64, d.b as i64);
            let ni = n as i64;
            assert_eq!(s2.a as i64, (ni * ni - 1) * a - ni * b);
            assert_eq!(s2.b as i64, ni * a - b);
        }
    }

    #[test]
    fn preprojective_series() {
        let d: Vec<_> = preprojective_dimvecs(2, 4).unwrap().iter().map(|d| (d.a, d.b)).collect();
        assert_eq!(d, [(0, 1), (1, 2), (2, 3), (3, 4)]);
        let d: Vec<_> = preprojective_dimvecs(3, 4).unwrap().iter().map(|d| (d.a, d.b)).collect();
        assert_eq!(d, [(0, 1), (1, 3), (3, 8), (8, 21)]);
        for n in [2, 3, 4] {
            for d in preprojective_dimvecs(n, 10).unwrap() {
                assert!(d.a < d.b);
                assert_eq!(tits_form(n, d), 1);
            }
        }
        for n in [2, 3] {
            let built = build_preprojectives(n, 5, gf(3)).unwrap();
            assert_eq!(built[0], simple(Vertex::Sink, n, gf(3)).unwrap());
            let dims: Vec<_> = built.iter().map(|p| p.dim_vector()).collect();
            assert_eq!(dims, preprojective_dimvecs(n, 5).unwrap());
            for p in &built {
                assert!(eigenvector_variety(p, DEFAULT_ENUM_BUDGET).unwrap().is_empty());
            }
        }
    }

    #[test]
    fn preprojectives_die_under_sigma() {
        let f = gf(2);
        for n in [2, 3] {
            for (k, p) in build_preprojectives(n, 4, f).unwrap().iter().enumerate() {
                let (end, report) = sigma_iterate(p, k + 1, Direction::Forward, false).unwrap();
                assert!(end.dim_vector().is_zero());
                assert!(report.records.windows(2).all(|w| w[0].t + 1 == w[1].t));
            }
        }
    }

    #[test]
    fn kronecker_trajectory_descends() {
        let f = gf(3);
        let p = &build_preprojectives(2, 5, f).unwrap()[3];
        assert_eq!(p.dim_vector(), DimensionVector::new(3, 4));
        let (_, report) = sigma_iterate(p, 10, Direction::Forward, false).unwrap();
        let dims: Vec<_> = report.records.iter().map(|r| (r.dim.a, r.dim.b)).collect();
        assert_eq!(dims, [(3, 4), (2, 3), (1, 2), (0, 1), (0, 0)]);
    }

    #[test]
    fn iterate_zero_is_identity() {
        let f = gf(5);
        let b = bristle(&ProjectivePoint::from_i64(f, &[1, 2, 3]).unwrap());
        let (p, report) = sigma_iterate(&b, 0, Direction::Forward, true).unwrap();
        assert_eq!(p, b);
        assert_eq!(report.records.len(), 1);
    }

    #[test]
    fn harness_on_first_bristle() {
        let f = gf(5);
        let b = bristle(&ProjectivePoint::from_i64(f, &[1, 0, 0]).unwrap());
        let mut config = HarnessConfig::new(3);
        config.full = true;
        let report = orbit_harness(&b, &config).unwrap();
        let dims: Vec<_> = report.records.iter().map(|r| (r.dim.a, r.dim.b)).collect();
        assert_eq!(dims, [(1, 1), (2, 1), (5, 2), (13, 5)]);
        assert_eq!(report.records[0].e0, E0Status::No);
        assert_eq!(report.first_sufficient(), Some(1));
        let text = report.to_text();
        assert!(text.starts_with("t=0 dim=(1,1) e0=no\nt=1 dim=(2,1) e0=yes\n"));
        assert!(text.ends_with("first_sufficient_t=1\n"));
    }

    #[test]
    fn harness_rejects_n2() {
        let f = gf(5);
        let p = MatrixPencil::new(
            2,
            2,
            f,
            vec![
                Matrix::identity(2, f),
                Matrix::from_i64(f, 2, 2, &[2, 1, 0, 2]).unwrap(),
            ],
        )
        .unwrap();
        assert!(matches!(orbit_harness(&p, &HarnessConfig::new(4)), Err(Error::Unsupported(_))));
    }

    #[test]
    fn harness_skips_large_iterates() {
        let f = gf(5);
        let b = bristle(&ProjectivePoint::from_i64(f, &[1, 0, 0]).unwrap());
        let mut config = HarnessConfig::new(4);
        config.max_dim = 10;
        let report = orbit_harness(&b, &config).unwrap();
        let flags: Vec<_> = report.records.iter().map(|r| r.e0).collect();
        assert_eq!(
            flags,
            [E0Status::No, E0Status::Yes, E0Status::Yes, E0Status::Skipped, E0Status::Skipped]
        );
    }
}
