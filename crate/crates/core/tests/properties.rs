use proptest::prelude::*;
use rand::Rng;

use eigenpencil::canonical::veronese_d;
use eigenpencil::eigen::{eigen_reports, eigenvalue_of, eigenvector_space, is_eigenvector, EigenvalueSource};
use eigenpencil::io::{parse_pencil, write_pencil};
use eigenpencil::pencil::{hom_dim, is_equivalence_witness, reduced_decomposition};
use eigenpencil::projective::DEFAULT_ENUM_BUDGET as BUDGET;
use eigenpencil::random::{self, case_rng, CaseRng};
use eigenpencil::reflect::{preprojective_dimvecs, sigma, tits_form};
use eigenpencil::{Field, Matrix, ProjectivePoint, Scalar, Subspace};

fn field_from(code: u8) -> Field {
    match code % 5 {
        0 => Field::Rational,
        1 => Field::Prime(2),
        2 => Field::Prime(3),
        3 => Field::Prime(5),
        _ => Field::Prime(7),
    }
}

fn prime_from(code: u8) -> Field {
    Field::Prime([2, 3, 5][code as usize % 3])
}

fn rng(seed: u64) -> CaseRng {
    case_rng(seed, 0)
}

fn nonzero_vector(r: &mut CaseRng, len: usize, field: Field) -> Vec<Scalar> {
    random::point(r, len, field).into_coords()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rref_is_idempotent(seed: u64, code: u8, rows in 0usize..6, cols in 0usize..6) {
        let f = field_from(code);
        let m = random::matrix(&mut rng(seed), rows, cols, f, 0.7);
        let (r, pivots) = m.rref();
        let (r2, pivots2) = r.rref();
        prop_assert_eq!(&r, &r2);
        prop_assert_eq!(pivots, pivots2);
    }

    #[test]
    fn rank_is_transpose_invariant_and_nullity_adds_up(seed: u64, code: u8, rows in 0usize..6, cols in 0usize..6) {
        let f = field_from(code);
        let m = random::matrix(&mut rng(seed), rows, cols, f, 0.6);
        prop_assert_eq!(m.rank(), m.transpose().rank());
        let kernel = m.kernel();
        prop_assert_eq!(m.rank() + kernel.dim(), cols);
        for v in kernel.basis().row_vecs() {
            prop_assert!(m.apply(&v).unwrap().iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn inverse_is_two_sided(seed: u64, code: u8, size in 0usize..5) {
        let f = field_from(code);
        let m = random::invertible(&mut rng(seed), size, f);
        let inv = m.inverse().unwrap();
        prop_assert_eq!(m.matmul(&inv).unwrap(), Matrix::identity(size, f));
        prop_assert_eq!(inv.matmul(&m).unwrap(), Matrix::identity(size, f));
    }

    #[test]
    fn subspace_modular_law(seed: u64, code: u8, ambient in 1usize..6) {
        let f = field_from(code);
        let mut r = rng(seed);
        let du = r.gen_range(0..=ambient);
        let dv = r.gen_range(0..=ambient);
        let u = Subspace::span(&random::matrix(&mut r, du, ambient, f, 0.8));
        let v = Subspace::span(&random::matrix(&mut r, dv, ambient, f, 0.8));
        let sum = u.sum(&v).unwrap();
        let meet = u.intersection(&v).unwrap();
        prop_assert_eq!(sum.dim() + meet.dim(), u.dim() + v.dim());
        prop_assert!(sum.contains_subspace(&u) && u.contains_subspace(&meet) && v.contains_subspace(&meet));
    }

    #[test]
    fn pencil_text_round_trip(seed: u64, code: u8, n in 1usize..4, a in 0usize..5, b in 0usize..5) {
        let p = random::pencil(&mut rng(seed), n, a, b, field_from(code));
        let text = write_pencil(&p);
        let back = parse_pencil(&text).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(write_pencil(&back), text);
    }

    #[test]
    fn eigenvector_test_is_scale_invariant(seed: u64, code: u8, n in 1usize..4) {
        let f = field_from(code);
        let mut r = rng(seed);
        let p = random::reduced_pencil(&mut r, n, 3, 3, f);
        prop_assume!(p.a() > 0);
        let v = nonzero_vector(&mut r, p.a(), f);
        let c = random::nonzero_scalar(&mut r, f);
        let cv: Vec<Scalar> = v.iter().map(|x| x * &c).collect();
        let is = is_eigenvector(&p, &v).unwrap();
        prop_assert_eq!(is, is_eigenvector(&p, &cv).unwrap());
        if is {
            prop_assert_eq!(eigenvalue_of(&p, &v).unwrap(), eigenvalue_of(&p, &cv).unwrap());
        }
    }

    #[test]
    fn eigenvectors_transport_along_witnesses(seed: u64, code: u8, n in 1usize..4) {
        let f = field_from(code);
        let mut r = rng(seed);
        let p = random::reduced_pencil(&mut r, n, 3, 3, f);
        let beta = random::invertible(&mut r, p.a(), f);
        let gamma = random::invertible(&mut r, p.b(), f);
        let q = p.transform(&beta, &gamma).unwrap();
        prop_assert!(is_equivalence_witness(&p, &q, &beta, &gamma).unwrap());
        prop_assume!(p.a() > 0);
        let v = nonzero_vector(&mut r, p.a(), f);
        let bv = beta.apply(&v).unwrap();
        let is = is_eigenvector(&q, &v).unwrap();
        prop_assert_eq!(is, is_eigenvector(&p, &bv).unwrap());
        if is {
            prop_assert_eq!(eigenvalue_of(&q, &v).unwrap(), eigenvalue_of(&p, &bv).unwrap());
        }
    }

    #[test]
    fn eigenspaces_fiber_the_variety(seed: u64, code: u8, n in 1usize..4) {
        let f = prime_from(code);
        let p = random::reduced_pencil(&mut rng(seed), n, 4, 4, f);
        let reports = eigen_reports(&p, &EigenvalueSource::All, BUDGET).unwrap();
        for (i, x) in reports.iter().enumerate() {
            for v in x.eigenspace.basis().row_vecs() {
                prop_assert_eq!(&eigenvalue_of(&p, &v).unwrap(), &x.eigenvalue);
            }
            for y in &reports[i + 1..] {
                prop_assert!(x.eigenspace.intersection(&y.eigenspace).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn rational_eigenspaces_match_explicit_lists(seed: u64, n in 1usize..4) {
        let f = Field::Rational;
        let mut r = rng(seed);
        let p = random::bristle_sum(&mut r, n, 2, f);
        let lambda = random::point(&mut r, n, f);
        let space = eigenvector_space(&p, &lambda).unwrap();
        for v in space.basis().row_vecs() {
            prop_assert_eq!(eigenvalue_of(&p, &v).unwrap(), lambda.clone());
        }
    }

    #[test]
    fn hom_dim_is_additive(seed: u64, code: u8, n in 1usize..4) {
        let f = prime_from(code);
        let mut r = rng(seed);
        let p = random::reduced_pencil(&mut r, n, 2, 2, f);
        let q = random::reduced_pencil(&mut r, n, 2, 2, f);
        let t = random::reduced_pencil(&mut r, n, 2, 2, f);
        let sum = p.direct_sum(&q).unwrap();
        prop_assert_eq!(hom_dim(&sum, &t).unwrap(), hom_dim(&p, &t).unwrap() + hom_dim(&q, &t).unwrap());
        prop_assert_eq!(hom_dim(&t, &sum).unwrap(), hom_dim(&t, &p).unwrap() + hom_dim(&t, &q).unwrap());
    }

    #[test]
    fn reduced_decomposition_is_a_witnessed_split(seed: u64, code: u8, n in 1usize..4, a in 0usize..5, b in 0usize..4) {
        let f = field_from(code);
        let p = random::pencil(&mut rng(seed), n, a, b, f);
        let d = reduced_decomposition(&p);
        prop_assert!(d.reduced.is_reduced());
        prop_assert_eq!(d.s + d.reduced.a(), p.a());
        let split = d.split_form().unwrap();
        prop_assert!(is_equivalence_witness(&p, &split, &d.beta, &Matrix::identity(p.b(), f)).unwrap());
    }

    #[test]
    fn veronese_separates_points(seed: u64, code: u8, n in 1usize..5) {
        let f = field_from(code);
        let mut r = rng(seed);
        let x = random::point(&mut r, n, f);
        let y = random::point(&mut r, n, f);
        let dx = ProjectivePoint::new(veronese_d(x.coords())).unwrap();
        let dy = ProjectivePoint::new(veronese_d(y.coords())).unwrap();
        prop_assert_eq!(dx == dy, x == y);
    }

    #[test]
    fn sigma_dimension_rule(seed: u64, code: u8, n in 1usize..5) {
        let f = field_from(code);
        let p = random::pencil(&mut rng(seed), n, 3, 3, f);
        let s = sigma(&p);
        prop_assert_eq!(s.a(), n * p.a() - p.combined().rank());
        prop_assert_eq!(s.b(), p.a());
        prop_assert!(s.is_reduced());
    }

    #[test]
    fn sigma_is_deterministic(seed: u64, code: u8) {
        let f = field_from(code);
        let p = random::reduced_pencil(&mut rng(seed), 3, 4, 4, f);
        let pool = rayon::ThreadPoolBuilder::new().num_threads(3).build().unwrap();
        let other = pool.install(|| sigma(&p));
        prop_assert_eq!(sigma(&p), other);
    }
}

#[test]
fn tits_form_is_conserved() {
    for n in 2..=6 {
        for d in preprojective_dimvecs(n, 12).unwrap() {
            assert_eq!(tits_form(n, d), 1, "n = {n}, {d}");
        }
    }
}
