//! Seeded generators for randomized checks. Every case gets its own ChaCha stream, so a
//! case's data depends only on `(seed, case)` and never on scheduling.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::canonical::{pair_index, QuadraticForm};
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;
use crate::pencil::{bristle, reduced_decomposition, MatrixPencil};
use crate::projective::ProjectivePoint;
use crate::reflect::build_preprojectives;

pub type CaseRng = ChaCha8Rng;

pub fn case_rng(seed: u64, case: u64) -> CaseRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(case);
    rng
}

/// Uniform over a prime field; small fractions over the rationals.
pub fn scalar(rng: &mut CaseRng, field: Field) -> Scalar {
    match field {
        Field::Prime(p) => field.from_i64(rng.gen_range(0..i64::from(p))),
        Field::Rational => {
            let num = field.from_i64(rng.gen_range(-4..=4));
            let den = field.from_i64(rng.gen_range(1..=3));
            &num * &den.inv().expect("nonzero")
        }
    }
}

pub fn nonzero_scalar(rng: &mut CaseRng, field: Field) -> Scalar {
    loop {
        let x = scalar(rng, field);
        if !x.is_zero() {
            return x;
        }
    }
}

/// Entries are zero with probability `1 − density`.
pub fn matrix(rng: &mut CaseRng, rows: usize, cols: usize, field: Field, density: f64) -> Matrix {
    let data = (0..rows * cols)
        .map(|_| {
            if rng.gen_bool(density) {
                scalar(rng, field)
            } else {
                field.zero()
            }
        })
        .collect();
    Matrix::new(rows, cols, field, data).expect("shape")
}

pub fn invertible(rng: &mut CaseRng, size: usize, field: Field) -> Matrix {
    loop {
        let m = matrix(rng, size, size, field, 1.0);
        if m.is_invertible() {
            return m;
        }
    }
}

pub fn point(rng: &mut CaseRng, n: usize, field: Field) -> ProjectivePoint {
    loop {
        let v: Vec<Scalar> = (0..n).map(|_| scalar(rng, field)).collect();
        if let Ok(p) = ProjectivePoint::new(v) {
            return p;
        }
    }
}

pub fn pencil(rng: &mut CaseRng, n: usize, a: usize, b: usize, field: Field) -> MatrixPencil {
    let density = [0.3, 0.6, 1.0][rng.gen_range(0..3)];
    let alphas = (0..n).map(|_| matrix(rng, b, a, field, density)).collect();
    MatrixPencil::new(a, b, field, alphas).expect("shape")
}

/// Hides a pencil's coordinates behind a random change of basis on both sides.
pub fn disguise(rng: &mut CaseRng, p: &MatrixPencil) -> MatrixPencil {
    let beta = invertible(rng, p.a(), p.field());
    let gamma = invertible(rng, p.b(), p.field());
    p.transform(&beta, &gamma).expect("square witnesses")
}

pub fn bristle_sum(rng: &mut CaseRng, n: usize, count: usize, field: Field) -> MatrixPencil {
    let mut out = MatrixPencil::empty(n, field).expect("n >= 1");
    for _ in 0..count {
        out = out.direct_sum(&bristle(&point(rng, n, field))).expect("compatible");
    }
    out
}

/// A reduced pencil with `a ≤ a_max`, `b ≤ b_max`: dense random, a disguised bristle sum,
/// or a bristle sum plus a random block.
pub fn reduced_pencil(rng: &mut CaseRng, n: usize, a_max: usize, b_max: usize, field: Field) -> MatrixPencil {
    let p = match rng.gen_range(0..4) {
        0 | 1 => {
            let a = rng.gen_range(0..=a_max);
            let b = rng.gen_range(0..=b_max);
            pencil(rng, n, a, b, field)
        }
        2 => {
            let k = rng.gen_range(1..=a_max.min(b_max).max(1));
            let base = bristle_sum(rng, n, k, field);
            disguise(rng, &base)
        }
        _ => {
            let k = rng.gen_range(0..=a_max.min(b_max));
            let a = rng.gen_range(0..=a_max - k);
            let b = rng.gen_range(0..=b_max - k);
            let base = bristle_sum(rng, n, k, field)
                .direct_sum(&pencil(rng, n, a, b, field))
                .expect("compatible");
            disguise(rng, &base)
        }
    };
    if p.is_reduced() {
        p
    } else {
        reduced_decomposition(&p).reduced
    }
}

/// A reduced pencil containing at least one bristle, possibly plus a random reduced block.
pub fn bristled_pencil(rng: &mut CaseRng, n: usize, max_bristles: usize, field: Field) -> MatrixPencil {
    let k = rng.gen_range(1..=max_bristles);
    let mut base = bristle_sum(rng, n, k, field);
    if rng.gen_bool(0.5) {
        let extra = reduced_pencil(rng, n, 3, 3, field);
        base = base.direct_sum(&extra).expect("compatible");
    }
    disguise(rng, &base)
}

/// A quadric that is dense, sparse, or a product of two linear forms.
pub fn quadric(rng: &mut CaseRng, n: usize, field: Field) -> QuadraticForm {
    let len = n * (n + 1) / 2;
    match rng.gen_range(0..3) {
        0 => QuadraticForm::new(n, field, (0..len).map(|_| scalar(rng, field)).collect()).expect("shape"),
        1 => {
            let mut coeffs = vec![field.zero(); len];
            let terms = rng.gen_range(1..=2.min(len));
            for _ in 0..terms {
                let k = rng.gen_range(0..len);
                coeffs[k] = nonzero_scalar(rng, field);
            }
            QuadraticForm::new(n, field, coeffs).expect("shape")
        }
        _ => {
            let l: Vec<Scalar> = (0..n).map(|_| scalar(rng, field)).collect();
            let m: Vec<Scalar> = (0..n).map(|_| scalar(rng, field)).collect();
            let mut coeffs = vec![field.zero(); len];
            for (r, lr) in l.iter().enumerate() {
                for (s, ms) in m.iter().enumerate() {
                    let k = pair_index(n, r, s);
                    coeffs[k] = &coeffs[k] + &(lr * ms);
                }
            }
            QuadraticForm::new(n, field, coeffs).expect("shape")
        }
    }
}

pub fn quadric_system(rng: &mut CaseRng, n: usize, m: usize, field: Field) -> Vec<QuadraticForm> {
    (0..m).map(|_| quadric(rng, n, field)).collect()
}

/// `(a,b; α)` with a single matrix of full column rank.
pub fn injective_single(rng: &mut CaseRng, a: usize, b: usize, field: Field) -> MatrixPencil {
    assert!(a <= b);
    loop {
        let m = matrix(rng, b, a, field, 1.0);
        if m.rank() == a {
            return MatrixPencil::new(a, b, field, vec![m]).expect("shape");
        }
    }
}

/// The Kronecker pair `(I, J_μ(size))` for `λ = (1:μ)`, or `(J_0, I)` for `λ = (0:1)`.
pub fn jordan_pair(size: usize, lambda: &ProjectivePoint) -> MatrixPencil {
    let field = lambda.field();
    let c = lambda.coords();
    let mut jordan = Matrix::zeros(size, size, field);
    let (first, second) = (&c[0], &c[1]);
    let diag = if first.is_zero() { field.zero() } else { second.clone() };
    for i in 0..size {
        jordan.set(i, i, diag.clone());
        if i + 1 < size {
            jordan.set(i, i + 1, field.one());
        }
    }
    let alphas = if first.is_zero() {
        vec![jordan, Matrix::identity(size, field)]
    } else {
        vec![Matrix::identity(size, field), jordan]
    };
    MatrixPencil::new(size, size, field, alphas).expect("shape")
}

/// A monic polynomial of degree 2 or 3 with no roots in `F_p` (hence irreducible), as
/// coefficients `c_0, …, c_{d−1}`.
pub fn irreducible_poly(rng: &mut CaseRng, degree: usize, field: Field) -> Vec<Scalar> {
    assert!(degree == 2 || degree == 3);
    let elements = field.elements().expect("prime field");
    loop {
        let coeffs: Vec<Scalar> = (0..degree).map(|_| scalar(rng, field)).collect();
        let has_root = elements.iter().any(|x| {
            let mut acc = field.one();
            for c in coeffs.iter().rev() {
                acc = &(&acc * x) + c;
            }
            acc.is_zero()
        });
        if !has_root {
            return coeffs;
        }
    }
}

/// `(I, companion(f))` for an irreducible `f`: indecomposable with no eigenvectors.
pub fn companion_pair(rng: &mut CaseRng, degree: usize, field: Field) -> MatrixPencil {
    let coeffs = irreducible_poly(rng, degree, field);
    let mut comp = Matrix::zeros(degree, degree, field);
    for i in 1..degree {
        comp.set(i, i - 1, field.one());
    }
    for (i, c) in coeffs.iter().enumerate() {
        comp.set(i, degree - 1, -c);
    }
    MatrixPencil::new(degree, degree, field, vec![Matrix::identity(degree, field), comp]).expect("shape")
}

/// A disguised `n = 2` indecomposable with `a < b` (preprojective) or `a = b`.
pub fn kronecker_indecomposable(rng: &mut CaseRng, field: Field, square: bool) -> MatrixPencil {
    let base = if square {
        if rng.gen_bool(0.5) {
            let size = rng.gen_range(1..=4);
            jordan_pair(size, &point(rng, 2, field))
        } else {
            let degree = *[2usize, 3].choose(rng).expect("nonempty");
            companion_pair(rng, degree, field)
        }
    } else {
        let k = rng.gen_range(1..=5);
        build_preprojectives(2, k + 1, field).expect("n = 2").pop().expect("nonempty")
    };
    disguise(rng, &base)
}
