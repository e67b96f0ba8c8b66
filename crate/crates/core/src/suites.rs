//! Named randomized invariant suites. Each case draws from its own seeded stream and
//! reports one line; the text is identical for any thread count.

use std::fmt::Write as _;

use rand::Rng;
use rayon::prelude::*;

use crate::canonical::{apply_functional, build_canonical, eval_quadratic, quad_to_hom, veronese_d};
use crate::eigen::{
    bristle_sum_submodule, eigenvalues, eigenvector_space, eigenvector_variety, eigenvector_variety_oracle,
    EigenvalueSource,
};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::pencil::{bristle, hom_dim};
use crate::random::{self, case_rng, CaseRng};
use crate::realize::{realize_variety, select_generating_bristles, squareize, verify_realization};
use crate::reflect::{build_preprojectives, preprojective_dimvecs, sigma, sigma_minus, tits_form};
use crate::subspace::Subspace;

pub const SUITES: [&str; 4] = ["oracle-equivalence", "canonical", "realization", "reflection"];

pub const DEFAULT_CASES: usize = 50;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub text: String,
    pub passed: usize,
    pub failed: usize,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

type CaseResult = Result<(bool, String)>;

fn small_field(rng: &mut CaseRng) -> Field {
    Field::Prime([2u32, 3, 5][rng.gen_range(0..3)])
}

fn oracle_case(rng: &mut CaseRng, budget: u64) -> CaseResult {
    let field = small_field(rng);
    let n = rng.gen_range(1..=4);
    let p = random::reduced_pencil(rng, n, 4, 4, field);
    let fast = eigenvector_variety(&p, budget)?;
    let slow = eigenvector_variety_oracle(&p, budget)?;
    let mut fibers_ok = true;
    let reports = crate::eigen::eigen_reports(&p, &EigenvalueSource::All, budget)?;
    for (i, x) in reports.iter().enumerate() {
        for y in &reports[i + 1..] {
            fibers_ok &= x.eigenspace.intersection(&y.eigenspace)?.is_zero();
        }
    }
    Ok((
        fast == slow && fibers_ok,
        format!("{field} n={n} dim={} points={}", p.dim_vector(), fast.len()),
    ))
}

fn canonical_case(rng: &mut CaseRng, _budget: u64) -> CaseResult {
    let field = small_field(rng);
    let n = rng.gen_range(1..=4);
    let c = build_canonical(n, field)?;
    let lambda = random::point(rng, n, field);
    let d = veronese_d(lambda.coords());
    let space = eigenvector_space(c.pencil(), &lambda)?;
    let expected = Subspace::from_vectors(field, d.len(), std::slice::from_ref(&d))?;
    let mut ok = space == expected;
    ok &= hom_dim(&bristle(&lambda), c.pencil())? == 1;
    let q = random::quadric(rng, n, field);
    let phi = quad_to_hom(&q, &c)?;
    ok &= eval_quadratic(&q, lambda.coords())? == apply_functional(&phi, &d);
    Ok((ok, format!("{field} n={n} lambda={lambda}")))
}

fn realization_case(rng: &mut CaseRng, budget: u64) -> CaseResult {
    let field = small_field(rng);
    if rng.gen_bool(0.5) {
        let n = rng.gen_range(1..=4);
        let m = rng.gen_range(0..=4);
        let qs = random::quadric_system(rng, n, m, field);
        let r = realize_variety(n, field, &qs)?;
        let rep = verify_realization(&r, budget)?;
        Ok((
            rep.passed && r.pencil.is_reduced(),
            format!("realize {field} n={n} m={m} dim={} points={}", r.pencil.dim_vector(), rep.zero_set.len()),
        ))
    } else {
        let n = rng.gen_range(2..=3);
        let p = random::bristled_pencil(rng, n, 3, field);
        let source = EigenvalueSource::All;
        let (u1, u2) = bristle_sum_submodule(&p, &source, budget)?;
        let sq = squareize(&p, &source, budget)?;
        let picked = select_generating_bristles(&p, &source, budget)?;
        let ok = sq.is_reduced()
            && sq.a() == sq.b()
            && sq.a() == u1.dim()
            && u1.dim() >= u2.dim()
            && picked.len() == u1.dim()
            && eigenvalues(&sq, &source, budget)? == eigenvalues(&p, &source, budget)?;
        Ok((ok, format!("squareize {field} n={n} dim={} square={}", p.dim_vector(), sq.dim_vector())))
    }
}

fn reflection_case(rng: &mut CaseRng, budget: u64) -> CaseResult {
    let field = small_field(rng);
    let n = rng.gen_range(2..=3);
    if rng.gen_bool(0.3) {
        let count = rng.gen_range(1..=5);
        let dims = preprojective_dimvecs(n, count)?;
        let built = build_preprojectives(n, count, field)?;
        let mut ok = dims.iter().all(|&d| d.a < d.b && tits_form(n, d) == 1);
        ok &= built.iter().map(|p| p.dim_vector()).eq(dims.iter().copied());
        for p in &built {
            ok &= eigenvector_variety(p, budget)?.is_empty();
        }
        return Ok((ok, format!("preprojective {field} n={n} count={count}")));
    }
    let p = random::reduced_pencil(rng, n, 4, 4, field);
    let s = sigma(&p);
    let rank = p.combined().rank();
    let mut ok = s.a() == n * p.a() - rank && s.b() == p.a() && s.is_reduced();
    if rank == p.b() {
        ok &= s.a() == n * p.a() - p.b();
        let back = sigma_minus(&s);
        ok &= back.dim_vector() == p.dim_vector();
        ok &= hom_dim(&back, &back)? == hom_dim(&p, &p)?;
    }
    Ok((ok, format!("sigma {field} n={n} dim={} image={}", p.dim_vector(), s.dim_vector())))
}

/// Runs `count` cases of the named suite on the current rayon pool.
pub fn run_suite(name: &str, seed: u64, count: usize, budget: u64) -> Result<SuiteReport> {
    let case: fn(&mut CaseRng, u64) -> CaseResult = match name {
        "oracle-equivalence" => oracle_case,
        "canonical" => canonical_case,
        "realization" => realization_case,
        "reflection" => reflection_case,
        other => {
            return Err(Error::InvalidParameter(format!(
                "unknown suite `{other}` (expected one of {})",
                SUITES.join(", ")
            )))
        }
    };
    let lines: Vec<(bool, String)> = (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = case_rng(seed, i as u64);
            match case(&mut rng, budget) {
                Ok((ok, detail)) => (ok, format!("case {i} {} {detail}", if ok { "ok" } else { "FAIL" })),
                Err(e) => (false, format!("case {i} FAIL error: {e}")),
            }
        })
        .collect();
    let mut text = String::new();
    let mut passed = 0;
    for (ok, line) in &lines {
        passed += usize::from(*ok);
        text.push_str(line);
        text.push('\n');
    }
    let failed = count - passed;
    writeln!(text, "suite={name} seed={seed} cases={count} passed={passed} failed={failed}").expect("write to string");
    Ok(SuiteReport { text, passed, failed })
}

/// [`run_suite`] on a dedicated pool of `threads` workers.
pub fn run_suite_with_threads(name: &str, seed: u64, count: usize, budget: u64, threads: usize) -> Result<SuiteReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    pool.install(|| run_suite(name, seed, count, budget))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projective::DEFAULT_ENUM_BUDGET;

    #[test]
    fn every_suite_passes_a_few_cases() {
        for name in SUITES {
            let r = run_suite(name, 0, 8, DEFAULT_ENUM_BUDGET).unwrap();
            assert!(r.ok(), "{}", r.text);
        }
    }

    #[test]
    fn unknown_suite() {
        assert!(run_suite("nope", 0, 1, 10).is_err());
    }
}
