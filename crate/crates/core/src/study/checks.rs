use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::Result;
use crate::estimator::{estimate, reconstruct, EstimatorOptions};
use crate::problems::BenchmarkProblem;
use crate::scalar::{dist, dot, norm, Real};
use crate::solver::{
    integrate, nodal_norm_drift, weak_form_residual, SolverOptions, TimePartition,
};

use super::metrics::linf_error;

/// Outcome of one invariant check.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(name: &'static str, passed: bool, detail: String) -> Self {
        Self {
            name,
            passed,
            detail,
        }
    }
}

const HORIZON: f64 = 4.0;

/// Runs the structural and discretisation invariants on `problem` over
/// `[0, 4]`. Checks whose hypotheses the problem does not claim are skipped.
pub fn run_checks<T: Real>(problem: &BenchmarkProblem<T>) -> Result<Vec<CheckResult>> {
    let f = &problem.rhs;
    let n = f.dim();
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let random_vec =
        |rng: &mut StdRng| -> Vec<T> { (0..n).map(|_| T::lit(rng.gen_range(-1.0..1.0))).collect() };
    let tol = T::tol(1e-12);
    let mut out = Vec::new();

    if f.claims_orthogonal() {
        let mut worst = T::zero();
        for _ in 0..1000 {
            let t = T::lit(rng.gen_range(0.0..HORIZON));
            let v = random_vec(&mut rng);
            let fv = f.eval(t, &v);
            let scale = norm(&v) * norm(&fv);
            if scale > T::zero() {
                worst = worst.max(dot(&fv, &v).abs() / scale);
            }
        }
        out.push(CheckResult::new(
            "orthogonality <F(t,v), v> = 0",
            worst <= tol,
            format!("max relative defect {:e}", worst.as_f64()),
        ));
    }

    if f.claims_lower_adjoint() {
        let mut worst = T::neg_infinity();
        for _ in 0..1000 {
            let t = T::lit(rng.gen_range(0.0..HORIZON));
            let v = random_vec(&mut rng);
            let w = random_vec(&mut rng);
            let s = dot(&f.eval(t, &v), &w) + dot(&v, &f.eval(t, &w));
            let scale = T::one() + norm(&v) * norm(&w) * (T::one() + norm(&f.eval(t, &v)));
            worst = worst.max(-s / scale);
        }
        out.push(CheckResult::new(
            "lower adjoint <F(v), w> >= -<v, F(w)>",
            worst <= tol,
            format!("max scaled violation {:e}", worst.max(T::zero()).as_f64()),
        ));
    }

    if let Some(exact) = problem.exact_fn() {
        // Central differences: truncation O(h^2), cancellation O(eps / h),
        // balanced at h ~ eps^(1/3).
        let h = T::epsilon().cbrt();
        let mut worst = T::zero();
        for i in 0..100 {
            let t = h + (T::lit(HORIZON) - h - h) * T::of(i) / T::of(99);
            let up = exact(t + h);
            let down = exact(t - h);
            let fd: Vec<T> = up
                .iter()
                .zip(&down)
                .map(|(&a, &b)| (a - b) / (h + h))
                .collect();
            worst = worst.max(dist(&fd, &f.eval(t, &exact(t))));
        }
        let limit = T::tol(1e-6).max(T::epsilon().powf(T::lit(2.0 / 3.0)) * T::lit(1e3));
        out.push(CheckResult::new(
            "exact solution satisfies the ODE",
            worst <= limit,
            format!("max |u'_fd - F(t,u)| = {:e}", worst.as_f64()),
        ));
    }

    let opts = SolverOptions::<T>::default();
    let scale = T::one() + norm(&problem.u0);
    let partition = TimePartition::new(
        vec![0.0, 0.3, 0.5, 1.0, 1.75, 2.0, 2.6, 3.2, 4.0]
            .into_iter()
            .map(T::lit)
            .collect(),
        vec![1, 2, 3, 4, 2, 3, 5, 2],
    )?;
    let sol = integrate(f, &partition, &problem.u0, &opts)?;

    if f.claims_orthogonal() {
        let drift = nodal_norm_drift(&sol);
        out.push(CheckResult::new(
            "nodal norm preservation",
            drift <= T::tol(1e-11) * scale,
            format!("drift {:e}", drift.as_f64()),
        ));
    }

    let mut weak = T::zero();
    for local in sol.locals() {
        weak = weak.max(weak_form_residual(f, local, &opts)?);
    }
    out.push(CheckResult::new(
        "weak form residual",
        weak <= T::tol(1e-11) * scale,
        format!("max {:e}", weak.as_f64()),
    ));

    let recon = reconstruct(f, &sol, &opts)?;
    let mut endpoint = T::zero();
    for (m, local) in recon.locals().iter().enumerate() {
        endpoint = endpoint
            .max(dist(&local.left_value(), &sol.nodal_values()[m]))
            .max(dist(&local.right_value(), &sol.nodal_values()[m + 1]));
    }
    out.push(CheckResult::new(
        "reconstruction matches nodal values",
        endpoint <= T::tol(1e-12) * scale,
        format!("max mismatch {:e}", endpoint.as_f64()),
    ));

    if let (Some(exact), true) = (problem.exact_fn(), f.claims_lower_adjoint()) {
        let report = estimate(
            f,
            &sol,
            &recon,
            partition.nodes(),
            &opts,
            &EstimatorOptions::default(),
        )?;
        let err = linf_error(&sol, exact, 33)?;
        let bound = report.final_bound();
        out.push(CheckResult::new(
            "a posteriori bound is an upper bound",
            err <= bound * (T::one() + T::lit(1e-6)),
            format!("error {:e}, bound {:e}", err.as_f64(), bound.as_f64()),
        ));
    }
    Ok(out)
}
