use crate::basis::{
    antiderivative_from_left, gauss_rule, project, Interval, LocalPoly, QuadratureRule,
};
use crate::error::{Error, Result};
use crate::linalg::{lu_solve, Matrix};
use crate::scalar::Real;

use super::{ContractionPolicy, RhsOperator, SolverOptions, StepMethod};

/// Result of one cG step.
#[derive(Debug, Clone)]
pub struct StepOutcome<T> {
    pub poly: LocalPoly<T>,
    /// Picard iterations performed (0 for a direct solve).
    pub iterations: usize,
    /// Max coefficient change after each Picard iteration.
    pub residuals: Vec<T>,
    /// `k_m L_m` when a Lipschitz bound was available.
    pub contraction_factor: Option<T>,
}

impl<T: Real> StepOutcome<T> {
    /// `k L >= sqrt(2)` was observed and tolerated.
    pub fn contraction_warning(&self) -> bool {
        self.contraction_factor.is_some_and(|kl| kl >= T::SQRT_2())
    }
}

/// `k L < sqrt(2)`: the step size condition under which the step map is a
/// contraction, uniformly in the polynomial degree.
pub fn check_contraction<T: Real>(interval: &Interval<T>, lipschitz: T) -> bool {
    interval.length() * lipschitz < T::SQRT_2()
}

/// Discretised fixed point map of one step, evaluated at Gauss nodes.
struct StepMap<'a, T> {
    f: &'a RhsOperator<T>,
    u_prev: &'a [T],
    interval: Interval<T>,
    r: usize,
    rule: QuadratureRule<T>,
    times: Vec<T>,
    standard: bool,
}

impl<T: Real> StepMap<'_, T> {
    /// `Π^{r-1} F(·, Π^{r-1} V)` sampled and projected (degree `r - 1`).
    fn projected_rhs(&self, v: &LocalPoly<T>) -> Result<LocalPoly<T>> {
        let w = if self.standard {
            v.clone()
        } else {
            v.truncated(self.r - 1)
        };
        let samples: Vec<Vec<T>> = self
            .rule
            .nodes()
            .iter()
            .zip(&self.times)
            .map(|(&s, &t)| self.f.eval(t, &w.eval_reference(s)))
            .collect();
        project(&samples, &self.rule, self.r - 1, self.interval)
    }

    /// `u_prev + ∫_{t_{m-1}}^t g`.
    fn integrate_from_left(&self, g: &LocalPoly<T>) -> LocalPoly<T> {
        antiderivative_from_left(g).add_constant(self.u_prev)
    }

    fn apply(&self, v: &LocalPoly<T>) -> Result<LocalPoly<T>> {
        Ok(self.integrate_from_left(&self.projected_rhs(v)?))
    }
}

/// Solves one cG step on `interval` with degree `r`, starting from `u_prev`.
pub fn solve_step<T: Real>(
    f: &RhsOperator<T>,
    u_prev: &[T],
    interval: Interval<T>,
    r: usize,
    opts: &SolverOptions<T>,
) -> Result<StepOutcome<T>> {
    opts.validate()?;
    if r == 0 {
        return Err(Error::InvalidPartition("degree must be at least 1".into()));
    }
    if u_prev.len() != f.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            got: u_prev.len(),
        });
    }
    let contraction_factor = f.lipschitz(&interval).map(|l| interval.length() * l);
    if let Some(kl) = contraction_factor {
        if opts.contraction_policy == ContractionPolicy::Error && !(kl < T::SQRT_2()) {
            return Err(Error::ContractionViolated { kl: kl.as_f64() });
        }
    }
    let rule = gauss_rule(opts.quad_points(r))?;
    let times = interval.map_nodes(&rule);
    let map = StepMap {
        f,
        u_prev,
        interval,
        r,
        rule,
        times,
        standard: opts.standard_cg,
    };
    let direct = match opts.method {
        StepMethod::Picard => false,
        StepMethod::Direct => true,
        StepMethod::Auto => f.is_linear(),
    };
    let (poly, iterations, residuals) = if direct {
        (solve_direct(&map)?, 0, Vec::new())
    } else {
        solve_picard(&map, opts)?
    };
    Ok(StepOutcome {
        poly,
        iterations,
        residuals,
        contraction_factor,
    })
}

fn solve_picard<T: Real>(
    map: &StepMap<'_, T>,
    opts: &SolverOptions<T>,
) -> Result<(LocalPoly<T>, usize, Vec<T>)> {
    let mut v = LocalPoly::constant(map.interval, map.u_prev).truncated(map.r);
    let mut residuals = Vec::new();
    for it in 1..=opts.picard_max_iters {
        let next = map.apply(&v)?;
        let change = next.max_coeff_diff(&v);
        residuals.push(change);
        if !change.is_finite() {
            break;
        }
        let tol = opts.picard_tol_abs + opts.picard_tol_rel * next.max_abs_coeff();
        v = next;
        if change <= tol {
            return Ok((v, it, residuals));
        }
    }
    Err(Error::PicardDiverged {
        iterations: residuals.len(),
        residual: residuals.last().map_or(f64::NAN, |r| r.as_f64()),
    })
}

/// For an affine right-hand side the step map is affine in the coefficients
/// `g` of `U'`: `g = M g + b`. Probe it column by column and solve
/// `(I - M) g = b`.
fn solve_direct<T: Real>(map: &StepMap<'_, T>) -> Result<LocalPoly<T>> {
    let n = map.u_prev.len();
    let r = map.r;
    let size = r * n;
    let flat = |p: &LocalPoly<T>| -> Vec<T> { p.coeffs().iter().flatten().copied().collect() };
    let image = |g: &LocalPoly<T>| -> Result<Vec<T>> {
        Ok(flat(&map.projected_rhs(&map.integrate_from_left(g))?))
    };

    let zero = LocalPoly::zero(map.interval, n, r - 1);
    let b = image(&zero)?;
    let mut system = Matrix::identity(size);
    for col in 0..size {
        let mut unit = vec![vec![T::zero(); n]; r];
        unit[col / n][col % n] = T::one();
        let e = LocalPoly::new(map.interval, unit)?;
        let img = image(&e)?;
        for row in 0..size {
            system[(row, col)] = system[(row, col)] - (img[row] - b[row]);
        }
    }
    let g = lu_solve(system, b)?;
    let coeffs = g.chunks(n).map(<[T]>::to_vec).collect();
    Ok(map.integrate_from_left(&LocalPoly::new(map.interval, coeffs)?))
}

/// Largest `|∫_I ⟨U' - F(t, Π^{r-1} U), P̂_j e_i⟩ dt|` over test functions
/// `j <= r - 1`, `i < n`, with the step's own Gauss rule. Zero up to
/// round-off for a converged step.
pub fn weak_form_residual<T: Real>(
    f: &RhsOperator<T>,
    local: &LocalPoly<T>,
    opts: &SolverOptions<T>,
) -> Result<T> {
    let r = local.degree().max(1);
    let interval = local.interval();
    let rule = gauss_rule(opts.quad_points(r))?;
    let w = if opts.standard_cg {
        local.clone()
    } else {
        local.truncated(r - 1)
    };
    let du = local.derivative();
    let half = interval.length() / T::lit(2.0);
    let mut acc = vec![vec![T::zero(); local.dim()]; r];
    for (&s, &wt) in rule.nodes().iter().zip(rule.weights()) {
        let t = interval.from_reference(s);
        let rhs = f.eval(t, &w.eval_reference(s));
        let lhs = du.eval_reference(s);
        let basis = crate::basis::legendre_values(r - 1, s);
        for (j, row) in acc.iter_mut().enumerate() {
            for (i, a) in row.iter_mut().enumerate() {
                *a = *a + half * wt * basis[j] * (lhs[i] - rhs[i]);
            }
        }
    }
    Ok(acc.iter().flatten().fold(T::zero(), |m, x| m.max(x.abs())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rotation() -> RhsOperator<f64> {
        RhsOperator::linear(2, |_| Matrix::from_rows(&[[0.0, -1.0], [1.0, 0.0]]))
            .with_lipschitz(|_| 1.0)
            .with_orthogonal(true)
    }

    fn picard() -> SolverOptions<f64> {
        SolverOptions {
            method: StepMethod::Picard,
            ..Default::default()
        }
    }

    #[test]
    fn zero_rhs_keeps_state() {
        let f = RhsOperator::new(3, |_t: f64, _v: &[f64], out: &mut [f64]| out.fill(0.0));
        let iv = Interval::new(0.2, 0.7).unwrap();
        for r in 1..=4 {
            let out = solve_step(&f, &[1.0, -2.0, 0.5], iv, r, &picard()).unwrap();
            assert!(out.iterations <= 2);
            for &t in &[0.2, 0.45, 0.7] {
                assert_eq!(out.poly.eval(t).unwrap(), vec![1.0, -2.0, 0.5]);
            }
        }
    }

    #[test]
    fn constant_rhs_gives_exact_line() {
        let f = RhsOperator::new(2, |_t: f64, _v: &[f64], out: &mut [f64]| {
            out[0] = 2.0;
            out[1] = -1.0;
        });
        let iv = Interval::new(1.0, 1.5).unwrap();
        for r in 1..=5 {
            let out = solve_step(&f, &[0.0, 1.0], iv, r, &picard()).unwrap();
            for &t in &[1.0, 1.2, 1.5] {
                let u = out.poly.eval(t).unwrap();
                assert!((u[0] - 2.0 * (t - 1.0)).abs() < 1e-14);
                assert!((u[1] - (1.0 - (t - 1.0))).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn one_point_rule_is_implicit_midpoint() {
        let opts = SolverOptions {
            quad_points_offset: 0,
            ..picard()
        };
        let k = 0.1;
        let out = solve_step(
            &rotation(),
            &[1.0, 0.0],
            Interval::new(0.0, k).unwrap(),
            1,
            &opts,
        )
        .unwrap();
        // (I - k/2 A)^{-1} (I + k/2 A) (1, 0) for the rotation generator
        let h = k / 2.0;
        let d = 1.0 + h * h;
        let want = [(1.0 - h * h) / d, 2.0 * h / d];
        let got = out.poly.right_value();
        assert!((got[0] - want[0]).abs() < 1e-14);
        assert!((got[1] - want[1]).abs() < 1e-14);
        assert!((got[0] - 0.995_012_468_827_930_2).abs() < 1e-12);
        assert!((got[1] - 0.099_750_623_441_396_5).abs() < 1e-12);
    }

    #[test]
    fn direct_and_picard_agree() {
        let iv = Interval::new(0.0, 0.3).unwrap();
        for r in 1..=6 {
            let p = solve_step(&rotation(), &[0.6, 0.8], iv, r, &picard()).unwrap();
            let d = solve_step(
                &rotation(),
                &[0.6, 0.8],
                iv,
                r,
                &SolverOptions {
                    method: StepMethod::Direct,
                    ..Default::default()
                },
            )
            .unwrap();
            assert_eq!(d.iterations, 0);
            assert!(p.poly.max_coeff_diff(&d.poly) < 1e-13, "r={r}");
        }
    }

    #[test]
    fn contraction_policy() {
        let iv = Interval::new(0.0, 2.0).unwrap();
        let err = solve_step(
            &rotation(),
            &[1.0, 0.0],
            iv,
            2,
            &SolverOptions {
                contraction_policy: ContractionPolicy::Error,
                ..Default::default()
            },
        )
        .unwrap_err();
        assert_eq!(err, Error::ContractionViolated { kl: 2.0 });

        let warned =
            solve_step(&rotation(), &[1.0, 0.0], iv, 2, &SolverOptions::default()).unwrap();
        assert!(warned.contraction_warning());
    }

    #[test]
    fn check_contraction_is_strict() {
        let unit = Interval::new(0.0, 1.0).unwrap();
        assert!(check_contraction(&unit, 1.0));
        assert!(!check_contraction(&unit, std::f64::consts::SQRT_2));
        assert!(check_contraction(&unit, 0.0));
    }

    #[test]
    fn picard_divergence_is_reported() {
        let grow = RhsOperator::new(1, |_t: f64, v: &[f64], out: &mut [f64]| {
            out[0] = 10.0 * v[0]
        });
        let err = solve_step(
            &grow,
            &[1.0],
            Interval::new(0.0, 1.0).unwrap(),
            1,
            &picard(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::PicardDiverged { .. }));
    }

    #[test]
    fn dimension_checked() {
        let err = solve_step(
            &rotation(),
            &[1.0],
            Interval::new(0.0, 1.0).unwrap(),
            1,
            &picard(),
        );
        assert!(matches!(err, Err(Error::DimensionMismatch { .. })));
    }
}
