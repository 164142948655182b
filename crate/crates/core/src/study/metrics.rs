use crate::error::{Error, Result};
use crate::scalar::{dist, Real};
use crate::solver::CgSolution;

/// Errors below this are treated as round-off and left out of EOC fits.
pub const SATURATION_FLOOR: f64 = 1e-12;

/// `max ‖U(t) - u(t)‖` over `samples_per_interval` equispaced points per
/// step, endpoints included.
pub fn linf_error<T: Real>(
    sol: &CgSolution<T>,
    exact: impl Fn(T) -> Vec<T>,
    samples_per_interval: usize,
) -> Result<T> {
    let mut worst = T::zero();
    for local in sol.locals() {
        for t in local.interval().equispaced(samples_per_interval) {
            worst = worst.max(dist(&local.eval(t)?, &exact(t)));
        }
    }
    Ok(worst)
}

/// `EOC_i = log(e_i / e_{i-1}) / log(k_i / k_{i-1})` for consecutive pairs.
pub fn eoc<T: Real>(errors: &[T], steps: &[T]) -> Result<Vec<T>> {
    if errors.len() != steps.len() || errors.len() < 2 {
        return Err(Error::InvalidEoc(
            "need two or more errors and as many step sizes".into(),
        ));
    }
    if errors.iter().chain(steps).any(|&x| !(x > T::zero())) {
        return Err(Error::InvalidEoc(
            "errors and steps must be positive".into(),
        ));
    }
    Ok(errors
        .windows(2)
        .zip(steps.windows(2))
        .map(|(e, k)| (e[1] / e[0]).ln() / (k[1] / k[0]).ln())
        .collect())
}

/// EOC per entry against its predecessor; `None` for the first entry and
/// wherever either error is non-finite or below `floor`.
pub fn eoc_column(errors: &[f64], steps: &[f64], floor: f64) -> Vec<Option<f64>> {
    let usable = |e: f64| e.is_finite() && e > floor;
    let mut out = vec![None; errors.len()];
    for i in 1..errors.len() {
        if usable(errors[i]) && usable(errors[i - 1]) && steps[i] != steps[i - 1] {
            out[i] = eoc(&errors[i - 1..=i], &steps[i - 1..=i])
                .ok()
                .map(|v| v[0]);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::zero;
    use crate::solver::{integrate, SolverOptions, TimePartition};

    #[test]
    fn eoc_examples() {
        let v = eoc::<f64>(&[1e-2, 2.5e-3], &[0.2, 0.1]).unwrap();
        assert!((v[0] - 2.0).abs() < 1e-14);
        assert_eq!(eoc(&[1e-3, 1e-3], &[0.2, 0.1]).unwrap(), vec![0.0]);
        assert!(eoc(&[1e-3, 0.0], &[0.2, 0.1]).is_err());
        assert!(eoc(&[1e-3], &[0.2]).is_err());
        assert!(eoc(&[1e-3, -1.0], &[0.2, 0.1]).is_err());
    }

    #[test]
    fn eoc_column_skips_saturated_entries() {
        let col = eoc_column(
            &[1e-4, 1.25e-5, 1e-13, 1e-14],
            &[0.4, 0.2, 0.1, 0.05],
            1e-12,
        );
        assert_eq!(col[0], None);
        assert!((col[1].unwrap() - 3.0).abs() < 1e-12);
        assert_eq!(col[2], None);
        assert_eq!(col[3], None);
    }

    #[test]
    fn linf_error_examples() {
        let p = zero::<f64>();
        let part = TimePartition::uniform(2.0, 3, 2).unwrap();
        let sol = integrate(&p.rhs, &part, &p.u0, &SolverOptions::default()).unwrap();
        assert_eq!(linf_error(&sol, |t| p.exact(t).unwrap(), 33).unwrap(), 0.0);

        let origin = integrate(&p.rhs, &part, &[0.0, 0.0], &SolverOptions::default()).unwrap();
        let e = linf_error(&origin, |_| p.u0.clone(), 33).unwrap();
        assert!((e - 1.0).abs() < 1e-15);
    }
}
