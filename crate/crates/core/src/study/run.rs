use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::estimator::{estimate, reconstruct};
use crate::problems::{problem_by_name, BenchmarkProblem};
use crate::scalar::Real;
use crate::solver::{integrate, nodal_norm_drift, SolverOptions, TimePartition};

use super::metrics::{eoc_column, linf_error, SATURATION_FLOOR};
use super::{Precision, StudyConfig, StudyError, StudyMode};

/// One `(r, M)` cell of a study.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StudyRow {
    pub r: usize,
    #[serde(rename = "M")]
    pub m: usize,
    pub k: f64,
    pub linf_error: f64,
    pub estimator_bound: f64,
    pub effectivity: f64,
    pub eoc_error: Option<f64>,
    pub eoc_bound: Option<f64>,
    pub norm_drift: f64,
    pub picard_iters: usize,
    pub wall_time: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl StudyRow {
    fn failed(r: usize, m: usize, k: f64, wall_time: f64, message: String) -> Self {
        Self {
            r,
            m,
            k,
            linf_error: f64::NAN,
            estimator_bound: f64::NAN,
            effectivity: f64::NAN,
            eoc_error: None,
            eoc_bound: None,
            norm_drift: f64::NAN,
            picard_iters: 0,
            wall_time,
            error: Some(message),
        }
    }

    pub fn is_ok(&self) -> bool {
        self.error.is_none()
    }
}

/// `bound / error`, with `0 / 0 = 1` (both exact) and `b / 0 = ∞`.
fn effectivity(bound: f64, error: f64) -> f64 {
    if error > 0.0 {
        bound / error
    } else if bound == 0.0 {
        1.0
    } else {
        f64::INFINITY
    }
}

/// Runs every cell of `config`. Solver failures are reported in the row's
/// `error` field; only configuration problems abort the study.
pub fn run_study(config: &StudyConfig) -> Result<Vec<StudyRow>, StudyError> {
    match config.precision {
        Precision::F64 => run_study_in::<f64>(config),
        Precision::F32 => run_study_in::<f32>(config),
    }
}

fn run_study_in<T: Real>(config: &StudyConfig) -> Result<Vec<StudyRow>, StudyError> {
    let cells = config.cells()?;
    let problem = problem_by_name::<T>(&config.problem)?;
    let opts = config.solver.cast::<T>();
    let run = |&(r, m): &(usize, usize)| run_cell(&problem, config, &opts, r, m);
    let mut rows: Vec<StudyRow> = if config.parallel {
        cells.par_iter().map(run).collect()
    } else {
        cells.iter().map(run).collect()
    };
    rows.sort_by_key(|row| (row.r, row.m));
    if config.mode == StudyMode::HStudy {
        attach_eoc(&mut rows);
    }
    Ok(rows)
}

fn attach_eoc(rows: &mut [StudyRow]) {
    for group in rows.chunk_by_mut(|a, b| a.r == b.r) {
        let ks: Vec<f64> = group.iter().map(|row| row.k).collect();
        let errs: Vec<f64> = group.iter().map(|row| row.linf_error).collect();
        let bounds: Vec<f64> = group.iter().map(|row| row.estimator_bound).collect();
        let eoc_err = eoc_column(&errs, &ks, SATURATION_FLOOR);
        let eoc_bound = eoc_column(&bounds, &ks, SATURATION_FLOOR);
        for ((row, e), b) in group.iter_mut().zip(eoc_err).zip(eoc_bound) {
            row.eoc_error = e;
            row.eoc_bound = b;
        }
    }
}

fn run_cell<T: Real>(
    problem: &BenchmarkProblem<T>,
    config: &StudyConfig,
    opts: &SolverOptions<T>,
    r: usize,
    m: usize,
) -> StudyRow {
    let start = Instant::now();
    let k = config.t_end / m as f64;
    let result = (|| -> Result<StudyRow, crate::Error> {
        let partition = TimePartition::uniform(T::lit(config.t_end), m, r)?;
        let sol = integrate(&problem.rhs, &partition, &problem.u0, opts)?;
        let recon = reconstruct(&problem.rhs, &sol, opts)?;
        let report = estimate(
            &problem.rhs,
            &sol,
            &recon,
            partition.nodes(),
            opts,
            &config.estimator,
        )?;
        let bound = report.final_bound().as_f64();
        let err = match problem.exact_fn() {
            Some(exact) => linf_error(&sol, exact, config.estimator.samples_per_interval)?.as_f64(),
            None => f64::NAN,
        };
        Ok(StudyRow {
            r,
            m,
            k,
            linf_error: err,
            estimator_bound: bound,
            effectivity: effectivity(bound, err),
            eoc_error: None,
            eoc_bound: None,
            norm_drift: nodal_norm_drift(&sol).as_f64(),
            picard_iters: sol.total_picard_iterations(),
            wall_time: 0.0,
            error: None,
        })
    })();
    let wall_time = if config.record_wall_time {
        start.elapsed().as_secs_f64()
    } else {
        0.0
    };
    match result {
        Ok(row) => StudyRow { wall_time, ..row },
        Err(e) => StudyRow::failed(r, m, k, wall_time, e.to_string()),
    }
}
