use std::collections::BTreeMap;
use std::path::PathBuf;
use std::str::FromStr;

use crate::estimator::{EstimatorOptions, EstimatorVariant};
use crate::problems::PROBLEM_NAMES;
use crate::solver::{ContractionPolicy, SolverOptions, StepMethod};

use super::StudyError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StudyMode {
    /// Uniform refinement at each fixed degree.
    HStudy,
    /// Fixed step, rising degree.
    PStudy,
    /// One `(r, M)` cell.
    Single,
}

impl FromStr for StudyMode {
    type Err = StudyError;
    fn from_str(s: &str) -> Result<Self, StudyError> {
        match s.to_ascii_lowercase().as_str() {
            "h" | "hstudy" | "h-study" => Ok(Self::HStudy),
            "p" | "pstudy" | "p-study" => Ok(Self::PStudy),
            "single" => Ok(Self::Single),
            _ => Err(StudyError::Config(format!("unknown mode `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = StudyError;
    fn from_str(s: &str) -> Result<Self, StudyError> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            _ => Err(StudyError::Config(format!("unknown format `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Precision {
    F32,
    #[default]
    F64,
}

impl FromStr for Precision {
    type Err = StudyError;
    fn from_str(s: &str) -> Result<Self, StudyError> {
        match s {
            "f32" => Ok(Self::F32),
            "f64" => Ok(Self::F64),
            _ => Err(StudyError::Config(format!("unknown precision `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StudyConfig {
    pub problem: String,
    pub mode: StudyMode,
    pub t_end: f64,
    pub degrees: Vec<usize>,
    /// Step counts `M` (h-study, single runs).
    pub mesh_counts: Vec<usize>,
    /// Fixed step length for the p-study.
    pub step: f64,
    pub solver: SolverOptions<f64>,
    pub estimator: EstimatorOptions,
    pub output_path: Option<PathBuf>,
    pub output_format: OutputFormat,
    pub precision: Precision,
    /// Run cells on the rayon pool; rows are still emitted in `(r, M)` order.
    pub parallel: bool,
    /// When false the wall_time column is written as 0 so repeated runs
    /// produce identical bytes.
    pub record_wall_time: bool,
}

impl StudyConfig {
    /// Degrees 1..=4 on M ∈ {8, 16, 32, 64, 128} over `[0, 4]`.
    pub fn h_study(problem: &str) -> Self {
        Self {
            problem: problem.to_string(),
            mode: StudyMode::HStudy,
            t_end: 4.0,
            degrees: vec![1, 2, 3, 4],
            mesh_counts: vec![8, 16, 32, 64, 128],
            step: 1.0,
            solver: SolverOptions::default(),
            estimator: EstimatorOptions::default(),
            output_path: None,
            output_format: OutputFormat::Csv,
            precision: Precision::F64,
            parallel: false,
            record_wall_time: true,
        }
    }

    /// Degrees 1..=16 with unit steps over `[0, 4]`.
    pub fn p_study(problem: &str) -> Self {
        Self {
            mode: StudyMode::PStudy,
            degrees: (1..=16).collect(),
            ..Self::h_study(problem)
        }
    }

    pub fn single(problem: &str, r: usize, m: usize) -> Self {
        Self {
            mode: StudyMode::Single,
            degrees: vec![r],
            mesh_counts: vec![m],
            ..Self::h_study(problem)
        }
    }

    pub fn for_mode(mode: StudyMode, problem: &str) -> Self {
        match mode {
            StudyMode::HStudy => Self::h_study(problem),
            StudyMode::PStudy => Self::p_study(problem),
            StudyMode::Single => Self::single(problem, 2, 16),
        }
    }

    /// `(r, M)` cells in output order.
    pub fn cells(&self) -> Result<Vec<(usize, usize)>, StudyError> {
        self.validate()?;
        let mut cells = match self.mode {
            StudyMode::HStudy => self
                .degrees
                .iter()
                .flat_map(|&r| self.mesh_counts.iter().map(move |&m| (r, m)))
                .collect(),
            StudyMode::PStudy => {
                let m = self.p_study_steps()?;
                self.degrees.iter().map(|&r| (r, m)).collect()
            }
            StudyMode::Single => vec![(self.degrees[0], self.mesh_counts[0])],
        };
        cells.sort_unstable();
        cells.dedup();
        Ok(cells)
    }

    fn p_study_steps(&self) -> Result<usize, StudyError> {
        let m = self.t_end / self.step;
        let rounded = m.round();
        if rounded < 1.0 || (m - rounded).abs() > 1e-9 * m.max(1.0) {
            return Err(StudyError::Config(format!(
                "T = {} is not a multiple of k = {}",
                self.t_end, self.step
            )));
        }
        Ok(rounded as usize)
    }

    pub fn validate(&self) -> Result<(), StudyError> {
        let bad = |msg: String| Err(StudyError::Config(msg));
        if !PROBLEM_NAMES.contains(&self.problem.as_str()) {
            return bad(format!("unknown problem `{}`", self.problem));
        }
        if !(self.t_end > 0.0) || !self.t_end.is_finite() {
            return bad("T must be positive".into());
        }
        if self.degrees.is_empty() {
            return bad("degrees must not be empty".into());
        }
        if let Some(r) = self.degrees.iter().find(|&&r| !(1..=32).contains(&r)) {
            return bad(format!("degree {r} outside [1, 32]"));
        }
        match self.mode {
            StudyMode::HStudy | StudyMode::Single if self.mesh_counts.is_empty() => {
                return bad("mesh counts must not be empty".into())
            }
            StudyMode::PStudy if !(self.step > 0.0) => return bad("k must be positive".into()),
            _ => {}
        }
        if self.mode == StudyMode::PStudy {
            self.p_study_steps()?;
        }
        if self.mesh_counts.contains(&0) {
            return bad("mesh counts must be positive".into());
        }
        if self.estimator.samples_per_interval < 2 {
            return bad("samples_per_interval must be at least 2".into());
        }
        self.solver
            .validate()
            .map_err(|e| StudyError::Config(e.to_string()))
    }

    /// Parses the flat `key = value` format. Blank lines and lines starting
    /// with `#` are skipped; unknown or repeated keys are errors.
    pub fn parse(text: &str) -> Result<Self, StudyError> {
        Self::from_entries(Self::parse_entries(text)?)
    }

    /// Raw key/value pairs of a config file, before interpretation.
    pub fn parse_entries(text: &str) -> Result<BTreeMap<String, String>, StudyError> {
        let mut entries = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                StudyError::Config(format!("line {}: expected `key = value`", lineno + 1))
            })?;
            let key = key.trim().to_string();
            if entries
                .insert(key.clone(), value.trim().to_string())
                .is_some()
            {
                return Err(StudyError::Config(format!("duplicate key `{key}`")));
            }
        }
        Ok(entries)
    }

    /// Builds a config from key/value pairs; `mode` picks the defaults the
    /// remaining keys override.
    pub fn from_entries(mut entries: BTreeMap<String, String>) -> Result<Self, StudyError> {
        let problem = entries
            .remove("problem")
            .unwrap_or_else(|| "paper3x3".to_string());
        let mode = match entries.remove("mode") {
            Some(m) => m.parse()?,
            None => StudyMode::HStudy,
        };
        let mut cfg = Self::for_mode(mode, &problem);
        for (key, value) in entries {
            let v = value.as_str();
            match key.as_str() {
                "T" | "t_end" => cfg.t_end = num(&key, v)?,
                "degrees" => cfg.degrees = int_list(&key, v)?,
                "meshes" | "mesh_counts" => cfg.mesh_counts = int_list(&key, v)?,
                "k" | "step" => cfg.step = num(&key, v)?,
                "out" | "output_path" => cfg.output_path = Some(PathBuf::from(v)),
                "format" | "output_format" => cfg.output_format = v.parse()?,
                "precision" => cfg.precision = v.parse()?,
                "parallel" => cfg.parallel = flag(&key, v)?,
                "wall_time" => cfg.record_wall_time = flag(&key, v)?,
                "quad_points_offset" => cfg.solver.quad_points_offset = num(&key, v)?,
                "picard_tol_rel" => cfg.solver.picard_tol_rel = num(&key, v)?,
                "picard_tol_abs" => cfg.solver.picard_tol_abs = num(&key, v)?,
                "picard_max_iters" => cfg.solver.picard_max_iters = num(&key, v)?,
                "contraction_policy" => cfg.solver.contraction_policy = parse_policy(v)?,
                "method" => cfg.solver.method = parse_method(v)?,
                "standard_cg" => cfg.solver.standard_cg = flag(&key, v)?,
                "samples_per_interval" => cfg.estimator.samples_per_interval = num(&key, v)?,
                "estimator_quad_extra" => cfg.estimator.extra_quad_points = num(&key, v)?,
                "estimator" => cfg.estimator.variant = parse_variant(v)?,
                _ => return Err(StudyError::Config(format!("unknown key `{key}`"))),
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn num<N: FromStr>(key: &str, v: &str) -> Result<N, StudyError> {
    v.parse()
        .map_err(|_| StudyError::Config(format!("`{key}`: cannot parse `{v}`")))
}

fn flag(key: &str, v: &str) -> Result<bool, StudyError> {
    match v.to_ascii_lowercase().as_str() {
        "true" | "yes" | "1" | "on" => Ok(true),
        "false" | "no" | "0" | "off" => Ok(false),
        _ => Err(StudyError::Config(format!(
            "`{key}`: expected a boolean, got `{v}`"
        ))),
    }
}

/// `"1,2,4"`, `"1..16"` (inclusive) or a mix: `"1..3, 8"`.
pub(crate) fn int_list(key: &str, v: &str) -> Result<Vec<usize>, StudyError> {
    let mut out = Vec::new();
    for part in v.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if let Some((lo, hi)) = part.split_once("..") {
            let lo: usize = num(key, lo.trim())?;
            let hi: usize = num(key, hi.trim().trim_start_matches('='))?;
            if hi < lo {
                return Err(StudyError::Config(format!("`{key}`: empty range `{part}`")));
            }
            out.extend(lo..=hi);
        } else {
            out.push(num(key, part)?);
        }
    }
    Ok(out)
}

pub(crate) fn parse_policy(v: &str) -> Result<ContractionPolicy, StudyError> {
    match v.to_ascii_lowercase().as_str() {
        "error" => Ok(ContractionPolicy::Error),
        "warn" => Ok(ContractionPolicy::Warn),
        "ignore" => Ok(ContractionPolicy::Ignore),
        _ => Err(StudyError::Config(format!(
            "unknown contraction policy `{v}`"
        ))),
    }
}

pub(crate) fn parse_method(v: &str) -> Result<StepMethod, StudyError> {
    match v.to_ascii_lowercase().as_str() {
        "picard" => Ok(StepMethod::Picard),
        "direct" => Ok(StepMethod::Direct),
        "auto" => Ok(StepMethod::Auto),
        _ => Err(StudyError::Config(format!("unknown step method `{v}`"))),
    }
}

pub(crate) fn parse_variant(v: &str) -> Result<EstimatorVariant, StudyError> {
    match v.to_ascii_lowercase().as_str() {
        "reconstructed" => Ok(EstimatorVariant::Reconstructed),
        "unreconstructed" | "standard" => Ok(EstimatorVariant::Unreconstructed),
        _ => Err(StudyError::Config(format!(
            "unknown estimator variant `{v}`"
        ))),
    }
}
