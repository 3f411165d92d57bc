//! Experiment configuration: a `key = value` file plus command-line overrides.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use nalgebra::{Matrix2, Matrix4};
use nhmf_core::exact::DENSE_CAP;
use nhmf_core::metrics::DEFAULT_TAIL_FRACTION;
use nhmf_core::{ModelSpec, QubitState};
use num_complex::Complex64;
use serde::Serialize;

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ModelChoice {
    Zz,
    Custom { a1: Vec<[f64; 2]>, a2: Vec<[f64; 2]> },
}

impl ModelChoice {
    pub fn spec(&self) -> Result<ModelSpec, CliError> {
        match self {
            ModelChoice::Zz => Ok(ModelSpec::zz()),
            ModelChoice::Custom { a1, a2 } => {
                let c = |v: &[f64; 2]| Complex64::new(v[0], v[1]);
                let m1 = Matrix2::from_row_iterator(a1.iter().map(c));
                let m2 = Matrix4::from_row_iterator(a2.iter().map(c));
                ModelSpec::new(m1, m2).map_err(|e| CliError::Config(format!("custom model: {e}")))
            }
        }
    }

    pub fn is_zz(&self) -> bool {
        matches!(self, ModelChoice::Zz)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TimeGrid {
    Uniform { t_min: f64, t_max: f64, t_steps: usize },
    List(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NGrid {
    LogSpaced { n_min: usize, n_max: usize, n_points: usize },
    List(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub initial_p0: f64,
    pub initial_phases: (f64, f64),
    pub time_grid: TimeGrid,
    pub n_grid: NGrid,
    pub model: ModelChoice,
    pub output_dir: PathBuf,
    pub seed: u64,
    pub tail_fraction: f64,
    pub dt: f64,
    /// Points of the `x` grid for rate-function profiles.
    pub x_points: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            initial_p0: 0.64,
            initial_phases: (0.0, 0.0),
            time_grid: TimeGrid::Uniform { t_min: 0.0, t_max: 2.0, t_steps: 8 },
            n_grid: NGrid::LogSpaced { n_min: 10, n_max: 100_000, n_points: 40 },
            model: ModelChoice::Zz,
            output_dir: PathBuf::from("out"),
            seed: 0,
            tail_fraction: DEFAULT_TAIL_FRACTION,
            dt: nhmf_core::hartree::DEFAULT_DT,
            x_points: 999,
        }
    }
}

/// Values given on the command line; each replaces the file or default value.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub p0: Option<f64>,
    pub t_min: Option<f64>,
    pub t_max: Option<f64>,
    pub t_steps: Option<usize>,
    pub n_min: Option<usize>,
    pub n_max: Option<usize>,
    pub n_points: Option<usize>,
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
    pub tail_fraction: Option<f64>,
}

fn bad(key: &str, value: &str) -> CliError {
    CliError::Config(format!("invalid value for `{key}`: {value}"))
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, CliError> {
    value.trim().parse().map_err(|_| bad(key, value))
}

fn parse_list<T: std::str::FromStr>(key: &str, value: &str) -> Result<Vec<T>, CliError> {
    value.split(',').filter(|s| !s.trim().is_empty()).map(|s| parse_num(key, s)).collect()
}

/// `re:im` or plain `re`.
fn parse_complex_list(key: &str, value: &str, expected: usize) -> Result<Vec<[f64; 2]>, CliError> {
    let entries: Vec<[f64; 2]> = value
        .split(',')
        .map(|item| {
            let item = item.trim();
            match item.split_once(':') {
                Some((re, im)) => Ok([parse_num(key, re)?, parse_num(key, im)?]),
                None => Ok([parse_num(key, item)?, 0.0]),
            }
        })
        .collect::<Result<_, CliError>>()?;
    if entries.len() != expected {
        return Err(CliError::Config(format!("`{key}` needs {expected} entries, got {}", entries.len())));
    }
    Ok(entries)
}

/// Parse `key = value` lines; `#` starts a comment.
pub fn parse_key_values(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut map = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("line {}: expected `key = value`", lineno + 1)))?;
        if map.insert(k.trim().to_string(), v.trim().to_string()).is_some() {
            return Err(CliError::Config(format!("line {}: duplicate key `{}`", lineno + 1, k.trim())));
        }
    }
    Ok(map)
}

impl ExperimentConfig {
    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_key_values(&parse_key_values(&text)?)
    }

    pub fn from_key_values(map: &BTreeMap<String, String>) -> Result<Self, CliError> {
        let mut cfg = Self::default();
        let (mut t_min, mut t_max, mut t_steps) = (0.0, 2.0, 8usize);
        let (mut n_min, mut n_max, mut n_points) = (10usize, 100_000usize, 40usize);
        let mut a1 = None;
        let mut a2 = None;
        let mut model = "zz".to_string();
        for (key, value) in map {
            match key.as_str() {
                "p0" => cfg.initial_p0 = parse_num(key, value)?,
                "phase0" => cfg.initial_phases.0 = parse_num(key, value)?,
                "phase1" => cfg.initial_phases.1 = parse_num(key, value)?,
                "t_min" => t_min = parse_num(key, value)?,
                "t_max" => t_max = parse_num(key, value)?,
                "t_steps" => t_steps = parse_num(key, value)?,
                "t_list" => cfg.time_grid = TimeGrid::List(parse_list(key, value)?),
                "n_min" => n_min = parse_num(key, value)?,
                "n_max" => n_max = parse_num(key, value)?,
                "n_points" => n_points = parse_num(key, value)?,
                "n_list" => cfg.n_grid = NGrid::List(parse_list(key, value)?),
                "model" => model = value.to_lowercase(),
                "a1" => a1 = Some(parse_complex_list(key, value, 4)?),
                "a2" => a2 = Some(parse_complex_list(key, value, 16)?),
                "out" => cfg.output_dir = PathBuf::from(value),
                "seed" => cfg.seed = parse_num(key, value)?,
                "tail_fraction" => cfg.tail_fraction = parse_num(key, value)?,
                "dt" => cfg.dt = parse_num(key, value)?,
                "x_points" => cfg.x_points = parse_num(key, value)?,
                other => return Err(CliError::Config(format!("unknown key `{other}`"))),
            }
        }
        if !matches!(cfg.time_grid, TimeGrid::List(_)) {
            cfg.time_grid = TimeGrid::Uniform { t_min, t_max, t_steps };
        }
        if !matches!(cfg.n_grid, NGrid::List(_)) {
            cfg.n_grid = NGrid::LogSpaced { n_min, n_max, n_points };
        }
        cfg.model = match model.as_str() {
            "zz" => ModelChoice::Zz,
            "custom" => ModelChoice::Custom {
                a1: a1.unwrap_or_else(|| vec![[0.0, 0.0]; 4]),
                a2: a2.ok_or_else(|| CliError::Config("custom model needs `a2`".into()))?,
            },
            other => return Err(bad("model", other)),
        };
        Ok(cfg)
    }

    pub fn apply(&mut self, o: &Overrides) {
        if let Some(v) = o.p0 {
            self.initial_p0 = v;
        }
        if o.t_min.is_some() || o.t_max.is_some() || o.t_steps.is_some() {
            let (mut lo, mut hi, mut steps) = match &self.time_grid {
                TimeGrid::Uniform { t_min, t_max, t_steps } => (*t_min, *t_max, *t_steps),
                TimeGrid::List(ts) => {
                    (ts.first().copied().unwrap_or(0.0), ts.last().copied().unwrap_or(0.0), ts.len().saturating_sub(1))
                }
            };
            lo = o.t_min.unwrap_or(lo);
            hi = o.t_max.unwrap_or(hi);
            steps = o.t_steps.unwrap_or(steps);
            self.time_grid = TimeGrid::Uniform { t_min: lo, t_max: hi, t_steps: steps };
        }
        if o.n_min.is_some() || o.n_max.is_some() || o.n_points.is_some() {
            let (mut lo, mut hi, mut pts) = match &self.n_grid {
                NGrid::LogSpaced { n_min, n_max, n_points } => (*n_min, *n_max, *n_points),
                NGrid::List(ns) => (ns.first().copied().unwrap_or(2), ns.last().copied().unwrap_or(2), ns.len()),
            };
            lo = o.n_min.unwrap_or(lo);
            hi = o.n_max.unwrap_or(hi);
            pts = o.n_points.unwrap_or(pts);
            self.n_grid = NGrid::LogSpaced { n_min: lo, n_max: hi, n_points: pts };
        }
        if let Some(v) = &o.out {
            self.output_dir = v.clone();
        }
        if let Some(v) = o.seed {
            self.seed = v;
        }
        if let Some(v) = o.tail_fraction {
            self.tail_fraction = v;
        }
    }

    pub fn times(&self) -> Vec<f64> {
        match &self.time_grid {
            TimeGrid::List(ts) => ts.clone(),
            TimeGrid::Uniform { t_min, t_max, t_steps } => {
                if *t_steps == 0 {
                    return vec![*t_min];
                }
                (0..=*t_steps).map(|i| t_min + (t_max - t_min) * i as f64 / *t_steps as f64).collect()
            }
        }
    }

    pub fn particle_numbers(&self) -> Vec<usize> {
        match &self.n_grid {
            NGrid::List(ns) => ns.clone(),
            NGrid::LogSpaced { n_min, n_max, n_points } => log_spaced(*n_min, *n_max, *n_points),
        }
    }

    pub fn initial_state(&self) -> Result<QubitState, CliError> {
        QubitState::from_populations(self.initial_p0, self.initial_phases.0, self.initial_phases.1)
            .map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if !(0.0..=1.0).contains(&self.initial_p0) {
            return Err(CliError::Config(format!("p0 = {} outside [0, 1]", self.initial_p0)));
        }
        let ts = self.times();
        if ts.is_empty() || ts.iter().any(|t| !t.is_finite() || *t < 0.0) {
            return Err(CliError::Config("times must be finite and non-negative".into()));
        }
        if ts.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(CliError::Config("time grid must be strictly increasing".into()));
        }
        if let TimeGrid::Uniform { t_min, t_max, t_steps } = self.time_grid {
            if t_steps == 0 && t_max != t_min {
                return Err(CliError::Config("t_steps = 0 requires t_min = t_max".into()));
            }
        }
        let ns = self.particle_numbers();
        if ns.is_empty() {
            return Err(CliError::Config("empty N grid".into()));
        }
        if ns.iter().any(|&n| n < 2) {
            return Err(CliError::Config("every N must be at least 2".into()));
        }
        if ns.windows(2).any(|w| w[1] <= w[0]) {
            return Err(CliError::Config("N grid must be strictly increasing".into()));
        }
        if let NGrid::LogSpaced { n_min, n_max, n_points } = self.n_grid {
            if n_points == 0 || n_max < n_min {
                return Err(CliError::Config("log-spaced N grid needs n_points >= 1 and n_max >= n_min".into()));
            }
        }
        if !self.model.is_zz() && ns.iter().any(|&n| n > DENSE_CAP) {
            return Err(CliError::Config(format!("custom models support N <= {DENSE_CAP}")));
        }
        if !(self.tail_fraction > 0.0 && self.tail_fraction <= 1.0) {
            return Err(CliError::Config(format!("tail_fraction {} outside (0, 1]", self.tail_fraction)));
        }
        if !(self.dt > 0.0) || !self.dt.is_finite() {
            return Err(CliError::Config(format!("dt = {} must be positive", self.dt)));
        }
        if self.x_points < 3 {
            return Err(CliError::Config("x_points must be at least 3".into()));
        }
        self.model.spec()?;
        Ok(())
    }
}

/// Log-spaced integers from `lo` to `hi`, rounded and deduplicated.
pub fn log_spaced(lo: usize, hi: usize, points: usize) -> Vec<usize> {
    if points <= 1 || lo >= hi {
        return vec![lo];
    }
    let (a, b) = ((lo as f64).ln(), (hi as f64).ln());
    let mut ns: Vec<usize> =
        (0..points).map(|i| (a + (b - a) * i as f64 / (points - 1) as f64).exp().round() as usize).collect();
    ns.dedup();
    ns
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        let cfg = ExperimentConfig::default();
        cfg.validate().unwrap();
        let ns = cfg.particle_numbers();
        assert_eq!((ns[0], *ns.last().unwrap()), (10, 100_000));
        assert_eq!(ns.len(), 40);
        assert_eq!(cfg.times(), vec![0.0, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0]);
    }

    #[test]
    fn log_grid_deduplicates() {
        let ns = log_spaced(2, 10, 30);
        assert!(ns.windows(2).all(|w| w[1] > w[0]));
        assert_eq!((ns[0], *ns.last().unwrap()), (2, 10));
    }

    #[test]
    fn parses_file_and_overrides() {
        let text = "# comment\np0 = 0.5\nt_list = 0.3, 1.0\nn_list = 100, 1000, 10000\nseed = 9 # trailing\n";
        let mut cfg = ExperimentConfig::from_key_values(&parse_key_values(text).unwrap()).unwrap();
        assert_eq!(cfg.initial_p0, 0.5);
        assert_eq!(cfg.times(), vec![0.3, 1.0]);
        assert_eq!(cfg.particle_numbers(), vec![100, 1000, 10000]);
        cfg.apply(&Overrides { p0: Some(0.7), t_max: Some(2.0), ..Default::default() });
        assert_eq!(cfg.initial_p0, 0.7);
        assert_eq!(cfg.times(), vec![0.3, 2.0]);
        cfg.validate().unwrap();
    }

    #[test]
    fn custom_model_entries() {
        let text = "model = custom\na1 = 0, 1, 1, 0\na2 = 0:1,0,0,0, 0,0:-1,0,0, 0,0,0:-1,0, 0,0,0,0:1\nn_max = 50";
        let cfg = ExperimentConfig::from_key_values(&parse_key_values(text).unwrap()).unwrap();
        let spec = cfg.model.spec().unwrap();
        assert_eq!(spec.a2(), ModelSpec::zz().a2());
        cfg.validate().unwrap();
        let too_big = ExperimentConfig { n_grid: NGrid::List(vec![5000]), ..cfg };
        assert!(too_big.validate().is_err());
    }

    #[test]
    fn rejects_bad_input() {
        for text in
            ["bogus = 1", "p0 = x", "p0 = 1.5", "t_list = 1, 0.5", "n_list = 1, 5", "model = custom", "a1 = 1, 2"]
        {
            let parsed = parse_key_values(text).and_then(|m| ExperimentConfig::from_key_values(&m));
            let failed = match parsed {
                Err(_) => true,
                Ok(cfg) => cfg.validate().is_err(),
            };
            assert!(failed, "{text}");
        }
        assert!(parse_key_values("p0 0.5").is_err());
        assert!(parse_key_values("p0 = 1\np0 = 2").is_err());
    }
}
