//! Flat `key = value` experiment configuration.
//!
//! Every key has a default equal to the reference two-subdomain setup
//! (unit density, `cp = 1`, `cs = 0.5`, `(-1,1) x (0,1)` with `h = 1/40`,
//! overlap of four cells). Files may be plain config files or any output
//! written by the CLI: when a file contains `#@ key=value` header lines only
//! those are read, so every artifact reproduces itself.

use crate::analysis::ElasticMedium;
use crate::error::{Error, Result};
use serde::Serialize;
use std::path::{Path, PathBuf};

/// Material given either by wave speeds or by Lamé coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum MaterialSpec {
    WaveSpeeds { cp: f64, cs: f64 },
    Lame { lame_lambda: f64, lame_mu: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub rho: f64,
    pub material: MaterialSpec,
    pub omega: f64,
    /// Overlap length for the Fourier analysis.
    pub delta: f64,
    /// Overlap in mesh cells for the discrete experiments.
    pub overlap_cells: usize,
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub nx: usize,
    pub ny: usize,
    pub k_min: f64,
    pub k_max: f64,
    pub k_count: usize,
    pub tol: f64,
    pub max_iter: usize,
    /// Krylov cycle length; 0 disables restarts.
    pub restart: usize,
    /// Parallel Schwarz iterations.
    pub n_iter: usize,
    /// Stationary RAS iterations in the solver comparison.
    pub stationary_iter: usize,
    /// Power-iteration length of the coefficient recurrence.
    pub modesim_iter: usize,
    pub seed: u64,
    /// Max nodal modulus of the random initial error.
    pub initial_max: f64,
    /// `random` or `zero`.
    pub initial: InitialGuess,
    pub one_subdomain: bool,
    /// Replace operator and preconditioner by the identity.
    pub identity_operator: bool,
    pub source_x: f64,
    pub source_y: f64,
    /// Gaussian source `exp(-r^2 / source_width)` in the x component.
    pub source_width: f64,
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum InitialGuess {
    Random,
    Zero,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            rho: 1.0,
            material: MaterialSpec::WaveSpeeds { cp: 1.0, cs: 0.5 },
            omega: 1.0,
            delta: 0.1,
            overlap_cells: 4,
            x_min: -1.0,
            x_max: 1.0,
            y_min: 0.0,
            y_max: 1.0,
            nx: 80,
            ny: 40,
            k_min: 0.0,
            k_max: 6.0,
            k_count: 121,
            tol: 1e-6,
            max_iter: 500,
            restart: 0,
            n_iter: 25,
            stationary_iter: 50,
            modesim_iter: 200,
            seed: 2024,
            initial_max: 0.789,
            initial: InitialGuess::Random,
            one_subdomain: false,
            identity_operator: false,
            source_x: -0.5,
            source_y: 0.5,
            source_width: 0.01,
            out: PathBuf::from("out"),
        }
    }
}

fn config_err(key: &str, reason: impl std::fmt::Display) -> Error {
    Error::Config(format!("field `{key}`: {reason}"))
}

fn parse<T: std::str::FromStr>(key: &str, value: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    value.parse().map_err(|e| config_err(key, format!("cannot parse {value:?}: {e}")))
}

fn parse_bool(key: &str, value: &str) -> Result<bool> {
    match value {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        _ => Err(config_err(key, format!("expected true or false, got {value:?}"))),
    }
}

/// Raw key/value pairs in file order.
pub fn parse_pairs(text: &str) -> Result<Vec<(String, String)>> {
    let header: Vec<&str> = text.lines().filter_map(|l| l.trim_start().strip_prefix("#@")).collect();
    let lines: Vec<&str> = if header.is_empty() {
        text.lines().filter(|l| !l.trim_start().starts_with('#')).collect()
    } else {
        header
    };
    let mut pairs = Vec::new();
    for (n, line) in lines.iter().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("line {}: expected key=value, got {line:?}", n + 1)))?;
        pairs.push((k.trim().to_string(), v.trim().to_string()));
    }
    Ok(pairs)
}

impl ExperimentConfig {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read config {}: {e}", path.display())))?;
        Self::from_text(&text)
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        cfg.apply_pairs(&parse_pairs(text)?)?;
        Ok(cfg)
    }

    /// Applies overrides in order; material keys of one kind replace the other kind.
    pub fn apply_pairs(&mut self, pairs: &[(String, String)]) -> Result<()> {
        let mut speeds: (Option<f64>, Option<f64>) = (None, None);
        let mut lame: (Option<f64>, Option<f64>) = (None, None);
        for (key, value) in pairs {
            let (k, v) = (key.as_str(), value.as_str());
            match k {
                "rho" => self.rho = parse(k, v)?,
                "cp" => speeds.0 = Some(parse(k, v)?),
                "cs" => speeds.1 = Some(parse(k, v)?),
                "lame_lambda" => lame.0 = Some(parse(k, v)?),
                "lame_mu" => lame.1 = Some(parse(k, v)?),
                "omega" => self.omega = parse(k, v)?,
                "delta" => self.delta = parse(k, v)?,
                "overlap_cells" => self.overlap_cells = parse(k, v)?,
                "x_min" => self.x_min = parse(k, v)?,
                "x_max" => self.x_max = parse(k, v)?,
                "y_min" => self.y_min = parse(k, v)?,
                "y_max" => self.y_max = parse(k, v)?,
                "nx" => self.nx = parse(k, v)?,
                "ny" => self.ny = parse(k, v)?,
                "k_min" => self.k_min = parse(k, v)?,
                "k_max" => self.k_max = parse(k, v)?,
                "k_count" => self.k_count = parse(k, v)?,
                "tol" => self.tol = parse(k, v)?,
                "max_iter" => self.max_iter = parse(k, v)?,
                "restart" => self.restart = parse(k, v)?,
                "n_iter" => self.n_iter = parse(k, v)?,
                "stationary_iter" => self.stationary_iter = parse(k, v)?,
                "modesim_iter" => self.modesim_iter = parse(k, v)?,
                "seed" => self.seed = parse(k, v)?,
                "initial_max" => self.initial_max = parse(k, v)?,
                "initial" => {
                    self.initial = match v {
                        "random" => InitialGuess::Random,
                        "zero" => InitialGuess::Zero,
                        _ => return Err(config_err(k, format!("expected random or zero, got {v:?}"))),
                    }
                }
                "one_subdomain" => self.one_subdomain = parse_bool(k, v)?,
                "identity_operator" => self.identity_operator = parse_bool(k, v)?,
                "source_x" => self.source_x = parse(k, v)?,
                "source_y" => self.source_y = parse(k, v)?,
                "source_width" => self.source_width = parse(k, v)?,
                "out" => self.out = PathBuf::from(v),
                _ => return Err(config_err(k, "unknown key")),
            }
        }
        let given_speeds = speeds.0.is_some() || speeds.1.is_some();
        let given_lame = lame.0.is_some() || lame.1.is_some();
        if given_speeds && given_lame {
            return Err(config_err("material", "give either (cp, cs) or (lame_lambda, lame_mu), not both"));
        }
        if given_speeds {
            let (cp0, cs0) = match self.material {
                MaterialSpec::WaveSpeeds { cp, cs } => (Some(cp), Some(cs)),
                MaterialSpec::Lame { .. } => (None, None),
            };
            let cp = speeds.0.or(cp0).ok_or_else(|| config_err("cp", "missing; cs alone is not enough"))?;
            let cs = speeds.1.or(cs0).ok_or_else(|| config_err("cs", "missing; cp alone is not enough"))?;
            self.material = MaterialSpec::WaveSpeeds { cp, cs };
        }
        if given_lame {
            let (l0, m0) = match self.material {
                MaterialSpec::Lame { lame_lambda, lame_mu } => (Some(lame_lambda), Some(lame_mu)),
                MaterialSpec::WaveSpeeds { .. } => (None, None),
            };
            let lame_lambda = lame.0.or(l0).ok_or_else(|| config_err("lame_lambda", "missing"))?;
            let lame_mu = lame.1.or(m0).ok_or_else(|| config_err("lame_mu", "missing"))?;
            self.material = MaterialSpec::Lame { lame_lambda, lame_mu };
        }
        Ok(())
    }

    /// Medium built from the material spec; errors name the offending field.
    pub fn medium(&self) -> Result<ElasticMedium> {
        let built = match self.material {
            MaterialSpec::WaveSpeeds { cp, cs } => ElasticMedium::from_wave_speeds(self.rho, cp, cs),
            MaterialSpec::Lame { lame_lambda, lame_mu } => ElasticMedium::new(self.rho, lame_lambda, lame_mu),
        };
        built.map_err(|e| match e {
            Error::Domain { param, reason } => config_err(param, reason),
            other => other,
        })
    }

    /// Checks every field before any computation.
    pub fn validate(&self) -> Result<()> {
        self.medium()?;
        let finite_positive = |key: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(config_err(key, format!("must be positive and finite, got {v}")))
            }
        };
        finite_positive("omega", self.omega)?;
        finite_positive("tol", self.tol)?;
        finite_positive("source_width", self.source_width)?;
        if !(self.initial_max >= 0.0 && self.initial_max.is_finite()) {
            return Err(config_err("initial_max", format!("must be nonnegative, got {}", self.initial_max)));
        }
        if !(self.delta >= 0.0 && self.delta.is_finite()) {
            return Err(config_err("delta", format!("must be nonnegative, got {}", self.delta)));
        }
        if !(self.x_max > self.x_min) {
            return Err(config_err("x_max", "must exceed x_min"));
        }
        if !(self.y_max > self.y_min) {
            return Err(config_err("y_max", "must exceed y_min"));
        }
        if self.nx < 2 || !self.nx.is_multiple_of(2) {
            return Err(config_err("nx", format!("must be even and at least 2, got {}", self.nx)));
        }
        if self.ny < 2 {
            return Err(config_err("ny", format!("must be at least 2, got {}", self.ny)));
        }
        if !self.one_subdomain {
            if self.overlap_cells < 2 || !self.overlap_cells.is_multiple_of(2) {
                return Err(config_err("overlap_cells", format!("must be even and at least 2, got {}", self.overlap_cells)));
            }
            if self.overlap_cells >= self.nx {
                return Err(config_err("overlap_cells", format!("must be below nx = {}", self.nx)));
            }
        }
        if !(self.k_min >= 0.0 && self.k_max >= self.k_min && self.k_max.is_finite()) {
            return Err(config_err("k_max", "need 0 <= k_min <= k_max"));
        }
        if self.k_count == 0 || (self.k_count > 1 && self.k_max == self.k_min) {
            return Err(config_err("k_count", "need a nonempty strictly increasing grid"));
        }
        if self.max_iter == 0 {
            return Err(config_err("max_iter", "must be at least 1"));
        }
        if self.modesim_iter < 50 {
            return Err(config_err("modesim_iter", "must be at least 50"));
        }
        Ok(())
    }

    /// All keys in a fixed order with round-trip formatting.
    pub fn to_pairs(&self) -> Vec<(&'static str, String)> {
        let mut pairs = vec![("rho", self.rho.to_string())];
        match self.material {
            MaterialSpec::WaveSpeeds { cp, cs } => {
                pairs.push(("cp", cp.to_string()));
                pairs.push(("cs", cs.to_string()));
            }
            MaterialSpec::Lame { lame_lambda, lame_mu } => {
                pairs.push(("lame_lambda", lame_lambda.to_string()));
                pairs.push(("lame_mu", lame_mu.to_string()));
            }
        }
        pairs.extend([
            ("omega", self.omega.to_string()),
            ("delta", self.delta.to_string()),
            ("overlap_cells", self.overlap_cells.to_string()),
            ("x_min", self.x_min.to_string()),
            ("x_max", self.x_max.to_string()),
            ("y_min", self.y_min.to_string()),
            ("y_max", self.y_max.to_string()),
            ("nx", self.nx.to_string()),
            ("ny", self.ny.to_string()),
            ("k_min", self.k_min.to_string()),
            ("k_max", self.k_max.to_string()),
            ("k_count", self.k_count.to_string()),
            ("tol", self.tol.to_string()),
            ("max_iter", self.max_iter.to_string()),
            ("restart", self.restart.to_string()),
            ("n_iter", self.n_iter.to_string()),
            ("stationary_iter", self.stationary_iter.to_string()),
            ("modesim_iter", self.modesim_iter.to_string()),
            ("seed", self.seed.to_string()),
            ("initial_max", self.initial_max.to_string()),
            (
                "initial",
                match self.initial {
                    InitialGuess::Random => "random",
                    InitialGuess::Zero => "zero",
                }
                .to_string(),
            ),
            ("one_subdomain", self.one_subdomain.to_string()),
            ("identity_operator", self.identity_operator.to_string()),
            ("source_x", self.source_x.to_string()),
            ("source_y", self.source_y.to_string()),
            ("source_width", self.source_width.to_string()),
            ("out", self.out.display().to_string()),
        ]);
        pairs
    }

    /// `#@ key=value` lines prefixed to every artifact, preceded by the command name.
    pub fn header(&self, command: &str) -> String {
        let mut s = format!("# navier-schwarz {command}\n");
        for (k, v) in self.to_pairs() {
            s.push_str(&format!("#@ {k}={v}\n"));
        }
        s
    }
}
