//! Run configuration: flags, a flat `key=value` file and defaults.
//!
//! Precedence is flag, then the output-directory environment variable, then
//! the file, then the built-in default. File keys are the long flag names,
//! with `_` accepted for `-`.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{CommandFactory, Parser};
use curved_duality::spectra::{HalfInt, Sector};
use curved_duality::{Complex64, Curvature};

use crate::error::CliError;

/// Environment variable that overrides the output directory of the file.
pub const OUT_ENV: &str = "CURVED_DUALITY_OUT";

fn half_or_real(s: &str) -> Result<f64, String> {
    s.parse::<HalfInt>().map(HalfInt::value).or_else(|_| s.trim().parse::<f64>().map_err(|e| e.to_string()))
}

/// Every setting that can come from a flag or a file line.
#[derive(Parser, Debug, Default, Clone, PartialEq)]
#[command(no_binary_name = true, allow_negative_numbers = true)]
pub struct Overrides {
    /// osc2d, osc4d, coulomb2d or mic
    #[arg(long)]
    pub system: Option<String>,
    /// Curvature sign, +1 or -1 (both when unset)
    #[arg(long, allow_negative_numbers = true)]
    pub epsilon: Option<i32>,
    /// Oscillator coupling
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Oscillator radius R0
    #[arg(long)]
    pub radius: Option<f64>,
    /// Coulomb coupling
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Coulomb radius r0
    #[arg(long)]
    pub r0: Option<f64>,
    /// Configuration-space dimension; must agree with the system
    #[arg(long)]
    pub dim: Option<usize>,
    /// Integration time
    #[arg(long = "T")]
    pub t: Option<f64>,
    /// Integrator local error tolerance
    #[arg(long)]
    pub tol: Option<f64>,
    /// Coulomb sector, 0 or 1/2 (both when unset)
    #[arg(long)]
    pub sigma: Option<String>,
    /// Monopole charge
    #[arg(long, allow_hyphen_values = true, value_parser = half_or_real)]
    pub s: Option<f64>,
    /// Sampling seed
    #[arg(long)]
    pub seed: Option<u64>,
    /// Number of sampled phase points
    #[arg(long)]
    pub points: Option<usize>,
    /// Number of levels listed for unbounded towers
    #[arg(long)]
    pub levels: Option<i64>,
    /// Initial coordinates as re,im pairs
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<String>,
    /// Initial momenta as re,im pairs
    #[arg(long, allow_hyphen_values = true)]
    pub pi: Option<String>,
    /// Energy above the level-set minimum for the reduced trajectory
    #[arg(long)]
    pub excess: Option<f64>,
    /// Bound on the relative drift of conserved quantities
    #[arg(long)]
    pub drift_tol: Option<f64>,
    /// Bound on the symmetry-algebra bracket residuals
    #[arg(long)]
    pub algebra_tol: Option<f64>,
    /// Bound on the bracket residuals of the squaring map
    #[arg(long)]
    pub canonicity_tol: Option<f64>,
    /// Bound on the energy-surface residual of mapped points
    #[arg(long)]
    pub surface_tol: Option<f64>,
    /// Bound on the reduced-bracket residuals of the KS map
    #[arg(long)]
    pub bracket_tol: Option<f64>,
    /// Bound on the MIC-Kepler surface residual along reduced trajectories
    #[arg(long)]
    pub mic_tol: Option<f64>,
    /// Bound on the mismatch between dual spectra
    #[arg(long)]
    pub interrelation_tol: Option<f64>,
    /// Integration stops when a singular factor drops below this
    #[arg(long)]
    pub guard: Option<f64>,
    /// Output directory
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write SVG plots
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub plot: Option<bool>,
}

macro_rules! merge_fields {
    ($hi:ident, $lo:ident, $($f:ident),*) => {
        Overrides { $($f: $hi.$f.or($lo.$f)),* }
    };
}

impl Overrides {
    /// Fields set in `self` win over those of `lower`.
    pub fn or(self, lower: Overrides) -> Overrides {
        merge_fields!(
            self,
            lower,
            system,
            epsilon,
            alpha,
            radius,
            gamma,
            r0,
            dim,
            t,
            tol,
            sigma,
            s,
            seed,
            points,
            levels,
            z,
            pi,
            excess,
            drift_tol,
            algebra_tol,
            canonicity_tol,
            surface_tol,
            bracket_tol,
            mic_tol,
            interrelation_tol,
            guard,
            out,
            plot
        )
    }

    /// Reads a flat `key=value` file; `#` starts a comment.
    pub fn from_file(path: &Path) -> Result<Overrides, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::config("config", format!("cannot read {}: {e}", path.display())))?;
        Self::from_text(&text, &path.display().to_string())
    }

    pub fn from_text(text: &str, origin: &str) -> Result<Overrides, CliError> {
        let known: Vec<String> =
            Overrides::command().get_arguments().filter_map(|a| a.get_long().map(str::to_string)).collect();
        let mut acc = Overrides::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::config(
                    "config",
                    format!("{origin}:{}: expected key=value, got `{line}`", i + 1),
                ));
            };
            let (key, value) = (key.trim(), value.trim());
            let long = key.replace('_', "-");
            if !known.contains(&long) {
                return Err(CliError::config(key, format!("{origin}:{}: unknown key", i + 1)));
            }
            let flag = format!("--{long}");
            let parsed = Overrides::try_parse_from([flag.as_str(), value]).map_err(|e| {
                let reason = e.kind().as_str().unwrap_or("invalid value").to_string();
                CliError::config(key, format!("{origin}:{}: {reason}: `{value}`", i + 1))
            })?;
            acc = parsed.or(acc);
        }
        Ok(acc)
    }
}

/// Which flow or spectrum a command acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SystemChoice {
    Osc2d,
    Osc4d,
    Coulomb2d,
    Mic,
}

impl SystemChoice {
    pub fn name(self) -> &'static str {
        match self {
            SystemChoice::Osc2d => "osc2d",
            SystemChoice::Osc4d => "osc4d",
            SystemChoice::Coulomb2d => "coulomb2d",
            SystemChoice::Mic => "mic",
        }
    }

    pub fn dim(self) -> usize {
        match self {
            SystemChoice::Osc2d | SystemChoice::Coulomb2d => 2,
            SystemChoice::Mic => 3,
            SystemChoice::Osc4d => 4,
        }
    }

    fn parse(s: &str) -> Result<Self, CliError> {
        match s {
            "osc2d" => Ok(SystemChoice::Osc2d),
            "osc4d" => Ok(SystemChoice::Osc4d),
            "coulomb2d" => Ok(SystemChoice::Coulomb2d),
            "mic" => Ok(SystemChoice::Mic),
            other => Err(CliError::config(
                "system",
                format!("unknown system `{other}` (expected osc2d, osc4d, coulomb2d or mic)"),
            )),
        }
    }
}

/// Pass thresholds of the checks written to the summaries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckTolerances {
    pub drift: f64,
    pub algebra: f64,
    pub canonicity: f64,
    pub surface: f64,
    pub bracket: f64,
    pub mic: f64,
    pub interrelation: f64,
}

impl Default for CheckTolerances {
    fn default() -> Self {
        Self {
            drift: 1e-9,
            algebra: 1e-8,
            canonicity: 1e-9,
            surface: 1e-10,
            bracket: 1e-8,
            mic: 1e-9,
            interrelation: 1e-12,
        }
    }
}

/// A fully resolved configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub system: Option<SystemChoice>,
    /// `None` runs both curvatures, sphere first.
    pub curvature: Option<Curvature>,
    pub alpha: f64,
    pub radius: f64,
    pub gamma: f64,
    pub r0: f64,
    pub t_end: f64,
    pub tol: f64,
    pub sector: Option<Sector>,
    pub s: f64,
    pub seed: u64,
    pub points: usize,
    pub levels: i64,
    pub z: Option<Vec<Complex64>>,
    pub pi: Option<Vec<Complex64>>,
    pub excess: f64,
    pub tolerances: CheckTolerances,
    pub guard: f64,
    pub out: PathBuf,
    pub plot: bool,
}

fn positive(key: &'static str, value: f64) -> Result<f64, CliError> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(CliError::config(key, format!("must be positive and finite, got {value}")))
    }
}

fn non_negative(key: &'static str, value: f64) -> Result<f64, CliError> {
    if value.is_finite() && value >= 0.0 {
        Ok(value)
    } else {
        Err(CliError::config(key, format!("must be non-negative and finite, got {value}")))
    }
}

fn complex_list(key: &'static str, text: &str) -> Result<Vec<Complex64>, CliError> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if !parts.len().is_multiple_of(2) {
        return Err(CliError::config(key, format!("expected re,im pairs, got `{text}`")));
    }
    let reals = parts
        .iter()
        .map(|p| p.parse::<f64>().map_err(|_| CliError::config(key, format!("cannot read `{p}` as a number"))))
        .collect::<Result<Vec<f64>, _>>()?;
    Ok(reals.chunks(2).map(|c| Complex64::new(c[0], c[1])).collect())
}

impl RunConfig {
    /// Applies the precedence rule and validates every value.
    pub fn resolve(flags: Overrides, config_file: Option<&Path>, env_out: Option<PathBuf>) -> Result<Self, CliError> {
        let file = match config_file {
            Some(path) => Overrides::from_file(path)?,
            None => Overrides::default(),
        };
        let env = Overrides { out: env_out, ..Overrides::default() };
        Self::from_overrides(flags.or(env).or(file))
    }

    pub fn from_overrides(o: Overrides) -> Result<Self, CliError> {
        let system = o.system.as_deref().map(SystemChoice::parse).transpose()?;
        if let (Some(dim), Some(sys)) = (o.dim, system) {
            if dim != sys.dim() {
                return Err(CliError::config("dim", format!("{} has dim = {}, got {dim}", sys.name(), sys.dim())));
            }
        }
        let curvature = o
            .epsilon
            .map(|e| {
                Curvature::from_sign(e).map_err(|_| CliError::config("epsilon", format!("must be +1 or -1, got {e}")))
            })
            .transpose()?;
        let sector = o
            .sigma
            .as_deref()
            .map(|s| s.parse::<Sector>().map_err(|_| CliError::config("sigma", format!("must be 0 or 1/2, got `{s}`"))))
            .transpose()?;
        let defaults = CheckTolerances::default();
        let tolerances = CheckTolerances {
            drift: positive("drift_tol", o.drift_tol.unwrap_or(defaults.drift))?,
            algebra: positive("algebra_tol", o.algebra_tol.unwrap_or(defaults.algebra))?,
            canonicity: positive("canonicity_tol", o.canonicity_tol.unwrap_or(defaults.canonicity))?,
            surface: positive("surface_tol", o.surface_tol.unwrap_or(defaults.surface))?,
            bracket: positive("bracket_tol", o.bracket_tol.unwrap_or(defaults.bracket))?,
            mic: positive("mic_tol", o.mic_tol.unwrap_or(defaults.mic))?,
            interrelation: positive("interrelation_tol", o.interrelation_tol.unwrap_or(defaults.interrelation))?,
        };
        let points = o.points.unwrap_or(1000);
        if points == 0 {
            return Err(CliError::config("points", "must be at least 1"));
        }
        let levels = o.levels.unwrap_or(20);
        if levels < 1 {
            return Err(CliError::config("levels", format!("must be at least 1, got {levels}")));
        }
        let s = o.s.unwrap_or(0.0);
        if !s.is_finite() {
            return Err(CliError::config("s", format!("must be finite, got {s}")));
        }
        Ok(Self {
            system,
            curvature,
            alpha: non_negative("alpha", o.alpha.unwrap_or(1.0))?,
            radius: positive("radius", o.radius.unwrap_or(1.0))?,
            gamma: non_negative("gamma", o.gamma.unwrap_or(1.0))?,
            r0: positive("r0", o.r0.unwrap_or(1.0))?,
            t_end: positive("T", o.t.unwrap_or(50.0))?,
            tol: positive("tol", o.tol.unwrap_or(1e-12))?,
            sector,
            s,
            seed: o.seed.unwrap_or(7),
            points,
            levels,
            z: o.z.as_deref().map(|t| complex_list("z", t)).transpose()?,
            pi: o.pi.as_deref().map(|t| complex_list("pi", t)).transpose()?,
            excess: positive("excess", o.excess.unwrap_or(0.1))?,
            tolerances,
            guard: positive("guard", o.guard.unwrap_or(curved_duality::tolerances::SINGULARITY_GUARD))?,
            out: o.out.unwrap_or_else(|| PathBuf::from("out")),
            plot: o.plot.unwrap_or(false),
        })
    }

    /// The curvatures to run, sphere first.
    pub fn curvatures(&self) -> Vec<Curvature> {
        match self.curvature {
            Some(c) => vec![c],
            None => vec![Curvature::Sphere, Curvature::Pseudosphere],
        }
    }

    pub fn sectors(&self) -> Vec<Sector> {
        match self.sector {
            Some(s) => vec![s],
            None => Sector::BOTH.to_vec(),
        }
    }

    /// `z` or `pi` with exactly `n` entries, or the default.
    pub fn initial<const N: usize>(
        &self,
        key: &'static str,
        default: [Complex64; N],
    ) -> Result<[Complex64; N], CliError> {
        let given = if key == "z" { &self.z } else { &self.pi };
        match given {
            None => Ok(default),
            Some(v) => <[Complex64; N]>::try_from(v.as_slice())
                .map_err(|_| CliError::config(key, format!("expected {N} complex entries, got {}", v.len()))),
        }
    }
}
