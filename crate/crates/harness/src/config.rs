//! JSON experiment configuration.
//!
//! A configuration names an experiment and overrides any of its defaults.
//! [`ExperimentConfig::resolve`] fills in the defaults and expands rate
//! presets; [`ResolvedConfig::archive`] turns the result back into a fully
//! explicit configuration, which is what gets written next to the outputs.

use std::f64::consts::{PI, SQRT_2};
use std::fmt;
use std::path::{Path, PathBuf};

use rlab_core::field::mode_index;
use rlab_core::oracle::OracleGrid;
use rlab_core::reference::SpdeParams;
use rlab_core::shuffle::{Preset, RateMode, RateScheme};
use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    HydroHyperbolic,
    HydroDiffusive,
    FluctsHyperbolic,
    FluctsDiffusive,
    BoundaryDecay,
    Stationarity,
    OracleValidate,
    SpdeReference,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::HydroHyperbolic => "hydro-hyperbolic",
            ExperimentKind::HydroDiffusive => "hydro-diffusive",
            ExperimentKind::FluctsHyperbolic => "flucts-hyperbolic",
            ExperimentKind::FluctsDiffusive => "flucts-diffusive",
            ExperimentKind::BoundaryDecay => "boundary-decay",
            ExperimentKind::Stationarity => "stationarity",
            ExperimentKind::OracleValidate => "oracle-validate",
            ExperimentKind::SpdeReference => "spde-reference",
        }
    }

    /// Time-scale exponent the experiment is defined at, if fixed.
    fn required_beta(self) -> Option<u32> {
        match self {
            ExperimentKind::HydroHyperbolic | ExperimentKind::FluctsHyperbolic => Some(1),
            ExperimentKind::HydroDiffusive
            | ExperimentKind::FluctsDiffusive
            | ExperimentKind::BoundaryDecay
            | ExperimentKind::SpdeReference => Some(2),
            ExperimentKind::Stationarity | ExperimentKind::OracleValidate => None,
        }
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Either a named preset or explicit rates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SchemeChoice {
    Preset(Preset),
    Custom(RateMode),
}

/// Initial density profile on the torus.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Profile {
    Constant {
        rho: f64,
    },
    /// `mean + sum_j cos[j-1] cos(2 pi j u) + sin[j-1] sin(2 pi j u)`.
    Fourier {
        mean: f64,
        #[serde(default)]
        cos: Vec<f64>,
        #[serde(default)]
        sin: Vec<f64>,
    },
}

impl Profile {
    pub fn eval(&self, u: f64) -> f64 {
        match self {
            Profile::Constant { rho } => *rho,
            Profile::Fourier { mean, cos, sin } => {
                let harmonic = |coeffs: &[f64], f: fn(f64) -> f64| {
                    coeffs
                        .iter()
                        .enumerate()
                        .map(|(j, c)| c * f(2.0 * PI * (j + 1) as f64 * u))
                        .sum::<f64>()
                };
                mean + harmonic(cos, f64::cos) + harmonic(sin, f64::sin)
            }
        }
    }

    /// Mean density.
    pub fn density(&self) -> f64 {
        match self {
            Profile::Constant { rho } => *rho,
            Profile::Fourier { mean, .. } => *mean,
        }
    }

    pub fn is_constant(&self) -> bool {
        match self {
            Profile::Constant { .. } => true,
            Profile::Fourier { cos, sin, .. } => cos.iter().chain(sin).all(|&c| c == 0.0),
        }
    }

    /// Highest harmonic present.
    pub fn degree(&self) -> usize {
        match self {
            Profile::Constant { .. } => 0,
            Profile::Fourier { cos, sin, .. } => cos.len().max(sin.len()),
        }
    }

    /// Coefficients `<rho_0, psi_k>` for `|k| <= cutoff`.
    pub fn psi_coefficients(&self, cutoff: usize) -> Vec<f64> {
        let mut out = vec![0.0; 2 * cutoff + 1];
        out[cutoff] = self.density();
        if let Profile::Fourier { cos, sin, .. } = self {
            for (j, c) in cos.iter().enumerate().take(cutoff) {
                out[mode_index(j as i32 + 1, cutoff)] = c / SQRT_2;
            }
            // psi_{-k} = -sqrt(2) sin(2 pi k u)
            for (j, s) in sin.iter().enumerate().take(cutoff) {
                out[mode_index(-(j as i32 + 1), cutoff)] = -s / SQRT_2;
            }
        }
        out
    }

    fn validate(&self) -> Result<()> {
        let grid = 4096;
        for j in 0..grid {
            let u = j as f64 / grid as f64;
            let v = self.eval(u);
            if !(0.0..=1.0).contains(&v) {
                return Err(HarnessError::config(format!("profile value {v} at u = {u} outside [0, 1]")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InitialLaw {
    /// Independent sites with the profile's density.
    #[default]
    Bernoulli,
    /// Uniform over configurations with `round(rho n)` particles
    /// (constant profiles only).
    Hyperplane,
}

/// Second site of the boundary integral `int (eta(1) - eta(r))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum BoundarySite {
    #[serde(rename = "2")]
    Second,
    #[default]
    #[serde(rename = "n")]
    Last,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerance {
    /// Accepted `|z|` for Monte Carlo comparisons.
    #[serde(default = "default_z")]
    pub z: f64,
    /// Largest standard error for a conclusive comparison.
    #[serde(default)]
    pub max_se: Option<f64>,
    /// Accepted residual for exact identities.
    #[serde(default = "default_exact")]
    pub exact: f64,
}

fn default_z() -> f64 {
    4.0
}

fn default_exact() -> f64 {
    1e-12
}

impl Default for Tolerance {
    fn default() -> Self {
        Self { z: default_z(), max_se: None, exact: default_exact() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpdeSettings {
    /// Paths used by the Monte Carlo confirmation of the mode
    /// autocovariance.
    #[serde(default = "default_paths")]
    pub paths: usize,
    /// Exact-integrator steps per observation interval.
    #[serde(default = "default_steps")]
    pub steps: usize,
    /// Paths written to the CSV by the reference experiment.
    #[serde(default = "default_recorded")]
    pub recorded_paths: usize,
}

fn default_paths() -> usize {
    100_000
}

fn default_steps() -> usize {
    4
}

fn default_recorded() -> usize {
    100
}

impl Default for SpdeSettings {
    fn default() -> Self {
        Self { paths: default_paths(), steps: default_steps(), recorded_paths: default_recorded() }
    }
}

/// Configuration as written by the user; every field but `experiment` is
/// optional.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: Option<ExperimentKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scheme: Option<SchemeChoice>,
    /// Informational: preset the archived rates were expanded from.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset_name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profile: Option<Profile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial: Option<InitialLaw>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cutoff: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub times: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub replicas: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<Tolerance>,
    /// Modes compared in the fluctuation experiments.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modes: Option<Vec<i32>>,
    /// Deck sizes of the boundary-decay experiment.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ladder: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub site: Option<BoundarySite>,
    /// Time horizon of the boundary integral.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub horizon: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spde: Option<SpdeSettings>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleGrid>,
}

/// Configuration with every default applied and presets expanded.
#[derive(Debug, Clone, PartialEq)]
pub struct ResolvedConfig {
    pub experiment: ExperimentKind,
    pub n: usize,
    pub scheme: RateScheme,
    pub preset_name: Option<String>,
    pub profile: Profile,
    pub initial: InitialLaw,
    pub cutoff: usize,
    pub times: Vec<f64>,
    pub replicas: usize,
    pub seed: u64,
    pub output: Option<PathBuf>,
    pub tolerance: Tolerance,
    pub modes: Vec<i32>,
    pub ladder: Vec<usize>,
    pub site: BoundarySite,
    pub horizon: f64,
    pub spde: SpdeSettings,
    pub oracle: OracleGrid,
}

struct Defaults {
    n: usize,
    preset: Preset,
    profile: Profile,
    cutoff: usize,
    times: &'static [f64],
    replicas: usize,
    max_se: Option<f64>,
}

fn defaults(kind: ExperimentKind) -> Defaults {
    let wave = Profile::Fourier { mean: 0.5, cos: vec![], sin: vec![0.25] };
    let half = Profile::Constant { rho: 0.5 };
    let d = |n, preset, profile, cutoff, times, replicas, max_se| Defaults {
        n,
        preset,
        profile,
        cutoff,
        times,
        replicas,
        max_se,
    };
    match kind {
        ExperimentKind::HydroHyperbolic => d(2048, Preset::Rudvalis, wave, 4, &[0.25, 0.5], 64, Some(0.01)),
        ExperimentKind::HydroDiffusive => d(512, Preset::Symmetric, wave, 4, &[0.01, 0.02], 128, Some(0.01)),
        ExperimentKind::FluctsHyperbolic => {
            d(1024, Preset::Rudvalis, half, 2, &[0.1, 0.25, 0.4], 5000, Some(0.01))
        }
        ExperimentKind::FluctsDiffusive => d(512, Preset::Symmetric, half, 2, &[0.02, 0.05], 5000, Some(0.01)),
        ExperimentKind::BoundaryDecay => d(64, Preset::Symmetric, half, 1, &[], 500, None),
        ExperimentKind::Stationarity => d(256, Preset::Rudvalis, half, 4, &[0.0, 0.5, 1.0], 2000, Some(0.01)),
        ExperimentKind::OracleValidate => d(4, Preset::Rudvalis, half, 1, &[], 2, None),
        ExperimentKind::SpdeReference => d(512, Preset::Symmetric, half, 4, &[0.02, 0.05], 2, Some(0.01)),
    }
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| HarnessError::config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| HarnessError::config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Apply defaults and validate. Every failure, including invalid rates,
    /// is reported as a configuration error.
    pub fn resolve(&self) -> Result<ResolvedConfig> {
        self.resolve_inner().map_err(|e| match e {
            HarnessError::Core(inner) => HarnessError::config(inner.to_string()),
            other => other,
        })
    }

    fn resolve_inner(&self) -> Result<ResolvedConfig> {
        let experiment = self.experiment.ok_or_else(|| HarnessError::config("missing field `experiment`"))?;
        let dflt = defaults(experiment);
        let beta = match (self.beta, experiment.required_beta()) {
            (Some(b), Some(req)) if b != req => {
                return Err(HarnessError::config(format!("{experiment} runs at beta = {req}, got {b}")));
            }
            (Some(b), _) => b,
            (None, Some(req)) => req,
            (None, None) => 1,
        };
        let choice = self.scheme.unwrap_or(SchemeChoice::Preset(dflt.preset));
        let (scheme, preset_name) = match choice {
            SchemeChoice::Preset(p) => (p.scheme(beta)?, Some(p.name().to_string())),
            SchemeChoice::Custom(mode) => (RateScheme::new(mode, beta)?, self.preset_name.clone()),
        };
        let profile = self.profile.clone().unwrap_or(dflt.profile);
        profile.validate()?;
        let tolerance = self.tolerance.unwrap_or(Tolerance { max_se: dflt.max_se, ..Tolerance::default() });
        let times = self.times.clone().unwrap_or_else(|| dflt.times.to_vec());
        if times.iter().any(|t| !(*t >= 0.0) || !t.is_finite()) || times.windows(2).any(|w| w[0] >= w[1]) {
            return Err(HarnessError::config("times must be finite, nonnegative and strictly increasing"));
        }
        let resolved = ResolvedConfig {
            experiment,
            n: self.n.unwrap_or(dflt.n),
            scheme,
            preset_name,
            profile,
            initial: self.initial.unwrap_or_default(),
            cutoff: self.cutoff.unwrap_or(dflt.cutoff),
            times,
            replicas: self.replicas.unwrap_or(dflt.replicas),
            seed: self.seed.unwrap_or(0),
            output: self.output.clone(),
            tolerance,
            modes: self.modes.clone().unwrap_or_else(|| vec![1]),
            ladder: self.ladder.clone().unwrap_or_else(|| vec![64, 128, 256]),
            site: self.site.unwrap_or_default(),
            horizon: self.horizon.unwrap_or(1.0),
            spde: self.spde.unwrap_or_default(),
            oracle: self.oracle.clone().unwrap_or_default(),
        };
        resolved.check()?;
        Ok(resolved)
    }
}

impl ResolvedConfig {
    fn check(&self) -> Result<()> {
        let kind = self.experiment;
        if kind == ExperimentKind::OracleValidate {
            if self.oracle.sizes.iter().any(|&n| !(4..=rlab_core::oracle::MAX_ORACLE_SIZE).contains(&n)) {
                return Err(HarnessError::config("oracle sizes must lie in 4..=12"));
            }
            return Ok(());
        }
        if self.replicas < 2 {
            return Err(HarnessError::config(format!("at least two replicas are required, got {}", self.replicas)));
        }
        let sizes: Vec<usize> = if kind == ExperimentKind::BoundaryDecay { self.ladder.clone() } else { vec![self.n] };
        if sizes.is_empty() {
            return Err(HarnessError::config("empty deck-size ladder"));
        }
        for &n in &sizes {
            if n < rlab_core::shuffle::MIN_SIZE {
                return Err(HarnessError::config(format!("deck size {n} below 4")));
            }
            self.scheme.realize(n)?;
        }
        if kind != ExperimentKind::BoundaryDecay && kind != ExperimentKind::SpdeReference {
            if self.cutoff == 0 || 4 * self.cutoff > self.n {
                return Err(HarnessError::config(format!("cutoff {} needs 1 <= 4K <= n = {}", self.cutoff, self.n)));
            }
            if self.profile.degree() > self.cutoff {
                return Err(HarnessError::config("profile has harmonics above the cutoff"));
            }
            if self.times.is_empty() {
                return Err(HarnessError::config("no observation times"));
            }
        }
        if self.initial == InitialLaw::Hyperplane && !self.profile.is_constant() {
            return Err(HarnessError::config("hyperplane initial law needs a constant profile"));
        }
        let equilibrium = matches!(
            kind,
            ExperimentKind::FluctsHyperbolic
                | ExperimentKind::FluctsDiffusive
                | ExperimentKind::Stationarity
                | ExperimentKind::BoundaryDecay
        );
        if equilibrium && !self.profile.is_constant() {
            return Err(HarnessError::config(format!("{kind} starts from equilibrium: use a constant profile")));
        }
        let compares_modes =
            matches!(kind, ExperimentKind::FluctsHyperbolic | ExperimentKind::FluctsDiffusive | ExperimentKind::SpdeReference);
        if compares_modes
            && (self.modes.is_empty() || self.modes.iter().any(|&k| k == 0 || k.unsigned_abs() as usize > self.cutoff))
        {
            return Err(HarnessError::config("modes must be nonzero with |k| <= cutoff"));
        }
        if matches!(
            kind,
            ExperimentKind::HydroDiffusive | ExperimentKind::FluctsDiffusive | ExperimentKind::SpdeReference
        ) {
            self.spde_params()?;
            if self.spde.paths < 2 || self.spde.steps == 0 {
                return Err(HarnessError::config("spde needs at least two paths and one step"));
            }
        }
        if kind == ExperimentKind::BoundaryDecay {
            if !(self.horizon > 0.0) || !self.horizon.is_finite() {
                return Err(HarnessError::config("horizon must be positive"));
            }
            for &n in &self.ladder {
                let rates = self.scheme.realize(n)?;
                match self.site {
                    BoundarySite::Last if rates.b <= 0.0 => {
                        return Err(HarnessError::config("boundary site r = n needs b_n > 0"));
                    }
                    BoundarySite::Second if rates.d <= 0.0 => {
                        return Err(HarnessError::config("boundary site r = 2 needs d_n > 0"));
                    }
                    _ => {}
                }
            }
        }
        if !(self.tolerance.z > 0.0) || !(self.tolerance.exact >= 0.0) {
            return Err(HarnessError::config("tolerances must be positive"));
        }
        Ok(())
    }

    /// Limit equation at the diffusive scale for this scheme.
    pub fn spde_params(&self) -> Result<SpdeParams> {
        Ok(SpdeParams::from_scheme(&self.scheme, self.cutoff, self.profile.density())?)
    }

    /// Density the fluctuation field is centered at: the exact particle
    /// density under the hyperplane law, the nominal one otherwise.
    pub fn centering(&self, n: usize) -> f64 {
        match self.initial {
            InitialLaw::Bernoulli => self.profile.density(),
            InitialLaw::Hyperplane => self.hyperplane_particles(n) as f64 / n as f64,
        }
    }

    pub fn hyperplane_particles(&self, n: usize) -> usize {
        (self.profile.density() * n as f64).round() as usize
    }

    /// Fully explicit configuration equivalent to this one.
    pub fn archive(&self) -> ExperimentConfig {
        ExperimentConfig {
            experiment: Some(self.experiment),
            n: Some(self.n),
            beta: Some(self.scheme.beta),
            scheme: Some(SchemeChoice::Custom(self.scheme.mode)),
            preset_name: self.preset_name.clone(),
            profile: Some(self.profile.clone()),
            initial: Some(self.initial),
            cutoff: Some(self.cutoff),
            times: Some(self.times.clone()),
            replicas: Some(self.replicas),
            seed: Some(self.seed),
            output: self.output.clone(),
            tolerance: Some(self.tolerance),
            modes: Some(self.modes.clone()),
            ladder: Some(self.ladder.clone()),
            site: Some(self.site),
            horizon: Some(self.horizon),
            spde: Some(self.spde),
            oracle: Some(self.oracle.clone()),
        }
    }
}
