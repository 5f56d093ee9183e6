//! Run configuration: a single TOML file with strict keys.
//!
//! Unknown keys are rejected at parse time (exit code 2, with the parser's
//! line and column), while physically invalid values surface later as
//! precondition failures (exit code 3). Every emitted sidecar embeds the
//! resolved configuration as a TOML string, so a run can be reproduced
//! from its own report.

use serde::{Deserialize, Serialize};

use qlci_core::spectra::{fwhm_to_sigma, SpectralProfile};
use qlci_core::units::{wavelength_to_omega, Units};
use qlci_core::UnitSystem;

use crate::CliError;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default = "default_units")]
    pub units: UnitSystem,
    pub source: SourceConfig,
    #[serde(default)]
    pub grid: GridConfig,
    #[serde(default)]
    pub scan: ScanConfig,
    #[serde(default)]
    pub sample: SampleConfig,
    #[serde(default)]
    pub noise: NoiseConfig,
    #[serde(default)]
    pub output: OutputConfig,
}

fn default_units() -> UnitSystem {
    UnitSystem::Natural
}

/// Source line: either (omega0, sigma) directly, or a center wavelength
/// plus FWHM bandwidth in length units, converted on resolution via
/// omega = 2 pi c / lambda and sigma = (2 pi c dlambda / lambda^2) / 2.3548.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SourceConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub center_wavelength: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bandwidth_fwhm: Option<f64>,
}

impl SourceConfig {
    pub fn resolve(&self, units: &Units) -> Result<SpectralProfile, CliError> {
        match (
            self.omega0,
            self.sigma,
            self.center_wavelength,
            self.bandwidth_fwhm,
        ) {
            (Some(w0), Some(sigma), None, None) => {
                SpectralProfile::new(w0, sigma).map_err(CliError::from)
            }
            (None, None, Some(lambda0), Some(dlambda)) => {
                if !(lambda0 > 0.0) || !lambda0.is_finite() {
                    return Err(CliError::Physics(format!(
                        "center_wavelength must be positive, got {lambda0}"
                    )));
                }
                if !(dlambda > 0.0) || !dlambda.is_finite() {
                    return Err(CliError::Physics(format!(
                        "bandwidth_fwhm must be positive, got {dlambda}"
                    )));
                }
                let omega0 = wavelength_to_omega(lambda0, units);
                let fwhm_omega = 2.0 * std::f64::consts::PI * units.c * dlambda
                    / (lambda0 * lambda0);
                SpectralProfile::new(omega0, fwhm_to_sigma(fwhm_omega)).map_err(CliError::from)
            }
            _ => Err(CliError::Physics(
                "source needs either omega0 + sigma or center_wavelength + bandwidth_fwhm"
                    .into(),
            )),
        }
    }
}

/// Frequency-grid discretization for the quantum wave packet.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GridConfig {
    pub bins: usize,
    pub span_in_sigmas: f64,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            bins: 4096,
            span_in_sigmas: 6.0,
        }
    }
}

/// Delay axis: `tau_points` samples; the range defaults to +-5 coherence
/// times (extended past the deepest reflector for A-scans).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ScanConfig {
    pub tau_points: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau_min: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tau_max: Option<f64>,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            tau_points: 1001,
            tau_min: None,
            tau_max: None,
        }
    }
}

/// Sample arm: source power and the reflector stack.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SampleConfig {
    pub i_s0: f64,
    pub reflectors: Vec<ReflectorConfig>,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig {
            i_s0: 1.0,
            reflectors: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReflectorConfig {
    pub depth: f64,
    pub reflectivity: f64,
}

/// Noise-report inputs: mirror query, Monte-Carlo controls, and the
/// Kerr-arm settings of the detector model.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct NoiseConfig {
    pub mass: f64,
    pub duration: f64,
    pub n_mean: f64,
    pub n_samples: usize,
    pub seed: u64,
    pub bounces: u32,
    pub mu: f64,
    pub kerr: KerrConfig,
}

impl Default for NoiseConfig {
    fn default() -> Self {
        NoiseConfig {
            mass: 1.0,
            duration: 1.0,
            n_mean: 10.0,
            n_samples: 100_000,
            seed: 42,
            bounces: 1,
            mu: std::f64::consts::FRAC_PI_2,
            kerr: KerrConfig::default(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields, default)]
pub struct KerrConfig {
    pub z1: f64,
    pub z2: f64,
    pub c1: f64,
    pub c2: f64,
}

/// Output paths; `--out` takes precedence and is never embedded.
#[derive(Debug, Clone, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields, default)]
pub struct OutputConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub csv: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub json: Option<String>,
}

impl RunConfig {
    /// Parses strict TOML; the error message keeps the parser's
    /// line/column markers.
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(format!("config parse failure: {e}")))
    }

    /// The resolved configuration as TOML, as embedded in sidecars.
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("resolved config serializes")
    }

    pub fn units(&self) -> Units {
        Units::from(self.units)
    }
}
