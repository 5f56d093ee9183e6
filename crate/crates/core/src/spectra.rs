//! Gaussian spectral amplitudes, frequency-grid quadrature, and polychromatic
//! single-photon wavepackets.
//!
//! The source model is the normalized Gaussian amplitude
//!
//! ```text
//! eps(w) = (2 pi sigma^2)^(-1/4) * exp(-((w - w0) / (2 sigma))^2) * exp(-i w t0)
//! ```
//!
//! so |eps(w)|^2 is the normal density with mean w0 and standard deviation
//! sigma: the integral of |eps|^2 over all frequencies is 1. Here sigma is
//! strictly the Gaussian scale parameter, never a FWHM; conversions go
//! through [`fwhm_to_sigma`] / [`sigma_to_fwhm`] (factor 2 sqrt(2 ln 2)).
//!
//! A [`FrequencyGrid`] discretizes the continuum with uniform trapezoidal
//! quadrature and renormalizes its weights so that sum_k w_k |eps(w_k)|^2 is
//! exactly 1; the pre-renormalization defect (span truncation plus quadrature
//! error) is kept for inspection. One grid bin becomes one field mode, which
//! is what lets wavepackets live in a `fock` basis.

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{ModeBasis, StateVector};

/// FWHM of a Gaussian = 2 sqrt(2 ln 2) * sigma.
const FWHM_PER_SIGMA: f64 = 2.354_820_045_030_949_3;

/// Gaussian source description: center frequency, scale parameter, and
/// emission time (all angular-frequency / seconds in the active unit system).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralProfile {
    omega0: f64,
    sigma: f64,
    t0: f64,
}

impl SpectralProfile {
    pub fn new(omega0: f64, sigma: f64) -> Result<Self> {
        Self::with_emission_time(omega0, sigma, 0.0)
    }

    pub fn with_emission_time(omega0: f64, sigma: f64, t0: f64) -> Result<Self> {
        if !(omega0 > 0.0) || !omega0.is_finite() {
            return Err(Error::NonPositiveFrequency(omega0));
        }
        if !(sigma > 0.0) || !sigma.is_finite() {
            return Err(Error::InvalidParameter {
                name: "sigma",
                value: sigma,
            });
        }
        if !t0.is_finite() {
            return Err(Error::InvalidParameter {
                name: "t0",
                value: t0,
            });
        }
        Ok(SpectralProfile { omega0, sigma, t0 })
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }
}

/// Converts a full width at half maximum to the Gaussian scale parameter.
pub fn fwhm_to_sigma(fwhm: f64) -> f64 {
    fwhm / FWHM_PER_SIGMA
}

/// Converts the Gaussian scale parameter to a full width at half maximum.
pub fn sigma_to_fwhm(sigma: f64) -> f64 {
    sigma * FWHM_PER_SIGMA
}

/// Spectral amplitude eps(w); |eps|^2 is the unit-mass Gaussian density.
/// Meaningful for w > 0 (the physical domain of the grid builders).
pub fn gaussian_amplitude(profile: &SpectralProfile, omega: f64) -> Complex64 {
    let s = profile.sigma;
    let peak = (2.0 * std::f64::consts::PI * s * s).powf(-0.25);
    let arg = (omega - profile.omega0) / (2.0 * s);
    let modulus = peak * (-arg * arg).exp();
    let phase = Complex64::new(0.0, -omega * profile.t0).exp();
    modulus * phase
}

/// Uniform quadrature grid over a band of frequencies.
///
/// `weights` are trapezoidal weights rescaled so that
/// sum_k weights[k] * |eps(omegas[k])|^2 = 1 for the profile the grid was
/// built from; `normalization_defect` is |1 - sum| before that rescaling.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyGrid {
    omegas: Vec<f64>,
    weights: Vec<f64>,
    normalization_defect: f64,
}

impl FrequencyGrid {
    /// Wraps externally chosen nodes and weights (no renormalization).
    /// Nodes must be strictly increasing and positive, weights positive.
    pub fn from_points(omegas: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if omegas.is_empty() {
            return Err(Error::InvalidSize("grid needs at least one node".into()));
        }
        if omegas.len() != weights.len() {
            return Err(Error::ShapeMismatch {
                expected: format!("{} weights", omegas.len()),
                got: format!("{}", weights.len()),
            });
        }
        for &w in &omegas {
            if !(w > 0.0) || !w.is_finite() {
                return Err(Error::NonPositiveFrequency(w));
            }
        }
        if omegas.windows(2).any(|p| p[1] <= p[0]) {
            return Err(Error::InvalidSize(
                "grid nodes must be strictly increasing".into(),
            ));
        }
        for &w in &weights {
            if !(w > 0.0) || !w.is_finite() {
                return Err(Error::InvalidParameter {
                    name: "weight",
                    value: w,
                });
            }
        }
        Ok(FrequencyGrid {
            omegas,
            weights,
            normalization_defect: 0.0,
        })
    }

    pub fn len(&self) -> usize {
        self.omegas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.omegas.is_empty()
    }

    pub fn omegas(&self) -> &[f64] {
        &self.omegas
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// |1 - sum_k w_k |eps(w_k)|^2| before weight renormalization: the span
    /// truncation plus trapezoid error of the builder.
    pub fn normalization_defect(&self) -> f64 {
        self.normalization_defect
    }

    /// Fock basis with one mode per grid node, frequencies taken verbatim.
    pub fn to_basis(&self, cutoff: usize) -> Result<Arc<ModeBasis>> {
        ModeBasis::shared(self.len(), cutoff, &self.omegas)
    }
}

/// Builds the uniform trapezoid grid on [w0 - k sigma, w0 + k sigma] with
/// weights renormalized against `profile`.
///
/// Requires at least 16 bins, a span of at least 4 sigma (narrower spans
/// clip too much Gaussian mass for the downstream tolerances), and a band
/// that stays at positive frequencies.
pub fn make_grid(profile: &SpectralProfile, bins: usize, span_in_sigmas: f64) -> Result<FrequencyGrid> {
    if bins < 16 {
        return Err(Error::InvalidSize(format!(
            "grid needs at least 16 bins, got {bins}"
        )));
    }
    if !(span_in_sigmas >= 4.0) || !span_in_sigmas.is_finite() {
        return Err(Error::InvalidParameter {
            name: "span_in_sigmas",
            value: span_in_sigmas,
        });
    }
    let half_span = span_in_sigmas * profile.sigma;
    let omega_min = profile.omega0 - half_span;
    if omega_min <= 0.0 {
        return Err(Error::NonPositiveFrequency(omega_min));
    }
    let h = 2.0 * half_span / (bins as f64 - 1.0);
    let omegas: Vec<f64> = (0..bins).map(|i| omega_min + h * i as f64).collect();
    let mut weights: Vec<f64> = vec![h; bins];
    weights[0] = 0.5 * h;
    weights[bins - 1] = 0.5 * h;
    let sum: f64 = omegas
        .iter()
        .zip(&weights)
        .map(|(&w, &wt)| wt * gaussian_amplitude(profile, w).norm_sqr())
        .sum();
    if !(sum > 0.0) {
        return Err(Error::InvalidParameter {
            name: "quadrature mass",
            value: sum,
        });
    }
    let defect = (1.0 - sum).abs();
    for wt in &mut weights {
        *wt /= sum;
    }
    Ok(FrequencyGrid {
        omegas,
        weights,
        normalization_defect: defect,
    })
}

/// A single photon spread over the grid modes: amplitudes
/// c_k = sqrt(w_k) eps(w_k), renormalized to unit total probability.
///
/// This is the one-photon-sector view of [`wavepacket_state`]; it carries no
/// Fock basis, so it scales to thousands of bins where the dense state space
/// could not exist.
#[derive(Debug, Clone)]
pub struct SinglePhotonWavepacket {
    omegas: Vec<f64>,
    amplitudes: Vec<Complex64>,
}

impl SinglePhotonWavepacket {
    pub fn new(profile: &SpectralProfile, grid: &FrequencyGrid) -> Self {
        let raw: Vec<Complex64> = grid
            .omegas
            .iter()
            .zip(&grid.weights)
            .map(|(&w, &wt)| wt.sqrt() * gaussian_amplitude(profile, w))
            .collect();
        let norm = raw.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        let amplitudes = raw.into_iter().map(|c| c / norm).collect();
        SinglePhotonWavepacket {
            omegas: grid.omegas.clone(),
            amplitudes,
        }
    }

    pub fn len(&self) -> usize {
        self.omegas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.omegas.is_empty()
    }

    pub fn omegas(&self) -> &[f64] {
        &self.omegas
    }

    /// Mode amplitudes c_k with sum |c_k|^2 = 1.
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Occupation probabilities |c_k|^2 per mode.
    pub fn occupations(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|c| c.norm_sqr()).collect()
    }
}

/// Dense Fock-space wavepacket sum_k c_k a'_k |0>, normalized.
///
/// `basis` must have one mode per grid node with the grid's frequencies and
/// cutoff >= 1. For wide grids (thousands of bins) use
/// [`SinglePhotonWavepacket`] instead; the dense basis dimension is
/// (cutoff+1)^bins.
pub fn wavepacket_state(
    profile: &SpectralProfile,
    grid: &FrequencyGrid,
    basis: &Arc<ModeBasis>,
) -> Result<StateVector> {
    if basis.mode_count() != grid.len() {
        return Err(Error::ShapeMismatch {
            expected: format!("basis with {} modes", grid.len()),
            got: format!("{} modes", basis.mode_count()),
        });
    }
    if basis.frequencies() != grid.omegas() {
        return Err(Error::BasisMismatch);
    }
    let packet = SinglePhotonWavepacket::new(profile, grid);
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); basis.dim()];
    let mut occ = vec![0usize; basis.mode_count()];
    for (k, &c) in packet.amplitudes().iter().enumerate() {
        occ[k] = 1;
        amplitudes[basis.index_of(&occ)?] = c;
        occ[k] = 0;
    }
    StateVector::from_amplitudes(basis, amplitudes)
}
