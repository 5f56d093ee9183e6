//! Classical Michelson / low-coherence-interferometry reference model.
//!
//! Everything here is classical wave optics: detector intensities from a
//! split-and-recombine interferometer, the autocorrelation of a sampled
//! power spectrum, the closed-form Gaussian degree of coherence, and the
//! power-equivalent-width coherence time. The quantum pipeline in
//! [`crate::interferometer`] is validated against these functions.
//!
//! Conventions:
//! - Spectra live on an angular-frequency grid internally; wavenumber-domain
//!   input is converted on ingestion via k = w/c. For a narrowband source
//!   the positive-frequency restriction costs < 1e-9 of the total power.
//! - The autocorrelation kernel is exp(+i k x); with the x = c tau mapping
//!   a Gaussian source gives g1(tau) = exp(-sigma^2 tau^2 / 2) exp(+i w0 tau),
//!   the same phase convention as the quantum mode sum.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exec;
use crate::spectra::SpectralProfile;
use crate::units::Units;

/// Sampled source power spectrum with quadrature weights.
///
/// Samples are nonnegative; the total power is their quadrature sum.
#[derive(Debug, Clone)]
pub struct PowerSpectrum {
    omegas: Vec<f64>,
    weights: Vec<f64>,
    samples: Vec<f64>,
    total_power: f64,
    units: Units,
}

fn trapezoid_weights(xs: &[f64]) -> Vec<f64> {
    let n = xs.len();
    let mut w = vec![0.0; n];
    for i in 0..n - 1 {
        let h = 0.5 * (xs[i + 1] - xs[i]);
        w[i] += h;
        w[i + 1] += h;
    }
    w
}

impl PowerSpectrum {
    /// Builds a spectrum from angular-frequency samples.
    pub fn from_omega_samples(omegas: Vec<f64>, samples: Vec<f64>, units: Units) -> Result<Self> {
        if omegas.len() < 2 {
            return Err(Error::InvalidSize(format!(
                "power spectrum needs at least 2 samples, got {}",
                omegas.len()
            )));
        }
        if omegas.len() != samples.len() {
            return Err(Error::ShapeMismatch {
                expected: format!("{} samples", omegas.len()),
                got: format!("{}", samples.len()),
            });
        }
        for pair in omegas.windows(2) {
            if !(pair[1] > pair[0]) {
                return Err(Error::InvalidSize(
                    "spectrum grid must be strictly increasing".into(),
                ));
            }
        }
        if let Some(&w) = omegas.iter().find(|&&w| !(w > 0.0) || !w.is_finite()) {
            return Err(Error::NonPositiveFrequency(w));
        }
        if let Some(&s) = samples.iter().find(|&&s| !(s >= 0.0) || !s.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "spectral sample",
                value: s,
            });
        }
        let weights = trapezoid_weights(&omegas);
        let total_power = omegas
            .iter()
            .zip(&weights)
            .zip(&samples)
            .map(|((_, &w), &s)| w * s)
            .sum();
        Ok(PowerSpectrum {
            omegas,
            weights,
            samples,
            total_power,
            units,
        })
    }

    /// Builds a spectrum from wavenumber samples, converting k -> w = c k.
    ///
    /// Spectral density transforms with the measure: I_w = I_k / c, so the
    /// total power is preserved exactly.
    pub fn from_wavenumber_samples(ks: Vec<f64>, samples: Vec<f64>, units: Units) -> Result<Self> {
        let c = units.c;
        let omegas: Vec<f64> = ks.iter().map(|&k| c * k).collect();
        let scaled: Vec<f64> = samples.iter().map(|&s| s / c).collect();
        Self::from_omega_samples(omegas, scaled, units)
    }

    /// Gaussian line of nominal total power `i_s0`, sampled on a uniform
    /// grid of `bins` points spanning `span_in_sigmas` either side of the
    /// center. The quadrature sum reproduces `i_s0` up to the truncated
    /// tail mass (2.6e-12 of the total at span 7).
    pub fn gaussian(
        profile: &SpectralProfile,
        i_s0: f64,
        bins: usize,
        span_in_sigmas: f64,
        units: Units,
    ) -> Result<Self> {
        if bins < 2 {
            return Err(Error::InvalidSize(format!(
                "gaussian spectrum needs at least 2 bins, got {bins}"
            )));
        }
        if !(i_s0 >= 0.0) || !i_s0.is_finite() {
            return Err(Error::InvalidParameter {
                name: "i_s0",
                value: i_s0,
            });
        }
        let (w0, sigma) = (profile.omega0(), profile.sigma());
        let lo = w0 - span_in_sigmas * sigma;
        if !(lo > 0.0) {
            return Err(Error::NonPositiveFrequency(lo));
        }
        let h = 2.0 * span_in_sigmas * sigma / (bins - 1) as f64;
        let peak = i_s0 / (sigma * (2.0 * std::f64::consts::PI).sqrt());
        let omegas: Vec<f64> = (0..bins).map(|i| lo + h * i as f64).collect();
        let samples: Vec<f64> = omegas
            .iter()
            .map(|&w| {
                let z = (w - w0) / sigma;
                peak * (-0.5 * z * z).exp()
            })
            .collect();
        Self::from_omega_samples(omegas, samples, units)
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

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    /// Quadrature sum of the sampled spectrum.
    pub fn total_power(&self) -> f64 {
        self.total_power
    }

    pub fn units(&self) -> &Units {
        &self.units
    }
}

/// Detector intensity of a monochromatic Michelson at phase mismatch theta:
/// (1/2) i_s0 (1 + cos theta). The complementary port carries the rest.
pub fn monochromatic_intensity(i_s0: f64, theta: f64) -> f64 {
    debug_assert!(i_s0 >= 0.0);
    0.5 * i_s0 * (1.0 + theta.cos())
}

/// Detector intensity of a polychromatic Michelson at path mismatch x,
/// by quadrature: (1/2) integral I(w) (1 + cos(w x / c)) dw.
pub fn polychromatic_intensity(spectrum: &PowerSpectrum, x: f64) -> f64 {
    let inv_c = 1.0 / spectrum.units.c;
    let mut acc = 0.0;
    for i in 0..spectrum.len() {
        let phase = spectrum.omegas[i] * x * inv_c;
        acc += spectrum.weights[i] * spectrum.samples[i] * (1.0 + phase.cos());
    }
    0.5 * acc
}

/// Unnormalized autocorrelation of the source: integral I(k) exp(+i k x) dk,
/// evaluated on the sampled grid with k = w/c.
pub fn autocorrelation(spectrum: &PowerSpectrum, x: f64) -> Complex64 {
    let inv_c = 1.0 / spectrum.units.c;
    let mut re = 0.0;
    let mut im = 0.0;
    for i in 0..spectrum.len() {
        let (s, c) = (spectrum.omegas[i] * x * inv_c).sin_cos();
        let a = spectrum.weights[i] * spectrum.samples[i];
        re += a * c;
        im += a * s;
    }
    Complex64::new(re, im)
}

/// Complex degree of coherence: the autocorrelation normalized by the total
/// power, so |g| <= 1 and g(0) = 1.
pub fn degree_of_coherence(spectrum: &PowerSpectrum, x: f64) -> Complex64 {
    autocorrelation(spectrum, x) / spectrum.total_power
}

/// Closed-form degree of coherence of a Gaussian line:
/// g1(tau) = exp(-sigma^2 tau^2 / 2) exp(+i omega0 tau).
pub fn gaussian_g1(tau: f64, omega0: f64, sigma: f64) -> Complex64 {
    debug_assert!(sigma > 0.0);
    let envelope = (-0.5 * sigma * sigma * tau * tau).exp();
    let (s, c) = (omega0 * tau).sin_cos();
    Complex64::new(envelope * c, envelope * s)
}

/// Power-equivalent-width coherence time from sampled degree of coherence:
/// t_c = pi^(-1/2) integral |g1(tau)|^2 dtau.
///
/// The sample range must capture the whole correlation: both endpoint
/// values of |g1|^2 must not exceed 1e-6, otherwise the truncated tail
/// would silently bias the width.
pub fn coherence_time(taus: &[f64], g1: &[Complex64]) -> Result<f64> {
    if taus.len() < 2 {
        return Err(Error::InvalidSize(format!(
            "coherence time needs at least 2 samples, got {}",
            taus.len()
        )));
    }
    if taus.len() != g1.len() {
        return Err(Error::ShapeMismatch {
            expected: format!("{} correlation samples", taus.len()),
            got: format!("{}", g1.len()),
        });
    }
    for pair in taus.windows(2) {
        if !(pair[1] > pair[0]) {
            return Err(Error::InvalidSize(
                "tau grid must be strictly increasing".into(),
            ));
        }
    }
    let first = g1[0].norm_sqr();
    let last = g1[g1.len() - 1].norm_sqr();
    if first > 1e-6 || last > 1e-6 {
        return Err(Error::InsufficientCoverage(format!(
            "endpoint |g1|^2 of {first:.3e} / {last:.3e} exceeds 1e-6; widen the tau range"
        )));
    }
    let weights = trapezoid_weights(taus);
    let integral: f64 = weights
        .iter()
        .zip(g1)
        .map(|(&w, g)| w * g.norm_sqr())
        .sum();
    Ok(integral / std::f64::consts::PI.sqrt())
}

/// Coherence length c * t_c (meters in SI mode).
pub fn coherence_length(t_c: f64, units: &Units) -> f64 {
    debug_assert!(t_c > 0.0);
    units.c * t_c
}

/// A sample-arm reflector: optical depth and power reflectivity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reflector {
    pub depth: f64,
    pub reflectivity: f64,
}

/// Detector fringe record over a delay axis.
#[derive(Debug, Clone)]
pub struct Interferogram {
    taus: Vec<f64>,
    intensities: Vec<f64>,
    g1: Option<Vec<Complex64>>,
}

impl Interferogram {
    /// Validates the axis (strictly increasing) and array lengths.
    pub fn new(
        taus: Vec<f64>,
        intensities: Vec<f64>,
        g1: Option<Vec<Complex64>>,
    ) -> Result<Self> {
        if taus.len() != intensities.len() {
            return Err(Error::ShapeMismatch {
                expected: format!("{} intensity samples", taus.len()),
                got: format!("{}", intensities.len()),
            });
        }
        if let Some(g) = &g1 {
            if g.len() != taus.len() {
                return Err(Error::ShapeMismatch {
                    expected: format!("{} correlation samples", taus.len()),
                    got: format!("{}", g.len()),
                });
            }
        }
        for pair in taus.windows(2) {
            if !(pair[1] > pair[0]) {
                return Err(Error::InvalidSize(
                    "interferogram axis must be strictly increasing".into(),
                ));
            }
        }
        Ok(Interferogram {
            taus,
            intensities,
            g1,
        })
    }

    pub fn len(&self) -> usize {
        self.taus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.taus.is_empty()
    }

    pub fn taus(&self) -> &[f64] {
        &self.taus
    }

    pub fn intensities(&self) -> &[f64] {
        &self.intensities
    }

    pub fn g1(&self) -> Option<&[Complex64]> {
        self.g1.as_deref()
    }

    /// CSV rendering: header `tau,intensity[,g1_re,g1_im]`, shortest
    /// round-trip decimal per value.
    pub fn to_csv_string(&self) -> String {
        let mut out = String::new();
        match &self.g1 {
            None => {
                out.push_str("tau,intensity\n");
                for i in 0..self.len() {
                    out.push_str(&format!("{},{}\n", self.taus[i], self.intensities[i]));
                }
            }
            Some(g) => {
                out.push_str("tau,intensity,g1_re,g1_im\n");
                for i in 0..self.len() {
                    out.push_str(&format!(
                        "{},{},{},{}\n",
                        self.taus[i], self.intensities[i], g[i].re, g[i].im
                    ));
                }
            }
        }
        out
    }
}

fn check_reflectors(reflectors: &[Reflector]) -> Result<()> {
    if reflectors.is_empty() {
        return Err(Error::InvalidSize("need at least one reflector".into()));
    }
    for r in reflectors {
        if !(0.0..=1.0).contains(&r.reflectivity) || !r.reflectivity.is_finite() {
            return Err(Error::InvalidParameter {
                name: "reflectivity",
                value: r.reflectivity,
            });
        }
        if !(r.depth >= 0.0) || !r.depth.is_finite() {
            return Err(Error::InvalidParameter {
                name: "depth",
                value: r.depth,
            });
        }
    }
    Ok(())
}

/// Composite coherence term of a layered sample:
/// sum_j sqrt(R_j) g1(tau - 2 d_j / c).
fn layered_coherence(
    reflectors: &[Reflector],
    profile: &SpectralProfile,
    units: &Units,
    tau: f64,
) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for r in reflectors {
        let delay = 2.0 * r.depth / units.c;
        acc += r.reflectivity.sqrt() * gaussian_g1(tau - delay, profile.omega0(), profile.sigma());
    }
    acc
}

/// Detector fringe of a Gaussian source reflecting off layered structure:
///
/// ```text
/// I_D(tau) = (i_s0/4) (1 + sum_j R_j)
///          + (i_s0/2) sum_j sqrt(R_j) Re g1(tau - 2 d_j / c)
/// ```
///
/// A single reflector at depth 0 with R = 1 reduces this to the balanced
/// two-beam fringe (1/4)(I_r + I_s) + (1/2) sqrt(I_r I_s) Re g1 with
/// I_r = I_s = i_s0. The emitted record keeps the complex composite
/// coherence alongside the intensity.
pub fn layered_sample_interferogram(
    reflectors: &[Reflector],
    profile: &SpectralProfile,
    taus: &[f64],
    i_s0: f64,
    units: &Units,
) -> Result<Interferogram> {
    check_reflectors(reflectors)?;
    if !(i_s0 >= 0.0) || !i_s0.is_finite() {
        return Err(Error::InvalidParameter {
            name: "i_s0",
            value: i_s0,
        });
    }
    let r_sum: f64 = reflectors.iter().map(|r| r.reflectivity).sum();
    let dc = 0.25 * i_s0 * (1.0 + r_sum);
    let composite: Vec<Complex64> = exec::map_indexed(taus.len(), |i| {
        layered_coherence(reflectors, profile, units, taus[i])
    });
    let intensities: Vec<f64> = composite
        .iter()
        .map(|g| dc + 0.5 * i_s0 * g.re)
        .collect();
    Interferogram::new(taus.to_vec(), intensities, Some(composite))
}

/// Analytic fringe envelope of the layered sample:
/// (i_s0/2) |sum_j sqrt(R_j) g1(tau - 2 d_j / c)|.
pub fn layered_envelope(
    reflectors: &[Reflector],
    profile: &SpectralProfile,
    taus: &[f64],
    i_s0: f64,
    units: &Units,
) -> Result<Vec<f64>> {
    check_reflectors(reflectors)?;
    Ok(exec::map_indexed(taus.len(), |i| {
        0.5 * i_s0 * layered_coherence(reflectors, profile, units, taus[i]).norm()
    }))
}
