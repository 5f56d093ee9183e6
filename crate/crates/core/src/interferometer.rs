//! Quantum Michelson model: beam-splitter transformations, field operators,
//! detection rates, fringes, and the first-order correlation functions.
//!
//! The beam splitter maps input mode operators (a1, a2) to outputs
//!
//! ```text
//! b3 = 2^(-1/2) e^(i delta) (a1 + e^(i mu) a2)
//! b4 = 2^(-1/2) e^(i delta) (a2 - e^(-i mu) a1)
//! ```
//!
//! a unitary for every (mu, delta); the default mu = pi/2, delta = 0 is the
//! symmetric convention b3 = (a1 + i a2)/sqrt(2), b4 = (i a1 + a2)/sqrt(2).
//!
//! Detection follows the absorbing-detector rule rate = Tr[rho E- E+] with
//! E+ = K a (all dimensionful prefactors folded into the scale K). The
//! multimode field at time t is the mode sum
//!
//! ```text
//! E+(t) = sum_k s_k a_k exp(+i w_k t)
//! ```
//!
//! with per-mode scales s_k defaulting to 1. The sign in the exponent fixes
//! the crate-wide phase convention: g1(tau) of a wave packet centered on w0
//! rotates as exp(+i w0 tau), matching the classical autocorrelation kernel
//! in [`crate::classical`]. Time-averaging the autocorrelation
//! Tr[rho E-(t) E+(t+tau)] kills every cross-frequency term, leaving the
//! mode-sum collapse
//!
//! ```text
//! g1(tau) = sum_k s_k^2 <n_k> exp(+i w_k tau) / sum_k s_k^2 <n_k>
//! ```
//!
//! which is what [`quantum_g1`] evaluates; [`quantum_correlation`] keeps the
//! full two-time trace for cross-checking the collapse on small bases.

use std::sync::Arc;

use num_complex::Complex64;

use crate::density::DensityOperator;
use crate::error::{Error, Result};
use crate::exec;
use crate::fock::{annihilation_op, LinearOperator, ModeBasis};
use crate::spectra::SinglePhotonWavepacket;

/// Agreement demanded between closed-form and operator-pipeline fringes.
const ROUTE_AGREEMENT: f64 = 1e-12;

/// Beam-splitter phase convention (mu: relative, delta: overall).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamSplitterConvention {
    pub mu: f64,
    pub delta: f64,
}

impl Default for BeamSplitterConvention {
    /// Symmetric convention: i on reflection, no overall phase.
    fn default() -> Self {
        BeamSplitterConvention {
            mu: std::f64::consts::FRAC_PI_2,
            delta: 0.0,
        }
    }
}

impl BeamSplitterConvention {
    /// Rows give (b3, b4) in terms of columns (a1, a2).
    pub fn mixing_matrix(&self) -> [[Complex64; 2]; 2] {
        let g = Complex64::new(0.0, self.delta).exp() * std::f64::consts::FRAC_1_SQRT_2;
        let e_mu = Complex64::new(0.0, self.mu).exp();
        [[g, g * e_mu], [-g * e_mu.conj(), g]]
    }

    /// Largest entry of |U^H U - I|; zero for an exact unitary.
    pub fn unitarity_defect(&self) -> f64 {
        let u = self.mixing_matrix();
        let mut worst = 0.0_f64;
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..2 {
                    acc += u[k][i].conj() * u[k][j];
                }
                let expect = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((acc - expect).norm());
            }
        }
        worst
    }
}

/// Output-port annihilation operators of a beam splitter.
#[derive(Debug, Clone)]
pub struct BeamSplitterOps {
    pub b3: LinearOperator,
    pub b4: LinearOperator,
}

/// Builds the output-port operators on a 2-mode basis.
pub fn beam_splitter_ops(
    convention: &BeamSplitterConvention,
    basis: &Arc<ModeBasis>,
) -> Result<BeamSplitterOps> {
    if basis.mode_count() != 2 {
        return Err(Error::InvalidSize(format!(
            "beam splitter needs a 2-mode basis, got {} modes",
            basis.mode_count()
        )));
    }
    let u = convention.mixing_matrix();
    let a1 = annihilation_op(basis, 0)?;
    let a2 = annihilation_op(basis, 1)?;
    let b3 = a1.scale(u[0][0]).add(&a2.scale(u[0][1]))?;
    let b4 = a1.scale(u[1][0]).add(&a2.scale(u[1][1]))?;
    Ok(BeamSplitterOps { b3, b4 })
}

/// Output amplitudes of one photon entering as alpha|1>_1 + beta|1>_2.
pub fn split_single_photon(
    convention: &BeamSplitterConvention,
    alpha: Complex64,
    beta: Complex64,
) -> (Complex64, Complex64) {
    let u = convention.mixing_matrix();
    (
        u[0][0] * alpha + u[0][1] * beta,
        u[1][0] * alpha + u[1][1] * beta,
    )
}

/// Photon-absorbing field operator and its adjoint, E+ = scale * (mode sum).
#[derive(Debug, Clone)]
pub struct FieldOperatorPair {
    e_plus: LinearOperator,
    e_minus: LinearOperator,
    scale: f64,
}

impl FieldOperatorPair {
    /// Wraps an absorbing operator; the emitting part is its exact adjoint.
    pub fn from_op(e_plus: LinearOperator, scale: f64) -> Self {
        let e_minus = e_plus.adjoint();
        FieldOperatorPair {
            e_plus,
            e_minus,
            scale,
        }
    }

    pub fn e_plus(&self) -> &LinearOperator {
        &self.e_plus
    }

    pub fn e_minus(&self) -> &LinearOperator {
        &self.e_minus
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// E+ picks up exp(i phase); E- the conjugate. Scale is unchanged.
    pub fn with_phase(&self, phase: f64) -> Self {
        let rot = Complex64::new(0.0, phase).exp();
        FieldOperatorPair {
            e_plus: self.e_plus.scale(rot),
            e_minus: self.e_minus.scale(rot.conj()),
            scale: self.scale,
        }
    }

    /// Superposes two fields reaching the same detector.
    pub fn add(&self, other: &FieldOperatorPair) -> Result<Self> {
        Ok(FieldOperatorPair {
            e_plus: self.e_plus.add(&other.e_plus)?,
            e_minus: self.e_minus.add(&other.e_minus)?,
            scale: self.scale,
        })
    }

    /// Hermitian total field E = E+ + E-.
    pub fn total_field(&self) -> Result<LinearOperator> {
        self.e_plus.add(&self.e_minus)
    }
}

/// Single-mode field pair E+ = scale * a_mode.
pub fn field_op_plus(
    basis: &Arc<ModeBasis>,
    mode: usize,
    scale: f64,
) -> Result<FieldOperatorPair> {
    let a = annihilation_op(basis, mode)?;
    Ok(FieldOperatorPair::from_op(
        a.scale(Complex64::new(scale, 0.0)),
        scale,
    ))
}

/// Multimode field at time t: E+(t) = sum_k scales[k] a_k exp(+i w_k t).
pub fn field_plus_at_time(
    basis: &Arc<ModeBasis>,
    scales: &[f64],
    t: f64,
) -> Result<LinearOperator> {
    if scales.len() != basis.mode_count() {
        return Err(Error::ShapeMismatch {
            expected: format!("{} per-mode scales", basis.mode_count()),
            got: format!("{}", scales.len()),
        });
    }
    let mut acc: Option<LinearOperator> = None;
    for k in 0..basis.mode_count() {
        let phase = Complex64::new(0.0, basis.frequency(k) * t).exp();
        let term = annihilation_op(basis, k)?.scale(phase * scales[k]);
        acc = Some(match acc {
            None => term,
            Some(sum) => sum.add(&term)?,
        });
    }
    Ok(acc.expect("basis has at least one mode"))
}

/// Detector transition rate Tr[rho E- E+].
///
/// The trace of a positive operator against a density operator; the result
/// is real and nonnegative up to rounding, anything worse is reported as a
/// failed cross-check.
pub fn detection_rate(rho: &DensityOperator, fields: &FieldOperatorPair) -> Result<f64> {
    let product = fields.e_minus.compose(&fields.e_plus)?;
    let value = rho.expectation(&product)?;
    let magnitude = linmag(&product, rho);
    if value.im.abs() > 1e-10 * magnitude.max(1.0) {
        return Err(Error::CrossCheckFailed(format!(
            "detection rate has imaginary part {:.3e}",
            value.im
        )));
    }
    if value.re < -1e-10 * magnitude.max(1.0) {
        return Err(Error::CrossCheckFailed(format!(
            "detection rate is negative: {:.3e}",
            value.re
        )));
    }
    Ok(value.re)
}

fn linmag(op: &LinearOperator, _rho: &DensityOperator) -> f64 {
    crate::linalg::max_abs_entry(op.matrix())
}

/// Michelson single-photon fringe computed by two independent routes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MichelsonFringe {
    /// d_scale * (1 + cos(k * delta_l)).
    pub closed_form: f64,
    /// Detection rate of the split photon with per-arm phases, via the
    /// operator pipeline.
    pub operator_rate: f64,
}

impl MichelsonFringe {
    pub fn value(&self) -> f64 {
        self.closed_form
    }
}

/// Detected intensity of a single photon returning from arms of length
/// difference `delta_l`, wavenumber `k`, overall scale `d_scale`.
///
/// Evaluates the closed form d(1 + cos(k dl)) and, independently, the
/// operator pipeline (split photon with arm phases exp(i k r), detection
/// rate of the recombined field); errs if the two disagree beyond 1e-12.
pub fn michelson_single_photon_g1(k: f64, delta_l: f64, d_scale: f64) -> Result<MichelsonFringe> {
    if !(k > 0.0) || !k.is_finite() {
        return Err(Error::InvalidParameter { name: "k", value: k });
    }
    if !(d_scale > 0.0) || !d_scale.is_finite() {
        return Err(Error::InvalidParameter {
            name: "d_scale",
            value: d_scale,
        });
    }
    let closed_form = d_scale * (1.0 + (k * delta_l).cos());

    // Operator route: balanced one-photon state, reference arm r = 0 and
    // sample arm r' = delta_l imprint phases exp(i k r); the detector sees
    // the sum of both arm fields with scale sqrt(d).
    let basis = ModeBasis::shared(2, 1, &[1.0, 1.0])?;
    let i10 = basis.index_of(&[1, 0])?;
    let i01 = basis.index_of(&[0, 1])?;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut amps = vec![Complex64::new(0.0, 0.0); basis.dim()];
    amps[i10] = s * Complex64::new(0.0, k * 0.0).exp();
    amps[i01] = s * Complex64::new(0.0, k * delta_l).exp();
    let state = crate::fock::StateVector::from_amplitudes(&basis, amps)?;
    let rho = DensityOperator::pure(&state)?;
    let k_field = d_scale.sqrt();
    let fields = field_op_plus(&basis, 0, k_field)?.add(&field_op_plus(&basis, 1, k_field)?)?;
    let operator_rate = detection_rate(&rho, &fields)?;

    if (closed_form - operator_rate).abs() > ROUTE_AGREEMENT * d_scale.max(1.0) {
        return Err(Error::CrossCheckFailed(format!(
            "fringe routes disagree: closed {closed_form:.15e} vs operator {operator_rate:.15e}"
        )));
    }
    Ok(MichelsonFringe {
        closed_form,
        operator_rate,
    })
}

/// Two-time first-order correlation G1(t, t+tau) = Tr[rho E-(t) E+(t+tau)]
/// with per-mode field scales.
pub fn quantum_correlation(
    rho: &DensityOperator,
    scales: &[f64],
    t: f64,
    tau: f64,
) -> Result<Complex64> {
    let basis = rho.basis();
    let e_plus_late = field_plus_at_time(basis, scales, t + tau)?;
    let e_minus_early = field_plus_at_time(basis, scales, t)?.adjoint();
    rho.expectation(&e_minus_early.compose(&e_plus_late)?)
}

/// Mode-sum first-order coherence from populations:
/// sum_k p_k exp(+i w_k tau) / sum_k p_k.
///
/// Exactly 1 at tau = 0; modulus <= 1 up to rounding everywhere.
pub fn mode_sum_g1(omegas: &[f64], populations: &[f64], tau: f64) -> Complex64 {
    debug_assert_eq!(omegas.len(), populations.len());
    let mut re = 0.0_f64;
    let mut im = 0.0_f64;
    let mut total = 0.0_f64;
    for (&w, &p) in omegas.iter().zip(populations) {
        let (s, c) = (w * tau).sin_cos();
        re += p * c;
        im += p * s;
        total += p;
    }
    Complex64::new(re / total, im / total)
}

/// Normalized first-order coherence of a single-photon wave packet.
pub fn quantum_g1(packet: &SinglePhotonWavepacket, tau: f64) -> Complex64 {
    mode_sum_g1(packet.omegas(), &packet.occupations(), tau)
}

/// [`quantum_g1`] over a tau grid; parallel under the `parallel` feature,
/// bitwise identical either way.
pub fn quantum_g1_sweep(packet: &SinglePhotonWavepacket, taus: &[f64]) -> Vec<Complex64> {
    let populations = packet.occupations();
    let omegas = packet.omegas();
    exec::map_indexed(taus.len(), |i| mode_sum_g1(omegas, &populations, taus[i]))
}

/// Normalized first-order coherence from a dense density operator: the
/// populations are the per-mode number expectations Tr[rho n_k].
pub fn quantum_g1_from_density(rho: &DensityOperator, tau: f64) -> Result<Complex64> {
    let basis = rho.basis();
    let mut populations = vec![0.0_f64; basis.mode_count()];
    for i in 0..basis.dim() {
        let p = rho.element(i, i).re;
        for k in 0..basis.mode_count() {
            populations[k] += p * basis.occupation(i, k) as f64;
        }
    }
    let total: f64 = populations.iter().sum();
    if !(total > 0.0) {
        return Err(Error::InvalidParameter {
            name: "total photon number",
            value: total,
        });
    }
    Ok(mode_sum_g1(basis.frequencies(), &populations, tau))
}

/// Detection rates over detector phases: rate(theta) for the field
/// K (a1 + exp(i theta) a2) against a two-mode density operator.
pub fn single_photon_fringe(
    rho: &DensityOperator,
    k_scale: f64,
    thetas: &[f64],
) -> Result<Vec<f64>> {
    let basis = rho.basis();
    let arm1 = field_op_plus(basis, 0, k_scale)?;
    let arm2 = field_op_plus(basis, 1, k_scale)?;
    thetas
        .iter()
        .map(|&theta| detection_rate(rho, &arm1.add(&arm2.with_phase(theta))?))
        .collect()
}

/// Fringe visibility (Imax - Imin) / (Imax + Imin).
///
/// Samples must cover at least one full fringe period for the extrema to be
/// meaningful (caller's contract).
pub fn visibility(samples: &[f64]) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::InvalidSize("visibility needs samples".into()));
    }
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &s in samples {
        if !s.is_finite() {
            return Err(Error::InvalidParameter {
                name: "fringe sample",
                value: s,
            });
        }
        lo = lo.min(s);
        hi = hi.max(s);
    }
    let denom = hi + lo;
    if denom <= 0.0 {
        return Err(Error::FlatFringe);
    }
    Ok((hi - lo) / denom)
}
