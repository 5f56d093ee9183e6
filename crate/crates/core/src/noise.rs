//! Quantum noise models: the standard quantum limit for mirror position,
//! the vacuum-port momentum-difference operator, a Kerr-phase detector
//! model, and photon-count statistics sampling.
//!
//! The momentum-difference operator comes in two algebraically equal forms,
//! one in output-port operators and one in input-mode operators:
//!
//! ```text
//! p = (2 B hbar w / c) (b4' b4 - b3' b3)
//!   = -(2 B hbar w / c) (exp(+i mu) a1' a2 + exp(-i mu) a2' a1)
//! ```
//!
//! Both are constructed and compared on every call; a disagreement beyond
//! 1e-12 is a failed cross-check, not a recoverable condition.
//!
//! The Kerr detector model dresses each arm with an intensity-dependent
//! phase before recombination:
//!
//! ```text
//! d = 2^(-1/2) [exp(i k Z1 + i C1 n1) b1 + exp(i k Z2 + i C2 n2) b2]
//! e = 2^(-1/2) [exp(i k Z1 + i C1 n1) b1 - exp(i k Z2 + i C2 n2) b2]
//! ```
//!
//! The exponentials are diagonal in the occupation basis and are computed
//! exactly entry by entry. Port statistics are reported as combined
//! variances only; the model does not attribute noise to separate physical
//! mechanisms.

use std::sync::Arc;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Geometric, Poisson};

use crate::density::DensityOperator;
use crate::error::{Error, Result};
use crate::exec;
use crate::fock::{annihilation_op, LinearOperator, ModeBasis};
use crate::interferometer::{beam_splitter_ops, BeamSplitterConvention};
use crate::units::Units;

/// Mirror mass and measurement duration for the standard quantum limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqlQuery {
    mass: f64,
    duration: f64,
}

impl SqlQuery {
    pub fn new(mass: f64, duration: f64) -> Result<Self> {
        if !(mass > 0.0) || !mass.is_finite() {
            return Err(Error::InvalidParameter {
                name: "mass",
                value: mass,
            });
        }
        if !(duration > 0.0) || !duration.is_finite() {
            return Err(Error::InvalidParameter {
                name: "duration",
                value: duration,
            });
        }
        Ok(SqlQuery { mass, duration })
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn duration(&self) -> f64 {
        self.duration
    }
}

/// Standard quantum limit on a free mirror's position over the measurement
/// time: (2 hbar tau / m)^(1/2), in meters.
///
/// Dimensional by construction, so it refuses non-SI unit systems.
pub fn sql_displacement(query: &SqlQuery, units: &Units) -> Result<f64> {
    if !units.is_si() {
        return Err(Error::RequiresSiUnits);
    }
    Ok((2.0 * units.hbar * query.duration / query.mass).sqrt())
}

/// Momentum-transfer difference between the interferometer mirrors for a
/// `bounces`-reflection optical path, built in both operator forms and
/// cross-checked entrywise to 1e-12.
pub fn momentum_diff_operator(
    bounces: u32,
    omega: f64,
    mu: f64,
    basis: &Arc<ModeBasis>,
    units: &Units,
) -> Result<LinearOperator> {
    if basis.mode_count() != 2 {
        return Err(Error::InvalidSize(format!(
            "momentum difference needs a 2-mode basis, got {} modes",
            basis.mode_count()
        )));
    }
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(Error::NonPositiveFrequency(omega));
    }
    let g = 2.0 * bounces as f64 * units.hbar * omega / units.c;

    // Input-mode form: -g (exp(+i mu) a1' a2 + exp(-i mu) a2' a1).
    let a1 = annihilation_op(basis, 0)?;
    let a2 = annihilation_op(basis, 1)?;
    let e_mu = Complex64::new(0.0, mu).exp();
    let cross = a1
        .adjoint()
        .compose(&a2)?
        .scale(e_mu)
        .add(&a2.adjoint().compose(&a1)?.scale(e_mu.conj()))?;
    let a_form = cross.scale(Complex64::new(-g, 0.0));

    // Output-port form: g (b4' b4 - b3' b3) with the same relative phase.
    let ports = beam_splitter_ops(&BeamSplitterConvention { mu, delta: 0.0 }, basis)?;
    let n4 = ports.b4.adjoint().compose(&ports.b4)?;
    let n3 = ports.b3.adjoint().compose(&ports.b3)?;
    let b_form = n4.sub(&n3)?.scale(Complex64::new(g, 0.0));

    let gap = a_form.max_abs_diff(&b_form)?;
    if gap > 1e-12 * g.max(1.0) {
        return Err(Error::CrossCheckFailed(format!(
            "momentum-difference forms disagree by {gap:.3e}"
        )));
    }
    Ok(a_form)
}

/// Kerr interferometer inputs: recombination wavenumber, arm lengths, and
/// per-arm intensity-phase coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KerrInterferometerParams {
    k: f64,
    z1: f64,
    z2: f64,
    c1: f64,
    c2: f64,
}

impl KerrInterferometerParams {
    pub fn new(k: f64, z1: f64, z2: f64, c1: f64, c2: f64) -> Result<Self> {
        if !(k > 0.0) || !k.is_finite() {
            return Err(Error::InvalidParameter { name: "k", value: k });
        }
        for (name, z) in [("z1", z1), ("z2", z2)] {
            if !(z >= 0.0) || !z.is_finite() {
                return Err(Error::InvalidParameter { name, value: z });
            }
        }
        for (name, c) in [("c1", c1), ("c2", c2)] {
            if !c.is_finite() {
                return Err(Error::InvalidParameter { name, value: c });
            }
        }
        Ok(KerrInterferometerParams { k, z1, z2, c1, c2 })
    }

    /// Equal Kerr coefficients in both arms, the symmetric default.
    pub fn symmetric(k: f64, z1: f64, z2: f64, c: f64) -> Result<Self> {
        Self::new(k, z1, z2, c, c)
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn z1(&self) -> f64 {
        self.z1
    }

    pub fn z2(&self) -> f64 {
        self.z2
    }

    pub fn c1(&self) -> f64 {
        self.c1
    }

    pub fn c2(&self) -> f64 {
        self.c2
    }
}

/// Diagonal phase operator exp(i (offset + rate * n_mode)).
fn arm_phase_op(basis: &Arc<ModeBasis>, mode: usize, offset: f64, rate: f64) -> LinearOperator {
    let diag: Vec<Complex64> = (0..basis.dim())
        .map(|i| Complex64::new(0.0, offset + rate * basis.occupation(i, mode) as f64).exp())
        .collect();
    LinearOperator::from_diagonal(basis, &diag).expect("diagonal length matches basis dimension")
}

/// Output-port annihilation operators of the Kerr-dressed recombiner.
pub fn kerr_output_ops(
    params: &KerrInterferometerParams,
    basis: &Arc<ModeBasis>,
) -> Result<(LinearOperator, LinearOperator)> {
    if basis.mode_count() != 2 {
        return Err(Error::InvalidSize(format!(
            "Kerr recombiner needs a 2-mode basis, got {} modes",
            basis.mode_count()
        )));
    }
    let b1 = annihilation_op(basis, 0)?;
    let b2 = annihilation_op(basis, 1)?;
    let arm1 = arm_phase_op(basis, 0, params.k * params.z1, params.c1).compose(&b1)?;
    let arm2 = arm_phase_op(basis, 1, params.k * params.z2, params.c2).compose(&b2)?;
    let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let d_op = arm1.add(&arm2)?.scale(s);
    let e_op = arm1.sub(&arm2)?.scale(s);
    Ok((d_op, e_op))
}

/// First and second moments of the two detector-port photon numbers.
///
/// Noise is reported in combined form only: the summed port variance and
/// the variance of the difference channel.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct PortStatistics {
    pub mean_d: f64,
    pub mean_e: f64,
    pub var_d: f64,
    pub var_e: f64,
    pub combined_variance: f64,
    pub difference_variance: f64,
}

/// Photon-number statistics of the Kerr recombiner ports for a state rho.
pub fn detector_counts_and_variance(
    rho: &DensityOperator,
    params: &KerrInterferometerParams,
) -> Result<PortStatistics> {
    let basis = rho.basis();
    let (d_op, e_op) = kerr_output_ops(params, basis)?;
    let n_d = d_op.adjoint().compose(&d_op)?;
    let n_e = e_op.adjoint().compose(&e_op)?;

    let moment = |op: &LinearOperator| -> Result<(f64, f64)> {
        let mean = rho.expectation(op)?.re;
        let second = rho.expectation(&op.compose(op)?)?.re;
        Ok((mean, second - mean * mean))
    };
    let (mean_d, var_d) = moment(&n_d)?;
    let (mean_e, var_e) = moment(&n_e)?;
    let (diff_mean, diff_var) = moment(&n_d.sub(&n_e)?)?;
    debug_assert!((diff_mean - (mean_d - mean_e)).abs() < 1e-9);

    Ok(PortStatistics {
        mean_d,
        mean_e,
        var_d,
        var_e,
        combined_variance: var_d + var_e,
        difference_variance: diff_var,
    })
}

/// Photon-count distribution families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CountDistribution {
    /// Laser light: P(n) = exp(-m) m^n / n!.
    Poisson,
    /// Thermal light: P(n) = m^n / (1+m)^(n+1).
    BoseEinstein,
}

/// A reproducible batch of photon-count draws.
#[derive(Debug, Clone, PartialEq)]
pub struct CountSample {
    distribution: CountDistribution,
    n_mean: f64,
    counts: Vec<u64>,
    seed: u64,
}

impl CountSample {
    pub fn distribution(&self) -> CountDistribution {
        self.distribution
    }

    pub fn n_mean(&self) -> f64 {
        self.n_mean
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn sample_mean(&self) -> f64 {
        let total: u64 = self.counts.iter().sum();
        total as f64 / self.counts.len() as f64
    }

    /// Unbiased sample variance (n - 1 denominator).
    pub fn sample_variance(&self) -> f64 {
        let n = self.counts.len();
        if n < 2 {
            return 0.0;
        }
        let mean = self.sample_mean();
        let ss: f64 = self
            .counts
            .iter()
            .map(|&c| {
                let d = c as f64 - mean;
                d * d
            })
            .sum();
        ss / (n - 1) as f64
    }
}

/// Stateless per-draw seed: each sample index gets its own generator, so
/// any parallel sharding reproduces the serial stream bit for bit.
fn mix_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Draws `n_samples` photon counts with mean `n_mean`, deterministic in
/// `seed` and independent of evaluation order or thread count.
pub fn sample_counts(
    distribution: CountDistribution,
    n_mean: f64,
    n_samples: usize,
    seed: u64,
) -> Result<CountSample> {
    if !(n_mean > 0.0) || !n_mean.is_finite() {
        return Err(Error::InvalidParameter {
            name: "n_mean",
            value: n_mean,
        });
    }
    if n_samples == 0 {
        return Err(Error::InvalidSize("need at least one sample".into()));
    }
    let counts = match distribution {
        CountDistribution::Poisson => {
            let dist = Poisson::new(n_mean).expect("validated mean");
            exec::map_indexed(n_samples, |i| {
                let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, i as u64));
                dist.sample(&mut rng) as u64
            })
        }
        CountDistribution::BoseEinstein => {
            // Counts failures before the first success at p = 1/(1+m),
            // which is exactly the thermal photon-number distribution.
            let dist = Geometric::new(1.0 / (1.0 + n_mean)).expect("validated mean");
            exec::map_indexed(n_samples, |i| {
                let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, i as u64));
                dist.sample(&mut rng)
            })
        }
    };
    Ok(CountSample {
        distribution,
        n_mean,
        counts,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{number_op, StateVector};
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use rand::Rng;

    #[test]
    fn sql_query_guards() {
        assert!(matches!(
            SqlQuery::new(0.0, 1.0),
            Err(Error::InvalidParameter { name: "mass", .. })
        ));
        assert!(matches!(
            SqlQuery::new(1.0, -2.0),
            Err(Error::InvalidParameter { name: "duration", .. })
        ));
    }

    #[test]
    fn sql_value_matches_frozen_oracle() {
        // sqrt(2 * 1.054571817e-34), evaluated independently at 40-digit
        // precision and frozen here.
        let q = SqlQuery::new(1.0, 1.0).unwrap();
        let v = sql_displacement(&q, &Units::si()).unwrap();
        assert_abs_diff_eq!(v, 1.452_289_101_384_431_6e-17, epsilon = 1e-31);
    }

    #[test]
    fn sql_scaling_laws_are_exact() {
        let si = Units::si();
        let base = sql_displacement(&SqlQuery::new(1.0, 1.0).unwrap(), &si).unwrap();
        // Quadrupling the mass halves the limit; quadrupling the time
        // doubles it. Power-of-two scalings are exact in floating point.
        let heavy = sql_displacement(&SqlQuery::new(4.0, 1.0).unwrap(), &si).unwrap();
        assert_eq!(heavy, base / 2.0);
        let slow = sql_displacement(&SqlQuery::new(1.0, 4.0).unwrap(), &si).unwrap();
        assert_eq!(slow, base * 2.0);
    }

    #[test]
    fn sql_rejects_natural_units() {
        let q = SqlQuery::new(1.0, 1.0).unwrap();
        assert!(matches!(
            sql_displacement(&q, &Units::natural()),
            Err(Error::RequiresSiUnits)
        ));
    }

    #[test]
    fn sql_scales_as_sqrt_of_hbar() {
        let q = SqlQuery::new(1.0, 1.0).unwrap();
        let base = sql_displacement(&q, &Units::si()).unwrap();
        let doubled =
            sql_displacement(&q, &Units::si().with_hbar(2.0 * crate::units::HBAR)).unwrap();
        assert_relative_eq!(doubled / base, 2.0_f64.sqrt(), max_relative = 1e-15);
    }

    #[test]
    fn momentum_forms_agree_for_random_phases() {
        let basis = ModeBasis::shared(2, 2, &[1.0, 1.0]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..100 {
            let mu = rng.gen_range(-10.0..10.0);
            let p = momentum_diff_operator(1, 2.0, mu, &basis, &Units::natural()).unwrap();
            assert!(p.hermitian_defect() < 1e-12);
        }
    }

    #[test]
    fn momentum_moments_on_single_photon() {
        let basis = ModeBasis::shared(2, 1, &[1.0, 1.0]).unwrap();
        let u = Units::natural();
        let (bounces, omega, mu) = (3, 2.5, 0.7);
        let p = momentum_diff_operator(bounces, omega, mu, &basis, &u).unwrap();
        let g = 2.0 * bounces as f64 * omega; // hbar = c = 1
        let one = StateVector::basis_state(&basis, &[1, 0]).unwrap();
        // Mean momentum difference vanishes; its fluctuation does not.
        assert_eq!(one.expectation(&p).unwrap(), Complex64::new(0.0, 0.0));
        let p2 = p.compose(&p).unwrap();
        assert_relative_eq!(one.expectation(&p2).unwrap().re, g * g, max_relative = 1e-12);
    }

    #[test]
    fn momentum_requires_two_modes() {
        let basis = ModeBasis::shared(1, 2, &[1.0]).unwrap();
        assert!(matches!(
            momentum_diff_operator(1, 1.0, 0.0, &basis, &Units::natural()),
            Err(Error::InvalidSize(_))
        ));
    }

    #[test]
    fn kerr_params_guards() {
        assert!(matches!(
            KerrInterferometerParams::new(0.0, 1.0, 1.0, 0.0, 0.0),
            Err(Error::InvalidParameter { name: "k", .. })
        ));
        assert!(matches!(
            KerrInterferometerParams::new(1.0, -1.0, 1.0, 0.0, 0.0),
            Err(Error::InvalidParameter { name: "z1", .. })
        ));
        assert!(KerrInterferometerParams::symmetric(1.0, 0.0, 0.0, 0.3).is_ok());
    }

    #[test]
    fn zero_coupling_reduces_to_plain_splitter() {
        let basis = ModeBasis::shared(2, 2, &[1.0, 1.0]).unwrap();
        let params = KerrInterferometerParams::symmetric(1.0, 0.0, 0.0, 0.0).unwrap();
        let (d_op, e_op) = kerr_output_ops(&params, &basis).unwrap();
        let b1 = annihilation_op(&basis, 0).unwrap();
        let b2 = annihilation_op(&basis, 1).unwrap();
        let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let plain_d = b1.add(&b2).unwrap().scale(s);
        let plain_e = b1.sub(&b2).unwrap().scale(s);
        assert!(d_op.max_abs_diff(&plain_d).unwrap() < 1e-15);
        assert!(e_op.max_abs_diff(&plain_e).unwrap() < 1e-15);
    }

    #[test]
    fn symmetric_coupling_depends_only_on_differences() {
        let basis = ModeBasis::shared(2, 2, &[1.0, 1.0]).unwrap();
        let k = 3.0;
        let c = 0.4;
        let (d_a, _) = kerr_output_ops(
            &KerrInterferometerParams::symmetric(k, 1.3, 1.3 + 0.5, c).unwrap(),
            &basis,
        )
        .unwrap();
        let (d_b, _) = kerr_output_ops(
            &KerrInterferometerParams::symmetric(k, 0.0, 0.5, c).unwrap(),
            &basis,
        )
        .unwrap();
        // Same arm-length difference: identical photon-number observables.
        let n_a = d_a.adjoint().compose(&d_a).unwrap();
        let n_b = d_b.adjoint().compose(&d_b).unwrap();
        assert!(n_a.max_abs_diff(&n_b).unwrap() < 1e-12);

        // Cross term carries exp(i k dZ) against the number-difference
        // phase exp(i c (n2 - n1)): rebuild it symbolically and compare.
        let diag: Vec<Complex64> = (0..basis.dim())
            .map(|i| {
                let dn = basis.occupation(i, 1) as f64 - basis.occupation(i, 0) as f64;
                Complex64::new(0.0, c * dn).exp()
            })
            .collect();
        let phase_dn = LinearOperator::from_diagonal(&basis, &diag).unwrap();
        let cross = crate::fock::creation_op(&basis, 0)
            .unwrap()
            .compose(&phase_dn)
            .unwrap()
            .compose(&annihilation_op(&basis, 1).unwrap())
            .unwrap()
            .scale(Complex64::new(0.0, k * 0.5).exp());
        let n1 = number_op(&basis, 0).unwrap();
        let n2 = number_op(&basis, 1).unwrap();
        let symbolic = n1
            .add(&n2)
            .unwrap()
            .add(&cross.add(&cross.adjoint()).unwrap())
            .unwrap()
            .scale(Complex64::new(0.5, 0.0));
        assert!(n_b.max_abs_diff(&symbolic).unwrap() < 1e-12);
    }

    #[test]
    fn kerr_ports_conserve_photon_number() {
        let basis = ModeBasis::shared(2, 3, &[1.0, 1.0]).unwrap();
        let total = number_op(&basis, 0)
            .unwrap()
            .add(&number_op(&basis, 1).unwrap())
            .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for trial in 0..20 {
            let params = KerrInterferometerParams::new(
                rng.gen_range(0.1..5.0),
                rng.gen_range(0.0..3.0),
                rng.gen_range(0.0..3.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            )
            .unwrap();
            let (d_op, e_op) = kerr_output_ops(&params, &basis).unwrap();
            let n_sum = d_op
                .adjoint()
                .compose(&d_op)
                .unwrap()
                .add(&e_op.adjoint().compose(&e_op).unwrap())
                .unwrap();
            assert!(n_sum.max_abs_diff(&total).unwrap() < 1e-12);
            assert!(n_sum.hermitian_defect() < 1e-12);
            let state = StateVector::random(&basis, 1000 + trial);
            let lhs = state.expectation(&n_sum).unwrap().re;
            let rhs = state.expectation(&total).unwrap().re;
            assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-10);
        }
    }

    #[test]
    fn ports_route_single_photon_by_path_phase() {
        let basis = ModeBasis::shared(2, 1, &[1.0, 1.0]).unwrap();
        let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let split = StateVector::from_amplitudes(&basis, {
            let mut v = vec![Complex64::new(0.0, 0.0); basis.dim()];
            v[basis.index_of(&[1, 0]).unwrap()] = s;
            v[basis.index_of(&[0, 1]).unwrap()] = s;
            v
        })
        .unwrap();
        let rho = DensityOperator::pure(&split).unwrap();

        // Matched arms: everything exits port d.
        let matched = KerrInterferometerParams::symmetric(1.0, 0.0, 0.0, 0.0).unwrap();
        let stats = detector_counts_and_variance(&rho, &matched).unwrap();
        assert_relative_eq!(stats.mean_d, 1.0, max_relative = 1e-12);
        assert_abs_diff_eq!(stats.mean_e, 0.0, epsilon = 1e-12);

        // Half-wave mismatch: everything exits port e.
        let opposed =
            KerrInterferometerParams::symmetric(1.0, 0.0, std::f64::consts::PI, 0.0).unwrap();
        let stats = detector_counts_and_variance(&rho, &opposed).unwrap();
        assert_abs_diff_eq!(stats.mean_d, 0.0, epsilon = 1e-12);
        assert_relative_eq!(stats.mean_e, 1.0, max_relative = 1e-12);

        // Conservation holds either way.
        assert_relative_eq!(stats.mean_d + stats.mean_e, 1.0, max_relative = 1e-10);
    }

    #[test]
    fn vacuum_is_silent() {
        let basis = ModeBasis::shared(2, 2, &[1.0, 1.0]).unwrap();
        let u = Units::natural();
        let vac = StateVector::vacuum(&basis);
        let p = momentum_diff_operator(1, 2.0, 0.3, &basis, &u).unwrap();
        assert_eq!(vac.expectation(&p).unwrap(), Complex64::new(0.0, 0.0));
        let p2 = p.compose(&p).unwrap();
        assert_eq!(vac.expectation(&p2).unwrap(), Complex64::new(0.0, 0.0));

        let rho = DensityOperator::pure(&vac).unwrap();
        let params = KerrInterferometerParams::symmetric(1.0, 0.5, 1.5, 0.2).unwrap();
        let stats = detector_counts_and_variance(&rho, &params).unwrap();
        assert_eq!(stats.mean_d, 0.0);
        assert_eq!(stats.mean_e, 0.0);
        assert_eq!(stats.var_d, 0.0);
        assert_eq!(stats.var_e, 0.0);
        assert_eq!(stats.combined_variance, 0.0);
        assert_eq!(stats.difference_variance, 0.0);
    }

    #[test]
    fn difference_channel_variance_is_consistent() {
        let basis = ModeBasis::shared(2, 2, &[1.0, 1.0]).unwrap();
        let params = KerrInterferometerParams::symmetric(2.0, 0.0, 0.3, 0.15).unwrap();
        let rho = DensityOperator::random(&basis, 9);
        let stats = detector_counts_and_variance(&rho, &params).unwrap();
        let (d_op, e_op) = kerr_output_ops(&params, &basis).unwrap();
        let diff = d_op
            .adjoint()
            .compose(&d_op)
            .unwrap()
            .sub(&e_op.adjoint().compose(&e_op).unwrap())
            .unwrap();
        let mean = rho.expectation(&diff).unwrap().re;
        let second = rho.expectation(&diff.compose(&diff).unwrap()).unwrap().re;
        assert_abs_diff_eq!(
            stats.difference_variance,
            second - mean * mean,
            epsilon = 1e-12
        );
        assert!(stats.var_d >= -1e-12 && stats.var_e >= -1e-12);
    }

    #[test]
    fn sampling_is_seed_deterministic_and_extensible() {
        let a = sample_counts(CountDistribution::Poisson, 10.0, 1000, 42).unwrap();
        let b = sample_counts(CountDistribution::Poisson, 10.0, 1000, 42).unwrap();
        assert_eq!(a.counts(), b.counts());
        let c = sample_counts(CountDistribution::Poisson, 10.0, 1000, 43).unwrap();
        assert_ne!(a.counts(), c.counts());
        // Per-index seeding: a longer run extends a shorter one unchanged.
        let long = sample_counts(CountDistribution::Poisson, 10.0, 2000, 42).unwrap();
        assert_eq!(&long.counts()[..1000], a.counts());
        let be = sample_counts(CountDistribution::BoseEinstein, 10.0, 1000, 42).unwrap();
        assert_ne!(a.counts(), be.counts());
    }

    #[test]
    fn sample_guards() {
        assert!(matches!(
            sample_counts(CountDistribution::Poisson, 0.0, 10, 1),
            Err(Error::InvalidParameter { .. })
        ));
        assert!(matches!(
            sample_counts(CountDistribution::Poisson, 1.0, 0, 1),
            Err(Error::InvalidSize(_))
        ));
    }

    #[test]
    fn sample_moments_match_distribution_families() {
        let n = 200_000;
        let poisson = sample_counts(CountDistribution::Poisson, 10.0, n, 7).unwrap();
        assert!((poisson.sample_mean() / 10.0 - 1.0).abs() < 0.01);
        assert!(
            (poisson.sample_variance() / 10.0 - 1.0).abs() < 0.01,
            "poisson variance ratio {}",
            poisson.sample_variance() / 10.0
        );
        let thermal = sample_counts(CountDistribution::BoseEinstein, 10.0, n, 7).unwrap();
        assert!((thermal.sample_mean() / 10.0 - 1.0).abs() < 0.02);
        let expected_var = 10.0 + 100.0;
        assert!(
            (thermal.sample_variance() / expected_var - 1.0).abs() < 0.02,
            "thermal variance ratio {}",
            thermal.sample_variance() / expected_var
        );
    }

    fn ln_pmf(distribution: CountDistribution, n_mean: f64, n: u64) -> f64 {
        match distribution {
            CountDistribution::Poisson => {
                n as f64 * n_mean.ln() - n_mean - statrs::function::gamma::ln_gamma(n as f64 + 1.0)
            }
            CountDistribution::BoseEinstein => {
                n as f64 * n_mean.ln() - (n as f64 + 1.0) * (1.0 + n_mean).ln()
            }
        }
    }

    #[test]
    fn sampled_counts_pass_chi_square_gof() {
        use statrs::distribution::{ChiSquared, ContinuousCDF};
        let n = 100_000usize;
        for &distribution in &[CountDistribution::Poisson, CountDistribution::BoseEinstein] {
            for &n_mean in &[0.1, 1.0, 10.0] {
                let sample = sample_counts(distribution, n_mean, n, 2024).unwrap();
                let max_count = *sample.counts().iter().max().unwrap() as usize;
                let mut observed = vec![0.0_f64; max_count + 1];
                for &c in sample.counts() {
                    observed[c as usize] += 1.0;
                }
                let expected: Vec<f64> = (0..=max_count as u64)
                    .map(|k| n as f64 * ln_pmf(distribution, n_mean, k).exp())
                    .collect();
                // Pool bins upward until each pooled cell expects >= 5.
                let mut pooled: Vec<(f64, f64)> = Vec::new();
                let mut acc = (0.0, 0.0);
                for i in 0..=max_count {
                    acc.0 += observed[i];
                    acc.1 += expected[i];
                    if acc.1 >= 5.0 {
                        pooled.push(acc);
                        acc = (0.0, 0.0);
                    }
                }
                // Remaining tail mass, including counts above max_count.
                let seen: f64 = pooled.iter().map(|p| p.1).sum::<f64>() + acc.1;
                acc.0 += 0.0;
                acc.1 += (n as f64 - seen).max(0.0);
                if acc.1 > 0.0 {
                    if let Some(last) = pooled.last_mut() {
                        last.0 += acc.0;
                        last.1 += acc.1;
                    }
                }
                let stat: f64 = pooled
                    .iter()
                    .map(|&(o, e)| (o - e) * (o - e) / e)
                    .sum();
                let dof = (pooled.len() - 1).max(1) as f64;
                let critical = ChiSquared::new(dof).unwrap().inverse_cdf(0.999);
                assert!(
                    stat < critical,
                    "{distribution:?} n_mean={n_mean}: chi2 {stat:.2} >= {critical:.2} (dof {dof})"
                );
            }
        }
    }
}
