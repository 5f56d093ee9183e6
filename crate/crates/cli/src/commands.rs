//! The four subcommand implementations and their report shapes.
//!
//! Output discipline: CSV plus a JSON sidecar for the scan-like commands,
//! a single JSON report for `noise`, a printed report for `pq`. Every
//! sidecar embeds the resolved configuration, every float is written in
//! shortest round-trip decimal form, and nothing depends on wall time or
//! environment, so identical inputs give byte-identical outputs.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use qlci_core::classical::{
    coherence_length, coherence_time, gaussian_g1, layered_envelope,
    layered_sample_interferogram, Interferogram, Reflector,
};
use qlci_core::density::{sector_indistinguishability, DensityMatrixJson, DensityOperator};
use qlci_core::fock::{ModeBasis, StateVector};
use qlci_core::interferometer::quantum_g1_sweep;
use qlci_core::noise::{
    detector_counts_and_variance, momentum_diff_operator, sample_counts, sql_displacement,
    CountDistribution, CountSample, KerrInterferometerParams, SqlQuery,
};
use qlci_core::spectra::{make_grid, FrequencyGrid, SinglePhotonWavepacket, SpectralProfile};
use qlci_core::units::omega_to_wavenumber;
use qlci_core::Complex64;

use crate::config::RunConfig;
use crate::CliError;

/// Resolved output locations for one command run.
pub struct OutPaths {
    pub primary: PathBuf,
    pub sidecar: Option<PathBuf>,
}

impl OutPaths {
    /// CSV-emitting commands: primary CSV plus a `.json` sidecar next to it.
    pub fn csv_with_sidecar(
        flag: Option<&Path>,
        config: &RunConfig,
        default_stem: &str,
    ) -> OutPaths {
        let primary = flag
            .map(Path::to_path_buf)
            .or_else(|| config.output.csv.as_ref().map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from(format!("{default_stem}.csv")));
        let sidecar = config
            .output
            .json
            .as_ref()
            .map(PathBuf::from)
            .unwrap_or_else(|| primary.with_extension("json"));
        OutPaths {
            primary,
            sidecar: Some(sidecar),
        }
    }

    /// JSON-only commands.
    pub fn json_only(flag: Option<&Path>, config: &RunConfig, default_stem: &str) -> OutPaths {
        let primary = flag
            .map(Path::to_path_buf)
            .or_else(|| config.output.json.as_ref().map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from(format!("{default_stem}.json")));
        OutPaths {
            primary,
            sidecar: None,
        }
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents)
        .map_err(|e| CliError::Config(format!("cannot write {}: {e}", path.display())))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("reports serialize");
    text.push('\n');
    text
}

/// Coherence time of the source by quadrature of its own sampled |g1|^2,
/// the same estimator exposed to callers.
fn source_coherence_time(profile: &SpectralProfile) -> f64 {
    let half = 6.0 / profile.sigma();
    let n = 4001;
    let taus: Vec<f64> = (0..n)
        .map(|i| -half + 2.0 * half * i as f64 / (n - 1) as f64)
        .collect();
    let g: Vec<Complex64> = taus
        .iter()
        .map(|&t| gaussian_g1(t, profile.omega0(), profile.sigma()))
        .collect();
    coherence_time(&taus, &g).expect("6 coherence times of margin")
}

fn tau_axis(lo: f64, hi: f64, points: usize) -> Result<Vec<f64>, CliError> {
    if points < 2 {
        return Err(CliError::Physics(format!(
            "scan.tau_points must be at least 2, got {points}"
        )));
    }
    if !(hi > lo) {
        return Err(CliError::Physics(format!(
            "scan range is empty: tau_min {lo} >= tau_max {hi}"
        )));
    }
    let step = (hi - lo) / (points - 1) as f64;
    Ok((0..points).map(|i| lo + step * i as f64).collect())
}

#[derive(Serialize)]
struct PeakReport {
    tau: f64,
    height: f64,
}

#[derive(Serialize)]
struct AscanReport {
    config_toml: String,
    coherence_time: f64,
    coherence_length: f64,
    envelope_peaks: Vec<PeakReport>,
}

/// Local envelope maxima above one percent of the global peak.
fn find_peaks(taus: &[f64], envelope: &[f64]) -> Vec<PeakReport> {
    let top = envelope.iter().fold(0.0_f64, |a, &b| a.max(b));
    let floor = 0.01 * top;
    let mut peaks = Vec::new();
    for i in 1..envelope.len().saturating_sub(1) {
        if envelope[i] > envelope[i - 1] && envelope[i] >= envelope[i + 1] && envelope[i] > floor
        {
            peaks.push(PeakReport {
                tau: taus[i],
                height: envelope[i],
            });
        }
    }
    peaks
}

/// Depth scan: layered-sample interferogram as CSV, coherence figures and
/// envelope peaks in the sidecar.
pub fn cmd_ascan(config: &RunConfig, out: &OutPaths) -> Result<(), CliError> {
    let units = config.units();
    let profile = config.source.resolve(&units)?;
    if config.sample.reflectors.is_empty() {
        return Err(CliError::Physics(
            "ascan needs at least one reflector in [sample]".into(),
        ));
    }
    let reflectors: Vec<Reflector> = config
        .sample
        .reflectors
        .iter()
        .map(|r| Reflector {
            depth: r.depth,
            reflectivity: r.reflectivity,
        })
        .collect();

    let t_c = source_coherence_time(&profile);
    let max_delay = reflectors
        .iter()
        .map(|r| 2.0 * r.depth / units.c)
        .fold(0.0_f64, f64::max);
    let lo = config.scan.tau_min.unwrap_or(-5.0 * t_c);
    let hi = config.scan.tau_max.unwrap_or(max_delay + 5.0 * t_c);
    let taus = tau_axis(lo, hi, config.scan.tau_points)?;

    let record =
        layered_sample_interferogram(&reflectors, &profile, &taus, config.sample.i_s0, &units)?;
    let envelope = layered_envelope(&reflectors, &profile, &taus, config.sample.i_s0, &units)?;

    // Two-column CSV; the complex coherence stays in the sidecar domain.
    let bare = Interferogram::new(taus.clone(), record.intensities().to_vec(), None)?;
    write_file(&out.primary, &bare.to_csv_string())?;

    let report = AscanReport {
        config_toml: config.to_toml(),
        coherence_time: t_c,
        coherence_length: coherence_length(t_c, &units),
        envelope_peaks: find_peaks(&taus, &envelope),
    };
    if let Some(sidecar) = &out.sidecar {
        write_file(sidecar, &to_json(&report))?;
    }
    Ok(())
}

#[derive(Serialize)]
struct CorrelateReport {
    config_toml: String,
    coherence_time: f64,
    max_abs_diff: f64,
}

/// Classical-vs-quantum first-order coherence over a delay grid.
pub fn cmd_correlate(config: &RunConfig, out: &OutPaths) -> Result<(), CliError> {
    let units = config.units();
    let profile = config.source.resolve(&units)?;
    // A single bin is the monochromatic limit; anything between 2 and 15
    // bins is too coarse for the integral grid and is refused downstream.
    let grid = if config.grid.bins == 1 {
        FrequencyGrid::from_points(vec![profile.omega0()], vec![1.0])?
    } else {
        make_grid(&profile, config.grid.bins, config.grid.span_in_sigmas)?
    };
    let packet = SinglePhotonWavepacket::new(&profile, &grid);

    let t_c = source_coherence_time(&profile);
    let lo = config.scan.tau_min.unwrap_or(-5.0 * t_c);
    let hi = config.scan.tau_max.unwrap_or(5.0 * t_c);
    let taus = tau_axis(lo, hi, config.scan.tau_points)?;

    let quantum = quantum_g1_sweep(&packet, &taus);
    let mut max_abs_diff = 0.0_f64;
    let mut csv = String::from("tau,cl_re,cl_im,q_re,q_im,abs_diff\n");
    for (i, &tau) in taus.iter().enumerate() {
        let cl = gaussian_g1(tau, profile.omega0(), profile.sigma());
        let diff = (quantum[i] - cl).norm();
        max_abs_diff = max_abs_diff.max(diff);
        csv.push_str(&format!(
            "{},{},{},{},{},{}\n",
            tau, cl.re, cl.im, quantum[i].re, quantum[i].im, diff
        ));
    }
    write_file(&out.primary, &csv)?;

    let report = CorrelateReport {
        config_toml: config.to_toml(),
        coherence_time: t_c,
        max_abs_diff,
    };
    if let Some(sidecar) = &out.sidecar {
        write_file(sidecar, &to_json(&report))?;
    }
    Ok(())
}

#[derive(Serialize)]
struct PqReport {
    p_q: f64,
    alpha_beta_conj_abs: f64,
    rho12_arg: f64,
}

/// Path-indistinguishability report from a density-matrix JSON file.
///
/// Accepts the 2x2 one-photon sector directly (row/column order: photon in
/// path 1, photon in path 2) or a full 4x4 two-mode matrix.
pub fn cmd_pq(density_path: &Path, out: Option<&Path>) -> Result<(), CliError> {
    let text = fs::read_to_string(density_path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", density_path.display())))?;
    let parsed: DensityMatrixJson = serde_json::from_str(&text)
        .map_err(|e| CliError::Config(format!("density JSON parse failure: {e}")))?;
    let matrix = parsed.to_matrix()?;

    let measure = match matrix.nrows() {
        2 => {
            check_sector_matrix(
                matrix[(0, 0)],
                matrix[(0, 1)],
                matrix[(1, 0)],
                matrix[(1, 1)],
            )?;
            sector_indistinguishability(matrix[(0, 0)].re, matrix[(1, 1)].re, matrix[(0, 1)])?
        }
        4 => {
            let basis = ModeBasis::shared(2, 1, &[1.0, 1.0])?;
            let rho = DensityOperator::from_matrix(&basis, matrix)?;
            qlci_core::density::degree_of_indistinguishability(&rho)?
        }
        n => {
            return Err(CliError::Physics(format!(
                "density matrix must be the 2x2 path sector or the full 4x4 basis, got {n}x{n}"
            )))
        }
    };

    let report = PqReport {
        p_q: measure.p_q,
        alpha_beta_conj_abs: measure.alpha_beta_conj.norm(),
        rho12_arg: measure.alpha_beta_conj.arg(),
    };
    println!("P_Q = {}", report.p_q);
    println!("|alpha beta*| = {}", report.alpha_beta_conj_abs);
    println!("arg rho12 = {}", report.rho12_arg);
    if let Some(path) = out {
        write_file(path, &to_json(&report))?;
    }
    Ok(())
}

/// Hermiticity, unit trace, and positivity for a bare 2x2 sector matrix.
fn check_sector_matrix(
    m00: Complex64,
    m01: Complex64,
    m10: Complex64,
    m11: Complex64,
) -> Result<(), CliError> {
    let tol = 1e-12;
    let herm = (m01 - m10.conj())
        .norm()
        .max(m00.im.abs())
        .max(m11.im.abs());
    if herm > tol {
        return Err(CliError::Physics(format!(
            "sector matrix is not Hermitian (defect {herm:.3e})"
        )));
    }
    let trace = m00.re + m11.re;
    if (trace - 1.0).abs() > tol {
        return Err(CliError::Physics(format!(
            "sector matrix trace is {trace}, expected 1"
        )));
    }
    if m00.re < -tol || m11.re < -tol {
        return Err(CliError::Physics(
            "sector matrix has a negative population".into(),
        ));
    }
    if m01.norm_sqr() > m00.re * m11.re + tol {
        return Err(CliError::Physics(
            "sector matrix is not positive semidefinite".into(),
        ));
    }
    Ok(())
}

#[derive(Serialize)]
struct CountStatsEntry {
    sample_mean: f64,
    sample_variance: f64,
}

impl From<&CountSample> for CountStatsEntry {
    fn from(sample: &CountSample) -> Self {
        CountStatsEntry {
            sample_mean: sample.sample_mean(),
            sample_variance: sample.sample_variance(),
        }
    }
}

#[derive(Serialize)]
struct CountStats {
    n_mean: f64,
    n_samples: usize,
    seed: u64,
    poisson: CountStatsEntry,
    bose_einstein: CountStatsEntry,
}

#[derive(Serialize)]
struct NoiseReport {
    config_toml: String,
    sql_m: f64,
    p2_expectation: f64,
    port_means: [f64; 2],
    port_vars: [f64; 2],
    combined_variance: f64,
    difference_variance: f64,
    count_stats: CountStats,
}

/// Quantum-noise report: mirror position limit, momentum-fluctuation second
/// moment on a split single photon, Kerr port statistics, and seeded count
/// sampling for both source families.
pub fn cmd_noise(config: &RunConfig, out: &OutPaths) -> Result<(), CliError> {
    let units = config.units();
    if !units.is_si() {
        return Err(CliError::Physics(
            "the noise report includes the standard quantum limit, which is dimensional: set units = \"si\"".into(),
        ));
    }
    let n = &config.noise;
    let sql_m = sql_displacement(&SqlQuery::new(n.mass, n.duration)?, &units)?;

    let profile = config.source.resolve(&units)?;
    let omega0 = profile.omega0();
    let basis = ModeBasis::shared(2, 1, &[omega0, omega0])?;

    // Momentum fluctuation on a photon in the source port.
    let p_op = momentum_diff_operator(n.bounces, omega0, n.mu, &basis, &units)?;
    let one = StateVector::basis_state(&basis, &[1, 0])?;
    let p2_expectation = one.expectation(&p_op.compose(&p_op)?)?.re;

    // Kerr port statistics for the balanced split photon.
    let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    let mut amps = vec![Complex64::new(0.0, 0.0); basis.dim()];
    amps[basis.index_of(&[1, 0])?] = s;
    amps[basis.index_of(&[0, 1])?] = s;
    let rho = DensityOperator::pure(&StateVector::from_amplitudes(&basis, amps)?)?;
    let params = KerrInterferometerParams::new(
        omega_to_wavenumber(omega0, &units),
        n.kerr.z1,
        n.kerr.z2,
        n.kerr.c1,
        n.kerr.c2,
    )?;
    let stats = detector_counts_and_variance(&rho, &params)?;

    let poisson = sample_counts(CountDistribution::Poisson, n.n_mean, n.n_samples, n.seed)?;
    let thermal = sample_counts(CountDistribution::BoseEinstein, n.n_mean, n.n_samples, n.seed)?;

    let report = NoiseReport {
        config_toml: config.to_toml(),
        sql_m,
        p2_expectation,
        port_means: [stats.mean_d, stats.mean_e],
        port_vars: [stats.var_d, stats.var_e],
        combined_variance: stats.combined_variance,
        difference_variance: stats.difference_variance,
        count_stats: CountStats {
            n_mean: n.n_mean,
            n_samples: n.n_samples,
            seed: n.seed,
            poisson: CountStatsEntry::from(&poisson),
            bose_einstein: CountStatsEntry::from(&thermal),
        },
    };
    write_file(&out.primary, &to_json(&report))
}
