//! Density operators and the path-indistinguishability measure P_Q.
//!
//! A single photon split over two interferometer arms is
//! alpha |1,0> + beta |0,1>. Its density matrix restricted to those two
//! basis elements reads
//!
//! ```text
//! rho = [ rho11   rho12 ]     rho11 = |alpha|^2, rho22 = |beta|^2,
//!       [ rho12*  rho22 ]     rho12 = alpha beta*   (fully coherent case)
//! ```
//!
//! Decoherence scales the off-diagonal down; the degree of
//! indistinguishability recovers how much coherence is left:
//!
//! ```text
//! P_Q = |rho12| / sqrt(rho11 rho22)
//! ```
//!
//! with P_Q = 1 for the pure superposition, P_Q = 0 for the classical
//! which-path mixture, and the convex mixture P_Q rho_quantum +
//! (1 - P_Q) rho_classical mapping back to exactly P_Q. The same number is
//! the fringe visibility a balanced interferometer can show (asserted in the
//! integration suite).
//!
//! Construction is guarded: Hermiticity and unit trace to 1e-12, positive
//! semidefiniteness to an eigenvalue floor of -1e-10.

use std::sync::Arc;

use ndarray::Array2;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{LinearOperator, ModeBasis, StateVector};
use crate::linalg;

const HERMITICITY_TOL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-12;
const EIGENVALUE_FLOOR: f64 = -1e-10;

/// Mixed or pure state over a Fock basis.
#[derive(Debug, Clone)]
pub struct DensityOperator {
    basis: Arc<ModeBasis>,
    matrix: Array2<Complex64>,
}

impl DensityOperator {
    /// Validates and wraps an explicit matrix: Hermitian within 1e-12,
    /// trace 1 within 1e-12, eigenvalues >= -1e-10.
    pub fn from_matrix(basis: &Arc<ModeBasis>, matrix: Array2<Complex64>) -> Result<Self> {
        if matrix.nrows() != basis.dim() || matrix.ncols() != basis.dim() {
            return Err(Error::ShapeMismatch {
                expected: format!("{0} x {0}", basis.dim()),
                got: format!("{} x {}", matrix.nrows(), matrix.ncols()),
            });
        }
        let defect = linalg::hermitian_defect(&matrix);
        if defect > HERMITICITY_TOL {
            return Err(Error::NotHermitian { defect });
        }
        let trace: Complex64 = matrix.diag().iter().sum();
        if (trace.re - 1.0).abs() > TRACE_TOL || trace.im.abs() > TRACE_TOL {
            return Err(Error::BadTrace { trace: trace.re });
        }
        let min_eigenvalue = linalg::min_hermitian_eigenvalue(&matrix);
        if min_eigenvalue < EIGENVALUE_FLOOR {
            return Err(Error::NotPositive { min_eigenvalue });
        }
        Ok(DensityOperator {
            basis: Arc::clone(basis),
            matrix,
        })
    }

    /// |state><state| for a normalized state. Rank 1 and idempotent by
    /// construction, so no eigenvalue check is run.
    pub fn pure(state: &StateVector) -> Result<Self> {
        state.check_normalized(1e-12)?;
        let amps = state.amplitudes();
        let dim = amps.len();
        let mut matrix = Array2::zeros((dim, dim));
        for i in 0..dim {
            for j in 0..dim {
                matrix[(i, j)] = amps[i] * amps[j].conj();
            }
        }
        Ok(DensityOperator {
            basis: Arc::clone(state.basis()),
            matrix,
        })
    }

    /// Convex combination sum_i p_i rho_i. Probabilities must be nonnegative
    /// and sum to 1 within 1e-12; bases must match. Hermiticity, trace, and
    /// positivity are preserved by convexity.
    pub fn mixture(components: &[(f64, &DensityOperator)]) -> Result<Self> {
        let Some(&(_, first)) = components.first() else {
            return Err(Error::InvalidSize("mixture needs at least one component".into()));
        };
        let mut sum = 0.0;
        for &(p, rho) in components {
            if !(p >= 0.0) || !p.is_finite() {
                return Err(Error::BadProbabilities { sum: p });
            }
            if !rho.basis.matches(&first.basis) {
                return Err(Error::BasisMismatch);
            }
            sum += p;
        }
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::BadProbabilities { sum });
        }
        let dim = first.basis.dim();
        let mut matrix = Array2::<Complex64>::zeros((dim, dim));
        for &(p, rho) in components {
            matrix.scaled_add(Complex64::new(p, 0.0), &rho.matrix);
        }
        Ok(DensityOperator {
            basis: Arc::clone(&first.basis),
            matrix,
        })
    }

    /// Random full-rank mixed state G G^H / tr(G G^H), deterministic in `seed`.
    pub fn random(basis: &Arc<ModeBasis>, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dim = basis.dim();
        let mut g = Array2::<Complex64>::zeros((dim, dim));
        for i in 0..dim {
            for j in 0..dim {
                let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
                let u2: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
                let r = (-2.0 * u1.ln()).sqrt();
                g[(i, j)] = Complex64::new(r * u2.cos(), r * u2.sin());
            }
        }
        let gh = linalg::adjoint(&g);
        let mut matrix = g.dot(&gh);
        let trace: Complex64 = matrix.diag().iter().sum();
        matrix.mapv_inplace(|z| z / trace.re);
        // Hermitize the rounding residue so downstream guards see an exact
        // Hermitian matrix.
        let m = matrix.clone();
        for i in 0..dim {
            for j in 0..dim {
                matrix[(i, j)] = 0.5 * (m[(i, j)] + m[(j, i)].conj());
            }
        }
        DensityOperator {
            basis: Arc::clone(basis),
            matrix,
        }
    }

    pub fn basis(&self) -> &Arc<ModeBasis> {
        &self.basis
    }

    pub fn matrix(&self) -> &Array2<Complex64> {
        &self.matrix
    }

    pub fn element(&self, row: usize, col: usize) -> Complex64 {
        self.matrix[(row, col)]
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.diag().iter().sum()
    }

    /// Tr[rho op]; real within rounding when `op` is Hermitian.
    pub fn expectation(&self, op: &LinearOperator) -> Result<Complex64> {
        if !self.basis.matches(op.basis()) {
            return Err(Error::BasisMismatch);
        }
        let a = op.matrix();
        let dim = self.basis.dim();
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..dim {
            for j in 0..dim {
                acc += self.matrix[(i, j)] * a[(j, i)];
            }
        }
        Ok(acc)
    }
}

/// Amplitudes of one photon split over two arms: alpha |1,0> + beta |0,1>.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OnePhotonPathState {
    alpha: Complex64,
    beta: Complex64,
}

impl OnePhotonPathState {
    /// Requires |alpha|^2 + |beta|^2 = 1 within 1e-12.
    pub fn new(alpha: Complex64, beta: Complex64) -> Result<Self> {
        let norm2 = alpha.norm_sqr() + beta.norm_sqr();
        let defect = (norm2 - 1.0).abs();
        if defect > 1e-12 {
            return Err(Error::NotNormalized { defect });
        }
        Ok(OnePhotonPathState { alpha, beta })
    }

    /// Equal-amplitude split, both amplitudes real 1/sqrt(2).
    pub fn balanced() -> Self {
        let s = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        OnePhotonPathState { alpha: s, beta: s }
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }
}

/// Density operator for one photon over two arms.
///
/// `quantum = true` keeps the interference cross terms alpha beta* (pure
/// superposition); `quantum = false` drops them (classical which-path
/// mixture with the same arm probabilities).
pub fn one_photon_density(
    path: &OnePhotonPathState,
    quantum: bool,
    basis: &Arc<ModeBasis>,
) -> Result<DensityOperator> {
    let (i10, i01) = two_path_indices(basis)?;
    let dim = basis.dim();
    let mut matrix = Array2::<Complex64>::zeros((dim, dim));
    matrix[(i10, i10)] = Complex64::new(path.alpha.norm_sqr(), 0.0);
    matrix[(i01, i01)] = Complex64::new(path.beta.norm_sqr(), 0.0);
    if quantum {
        let cross = path.alpha * path.beta.conj();
        matrix[(i10, i01)] = cross;
        matrix[(i01, i10)] = cross.conj();
    }
    Ok(DensityOperator {
        basis: Arc::clone(basis),
        matrix,
    })
}

/// Indices of |1,0> and |0,1> in a two-mode basis.
fn two_path_indices(basis: &ModeBasis) -> Result<(usize, usize)> {
    if basis.mode_count() != 2 {
        return Err(Error::InvalidSize(format!(
            "two-path states need a 2-mode basis, got {} modes",
            basis.mode_count()
        )));
    }
    Ok((basis.index_of(&[1, 0])?, basis.index_of(&[0, 1])?))
}

/// P_Q together with the coherence product it was recovered from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Indistinguishability {
    /// |rho12| / sqrt(rho11 rho22), in [0, 1].
    pub p_q: f64,
    /// Recovered alpha beta* = sqrt(rho11 rho22) exp(i arg rho12).
    /// Phase 0 when rho12 = 0 (the phase is then physically undefined).
    pub alpha_beta_conj: Complex64,
}

/// P_Q from the two-path sector entries alone.
pub fn sector_indistinguishability(
    rho11: f64,
    rho22: f64,
    rho12: Complex64,
) -> Result<Indistinguishability> {
    if rho11 <= 0.0 || rho22 <= 0.0 {
        return Err(Error::SinglePath);
    }
    let geometric = (rho11 * rho22).sqrt();
    let p_q = rho12.norm() / geometric;
    let phase = if rho12.norm() == 0.0 {
        Complex64::new(1.0, 0.0)
    } else {
        rho12 / rho12.norm()
    };
    Ok(Indistinguishability {
        p_q,
        alpha_beta_conj: geometric * phase,
    })
}

/// Degree of indistinguishability of the two paths of `rho`.
///
/// `rho` must live on a 2-mode basis and be supported on the one-photon
/// sector {|1,0>, |0,1>}; population elsewhere above 1e-10 is rejected, and
/// a vanishing arm population is the distinct single-path error.
pub fn degree_of_indistinguishability(rho: &DensityOperator) -> Result<Indistinguishability> {
    let (i10, i01) = two_path_indices(&rho.basis)?;
    let mut outside = 0.0;
    for i in 0..rho.basis.dim() {
        if i != i10 && i != i01 {
            outside += rho.matrix[(i, i)].re;
        }
    }
    if outside.abs() > 1e-10 {
        return Err(Error::InvalidParameter {
            name: "population outside the two-path sector",
            value: outside,
        });
    }
    sector_indistinguishability(
        rho.matrix[(i10, i10)].re,
        rho.matrix[(i01, i01)].re,
        rho.matrix[(i10, i01)],
    )
}

/// JSON interchange form of a density matrix: `{"dim": d, "re": [[..]], "im": [[..]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DensityMatrixJson {
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl DensityMatrixJson {
    pub fn from_matrix(matrix: &Array2<Complex64>) -> Self {
        let dim = matrix.nrows();
        let grab = |f: fn(&Complex64) -> f64| -> Vec<Vec<f64>> {
            (0..dim)
                .map(|i| (0..dim).map(|j| f(&matrix[(i, j)])).collect())
                .collect()
        };
        DensityMatrixJson {
            dim,
            re: grab(|z| z.re),
            im: grab(|z| z.im),
        }
    }

    pub fn to_matrix(&self) -> Result<Array2<Complex64>> {
        let d = self.dim;
        let check = |name: &str, rows: &Vec<Vec<f64>>| -> Result<()> {
            if rows.len() != d || rows.iter().any(|r| r.len() != d) {
                return Err(Error::ShapeMismatch {
                    expected: format!("{d} x {d} '{name}' block"),
                    got: format!("{} rows", rows.len()),
                });
            }
            Ok(())
        };
        check("re", &self.re)?;
        check("im", &self.im)?;
        let mut matrix = Array2::zeros((d, d));
        for i in 0..d {
            for j in 0..d {
                matrix[(i, j)] = Complex64::new(self.re[i][j], self.im[i][j]);
            }
        }
        Ok(matrix)
    }
}
