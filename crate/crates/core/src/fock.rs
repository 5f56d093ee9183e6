//! Truncated multimode Fock space and the ladder-operator algebra on it.
//!
//! A [`ModeBasis`] enumerates occupation tuples (n_0, ..., n_{M-1}) with
//! 0 <= n_k <= N_max, lexicographically with mode 0 slowest, so
//!
//! ```text
//! index = sum_k n_k * (N_max + 1)^(M - 1 - k)
//! ```
//!
//! Ladder operators follow <n-1| a |n> = sqrt(n); the creation operator is the
//! exact conjugate transpose, which makes a'|N_max> = 0 the truncation
//! convention. The number operator n = a'a and the Hamiltonian
//! H = sum_k hbar w_k (n_k + 1/2) stay exact diagonals even at the cutoff;
//! only the commutator [a, a'] picks up a truncation artifact, confined to the
//! n = N_max subspace (its diagonal there reads -N_max instead of +1).
//!
//! Matrices are dense: every basis in scope is small, and a hard element cap
//! (2^24) rejects accidental blowups before allocation.

use std::sync::Arc;

use ndarray::{Array1, Array2, ArrayView1};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg;
use crate::units::Units;

/// Hard cap on dense vector length (and matrix side), 2^24 elements.
pub const DIMENSION_CAP: u128 = 1 << 24;

/// Finite product basis of per-mode occupation numbers.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeBasis {
    mode_count: usize,
    cutoff: usize,
    frequencies: Vec<f64>,
    strides: Vec<usize>,
    dim: usize,
}

impl ModeBasis {
    /// Builds the occupation basis for `mode_count` modes truncated at
    /// `cutoff` photons per mode, with angular frequencies `frequencies`.
    pub fn new(mode_count: usize, cutoff: usize, frequencies: &[f64]) -> Result<Self> {
        if mode_count < 1 {
            return Err(Error::InvalidSize("mode_count must be >= 1".into()));
        }
        if cutoff < 1 {
            return Err(Error::InvalidSize("cutoff must be >= 1".into()));
        }
        if frequencies.len() != mode_count {
            return Err(Error::ShapeMismatch {
                expected: format!("{mode_count} frequencies"),
                got: format!("{}", frequencies.len()),
            });
        }
        for &w in frequencies {
            if !(w > 0.0) || !w.is_finite() {
                return Err(Error::NonPositiveFrequency(w));
            }
        }
        let side = (cutoff + 1) as u128;
        let mut dim: u128 = 1;
        for _ in 0..mode_count {
            dim = dim.saturating_mul(side);
            if dim > DIMENSION_CAP {
                return Err(Error::BasisTooLarge {
                    dim,
                    cap: DIMENSION_CAP,
                });
            }
        }
        let mut strides = vec![0usize; mode_count];
        let mut s = 1usize;
        for k in (0..mode_count).rev() {
            strides[k] = s;
            s *= cutoff + 1;
        }
        Ok(ModeBasis {
            mode_count,
            cutoff,
            frequencies: frequencies.to_vec(),
            strides,
            dim: dim as usize,
        })
    }

    /// Convenience wrapper producing the shared handle used by operators.
    pub fn shared(mode_count: usize, cutoff: usize, frequencies: &[f64]) -> Result<Arc<Self>> {
        Ok(Arc::new(Self::new(mode_count, cutoff, frequencies)?))
    }

    pub fn mode_count(&self) -> usize {
        self.mode_count
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn frequencies(&self) -> &[f64] {
        &self.frequencies
    }

    pub fn frequency(&self, mode: usize) -> f64 {
        self.frequencies[mode]
    }

    pub(crate) fn check_mode(&self, mode: usize) -> Result<()> {
        if mode < self.mode_count {
            Ok(())
        } else {
            Err(Error::InvalidMode {
                mode,
                mode_count: self.mode_count,
            })
        }
    }

    /// Index of the basis element with the given occupations.
    pub fn index_of(&self, occupations: &[usize]) -> Result<usize> {
        if occupations.len() != self.mode_count {
            return Err(Error::ShapeMismatch {
                expected: format!("{} occupations", self.mode_count),
                got: format!("{}", occupations.len()),
            });
        }
        let mut idx = 0usize;
        for (k, &n) in occupations.iter().enumerate() {
            if n > self.cutoff {
                return Err(Error::InvalidSize(format!(
                    "occupation {n} exceeds cutoff {}",
                    self.cutoff
                )));
            }
            idx += n * self.strides[k];
        }
        Ok(idx)
    }

    /// Occupation of `mode` in basis element `index`.
    pub fn occupation(&self, index: usize, mode: usize) -> usize {
        (index / self.strides[mode]) % (self.cutoff + 1)
    }

    /// Full occupation tuple of basis element `index`.
    pub fn occupations(&self, index: usize) -> Vec<usize> {
        (0..self.mode_count)
            .map(|k| self.occupation(index, k))
            .collect()
    }

    /// True when the two handles describe interchangeable bases.
    pub fn matches(&self, other: &ModeBasis) -> bool {
        self == other
    }
}

fn require_same_basis(a: &ModeBasis, b: &ModeBasis) -> Result<()> {
    if a.matches(b) {
        Ok(())
    } else {
        Err(Error::BasisMismatch)
    }
}

/// Ket over a [`ModeBasis`], amplitudes indexed by occupation tuple.
#[derive(Debug, Clone)]
pub struct StateVector {
    basis: Arc<ModeBasis>,
    amplitudes: Array1<Complex64>,
}

impl StateVector {
    /// The vacuum |0, ..., 0>.
    pub fn vacuum(basis: &Arc<ModeBasis>) -> Self {
        let mut amplitudes = Array1::zeros(basis.dim());
        amplitudes[0] = Complex64::new(1.0, 0.0);
        StateVector {
            basis: Arc::clone(basis),
            amplitudes,
        }
    }

    /// Basis element |n_0, ..., n_{M-1}>.
    pub fn basis_state(basis: &Arc<ModeBasis>, occupations: &[usize]) -> Result<Self> {
        let idx = basis.index_of(occupations)?;
        let mut amplitudes = Array1::zeros(basis.dim());
        amplitudes[idx] = Complex64::new(1.0, 0.0);
        Ok(StateVector {
            basis: Arc::clone(basis),
            amplitudes,
        })
    }

    /// Wraps an amplitude vector. Length must match the basis dimension;
    /// normalization is up to the caller (see [`StateVector::normalized`]).
    pub fn from_amplitudes(basis: &Arc<ModeBasis>, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != basis.dim() {
            return Err(Error::ShapeMismatch {
                expected: format!("{} amplitudes", basis.dim()),
                got: format!("{}", amplitudes.len()),
            });
        }
        Ok(StateVector {
            basis: Arc::clone(basis),
            amplitudes: Array1::from_vec(amplitudes),
        })
    }

    /// Haar-ish random normalized state, deterministic in `seed`.
    pub fn random(basis: &Arc<ModeBasis>, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let amplitudes: Vec<Complex64> = (0..basis.dim())
            .map(|_| {
                // Box-Muller pair: rotation-invariant Gaussian components.
                let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
                let u2: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
                let r = (-2.0 * u1.ln()).sqrt();
                Complex64::new(r * u2.cos(), r * u2.sin())
            })
            .collect();
        let state = StateVector {
            basis: Arc::clone(basis),
            amplitudes: Array1::from_vec(amplitudes),
        };
        state.normalized().expect("gaussian draw has nonzero norm")
    }

    pub fn basis(&self) -> &Arc<ModeBasis> {
        &self.basis
    }

    pub fn amplitudes(&self) -> ArrayView1<'_, Complex64> {
        self.amplitudes.view()
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amplitudes[index]
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Rescaled copy with norm 1.
    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n <= 0.0 || !n.is_finite() {
            return Err(Error::NotNormalized { defect: 1.0 });
        }
        let inv = Complex64::new(1.0 / n, 0.0);
        Ok(StateVector {
            basis: Arc::clone(&self.basis),
            amplitudes: self.amplitudes.mapv(|z| z * inv),
        })
    }

    /// Errs unless the norm is within `tol` of 1.
    pub fn check_normalized(&self, tol: f64) -> Result<()> {
        let defect = (self.norm() - 1.0).abs();
        if defect <= tol {
            Ok(())
        } else {
            Err(Error::NotNormalized { defect })
        }
    }

    /// Inner product <self|other>.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64> {
        require_same_basis(&self.basis, &other.basis)?;
        Ok(self
            .amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Expectation <self| op |self>.
    pub fn expectation(&self, op: &LinearOperator) -> Result<Complex64> {
        self.inner(&op.apply(self)?)
    }
}

/// Dense operator over a [`ModeBasis`].
#[derive(Debug, Clone)]
pub struct LinearOperator {
    basis: Arc<ModeBasis>,
    matrix: Array2<Complex64>,
}

impl LinearOperator {
    pub fn identity(basis: &Arc<ModeBasis>) -> Self {
        LinearOperator {
            basis: Arc::clone(basis),
            matrix: Array2::eye(basis.dim()),
        }
    }

    pub fn from_matrix(basis: &Arc<ModeBasis>, matrix: Array2<Complex64>) -> Result<Self> {
        if matrix.nrows() != basis.dim() || matrix.ncols() != basis.dim() {
            return Err(Error::ShapeMismatch {
                expected: format!("{0} x {0}", basis.dim()),
                got: format!("{} x {}", matrix.nrows(), matrix.ncols()),
            });
        }
        Ok(LinearOperator {
            basis: Arc::clone(basis),
            matrix,
        })
    }

    /// Diagonal operator from per-basis-element values.
    pub fn from_diagonal(basis: &Arc<ModeBasis>, diagonal: &[Complex64]) -> Result<Self> {
        if diagonal.len() != basis.dim() {
            return Err(Error::ShapeMismatch {
                expected: format!("{} diagonal entries", basis.dim()),
                got: format!("{}", diagonal.len()),
            });
        }
        let mut matrix = Array2::zeros((basis.dim(), basis.dim()));
        for (i, &d) in diagonal.iter().enumerate() {
            matrix[(i, i)] = d;
        }
        Ok(LinearOperator {
            basis: Arc::clone(basis),
            matrix,
        })
    }

    pub fn basis(&self) -> &Arc<ModeBasis> {
        &self.basis
    }

    pub fn matrix(&self) -> &Array2<Complex64> {
        &self.matrix
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        LinearOperator {
            basis: Arc::clone(&self.basis),
            matrix: linalg::adjoint(&self.matrix),
        }
    }

    /// Matrix product self * other (apply `other` first).
    pub fn compose(&self, other: &LinearOperator) -> Result<Self> {
        require_same_basis(&self.basis, &other.basis)?;
        Ok(LinearOperator {
            basis: Arc::clone(&self.basis),
            matrix: self.matrix.dot(&other.matrix),
        })
    }

    pub fn add(&self, other: &LinearOperator) -> Result<Self> {
        require_same_basis(&self.basis, &other.basis)?;
        Ok(LinearOperator {
            basis: Arc::clone(&self.basis),
            matrix: &self.matrix + &other.matrix,
        })
    }

    pub fn sub(&self, other: &LinearOperator) -> Result<Self> {
        require_same_basis(&self.basis, &other.basis)?;
        Ok(LinearOperator {
            basis: Arc::clone(&self.basis),
            matrix: &self.matrix - &other.matrix,
        })
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        LinearOperator {
            basis: Arc::clone(&self.basis),
            matrix: self.matrix.mapv(|z| z * factor),
        }
    }

    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        require_same_basis(&self.basis, &state.basis)?;
        Ok(StateVector {
            basis: Arc::clone(&self.basis),
            amplitudes: self.matrix.dot(&state.amplitudes),
        })
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.diag().iter().sum()
    }

    /// Largest |self - other| entry; for cross-route comparisons.
    pub fn max_abs_diff(&self, other: &LinearOperator) -> Result<f64> {
        require_same_basis(&self.basis, &other.basis)?;
        Ok(linalg::max_abs_entry(&(&self.matrix - &other.matrix)))
    }

    /// Largest |self - self^H| entry.
    pub fn hermitian_defect(&self) -> f64 {
        linalg::hermitian_defect(&self.matrix)
    }
}

/// Annihilation operator on `mode`: <n-1| a |n> = sqrt(n), a|0> = 0.
pub fn annihilation_op(basis: &Arc<ModeBasis>, mode: usize) -> Result<LinearOperator> {
    basis.check_mode(mode)?;
    let dim = basis.dim();
    let stride = basis.strides[mode];
    let mut matrix = Array2::zeros((dim, dim));
    for col in 0..dim {
        let n = basis.occupation(col, mode);
        if n > 0 {
            matrix[(col - stride, col)] = Complex64::new((n as f64).sqrt(), 0.0);
        }
    }
    Ok(LinearOperator {
        basis: Arc::clone(basis),
        matrix,
    })
}

/// Creation operator on `mode`: exact conjugate transpose of
/// [`annihilation_op`]. Truncation edge: a'|N_max> = 0.
pub fn creation_op(basis: &Arc<ModeBasis>, mode: usize) -> Result<LinearOperator> {
    Ok(annihilation_op(basis, mode)?.adjoint())
}

/// Number operator on `mode`: diagonal of occupations; equals a'a exactly,
/// including at the cutoff.
pub fn number_op(basis: &Arc<ModeBasis>, mode: usize) -> Result<LinearOperator> {
    basis.check_mode(mode)?;
    let diagonal: Vec<Complex64> = (0..basis.dim())
        .map(|i| Complex64::new(basis.occupation(i, mode) as f64, 0.0))
        .collect();
    LinearOperator::from_diagonal(basis, &diagonal)
}

/// Free-field Hamiltonian sum_k hbar w_k (n_k + 1/2). Energy is in joules
/// under SI units and dimensionless under natural units.
pub fn hamiltonian_op(basis: &Arc<ModeBasis>, units: &Units) -> LinearOperator {
    let diagonal: Vec<Complex64> = (0..basis.dim())
        .map(|i| {
            let e: f64 = (0..basis.mode_count())
                .map(|k| {
                    units.hbar * basis.frequency(k) * (basis.occupation(i, k) as f64 + 0.5)
                })
                .sum();
            Complex64::new(e, 0.0)
        })
        .collect();
    LinearOperator::from_diagonal(basis, &diagonal).expect("diagonal length = dim")
}

/// Zero-point energy (1/2) sum_k hbar w_k.
pub fn vacuum_energy(basis: &ModeBasis, units: &Units) -> f64 {
    0.5 * units.hbar * basis.frequencies().iter().sum::<f64>()
}

/// a'(mode)|vacuum>, normalized: the one-photon basis state of `mode`.
pub fn single_photon_state(basis: &Arc<ModeBasis>, mode: usize) -> Result<StateVector> {
    basis.check_mode(mode)?;
    let mut occ = vec![0usize; basis.mode_count()];
    occ[mode] = 1;
    StateVector::basis_state(basis, &occ)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn basis_dimensions() {
        // Smallest basis: one mode, cutoff 1 -> {|0>, |1>}.
        assert_eq!(ModeBasis::new(1, 1, &[1.0]).unwrap().dim(), 2);
        // Two modes at cutoff 1 -> (1+1)^2.
        assert_eq!(ModeBasis::new(2, 1, &[1.0, 2.0]).unwrap().dim(), 4);
        // Occupations 0..5 on one mode.
        assert_eq!(ModeBasis::new(1, 5, &[1.0]).unwrap().dim(), 6);
    }

    #[test]
    fn basis_rejects_bad_input() {
        assert!(matches!(
            ModeBasis::new(0, 1, &[]),
            Err(Error::InvalidSize(_))
        ));
        assert!(matches!(
            ModeBasis::new(1, 1, &[0.0]),
            Err(Error::NonPositiveFrequency(_))
        ));
        assert!(matches!(
            ModeBasis::new(1, 1, &[-3.0]),
            Err(Error::NonPositiveFrequency(_))
        ));
        assert!(matches!(
            ModeBasis::new(2, 1, &[1.0]),
            Err(Error::ShapeMismatch { .. })
        ));
        // 2^25 elements: 25 modes at cutoff 1 exceeds the 2^24 cap.
        let freqs = vec![1.0; 25];
        assert!(matches!(
            ModeBasis::new(25, 1, &freqs),
            Err(Error::BasisTooLarge { .. })
        ));
    }

    #[test]
    fn lexicographic_index_round_trip() {
        let basis = ModeBasis::new(3, 2, &[1.0, 2.0, 3.0]).unwrap();
        // Mode 0 slowest: |1,0,2> sits at 1*9 + 0*3 + 2 = 11.
        assert_eq!(basis.index_of(&[1, 0, 2]).unwrap(), 11);
        assert_eq!(basis.occupations(11), vec![1, 0, 2]);
        for idx in 0..basis.dim() {
            assert_eq!(basis.index_of(&basis.occupations(idx)).unwrap(), idx);
        }
    }

    #[test]
    fn basis_order_is_deterministic() {
        let a = ModeBasis::new(3, 2, &[1.0, 2.0, 3.0]).unwrap();
        let b = ModeBasis::new(3, 2, &[1.0, 2.0, 3.0]).unwrap();
        assert!(a.matches(&b));
        for idx in 0..a.dim() {
            assert_eq!(a.occupations(idx), b.occupations(idx));
        }
    }

    #[test]
    fn annihilation_ladder_entries() {
        let basis = ModeBasis::shared(1, 5, &[1.0]).unwrap();
        let a = annihilation_op(&basis, 0).unwrap();
        // a|0> = 0.
        let vac = StateVector::vacuum(&basis);
        assert_eq!(a.apply(&vac).unwrap().norm(), 0.0);
        // a|1> = |0>.
        let one = StateVector::basis_state(&basis, &[1]).unwrap();
        let a_one = a.apply(&one).unwrap();
        assert_eq!(a_one.amplitude(0), re(1.0));
        assert_relative_eq!(a_one.norm(), 1.0, max_relative = 1e-15);
        // a|3> = sqrt(3)|2>.
        let three = StateVector::basis_state(&basis, &[3]).unwrap();
        let a_three = a.apply(&three).unwrap();
        assert_relative_eq!(a_three.amplitude(2).re, 3f64.sqrt(), max_relative = 1e-15);
    }

    #[test]
    fn creation_builds_up_from_vacuum() {
        let basis = ModeBasis::shared(1, 3, &[1.0]).unwrap();
        let ad = creation_op(&basis, 0).unwrap();
        // a'|0> = |1>.
        let one = ad.apply(&StateVector::vacuum(&basis)).unwrap();
        assert_eq!(one.amplitude(1), re(1.0));
        // (a')^2|0> / sqrt(2!) = |2>.
        let two = ad.apply(&one).unwrap();
        assert_relative_eq!(two.amplitude(2).re, 2f64.sqrt(), max_relative = 1e-15);
        let normalized = two.normalized().unwrap();
        assert_abs_diff_eq!((normalized.amplitude(2) - re(1.0)).norm(), 0.0, epsilon = 1e-15);
        // Truncation edge: a'|N_max> = 0.
        let top = StateVector::basis_state(&basis, &[3]).unwrap();
        assert_eq!(ad.apply(&top).unwrap().norm(), 0.0);
    }

    #[test]
    fn creation_is_exact_adjoint() {
        let basis = ModeBasis::shared(2, 2, &[1.0, 1.5]).unwrap();
        for mode in 0..2 {
            let a = annihilation_op(&basis, mode).unwrap();
            let ad = creation_op(&basis, mode).unwrap();
            // Entrywise exact, not approximate.
            assert_eq!(ad.max_abs_diff(&a.adjoint()).unwrap(), 0.0);
        }
    }

    #[test]
    fn number_op_matches_product_exactly() {
        let basis = ModeBasis::shared(2, 2, &[1.0, 2.0]).unwrap();
        for mode in 0..2 {
            let n = number_op(&basis, mode).unwrap();
            let prod = creation_op(&basis, mode)
                .unwrap()
                .compose(&annihilation_op(&basis, mode).unwrap())
                .unwrap();
            // sqrt(n)^2 reproduces n only to rounding; the direct diagonal is
            // the exact one.
            assert!(n.max_abs_diff(&prod).unwrap() < 1e-12);
        }
    }

    #[test]
    fn number_eigenvalues_and_superposition() {
        let basis = ModeBasis::shared(1, 4, &[1.0]).unwrap();
        let n_op = number_op(&basis, 0).unwrap();
        for n in 0..=4usize {
            let state = StateVector::basis_state(&basis, &[n]).unwrap();
            let exp = state.expectation(&n_op).unwrap();
            assert_abs_diff_eq!(exp.re, n as f64, epsilon = 1e-12);
            assert_abs_diff_eq!(exp.im, 0.0, epsilon = 1e-15);
        }
        let s = 0.5_f64.sqrt();
        let sup = StateVector::from_amplitudes(
            &basis,
            vec![re(s), re(s), re(0.0), re(0.0), re(0.0)],
        )
        .unwrap();
        assert_abs_diff_eq!(sup.expectation(&n_op).unwrap().re, 0.5, epsilon = 1e-15);
    }

    #[test]
    fn commutator_is_identity_below_cutoff() {
        let basis = ModeBasis::shared(2, 2, &[1.0, 2.0]).unwrap();
        for mode in 0..2 {
            let a = annihilation_op(&basis, mode).unwrap();
            let ad = creation_op(&basis, mode).unwrap();
            let comm = a.compose(&ad).unwrap().sub(&ad.compose(&a).unwrap()).unwrap();
            let dev = comm.sub(&LinearOperator::identity(&basis)).unwrap();
            let m = dev.matrix();
            for i in 0..basis.dim() {
                for j in 0..basis.dim() {
                    let below_cutoff = basis.occupation(i, mode) < basis.cutoff()
                        && basis.occupation(j, mode) < basis.cutoff();
                    if below_cutoff {
                        assert!(m[(i, j)].norm() < 1e-12);
                    }
                }
            }
            // Truncation artifact: [a, a']|N_max> = -N_max |N_max>, since
            // a a' annihilates the top rung. Documented, not an error.
            for i in 0..basis.dim() {
                if basis.occupation(i, mode) == basis.cutoff() {
                    let expected = -(basis.cutoff() as f64);
                    assert_abs_diff_eq!(comm.matrix()[(i, i)].re, expected, epsilon = 1e-12);
                }
            }
        }
    }

    #[test]
    fn hamiltonian_diagonal_and_energies() {
        let units = Units::natural();
        let basis = ModeBasis::shared(1, 3, &[2.0]).unwrap();
        let h = hamiltonian_op(&basis, &units);
        // Vacuum eigenvalue hbar*w/2.
        assert_abs_diff_eq!(h.matrix()[(0, 0)].re, 1.0, epsilon = 1e-15);
        // |n> -> hbar w (n + 1/2).
        for n in 0..=3usize {
            let state = StateVector::basis_state(&basis, &[n]).unwrap();
            assert_relative_eq!(
                state.expectation(&h).unwrap().re,
                2.0 * (n as f64 + 0.5),
                max_relative = 1e-14
            );
        }
        // Off-diagonals identically zero.
        for i in 0..basis.dim() {
            for j in 0..basis.dim() {
                if i != j {
                    assert_eq!(h.matrix()[(i, j)], re(0.0));
                }
            }
        }
        // All eigenvalues (= diagonal) at or above the zero-point energy.
        let floor = vacuum_energy(&basis, &units);
        for i in 0..basis.dim() {
            assert!(h.matrix()[(i, i)].re >= floor - 1e-15);
        }
    }

    #[test]
    fn two_mode_hamiltonian_example() {
        let units = Units::natural();
        let basis = ModeBasis::shared(2, 1, &[1.0, 2.0]).unwrap();
        let h = hamiltonian_op(&basis, &units);
        let state = StateVector::basis_state(&basis, &[1, 1]).unwrap();
        // hbar w1 (3/2) + hbar w2 (3/2) with w1=1, w2=2.
        assert_relative_eq!(state.expectation(&h).unwrap().re, 4.5, max_relative = 1e-14);
    }

    #[test]
    fn vacuum_energy_sums_half_quanta() {
        let units = Units::natural();
        let basis = ModeBasis::new(3, 1, &[1.0, 2.0, 3.0]).unwrap();
        assert_relative_eq!(vacuum_energy(&basis, &units), 3.0, max_relative = 1e-15);
        let si = Units::si();
        let b1 = ModeBasis::new(1, 1, &[1.0e15]).unwrap();
        assert_relative_eq!(
            vacuum_energy(&b1, &si),
            0.5 * 1.054_571_817e-34 * 1.0e15,
            max_relative = 1e-15
        );
    }

    #[test]
    fn single_photon_state_properties() {
        let basis = ModeBasis::shared(2, 2, &[1.0, 2.0]).unwrap();
        let s = single_photon_state(&basis, 1).unwrap();
        assert_relative_eq!(s.norm(), 1.0, max_relative = 1e-15);
        let n1 = number_op(&basis, 1).unwrap();
        assert_abs_diff_eq!(s.expectation(&n1).unwrap().re, 1.0, epsilon = 1e-15);
        let n0 = number_op(&basis, 0).unwrap();
        assert_abs_diff_eq!(s.expectation(&n0).unwrap().re, 0.0, epsilon = 1e-15);
        // Equals a'|0> explicitly.
        let built = creation_op(&basis, 1)
            .unwrap()
            .apply(&StateVector::vacuum(&basis))
            .unwrap();
        assert_abs_diff_eq!(
            (s.inner(&built).unwrap() - re(1.0)).norm(),
            0.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn basis_mismatch_is_rejected() {
        let b1 = ModeBasis::shared(1, 1, &[1.0]).unwrap();
        let b2 = ModeBasis::shared(1, 1, &[2.0]).unwrap();
        let s1 = StateVector::vacuum(&b1);
        let op2 = number_op(&b2, 0).unwrap();
        assert!(matches!(op2.apply(&s1), Err(Error::BasisMismatch)));
    }

    #[test]
    fn random_state_is_normalized_and_seeded() {
        let basis = ModeBasis::shared(2, 2, &[1.0, 2.0]).unwrap();
        let s1 = StateVector::random(&basis, 7);
        let s2 = StateVector::random(&basis, 7);
        let s3 = StateVector::random(&basis, 8);
        assert_relative_eq!(s1.norm(), 1.0, max_relative = 1e-12);
        assert_eq!(s1.amplitudes().to_vec(), s2.amplitudes().to_vec());
        assert_ne!(s1.amplitudes().to_vec(), s3.amplitudes().to_vec());
    }
}
