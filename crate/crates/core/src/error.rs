//! Error type shared across the crate.
//!
//! Construction errors (bad dimensions, nonpositive frequencies) and physics
//! guards (normalization, positivity, undefined quantities) are separate
//! variants so callers can map them to distinct exit paths.

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Requested Fock basis would exceed the dense-storage cap.
    #[error("basis dimension {dim} exceeds cap {cap}")]
    BasisTooLarge { dim: u128, cap: u128 },

    /// Mode count, cutoff, bin count or similar size argument is unusable.
    #[error("invalid size: {0}")]
    InvalidSize(String),

    /// Mode index out of range for the basis.
    #[error("mode index {mode} out of range for {mode_count} modes")]
    InvalidMode { mode: usize, mode_count: usize },

    /// A mode frequency (or grid frequency) is not strictly positive.
    #[error("frequency must be strictly positive, got {0}")]
    NonPositiveFrequency(f64),

    /// A scale-type parameter (sigma, intensity, reflectivity, ...) is out of range.
    #[error("invalid parameter {name}: {value}")]
    InvalidParameter { name: &'static str, value: f64 },

    /// Two objects built over different bases were combined.
    #[error("operands were built over different bases")]
    BasisMismatch,

    /// Vector or matrix shape does not match the basis dimension.
    #[error("shape mismatch: expected {expected}, got {got}")]
    ShapeMismatch { expected: String, got: String },

    /// State norm differs from 1 beyond tolerance.
    #[error("state is not normalized: |norm - 1| = {defect:.3e}")]
    NotNormalized { defect: f64 },

    /// Mixture weights are negative or do not sum to 1.
    #[error("mixture probabilities must be nonnegative and sum to 1 (sum = {sum})")]
    BadProbabilities { sum: f64 },

    /// Matrix offered as a density operator is not Hermitian.
    #[error("density operator is not Hermitian: max |rho - rho^H| = {defect:.3e}")]
    NotHermitian { defect: f64 },

    /// Density operator trace differs from 1 beyond tolerance.
    #[error("density operator trace is {trace}, expected 1")]
    BadTrace { trace: f64 },

    /// Density operator has a negative eigenvalue beyond tolerance.
    #[error("density operator is not positive semidefinite: min eigenvalue {min_eigenvalue:.3e}")]
    NotPositive { min_eigenvalue: f64 },

    /// Both-path overlap is undefined when one path carries no amplitude.
    #[error("single-path state: P_Q undefined")]
    SinglePath,

    /// Fringe trace carries no signal, so visibility is undefined.
    #[error("fringe visibility undefined: max + min intensity is not positive")]
    FlatFringe,

    /// Sampled correlation data does not reach far enough into the tails.
    #[error("samples do not cover the correlation tail: {0}")]
    InsufficientCoverage(String),

    /// Operation is only meaningful with SI constants.
    #[error("operation requires SI units")]
    RequiresSiUnits,

    /// Two supposedly equivalent computation routes disagreed.
    #[error("internal cross-check failed: {0}")]
    CrossCheckFailed(String),
}
