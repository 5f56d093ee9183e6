//! Quantum and classical first-order coherence for low-coherence
//! interferometry.
//!
//! The crate models a Michelson-style interferometer twice over and insists
//! the two descriptions agree:
//!
//! ```text
//!             spectra ----- wavepackets ------+
//!                |                            |
//!  fock ---- operators ---- interferometer ---+--> g1(tau), fringes, A-scans
//!                |                            |
//!             density ----- indistinguishability
//!                                             |
//!           classical ----- spectra-only route+
//! ```
//!
//! * [`fock`]: truncated multimode Fock spaces, ladder/number/Hamiltonian
//!   operators as dense complex matrices.
//! * [`spectra`]: Gaussian spectral amplitudes, frequency grids, single-photon
//!   wavepackets.
//! * [`density`]: density operators, two-path single-photon states, and the
//!   degree of indistinguishability P_Q.
//! * [`interferometer`]: beam-splitter conventions, detection rates, fringe
//!   visibility, and the quantum first-order correlation g1.
//! * [`classical`]: power spectra, the classical g1, coherence time/length,
//!   and layered-sample interferograms.
//! * [`noise`]: the standard quantum limit, the momentum-difference operator
//!   for a photon-pressure readout, Kerr-phase detector operators, and photon
//!   counting statistics.
//!
//! Quantum results are cross-checked against closed forms wherever one
//! exists; the integration suite asserts the quantum and classical g1 routes
//! agree to 1e-6 over broadband Gaussian sources.
//!
//! With the default `parallel` feature, sweeps fan out with rayon; outputs
//! are index-ordered and bitwise identical to the sequential fallback.

pub mod classical;
pub mod density;
pub mod error;
pub mod exec;
pub mod fock;
pub mod interferometer;
pub mod linalg;
pub mod noise;
pub mod spectra;
pub mod units;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use units::{UnitSystem, Units};
