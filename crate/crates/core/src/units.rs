//! Physical constants and the unit system threaded through energy- and
//! length-valued results.
//!
//! Everything internal works in angular frequency omega; wavelength and
//! wavenumber inputs are converted on ingestion (k = omega / c,
//! omega = 2 pi c / lambda). Natural units set hbar = c = 1 so the same
//! formulas serve dimensionless test cases.

use serde::{Deserialize, Serialize};

/// Speed of light in vacuum, m/s (exact).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Reduced Planck constant, J s (CODATA).
pub const HBAR: f64 = 1.054_571_817e-34;

/// Which constant set a [`Units`] value was built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UnitSystem {
    Si,
    Natural,
}

/// Constant set used wherever hbar or c enters a formula.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Units {
    pub system: UnitSystem,
    pub hbar: f64,
    pub c: f64,
}

impl Units {
    /// SI constants: hbar in J s, c in m/s.
    pub fn si() -> Self {
        Units {
            system: UnitSystem::Si,
            hbar: HBAR,
            c: SPEED_OF_LIGHT,
        }
    }

    /// Natural units: hbar = c = 1.
    pub fn natural() -> Self {
        Units {
            system: UnitSystem::Natural,
            hbar: 1.0,
            c: 1.0,
        }
    }

    /// Same system tag with a rescaled hbar. Exists so scaling laws
    /// (for instance displacement ~ sqrt(hbar)) can be probed directly.
    pub fn with_hbar(mut self, hbar: f64) -> Self {
        self.hbar = hbar;
        self
    }

    pub fn is_si(&self) -> bool {
        self.system == UnitSystem::Si
    }
}

impl From<UnitSystem> for Units {
    fn from(system: UnitSystem) -> Self {
        match system {
            UnitSystem::Si => Units::si(),
            UnitSystem::Natural => Units::natural(),
        }
    }
}

/// Angular frequency of light with vacuum wavelength `lambda`.
pub fn wavelength_to_omega(lambda: f64, units: &Units) -> f64 {
    2.0 * std::f64::consts::PI * units.c / lambda
}

/// Wavenumber for angular frequency `omega`: k = omega / c.
pub fn omega_to_wavenumber(omega: f64, units: &Units) -> f64 {
    omega / units.c
}
