use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UnitSystem {
    /// hbar = c = k_B = G = 1.
    Natural,
    Si,
}

/// Fundamental constants used by every formula in the crate.
///
/// In natural mode frequencies are dimensionless and the Planck mass and
/// length are both one. In SI mode frequencies are in rad/s.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Constants {
    pub system: UnitSystem,
    /// Reduced Planck constant, J s.
    pub hbar: f64,
    /// Speed of light, m/s.
    pub c: f64,
    /// Boltzmann constant, J/K.
    pub k_b: f64,
    /// Newton constant, m^3 kg^-1 s^-2.
    pub g: f64,
}

impl Constants {
    pub const NATURAL: Constants = Constants {
        system: UnitSystem::Natural,
        hbar: 1.0,
        c: 1.0,
        k_b: 1.0,
        g: 1.0,
    };

    /// CODATA 2018.
    pub const SI: Constants = Constants {
        system: UnitSystem::Si,
        hbar: 1.054_571_817e-34,
        c: 299_792_458.0,
        k_b: 1.380_649e-23,
        g: 6.674_30e-11,
    };

    /// Electron mass, kg (CODATA 2018).
    pub const ELECTRON_MASS_SI: f64 = 9.109_383_701_5e-31;

    pub fn for_system(system: UnitSystem) -> Constants {
        match system {
            UnitSystem::Natural => Constants::NATURAL,
            UnitSystem::Si => Constants::SI,
        }
    }

    /// Compton wavelength hbar/(m c).
    pub fn compton_wavelength(&self, mass: f64) -> f64 {
        self.hbar / (mass * self.c)
    }
}

impl Default for Constants {
    fn default() -> Self {
        Constants::NATURAL
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn electron_compton_wavelength() {
        let lc = Constants::SI.compton_wavelength(Constants::ELECTRON_MASS_SI);
        assert!((lc / 3.861_592_679_6e-13 - 1.0).abs() < 1e-9);
    }

    #[test]
    fn natural_constants_are_unity() {
        let k = Constants::for_system(UnitSystem::Natural);
        assert_eq!((k.hbar, k.c, k.k_b, k.g), (1.0, 1.0, 1.0, 1.0));
    }
}
