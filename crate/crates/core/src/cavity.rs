//! Fabry-Perot cavity: intensity buildup, motional resonances and photon
//! emission by oscillating mirrors.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::{Constants, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cavity {
    r1: f64,
    r2: f64,
    length: f64,
    tau: f64,
}

impl Cavity {
    /// `r1`, `r2` are amplitude reflectivities in `[0, 1)`.
    pub fn new(r1: f64, r2: f64, length: f64, k: &Constants) -> Result<Self> {
        for (name, r) in [("r1", r1), ("r2", r2)] {
            if !(0.0..1.0).contains(&r) {
                return Err(Error::invalid(format!("{name} must lie in [0, 1), got {r}")));
            }
        }
        if !(length > 0.0 && length.is_finite()) {
            return Err(Error::invalid(format!("length must be positive, got {length}")));
        }
        Ok(Cavity { r1, r2, length, tau: length / k.c })
    }

    pub fn r1(&self) -> f64 {
        self.r1
    }

    pub fn r2(&self) -> f64 {
        self.r2
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    /// One-way propagation time `L / c`.
    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// Round-trip amplitude factor `r1 r2`.
    pub fn round_trip(&self) -> f64 {
        self.r1 * self.r2
    }

    pub fn finesse(&self) -> f64 {
        let r = self.round_trip();
        PI * r.sqrt() / (1.0 - r)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MotionMode {
    /// Mirrors move in opposition, changing the length.
    Elongation,
    /// Mirrors move together.
    Translation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    fn of(n: u64) -> Parity {
        if n % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Mirror motion that excites resonances of this parity.
    pub fn mode(&self) -> MotionMode {
        match self {
            Parity::Even => MotionMode::Elongation,
            Parity::Odd => MotionMode::Translation,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MotionSpec {
    pub mode: MotionMode,
    pub omega: f64,
    pub amplitude: f64,
    pub duration: f64,
}

impl MotionSpec {
    pub fn new(mode: MotionMode, omega: f64, amplitude: f64, duration: f64) -> Result<Self> {
        if !(omega > 0.0 && omega.is_finite()) {
            return Err(Error::invalid(format!("drive frequency must be positive, got {omega}")));
        }
        if !(amplitude >= 0.0 && amplitude.is_finite()) {
            return Err(Error::invalid(format!("amplitude must be non-negative, got {amplitude}")));
        }
        if !(duration > 0.0 && duration.is_finite()) {
            return Err(Error::invalid(format!("duration must be positive, got {duration}")));
        }
        Ok(MotionSpec { mode, omega, amplitude, duration })
    }

    /// Peak mirror velocity `omega a`.
    pub fn peak_velocity(&self) -> f64 {
        self.omega * self.amplitude
    }
}

/// Intensity buildup `(1 - r^2) / (1 - 2 r cos(2 omega tau) + r^2)`.
pub fn airy_buildup(cav: &Cavity, omega: f64) -> f64 {
    let r = cav.round_trip();
    (1.0 - r * r) / (1.0 - 2.0 * r * (2.0 * omega * cav.tau).cos() + r * r)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Resonance {
    pub index: u64,
    pub omega: f64,
    pub parity: Parity,
}

/// Motional resonances `omega_n = n pi / tau` for `n = 2..=n_max`.
pub fn resonance_frequencies(cav: &Cavity, n_max: u64) -> Result<Vec<Resonance>> {
    if n_max < 2 {
        return Err(Error::invalid(format!("n_max must be at least 2, got {n_max}")));
    }
    Ok((2..=n_max)
        .map(|n| Resonance { index: n, omega: n as f64 * PI / cav.tau, parity: Parity::of(n) })
        .collect())
}

/// Relative tolerance for matching a drive frequency to a resonance.
pub const RESONANCE_TOLERANCE: f64 = 1e-6;

/// Resonance excited by `motion`, if its frequency and parity match one.
pub fn matching_resonance(cav: &Cavity, motion: &MotionSpec) -> Result<Resonance> {
    let spacing = PI / cav.tau;
    let n = (motion.omega / spacing).round();
    let omega_n = n * spacing;
    if n < 2.0 || (motion.omega - omega_n).abs() > RESONANCE_TOLERANCE * omega_n {
        return Err(Error::domain(format!(
            "drive frequency {} is not a motional resonance n pi / tau with n >= 2 (spacing {spacing})",
            motion.omega
        )));
    }
    let parity = Parity::of(n as u64);
    if parity.mode() != motion.mode {
        return Err(Error::domain(format!(
            "resonance n = {n} is {parity:?} and couples to {:?} motion, not {:?}",
            parity.mode(),
            motion.mode
        )));
    }
    Ok(Resonance { index: n as u64, omega: omega_n, parity })
}

/// Photon number `(omega T / 2 pi) (v / c)^2 F` radiated by resonant mirror
/// motion. Order-of-magnitude estimate with unit prefactor.
pub fn radiated_photons(cav: &Cavity, motion: &MotionSpec, k: &Constants) -> Result<f64> {
    matching_resonance(cav, motion)?;
    let beta = motion.peak_velocity() / k.c;
    if beta >= 1.0 {
        return Err(Error::kinematics(format!("peak mirror velocity is {beta} c")));
    }
    let cycles = motion.omega * motion.duration / (2.0 * PI);
    Ok(cycles * beta * beta * cav.finesse())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const N: Constants = Constants::NATURAL;

    #[test]
    fn buildup_values() {
        let open = Cavity::new(0.0, 0.5, 1.0, &N).unwrap();
        assert_eq!(airy_buildup(&open, 0.3), 1.0);
        let cav = Cavity::new(0.95, 0.9 / 0.95, 1.0, &N).unwrap();
        let r = cav.round_trip();
        assert_relative_eq!(airy_buildup(&cav, PI), 19.0, max_relative = 1e-12);
        assert_relative_eq!(airy_buildup(&cav, PI), (1.0 + r) / (1.0 - r), max_relative = 1e-12);
        assert_relative_eq!(airy_buildup(&cav, PI / 2.0), (1.0 - r) / (1.0 + r), max_relative = 1e-12);
    }

    #[test]
    fn rejects_bad_cavities() {
        assert!(Cavity::new(1.0, 0.5, 1.0, &N).is_err());
        assert!(Cavity::new(-0.1, 0.5, 1.0, &N).is_err());
        assert!(Cavity::new(0.5, 0.5, 0.0, &N).is_err());
    }

    #[test]
    fn resonance_ladder() {
        let cav = Cavity::new(0.5, 0.5, 1.0, &N).unwrap();
        let res = resonance_frequencies(&cav, 3).unwrap();
        assert_relative_eq!(res[0].omega, 2.0 * PI);
        assert_eq!(res[0].parity, Parity::Even);
        assert_relative_eq!(res[1].omega, 3.0 * PI);
        assert_eq!(res[1].parity, Parity::Odd);
        assert!(matches!(resonance_frequencies(&cav, 1), Err(Error::InvalidInput(_))));

        let si = Cavity::new(0.5, 0.5, 1.0, &Constants::SI).unwrap();
        let w2 = resonance_frequencies(&si, 2).unwrap()[0].omega;
        assert_relative_eq!(w2, 1.8836e9, max_relative = 1e-4);
    }

    #[test]
    fn photon_gate() {
        let cav = Cavity::new(0.9, 0.9, 1.0, &N).unwrap();
        let ok = MotionSpec::new(MotionMode::Elongation, 2.0 * PI, 0.01, 10.0).unwrap();
        assert!(radiated_photons(&cav, &ok, &N).unwrap() > 0.0);
        let wrong_mode = MotionSpec { mode: MotionMode::Translation, ..ok };
        assert!(matches!(radiated_photons(&cav, &wrong_mode, &N), Err(Error::Domain(_))));
        let off = MotionSpec { omega: 2.0 * PI * (1.0 + 1e-5), ..ok };
        assert!(matches!(radiated_photons(&cav, &off, &N), Err(Error::Domain(_))));
        let fundamental = MotionSpec { omega: PI, mode: MotionMode::Translation, ..ok };
        assert!(matches!(radiated_photons(&cav, &fundamental, &N), Err(Error::Domain(_))));
        let still = MotionSpec { amplitude: 0.0, ..ok };
        assert_eq!(radiated_photons(&cav, &still, &N).unwrap(), 0.0);
        let fast = MotionSpec { amplitude: 0.2, ..ok };
        assert!(matches!(radiated_photons(&cav, &fast, &N), Err(Error::Kinematics(_))));
    }
}
