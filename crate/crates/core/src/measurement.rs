//! Noise budget of an interferometric position measurement.
//!
//! A probe of mean wave-vector `K0` reads the mirror position through its
//! phase and kicks it through its intensity. At one frequency the measured
//! noise is
//!
//! ```text
//! sigma = s_pp / (4 K0^2) + 4 hbar^2 K0^2 |chi|^2 s_II + 2 hbar Re(chi) s_pI
//! ```
//!
//! with the probe constrained by `s_pp s_II - s_pI^2 >= 1/4`. Writing
//! `u = s_pp / 4K0^2` and `v = 4 hbar^2 K0^2 |chi|^2 s_II`, a saturating probe
//! has `u v = hbar^2 |chi|^2 (1/4 + s_pI^2)`, so `u + v >= 2 hbar |chi|
//! sqrt(1/4 + s_pI^2)`. Minimizing over the correlation then gives
//! `s_pI = -Re(chi) / (2 |Im chi|)` and the noise `hbar |Im chi|`. Without
//! correlations the same bound gives `hbar |chi|`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Constants, Error, Result};

/// Probe field statistics at one analysis frequency.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbeState {
    pub k0: f64,
    pub sigma_phiphi: f64,
    pub sigma_ii: f64,
    pub sigma_phii: f64,
}

impl ProbeState {
    pub fn new(k0: f64, sigma_phiphi: f64, sigma_ii: f64, sigma_phii: f64) -> Result<Self> {
        let probe = ProbeState { k0, sigma_phiphi, sigma_ii, sigma_phii };
        probe.validate()?;
        Ok(probe)
    }

    /// Coherent probe: `s_pp = s_II = 1/2`, uncorrelated.
    pub fn vacuum(k0: f64) -> Result<Self> {
        Self::new(k0, 0.5, 0.5, 0.0)
    }

    pub fn determinant(&self) -> f64 {
        self.sigma_phiphi * self.sigma_ii - self.sigma_phii * self.sigma_phii
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.k0 > 0.0 && self.k0.is_finite()) {
            return Err(Error::invalid(format!("probe wave-vector must be positive, got {}", self.k0)));
        }
        if !(self.sigma_phiphi >= 0.0 && self.sigma_ii >= 0.0) || !self.sigma_phii.is_finite() {
            return Err(Error::invalid("probe noise densities must be non-negative and finite"));
        }
        // rounding in the determinant grows with the squeezing
        let slack = 8.0 * f64::EPSILON * (self.sigma_phiphi * self.sigma_ii).max(1.0);
        if self.determinant() < 0.25 - slack {
            return Err(Error::invalid(format!(
                "probe violates the Heisenberg constraint: s_pp s_II - s_pI^2 = {} < 1/4",
                self.determinant()
            )));
        }
        Ok(())
    }

    /// Squeezing of the smaller covariance eigenvalue below the vacuum 1/2,
    /// in dB.
    pub fn squeezing_db(&self) -> f64 {
        let (a, b, c) = (self.sigma_phiphi, self.sigma_ii, self.sigma_phii);
        let half_sum = 0.5 * (a + b);
        let radius = (0.25 * (a - b) * (a - b) + c * c).sqrt();
        // product of eigenvalues is the determinant; avoids cancellation
        let smallest = self.determinant() / (half_sum + radius);
        10.0 * (0.5 / smallest).log10()
    }
}

/// Damped harmonic oscillator, `chi = 1 / (m (omega0^2 - omega^2 - i gamma omega))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MechanicalSusceptibility {
    pub mass: f64,
    pub omega0: f64,
    pub gamma: f64,
}

impl MechanicalSusceptibility {
    pub fn new(mass: f64, omega0: f64, gamma: f64) -> Result<Self> {
        if !(mass > 0.0 && mass.is_finite()) {
            return Err(Error::invalid(format!("mass must be positive, got {mass}")));
        }
        if !(omega0 >= 0.0 && omega0.is_finite()) {
            return Err(Error::invalid(format!("omega0 must be non-negative, got {omega0}")));
        }
        if !(gamma >= 0.0 && gamma.is_finite()) {
            return Err(Error::invalid(format!("damping must be non-negative, got {gamma}")));
        }
        Ok(MechanicalSusceptibility { mass, omega0, gamma })
    }
}

pub fn chi_mech(s: &MechanicalSusceptibility, omega: f64) -> Result<Complex64> {
    let elastic = s.omega0 * s.omega0;
    let inertial = omega * omega;
    let denom = Complex64::new(elastic - inertial, -s.gamma * omega) * s.mass;
    let scale = s.mass * elastic.max(inertial);
    if denom.norm() == 0.0 || denom.norm() <= 1e-12 * scale {
        return Err(Error::singular(format!("undamped resonance at omega = {omega}")));
    }
    Ok(denom.inv())
}

pub fn measured_position_noise(
    probe: &ProbeState,
    s: &MechanicalSusceptibility,
    omega: f64,
    k: &Constants,
) -> Result<f64> {
    probe.validate()?;
    let chi = chi_mech(s, omega)?;
    Ok(noise_for(probe, chi, k))
}

fn noise_for(probe: &ProbeState, chi: Complex64, k: &Constants) -> f64 {
    let k2 = probe.k0 * probe.k0;
    probe.sigma_phiphi / (4.0 * k2)
        + 4.0 * k.hbar * k.hbar * k2 * chi.norm_sqr() * probe.sigma_ii
        + 2.0 * k.hbar * chi.re * probe.sigma_phii
}

/// Standard quantum limit `hbar |chi|`.
pub fn sql_bound(s: &MechanicalSusceptibility, omega: f64, k: &Constants) -> Result<f64> {
    Ok(k.hbar * chi_mech(s, omega)?.norm())
}

/// Ultimate quantum limit `hbar |Im chi|`.
pub fn uql_bound(s: &MechanicalSusceptibility, omega: f64, k: &Constants) -> Result<f64> {
    Ok(k.hbar * chi_mech(s, omega)?.im.abs())
}

/// Wave-vector minimizing the noise for fixed probe densities:
/// `K0^4 = s_pp / (16 hbar^2 |chi|^2 s_II)`.
pub fn optimal_wavevector(sigma_phiphi: f64, sigma_ii: f64, chi_abs: f64, k: &Constants) -> f64 {
    (sigma_phiphi / (16.0 * k.hbar * k.hbar * chi_abs * chi_abs * sigma_ii)).powf(0.25)
}

/// Largest squeezing `optimize_probe` will return.
pub const MAX_SQUEEZING_DB: f64 = 60.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimizedProbe {
    pub probe: ProbeState,
    pub squeezing_db: f64,
    /// Noise reached by the returned probe.
    pub noise: f64,
    /// `hbar |Im chi|`, reached only with unbounded squeezing when
    /// `Re chi` dominates.
    pub ideal_noise: f64,
    pub gap: f64,
    pub capped: bool,
}

/// Heisenberg-saturating probe that minimizes the measured noise.
///
/// The optimum is balanced (`s_pp = s_II`) with correlation
/// `s_pI = -sign(Re chi) (R^2 - 1) / 4R` and `s_pp = (R^2 + 1) / 4R`, where
/// `R = (|chi| + |Re chi|) / |Im chi|` is the squeezing factor. `R` is capped
/// at `MAX_SQUEEZING_DB`.
pub fn optimize_probe(s: &MechanicalSusceptibility, omega: f64, k: &Constants) -> Result<OptimizedProbe> {
    let chi = chi_mech(s, omega)?;
    let abs = chi.norm();
    let ideal = k.hbar * chi.im.abs();
    let r_cap = 10f64.powf(MAX_SQUEEZING_DB / 10.0);
    let r_ideal = (abs + chi.re.abs()) / chi.im.abs();
    let capped = !(r_ideal <= r_cap);
    let r = if capped { r_cap } else { r_ideal };

    let diag = (r * r + 1.0) / (4.0 * r);
    let corr = -chi.re.signum() * (r * r - 1.0) / (4.0 * r);
    let corr = if chi.re == 0.0 { 0.0 } else { corr };
    let probe = ProbeState {
        k0: optimal_wavevector(diag, diag, abs, k),
        sigma_phiphi: diag,
        sigma_ii: diag,
        sigma_phii: corr,
    };
    let noise = noise_for(&probe, chi, k);
    Ok(OptimizedProbe {
        probe,
        squeezing_db: 10.0 * r.log10(),
        noise,
        ideal_noise: ideal,
        gap: noise - ideal,
        capped,
    })
}
