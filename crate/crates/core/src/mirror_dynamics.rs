//! Linear response of a mirror driven by vacuum radiation pressure.
//!
//! The force susceptibility `chi_FF` feeds the mechanical response
//! `chi_qq = 1 / (m0 (omega0^2 - omega^2) - chi_FF)`, and the position noise
//! follows from the fluctuation-dissipation relation for the vacuum.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::minkowski::theta;
use crate::quadrature;
use crate::spectra::{FrequencyGrid, Spectrum, SpectrumKind};
use crate::{Constants, Error, Result};

/// Mirror treated as a harmonic oscillator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OscillatorModel {
    mass: f64,
    omega0: f64,
    bare: bool,
}

impl OscillatorModel {
    /// `bare` says whether `mass` already excludes the inertial correction
    /// carried by the reactive part of the force susceptibility.
    pub fn new(mass: f64, omega0: f64, bare: bool) -> Result<Self> {
        if !(mass > 0.0 && mass.is_finite()) {
            return Err(Error::invalid(format!("mass must be positive, got {mass}")));
        }
        if !(omega0 >= 0.0 && omega0.is_finite()) {
            return Err(Error::invalid(format!("omega0 must be non-negative, got {omega0}")));
        }
        Ok(OscillatorModel { mass, omega0, bare })
    }

    /// Free mirror (no restoring force).
    pub fn free(mass: f64) -> Result<Self> {
        Self::new(mass, 0.0, false)
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    pub fn is_bare(&self) -> bool {
        self.bare
    }

    /// Bare mass `m0` entering the mechanical propagator.
    pub fn bare_mass(&self, force: ForceSusceptibilityModel, k: &Constants) -> Result<f64> {
        if self.bare {
            return Ok(self.mass);
        }
        let m0 = self.mass - force.inertial_correction(k);
        if m0 <= 0.0 {
            return Err(Error::domain(format!(
                "mass {} does not exceed the vacuum inertial correction {}",
                self.mass,
                force.inertial_correction(k)
            )));
        }
        Ok(m0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ForceSusceptibilityModel {
    /// Perfectly reflecting mirror in a 2D scalar field; reactive part
    /// subtracted to zero.
    PerfectMirror,
    /// Mirror transparent above `omega_c`.
    Cutoff { omega_c: f64 },
    /// No coupling to the field.
    Decoupled,
}

impl ForceSusceptibilityModel {
    pub fn cutoff(omega_c: f64) -> Result<Self> {
        if !(omega_c > 0.0 && omega_c.is_finite()) {
            return Err(Error::invalid(format!("cutoff frequency must be positive, got {omega_c}")));
        }
        Ok(ForceSusceptibilityModel::Cutoff { omega_c })
    }

    /// Mass shift `delta m` with `Re chi_FF ~ delta m * omega^2` at low
    /// frequency.
    pub fn inertial_correction(&self, k: &Constants) -> f64 {
        match *self {
            ForceSusceptibilityModel::Cutoff { omega_c } => 0.5 * dissipation_coefficient(k) * omega_c,
            _ => 0.0,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ForceSusceptibilityModel::PerfectMirror => "perfect-mirror",
            ForceSusceptibilityModel::Cutoff { .. } => "cutoff",
            ForceSusceptibilityModel::Decoupled => "decoupled",
        }
    }
}

/// `hbar / (6 pi c^2)`, the coefficient of `omega^3` in `xi_FF`.
pub fn dissipation_coefficient(k: &Constants) -> f64 {
    k.hbar / (6.0 * PI * k.c * k.c)
}

/// Force susceptibility.
///
/// The cutoff model is `(kappa omega_c omega^2 / 2) / (1 - i omega/omega_c)^2`
/// with `kappa = hbar / 6 pi c^2`. Its imaginary part is
/// `kappa omega^3 / (1 + (omega/omega_c)^2)^2`: positive for `omega > 0`,
/// equal to the perfect-mirror dissipation at low frequency and falling off
/// as `1/omega` above the cutoff.
pub fn chi_ff(model: ForceSusceptibilityModel, omega: f64, k: &Constants) -> Complex64 {
    let kappa = dissipation_coefficient(k);
    match model {
        ForceSusceptibilityModel::PerfectMirror => Complex64::new(0.0, kappa * omega.powi(3)),
        ForceSusceptibilityModel::Cutoff { omega_c } => {
            let pole = Complex64::new(1.0, -omega / omega_c);
            Complex64::new(0.5 * kappa * omega_c * omega * omega, 0.0) / (pole * pole)
        }
        ForceSusceptibilityModel::Decoupled => Complex64::new(0.0, 0.0),
    }
}

/// Mechanical susceptibility `1 / (m0 (omega0^2 - omega^2) - chi_FF)`.
pub fn chi_qq(
    osc: OscillatorModel,
    force: ForceSusceptibilityModel,
    omega: f64,
    k: &Constants,
) -> Result<Complex64> {
    let m0 = osc.bare_mass(force, k)?;
    let elastic = m0 * osc.omega0 * osc.omega0;
    let inertial = m0 * omega * omega;
    let chi = chi_ff(force, omega, k);
    let denom = Complex64::new(elastic - inertial, 0.0) - chi;
    let scale = elastic.max(inertial).max(chi.norm());
    if denom.norm() <= 1e-12 * scale || denom.norm() == 0.0 {
        return Err(Error::singular(format!("mechanical response has a pole at omega = {omega}")));
    }
    Ok(denom.inv())
}

/// Position noise `C_qq = 2 hbar theta(omega) Im chi_qq`.
///
/// The value is also computed as `|chi_qq|^2 C_FF`; the two must agree to
/// `1e-10` relative or the call fails.
pub fn langevin_position_spectrum(
    osc: OscillatorModel,
    force: ForceSusceptibilityModel,
    grid: &FrequencyGrid,
    k: &Constants,
) -> Result<Spectrum> {
    let mut values = Vec::with_capacity(grid.len());
    for &w in grid.points() {
        if w < 0.0 {
            values.push(Complex64::new(0.0, 0.0));
            continue;
        }
        let chi = chi_qq(osc, force, w, k)?;
        let direct = 2.0 * k.hbar * theta(w) * chi.im;
        let force_noise = 2.0 * k.hbar * theta(w) * chi_ff(force, w, k).im;
        let via_force = chi.norm_sqr() * force_noise;
        if (direct - via_force).abs() > 1e-10 * direct.abs().max(via_force.abs()) {
            return Err(Error::domain(format!(
                "position noise paths disagree at omega = {w}: {direct} vs {via_force}"
            )));
        }
        values.push(Complex64::new(direct, 0.0));
    }
    Spectrum::with_kind(grid.clone(), values, k.system, SpectrumKind::VacuumCorrelation)
}

/// Quantum diffusion floor `lambda_C^2 theta(omega) / omega` of a free mass.
/// Order-of-magnitude estimate with unit prefactor.
pub fn compton_background(mass: f64, omega: f64, k: &Constants) -> Result<f64> {
    if !(mass > 0.0) {
        return Err(Error::invalid(format!("mass must be positive, got {mass}")));
    }
    if omega == 0.0 {
        return Err(Error::singular("compton background diverges at omega = 0"));
    }
    if omega < 0.0 {
        return Ok(0.0);
    }
    let lambda = k.compton_wavelength(mass);
    Ok(lambda * lambda / omega)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CausalityVerdict {
    Consistent,
    Inconsistent,
    /// `chi_FF` identically zero.
    Trivial,
    /// The perfect-mirror response grows as `omega^3` and has no causal
    /// mechanical interpretation.
    NonCausal,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CausalityReport {
    pub model: String,
    pub verdict: CausalityVerdict,
    /// Largest `|Re chi - Re chi_KK| / |chi|` over the checked points.
    pub max_discrepancy: f64,
    pub points_checked: usize,
    pub note: String,
}

/// Tolerance used for the consistent/inconsistent verdict.
pub const CAUSALITY_TOLERANCE: f64 = 0.02;

/// Kramers-Kronig test with one subtraction at `omega = 0`:
/// `Re chi(w) = (2 w^2 / pi) P int Im chi(w') / (w' (w'^2 - w^2)) dw'`.
///
/// The integral runs over the positive span of the grid, and points within
/// a decade of either end are skipped because truncation dominates there.
pub fn causality_check(
    force: ForceSusceptibilityModel,
    grid: &FrequencyGrid,
    k: &Constants,
) -> CausalityReport {
    let model = force.name().to_string();
    match force {
        ForceSusceptibilityModel::PerfectMirror => {
            return CausalityReport {
                model,
                verdict: CausalityVerdict::NonCausal,
                max_discrepancy: f64::NAN,
                points_checked: 0,
                note: "perfect mirror: chi_FF grows as omega^3 and has runaway solutions as a \
                       mechanical equation"
                    .into(),
            };
        }
        ForceSusceptibilityModel::Decoupled => {
            return CausalityReport {
                model,
                verdict: CausalityVerdict::Trivial,
                max_discrepancy: 0.0,
                points_checked: 0,
                note: "chi_FF vanishes identically".into(),
            };
        }
        ForceSusceptibilityModel::Cutoff { .. } => {}
    }

    let positive: Vec<f64> = grid.points().iter().copied().filter(|&w| w > 0.0).collect();
    let (lo, hi) = match (positive.first(), positive.last()) {
        (Some(&a), Some(&b)) if b > a => (a, b),
        _ => {
            return CausalityReport {
                model,
                verdict: CausalityVerdict::Inconsistent,
                max_discrepancy: f64::NAN,
                points_checked: 0,
                note: "grid has no positive span".into(),
            }
        }
    };
    // g(w) = Im chi(w) / w
    let g = |w: f64| chi_ff(force, w, k).im / w;
    let mut worst: f64 = 0.0;
    let mut checked = 0;
    for &w in positive.iter().filter(|&&w| w >= 10.0 * lo && w <= hi / 10.0) {
        let gw = g(w);
        // regular part after subtracting the pole at w
        let regular = |x: f64| {
            let d = x * x - w * w;
            if d == 0.0 {
                0.0
            } else {
                (g(x) - gw) / d
            }
        };
        let left = quadrature::integrate_fn(regular, lo, w, 1e-10, 0.0);
        let right = quadrature::integrate_fn(regular, w, hi, 1e-10, 0.0);
        // P int_lo^hi dx / (x^2 - w^2)
        let log_part = (((hi - w) * (w + lo)) / ((hi + w) * (w - lo))).ln() / (2.0 * w);
        let principal = left.value + right.value + gw * log_part;
        let re_kk = 2.0 * w * w / PI * principal;
        let chi = chi_ff(force, w, k);
        worst = worst.max((chi.re - re_kk).abs() / chi.norm());
        checked += 1;
    }
    let verdict = if checked > 0 && worst < CAUSALITY_TOLERANCE {
        CausalityVerdict::Consistent
    } else {
        CausalityVerdict::Inconsistent
    };
    CausalityReport {
        model,
        verdict,
        max_discrepancy: worst,
        points_checked: checked,
        note: format!("dispersion integral over [{lo}, {hi}]"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const N: Constants = Constants::NATURAL;

    #[test]
    fn perfect_mirror_at_unit_frequency() {
        let chi = chi_ff(ForceSusceptibilityModel::PerfectMirror, 1.0, &N);
        assert_eq!(chi.re, 0.0);
        assert_relative_eq!(chi.im, 1.0 / (6.0 * PI), max_relative = 1e-15);
        assert_eq!(chi_ff(ForceSusceptibilityModel::PerfectMirror, 0.0, &N).norm(), 0.0);
        assert_eq!(chi_ff(ForceSusceptibilityModel::cutoff(2.0).unwrap(), 0.0, &N).norm(), 0.0);
    }

    #[test]
    fn cutoff_matches_perfect_mirror_at_low_frequency() {
        let m = ForceSusceptibilityModel::cutoff(1.0).unwrap();
        for w in [1e-4, 1e-3, 1e-2] {
            let ratio = chi_ff(m, w, &N).im / (dissipation_coefficient(&N) * w.powi(3));
            assert!((ratio - 1.0).abs() < 3.0 * w * w, "{w}: {ratio}");
        }
    }

    #[test]
    fn cutoff_is_passive() {
        let m = ForceSusceptibilityModel::cutoff(3.0).unwrap();
        let grid = FrequencyGrid::logarithmic(1e-4, 1e4, 400).unwrap();
        assert!(grid.points().iter().all(|&w| chi_ff(m, w, &N).im > 0.0));
    }

    #[test]
    fn static_and_decoupled_response() {
        let osc = OscillatorModel::new(2.0, 3.0, true).unwrap();
        for f in [ForceSusceptibilityModel::PerfectMirror, ForceSusceptibilityModel::Decoupled] {
            assert_relative_eq!(chi_qq(osc, f, 0.0, &N).unwrap().re, 1.0 / 18.0);
        }
        let free = chi_qq(osc, ForceSusceptibilityModel::Decoupled, 1.0, &N).unwrap();
        assert_relative_eq!(free.re, 1.0 / 16.0);
        assert!(matches!(
            chi_qq(osc, ForceSusceptibilityModel::Decoupled, 3.0, &N),
            Err(Error::Singularity(_))
        ));
    }

    #[test]
    fn dressed_mass_is_renormalized() {
        let f = ForceSusceptibilityModel::cutoff(4.0).unwrap();
        let osc = OscillatorModel::new(1.0, 0.0, false).unwrap();
        let m0 = osc.bare_mass(f, &N).unwrap();
        assert_relative_eq!(m0, 1.0 - 2.0 * dissipation_coefficient(&N));
        let tiny = OscillatorModel::new(1e-3, 0.0, false).unwrap();
        assert!(matches!(tiny.bare_mass(f, &N), Err(Error::Domain(_))));
    }

    #[test]
    fn position_noise_support() {
        let osc = OscillatorModel::new(1.0, 1.0, true).unwrap();
        let grid = FrequencyGrid::linear(-2.0, 2.5, 10).unwrap();
        let s = langevin_position_spectrum(osc, ForceSusceptibilityModel::PerfectMirror, &grid, &N)
            .unwrap();
        for (w, v) in s.iter() {
            if w < 0.0 {
                assert_eq!(v.re, 0.0);
            } else if w > 0.0 {
                assert!(v.re > 0.0);
            }
        }
    }

    #[test]
    fn compton_floor() {
        let si = Constants::SI;
        let v = compton_background(Constants::ELECTRON_MASS_SI, 1.0, &si).unwrap();
        assert_relative_eq!(v, 1.491e-25, max_relative = 1e-3);
        assert_eq!(compton_background(1.0, -1.0, &N).unwrap(), 0.0);
        assert!(matches!(compton_background(1.0, 0.0, &N), Err(Error::Singularity(_))));
        let ratio = compton_background(1.0, 2.0, &N).unwrap() / compton_background(2.0, 2.0, &N).unwrap();
        assert_relative_eq!(ratio, 4.0);
    }

    #[test]
    fn dispersion_check() {
        let grid = FrequencyGrid::logarithmic(1e-3, 1e3, 200).unwrap();
        let r = causality_check(ForceSusceptibilityModel::cutoff(1.0).unwrap(), &grid, &N);
        assert_eq!(r.verdict, CausalityVerdict::Consistent, "{r:?}");
        assert!(r.max_discrepancy < 0.02);
        assert!(r.points_checked > 100);
        let p = causality_check(ForceSusceptibilityModel::PerfectMirror, &grid, &N);
        assert_eq!(p.verdict, CausalityVerdict::NonCausal);
        let z = causality_check(ForceSusceptibilityModel::Decoupled, &grid, &N);
        assert_eq!(z.verdict, CausalityVerdict::Trivial);
    }
}
