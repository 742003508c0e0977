//! Linearized gravity in vacuum: curvature of metric perturbations, its
//! zero-point spectrum, and the Planck-scale floor on position noise.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::minkowski::{eta, METRIC};
use crate::spectra::WaveFourVector;
use crate::{Constants, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlanckScales {
    pub mass: f64,
    pub length: f64,
}

impl PlanckScales {
    /// Planck angular frequency `c / l_P`.
    pub fn frequency(&self, k: &Constants) -> f64 {
        k.c / self.length
    }
}

pub fn planck_units(k: &Constants) -> PlanckScales {
    PlanckScales {
        mass: (k.hbar * k.c / k.g).sqrt(),
        length: (k.hbar * k.g / k.c.powi(3)).sqrt(),
    }
}

/// Fourier component `h_mu_nu[k]` with both indices down.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricPerturbation {
    h: [[Complex64; 4]; 4],
}

impl MetricPerturbation {
    pub fn new(h: [[Complex64; 4]; 4]) -> Result<Self> {
        let scale = h.iter().flatten().fold(0.0f64, |m, z| m.max(z.norm()));
        for mu in 0..4 {
            for nu in mu + 1..4 {
                if (h[mu][nu] - h[nu][mu]).norm() > 1e-12 * scale {
                    return Err(Error::invalid(format!("h is not symmetric in ({mu},{nu})")));
                }
            }
        }
        Ok(MetricPerturbation { h })
    }

    pub fn zero() -> Self {
        MetricPerturbation { h: [[Complex64::new(0.0, 0.0); 4]; 4] }
    }

    pub fn component(&self, mu: usize, nu: usize) -> Complex64 {
        self.h[mu][nu]
    }
}

/// `R_lmrn = (k_m k_n h_rl + k_r k_l h_mn - k_m k_r h_nl - k_n k_l h_mr) / 2`.
pub fn riemann_linearized(h: &MetricPerturbation, kv: WaveFourVector, indices: [usize; 4]) -> Complex64 {
    let [l, m, r, n] = indices;
    let k = kv.lowered();
    let h = |a: usize, b: usize| h.component(a, b);
    0.5 * (k[m] * k[n] * h(r, l) + k[r] * k[l] * h(m, n) - k[m] * k[r] * h(n, l) - k[n] * k[l] * h(m, r))
}

/// Curvature tensor built from `k` and the metric in place of `h`.
pub fn curvature_kernel(kv: WaveFourVector, indices: [usize; 4]) -> f64 {
    let [l, m, r, n] = indices;
    let k = kv.lowered();
    0.5 * (k[l] * k[r] * eta(m, n) + k[m] * k[n] * eta(l, r) - k[m] * k[r] * eta(l, n) - k[l] * k[n] * eta(m, r))
}

/// Relative tolerance on `|k^2| / k0^2` for on-shell evaluation.
pub const ON_SHELL_TOLERANCE: f64 = 1e-10;

fn require_on_shell(kv: WaveFourVector) -> Result<()> {
    let k0 = kv.frequency();
    if !(k0 > 0.0) {
        return Err(Error::domain(format!("curvature fluctuations need k0 > 0, got {k0}")));
    }
    if kv.square().abs() > ON_SHELL_TOLERANCE * k0 * k0 {
        return Err(Error::domain(format!(
            "curvature fluctuations live on the light cone, k^2 = {}",
            kv.square()
        )));
    }
    Ok(())
}

/// On-shell density of `<R_lmrn R_l'm'r'n'>` multiplying
/// `theta(k0) delta(k^2)`.
pub fn riemann_vacuum_spectrum(kv: WaveFourVector, indices: [usize; 8], k: &Constants) -> Result<f64> {
    require_on_shell(kv)?;
    let [l, m, r, n, lp, mp, rp, np] = indices;
    let big_r = |a, b, c, d| curvature_kernel(kv, [a, b, c, d]);
    let lp2 = planck_units(k).length.powi(2);
    let products = big_r(l, m, lp, mp) * big_r(r, n, rp, np) + big_r(l, m, rp, np) * big_r(r, n, lp, mp)
        - big_r(l, m, r, n) * big_r(lp, mp, rp, np);
    Ok(16.0 * PI * PI * lp2 * products)
}

/// Correlation of the linearized Einstein tensor `G_mn` with `R_l'm'r'n'`,
/// obtained by contracting the first block of [`riemann_vacuum_spectrum`].
pub fn einstein_vacuum_spectrum(
    kv: WaveFourVector,
    pair: [usize; 2],
    other: [usize; 4],
    k: &Constants,
) -> Result<f64> {
    let [lp, mp, rp, np] = other;
    let ricci = |m: usize, n: usize| -> Result<f64> {
        let mut sum = 0.0;
        for a in 0..4 {
            sum += METRIC[a] * riemann_vacuum_spectrum(kv, [a, m, a, n, lp, mp, rp, np], k)?;
        }
        Ok(sum)
    };
    let mut scalar = 0.0;
    for a in 0..4 {
        scalar += METRIC[a] * ricci(a, a)?;
    }
    let [m, n] = pair;
    Ok(ricci(m, n)? - 0.5 * eta(m, n) * scalar)
}

/// Universal position noise `factor * l_P^2 theta(omega) / omega` set by
/// metric fluctuations, valid below the Planck frequency.
pub fn geodesic_noise(omega: f64, factor: Option<f64>, k: &Constants) -> Result<f64> {
    let planck = planck_units(k);
    if omega.abs() >= planck.frequency(k) {
        return Err(Error::domain(format!(
            "|omega| = {} is not below the Planck frequency {}",
            omega.abs(),
            planck.frequency(k)
        )));
    }
    if omega == 0.0 {
        return Err(Error::singular("geodesic noise diverges at omega = 0"));
    }
    if omega < 0.0 {
        return Ok(0.0);
    }
    Ok(factor.unwrap_or(1.0) * planck.length * planck.length / omega)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    ComptonDominated,
    Crossover,
    PlanckDominated,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::ComptonDominated => "compton-dominated",
            Regime::Crossover => "crossover",
            Regime::PlanckDominated => "planck-dominated",
        }
    }
}

/// Compares the Compton wavelength of `mass` with the Planck length.
pub fn regime_classifier(mass: f64, k: &Constants) -> Result<Regime> {
    if !(mass > 0.0 && mass.is_finite()) {
        return Err(Error::invalid(format!("mass must be positive, got {mass}")));
    }
    let lp = planck_units(k).length;
    let lc = k.compton_wavelength(mass);
    Ok(if (lc - lp).abs() <= 1e-6 * lp {
        Regime::Crossover
    } else if lc > lp {
        Regime::ComptonDominated
    } else {
        Regime::PlanckDominated
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const SI: Constants = Constants::SI;
    const N: Constants = Constants::NATURAL;

    #[test]
    fn planck_scales() {
        let p = planck_units(&SI);
        assert_relative_eq!(p.mass, 2.176_434e-8, max_relative = 1e-5);
        assert_relative_eq!(p.length, 1.616_255e-35, max_relative = 1e-5);
        assert_relative_eq!(p.mass * p.length * SI.c / SI.hbar, 1.0, max_relative = 1e-12);
        let n = planck_units(&N);
        assert_eq!((n.mass, n.length), (1.0, 1.0));
    }

    #[test]
    fn symmetric_perturbations_only() {
        let mut h = [[Complex64::new(0.0, 0.0); 4]; 4];
        h[0][1] = Complex64::new(1.0, 0.0);
        assert!(MetricPerturbation::new(h).is_err());
        h[1][0] = h[0][1];
        assert!(MetricPerturbation::new(h).is_ok());
        let kv = WaveFourVector::new(1.0, 0.3, 0.0, 0.2);
        assert_eq!(riemann_linearized(&MetricPerturbation::zero(), kv, [0, 1, 2, 3]).norm(), 0.0);
    }

    #[test]
    fn spectrum_support() {
        let idx = [0, 1, 0, 1, 0, 1, 0, 1];
        assert!(riemann_vacuum_spectrum(WaveFourVector::new(1.0, 0.0, 0.0, 1.0), idx, &N).is_ok());
        assert!(matches!(
            riemann_vacuum_spectrum(WaveFourVector::new(1.0, 0.0, 0.0, 0.5), idx, &N),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            riemann_vacuum_spectrum(WaveFourVector::new(-1.0, 0.0, 0.0, 1.0), idx, &N),
            Err(Error::Domain(_))
        ));
        let same = riemann_vacuum_spectrum(WaveFourVector::new(1.0, 0.0, 0.0, 1.0), [2, 2, 0, 1, 0, 1, 0, 1], &N);
        assert_eq!(same.unwrap(), 0.0);
    }

    #[test]
    fn geodesic_floor() {
        assert_relative_eq!(geodesic_noise(1.0, None, &SI).unwrap(), 2.6122e-70, max_relative = 1e-4);
        assert_eq!(geodesic_noise(-1.0, None, &SI).unwrap(), 0.0);
        assert!(matches!(geodesic_noise(2.0, None, &N), Err(Error::Domain(_))));
        assert_relative_eq!(geodesic_noise(0.5, Some(3.0), &N).unwrap(), 6.0);
    }

    #[test]
    fn regimes() {
        assert_eq!(regime_classifier(Constants::ELECTRON_MASS_SI, &SI).unwrap(), Regime::ComptonDominated);
        assert_eq!(regime_classifier(1e-3, &SI).unwrap(), Regime::PlanckDominated);
        let mp = planck_units(&SI).mass;
        assert_eq!(regime_classifier(mp, &SI).unwrap(), Regime::Crossover);
        assert_eq!(regime_classifier(1.0, &N).unwrap(), Regime::Crossover);
    }
}
