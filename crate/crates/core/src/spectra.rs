//! Vacuum and thermal correlation spectra.
//!
//! A correlation `C_AB` splits into an anticommutator (noise) part `sigma`
//! and a commutator (propagator) part `xi`, with
//! `2 hbar sigma = C_AB + C_BA(-)` and `2 hbar xi = C_AB - C_BA(-)`.
//! At thermal equilibrium the two are tied together by the
//! fluctuation-dissipation relation, whose zero-temperature limit
//! `C = 2 hbar theta(omega) xi` characterises vacuum.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::minkowski::{self, eta, METRIC};
use crate::{Constants, Error, Result, UnitSystem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Linear,
    Logarithmic,
}

/// Strictly increasing list of angular frequencies.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrequencyGrid {
    points: Vec<f64>,
    spacing: Spacing,
}

impl FrequencyGrid {
    pub fn linear(start: f64, stop: f64, count: usize) -> Result<Self> {
        if count == 0 {
            return Err(Error::invalid("frequency grid needs at least one point"));
        }
        if count == 1 {
            return Self::from_points(vec![start], Spacing::Linear);
        }
        let step = (stop - start) / (count - 1) as f64;
        let points = (0..count)
            .map(|i| if i + 1 == count { stop } else { start + step * i as f64 })
            .collect();
        Self::from_points(points, Spacing::Linear)
    }

    pub fn logarithmic(start: f64, stop: f64, count: usize) -> Result<Self> {
        if !(start > 0.0 && stop > 0.0) {
            return Err(Error::invalid("logarithmic grid requires positive end points"));
        }
        if count == 0 {
            return Err(Error::invalid("frequency grid needs at least one point"));
        }
        if count == 1 {
            return Self::from_points(vec![start], Spacing::Logarithmic);
        }
        let (l0, l1) = (start.ln(), stop.ln());
        let step = (l1 - l0) / (count - 1) as f64;
        let points = (0..count)
            .map(|i| match i {
                0 => start,
                i if i + 1 == count => stop,
                i => (l0 + step * i as f64).exp(),
            })
            .collect();
        Self::from_points(points, Spacing::Logarithmic)
    }

    pub fn from_points(points: Vec<f64>, spacing: Spacing) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::invalid("frequency grid needs at least one point"));
        }
        if points.iter().any(|w| !w.is_finite()) {
            return Err(Error::invalid("frequency grid contains non-finite points"));
        }
        if points.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::invalid("frequency grid must be strictly increasing"));
        }
        if spacing == Spacing::Logarithmic && points[0] <= 0.0 {
            return Err(Error::invalid("logarithmic grid must contain only positive points"));
        }
        Ok(FrequencyGrid { points, spacing })
    }

    /// Grid symmetric about zero, `-stop..=stop` with `2 * half_count + 1`
    /// points, so that `points[i] == -points[len - 1 - i]` exactly.
    pub fn symmetric(stop: f64, half_count: usize) -> Result<Self> {
        if !(stop > 0.0) || half_count == 0 {
            return Err(Error::invalid("symmetric grid needs stop > 0 and half_count > 0"));
        }
        let positive: Vec<f64> = (1..=half_count)
            .map(|i| stop * i as f64 / half_count as f64)
            .collect();
        let mut points: Vec<f64> = positive.iter().rev().map(|w| -w).collect();
        points.push(0.0);
        points.extend(positive);
        Self::from_points(points, Spacing::Linear)
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn spacing(&self) -> Spacing {
        self.spacing
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpectrumKind {
    Generic,
    /// Vacuum correlation `2 hbar theta(omega) xi`: real and zero for
    /// negative frequencies.
    VacuumCorrelation,
}

/// Complex values sampled on a [`FrequencyGrid`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    grid: FrequencyGrid,
    values: Vec<Complex64>,
    units: UnitSystem,
    kind: SpectrumKind,
}

impl Spectrum {
    pub fn new(grid: FrequencyGrid, values: Vec<Complex64>, units: UnitSystem) -> Result<Self> {
        Self::with_kind(grid, values, units, SpectrumKind::Generic)
    }

    pub fn with_kind(
        grid: FrequencyGrid,
        values: Vec<Complex64>,
        units: UnitSystem,
        kind: SpectrumKind,
    ) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::invalid(format!(
                "spectrum has {} values for {} grid points",
                values.len(),
                grid.len()
            )));
        }
        if kind == SpectrumKind::VacuumCorrelation {
            let bad = grid
                .points()
                .iter()
                .zip(&values)
                .any(|(&w, v)| v.im != 0.0 || (w < 0.0 && v.re != 0.0));
            if bad {
                return Err(Error::invalid(
                    "vacuum correlation must be real and vanish at negative frequencies",
                ));
            }
        }
        Ok(Spectrum { grid, values, units, kind })
    }

    pub fn from_fn(grid: FrequencyGrid, units: UnitSystem, f: impl Fn(f64) -> Complex64) -> Self {
        let values = grid.points().iter().map(|&w| f(w)).collect();
        Spectrum { grid, values, units, kind: SpectrumKind::Generic }
    }

    pub fn from_real_fn(grid: FrequencyGrid, units: UnitSystem, f: impl Fn(f64) -> f64) -> Self {
        Self::from_fn(grid, units, |w| Complex64::new(f(w), 0.0))
    }

    pub fn grid(&self) -> &FrequencyGrid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn units(&self) -> UnitSystem {
        self.units
    }

    pub fn kind(&self) -> SpectrumKind {
        self.kind
    }

    pub fn real_parts(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.re).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, Complex64)> + '_ {
        self.grid.points().iter().copied().zip(self.values.iter().copied())
    }

    fn require_real(&self, what: &str) -> Result<()> {
        let scale = self.values.iter().fold(0.0f64, |m, v| m.max(v.norm()));
        if self.values.iter().any(|v| v.im.abs() > 1e-14 * scale) {
            return Err(Error::invalid(format!("{what} must be real-valued")));
        }
        Ok(())
    }
}

/// Inverse temperature `beta = hbar / (k_B T)`; infinite for vacuum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThermalState {
    beta: f64,
}

impl ThermalState {
    pub fn new(beta: f64) -> Result<Self> {
        if beta.is_nan() || beta <= 0.0 {
            return Err(Error::invalid("inverse temperature must be positive"));
        }
        Ok(ThermalState { beta })
    }

    pub fn vacuum() -> Self {
        ThermalState { beta: f64::INFINITY }
    }

    pub fn from_temperature(temperature: f64, k: &Constants) -> Result<Self> {
        if !(temperature >= 0.0) {
            return Err(Error::invalid("temperature must be non-negative"));
        }
        Self::new(k.hbar / (k.k_b * temperature))
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn is_vacuum(&self) -> bool {
        self.beta.is_infinite()
    }
}

/// Wave four-vector `(k0, k1, k2, k3)` with contravariant components.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WaveFourVector(pub [f64; 4]);

impl WaveFourVector {
    pub fn new(k0: f64, k1: f64, k2: f64, k3: f64) -> Self {
        WaveFourVector([k0, k1, k2, k3])
    }

    pub fn square(&self) -> f64 {
        minkowski::square(self.0)
    }

    pub fn lowered(&self) -> [f64; 4] {
        minkowski::lower(self.0)
    }

    pub fn frequency(&self) -> f64 {
        self.0[0]
    }
}

/// Splits forward and backward correlations into anticommutator `sigma`
/// and commutator `xi` spectra. `backward` must already be sampled at the
/// reversed argument, i.e. `backward[i] = C_BA(-omega_i)`.
pub fn decompose_correlation(
    forward: &Spectrum,
    backward: &Spectrum,
    k: &Constants,
) -> Result<(Spectrum, Spectrum)> {
    if forward.grid != backward.grid {
        return Err(Error::invalid("forward and backward correlations use different grids"));
    }
    let two_hbar = 2.0 * k.hbar;
    let sigma = forward
        .values
        .iter()
        .zip(&backward.values)
        .map(|(f, b)| (f + b) / two_hbar)
        .collect();
    let xi = forward
        .values
        .iter()
        .zip(&backward.values)
        .map(|(f, b)| (f - b) / two_hbar)
        .collect();
    Ok((
        Spectrum::new(forward.grid.clone(), sigma, forward.units)?,
        Spectrum::new(forward.grid.clone(), xi, forward.units)?,
    ))
}

/// Thermal fluctuation-dissipation relation
/// `C = 2 hbar xi / (1 - exp(-beta omega))`.
///
/// At `omega = 0` the commutator must vanish and the value is the limit
/// `2 hbar xi'(0) / beta`, with the slope taken from the neighbouring grid
/// points.
pub fn thermal_fd(xi: &Spectrum, state: ThermalState, k: &Constants) -> Result<Spectrum> {
    xi.require_real("commutator spectrum")?;
    let points = xi.grid.points();
    let re = xi.real_parts();
    let scale = re.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let beta = state.beta();
    let two_hbar = 2.0 * k.hbar;

    let mut values = Vec::with_capacity(points.len());
    for (i, (&w, &x)) in points.iter().zip(&re).enumerate() {
        let c = if w == 0.0 {
            if x.abs() > 1e-14 * scale {
                return Err(Error::singular(
                    "thermal correlation diverges at omega = 0 with a nonzero commutator",
                ));
            }
            if state.is_vacuum() {
                0.0
            } else {
                two_hbar * slope_at(points, &re, i)? / beta
            }
        } else {
            let x_beta = beta * w;
            if x_beta == f64::INFINITY {
                two_hbar * x
            } else if x_beta == f64::NEG_INFINITY {
                0.0
            } else {
                // 1 - exp(-beta w) without cancellation
                two_hbar * x / -(-x_beta).exp_m1()
            }
        };
        values.push(Complex64::new(c, 0.0));
    }
    Spectrum::new(xi.grid.clone(), values, xi.units)
}

fn slope_at(points: &[f64], values: &[f64], i: usize) -> Result<f64> {
    let n = points.len();
    if n < 2 {
        return Err(Error::singular("cannot take the omega -> 0 limit on a one-point grid"));
    }
    let (lo, hi) = match i {
        0 => (0, 1),
        i if i + 1 == n => (n - 2, n - 1),
        i => (i - 1, i + 1),
    };
    Ok((values[hi] - values[lo]) / (points[hi] - points[lo]))
}

/// Vacuum fluctuation-dissipation relations: returns
/// `C = 2 hbar theta(omega) xi` and `sigma = sign(omega) xi`.
pub fn vacuum_fd(xi: &Spectrum, k: &Constants) -> Result<(Spectrum, Spectrum)> {
    xi.require_real("commutator spectrum")?;
    let points = xi.grid.points();
    let c = points
        .iter()
        .zip(&xi.values)
        .map(|(&w, x)| {
            let v = 2.0 * k.hbar * minkowski::theta(w) * x.re;
            // normalise -0.0 so the output is bit-stable
            Complex64::new(if v == 0.0 { 0.0 } else { v }, 0.0)
        })
        .collect();
    let sigma = points
        .iter()
        .zip(&xi.values)
        .map(|(&w, x)| Complex64::new(minkowski::sign(w) * x.re, 0.0))
        .collect();
    Ok((
        Spectrum::with_kind(xi.grid.clone(), c, xi.units, SpectrumKind::VacuumCorrelation)?,
        Spectrum::new(xi.grid.clone(), sigma, xi.units)?,
    ))
}

/// Temperature seen by a uniformly accelerated observer in the Rindler
/// representation, `T = hbar a / (2 pi k_B c)`.
pub fn unruh_temperature(acceleration: f64, k: &Constants) -> Result<f64> {
    if !(acceleration >= 0.0) {
        return Err(Error::invalid("proper acceleration must be non-negative"));
    }
    Ok(k.hbar * acceleration / (2.0 * std::f64::consts::PI * k.k_b * k.c))
}

/// Position-space vacuum correlation of the electromagnetic potential in
/// Feynman gauge: a complex scalar times the metric.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldCorrelation {
    pub scalar: Complex64,
}

impl FieldCorrelation {
    pub fn component(&self, mu: usize, nu: usize) -> Complex64 {
        self.scalar * eta(mu, nu)
    }

    pub fn matrix(&self) -> [[Complex64; 4]; 4] {
        let mut m = [[Complex64::new(0.0, 0.0); 4]; 4];
        for (mu, row) in m.iter_mut().enumerate() {
            for (nu, v) in row.iter_mut().enumerate() {
                *v = self.component(mu, nu);
            }
        }
        m
    }
}

/// `C_{A_mu A_nu}(x) = (hbar/pi) eta_mu_nu / ((x0 - i eps)^2 - |x|^2)`.
///
/// `x0` is a time delay; in SI mode it is converted to a length with `c`.
pub fn field_correlation_position(
    x0: f64,
    separation: [f64; 3],
    eps: f64,
    k: &Constants,
) -> Result<FieldCorrelation> {
    if !(eps > 0.0) {
        return Err(Error::invalid("regulator eps must be positive"));
    }
    let r2: f64 = separation.iter().map(|s| s * s).sum();
    let t = Complex64::new(k.c * x0, -eps);
    let denom = t * t - r2;
    Ok(FieldCorrelation { scalar: (k.hbar / std::f64::consts::PI) / denom })
}

/// Momentum-space vacuum density of the potential correlation with the
/// light-cone delta stripped: returns the coefficient of `delta(k^2)` in
/// `C_{A_mu A_nu}[k] = 2 hbar theta(k0) pi delta(k^2) eta_mu_nu`.
/// Only defined on shell (`|k^2| <= 1e-10 k0^2`).
pub fn field_spectral_density(kv: WaveFourVector, k: &Constants) -> Result<[[f64; 4]; 4]> {
    let k0 = kv.frequency();
    if kv.square().abs() > 1e-10 * k0 * k0 || k0 == 0.0 {
        return Err(Error::domain("field spectral density is supported on the light cone only"));
    }
    let weight = 2.0 * k.hbar * minkowski::theta(k0) * std::f64::consts::PI;
    let mut m = [[0.0; 4]; 4];
    for (mu, row) in m.iter_mut().enumerate() {
        row[mu] = weight * METRIC[mu];
    }
    Ok(m)
}

/// Transverse projectors built from a wave four-vector.
#[derive(Debug, Clone, PartialEq)]
pub struct StressProjector {
    /// `pi_mu_nu = eta_mu_nu - k_mu k_nu / k^2`, both indices down.
    pub rank2: [[f64; 4]; 4],
    /// `pi_mu_nu_rho_sigma`, all indices down.
    pub rank4: [[[[f64; 4]; 4]; 4]; 4],
}

pub fn stress_projector(kv: WaveFourVector) -> Result<StressProjector> {
    let k2 = kv.square();
    if k2 == 0.0 || !k2.is_finite() {
        return Err(Error::singular("stress projector is undefined on the light cone"));
    }
    let kl = kv.lowered();
    let mut p = [[0.0; 4]; 4];
    for mu in 0..4 {
        for nu in 0..4 {
            p[mu][nu] = eta(mu, nu) - kl[mu] * kl[nu] / k2;
        }
    }
    let mut p4 = [[[[0.0; 4]; 4]; 4]; 4];
    for mu in 0..4 {
        for nu in 0..4 {
            for rho in 0..4 {
                for sigma in 0..4 {
                    p4[mu][nu][rho][sigma] = 0.5
                        * (p[mu][rho] * p[nu][sigma] + p[mu][sigma] * p[nu][rho])
                        - p[mu][nu] * p[rho][sigma] / 3.0;
                }
            }
        }
    }
    Ok(StressProjector { rank2: p, rank4: p4 })
}

/// Vacuum spectrum of the Maxwell stress tensor,
/// `(hbar^2 / 40 pi) theta(omega) theta(k^2) (k^2)^2 pi_mu_nu_rho_sigma`.
/// Zero outside the forward light cone.
pub fn stress_spectrum(kv: WaveFourVector, indices: [usize; 4], k: &Constants) -> f64 {
    let k2 = kv.square();
    if !(kv.frequency() > 0.0 && k2 > 0.0) {
        return 0.0;
    }
    let proj = match stress_projector(kv) {
        Ok(p) => p,
        Err(_) => return 0.0,
    };
    let [mu, nu, rho, sigma] = indices;
    k.hbar * k.hbar / (40.0 * std::f64::consts::PI) * k2 * k2 * proj.rank4[mu][nu][rho][sigma]
}

/// Fluctuations of the incoming momentum flux on one side of a mirror in a
/// 2D scalar field, `C_pp = (hbar^2 / 12 pi c^2) theta(omega) omega^3`. In
/// natural units this is the momentum density itself.
pub fn momentum_density_spectrum(omega: f64, k: &Constants) -> f64 {
    if omega <= 0.0 {
        return 0.0;
    }
    k.hbar * k.hbar / (12.0 * std::f64::consts::PI * k.c * k.c) * omega.powi(3)
}

/// Radiation pressure fluctuations on a perfect mirror,
/// `C_FF = (hbar^2 / 3 pi c^2) theta(omega) omega^3`. Reflection doubles the
/// momentum transfer, so this is exactly four times [`momentum_density_spectrum`].
pub fn force_spectrum_perfect_mirror(omega: f64, k: &Constants) -> f64 {
    4.0 * momentum_density_spectrum(omega, k)
}

/// Commutator spectrum of the perfect-mirror force,
/// `xi_FF = (hbar / 6 pi c^2) omega^3`.
pub fn force_commutator_perfect_mirror(omega: f64, k: &Constants) -> f64 {
    k.hbar / (6.0 * std::f64::consts::PI * k.c * k.c) * omega.powi(3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    const N: Constants = Constants::NATURAL;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn grids_validate() {
        assert!(FrequencyGrid::from_points(vec![], Spacing::Linear).is_err());
        assert!(FrequencyGrid::from_points(vec![1.0, 1.0], Spacing::Linear).is_err());
        assert!(FrequencyGrid::from_points(vec![-1.0, 1.0], Spacing::Logarithmic).is_err());
        let g = FrequencyGrid::logarithmic(1e-3, 1e3, 61).unwrap();
        assert_eq!(g.points()[0], 1e-3);
        assert_eq!(g.points()[60], 1e3);
        assert!((g.points()[30] - 1.0).abs() < 1e-12);
        let s = FrequencyGrid::symmetric(2.0, 4).unwrap();
        assert_eq!(s.len(), 9);
        for i in 0..9 {
            assert_eq!(s.points()[i], -s.points()[8 - i]);
        }
    }

    #[test]
    fn spectrum_length_must_match() {
        let g = FrequencyGrid::linear(0.0, 1.0, 3).unwrap();
        assert!(Spectrum::new(g, vec![c(1.0)], UnitSystem::Natural).is_err());
    }

    #[test]
    fn symmetric_correlations_have_no_commutator() {
        let g = FrequencyGrid::linear(-2.0, 2.0, 9).unwrap();
        let f = Spectrum::from_fn(g.clone(), UnitSystem::Natural, |w| Complex64::new(w * w, w));
        let (sigma, xi) = decompose_correlation(&f, &f.clone(), &N).unwrap();
        assert!(xi.values().iter().all(|v| v.norm() == 0.0));
        for (s, v) in sigma.values().iter().zip(f.values()) {
            assert!((s - v).norm() < 1e-15);
        }
    }

    #[test]
    fn decomposition_recovers_vacuum_sigma() {
        let g = FrequencyGrid::symmetric(3.0, 6).unwrap();
        let xi0 = |w: f64| w.powi(3) + 0.5 * w;
        let fwd = Spectrum::from_real_fn(g.clone(), UnitSystem::Natural, |w| {
            2.0 * minkowski::theta(w) * xi0(w)
        });
        let bwd = Spectrum::from_real_fn(g.clone(), UnitSystem::Natural, |w| {
            2.0 * minkowski::theta(-w) * xi0(-w)
        });
        let (sigma, xi) = decompose_correlation(&fwd, &bwd, &N).unwrap();
        for (i, &w) in g.points().iter().enumerate() {
            assert!((sigma.values()[i].re - minkowski::sign(w) * xi0(w)).abs() < 1e-14);
            assert!((xi.values()[i].re - xi0(w)).abs() < 1e-14);
        }
    }

    #[test]
    fn decomposition_rejects_grid_mismatch() {
        let a = Spectrum::from_real_fn(FrequencyGrid::linear(0.0, 1.0, 3).unwrap(), UnitSystem::Natural, |w| w);
        let b = Spectrum::from_real_fn(FrequencyGrid::linear(0.0, 2.0, 3).unwrap(), UnitSystem::Natural, |w| w);
        assert!(matches!(decompose_correlation(&a, &b, &N), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn thermal_factor_two_at_ln2() {
        let beta = 2f64.ln();
        let g = FrequencyGrid::from_points(vec![1.0], Spacing::Linear).unwrap();
        let xi = Spectrum::from_real_fn(g, UnitSystem::Natural, |_| 0.7);
        let out = thermal_fd(&xi, ThermalState::new(beta).unwrap(), &N).unwrap();
        assert!((out.values()[0].re - 4.0 * 0.7).abs() < 1e-14);
    }

    #[test]
    fn thermal_zero_frequency() {
        let g = FrequencyGrid::symmetric(1.0, 4).unwrap();
        let xi = Spectrum::from_real_fn(g.clone(), UnitSystem::Natural, |w| 3.0 * w);
        let out = thermal_fd(&xi, ThermalState::new(0.5).unwrap(), &N).unwrap();
        assert!((out.values()[4].re - 2.0 * 3.0 / 0.5).abs() < 1e-12);

        let bad = Spectrum::from_real_fn(g, UnitSystem::Natural, |w| 1.0 + w);
        assert!(matches!(
            thermal_fd(&bad, ThermalState::new(0.5).unwrap(), &N),
            Err(Error::Singularity(_))
        ));
    }

    #[test]
    fn thermal_rejects_complex_commutator() {
        let g = FrequencyGrid::linear(1.0, 2.0, 2).unwrap();
        let xi = Spectrum::from_fn(g, UnitSystem::Natural, |w| Complex64::new(w, 1.0));
        assert!(thermal_fd(&xi, ThermalState::vacuum(), &N).is_err());
    }

    #[test]
    fn vacuum_fd_cubic() {
        let g = FrequencyGrid::symmetric(2.0, 8).unwrap();
        let xi = Spectrum::from_real_fn(g.clone(), UnitSystem::Natural, |w| w.powi(3));
        let (cc, sigma) = vacuum_fd(&xi, &N).unwrap();
        assert_eq!(cc.kind(), SpectrumKind::VacuumCorrelation);
        for (i, &w) in g.points().iter().enumerate() {
            let expect = if w > 0.0 { 2.0 * w.powi(3) } else { 0.0 };
            assert_eq!(cc.values()[i].re, expect);
            assert_eq!(sigma.values()[i].re, w.abs().powi(3));
        }
        // mirrored difference gives back 2 hbar xi
        let n = g.len();
        for i in n / 2 + 1..n {
            let d = cc.values()[i].re - cc.values()[n - 1 - i].re;
            assert_eq!(d, 2.0 * xi.values()[i].re);
        }
    }

    #[test]
    fn vacuum_fd_zero() {
        let g = FrequencyGrid::symmetric(1.0, 3).unwrap();
        let xi = Spectrum::from_real_fn(g, UnitSystem::Natural, |_| 0.0);
        let (cc, sigma) = vacuum_fd(&xi, &N).unwrap();
        assert!(cc.values().iter().chain(sigma.values()).all(|v| *v == c(0.0)));
    }

    #[test]
    fn unruh() {
        assert_eq!(unruh_temperature(0.0, &N).unwrap(), 0.0);
        assert!((unruh_temperature(2.0 * PI, &N).unwrap() - 1.0).abs() < 1e-15);
        let t = unruh_temperature(9.81, &Constants::SI).unwrap();
        assert!((t / 3.98e-20 - 1.0).abs() < 1e-3);
        assert!(unruh_temperature(-1.0, &N).is_err());
    }

    #[test]
    fn field_correlation_spacelike_unit() {
        let fc = field_correlation_position(0.0, [1.0, 0.0, 0.0], 1e-9, &N).unwrap();
        assert!((fc.component(0, 0).re + 1.0 / PI).abs() < 1e-12);
        assert!(fc.component(0, 0).im.abs() < 1e-12);
        assert!((fc.component(1, 1).re - 1.0 / PI).abs() < 1e-12);
        assert_eq!(fc.component(0, 2), Complex64::new(0.0, 0.0));
        assert!(field_correlation_position(0.0, [1.0, 0.0, 0.0], 0.0, &N).is_err());
    }

    #[test]
    fn field_correlation_homogeneous_degree_minus_two() {
        let eps = 1e-3;
        let a = field_correlation_position(0.3, [0.2, -0.5, 0.9], eps, &N).unwrap();
        let b = field_correlation_position(0.6, [0.4, -1.0, 1.8], 2.0 * eps, &N).unwrap();
        assert!((a.scalar / b.scalar - 4.0).norm() < 1e-12);
    }

    #[test]
    fn on_shell_density() {
        let m = field_spectral_density(WaveFourVector::new(1.0, 0.0, 0.6, 0.8), &N).unwrap();
        assert!((m[0][0] - 2.0 * PI).abs() < 1e-14);
        assert!((m[3][3] + 2.0 * PI).abs() < 1e-14);
        assert!(field_spectral_density(WaveFourVector::new(2.0, 0.0, 0.0, 1.0), &N).is_err());
    }

    #[test]
    fn projector_substitution() {
        let p = stress_projector(WaveFourVector::new(2.0, 0.0, 0.0, 0.0)).unwrap();
        assert_eq!(p.rank2[0][0], 0.0);
        assert_eq!(p.rank2[1][1], -1.0);
        assert!(stress_projector(WaveFourVector::new(1.0, 1.0, 0.0, 0.0)).is_err());
    }

    #[test]
    fn stress_spectrum_support() {
        let idx = [0, 1, 0, 1];
        assert_eq!(stress_spectrum(WaveFourVector::new(-2.0, 0.1, 0.0, 0.0), idx, &N), 0.0);
        assert_eq!(stress_spectrum(WaveFourVector::new(1.0, 2.0, 0.0, 0.0), idx, &N), 0.0);
        assert_eq!(stress_spectrum(WaveFourVector::new(2.0, 0.0, 0.0, 0.0), [0, 0, 0, 0], &N), 0.0);
        // k = (2,0,0,0): pi_11 = -1, pi_1111 = 1 - 1/3, (k^2)^2 = 16
        let v = stress_spectrum(WaveFourVector::new(2.0, 0.0, 0.0, 0.0), [1, 1, 1, 1], &N);
        assert!((v - 16.0 * (2.0 / 3.0) / (40.0 * PI)).abs() < 1e-14);
    }

    #[test]
    fn mirror_force_spectra() {
        assert_eq!(momentum_density_spectrum(-1.0, &N), 0.0);
        assert!((momentum_density_spectrum(1.0, &N) - 1.0 / (12.0 * PI)).abs() < 1e-16);
        assert!((force_spectrum_perfect_mirror(1.0, &N) - 1.0 / (3.0 * PI)).abs() < 1e-16);
        assert_eq!(force_spectrum_perfect_mirror(-0.5, &N), 0.0);
        for w in [0.1, 1.0, 7.5, 1e3] {
            assert_eq!(force_spectrum_perfect_mirror(w, &N), 4.0 * momentum_density_spectrum(w, &N));
        }
    }
}
