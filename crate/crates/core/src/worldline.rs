//! Relativistic worldline kinematics.
//!
//! A [`Worldline`] maps a parameter `lambda` to an event `x^mu(lambda)`. Its
//! derivatives up to third order are either propagated analytically (each
//! built-in trajectory, and the conformal image of any analytic worldline,
//! carries exact derivatives) or taken by five-point central differences.
//! Derivatives with respect to proper time are obtained from the
//! `lambda`-derivatives by the chain rule, so any timelike parameterisation
//! works.
//!
//! Uniform acceleration is characterised by a vanishing Abraham vector
//! `Gamma^mu = x''' + (x'')^2 x'` (primes are proper-time derivatives), and a
//! perfect mirror in a two-dimensional vacuum feels the radiation reaction
//! `F^mu = (hbar / 6 pi c^2) Gamma^mu`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::minkowski::{self, dot};
use crate::quadrature;
use crate::{Constants, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IndexPosition {
    Contravariant,
    Covariant,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FourVector {
    pub components: [f64; 4],
    pub index: IndexPosition,
}

impl FourVector {
    pub const ZERO: FourVector = FourVector::new([0.0; 4]);

    /// Contravariant vector.
    pub const fn new(components: [f64; 4]) -> Self {
        FourVector { components, index: IndexPosition::Contravariant }
    }

    pub fn covariant(components: [f64; 4]) -> Self {
        FourVector { components, index: IndexPosition::Covariant }
    }

    pub fn lower(&self) -> Self {
        match self.index {
            IndexPosition::Covariant => *self,
            IndexPosition::Contravariant => FourVector::covariant(minkowski::lower(self.components)),
        }
    }

    pub fn raise(&self) -> Self {
        match self.index {
            IndexPosition::Contravariant => *self,
            IndexPosition::Covariant => FourVector::new(minkowski::lower(self.components)),
        }
    }

    /// Flips the index position using the metric.
    pub fn toggle_index(&self) -> Self {
        match self.index {
            IndexPosition::Contravariant => self.lower(),
            IndexPosition::Covariant => self.raise(),
        }
    }

    /// Minkowski product, independent of the index positions of the operands.
    pub fn dot(&self, other: &FourVector) -> f64 {
        dot(self.raise().components, other.raise().components)
    }

    pub fn square(&self) -> f64 {
        self.dot(self)
    }

    pub fn max_abs(&self) -> f64 {
        self.components.iter().fold(0.0f64, |m, c| m.max(c.abs()))
    }

    fn scaled(&self, s: f64) -> Self {
        FourVector { components: self.components.map(|c| c * s), index: self.index }
    }
}

impl fmt::Display for FourVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.components;
        write!(f, "({a:e}, {b:e}, {c:e}, {d:e})")
    }
}

/// Position and its first three derivatives with respect to the worldline
/// parameter, contravariant components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathJet {
    pub x: [f64; 4],
    pub d1: [f64; 4],
    pub d2: [f64; 4],
    pub d3: [f64; 4],
}

/// Kinematic quantities with respect to proper time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProperKinematics {
    pub position: [f64; 4],
    pub velocity: [f64; 4],
    pub acceleration: [f64; 4],
    pub jerk: [f64; 4],
    /// `d tau / d lambda`.
    pub rate: f64,
}

impl PathJet {
    /// Converts parameter derivatives to proper-time derivatives.
    pub fn to_proper(&self) -> Result<ProperKinematics> {
        let s2 = dot(self.d1, self.d1);
        if !(s2 > 0.0) || !s2.is_finite() {
            return Err(Error::kinematics(format!(
                "tangent is not timelike (eta(dx, dx) = {s2:e})"
            )));
        }
        let s = s2.sqrt();
        let d12 = dot(self.d1, self.d2);
        let sp = d12 / s;
        let spp = (dot(self.d2, self.d2) + dot(self.d1, self.d3)) / s - d12 * d12 / (s2 * s);
        let (s3, s4) = (s2 * s, s2 * s2);
        let s5 = s4 * s;
        let mut out = ProperKinematics {
            position: self.x,
            velocity: [0.0; 4],
            acceleration: [0.0; 4],
            jerk: [0.0; 4],
            rate: s,
        };
        for mu in 0..4 {
            let (v1, v2, v3) = (self.d1[mu], self.d2[mu], self.d3[mu]);
            out.velocity[mu] = v1 / s;
            out.acceleration[mu] = v2 / s2 - v1 * sp / s3;
            out.jerk[mu] = v3 / s3 - 3.0 * v2 * sp / s4 - v1 * spp / s4 + 3.0 * v1 * sp * sp / s5;
        }
        Ok(out)
    }
}

impl ProperKinematics {
    fn as_jet(&self) -> PathJet {
        PathJet { x: self.position, d1: self.velocity, d2: self.acceleration, d3: self.jerk }
    }
}

/// A parametric path through Minkowski space.
pub trait Trajectory: Send + Sync + fmt::Debug {
    fn position(&self, lambda: f64) -> Result<[f64; 4]>;

    /// Exact derivatives, when the trajectory can supply them.
    fn analytic_jet(&self, _lambda: f64) -> Option<Result<PathJet>> {
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Parameterization {
    ProperTime,
    CoordinateTime,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DerivativeSource {
    Analytic,
    /// Five-point central differences. `None` selects the default step
    /// `1e-3 * max(1, |lambda|)`.
    FiniteDifference { step: Option<f64> },
}

#[derive(Clone)]
pub struct Worldline {
    path: Arc<dyn Trajectory>,
    parameterization: Parameterization,
    derivatives: DerivativeSource,
}

impl fmt::Debug for Worldline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Worldline")
            .field("path", &self.path)
            .field("parameterization", &self.parameterization)
            .field("derivatives", &self.derivatives)
            .finish()
    }
}

impl Worldline {
    pub fn new(
        path: Arc<dyn Trajectory>,
        parameterization: Parameterization,
        derivatives: DerivativeSource,
    ) -> Result<Self> {
        if let DerivativeSource::FiniteDifference { step: Some(h) } = derivatives {
            if !(h > 0.0) {
                return Err(Error::invalid("finite-difference step must be positive"));
            }
        }
        Ok(Worldline { path, parameterization, derivatives })
    }

    /// Particle at rest at the spatial origin, parameterised by `t = tau`.
    pub fn rest() -> Self {
        Self::inertial([0.0; 3], [0.0; 3])
    }

    /// `x = (t, x0 + v t)`, parameterised by coordinate time.
    pub fn inertial(origin: [f64; 3], velocity: [f64; 3]) -> Self {
        Worldline {
            path: Arc::new(Inertial { origin, velocity }),
            parameterization: Parameterization::CoordinateTime,
            derivatives: DerivativeSource::Analytic,
        }
    }

    /// Uniform proper acceleration `a` along `x^1`, proper-time parameterised:
    /// `x^0 = sinh(a tau)/a`, `x^1 = cosh(a tau)/a`.
    pub fn hyperbolic(acceleration: f64) -> Result<Self> {
        if !(acceleration > 0.0) || !acceleration.is_finite() {
            return Err(Error::invalid("hyperbolic worldline needs a positive finite acceleration"));
        }
        Ok(Worldline {
            path: Arc::new(Hyperbolic { acceleration }),
            parameterization: Parameterization::ProperTime,
            derivatives: DerivativeSource::Analytic,
        })
    }

    /// The same hyperbola parameterised by coordinate time:
    /// `x^1 = sqrt(1/a^2 + t^2)`.
    pub fn hyperbolic_coordinate_time(acceleration: f64) -> Result<Self> {
        if !(acceleration > 0.0) || !acceleration.is_finite() {
            return Err(Error::invalid("hyperbolic worldline needs a positive finite acceleration"));
        }
        Ok(Worldline {
            path: Arc::new(HyperbolicCoordinate { acceleration }),
            parameterization: Parameterization::CoordinateTime,
            derivatives: DerivativeSource::Analytic,
        })
    }

    /// `x^1 = amplitude * sin(frequency * t)`.
    pub fn sinusoid(amplitude: f64, frequency: f64) -> Self {
        Worldline {
            path: Arc::new(Sinusoid { amplitude, frequency }),
            parameterization: Parameterization::CoordinateTime,
            derivatives: DerivativeSource::Analytic,
        }
    }

    /// Each component is a polynomial in the parameter, coefficients in
    /// ascending order.
    pub fn polynomial(coefficients: [Vec<f64>; 4]) -> Self {
        Worldline {
            path: Arc::new(Polynomial { coefficients }),
            parameterization: Parameterization::CoordinateTime,
            derivatives: DerivativeSource::Analytic,
        }
    }

    /// Wraps a position-only closure; derivatives come from finite differences.
    pub fn from_fn<F>(f: F, parameterization: Parameterization, step: Option<f64>) -> Result<Self>
    where
        F: Fn(f64) -> [f64; 4] + Send + Sync + 'static,
    {
        Self::new(
            Arc::new(FnTrajectory(Box::new(f))),
            parameterization,
            DerivativeSource::FiniteDifference { step },
        )
    }

    /// Same path with a different derivative source.
    pub fn with_derivatives(&self, derivatives: DerivativeSource) -> Result<Self> {
        Self::new(self.path.clone(), self.parameterization, derivatives)
    }

    pub fn parameterization(&self) -> Parameterization {
        self.parameterization
    }

    pub fn derivative_source(&self) -> DerivativeSource {
        self.derivatives
    }

    pub fn position(&self, lambda: f64) -> Result<FourVector> {
        self.path.position(lambda).map(FourVector::new)
    }

    /// Position and parameter derivatives up to third order.
    pub fn jet(&self, lambda: f64) -> Result<PathJet> {
        match self.derivatives {
            DerivativeSource::Analytic => self.path.analytic_jet(lambda).unwrap_or_else(|| {
                Err(Error::kinematics("trajectory has no analytic derivatives"))
            }),
            DerivativeSource::FiniteDifference { step } => {
                let h = step.unwrap_or_else(|| default_step(lambda));
                finite_difference_jet(self.path.as_ref(), lambda, h)
            }
        }
    }

    pub fn kinematics(&self, lambda: f64) -> Result<ProperKinematics> {
        let k = self.jet(lambda)?.to_proper()?;
        if k.jerk.iter().chain(&k.acceleration).any(|v| !v.is_finite()) {
            return Err(Error::kinematics(format!(
                "derivatives are not finite at lambda = {lambda:e}"
            )));
        }
        Ok(k)
    }

    pub fn four_velocity(&self, lambda: f64) -> Result<FourVector> {
        Ok(FourVector::new(self.kinematics(lambda)?.velocity))
    }

    /// `d tau / d lambda`.
    pub fn rate(&self, lambda: f64) -> Result<f64> {
        let d1 = self.jet(lambda)?.d1;
        let s2 = dot(d1, d1);
        if !(s2 > 0.0) {
            return Err(Error::kinematics(format!(
                "spacelike or null tangent at lambda = {lambda:e}"
            )));
        }
        Ok(s2.sqrt())
    }
}

/// Step rule for finite differences.
pub fn default_step(lambda: f64) -> f64 {
    1e-3 * lambda.abs().max(1.0)
}

fn finite_difference_jet(path: &dyn Trajectory, lambda: f64, h: f64) -> Result<PathJet> {
    let fm2 = path.position(lambda - 2.0 * h)?;
    let fm1 = path.position(lambda - h)?;
    let f0 = path.position(lambda)?;
    let fp1 = path.position(lambda + h)?;
    let fp2 = path.position(lambda + 2.0 * h)?;
    let mut jet = PathJet { x: f0, d1: [0.0; 4], d2: [0.0; 4], d3: [0.0; 4] };
    for mu in 0..4 {
        jet.d1[mu] = (fm2[mu] - 8.0 * fm1[mu] + 8.0 * fp1[mu] - fp2[mu]) / (12.0 * h);
        jet.d2[mu] =
            (-fm2[mu] + 16.0 * fm1[mu] - 30.0 * f0[mu] + 16.0 * fp1[mu] - fp2[mu]) / (12.0 * h * h);
        jet.d3[mu] = (-fm2[mu] + 2.0 * fm1[mu] - 2.0 * fp1[mu] + fp2[mu]) / (2.0 * h * h * h);
    }
    Ok(jet)
}

/// Proper time elapsed between two parameter values,
/// `integral of sqrt(eta(dx/dlambda, dx/dlambda)) dlambda`.
pub fn proper_time(w: &Worldline, lambda0: f64, lambda1: f64) -> Result<f64> {
    let est = quadrature::integrate(|l| w.rate(l), lambda0, lambda1, 1e-12, 0.0, 4000)?;
    if !est.converged && est.abs_error > 1e-10 * est.value.abs() {
        return Err(Error::kinematics(format!(
            "proper-time quadrature did not converge (error estimate {:e})",
            est.abs_error
        )));
    }
    Ok(est.value)
}

/// Abraham vector at parameter value `lambda` (the proper time itself for
/// proper-time parameterised worldlines).
pub fn abraham_vector(w: &Worldline, lambda: f64) -> Result<FourVector> {
    let k = w.kinematics(lambda)?;
    let a2 = dot(k.acceleration, k.acceleration);
    let mut gamma = [0.0; 4];
    for mu in 0..4 {
        gamma[mu] = k.jerk[mu] + a2 * k.velocity[mu];
    }
    Ok(FourVector::new(gamma))
}

/// Radiation reaction on a perfect mirror in a two-dimensional vacuum.
pub fn radiation_reaction(w: &Worldline, lambda: f64, k: &Constants) -> Result<FourVector> {
    let gamma = abraham_vector(w, lambda)?;
    Ok(gamma.scaled(k.hbar / (6.0 * std::f64::consts::PI * k.c * k.c)))
}

fn conformal_denominator(x: [f64; 4], a: [f64; 4]) -> (f64, f64) {
    let ax = dot(a, x);
    let a2x2 = dot(a, a) * dot(x, x);
    let d = 1.0 - 2.0 * ax + a2x2;
    let scale = 1.0 + (2.0 * ax).abs() + a2x2.abs();
    (d, scale)
}

/// Special conformal transformation `x -> (x - a x^2) / (1 - 2 a.x + a^2 x^2)`,
/// equivalently `xbar / xbar^2 = x / x^2 - a`.
pub fn conformal_map(x: FourVector, a: FourVector) -> Result<FourVector> {
    let (x, a) = (x.raise().components, a.raise().components);
    let (d, scale) = conformal_denominator(x, a);
    if d.abs() <= 1e-14 * scale {
        return Err(Error::domain(format!(
            "event {} lies on the singular locus of the conformal map",
            FourVector::new(x)
        )));
    }
    let x2 = dot(x, x);
    let mut out = [0.0; 4];
    for mu in 0..4 {
        out[mu] = (x[mu] - a[mu] * x2) / d;
    }
    Ok(FourVector::new(out))
}

/// Conformal image of a worldline, reparameterised by its own proper time
/// measured from `lambda_range.0`. The range is scanned for crossings of
/// the singular locus before the map is accepted.
pub fn map_worldline(w: &Worldline, a: FourVector, lambda_range: (f64, f64)) -> Result<Worldline> {
    let a = a.raise().components;
    if a == [0.0; 4] {
        return Ok(w.clone());
    }
    let (l0, l1) = lambda_range;
    const SAMPLES: usize = 512;
    let mut prev: Option<(f64, f64)> = None;
    for i in 0..=SAMPLES {
        let l = l0 + (l1 - l0) * i as f64 / SAMPLES as f64;
        let (d, scale) = conformal_denominator(w.path.position(l)?, a);
        let crossed = matches!(prev, Some((_, pd)) if pd.signum() != d.signum());
        if d.abs() <= 1e-14 * scale || crossed {
            return Err(Error::kinematics(format!(
                "worldline meets the singular locus of the conformal map near lambda = {l:e}"
            )));
        }
        prev = Some((l, d));
    }
    let image = Worldline {
        path: Arc::new(ConformalImage { inner: w.clone(), a }),
        parameterization: w.parameterization,
        derivatives: DerivativeSource::Analytic,
    };
    Ok(Worldline {
        path: Arc::new(ProperTimeReparam { inner: image, origin: l0 }),
        parameterization: Parameterization::ProperTime,
        derivatives: DerivativeSource::Analytic,
    })
}

#[derive(Debug)]
struct Inertial {
    origin: [f64; 3],
    velocity: [f64; 3],
}

impl Trajectory for Inertial {
    fn position(&self, t: f64) -> Result<[f64; 4]> {
        let (o, v) = (self.origin, self.velocity);
        Ok([t, o[0] + v[0] * t, o[1] + v[1] * t, o[2] + v[2] * t])
    }

    fn analytic_jet(&self, t: f64) -> Option<Result<PathJet>> {
        let v = self.velocity;
        Some(self.position(t).map(|x| PathJet {
            x,
            d1: [1.0, v[0], v[1], v[2]],
            d2: [0.0; 4],
            d3: [0.0; 4],
        }))
    }
}

#[derive(Debug)]
struct Hyperbolic {
    acceleration: f64,
}

impl Trajectory for Hyperbolic {
    fn position(&self, tau: f64) -> Result<[f64; 4]> {
        let a = self.acceleration;
        Ok([(a * tau).sinh() / a, (a * tau).cosh() / a, 0.0, 0.0])
    }

    fn analytic_jet(&self, tau: f64) -> Option<Result<PathJet>> {
        let a = self.acceleration;
        let (sh, ch) = ((a * tau).sinh(), (a * tau).cosh());
        Some(Ok(PathJet {
            x: [sh / a, ch / a, 0.0, 0.0],
            d1: [ch, sh, 0.0, 0.0],
            d2: [a * sh, a * ch, 0.0, 0.0],
            d3: [a * a * ch, a * a * sh, 0.0, 0.0],
        }))
    }
}

#[derive(Debug)]
struct HyperbolicCoordinate {
    acceleration: f64,
}

impl Trajectory for HyperbolicCoordinate {
    fn position(&self, t: f64) -> Result<[f64; 4]> {
        let r = 1.0 / self.acceleration;
        Ok([t, (r * r + t * t).sqrt(), 0.0, 0.0])
    }

    fn analytic_jet(&self, t: f64) -> Option<Result<PathJet>> {
        let r = 1.0 / self.acceleration;
        let q = (r * r + t * t).sqrt();
        let q3 = q * q * q;
        Some(Ok(PathJet {
            x: [t, q, 0.0, 0.0],
            d1: [1.0, t / q, 0.0, 0.0],
            d2: [0.0, r * r / q3, 0.0, 0.0],
            d3: [0.0, -3.0 * r * r * t / (q3 * q * q), 0.0, 0.0],
        }))
    }
}

#[derive(Debug)]
struct Sinusoid {
    amplitude: f64,
    frequency: f64,
}

impl Trajectory for Sinusoid {
    fn position(&self, t: f64) -> Result<[f64; 4]> {
        Ok([t, self.amplitude * (self.frequency * t).sin(), 0.0, 0.0])
    }

    fn analytic_jet(&self, t: f64) -> Option<Result<PathJet>> {
        let (e, w) = (self.amplitude, self.frequency);
        let (s, c) = (w * t).sin_cos();
        Some(Ok(PathJet {
            x: [t, e * s, 0.0, 0.0],
            d1: [1.0, e * w * c, 0.0, 0.0],
            d2: [0.0, -e * w * w * s, 0.0, 0.0],
            d3: [0.0, -e * w * w * w * c, 0.0, 0.0],
        }))
    }
}

#[derive(Debug)]
struct Polynomial {
    coefficients: [Vec<f64>; 4],
}

impl Polynomial {
    fn derivative(c: &[f64], order: usize, t: f64) -> f64 {
        // Horner on the `order`-th derivative coefficients
        let mut acc = 0.0;
        for (n, &cn) in c.iter().enumerate().skip(order).rev() {
            let falling: f64 = (0..order).map(|k| (n - k) as f64).product();
            acc = acc * t + cn * falling;
        }
        acc
    }
}

impl Trajectory for Polynomial {
    fn position(&self, t: f64) -> Result<[f64; 4]> {
        Ok(std::array::from_fn(|mu| Self::derivative(&self.coefficients[mu], 0, t)))
    }

    fn analytic_jet(&self, t: f64) -> Option<Result<PathJet>> {
        let d = |order: usize| -> [f64; 4] {
            std::array::from_fn(|mu| Self::derivative(&self.coefficients[mu], order, t))
        };
        Some(Ok(PathJet { x: d(0), d1: d(1), d2: d(2), d3: d(3) }))
    }
}

type PositionFn = Box<dyn Fn(f64) -> [f64; 4] + Send + Sync>;

struct FnTrajectory(PositionFn);

impl fmt::Debug for FnTrajectory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("FnTrajectory")
    }
}

impl Trajectory for FnTrajectory {
    fn position(&self, lambda: f64) -> Result<[f64; 4]> {
        let x = (self.0)(lambda);
        if x.iter().any(|c| !c.is_finite()) {
            return Err(Error::kinematics(format!("non-finite event at lambda = {lambda:e}")));
        }
        Ok(x)
    }
}

/// Scalar together with its first three derivatives.
#[derive(Debug, Clone, Copy)]
struct Jet([f64; 4]);

impl Jet {
    fn constant(c: f64) -> Self {
        Jet([c, 0.0, 0.0, 0.0])
    }

    fn add(self, o: Jet) -> Jet {
        Jet(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }

    fn scale(self, s: f64) -> Jet {
        Jet(self.0.map(|v| v * s))
    }

    fn mul(self, o: Jet) -> Jet {
        let ([f0, f1, f2, f3], [g0, g1, g2, g3]) = (self.0, o.0);
        Jet([
            f0 * g0,
            f1 * g0 + f0 * g1,
            f2 * g0 + 2.0 * f1 * g1 + f0 * g2,
            f3 * g0 + 3.0 * f2 * g1 + 3.0 * f1 * g2 + f0 * g3,
        ])
    }

    fn recip(self) -> Jet {
        let [g0, g1, g2, g3] = self.0;
        let r = 1.0 / g0;
        let (r2, r3) = (r * r, r * r * r);
        Jet([
            r,
            -g1 * r2,
            2.0 * g1 * g1 * r3 - g2 * r2,
            -6.0 * g1 * g1 * g1 * r3 * r + 6.0 * g1 * g2 * r3 - g3 * r2,
        ])
    }
}

fn components(jet: &PathJet) -> [Jet; 4] {
    std::array::from_fn(|mu| Jet([jet.x[mu], jet.d1[mu], jet.d2[mu], jet.d3[mu]]))
}

fn minkowski_jet(a: &[Jet; 4], b: &[Jet; 4]) -> Jet {
    let mut acc = a[0].mul(b[0]);
    for mu in 1..4 {
        acc = acc.add(a[mu].mul(b[mu]).scale(-1.0));
    }
    acc
}

#[derive(Debug)]
struct ConformalImage {
    inner: Worldline,
    a: [f64; 4],
}

impl Trajectory for ConformalImage {
    fn position(&self, lambda: f64) -> Result<[f64; 4]> {
        let x = self.inner.path.position(lambda)?;
        conformal_map(FourVector::new(x), FourVector::new(self.a))
            .map(|v| v.components)
            .map_err(|_| {
                Error::kinematics(format!(
                    "worldline meets the singular locus of the conformal map at lambda = {lambda:e}"
                ))
            })
    }

    fn analytic_jet(&self, lambda: f64) -> Option<Result<PathJet>> {
        Some(self.inner.jet(lambda).and_then(|jet| {
            let x = components(&jet);
            let a = self.a;
            let x2 = minkowski_jet(&x, &x);
            let ax = x[0]
                .scale(a[0])
                .add(x[1].scale(-a[1]))
                .add(x[2].scale(-a[2]))
                .add(x[3].scale(-a[3]));
            let denom = Jet::constant(1.0).add(ax.scale(-2.0)).add(x2.scale(dot(a, a)));
            if denom.0[0].abs() <= 1e-14 {
                return Err(Error::kinematics(format!(
                    "worldline meets the singular locus of the conformal map at lambda = {lambda:e}"
                )));
            }
            let inv = denom.recip();
            let out: [Jet; 4] =
                std::array::from_fn(|mu| x[mu].add(x2.scale(-a[mu])).mul(inv));
            Ok(PathJet {
                x: out.map(|j| j.0[0]),
                d1: out.map(|j| j.0[1]),
                d2: out.map(|j| j.0[2]),
                d3: out.map(|j| j.0[3]),
            })
        }))
    }
}

/// Reparameterises a worldline by the proper time elapsed since `origin`.
#[derive(Debug)]
struct ProperTimeReparam {
    inner: Worldline,
    origin: f64,
}

impl ProperTimeReparam {
    fn parameter_at(&self, tau: f64) -> Result<f64> {
        if tau == 0.0 {
            return Ok(self.origin);
        }
        let mut lambda = self.origin + tau / self.inner.rate(self.origin)?;
        for _ in 0..60 {
            let elapsed = proper_time(&self.inner, self.origin, lambda)?;
            let rate = self.inner.rate(lambda)?;
            let step = (elapsed - tau) / rate;
            lambda -= step;
            if step.abs() <= 1e-14 * (1.0 + lambda.abs()) {
                return Ok(lambda);
            }
        }
        Err(Error::kinematics(format!(
            "could not invert proper time {tau:e} along the worldline"
        )))
    }
}

impl Trajectory for ProperTimeReparam {
    fn position(&self, tau: f64) -> Result<[f64; 4]> {
        self.inner.path.position(self.parameter_at(tau)?)
    }

    fn analytic_jet(&self, tau: f64) -> Option<Result<PathJet>> {
        Some(
            self.parameter_at(tau)
                .and_then(|l| self.inner.jet(l))
                .and_then(|jet| jet.to_proper())
                .map(|k| k.as_jet()),
        )
    }
}
