//! Flat-space metric helpers, signature (+, -, -, -).

/// Diagonal of the Minkowski metric.
pub const METRIC: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

#[inline]
pub fn eta(mu: usize, nu: usize) -> f64 {
    if mu == nu {
        METRIC[mu]
    } else {
        0.0
    }
}

/// Lowers (or raises) an index. The operation is its own inverse.
#[inline]
pub fn lower(v: [f64; 4]) -> [f64; 4] {
    [v[0], -v[1], -v[2], -v[3]]
}

#[inline]
pub fn dot(a: [f64; 4], b: [f64; 4]) -> f64 {
    a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3]
}

#[inline]
pub fn square(a: [f64; 4]) -> f64 {
    dot(a, a)
}

/// Heaviside step with the symmetric value 1/2 at the origin.
#[inline]
pub fn theta(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        0.0
    } else {
        0.5
    }
}

/// Sign function with value 0 at the origin.
#[inline]
pub fn sign(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}
