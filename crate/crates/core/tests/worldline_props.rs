use proptest::prelude::*;
use vacmotion::minkowski::dot;
use vacmotion::worldline::{
    abraham_vector, conformal_map, map_worldline, proper_time, radiation_reaction, DerivativeSource,
    FourVector, Parameterization, Worldline,
};
use vacmotion::Constants;

fn small_vector(bound: f64) -> impl Strategy<Value = [f64; 4]> {
    prop::array::uniform4(-bound..bound)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn conformal_map_keeps_null_separations(
        x in small_vector(1.0),
        dir in prop::array::uniform3(-1.0..1.0f64),
        t in -1.0..1.0f64,
        a in small_vector(0.3),
    ) {
        let norm = (dir[0] * dir[0] + dir[1] * dir[1] + dir[2] * dir[2]).sqrt();
        prop_assume!(norm > 0.1);
        let y = [x[0] + t, x[1] + t * dir[0] / norm, x[2] + t * dir[1] / norm, x[3] + t * dir[2] / norm];
        let av = FourVector::new(a);
        let denom = |p: [f64; 4]| 1.0 - 2.0 * dot(a, p) + dot(a, a) * dot(p, p);
        prop_assume!(denom(x).abs() > 0.1 && denom(y).abs() > 0.1);
        let xb = conformal_map(FourVector::new(x), av).unwrap().components;
        let yb = conformal_map(FourVector::new(y), av).unwrap().components;
        let d = [xb[0] - yb[0], xb[1] - yb[1], xb[2] - yb[2], xb[3] - yb[3]];
        prop_assert!(dot(d, d).abs() < 1e-10, "interval {}", dot(d, d));
    }

    #[test]
    fn abraham_vector_is_transverse(amp in 0.01..0.5f64, freq in 0.1..1.5f64, t in -3.0..3.0f64) {
        prop_assume!(amp * freq < 0.9);
        let w = Worldline::sinusoid(amp, freq);
        let g = abraham_vector(&w, t).unwrap();
        let u = w.four_velocity(t).unwrap();
        prop_assert!(g.dot(&u).abs() < 1e-10, "{}", g.dot(&u));
    }

    #[test]
    fn polynomial_derivatives_agree(c in prop::array::uniform4(-0.2..0.2f64), t in -1.0..1.0f64) {
        // quartic spatial motion: the 5-point stencils are exact up to rounding
        let w = Worldline::polynomial([
            vec![0.0, 1.0],
            vec![0.0, c[0], c[1], c[2], c[3]],
            vec![0.0, 0.1],
            vec![],
        ]);
        let v = 0.1f64.hypot(c[0] + 2.0 * c[1] * t + 3.0 * c[2] * t * t + 4.0 * c[3] * t.powi(3));
        prop_assume!(v < 0.8);
        let fd = w.with_derivatives(DerivativeSource::FiniteDifference { step: None }).unwrap();
        let exact = abraham_vector(&w, t).unwrap();
        let approx = abraham_vector(&fd, t).unwrap();
        for mu in 0..4 {
            let diff = (exact.components[mu] - approx.components[mu]).abs();
            prop_assert!(diff < 1e-5 * (1.0 + exact.max_abs()), "{} {}", mu, diff);
        }
    }
}

#[test]
fn hyperbolic_motion_is_force_free() {
    for a in [1e-3, 1e-1, 1.0, 10.0, 1e3] {
        for (w, range) in [
            (Worldline::hyperbolic(a).unwrap(), 2.0 / a),
            (Worldline::hyperbolic_coordinate_time(a).unwrap(), 5.0 / a),
        ] {
            for i in 0..11 {
                let l = -range + 2.0 * range * i as f64 / 10.0;
                let g = abraham_vector(&w, l).unwrap();
                assert!(g.max_abs() < 1e-7, "a = {a}, lambda = {l}: {g}");
                let f = radiation_reaction(&w, l, &Constants::NATURAL).unwrap();
                assert!(f.max_abs() < 1e-7 / (6.0 * std::f64::consts::PI));
            }
        }
    }
}

#[test]
fn oscillating_mirror_feels_a_force() {
    let w = Worldline::sinusoid(0.1, 1.0);
    assert!(abraham_vector(&w, 0.3).unwrap().max_abs() > 1e-3);
}

#[test]
fn conformal_image_of_rest_is_uniformly_accelerated() {
    let rest = Worldline::rest();
    let a = FourVector::new([0.0, 0.2, -0.1, 0.05]);
    let image = map_worldline(&rest, a, (-2.0, 2.0)).unwrap();
    assert_eq!(image.parameterization(), Parameterization::ProperTime);
    let tau_end = proper_time(&rest.clone(), -2.0, 2.0).unwrap();
    assert!((tau_end - 4.0).abs() < 1e-12);
    for i in 0..10 {
        let s = 0.1 + 0.2 * i as f64;
        let g = abraham_vector(&image, s).unwrap();
        assert!(g.max_abs() < 1e-7, "{s}: {g}");
        let u = image.four_velocity(s).unwrap();
        assert!((u.square() - 1.0).abs() < 1e-10);
    }
}

#[test]
fn singular_locus_is_reported() {
    // rest worldline at the origin meets 1 - 2 a.x + a^2 x^2 = 0 where t = 1/a0
    let rest = Worldline::rest();
    let a = FourVector::new([0.5, 0.0, 0.0, 0.0]);
    let err = map_worldline(&rest, a, (0.0, 4.0)).unwrap_err();
    assert!(matches!(err, vacmotion::Error::Kinematics(_)), "{err}");
    assert!(matches!(
        conformal_map(FourVector::new([2.0, 0.0, 0.0, 0.0]), a),
        Err(vacmotion::Error::Domain(_))
    ));
}
