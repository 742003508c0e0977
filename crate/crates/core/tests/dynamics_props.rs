use proptest::prelude::*;
use vacmotion::cavity::{
    airy_buildup, matching_resonance, radiated_photons, resonance_frequencies, Cavity, MotionMode,
    MotionSpec,
};
use vacmotion::mirror_dynamics::{
    chi_ff, chi_qq, compton_background, langevin_position_spectrum, ForceSusceptibilityModel,
    OscillatorModel,
};
use vacmotion::quadrature::integrate_fn;
use vacmotion::spectra::FrequencyGrid;
use vacmotion::Constants;

const N: Constants = Constants::NATURAL;
const PI: f64 = std::f64::consts::PI;

#[test]
fn langevin_paths_agree_on_dense_grids() {
    let grid = FrequencyGrid::logarithmic(1e-2, 1e2, 1000).unwrap();
    let osc = OscillatorModel::new(1.0, 1.3, false).unwrap();
    for force in [ForceSusceptibilityModel::PerfectMirror, ForceSusceptibilityModel::cutoff(5.0).unwrap()] {
        let s = langevin_position_spectrum(osc, force, &grid, &N).unwrap();
        for (w, v) in s.iter() {
            let chi = chi_qq(osc, force, w, &N).unwrap();
            let via_force = chi.norm_sqr() * 2.0 * chi_ff(force, w, &N).im;
            assert!((v.re - via_force).abs() <= 1e-10 * via_force.abs(), "{w}");
        }
    }
}

#[test]
fn decoupled_oscillator_has_no_noise_off_resonance() {
    let grid = FrequencyGrid::linear(0.1, 0.9, 9).unwrap();
    let osc = OscillatorModel::new(1.0, 1.0, true).unwrap();
    let s = langevin_position_spectrum(osc, ForceSusceptibilityModel::Decoupled, &grid, &N).unwrap();
    assert!(s.values().iter().all(|v| v.re == 0.0));
    let on_pole = FrequencyGrid::from_points(vec![0.5, 1.0], vacmotion::spectra::Spacing::Linear).unwrap();
    let err = langevin_position_spectrum(osc, ForceSusceptibilityModel::Decoupled, &on_pole, &N).unwrap_err();
    assert!(matches!(err, vacmotion::Error::Singularity(ref m) if m.contains('1')), "{err}");
}

#[test]
fn weak_coupling_sharpens_the_resonance() {
    // peak height grows as the coupling (hbar in natural units) shrinks
    let osc = OscillatorModel::new(1.0, 1.0, true).unwrap();
    let f = ForceSusceptibilityModel::PerfectMirror;
    let peak = |k: &Constants| chi_qq(osc, f, 1.0, k).unwrap().im;
    let off = |k: &Constants| chi_qq(osc, f, 0.7, k).unwrap().im;
    let strong = Constants { hbar: 1.0, ..N };
    let weak = Constants { hbar: 1e-3, ..N };
    assert!(peak(&weak) / off(&weak) > 1e3 * peak(&strong) / off(&strong));
}

proptest! {
    #[test]
    fn passivity_is_inherited(m in 0.5..5.0f64, w0 in 0.0..3.0f64, wc in 0.5..10.0f64, w in 1e-3..20.0f64) {
        let osc = OscillatorModel::new(m, w0, false).unwrap();
        for f in [ForceSusceptibilityModel::PerfectMirror, ForceSusceptibilityModel::cutoff(wc).unwrap()] {
            prop_assert!(chi_ff(f, w, &N).im >= 0.0);
            prop_assert!(chi_qq(osc, f, w, &N).unwrap().im >= 0.0);
        }
    }

    #[test]
    fn compton_background_is_pure_inverse_frequency(m in 1e-3..1e3f64, w in 1e-3..1e3f64) {
        let base = compton_background(m, 1.0, &N).unwrap();
        let v = compton_background(m, w, &N).unwrap();
        prop_assert!((v * w / base - 1.0).abs() < 1e-14);
    }

    #[test]
    fn airy_is_periodic(r1 in 0.0..0.99f64, r2 in 0.0..0.99f64, len in 0.1..10.0f64, w in 0.0..50.0f64) {
        let cav = Cavity::new(r1, r2, len, &N).unwrap();
        let g0 = airy_buildup(&cav, w);
        let g1 = airy_buildup(&cav, w + PI / cav.tau());
        prop_assert!((g0 - g1).abs() <= 1e-12 * g0.max(1.0) * (1.0 + w * cav.tau()), "{} {}", g0, g1);
    }

    #[test]
    fn photons_grow_with_each_factor(
        scale in 1.01..3.0f64,
        n in 1u64..20,
        a in 1e-4..1e-2f64,
        t in 1.0..100.0f64,
    ) {
        let cav = Cavity::new(0.9, 0.95, 1.0, &N).unwrap();
        let omega = (2 * n) as f64 * PI / cav.tau();
        prop_assume!(omega * a * scale < 1.0);
        let base = MotionSpec::new(MotionMode::Elongation, omega, a, t).unwrap();
        let n0 = radiated_photons(&cav, &base, &N).unwrap();
        let longer = MotionSpec { duration: t * scale, ..base };
        let wider = MotionSpec { amplitude: a * scale, ..base };
        prop_assert!(radiated_photons(&cav, &longer, &N).unwrap() > n0);
        prop_assert!(radiated_photons(&cav, &wider, &N).unwrap() > n0);
        let finer = Cavity::new(0.95, 0.95, 1.0, &N).unwrap();
        prop_assert!(radiated_photons(&finer, &base, &N).unwrap() > n0);
    }
}

#[test]
fn airy_period_average_is_one() {
    for r in [0.0f64, 0.3, 0.9, 0.99] {
        let cav = Cavity::new(r.sqrt(), r.sqrt(), 1.0, &N).unwrap();
        let period = PI / cav.tau();
        let avg = integrate_fn(|w| airy_buildup(&cav, w), 0.0, period, 1e-13, 0.0).value / period;
        assert!((avg - 1.0).abs() < 1e-8, "r = {r}: {avg}");
    }
}

#[test]
fn photon_count_oracle_and_linearity() {
    // omega T / 2 pi = 1e7, v / c = 1e-8, F = 1e9
    let cav = Cavity::new(0.5, 0.5, 1.0, &N).unwrap();
    let omega = 2.0 * PI / cav.tau();
    let motion = MotionSpec::new(MotionMode::Elongation, omega, 1e-8 / omega, 1e7 * 2.0 * PI / omega).unwrap();
    let n = radiated_photons(&cav, &motion, &N).unwrap();
    let per_finesse = n / cav.finesse();
    assert!((per_finesse * 1e9 - 1.0).abs() < 1e-9);
    let other = Cavity::new(0.99, 0.999, 1.0, &N).unwrap();
    let ratio = radiated_photons(&other, &motion, &N).unwrap() / n;
    assert!((ratio / (other.finesse() / cav.finesse()) - 1.0).abs() < 1e-15);
}

#[test]
fn resonance_gate() {
    let cav = Cavity::new(0.5, 0.5, 2.0, &N).unwrap();
    for r in resonance_frequencies(&cav, 12).unwrap() {
        let good = MotionSpec::new(r.parity.mode(), r.omega * (1.0 + 5e-7), 1e-3, 1.0).unwrap();
        assert_eq!(matching_resonance(&cav, &good).unwrap().index, r.index);
        let other = match r.parity.mode() {
            MotionMode::Elongation => MotionMode::Translation,
            MotionMode::Translation => MotionMode::Elongation,
        };
        assert!(radiated_photons(&cav, &MotionSpec { mode: other, ..good }, &N).is_err());
        let off = MotionSpec { omega: r.omega * (1.0 + 2e-6), ..good };
        assert!(radiated_photons(&cav, &off, &N).is_err());
        let between = MotionSpec { omega: r.omega + 0.5 * PI / cav.tau(), ..good };
        assert!(radiated_photons(&cav, &between, &N).is_err());
    }
}
