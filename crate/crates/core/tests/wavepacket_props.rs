use std::f64::consts::PI;

use drp_caustics::dispersion::{self, Backend, GridSpec};
use drp_caustics::scheme::{synthesize_drp, SchemeCoefficients};
use drp_caustics::wavepacket::*;
use drp_caustics::Error;
use proptest::prelude::*;

fn envelope_packet(alpha: f64, x0: f64, k: f64, v: f64, x: f64, t: f64) -> f64 {
    let s = x - x0 - v * t;
    (-alpha * s * s).exp() * (k * s).cos()
}

/// Packet 1 starts `sep` behind packet 2 and catches up at `sep / dv`.
fn crossing(sep: f64, dv: f64, nt: usize) -> ErrorModelConfig {
    let v1 = -2.68381;
    let t_c = sep / dv;
    let t_final = 2.0 * t_c;
    let margin = 6.0 * characteristic_length(0.0005) + 10.0;
    let x_min = (v1 * t_final).min(sep + v1 * t_final) - margin;
    let x_max = sep + t_final + margin;
    let dx = 0.01;
    ErrorModelConfig {
        packet1: WavePacket::new(0.0005, sep, 96.0935, v1).unwrap(),
        packet2: WavePacket::new(0.0005, 0.0, 94.0935, v1 + dv).unwrap(),
        c: 1.0,
        x_min,
        x_max,
        nx: ((x_max - x_min) / dx).round() as usize + 1,
        t_final,
        nt,
    }
}

#[test]
fn error_field_vanishes_at_t0_and_without_dispersion() {
    let mut cfg = ErrorModelConfig::crossing_preset();
    cfg.nx = 15_401;
    for i in 0..cfg.nx {
        assert_eq!(error_field(&cfg, cfg.x(i), 0.0), 0.0);
    }
    let h = linf_history(&cfg).unwrap();
    assert_eq!(h.linf[0], 0.0);

    let mut still = cfg.clone();
    still.packet1.v = still.c;
    still.packet2.v = still.c;
    for (x, t) in [(0.0, 0.0), (10.0, 3.0), (-4000.0, 2500.0)] {
        assert_eq!(error_field(&still, x, t), 0.0);
    }
}

#[test]
fn error_field_probe_matches_direct_evaluation() {
    let cfg = ErrorModelConfig::crossing_preset();
    let (p1, p2) = (cfg.packet1, cfg.packet2);
    for (x, t) in [(-5027.62, 2000.0), (-5000.0, 2000.0), (100.0, 90.0)] {
        let direct = (envelope_packet(p1.alpha, p1.x0, p1.k, 1.0, x, t)
            - envelope_packet(p1.alpha, p1.x0, p1.k, p1.v, x, t)
            + envelope_packet(p2.alpha, p2.x0, p2.k, 1.0, x, t)
            - envelope_packet(p2.alpha, p2.x0, p2.k, p2.v, x, t))
        .abs();
        assert!((error_field(&cfg, x, t) - direct).abs() < 1e-12);
    }
    // Both dispersed packets peak together at the crossing node.
    assert!((error_field(&cfg, -5027.62, 2000.0) - 2.0).abs() < 1e-9);
}

#[test]
fn windowed_history_matches_full_grid_scan() {
    let cfg = crossing(34.0, 0.17, 41);
    let h = linf_history(&cfg).unwrap();
    for (n, &t) in h.times.iter().enumerate().step_by(5) {
        let full = (0..cfg.nx)
            .map(|i| error_field(&cfg, cfg.x(i), t))
            .fold(0.0, f64::max);
        assert!((h.linf[n] - full).abs() < 1e-15, "t = {t}");
    }
}

#[test]
fn limits_on_a_short_crossing() {
    let cfg = crossing(340.0, 1.7, 401);
    let h = linf_history(&cfg).unwrap();
    assert!((h.max() - 2.0).abs() < 0.04, "{}", h.max());
    assert!((h.tail_mean(0.1) - 1.0).abs() < 0.02, "{}", h.tail_mean(0.1));
}

#[test]
fn overlap_duration_scales_inversely_with_speed_gap() {
    let mut products = Vec::new();
    for dv in [0.17, 0.085] {
        let cfg = crossing(340.0, dv, 321);
        let h = linf_history(&cfg).unwrap();
        let d = overlap_duration(&h, 1.5, 340.0 / dv);
        assert!(d > 0.0);
        products.push(d * dv);
    }
    assert!((products[0] / products[1] - 1.0).abs() < 0.1, "{products:?}");
}

#[test]
fn domain_margin_enforced() {
    let mut cfg = crossing(34.0, 0.17, 11);
    cfg.x_max = 40.0;
    assert!(matches!(linf_history(&cfg), Err(Error::DomainTooSmall(_))));
}

#[test]
fn lifetime_laws() {
    let l = characteristic_length(0.0005);
    let t = caustic_lifetime(l, l, -2.68381, -2.51381).unwrap();
    assert_eq!(t.t_star, 2.0 * l / (-2.68381f64 - -2.51381f64).abs());
    for dk in [0.5, 0.25, 0.125, 0.0625] {
        let a = lifetime_second_order(l, l, dk, 3.0).unwrap().t_star;
        let b = lifetime_second_order(l, l, dk / 2.0, 3.0).unwrap().t_star;
        assert_eq!(b, 4.0 * a);
    }
}

#[test]
fn second_order_lifetime_matches_group_velocity_gap() {
    let (c, h) = (1.0, 0.01);
    let grid = GridSpec::new(c, h, 0.9).unwrap();
    let coeffs = synthesize_drp(1).unwrap();
    let vg = |phi: f64| c * dispersion::group_velocity(&coeffs, &grid, Backend::GeneralLog, phi).unwrap();
    let step = 1e-3;
    let d2_phi = (vg(step) - 2.0 * vg(0.0) + vg(-step)) / (step * step);
    let d2vg = h * h * d2_phi;
    let l = characteristic_length(0.0005);
    for dk in [0.1, 0.05] {
        let first = caustic_lifetime(l, l, vg(0.0), vg(2.0 * dk * h)).unwrap().t_star;
        let second = lifetime_second_order(l, l, dk, d2vg).unwrap().t_star;
        assert!(
            (first / second - 1.0).abs() < 1e-3,
            "dk {dk}: {first} vs {second}"
        );
    }
}

#[test]
fn empirical_dispersion_matches_on_every_commensurate_mode() {
    let nx = 256;
    for m in 1..=3 {
        let coeffs = synthesize_drp(m).unwrap();
        for sigma in [0.3, 0.5, 0.9] {
            let grid = GridSpec::new(1.0, 0.01, sigma).unwrap();
            for q in 0..nx {
                let phi = -PI + 2.0 * PI * q as f64 / nx as f64;
                let e = measure_empirical_dispersion(&coeffs, &grid, phi, nx).unwrap();
                let xi = dispersion::phase_frequency(&coeffs, &grid, Backend::GeneralLog, phi).unwrap();
                let eta = dispersion::damping_rate(&coeffs, &grid, phi).unwrap();
                // Phases are compared on the circle.
                let dxi = (e.xi_tau - xi + PI).rem_euclid(2.0 * PI) - PI;
                assert!(
                    dxi.abs() < 1e-10 && (e.eta_tau - eta).abs() < 1e-10,
                    "m {m} sigma {sigma} q {q}"
                );
            }
        }
    }
    let coeffs = synthesize_drp(1).unwrap();
    let grid = GridSpec::new(1.0, 0.01, 0.5).unwrap();
    assert!(matches!(
        measure_empirical_dispersion(&coeffs, &grid, 0.1, nx),
        Err(Error::NonCommensurate { .. })
    ));
}

#[test]
fn simulation_regression_and_abort() {
    let grid = GridSpec::new(1.0, 0.01, 0.9).unwrap();
    let coeffs = synthesize_drp(1).unwrap();
    let setup = SimulationSetup {
        packet1: WavePacket::new(0.0005, 340.0, 96.0935, -2.68381).unwrap(),
        packet2: WavePacket::new(0.0005, 0.0, 94.0935, -2.51381).unwrap(),
        x_min: -300.0,
        x_max: 640.0,
        steps: 10,
        record_every: 5,
    };
    let out = simulate_two_packets(&setup, &coeffs, &grid).unwrap();
    assert_eq!(out.field.t.len(), 3);
    assert_eq!(out.history.linf[0], 0.0);
    assert_eq!(out.model_history.linf[0], 0.0);
    // Group velocities of the scheme at the two carriers.
    let vg = |k: f64| dispersion::group_velocity(&coeffs, &grid, Backend::GeneralLog, k * 0.01).unwrap();
    assert_eq!((out.v1, out.v2), (vg(96.0935), vg(94.0935)));
    // Forward-Euler amplification: |G|^10 at the carrier bounds the growth.
    let g = dispersion::damping_rate(&coeffs, &grid, 0.950935).unwrap();
    let last = *out.history.linf.last().unwrap();
    assert!(
        last > 0.5 * (10.0 * g).exp() && last < 2.0 * (10.0 * g).exp() + 1.0,
        "{last}"
    );

    let long = SimulationSetup { steps: 200, ..setup };
    assert!(matches!(
        simulate_two_packets(&long, &coeffs, &grid),
        Err(Error::Unstable(_))
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn step_is_linear(
        u in prop::collection::vec(-1.0f64..1.0, 32),
        w in prop::collection::vec(-1.0f64..1.0, 32),
        a in -2.0f64..2.0,
        b in -2.0f64..2.0,
        m in 1usize..=4,
        sigma in 0.05f64..1.0,
    ) {
        let coeffs = synthesize_drp(m).unwrap();
        let grid = GridSpec::new(1.0, 0.01, sigma).unwrap();
        let mix: Vec<f64> = u.iter().zip(&w).map(|(x, y)| a * x + b * y).collect();
        let lhs = step_scheme(&mix, &coeffs, &grid).unwrap();
        let su = step_scheme(&u, &coeffs, &grid).unwrap();
        let sw = step_scheme(&w, &coeffs, &grid).unwrap();
        for i in 0..32 {
            prop_assert!((lhs[i] - (a * su[i] + b * sw[i])).abs() < 1e-12);
        }
    }

    #[test]
    fn step_commutes_with_shifts(
        u in prop::collection::vec(-1.0f64..1.0, 5..40),
        shift in 0usize..40,
        gamma in prop::collection::vec(-1.0f64..1.0, 1..3),
    ) {
        let coeffs = SchemeCoefficients::new(gamma).unwrap();
        prop_assume!(u.len() > 2 * coeffs.half_width());
        let grid = GridSpec::new(1.0, 0.01, 0.7).unwrap();
        let n = u.len();
        let s = shift % n;
        let rotated: Vec<f64> = (0..n).map(|i| u[(i + s) % n]).collect();
        let a = step_scheme(&rotated, &coeffs, &grid).unwrap();
        let stepped = step_scheme(&u, &coeffs, &grid).unwrap();
        let b: Vec<f64> = (0..n).map(|i| stepped[(i + s) % n]).collect();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn step_preserves_constants(value in -5.0f64..5.0, m in 1usize..=5, n in 12usize..40) {
        let coeffs = synthesize_drp(m).unwrap();
        let grid = GridSpec::new(1.0, 0.01, 0.9).unwrap();
        let out = step_scheme(&vec![value; n], &coeffs, &grid).unwrap();
        prop_assert!(out.iter().all(|v| *v == value));
    }
}
