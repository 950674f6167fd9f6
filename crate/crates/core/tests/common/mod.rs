//! Oracles shared by the integration and acceptance tests. None of them reuse
//! library algebra: quadrature is composite Simpson, trigonometric sums are
//! evaluated directly, and Chebyshev values come from explicit factorial sums.
#![allow(dead_code)]

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

/// Composite Simpson rule with `n` (even) panels.
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, n: usize) -> f64 {
    assert!(n.is_multiple_of(2));
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + i as f64 * h);
    }
    s * h / 3.0
}

/// Full antisymmetric extension `γ(k)`, `k = -m..=m`.
pub fn extend(gamma: &[f64]) -> Vec<(i64, f64)> {
    let m = gamma.len() as i64;
    (-m..=m)
        .map(|k| {
            let g = match k {
                0 => 0.0,
                k if k > 0 => gamma[(k - 1) as usize],
                k => -gamma[(-k - 1) as usize],
            };
            (k, g)
        })
        .collect()
}

/// Integrated error in its unreduced form
/// `2 ∫_0^{π/2} (ζ - Σ γ(k) sin kζ)² + (Σ γ(k) cos kζ)² dζ`.
pub fn integrated_error_oracle(gamma: &[f64]) -> f64 {
    let full = extend(gamma);
    2.0 * simpson(
        |z| {
            let s: f64 = full.iter().map(|&(k, g)| g * (k as f64 * z).sin()).sum();
            let c: f64 = full.iter().map(|&(k, g)| g * (k as f64 * z).cos()).sum();
            (z - s).powi(2) + c * c
        },
        0.0,
        FRAC_PI_2,
        20_000,
    )
}

/// `1 - σ Σ_k γ(k) e^{ikφ}` summed directly.
pub fn amplification_oracle(gamma: &[f64], sigma: f64, phi: f64) -> Complex64 {
    let sum: Complex64 = extend(gamma)
        .iter()
        .map(|&(k, g)| g * Complex64::from_polar(1.0, k as f64 * phi))
        .sum();
    1.0 - sigma * sum
}

fn factorial(n: u64) -> f64 {
    (1..=n).map(|v| v as f64).product()
}

/// First kind, explicit sum:
/// `T_n(x) = (n/2) Σ_k (-1)^k (n-k-1)! / (k! (n-2k)!) (2x)^{n-2k}`, `n ≥ 1`.
pub fn tche1(n: u64, x: f64) -> f64 {
    let mut s = 0.0;
    for k in 0..=n / 2 {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        s += sign * factorial(n - k - 1) / (factorial(k) * factorial(n - 2 * k))
            * (2.0 * x).powi((n - 2 * k) as i32);
    }
    0.5 * n as f64 * s
}

/// Second kind, explicit sum:
/// `U_n(x) = Σ_k (-1)^k (n-k)! / (k! (n-2k)!) (2x)^{n-2k}`, so that
/// `sin((n+1)φ) = sin φ · U_n(cos φ)`.
pub fn tche2(n: u64, x: f64) -> f64 {
    let mut s = 0.0;
    for k in 0..=n / 2 {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        s += sign * factorial(n - k) / (factorial(k) * factorial(n - 2 * k))
            * (2.0 * x).powi((n - 2 * k) as i32);
    }
    s
}

/// `f1`, `f2` at `θ = cos φ` by direct trigonometric double sums.
pub fn f1_f2_oracle(gamma: &[f64], sigma: f64, c: f64, phi: f64) -> (f64, f64) {
    let full = extend(gamma);
    let (mut q1, mut f2) = (0.0, 0.0);
    for &(k, gk) in &full {
        for &(l, gl) in &full {
            let (kf, lf) = (k as f64, l as f64);
            let a = (kf + lf) * phi;
            q1 += gk * gl * (kf * kf * a.sin() - kf * lf * a.cos());
            f2 += gk * gl * (a.cos() + kf * lf * a.sin());
        }
    }
    let lin: f64 = full
        .iter()
        .filter(|(k, _)| *k > 0)
        .map(|&(k, g)| (k * k) as f64 * g * (k as f64 * phi).sin())
        .sum();
    (sigma * q1 + 2.0 * c * lin, f2)
}
