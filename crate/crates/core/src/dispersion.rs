//! Discrete dispersion relation, group velocity and spurious-caustic search.
//!
//! A Fourier mode `e^{i(kx - ωt)}` with `ω = ξ + iη` is advanced by the
//! explicit update `u^{n+1}_i = u^n_i - σ Σ_k γ(k) u^n_{i+k}`, whose one-step
//! multiplier is `G(φ) = e^{ητ} e^{-iξτ}`, `φ = kh`. Two backends evaluate
//! `ξτ`:
//!
//! * [`Backend::GeneralLog`]: `ξτ = -arg G(φ)` from the implemented update.
//! * [`Backend::ThreePointClosedForm`]: the published arctangent expression for
//!   the 3-point scheme, kept verbatim even though it does not follow from
//!   `G`.
//!
//! A caustic is a stationary point of the group velocity `V_g = h ∂ξ/∂φ`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::io::{fmt_num, CsvDoc};
use crate::par;
use crate::scheme::SchemeCoefficients;
use crate::{Error, Result};

/// Mesh and time step of a uniform grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    c: f64,
    h: f64,
    sigma: f64,
}

impl GridSpec {
    pub fn new(c: f64, h: f64, sigma: f64) -> Result<Self> {
        if !(c.is_finite() && c != 0.0) {
            return Err(Error::InvalidGrid(format!(
                "advection speed c = {c} must be finite and nonzero"
            )));
        }
        if !(h.is_finite() && h > 0.0) {
            return Err(Error::InvalidGrid(format!("mesh size h = {h} must be positive")));
        }
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(Error::InvalidGrid(format!(
                "Courant number sigma = {sigma} must be positive"
            )));
        }
        Ok(Self { c, h, sigma })
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// Time step `τ = σh/c`.
    pub fn tau(&self) -> f64 {
        self.sigma * self.h / self.c
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Backend {
    GeneralLog,
    ThreePointClosedForm,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::GeneralLog => "general",
            Backend::ThreePointClosedForm => "threepoint",
        }
    }

    fn check(self, coeffs: &SchemeCoefficients) -> Result<()> {
        if self == Backend::ThreePointClosedForm && coeffs.half_width() != 1 {
            return Err(Error::Domain(format!(
                "the 3-point closed form needs m = 1, got m = {}",
                coeffs.half_width()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "general" => Ok(Backend::GeneralLog),
            "threepoint" => Ok(Backend::ThreePointClosedForm),
            other => Err(Error::InvalidArgument(format!(
                "unknown backend '{other}' (expected 'general' or 'threepoint')"
            ))),
        }
    }
}

/// Sine sums `S = Σ γ_k sin kφ` and its first two derivatives.
fn sine_sums(coeffs: &SchemeCoefficients, phi: f64) -> (f64, f64, f64) {
    let mut s = 0.0;
    let mut s1 = 0.0;
    let mut s2 = 0.0;
    for (i, g) in coeffs.gamma().iter().enumerate() {
        let k = (i + 1) as f64;
        let (sn, cs) = (k * phi).sin_cos();
        s += g * sn;
        s1 += k * g * cs;
        s2 -= k * k * g * sn;
    }
    (s, s1, s2)
}

/// One-step multiplier `G(φ) = 1 - σ Σ_k γ(k) e^{ikφ} = 1 - 2iσ Σ_{k≥1} γ_k sin kφ`.
pub fn amplification_factor(coeffs: &SchemeCoefficients, grid: &GridSpec, phi: f64) -> Complex64 {
    let (s, _, _) = sine_sums(coeffs, phi);
    Complex64::new(1.0, -2.0 * grid.sigma * s)
}

/// Terms of the closed form `ξτ = atan(N/D)`; returns
/// `(N, D, P, Q)` with `dξτ/dφ = P/Q`.
fn closed_form_terms(a: f64, phi: f64) -> (f64, f64, f64, f64) {
    let (sn, cs) = phi.sin_cos();
    let n = -(1.0 + a) * sn;
    let d = 1.0 + (a - 1.0) * cs;
    let p = -(1.0 + a) * (cs + a - 1.0);
    let q = n * n + d * d;
    (n, d, p, q)
}

fn closed_form_a(coeffs: &SchemeCoefficients, grid: &GridSpec) -> f64 {
    coeffs.gamma()[0] * grid.sigma
}

/// Real phase advance per step, `ξτ` (radians). Odd in `φ`.
pub fn phase_frequency(
    coeffs: &SchemeCoefficients,
    grid: &GridSpec,
    backend: Backend,
    phi: f64,
) -> Result<f64> {
    backend.check(coeffs)?;
    Ok(match backend {
        Backend::GeneralLog => -amplification_factor(coeffs, grid, phi).arg(),
        Backend::ThreePointClosedForm => {
            let (n, d, _, _) = closed_form_terms(closed_form_a(coeffs, grid), phi);
            (n / d).atan()
        }
    })
}

/// Per-step log amplitude `ητ = ln|G(φ)|`.
pub fn damping_rate(coeffs: &SchemeCoefficients, grid: &GridSpec, phi: f64) -> Result<f64> {
    let g = amplification_factor(coeffs, grid, phi);
    let modulus = g.norm();
    if modulus == 0.0 {
        return Err(Error::DegenerateAmplification { phi });
    }
    Ok(modulus.ln())
}

/// Normalised group velocity `V_g/c = (1/σ) dξτ/dφ`, from the analytic
/// derivative of the backend's phase. Even in `φ`.
pub fn group_velocity(
    coeffs: &SchemeCoefficients,
    grid: &GridSpec,
    backend: Backend,
    phi: f64,
) -> Result<f64> {
    backend.check(coeffs)?;
    Ok(match backend {
        Backend::GeneralLog => {
            let (s, s1, _) = sine_sums(coeffs, phi);
            let q = 4.0 * grid.sigma * grid.sigma * s * s;
            2.0 * s1 / (1.0 + q)
        }
        Backend::ThreePointClosedForm => {
            let (_, _, p, q) = closed_form_terms(closed_form_a(coeffs, grid), phi);
            p / (grid.sigma * q)
        }
    })
}

/// `d(V_g/c)/dφ`, analytic. Zero at `φ = 0` and `φ = π` by symmetry.
pub fn group_velocity_slope(
    coeffs: &SchemeCoefficients,
    grid: &GridSpec,
    backend: Backend,
    phi: f64,
) -> Result<f64> {
    backend.check(coeffs)?;
    Ok(match backend {
        Backend::GeneralLog => {
            let (s, s1, s2) = sine_sums(coeffs, phi);
            let sig2 = grid.sigma * grid.sigma;
            let w = 1.0 + 4.0 * sig2 * s * s;
            2.0 * s2 / w - 16.0 * sig2 * s * s1 * s1 / (w * w)
        }
        Backend::ThreePointClosedForm => {
            let a = closed_form_a(coeffs, grid);
            let (n, d, p, q) = closed_form_terms(a, phi);
            let (sn, cs) = phi.sin_cos();
            let dn = -(1.0 + a) * cs;
            let dd = -(a - 1.0) * sn;
            let dp = (1.0 + a) * sn;
            let dq = 2.0 * (n * dn + d * dd);
            (dp * q - p * dq) / (q * q * grid.sigma)
        }
    })
}

/// Steps of the Richardson-extrapolated central differences.
pub const FD_STEP: f64 = 1e-4;

fn richardson<F: Fn(f64) -> Result<f64>>(f: F, x: f64) -> Result<f64> {
    let central = |h: f64| -> Result<f64> { Ok((f(x + h)? - f(x - h)?) / (2.0 * h)) };
    let coarse = central(FD_STEP)?;
    let fine = central(0.5 * FD_STEP)?;
    Ok((4.0 * fine - coarse) / 3.0)
}

/// `V_g/c` from finite differences of [`phase_frequency`]; an oracle for
/// [`group_velocity`] that shares none of its algebra.
pub fn group_velocity_fd(
    coeffs: &SchemeCoefficients,
    grid: &GridSpec,
    backend: Backend,
    phi: f64,
) -> Result<f64> {
    let d = richardson(|p| phase_frequency(coeffs, grid, backend, p), phi)?;
    Ok(d / grid.sigma)
}

/// `d(V_g/c)/dφ` from finite differences of [`group_velocity`].
pub fn group_velocity_slope_fd(
    coeffs: &SchemeCoefficients,
    grid: &GridSpec,
    backend: Backend,
    phi: f64,
) -> Result<f64> {
    richardson(|p| group_velocity(coeffs, grid, backend, p), phi)
}

/// One row of a [`DispersionProfile`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionSample {
    pub phi: f64,
    pub xi_tau: f64,
    pub eta_tau: f64,
    pub vg_over_c: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DispersionProfile {
    pub backend: Backend,
    pub samples: Vec<DispersionSample>,
}

impl DispersionProfile {
    /// CSV with header `phi,xi_tau,eta_tau,vg_over_c`.
    pub fn to_csv(&self) -> CsvDoc {
        let mut doc = CsvDoc::with_header("phi,xi_tau,eta_tau,vg_over_c");
        for s in &self.samples {
            doc.push_numbers(&[s.phi, s.xi_tau, s.eta_tau, s.vg_over_c]);
        }
        doc
    }
}

/// Samples the dispersion relation on `n ≥ 2` uniformly spaced points of
/// `[-π, π]`.
pub fn sample_profile(
    coeffs: &SchemeCoefficients,
    grid: &GridSpec,
    backend: Backend,
    n: usize,
) -> Result<DispersionProfile> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "need at least 2 phi samples, got {n}"
        )));
    }
    backend.check(coeffs)?;
    let samples = par::map_range(n, |i| {
        let phi = -PI + 2.0 * PI * i as f64 / (n - 1) as f64;
        Ok(DispersionSample {
            phi,
            xi_tau: phase_frequency(coeffs, grid, backend, phi)?,
            eta_tau: damping_rate(coeffs, grid, phi)?,
            vg_over_c: group_velocity(coeffs, grid, backend, phi)?,
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(DispersionProfile { backend, samples })
}

/// Physical wavenumber `k = φσ/(cτ) = φ/h`.
pub fn phi_to_k(grid: &GridSpec, phi: f64) -> f64 {
    phi * grid.sigma / (grid.c * grid.tau())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StationaryKind {
    Min,
    Max,
    InflectionDegenerate,
    Boundary,
}

impl StationaryKind {
    pub fn name(self) -> &'static str {
        match self {
            StationaryKind::Min => "MIN",
            StationaryKind::Max => "MAX",
            StationaryKind::InflectionDegenerate => "INFLECTION_DEGENERATE",
            StationaryKind::Boundary => "BOUNDARY",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StationaryPoint {
    pub phi_c: f64,
    /// Physical wavenumber (1/length).
    pub k_c: f64,
    /// Caustic speed `V_g(φ_c)` (length/time).
    pub u_c: f64,
    pub kind: StationaryKind,
}

/// Resolution knobs for [`find_caustics`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanSettings {
    pub scan_points: usize,
    pub bisection_tol: f64,
    pub classify_step: f64,
}

impl Default for ScanSettings {
    fn default() -> Self {
        Self {
            scan_points: 4096,
            bisection_tol: 1e-12,
            classify_step: 1e-4,
        }
    }
}

/// Largest `|d(V_g/c)/dφ|` accepted at a polished interior root.
pub const ROOT_TOL: f64 = 1e-9;

/// Stationary points of the group velocity on `[0, π]`.
#[derive(Debug, Clone, PartialEq)]
pub struct CausticReport {
    pub backend: Backend,
    pub sigma: f64,
    pub stationary_points: Vec<StationaryPoint>,
}

impl CausticReport {
    /// Stationary points strictly inside `(0, π)`.
    pub fn interior(&self) -> impl Iterator<Item = &StationaryPoint> {
        self.stationary_points
            .iter()
            .filter(|p| p.kind != StationaryKind::Boundary)
    }

    /// CSV with header `phi_c,k_c,U_c,kind,backend,sigma`.
    pub fn to_csv(&self) -> CsvDoc {
        let mut doc = CsvDoc::with_header("phi_c,k_c,U_c,kind,backend,sigma");
        for p in &self.stationary_points {
            doc.push_row([
                fmt_num(p.phi_c),
                fmt_num(p.k_c),
                fmt_num(p.u_c),
                p.kind.name().to_string(),
                self.backend.name().to_string(),
                fmt_num(self.sigma),
            ]);
        }
        doc
    }
}

/// Locates the stationary points of `V_g` on `[0, π]`: a sign-change scan of
/// the analytic slope, bisection polishing, and classification by the second
/// difference of `V_g`. `φ = 0` and `φ = π` are always included as
/// [`StationaryKind::Boundary`], since `V_g` is even and `2π`-periodic.
pub fn find_caustics(
    coeffs: &SchemeCoefficients,
    grid: &GridSpec,
    backend: Backend,
    settings: &ScanSettings,
) -> Result<CausticReport> {
    backend.check(coeffs)?;
    let n = settings.scan_points;
    if n < 4 {
        return Err(Error::InvalidArgument(format!(
            "scan needs at least 4 points, got {n}"
        )));
    }
    if !(settings.bisection_tol > 0.0 && settings.classify_step > 0.0) {
        return Err(Error::InvalidArgument(
            "bisection tolerance and classification step must be positive".into(),
        ));
    }
    let slope = |phi: f64| group_velocity_slope(coeffs, grid, backend, phi);
    let vg = |phi: f64| group_velocity(coeffs, grid, backend, phi);
    let node = |i: usize| PI * i as f64 / (n - 1) as f64;

    let values = par::map_range(n, |i| slope(node(i)))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;

    let mut roots = Vec::new();
    // Nodes 0 and n-1 are the symmetry points; scan strictly between them.
    for i in 1..n - 1 {
        if values[i] == 0.0 {
            roots.push(node(i));
        } else if i + 1 < n - 1 && values[i] * values[i + 1] < 0.0 {
            roots.push(bisect(
                &slope,
                node(i),
                node(i + 1),
                values[i],
                settings.bisection_tol,
            )?);
        }
    }

    let point = |phi: f64, kind: StationaryKind| -> Result<StationaryPoint> {
        Ok(StationaryPoint {
            phi_c: phi,
            k_c: phi_to_k(grid, phi),
            u_c: grid.c * vg(phi)?,
            kind,
        })
    };

    let mut points = vec![point(0.0, StationaryKind::Boundary)?];
    for phi in roots {
        if slope(phi)?.abs() >= ROOT_TOL {
            continue;
        }
        let delta = settings.classify_step;
        let v0 = vg(phi)?;
        let second = vg(phi + delta)? - 2.0 * v0 + vg(phi - delta)?;
        let noise = 1e-13 * v0.abs().max(1.0);
        let kind = if second > noise {
            StationaryKind::Min
        } else if second < -noise {
            StationaryKind::Max
        } else {
            StationaryKind::InflectionDegenerate
        };
        points.push(point(phi, kind)?);
    }
    points.push(point(PI, StationaryKind::Boundary)?);

    Ok(CausticReport {
        backend,
        sigma: grid.sigma,
        stationary_points: points,
    })
}

fn bisect<F: Fn(f64) -> Result<f64>>(f: &F, mut lo: f64, mut hi: f64, f_lo: f64, tol: f64) -> Result<f64> {
    let lo_positive = f_lo > 0.0;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if (fm > 0.0) == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Characteristic line `x = U_c t` of a caustic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CausticRay {
    pub phi_c: f64,
    pub slope: f64,
}

impl CausticRay {
    pub fn position(&self, t: f64) -> f64 {
        // `+ 0.0` keeps `-0` out of the CSV at t = 0.
        self.slope * t + 0.0
    }

    /// CSV with header `t,x`.
    pub fn to_csv(&self, times: &[f64]) -> CsvDoc {
        let mut doc = CsvDoc::with_header("t,x");
        for &t in times {
            doc.push_numbers(&[t, self.position(t)]);
        }
        doc
    }
}

/// Ray through the stationary point of `report` closest to `phi_c`.
pub fn caustic_ray(report: &CausticReport, phi_c: f64) -> Option<CausticRay> {
    report
        .stationary_points
        .iter()
        .min_by(|a, b| (a.phi_c - phi_c).abs().total_cmp(&(b.phi_c - phi_c).abs()))
        .map(|p| CausticRay {
            phi_c: p.phi_c,
            slope: p.u_c,
        })
}

/// Comparison of one externally reported root against a [`CausticReport`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootComparison {
    pub reference_phi: f64,
    pub nearest_phi: f64,
    pub agree: bool,
}

/// For each reference root (taken by absolute value, since the report covers
/// `[0, π]`), finds the nearest reported stationary point and checks it lies
/// within `tol`.
pub fn compare_roots(report: &CausticReport, reference: &[f64], tol: f64) -> Vec<RootComparison> {
    reference
        .iter()
        .map(|&r| {
            let target = r.abs();
            let nearest = report
                .stationary_points
                .iter()
                .map(|p| p.phi_c)
                .min_by(|a, b| (a - target).abs().total_cmp(&(b - target).abs()))
                .unwrap_or(f64::NAN);
            RootComparison {
                reference_phi: r,
                nearest_phi: nearest,
                agree: (nearest - target).abs() <= tol,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scheme::synthesize_drp;
    use std::f64::consts::FRAC_PI_2;

    fn three_point() -> SchemeCoefficients {
        synthesize_drp(1).unwrap()
    }

    fn grid(sigma: f64) -> GridSpec {
        GridSpec::new(1.0, 0.01, sigma).unwrap()
    }

    #[test]
    fn grid_validation_and_tau() {
        assert!(GridSpec::new(0.0, 0.01, 0.5).is_err());
        assert!(GridSpec::new(1.0, 0.0, 0.5).is_err());
        assert!(GridSpec::new(1.0, 0.01, -1.0).is_err());
        let g = GridSpec::new(2.0, 0.01, 0.9).unwrap();
        assert!((g.c() * g.tau() / g.h() - g.sigma()).abs() < 1e-15);
    }

    #[test]
    fn backend_names_round_trip() {
        for b in [Backend::GeneralLog, Backend::ThreePointClosedForm] {
            assert_eq!(b.name().parse::<Backend>().unwrap(), b);
        }
        assert!("spectral".parse::<Backend>().is_err());
    }

    #[test]
    fn amplification_factor_values() {
        let c = three_point();
        let g = amplification_factor(&c, &grid(0.5), 0.0);
        assert_eq!(g, Complex64::new(1.0, 0.0));
        let g = amplification_factor(&c, &grid(0.5), FRAC_PI_2);
        assert!((g - Complex64::new(1.0, -2.0 / PI)).norm() < 1e-15);
        let g = amplification_factor(&synthesize_drp(3).unwrap(), &grid(0.7), PI);
        assert!((g - Complex64::new(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn phase_frequency_values() {
        let c = three_point();
        let tp = Backend::ThreePointClosedForm;
        assert_eq!(phase_frequency(&c, &grid(0.9), tp, 0.0).unwrap(), 0.0);
        let v = phase_frequency(&c, &grid(0.9), tp, FRAC_PI_2).unwrap();
        assert!((v - (-(1.0 + 0.9 * 2.0 / PI)).atan()).abs() < 1e-12);
        assert!((v + 1.0045).abs() < 1e-4);
        let v = phase_frequency(&c, &grid(0.5), Backend::GeneralLog, PI / 4.0).unwrap();
        assert!((v - 0.42299).abs() < 1e-5);
    }

    #[test]
    fn closed_form_requires_m1() {
        let c = synthesize_drp(2).unwrap();
        let r = phase_frequency(&c, &grid(0.9), Backend::ThreePointClosedForm, 0.3);
        assert!(matches!(r, Err(Error::Domain(_))));
        assert!(group_velocity(&c, &grid(0.9), Backend::ThreePointClosedForm, 0.3).is_err());
    }

    #[test]
    fn damping_rate_values() {
        let c = three_point();
        assert_eq!(damping_rate(&c, &grid(0.5), 0.0).unwrap(), 0.0);
        let v = damping_rate(&c, &grid(0.5), FRAC_PI_2).unwrap();
        assert!((v - 0.5 * (1.0 + (2.0 / PI).powi(2)).ln()).abs() < 1e-15);
        assert!((v - 0.17012).abs() < 1e-5);
        let v = damping_rate(&c, &grid(0.9), FRAC_PI_2).unwrap();
        assert!((v - 0.41930).abs() < 1e-5);
    }

    #[test]
    fn group_velocity_values() {
        let c = three_point();
        for sigma in [0.1, 0.5, 0.9] {
            let g = grid(sigma);
            let v0 = group_velocity(&c, &g, Backend::GeneralLog, 0.0).unwrap();
            assert!((v0 - 4.0 / PI).abs() < 1e-15);
            let vpi = group_velocity(&c, &g, Backend::GeneralLog, PI).unwrap();
            assert!((vpi + 4.0 / PI).abs() < 1e-14);
        }
        for backend in [Backend::GeneralLog, Backend::ThreePointClosedForm] {
            let fd = group_velocity_fd(&c, &grid(0.9), backend, 0.0).unwrap();
            let an = group_velocity(&c, &grid(0.9), backend, 0.0).unwrap();
            assert!((fd - an).abs() < 1e-6);
        }
    }

    #[test]
    fn general_log_three_point_has_no_interior_caustic() {
        let r = find_caustics(
            &three_point(),
            &grid(0.9),
            Backend::GeneralLog,
            &ScanSettings::default(),
        )
        .unwrap();
        assert_eq!(r.interior().count(), 0);
        assert_eq!(r.stationary_points.len(), 2);
        assert_eq!(r.stationary_points[0].phi_c, 0.0);
        assert!((r.stationary_points[0].u_c - 4.0 / PI).abs() < 1e-14);
        assert!((r.stationary_points[1].u_c + 4.0 / PI).abs() < 1e-14);
    }

    #[test]
    fn phi_to_k_and_rays() {
        let g = grid(0.9);
        assert!((phi_to_k(&g, 0.950935) - 95.0935).abs() < 1e-9);
        assert_eq!(phi_to_k(&g, 0.0), 0.0);
        let ray = CausticRay {
            phi_c: 0.95,
            slope: -2.68381,
        };
        assert_eq!(ray.position(2.0), -5.36762);
        assert_eq!(
            ray.to_csv(&[0.0, 1.0]).as_str(),
            "t,x\n0,0\n1,-2.6838099999999998\n"
        );
    }

    #[test]
    fn scan_settings_validation() {
        let s = ScanSettings {
            scan_points: 2,
            ..ScanSettings::default()
        };
        assert!(find_caustics(&three_point(), &grid(0.9), Backend::GeneralLog, &s).is_err());
    }

    #[test]
    fn profile_rejects_single_sample() {
        assert!(sample_profile(&three_point(), &grid(0.9), Backend::GeneralLog, 1).is_err());
        let p = sample_profile(&three_point(), &grid(0.9), Backend::GeneralLog, 5).unwrap();
        assert_eq!(p.samples.len(), 5);
        assert_eq!(p.samples[0].phi, -PI);
        assert_eq!(p.samples[4].phi, PI);
    }
}
