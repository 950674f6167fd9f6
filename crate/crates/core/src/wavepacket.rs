//! Two-wave-packet error focusing.
//!
//! Two Gaussian-modulated cosine packets are advected once at the exact speed
//! `c` and once at their own (numerical) group velocities `V1`, `V2`. The
//! error field is the absolute difference of the two superpositions. When
//! the dispersed packets cross, their amplitudes add and the `L∞` error
//! doubles; once everything has separated it settles at one packet height.
//! The module also hosts the explicit periodic stepper for the DRP update, so
//! the symbolic dispersion relation can be checked against real time steps.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::dispersion::{self, Backend, GridSpec};
use crate::io::{fmt_num, CsvDoc};
use crate::par;
use crate::scheme::SchemeCoefficients;
use crate::{Error, Result};

/// Envelope e-folding lengths kept clear between any packet and the domain
/// edge.
pub const DOMAIN_MARGIN_EFOLDS: f64 = 6.0;

/// Beyond this many e-folding lengths a packet contributes below
/// `exp(-64)` and is skipped in grid maxima.
const CUTOFF_EFOLDS: f64 = 8.0;

/// Runs abort once `max|u|` exceeds this multiple of its initial value.
pub const INSTABILITY_CAP: f64 = 1e6;

/// `u(x, t) = exp(-α ξ²) cos(k ξ)` with `ξ = x - x0 - v t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WavePacket {
    pub alpha: f64,
    pub x0: f64,
    pub k: f64,
    pub v: f64,
}

impl WavePacket {
    pub fn new(alpha: f64, x0: f64, k: f64, v: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "packet alpha = {alpha} must be positive"
            )));
        }
        if ![x0, k, v].iter().all(|f| f.is_finite()) {
            return Err(Error::InvalidArgument("packet fields must be finite".into()));
        }
        Ok(Self { alpha, x0, k, v })
    }

    pub fn with_speed(self, v: f64) -> Self {
        Self { v, ..self }
    }

    pub fn center(&self, t: f64) -> f64 {
        self.x0 + self.v * t
    }

    /// Envelope e-folding length `1/√α`.
    pub fn characteristic_length(&self) -> f64 {
        characteristic_length(self.alpha)
    }

    pub fn value(&self, x: f64, t: f64) -> f64 {
        let xi = x - self.x0 - self.v * t;
        (-self.alpha * xi * xi).exp() * (self.k * xi).cos()
    }

    fn value_truncated(&self, x: f64, t: f64, cutoff: f64) -> f64 {
        let xi = x - self.x0 - self.v * t;
        if xi.abs() > cutoff {
            0.0
        } else {
            (-self.alpha * xi * xi).exp() * (self.k * xi).cos()
        }
    }
}

pub fn packet_value(p: &WavePacket, x: f64, t: f64) -> f64 {
    p.value(x, t)
}

/// Gaussian e-folding length `1/√α`, used as the packet length.
pub fn characteristic_length(alpha: f64) -> f64 {
    1.0 / alpha.sqrt()
}

/// Geometry and sampling of the analytic error model.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorModelConfig {
    pub packet1: WavePacket,
    pub packet2: WavePacket,
    /// Exact advection speed.
    pub c: f64,
    pub x_min: f64,
    pub x_max: f64,
    pub nx: usize,
    pub t_final: f64,
    pub nt: usize,
}

impl ErrorModelConfig {
    /// Crossing experiment at mesh size `h = 0.01` with `α = 0.0005` and
    /// group velocities `-2.68381`, `-2.51381`. Carriers sit at
    /// `95.0935 ± 1` (`φ = 0.950935` at this mesh size). The faster packet
    /// starts 340 units behind and catches up at `t = 2000`; the run ends at
    /// `t = 4000` when the packets are again well separated.
    pub fn crossing_preset() -> Self {
        let alpha = 0.0005;
        let k_c = 95.0935;
        let delta_k = 1.0;
        Self {
            packet1: WavePacket {
                alpha,
                x0: 340.0,
                k: k_c + delta_k,
                v: -2.68381,
            },
            packet2: WavePacket {
                alpha,
                x0: 0.0,
                k: k_c - delta_k,
                v: -2.51381,
            },
            c: 1.0,
            x_min: -10700.0,
            x_max: 4700.0,
            nx: 1_540_001,
            t_final: 4000.0,
            nt: 401,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.nx < 2 || self.nt < 2 {
            return Err(Error::InvalidArgument(format!(
                "need nx >= 2 and nt >= 2 (got nx = {}, nt = {})",
                self.nx, self.nt
            )));
        }
        if !(self.x_min.is_finite() && self.x_max.is_finite() && self.x_max > self.x_min) {
            return Err(Error::InvalidArgument(format!(
                "x domain [{}, {}] is empty",
                self.x_min, self.x_max
            )));
        }
        if !(self.t_final.is_finite() && self.t_final > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "t_final = {} must be positive",
                self.t_final
            )));
        }
        if !self.c.is_finite() {
            return Err(Error::InvalidArgument("c must be finite".into()));
        }
        WavePacket::new(
            self.packet1.alpha,
            self.packet1.x0,
            self.packet1.k,
            self.packet1.v,
        )?;
        WavePacket::new(
            self.packet2.alpha,
            self.packet2.x0,
            self.packet2.k,
            self.packet2.v,
        )?;
        Ok(())
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / (self.nx - 1) as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        if i + 1 == self.nx {
            self.x_max
        } else {
            self.x_min + i as f64 * self.dx()
        }
    }

    pub fn time(&self, n: usize) -> f64 {
        if n + 1 == self.nt {
            self.t_final
        } else {
            self.t_final * n as f64 / (self.nt - 1) as f64
        }
    }

    pub fn times(&self) -> Vec<f64> {
        (0..self.nt).map(|n| self.time(n)).collect()
    }

    /// The four advected copies: (exact, dispersed) for each packet.
    fn copies(&self) -> [WavePacket; 4] {
        [
            self.packet1.with_speed(self.c),
            self.packet1,
            self.packet2.with_speed(self.c),
            self.packet2,
        ]
    }

    /// Errors unless every copy stays [`DOMAIN_MARGIN_EFOLDS`] envelope
    /// lengths inside the domain for the whole run.
    pub fn check_margin(&self) -> Result<()> {
        for (i, p) in self.copies().iter().enumerate() {
            let margin = DOMAIN_MARGIN_EFOLDS * p.characteristic_length();
            for t in [0.0, self.t_final] {
                let x = p.center(t);
                if x - margin < self.x_min || x + margin > self.x_max {
                    return Err(Error::DomainTooSmall(format!(
                        "packet copy {} is centred at x = {x} at t = {t}; need [{}, {}] to include [{}, {}]",
                        i + 1,
                        self.x_min,
                        self.x_max,
                        x - margin,
                        x + margin
                    )));
                }
            }
        }
        Ok(())
    }

    /// Largest error over the x grid at time `t`, visiting only nodes within
    /// the packets' envelope windows.
    fn linf_at(&self, t: f64) -> f64 {
        let dx = self.dx();
        let copies = self.copies();
        let cutoffs = copies.map(|p| CUTOFF_EFOLDS * p.characteristic_length());
        let mut ranges: Vec<(usize, usize)> = copies
            .iter()
            .zip(&cutoffs)
            .filter_map(|(p, &cut)| {
                let c = p.center(t);
                let lo = ((c - cut - self.x_min) / dx).ceil().max(0.0);
                let hi = ((c + cut - self.x_min) / dx).floor().min((self.nx - 1) as f64);
                (lo <= hi).then_some((lo as usize, hi as usize))
            })
            .collect();
        ranges.sort_unstable();
        let mut merged: Vec<(usize, usize)> = Vec::new();
        for (lo, hi) in ranges {
            match merged.last_mut() {
                Some(last) if lo <= last.1 + 1 => last.1 = last.1.max(hi),
                _ => merged.push((lo, hi)),
            }
        }
        merged
            .into_iter()
            .flat_map(|(lo, hi)| lo..=hi)
            .map(|i| {
                let x = self.x(i);
                let v = [0, 1, 2, 3].map(|j| copies[j].value_truncated(x, t, cutoffs[j]));
                ((v[0] - v[1]) + (v[2] - v[3])).abs()
            })
            .fold(0.0, f64::max)
    }
}

/// `E = |u1(c) - u1(V1) + u2(c) - u2(V2)|` at one point.
pub fn error_field(cfg: &ErrorModelConfig, x: f64, t: f64) -> f64 {
    let [e1, d1, e2, d2] = cfg.copies();
    ((e1.value(x, t) - d1.value(x, t)) + (e2.value(x, t) - d2.value(x, t))).abs()
}

/// Time series of a scalar norm.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorHistory {
    pub times: Vec<f64>,
    pub linf: Vec<f64>,
}

impl ErrorHistory {
    pub fn max(&self) -> f64 {
        self.linf.iter().copied().fold(0.0, f64::max)
    }

    /// Time of the largest value (first one on ties).
    pub fn argmax_time(&self) -> f64 {
        let mut best = 0;
        for (i, v) in self.linf.iter().enumerate() {
            if *v > self.linf[best] {
                best = i;
            }
        }
        self.times[best]
    }

    /// Mean over the last `fraction` of the samples (at least one sample).
    pub fn tail_mean(&self, fraction: f64) -> f64 {
        let n = self.linf.len();
        let count = ((n as f64 * fraction).ceil() as usize).clamp(1, n);
        self.linf[n - count..].iter().sum::<f64>() / count as f64
    }

    /// CSV with header `t,linf`.
    pub fn to_csv(&self) -> CsvDoc {
        let mut doc = CsvDoc::with_header("t,linf");
        for (t, v) in self.times.iter().zip(&self.linf) {
            doc.push_numbers(&[*t, *v]);
        }
        doc
    }
}

/// `L∞` norm of the error field over the x grid at each of the `nt` sample
/// times in `[0, t_final]`.
pub fn linf_history(cfg: &ErrorModelConfig) -> Result<ErrorHistory> {
    cfg.validate()?;
    cfg.check_margin()?;
    let times = cfg.times();
    let linf = par::map_range(times.len(), |n| cfg.linf_at(times[n]));
    Ok(ErrorHistory { times, linf })
}

/// Length of the contiguous episode with `linf > threshold` that contains the
/// sample nearest to `around`; edges are located by linear interpolation.
/// Zero if that sample is not above the threshold.
pub fn overlap_duration(history: &ErrorHistory, threshold: f64, around: f64) -> f64 {
    let (t, l) = (&history.times, &history.linf);
    if t.is_empty() {
        return 0.0;
    }
    let centre = (0..t.len())
        .min_by(|&a, &b| (t[a] - around).abs().total_cmp(&(t[b] - around).abs()))
        .unwrap_or(0);
    if l[centre] <= threshold {
        return 0.0;
    }
    let crossing = |a: usize, b: usize| t[a] + (threshold - l[a]) / (l[b] - l[a]) * (t[b] - t[a]);
    let mut lo = centre;
    while lo > 0 && l[lo - 1] > threshold {
        lo -= 1;
    }
    let start = if lo == 0 { t[0] } else { crossing(lo - 1, lo) };
    let mut hi = centre;
    while hi + 1 < t.len() && l[hi + 1] > threshold {
        hi += 1;
    }
    let end = if hi + 1 == t.len() {
        t[hi]
    } else {
        crossing(hi, hi + 1)
    };
    end - start
}

/// Scalar field on a tensor grid; `values` is row-major with one row per time.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldGrid {
    pub x: Vec<f64>,
    pub t: Vec<f64>,
    pub values: Vec<f64>,
}

impl FieldGrid {
    pub fn row(&self, n: usize) -> &[f64] {
        let nx = self.x.len();
        &self.values[n * nx..(n + 1) * nx]
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// CSV whose header is `t` followed by the x values, then one row per
    /// time: `t,v(x_1),…,v(x_nx)`.
    pub fn to_csv(&self) -> CsvDoc {
        self.to_csv_strided(1)
    }

    /// As [`FieldGrid::to_csv`], keeping every `stride`-th column.
    pub fn to_csv_strided(&self, stride: usize) -> CsvDoc {
        let stride = stride.max(1);
        let cols: Vec<usize> = (0..self.x.len()).step_by(stride).collect();
        let header = std::iter::once("t".to_string())
            .chain(cols.iter().map(|&i| fmt_num(self.x[i])))
            .collect::<Vec<_>>()
            .join(",");
        let mut doc = CsvDoc::with_header(&header);
        for (n, &t) in self.t.iter().enumerate() {
            let row = self.row(n);
            doc.push_row(std::iter::once(fmt_num(t)).chain(cols.iter().map(|&i| fmt_num(row[i]))));
        }
        doc
    }
}

/// Residual kinetic energy `½E²` on the configuration's `(t, x)` grid.
pub fn residual_energy_grid(cfg: &ErrorModelConfig) -> Result<FieldGrid> {
    cfg.validate()?;
    let x: Vec<f64> = (0..cfg.nx).map(|i| cfg.x(i)).collect();
    let t = cfg.times();
    let rows = par::map_range(t.len(), |n| {
        x.iter()
            .map(|&xi| {
                let e = error_field(cfg, xi, t[n]);
                0.5 * e * e
            })
            .collect::<Vec<_>>()
    });
    Ok(FieldGrid {
        x,
        t,
        values: rows.concat(),
    })
}

/// Overlap time of two packets.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LifetimeEstimate {
    pub l1: f64,
    pub l2: f64,
    pub v1: Option<f64>,
    pub v2: Option<f64>,
    pub t_star: f64,
    pub delta_k: Option<f64>,
    pub d2vg: Option<f64>,
}

fn check_lengths(l1: f64, l2: f64) -> Result<()> {
    if !(l1 > 0.0 && l2 > 0.0 && l1.is_finite() && l2.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "packet lengths {l1}, {l2} must be positive"
        )));
    }
    Ok(())
}

/// `t* = (l1 + l2) / |v1 - v2|`.
pub fn caustic_lifetime(l1: f64, l2: f64, v1: f64, v2: f64) -> Result<LifetimeEstimate> {
    check_lengths(l1, l2)?;
    if v1 == v2 {
        return Err(Error::InfiniteLifetime);
    }
    Ok(LifetimeEstimate {
        l1,
        l2,
        v1: Some(v1),
        v2: Some(v2),
        t_star: (l1 + l2) / (v1 - v2).abs(),
        delta_k: None,
        d2vg: None,
    })
}

/// `t* ≈ (l1 + l2) / (2 δk² |∂²V_g/∂k²|)` near a caustic.
pub fn lifetime_second_order(l1: f64, l2: f64, delta_k: f64, d2vg: f64) -> Result<LifetimeEstimate> {
    check_lengths(l1, l2)?;
    if !(delta_k > 0.0 && delta_k.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "delta_k = {delta_k} must be positive"
        )));
    }
    if d2vg == 0.0 {
        return Err(Error::DegenerateCaustic);
    }
    Ok(LifetimeEstimate {
        l1,
        l2,
        v1: None,
        v2: None,
        t_star: (l1 + l2) / (2.0 * delta_k * delta_k * d2vg.abs()),
        delta_k: Some(delta_k),
        d2vg: Some(d2vg),
    })
}

fn check_stencil_fits(nx: usize, coeffs: &SchemeCoefficients) -> Result<()> {
    let m = coeffs.half_width();
    if nx <= 2 * m {
        return Err(Error::InvalidArgument(format!(
            "periodic grid of {nx} points is too small for a {}-point stencil",
            2 * m + 1
        )));
    }
    Ok(())
}

fn step_unchecked(state: &[f64], coeffs: &SchemeCoefficients, sigma: f64) -> Vec<f64> {
    let nx = state.len();
    let gamma = coeffs.gamma();
    par::map_range(nx, |i| {
        let mut flux = 0.0;
        for (j, g) in gamma.iter().enumerate() {
            let k = j + 1;
            flux += g * (state[(i + k) % nx] - state[(i + nx - k) % nx]);
        }
        state[i] - sigma * flux
    })
}

/// One explicit step `u_i ← u_i - σ Σ_k γ(k) u_{i+k}` on a periodic grid.
pub fn step_scheme(state: &[f64], coeffs: &SchemeCoefficients, grid: &GridSpec) -> Result<Vec<f64>> {
    check_stencil_fits(state.len(), coeffs)?;
    Ok(step_unchecked(state, coeffs, grid.sigma()))
}

/// Steps `initial` (node `i` at `x_min + i h`) `steps` times, recording
/// every `record_every`-th state including the initial one.
pub fn run_fd_simulation(
    initial: &[f64],
    x_min: f64,
    coeffs: &SchemeCoefficients,
    grid: &GridSpec,
    steps: usize,
    record_every: usize,
) -> Result<FieldGrid> {
    check_stencil_fits(initial.len(), coeffs)?;
    let record_every = record_every.max(1);
    let nx = initial.len();
    let x: Vec<f64> = (0..nx).map(|i| x_min + i as f64 * grid.h()).collect();
    let start_max = initial.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let cap = INSTABILITY_CAP * start_max;

    let mut t = vec![0.0];
    let mut values = initial.to_vec();
    let mut state = initial.to_vec();
    for n in 1..=steps {
        state = step_unchecked(&state, coeffs, grid.sigma());
        let peak = state.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        if !peak.is_finite() || (start_max > 0.0 && peak > cap) {
            return Err(Error::Unstable(format!(
                "max|u| = {peak:e} after {n} steps exceeds {INSTABILITY_CAP:e} times its initial value {start_max:e}"
            )));
        }
        if n % record_every == 0 || n == steps {
            t.push(n as f64 * grid.tau());
            values.extend_from_slice(&state);
        }
    }
    Ok(FieldGrid { x, t, values })
}

/// Per-step phase and log amplitude measured from the stepper.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmpiricalDispersion {
    pub xi_tau: f64,
    pub eta_tau: f64,
}

/// Advances the periodic mode `e^{iφj}` (`φ = 2π q/nx`) by one step and
/// reads off the multiplier at node 0.
pub fn measure_empirical_dispersion(
    coeffs: &SchemeCoefficients,
    grid: &GridSpec,
    phi: f64,
    nx: usize,
) -> Result<EmpiricalDispersion> {
    check_stencil_fits(nx, coeffs)?;
    let q = phi * nx as f64 / (2.0 * PI);
    let qi = q.round();
    if !phi.is_finite() || (q - qi).abs() > 1e-9 * q.abs().max(1.0) {
        return Err(Error::NonCommensurate { phi, nx });
    }
    let qi = qi as i64;
    let n = nx as i64;
    let angle = |j: usize| 2.0 * PI * ((qi * j as i64).rem_euclid(n)) as f64 / nx as f64;
    let re: Vec<f64> = (0..nx).map(|j| angle(j).cos()).collect();
    let im: Vec<f64> = (0..nx).map(|j| angle(j).sin()).collect();
    let re1 = step_scheme(&re, coeffs, grid)?;
    let im1 = step_scheme(&im, coeffs, grid)?;
    let g = Complex64::new(re1[0], im1[0]);
    if g.norm() == 0.0 {
        return Err(Error::DegenerateAmplification { phi });
    }
    Ok(EmpiricalDispersion {
        xi_tau: -g.arg(),
        eta_tau: g.norm().ln(),
    })
}

/// Explicit-scheme run of the two-packet initial condition.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationSetup {
    pub packet1: WavePacket,
    pub packet2: WavePacket,
    pub x_min: f64,
    pub x_max: f64,
    pub steps: usize,
    pub record_every: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationOutcome {
    pub field: FieldGrid,
    /// `L∞` of simulated minus exactly advected solution.
    pub history: ErrorHistory,
    /// Analytic error model with each packet moving at the scheme's own group
    /// velocity at its carrier.
    pub model_history: ErrorHistory,
    pub v1: f64,
    pub v2: f64,
}

pub fn simulate_two_packets(
    setup: &SimulationSetup,
    coeffs: &SchemeCoefficients,
    grid: &GridSpec,
) -> Result<SimulationOutcome> {
    if !setup.x_min.is_finite() || !setup.x_max.is_finite() || setup.x_max <= setup.x_min {
        return Err(Error::InvalidArgument("simulation domain is empty".into()));
    }
    let nx = ((setup.x_max - setup.x_min) / grid.h()).round() as usize + 1;
    let c = grid.c();
    let p1 = setup.packet1.with_speed(c);
    let p2 = setup.packet2.with_speed(c);
    let xs: Vec<f64> = (0..nx).map(|i| setup.x_min + i as f64 * grid.h()).collect();
    let initial: Vec<f64> = xs.iter().map(|&x| p1.value(x, 0.0) + p2.value(x, 0.0)).collect();
    let field = run_fd_simulation(
        &initial,
        setup.x_min,
        coeffs,
        grid,
        setup.steps,
        setup.record_every,
    )?;

    let linf = par::map_range(field.t.len(), |n| {
        let t = field.t[n];
        field
            .row(n)
            .iter()
            .zip(&xs)
            .map(|(u, &x)| (u - (p1.value(x, t) + p2.value(x, t))).abs())
            .fold(0.0, f64::max)
    });
    let history = ErrorHistory {
        times: field.t.clone(),
        linf,
    };

    let speed = |p: &WavePacket| -> Result<f64> {
        Ok(c * dispersion::group_velocity(coeffs, grid, Backend::GeneralLog, p.k * grid.h())?)
    };
    let v1 = speed(&setup.packet1)?;
    let v2 = speed(&setup.packet2)?;
    let model = ErrorModelConfig {
        packet1: setup.packet1.with_speed(v1),
        packet2: setup.packet2.with_speed(v2),
        c,
        x_min: setup.x_min,
        x_max: setup.x_max,
        nx,
        t_final: *field.t.last().unwrap_or(&0.0),
        nt: field.t.len(),
    };
    let model_linf = par::map_range(field.t.len(), |n| {
        let t = field.t[n];
        xs.iter().map(|&x| error_field(&model, x, t)).fold(0.0, f64::max)
    });
    let model_history = ErrorHistory {
        times: field.t.clone(),
        linf: model_linf,
    };

    Ok(SimulationOutcome {
        field,
        history,
        model_history,
        v1,
        v2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scheme::synthesize_drp;
    use std::f64::consts::FRAC_PI_2;

    fn packet(k: f64, v: f64) -> WavePacket {
        WavePacket::new(0.0005, 0.0, k, v).unwrap()
    }

    #[test]
    fn packet_values() {
        assert_eq!(packet(1.0, 1.0).value(0.0, 0.0), 1.0);
        let p = WavePacket::new(0.0005, 3.0, 7.0, -2.0).unwrap();
        for t in [0.0, 1.5, 10.0] {
            assert_eq!(p.value(p.center(t), t), 1.0);
        }
        assert!(packet(2.0, 0.0).value(PI / 4.0, 0.0).abs() < 1e-15);
        assert!(WavePacket::new(0.0, 0.0, 1.0, 1.0).is_err());
        assert!(WavePacket::new(1.0, f64::NAN, 1.0, 1.0).is_err());
    }

    #[test]
    fn error_field_vanishes_without_dispersion() {
        let mut cfg = ErrorModelConfig::crossing_preset();
        for x in [-10.0, 0.0, 340.0, 351.2] {
            assert_eq!(error_field(&cfg, x, 0.0), 0.0);
        }
        cfg.packet1.v = cfg.c;
        cfg.packet2.v = cfg.c;
        for (x, t) in [(5.0, 3.0), (400.0, 70.0)] {
            assert_eq!(error_field(&cfg, x, t), 0.0);
        }
    }

    #[test]
    fn config_validation() {
        let mut cfg = ErrorModelConfig::crossing_preset();
        cfg.nt = 1;
        assert!(cfg.validate().is_err());
        let mut cfg = ErrorModelConfig::crossing_preset();
        cfg.x_max = cfg.x_min;
        assert!(cfg.validate().is_err());
        let mut cfg = ErrorModelConfig::crossing_preset();
        cfg.x_max = 1000.0;
        assert!(matches!(linf_history(&cfg), Err(Error::DomainTooSmall(_))));
    }

    #[test]
    fn lifetime_formulas() {
        assert_eq!(caustic_lifetime(1.0, 1.0, 1.0, 0.0).unwrap().t_star, 2.0);
        let l = characteristic_length(0.0005);
        let t = caustic_lifetime(l, l, -2.68381, -2.51381).unwrap().t_star;
        assert!((t - 526.1).abs() < 0.1);
        let t2 = caustic_lifetime(2.0 * l, 2.0 * l, -2.68381, -2.51381)
            .unwrap()
            .t_star;
        assert!((t2 - 2.0 * t).abs() < 1e-12 * t);
        assert!(matches!(
            caustic_lifetime(1.0, 1.0, 0.5, 0.5),
            Err(Error::InfiniteLifetime)
        ));
        assert!(caustic_lifetime(0.0, 1.0, 0.5, 0.1).is_err());

        assert_eq!(lifetime_second_order(1.0, 1.0, 0.5, 1.0).unwrap().t_star, 4.0);
        let a = lifetime_second_order(1.0, 1.0, 0.1, 1.0).unwrap().t_star;
        assert!((a - 100.0).abs() < 1e-12);
        let b = lifetime_second_order(1.0, 1.0, 0.05, 1.0).unwrap().t_star;
        assert!((b - 4.0 * a).abs() < 1e-12 * b);
        assert!(matches!(
            lifetime_second_order(1.0, 1.0, 0.1, 0.0),
            Err(Error::DegenerateCaustic)
        ));
        assert!(lifetime_second_order(1.0, 1.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn overlap_duration_interpolates() {
        let h = ErrorHistory {
            times: vec![0.0, 1.0, 2.0, 3.0, 4.0],
            linf: vec![0.0, 1.0, 2.0, 1.0, 0.0],
        };
        assert!((overlap_duration(&h, 1.5, 2.0) - 1.0).abs() < 1e-15);
        assert_eq!(overlap_duration(&h, 1.5, 0.0), 0.0);
    }

    #[test]
    fn stepper_fixed_points_and_errors() {
        let coeffs = synthesize_drp(2).unwrap();
        let grid = GridSpec::new(1.0, 0.01, 0.9).unwrap();
        assert!(step_scheme(&[1.0; 4], &coeffs, &grid).is_err());
        let zero = vec![0.0; 16];
        assert_eq!(step_scheme(&zero, &coeffs, &grid).unwrap(), zero);
        let mut u = vec![3.25; 16];
        for _ in 0..1000 {
            u = step_scheme(&u, &coeffs, &grid).unwrap();
        }
        assert!(u.iter().all(|&v| v == 3.25));
    }

    #[test]
    fn one_step_on_quarter_wave_mode() {
        let coeffs = synthesize_drp(1).unwrap();
        let grid = GridSpec::new(1.0, 0.01, 0.5).unwrap();
        let m = measure_empirical_dispersion(&coeffs, &grid, FRAC_PI_2, 16).unwrap();
        assert!((m.eta_tau - 0.5 * (1.0 + (2.0 / PI).powi(2)).ln()).abs() < 1e-14);
        assert!((m.xi_tau - (2.0 / PI).atan()).abs() < 1e-14);
        let z = measure_empirical_dispersion(&coeffs, &grid, 0.0, 16).unwrap();
        assert_eq!((z.xi_tau, z.eta_tau), (0.0, 0.0));
        assert!(matches!(
            measure_empirical_dispersion(&coeffs, &grid, 0.3, 16),
            Err(Error::NonCommensurate { .. })
        ));
    }

    #[test]
    fn unstable_run_aborts() {
        let coeffs = synthesize_drp(1).unwrap();
        let grid = GridSpec::new(1.0, 0.01, 0.9).unwrap();
        let u: Vec<f64> = (0..64).map(|j| (FRAC_PI_2 * j as f64).cos()).collect();
        let r = run_fd_simulation(&u, 0.0, &coeffs, &grid, 200, 10);
        assert!(matches!(r, Err(Error::Unstable(_))));
    }

    #[test]
    fn simulation_records_every_nth_state() {
        let coeffs = synthesize_drp(1).unwrap();
        let grid = GridSpec::new(1.0, 0.01, 0.5).unwrap();
        let u: Vec<f64> = (0..32).map(|j| (0.2 * j as f64).sin()).collect();
        let f = run_fd_simulation(&u, -1.0, &coeffs, &grid, 7, 3).unwrap();
        assert_eq!(f.t.len(), 4);
        assert_eq!(f.row(0), &u[..]);
        assert!((f.t[3] - 7.0 * grid.tau()).abs() < 1e-15);
        assert_eq!(f.x[0], -1.0);
    }

    #[test]
    fn field_csv_layout() {
        let f = FieldGrid {
            x: vec![0.0, 0.5],
            t: vec![0.0, 1.0],
            values: vec![0.0, 0.0, 1.0, 2.0],
        };
        assert_eq!(f.to_csv().as_str(), "t,0,0.5\n0,0,0\n1,1,2\n");
        assert_eq!(f.to_csv_strided(2).as_str(), "t,0\n0,0\n1,1\n");
    }
}
