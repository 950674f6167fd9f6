//! DRP coefficient synthesis for the explicit `(2m+1)`-point first-derivative
//! stencil `u_x(x_i) ≈ (1/h) Σ_{k=-m..m} γ(k) u_{i+k}`.
//!
//! The coefficients minimise the integrated squared wavenumber error over
//! `|φ| ≤ π/2` (waves longer than four cells). The stencil is antisymmetric,
//! `γ(-k) = -γ(k)` and `γ(0) = 0`, so only `γ_1 … γ_m` are stored.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::io::{fmt_num, CsvDoc};
use crate::linalg;
use crate::quadrature;
use crate::{Error, Result};

/// Absolute tolerance of the quadrature behind [`integrated_error`].
pub const INTEGRATED_ERROR_TOL: f64 = 1e-10;

/// Required max-norm residual of the normal-equation solve, relative to the
/// right-hand side.
pub const SOLVE_RESIDUAL_TOL: f64 = 1e-12;

/// Independent coefficients `γ_1 … γ_m` of an antisymmetric stencil.
#[derive(Debug, Clone, PartialEq)]
pub struct SchemeCoefficients {
    gamma: Vec<f64>,
}

impl SchemeCoefficients {
    pub fn new(gamma: Vec<f64>) -> Result<Self> {
        if gamma.is_empty() {
            return Err(Error::InvalidHalfWidth(0));
        }
        if let Some(k) = gamma.iter().position(|g| !g.is_finite()) {
            return Err(Error::InvalidCoefficients(format!(
                "gamma_{} = {} is not finite",
                k + 1,
                gamma[k]
            )));
        }
        Ok(Self { gamma })
    }

    /// All-zero stencil of half-width `m`.
    pub fn zeros(m: usize) -> Result<Self> {
        Self::new(vec![0.0; m])
    }

    /// Stencil half-width `m`.
    pub fn half_width(&self) -> usize {
        self.gamma.len()
    }

    /// `γ_1 … γ_m`.
    pub fn gamma(&self) -> &[f64] {
        &self.gamma
    }

    /// Full coefficient `γ(k)` for any integer `k`; zero outside `[-m, m]`.
    pub fn at(&self, k: i64) -> f64 {
        let m = self.gamma.len() as i64;
        match k {
            0 => 0.0,
            k if k.abs() > m => 0.0,
            k if k > 0 => self.gamma[(k - 1) as usize],
            k => -self.gamma[(-k - 1) as usize],
        }
    }

    /// `(k, γ(k))` for `k = -m..=m`.
    pub fn full(&self) -> Vec<(i64, f64)> {
        let m = self.gamma.len() as i64;
        (-m..=m).map(|k| (k, self.at(k))).collect()
    }

    /// `Σ_k γ(k)`, accumulated over `±k` pairs, so it is exactly zero.
    pub fn coefficient_sum(&self) -> f64 {
        (1..=self.gamma.len() as i64)
            .map(|k| self.at(k) + self.at(-k))
            .sum()
    }

    /// `Σ_k k γ(k) = 2 Σ_{k≥1} k γ_k`: the small-`φ` slope of the modified
    /// wavenumber (1 for a consistent stencil).
    pub fn first_moment(&self) -> f64 {
        self.gamma
            .iter()
            .enumerate()
            .map(|(i, g)| 2.0 * (i + 1) as f64 * g)
            .sum()
    }

    /// CSV with header `k,gamma` over `k = -m..=m`.
    pub fn to_csv(&self) -> CsvDoc {
        let mut doc = CsvDoc::with_header("k,gamma");
        for (k, g) in self.full() {
            doc.push_row([k.to_string(), fmt_num(g)]);
        }
        doc
    }
}

/// Reduced normal equations `A γ = b` for `γ_1 … γ_m`.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalSystem {
    dim: usize,
    matrix: Vec<f64>,
    rhs: Vec<f64>,
}

impl NormalSystem {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `A[i][j]`, zero-based.
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.matrix[i * self.dim + j]
    }

    /// Row-major matrix entries.
    pub fn matrix(&self) -> &[f64] {
        &self.matrix
    }

    pub fn rhs(&self) -> &[f64] {
        &self.rhs
    }
}

/// `∫_0^{π/2} sin(iζ) sin(jζ) dζ` in closed form, for positive `i`, `j`.
pub fn sine_gram(i: usize, j: usize) -> f64 {
    if i == j {
        return PI / 4.0;
    }
    let d = i as f64 - j as f64;
    let s = (i + j) as f64;
    0.5 * ((d * FRAC_PI_2).sin() / d - (s * FRAC_PI_2).sin() / s)
}

/// `∫_0^{π/2} ζ sin(iζ) dζ` in closed form. Odd in `i`.
pub fn ramp_sine_moment(i: i64) -> f64 {
    if i == 0 {
        return 0.0;
    }
    let fi = i as f64;
    (fi * FRAC_PI_2).sin() / (fi * fi) - FRAC_PI_2 * (fi * FRAC_PI_2).cos() / fi
}

/// `∫_0^{π/2} cos(d ζ) dζ` in closed form.
pub fn cosine_moment(d: i64) -> f64 {
    if d == 0 {
        FRAC_PI_2
    } else {
        let fd = d as f64;
        (fd * FRAC_PI_2).sin() / fd
    }
}

/// Normal equations with `A_ij = 4 ∫ sin(iζ) sin(jζ)` and
/// `b_i = 2 ∫ ζ sin(iζ)` over `[0, π/2]`.
pub fn build_normal_system(m: usize) -> Result<NormalSystem> {
    if m == 0 {
        return Err(Error::InvalidHalfWidth(m));
    }
    let mut matrix = vec![0.0; m * m];
    for i in 0..m {
        for j in 0..m {
            matrix[i * m + j] = 4.0 * sine_gram(i + 1, j + 1);
        }
    }
    let rhs = (1..=m as i64).map(|i| 2.0 * ramp_sine_moment(i)).collect();
    Ok(NormalSystem { dim: m, matrix, rhs })
}

/// Least-squares DRP coefficients for a `(2m+1)`-point stencil.
pub fn synthesize_drp(m: usize) -> Result<SchemeCoefficients> {
    let system = build_normal_system(m)?;
    let gamma = linalg::cholesky_solve(&system.matrix, &system.rhs)?;
    let scale = system.rhs.iter().fold(0.0f64, |a, b| a.max(b.abs()));
    let residual = linalg::residual_max(&system.matrix, &gamma, &system.rhs);
    if residual > SOLVE_RESIDUAL_TOL * scale {
        return Err(Error::Solver(format!(
            "normal-equation residual {residual:e} exceeds tolerance for m = {m}"
        )));
    }
    SchemeCoefficients::new(gamma)
}

/// Stationarity conditions of the integrated error with all `2m+1`
/// coefficients free: `Σ_k γ_k ∫ cos((k-i)ζ) = ∫ ζ sin(iζ)` for
/// `i = -m..=m`. Returns the row-major matrix and right-hand side, indexed
/// from `-m`.
pub fn full_stationarity_system(m: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if m == 0 {
        return Err(Error::InvalidHalfWidth(m));
    }
    let m = m as i64;
    let n = (2 * m + 1) as usize;
    let mut matrix = vec![0.0; n * n];
    for (row, i) in (-m..=m).enumerate() {
        for (col, k) in (-m..=m).enumerate() {
            matrix[row * n + col] = cosine_moment(k - i);
        }
    }
    let rhs = (-m..=m).map(ramp_sine_moment).collect();
    Ok((matrix, rhs))
}

/// Solves [`full_stationarity_system`]; entry `j` is the coefficient of
/// offset `j - m`. Carries no antisymmetry assumption.
pub fn solve_full_stationarity_system(m: usize) -> Result<Vec<f64>> {
    let (matrix, rhs) = full_stationarity_system(m)?;
    linalg::lu_solve_refined(&matrix, &rhs)
}

/// Modified wavenumber times mesh size, `λ̄h(φ) = 2 Σ_{k≥1} γ_k sin(kφ)`.
pub fn modified_wavenumber(coeffs: &SchemeCoefficients, phi: f64) -> f64 {
    coeffs
        .gamma
        .iter()
        .enumerate()
        .map(|(i, g)| 2.0 * g * ((i + 1) as f64 * phi).sin())
        .sum()
}

/// Integrated squared wavenumber error
/// `2 ∫_0^{π/2} (ζ - λ̄h(ζ))² dζ`.
pub fn integrated_error(coeffs: &SchemeCoefficients) -> f64 {
    quadrature::integrate(
        |z| {
            let r = z - modified_wavenumber(coeffs, z);
            r * r
        },
        0.0,
        FRAC_PI_2,
        0.5 * INTEGRATED_ERROR_TOL,
    ) * 2.0
}
