//! Registry of published claims checked against what this crate computes.

use std::f64::consts::PI;

use crate::caustic_algebra::CausticPolynomialSystem;
use crate::config::RunConfig;
use crate::dispersion::{self, Backend, GridSpec};
use crate::io::{fmt_num, CsvDoc};
use crate::scheme::{synthesize_drp, SchemeCoefficients};
use crate::wavepacket::linf_history;
use crate::Result;

/// Published three-point caustic roots `{0, π/2, 0.950935}`.
pub const PUBLISHED_CAUSTIC_ROOTS: [(&str, f64); 3] = [
    ("caustic_root_0_3pt", 0.0),
    ("caustic_root_0_950935_3pt", 0.950935),
    ("caustic_root_pi_over_2_3pt", PI / 2.0),
];

#[allow(clippy::approx_constant)]
pub const PUBLISHED_GAMMA1: f64 = 0.63662;

#[derive(Debug, Clone, PartialEq)]
pub struct Claim {
    pub claim_id: String,
    pub paper_location: String,
    pub paper_value: String,
    pub computed_value: String,
    pub agree: bool,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscrepancyReport {
    pub claims: Vec<Claim>,
}

impl DiscrepancyReport {
    pub fn get(&self, claim_id: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.claim_id == claim_id)
    }

    /// CSV with header
    /// `claim_id,paper_location,paper_value,computed_value,agree,tolerance`.
    pub fn to_csv(&self) -> CsvDoc {
        let mut doc =
            CsvDoc::with_header("claim_id,paper_location,paper_value,computed_value,agree,tolerance");
        for c in &self.claims {
            doc.push_row([
                field(&c.claim_id),
                field(&c.paper_location),
                field(&c.paper_value),
                field(&c.computed_value),
                c.agree.to_string(),
                fmt_num(c.tolerance),
            ]);
        }
        doc
    }
}

// Free text is kept comma free so rows need no quoting.
fn field(s: &str) -> String {
    s.replace(',', ";")
}

fn claim(id: &str, location: &str, published: String, computed: String, agree: bool, tolerance: f64) -> Claim {
    Claim {
        claim_id: id.to_string(),
        paper_location: location.to_string(),
        paper_value: published,
        computed_value: computed,
        agree,
        tolerance,
    }
}

/// Builds the full report. The three-point claims use `m = 1` regardless of
/// `cfg.m`; `sigma`, `c`, `h`, the scan settings and the experiment come
/// from `cfg`.
pub fn build_report(cfg: &RunConfig) -> Result<DiscrepancyReport> {
    let coeffs = synthesize_drp(1)?;
    let gamma1 = coeffs.gamma()[0];
    let grid = GridSpec::new(cfg.c, cfg.h, cfg.sigma)?;
    let mut claims = Vec::new();

    claims.push(claim(
        "gamma1_3pt",
        "three-point DRP coefficient",
        fmt_num(PUBLISHED_GAMMA1),
        fmt_num(gamma1),
        (gamma1 - PUBLISHED_GAMMA1).abs() <= 1e-5,
        1e-5,
    ));

    claims.push(claim(
        "b_symbol_general_relation",
        "general dispersion relation exp(i xi tau - B tau)",
        "B (undefined)".into(),
        "B = 0; relation taken from the amplification factor of the explicit update".into(),
        false,
        0.0,
    ));

    let xi_gap = closed_form_gap(&coeffs, &grid)?;
    claims.push(claim(
        "closed_form_vs_general_xi_3pt",
        "three-point closed-form phase versus the general relation",
        "identical phase relations".into(),
        format!("max |xi tau difference| = {}", fmt_num(xi_gap)),
        xi_gap <= 1e-6,
        1e-6,
    ));

    let report =
        dispersion::find_caustics(&coeffs, &grid, Backend::ThreePointClosedForm, &cfg.caustics.scan)?;
    let refs: Vec<f64> = PUBLISHED_CAUSTIC_ROOTS.iter().map(|r| r.1).collect();
    let cmp = dispersion::compare_roots(&report, &refs, 1e-3);
    for ((id, value), c) in PUBLISHED_CAUSTIC_ROOTS.iter().zip(&cmp) {
        claims.push(claim(
            id,
            "roots of the three-point group velocity derivative",
            fmt_num(*value),
            format!("nearest stationary point {}", fmt_num(c.nearest_phi)),
            c.agree,
            1e-3,
        ));
    }

    let general = dispersion::find_caustics(&coeffs, &grid, Backend::GeneralLog, &cfg.caustics.scan)?;
    let interior = general.interior().count();
    claims.push(claim(
        "interior_caustics_general_3pt",
        "spurious caustics of the three-point scheme",
        "interior extremum of V_g present".into(),
        format!("{interior} interior stationary points"),
        interior > 0,
        0.0,
    ));

    let system = CausticPolynomialSystem::new(coeffs.clone(), cfg.sigma, cfg.c)?;
    let f1 = system.f1(1.0)?;
    let f2 = system.f2(1.0)?;
    let moment: f64 = coeffs.first_moment();
    claims.push(claim(
        "f1_at_one_3pt",
        "f1 at theta = 1 for the three-point scheme",
        "0".into(),
        format!(
            "{} (= -sigma (sum k gamma)^2 = {})",
            fmt_num(f1),
            fmt_num(-cfg.sigma * moment * moment)
        ),
        f1.abs() <= 1e-12,
        1e-12,
    ));
    claims.push(claim(
        "f2_at_one_3pt",
        "f2 at theta = 1 for the three-point scheme",
        "0".into(),
        fmt_num(f2),
        f2.abs() <= 1e-12,
        1e-12,
    ));

    let model = cfg.error_model()?;
    let history = linf_history(&model)?;
    let peak = history.max();
    let plateau = history.tail_mean(0.1);
    claims.push(claim(
        "linf_max",
        "maximum of the error L-inf norm in units of the initial packet amplitude",
        "2".into(),
        fmt_num(peak),
        ((peak - 2.0) / 2.0).abs() <= 0.02,
        0.02,
    ));
    claims.push(claim(
        "linf_late_limit",
        "late-time error L-inf norm in units of the initial packet amplitude",
        "1".into(),
        fmt_num(plateau),
        (plateau - 1.0).abs() <= 0.02,
        0.02,
    ));

    claims.sort_by(|a, b| a.claim_id.cmp(&b.claim_id));
    Ok(DiscrepancyReport { claims })
}

fn closed_form_gap(coeffs: &SchemeCoefficients, grid: &GridSpec) -> Result<f64> {
    let n = 2001;
    let mut gap = 0.0f64;
    for i in 1..n - 1 {
        let phi = PI * i as f64 / (n - 1) as f64;
        let a = dispersion::phase_frequency(coeffs, grid, Backend::GeneralLog, phi)?;
        let b = dispersion::phase_frequency(coeffs, grid, Backend::ThreePointClosedForm, phi)?;
        gap = gap.max((a - b).abs());
    }
    Ok(gap)
}
