//! One function per CLI subcommand. Each writes its CSV files atomically into
//! `out` and returns their paths in write order.

use std::fs;
use std::path::{Path, PathBuf};

use crate::caustic_algebra::{joint_roots_csv, CausticPolynomialSystem};
use crate::config::RunConfig;
use crate::discrepancy;
use crate::dispersion::{self, caustic_ray};
use crate::io::CsvDoc;
use crate::scheme::synthesize_drp;
use crate::wavepacket::{linf_history, residual_energy_grid, simulate_two_packets};
use crate::Result;

struct Outputs<'a> {
    dir: &'a Path,
    written: Vec<PathBuf>,
}

impl<'a> Outputs<'a> {
    fn new(dir: &'a Path) -> Result<Self> {
        fs::create_dir_all(dir)?;
        Ok(Self {
            dir,
            written: Vec::new(),
        })
    }

    fn write(&mut self, name: &str, doc: &CsvDoc) -> Result<()> {
        let path = self.dir.join(name);
        doc.write_atomic(&path)?;
        self.written.push(path);
        Ok(())
    }
}

/// `coefficients.csv`.
pub fn cmd_synth(m: usize, out: &Path) -> Result<Vec<PathBuf>> {
    let coeffs = synthesize_drp(m)?;
    let mut o = Outputs::new(out)?;
    o.write("coefficients.csv", &coeffs.to_csv())?;
    Ok(o.written)
}

/// `dispersion.csv`.
pub fn cmd_dispersion(cfg: &RunConfig, out: &Path) -> Result<Vec<PathBuf>> {
    cfg.validate()?;
    let coeffs = synthesize_drp(cfg.m)?;
    let profile = dispersion::sample_profile(&coeffs, &cfg.grid()?, cfg.backend, cfg.phi_samples)?;
    let mut o = Outputs::new(out)?;
    o.write("dispersion.csv", &profile.to_csv())?;
    Ok(o.written)
}

/// `caustics.csv`, `f1f2.csv` and `joint_roots.csv`.
pub fn cmd_caustics(cfg: &RunConfig, out: &Path) -> Result<Vec<PathBuf>> {
    cfg.validate()?;
    let coeffs = synthesize_drp(cfg.m)?;
    let report = dispersion::find_caustics(&coeffs, &cfg.grid()?, cfg.backend, &cfg.caustics.scan)?;
    let system = CausticPolynomialSystem::new(coeffs, cfg.sigma, cfg.c)?;
    let curves = system.curves_csv(cfg.caustics.theta_samples)?;
    let roots = system.joint_root_scan(cfg.caustics.joint_points, cfg.caustics.joint_tol)?;
    let mut o = Outputs::new(out)?;
    o.write("caustics.csv", &report.to_csv())?;
    o.write("f1f2.csv", &curves)?;
    o.write("joint_roots.csv", &joint_roots_csv(&roots))?;
    Ok(o.written)
}

/// `simulation_field.csv` (every `x_stride`-th node), `simulation_error.csv`
/// and `model_error.csv`.
pub fn cmd_simulate(cfg: &RunConfig, out: &Path) -> Result<Vec<PathBuf>> {
    cfg.validate()?;
    let coeffs = synthesize_drp(cfg.m)?;
    let outcome = simulate_two_packets(&cfg.simulation_setup()?, &coeffs, &cfg.grid()?)?;
    let mut o = Outputs::new(out)?;
    o.write(
        "simulation_field.csv",
        &outcome.field.to_csv_strided(cfg.simulation.x_stride),
    )?;
    o.write("simulation_error.csv", &outcome.history.to_csv())?;
    o.write("model_error.csv", &outcome.model_history.to_csv())?;
    Ok(o.written)
}

/// `error_history.csv`, `residual_energy.csv` and one `ray_<i>.csv` per
/// stationary point of the configured backend.
pub fn cmd_errormodel(cfg: &RunConfig, out: &Path) -> Result<Vec<PathBuf>> {
    cfg.validate()?;
    let model = cfg.error_model()?;
    let history = linf_history(&model)?;
    let energy = residual_energy_grid(&cfg.field_model()?)?;

    let coeffs = synthesize_drp(cfg.m)?;
    let report = dispersion::find_caustics(&coeffs, &cfg.grid()?, cfg.backend, &cfg.caustics.scan)?;
    let times = model.times();

    let mut o = Outputs::new(out)?;
    o.write("error_history.csv", &history.to_csv())?;
    o.write("residual_energy.csv", &energy.to_csv())?;
    for (i, p) in report.stationary_points.iter().enumerate() {
        if let Some(ray) = caustic_ray(&report, p.phi_c) {
            o.write(&format!("ray_{i}.csv"), &ray.to_csv(&times))?;
        }
    }
    Ok(o.written)
}

/// `discrepancy.csv`.
pub fn cmd_discrepancy(cfg: &RunConfig, out: &Path) -> Result<Vec<PathBuf>> {
    cfg.validate()?;
    let report = discrepancy::build_report(cfg)?;
    let mut o = Outputs::new(out)?;
    o.write("discrepancy.csv", &report.to_csv())?;
    Ok(o.written)
}
