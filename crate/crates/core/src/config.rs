//! Run configuration: a line-oriented `key = value` format with optional
//! `[section]` headers and `#` comments.
//!
//! ```text
//! m = 1
//! sigma = 0.9
//! h = 0.01
//! backend = threepoint
//!
//! [experiment]
//! alpha = 0.0005
//! v_1 = -2.68381
//! ```
//!
//! `m`, `sigma` and `h` are required; everything else has a default. Parsing
//! reports every problem it finds, each with its line number.

use std::collections::BTreeMap;
use std::path::PathBuf;

use crate::dispersion::{Backend, GridSpec, ScanSettings};
use crate::error::{ConfigErrors, ConfigIssue};
use crate::wavepacket::{ErrorModelConfig, SimulationSetup, WavePacket};
use crate::{Error, Result};

const KNOWN_KEYS: &[(&str, &[&str])] = &[
    ("", &["m", "sigma", "c", "h", "backend", "phi_samples", "out"]),
    (
        "caustics",
        &[
            "scan_points",
            "bisection_tol",
            "classify_step",
            "joint_points",
            "joint_tol",
            "theta_samples",
        ],
    ),
    (
        "experiment",
        &[
            "alpha", "x0_1", "x0_2", "k_c", "delta_k", "k_1", "k_2", "v_1", "v_2", "x_min", "x_max", "nx",
            "t_final", "nt",
        ],
    ),
    ("field", &["x_min", "x_max", "nx", "t_final", "nt"]),
    (
        "simulation",
        &["x_min", "x_max", "steps", "record_every", "x_stride"],
    ),
];

#[derive(Debug, Clone, PartialEq)]
pub struct CausticsSection {
    pub scan: ScanSettings,
    pub joint_points: usize,
    pub joint_tol: f64,
    pub theta_samples: usize,
}

impl Default for CausticsSection {
    fn default() -> Self {
        Self {
            scan: ScanSettings::default(),
            joint_points: 4096,
            joint_tol: crate::caustic_algebra::JOINT_TOL,
            theta_samples: 1001,
        }
    }
}

/// Two-packet error-model parameters. Carriers default to `k_c ± delta_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSection {
    pub alpha: f64,
    pub x0_1: f64,
    pub x0_2: f64,
    pub k_c: f64,
    pub delta_k: f64,
    pub k_1: Option<f64>,
    pub k_2: Option<f64>,
    pub v_1: f64,
    pub v_2: f64,
    pub x_min: f64,
    pub x_max: f64,
    /// Defaults to the node count implied by the mesh size `h`.
    pub nx: Option<usize>,
    pub t_final: f64,
    pub nt: usize,
}

impl Default for ExperimentSection {
    fn default() -> Self {
        let p = ErrorModelConfig::crossing_preset();
        Self {
            alpha: p.packet1.alpha,
            x0_1: p.packet1.x0,
            x0_2: p.packet2.x0,
            k_c: 95.0935,
            delta_k: 1.0,
            k_1: None,
            k_2: None,
            v_1: p.packet1.v,
            v_2: p.packet2.v,
            x_min: p.x_min,
            x_max: p.x_max,
            nx: None,
            t_final: p.t_final,
            nt: p.nt,
        }
    }
}

/// Residual-energy field window.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldSection {
    pub x_min: f64,
    pub x_max: f64,
    pub nx: usize,
    pub t_final: f64,
    pub nt: usize,
}

impl Default for FieldSection {
    fn default() -> Self {
        // 100 length units around the crossing point of the default experiment.
        Self {
            x_min: -5077.62,
            x_max: -4977.62,
            nx: 10001,
            t_final: 4000.0,
            nt: 41,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationSection {
    pub x_min: f64,
    pub x_max: f64,
    pub steps: usize,
    pub record_every: usize,
    pub x_stride: usize,
}

impl Default for SimulationSection {
    fn default() -> Self {
        Self {
            x_min: -300.0,
            x_max: 640.0,
            steps: 30,
            record_every: 1,
            x_stride: 10,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub m: usize,
    pub sigma: f64,
    pub c: f64,
    pub h: f64,
    pub backend: Backend,
    pub phi_samples: usize,
    pub out: Option<PathBuf>,
    pub caustics: CausticsSection,
    pub experiment: ExperimentSection,
    pub field: FieldSection,
    pub simulation: SimulationSection,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            m: 1,
            sigma: 0.9,
            c: 1.0,
            h: 0.01,
            backend: Backend::GeneralLog,
            phi_samples: 1025,
            out: None,
            caustics: CausticsSection::default(),
            experiment: ExperimentSection::default(),
            field: FieldSection::default(),
            simulation: SimulationSection::default(),
        }
    }
}

impl RunConfig {
    pub fn grid(&self) -> Result<GridSpec> {
        GridSpec::new(self.c, self.h, self.sigma)
    }

    fn packets(&self) -> Result<(WavePacket, WavePacket)> {
        let e = &self.experiment;
        let k1 = e.k_1.unwrap_or(e.k_c + e.delta_k);
        let k2 = e.k_2.unwrap_or(e.k_c - e.delta_k);
        Ok((
            WavePacket::new(e.alpha, e.x0_1, k1, e.v_1)?,
            WavePacket::new(e.alpha, e.x0_2, k2, e.v_2)?,
        ))
    }

    /// Error model on the `[experiment]` grid.
    pub fn error_model(&self) -> Result<ErrorModelConfig> {
        let (packet1, packet2) = self.packets()?;
        let e = &self.experiment;
        let nx =
            e.nx.unwrap_or_else(|| ((e.x_max - e.x_min) / self.h).round() as usize + 1);
        let cfg = ErrorModelConfig {
            packet1,
            packet2,
            c: self.c,
            x_min: e.x_min,
            x_max: e.x_max,
            nx,
            t_final: e.t_final,
            nt: e.nt,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Same packets, sampled on the `[field]` window.
    pub fn field_model(&self) -> Result<ErrorModelConfig> {
        let (packet1, packet2) = self.packets()?;
        let f = &self.field;
        let cfg = ErrorModelConfig {
            packet1,
            packet2,
            c: self.c,
            x_min: f.x_min,
            x_max: f.x_max,
            nx: f.nx,
            t_final: f.t_final,
            nt: f.nt,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn simulation_setup(&self) -> Result<SimulationSetup> {
        let (packet1, packet2) = self.packets()?;
        let s = &self.simulation;
        Ok(SimulationSetup {
            packet1,
            packet2,
            x_min: s.x_min,
            x_max: s.x_max,
            steps: s.steps,
            record_every: s.record_every,
        })
    }

    /// Cross-field checks; also run after command-line overrides.
    pub fn validate(&self) -> Result<()> {
        let issues = self.issues(&|_| 0);
        if issues.is_empty() {
            Ok(())
        } else {
            Err(Error::Config(ConfigErrors(issues)))
        }
    }

    fn issues(&self, line_of: &dyn Fn(&str) -> usize) -> Vec<ConfigIssue> {
        let mut out = Vec::new();
        let mut check = |ok: bool, key: &str, msg: String| {
            if !ok {
                out.push(ConfigIssue {
                    line: line_of(key),
                    message: msg,
                });
            }
        };
        let pos = |v: f64| v.is_finite() && v > 0.0;

        check(self.m >= 1, "m", format!("m = {} must be at least 1", self.m));
        check(
            pos(self.sigma),
            "sigma",
            format!("sigma = {} must be positive", self.sigma),
        );
        check(
            self.c.is_finite() && self.c != 0.0,
            "c",
            format!("c = {} must be nonzero", self.c),
        );
        check(pos(self.h), "h", format!("h = {} must be positive", self.h));
        check(
            self.backend != Backend::ThreePointClosedForm || self.m == 1,
            "backend",
            format!("backend 'threepoint' requires m = 1 (m = {})", self.m),
        );
        check(
            self.phi_samples >= 2,
            "phi_samples",
            "phi_samples must be at least 2".into(),
        );

        let cs = &self.caustics;
        check(
            cs.scan.scan_points >= 4,
            "caustics.scan_points",
            "scan_points must be at least 4".into(),
        );
        check(
            pos(cs.scan.bisection_tol),
            "caustics.bisection_tol",
            "bisection_tol must be positive".into(),
        );
        check(
            pos(cs.scan.classify_step),
            "caustics.classify_step",
            "classify_step must be positive".into(),
        );
        check(
            cs.joint_points >= 3,
            "caustics.joint_points",
            "joint_points must be at least 3".into(),
        );
        check(
            pos(cs.joint_tol),
            "caustics.joint_tol",
            "joint_tol must be positive".into(),
        );
        check(
            cs.theta_samples >= 2,
            "caustics.theta_samples",
            "theta_samples must be at least 2".into(),
        );

        let e = &self.experiment;
        check(
            pos(e.alpha),
            "experiment.alpha",
            format!("alpha = {} must be positive", e.alpha),
        );
        check(
            pos(e.delta_k) || e.delta_k == 0.0,
            "experiment.delta_k",
            "delta_k must be nonnegative".into(),
        );
        check(
            e.x_max > e.x_min,
            "experiment.x_max",
            "x_max must exceed x_min".into(),
        );
        check(
            e.nx.is_none_or(|n| n >= 2),
            "experiment.nx",
            "nx must be at least 2".into(),
        );
        check(
            pos(e.t_final),
            "experiment.t_final",
            "t_final must be positive".into(),
        );
        check(e.nt >= 2, "experiment.nt", "nt must be at least 2".into());

        let f = &self.field;
        check(f.x_max > f.x_min, "field.x_max", "x_max must exceed x_min".into());
        check(f.nx >= 2, "field.nx", "nx must be at least 2".into());
        check(pos(f.t_final), "field.t_final", "t_final must be positive".into());
        check(f.nt >= 2, "field.nt", "nt must be at least 2".into());

        let s = &self.simulation;
        check(
            s.x_max > s.x_min,
            "simulation.x_max",
            "x_max must exceed x_min".into(),
        );
        check(
            s.steps >= 1,
            "simulation.steps",
            "steps must be at least 1".into(),
        );
        check(
            s.record_every >= 1,
            "simulation.record_every",
            "record_every must be at least 1".into(),
        );
        check(
            s.x_stride >= 1,
            "simulation.x_stride",
            "x_stride must be at least 1".into(),
        );
        out
    }
}

struct Entry {
    line: usize,
    raw: String,
}

struct Parser {
    entries: BTreeMap<String, Entry>,
    issues: Vec<ConfigIssue>,
}

impl Parser {
    fn take<T>(&mut self, key: &str, parse: impl Fn(&str) -> Option<T>, what: &str) -> Option<T> {
        let entry = self.entries.get(key)?;
        match parse(&entry.raw) {
            Some(v) => Some(v),
            None => {
                self.issues.push(ConfigIssue {
                    line: entry.line,
                    message: format!("{key}: expected {what}, got '{}'", entry.raw),
                });
                None
            }
        }
    }

    fn real(&mut self, key: &str, slot: &mut f64) {
        if let Some(v) = self.take(
            key,
            |s| s.parse::<f64>().ok().filter(|v| v.is_finite()),
            "a finite real number",
        ) {
            *slot = v;
        }
    }

    fn count(&mut self, key: &str, slot: &mut usize) {
        if let Some(v) = self.take(key, |s| s.parse::<usize>().ok(), "a nonnegative integer") {
            *slot = v;
        }
    }
}

fn unquote(s: &str) -> &str {
    s.strip_prefix('"').and_then(|r| r.strip_suffix('"')).unwrap_or(s)
}

/// Parses and validates a configuration, collecting every error.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let mut p = Parser {
        entries: BTreeMap::new(),
        issues: Vec::new(),
    };
    let mut section = String::new();
    let mut section_known = true;

    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw_line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            section = name.trim().to_string();
            section_known = KNOWN_KEYS.iter().any(|(s, _)| *s == section);
            if !section_known {
                p.issues.push(ConfigIssue {
                    line: line_no,
                    message: format!("unknown section [{section}]"),
                });
            }
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            p.issues.push(ConfigIssue {
                line: line_no,
                message: format!("expected 'key = value', got '{line}'"),
            });
            continue;
        };
        let (key, value) = (key.trim(), unquote(value.trim()).to_string());
        if !section_known {
            continue;
        }
        let known = KNOWN_KEYS
            .iter()
            .find(|(s, _)| *s == section)
            .is_some_and(|(_, keys)| keys.contains(&key));
        let full = if section.is_empty() {
            key.to_string()
        } else {
            format!("{section}.{key}")
        };
        if !known {
            p.issues.push(ConfigIssue {
                line: line_no,
                message: format!("unknown key '{full}'"),
            });
            continue;
        }
        if let Some(prev) = p.entries.get(&full) {
            p.issues.push(ConfigIssue {
                line: line_no,
                message: format!("duplicate key '{full}' (first set on line {})", prev.line),
            });
            continue;
        }
        p.entries.insert(
            full,
            Entry {
                line: line_no,
                raw: value,
            },
        );
    }

    for required in ["m", "sigma", "h"] {
        if !p.entries.contains_key(required) {
            p.issues.push(ConfigIssue {
                line: 0,
                message: format!("missing required key '{required}'"),
            });
        }
    }

    let mut cfg = RunConfig::default();
    if let Some(m) = p.take("m", |s| s.parse::<i64>().ok(), "an integer") {
        if m < 1 {
            let line = p.entries["m"].line;
            p.issues.push(ConfigIssue {
                line,
                message: format!("m = {m} must be at least 1"),
            });
        } else {
            cfg.m = m as usize;
        }
    }
    p.real("sigma", &mut cfg.sigma);
    p.real("c", &mut cfg.c);
    p.real("h", &mut cfg.h);
    if let Some(b) = p.take(
        "backend",
        |s| s.parse::<Backend>().ok(),
        "'general' or 'threepoint'",
    ) {
        cfg.backend = b;
    }
    p.count("phi_samples", &mut cfg.phi_samples);
    if let Some(out) = p.entries.get("out") {
        cfg.out = Some(PathBuf::from(&out.raw));
    }

    let cs = &mut cfg.caustics;
    p.count("caustics.scan_points", &mut cs.scan.scan_points);
    p.real("caustics.bisection_tol", &mut cs.scan.bisection_tol);
    p.real("caustics.classify_step", &mut cs.scan.classify_step);
    p.count("caustics.joint_points", &mut cs.joint_points);
    p.real("caustics.joint_tol", &mut cs.joint_tol);
    p.count("caustics.theta_samples", &mut cs.theta_samples);

    let e = &mut cfg.experiment;
    p.real("experiment.alpha", &mut e.alpha);
    p.real("experiment.x0_1", &mut e.x0_1);
    p.real("experiment.x0_2", &mut e.x0_2);
    p.real("experiment.k_c", &mut e.k_c);
    p.real("experiment.delta_k", &mut e.delta_k);
    for (key, slot) in [("experiment.k_1", &mut e.k_1), ("experiment.k_2", &mut e.k_2)] {
        let mut v = f64::NAN;
        p.real(key, &mut v);
        if !v.is_nan() {
            *slot = Some(v);
        }
    }
    p.real("experiment.v_1", &mut e.v_1);
    p.real("experiment.v_2", &mut e.v_2);
    p.real("experiment.x_min", &mut e.x_min);
    p.real("experiment.x_max", &mut e.x_max);
    let mut nx = usize::MAX;
    p.count("experiment.nx", &mut nx);
    if nx != usize::MAX {
        e.nx = Some(nx);
    }
    p.real("experiment.t_final", &mut e.t_final);
    p.count("experiment.nt", &mut e.nt);

    let f = &mut cfg.field;
    p.real("field.x_min", &mut f.x_min);
    p.real("field.x_max", &mut f.x_max);
    p.count("field.nx", &mut f.nx);
    p.real("field.t_final", &mut f.t_final);
    p.count("field.nt", &mut f.nt);

    let s = &mut cfg.simulation;
    p.real("simulation.x_min", &mut s.x_min);
    p.real("simulation.x_max", &mut s.x_max);
    p.count("simulation.steps", &mut s.steps);
    p.count("simulation.record_every", &mut s.record_every);
    p.count("simulation.x_stride", &mut s.x_stride);

    // Only validate values that parsed, so a bad token is reported once.
    let bad_lines: Vec<usize> = p.issues.iter().map(|i| i.line).collect();
    let entries = &p.entries;
    let line_of = |key: &str| entries.get(key).map_or(0, |e| e.line);
    for issue in cfg.issues(&line_of) {
        if issue.line == 0 || !bad_lines.contains(&issue.line) {
            p.issues.push(issue);
        }
    }

    if p.issues.is_empty() {
        Ok(cfg)
    } else {
        p.issues.sort_by_key(|i| i.line);
        Err(Error::Config(ConfigErrors(p.issues)))
    }
}
