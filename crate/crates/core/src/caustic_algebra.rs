//! Chebyshev form of the caustic condition.
//!
//! Writing `θ = cos φ`, the real and imaginary parts of `∂V_g/∂φ = 0` become
//! two functions `f1(θ)`, `f2(θ)` built from `cos(jφ)` and `sin(jφ)`, which
//! are polynomial in `θ` up to a factor `√(1-θ²)`. A spurious caustic needs
//! both to vanish at once.

use crate::io::{fmt_num, CsvDoc};
use crate::par;
use crate::scheme::SchemeCoefficients;
use crate::{Error, Result};

fn check_theta(theta: f64) -> Result<()> {
    if !(-1.0..=1.0).contains(&theta) {
        return Err(Error::Domain(format!("theta = {theta} is outside [-1, 1]")));
    }
    Ok(())
}

/// First-kind polynomial `T_n(θ)` by the three-term recurrence.
fn chebyshev_t(n: u64, theta: f64) -> f64 {
    match n {
        0 => 1.0,
        1 => theta,
        _ => {
            let (mut prev, mut cur) = (1.0, theta);
            for _ in 1..n {
                let next = 2.0 * theta * cur - prev;
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

/// Second-kind polynomial `U_n(θ)`, with `sin((n+1)x) = sin x · U_n(cos x)`.
fn chebyshev_u(n: u64, theta: f64) -> f64 {
    match n {
        0 => 1.0,
        1 => 2.0 * theta,
        _ => {
            let (mut prev, mut cur) = (1.0, 2.0 * theta);
            for _ in 1..n {
                let next = 2.0 * theta * cur - prev;
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

/// `cos(j · arccos θ) = T_|j|(θ)`.
pub fn cos_multiple(j: i64, theta: f64) -> Result<f64> {
    check_theta(theta)?;
    Ok(chebyshev_t(j.unsigned_abs(), theta))
}

/// `sin(j · arccos θ) = sign(j) √(1-θ²) U_{|j|-1}(θ)`; exactly zero at
/// `θ = ±1` and for `j = 0`.
pub fn sin_multiple(j: i64, theta: f64) -> Result<f64> {
    check_theta(theta)?;
    if j == 0 || theta.abs() == 1.0 {
        return Ok(0.0);
    }
    let root = ((1.0 - theta) * (1.0 + theta)).sqrt();
    let v = root * chebyshev_u(j.unsigned_abs() - 1, theta);
    Ok(if j < 0 { -v } else { v })
}

/// `cos(jφ)` and `sin(jφ)` for `|j| ≤ max`, at one `θ`.
struct MultipleTable {
    cos: Vec<f64>,
    sin: Vec<f64>,
}

impl MultipleTable {
    fn new(theta: f64, max: usize) -> Self {
        let root = if theta.abs() == 1.0 {
            0.0
        } else {
            ((1.0 - theta) * (1.0 + theta)).sqrt()
        };
        let mut cos = vec![1.0; max + 1];
        let mut u = vec![1.0; max + 1]; // u[n] = U_{n-1}
        let mut sin = vec![0.0; max + 1];
        if max >= 1 {
            cos[1] = theta;
            sin[1] = root;
        }
        for n in 2..=max {
            cos[n] = 2.0 * theta * cos[n - 1] - cos[n - 2];
            u[n] = if n == 2 {
                2.0 * theta
            } else {
                2.0 * theta * u[n - 1] - u[n - 2]
            };
            sin[n] = root * u[n];
        }
        Self { cos, sin }
    }

    fn cos(&self, j: i64) -> f64 {
        self.cos[j.unsigned_abs() as usize]
    }

    fn sin(&self, j: i64) -> f64 {
        let v = self.sin[j.unsigned_abs() as usize];
        if j < 0 {
            -v
        } else {
            v
        }
    }
}

/// `f1`/`f2` for a given scheme, Courant number and advection speed.
#[derive(Debug, Clone, PartialEq)]
pub struct CausticPolynomialSystem {
    coeffs: SchemeCoefficients,
    sigma: f64,
    c: f64,
}

impl CausticPolynomialSystem {
    pub fn new(coeffs: SchemeCoefficients, sigma: f64, c: f64) -> Result<Self> {
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "sigma = {sigma} must be positive"
            )));
        }
        if !(c.is_finite() && c != 0.0) {
            return Err(Error::InvalidArgument(format!("c = {c} must be nonzero")));
        }
        Ok(Self { coeffs, sigma, c })
    }

    pub fn coeffs(&self) -> &SchemeCoefficients {
        &self.coeffs
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// `f1(θ) = σ Σ_{k,l} γ_k γ_l [k² sin((k+l)φ) - kl cos((k+l)φ)]
    ///        + 2c Σ_{k≥1} k² γ_k sin(kφ)`.
    pub fn f1(&self, theta: f64) -> Result<f64> {
        check_theta(theta)?;
        Ok(self.eval(theta).0)
    }

    /// `f2(θ) = Σ_{k,l} γ_k γ_l [cos((k+l)φ) + kl sin((k+l)φ)]`.
    pub fn f2(&self, theta: f64) -> Result<f64> {
        check_theta(theta)?;
        Ok(self.eval(theta).1)
    }

    fn eval(&self, theta: f64) -> (f64, f64) {
        let m = self.coeffs.half_width() as i64;
        let table = MultipleTable::new(theta, 2 * m as usize);
        let mut quad1 = 0.0;
        let mut f2 = 0.0;
        for k in -m..=m {
            let gk = self.coeffs.at(k);
            if gk == 0.0 {
                continue;
            }
            for l in -m..=m {
                let gl = self.coeffs.at(l);
                if gl == 0.0 {
                    continue;
                }
                let (kf, lf) = (k as f64, l as f64);
                let (c, s) = (table.cos(k + l), table.sin(k + l));
                quad1 += gk * gl * (kf * kf * s - kf * lf * c);
                f2 += gk * gl * (c + kf * lf * s);
            }
        }
        let lin: f64 = (1..=m)
            .map(|k| (k * k) as f64 * self.coeffs.at(k) * table.sin(k))
            .sum();
        (self.sigma * quad1 + 2.0 * self.c * lin, f2)
    }

    /// CSV with header `theta,f1,f2` on `n ≥ 2` uniform points of `[-1, 1]`.
    pub fn curves_csv(&self, n: usize) -> Result<CsvDoc> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!(
                "need at least 2 theta samples, got {n}"
            )));
        }
        let rows = par::map_range(n, |i| {
            let theta = theta_node(i, n);
            let (f1, f2) = self.eval(theta);
            [theta, f1, f2]
        });
        let mut doc = CsvDoc::with_header("theta,f1,f2");
        for r in rows {
            doc.push_numbers(&r);
        }
        Ok(doc)
    }

    /// Points where `f1` and `f2` vanish together.
    ///
    /// `F = f1² + f2²` is sampled on `points` nodes of `[-1, 1]`. Runs of
    /// nodes where both `|f1|` and `|f2|` are already below `tol` are reported
    /// as one interval; every other discrete local minimum of `F` is refined
    /// by golden-section search on its two neighbouring cells and kept if the
    /// refined point passes the same test.
    pub fn joint_root_scan(&self, points: usize, tol: f64) -> Result<Vec<JointRoot>> {
        if points < 3 {
            return Err(Error::InvalidArgument(format!(
                "scan needs at least 3 points, got {points}"
            )));
        }
        let vals = par::map_range(points, |i| self.eval(theta_node(i, points)));
        let below = |(f1, f2): (f64, f64)| f1.abs() < tol && f2.abs() < tol;
        let energy = |(f1, f2): (f64, f64)| f1 * f1 + f2 * f2;

        let mut roots = Vec::new();
        let mut i = 0;
        while i < points {
            if below(vals[i]) {
                let start = i;
                while i + 1 < points && below(vals[i + 1]) {
                    i += 1;
                }
                let (lo, hi) = (theta_node(start, points), theta_node(i, points));
                let mid = (start + i) / 2;
                let star = theta_node(mid, points);
                roots.push(self.joint_root(lo, hi, star, vals[mid]));
            } else {
                let e = energy(vals[i]);
                let left = if i == 0 {
                    f64::INFINITY
                } else {
                    energy(vals[i - 1])
                };
                let right = if i + 1 == points {
                    f64::INFINITY
                } else {
                    energy(vals[i + 1])
                };
                if e <= left && e <= right {
                    let lo = theta_node(i.saturating_sub(1), points);
                    let hi = theta_node((i + 1).min(points - 1), points);
                    let star = golden_section(|t| energy(self.eval(t)), lo, hi);
                    let v = self.eval(star);
                    if below(v)
                        && !roots
                            .iter()
                            .any(|r: &JointRoot| (r.theta_star - star).abs() < 1e-12)
                    {
                        roots.push(self.joint_root(star, star, star, v));
                    }
                }
            }
            i += 1;
        }
        roots.sort_by(|a, b| a.theta_star.total_cmp(&b.theta_star));
        Ok(roots)
    }

    fn joint_root(&self, lo: f64, hi: f64, star: f64, (f1, f2): (f64, f64)) -> JointRoot {
        JointRoot {
            theta_lo: lo,
            theta_hi: hi,
            theta_star: star,
            phi_star: star.acos(),
            f1,
            f2,
        }
    }
}

fn theta_node(i: usize, n: usize) -> f64 {
    if i + 1 == n {
        1.0
    } else {
        -1.0 + 2.0 * i as f64 / (n - 1) as f64
    }
}

fn golden_section<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..200 {
        if b - a <= 1e-15 {
            break;
        }
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    0.5 * (a + b)
}

/// A joint zero of `f1` and `f2`. Isolated roots have
/// `theta_lo == theta_hi == theta_star`; a flat run of zeros is reported once
/// with its extent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointRoot {
    pub theta_lo: f64,
    pub theta_hi: f64,
    pub theta_star: f64,
    pub phi_star: f64,
    pub f1: f64,
    pub f2: f64,
}

/// CSV with header `theta_star,phi_star,f1,f2`.
pub fn joint_roots_csv(roots: &[JointRoot]) -> CsvDoc {
    let mut doc = CsvDoc::with_header("theta_star,phi_star,f1,f2");
    for r in roots {
        doc.push_row([r.theta_star, r.phi_star, r.f1, r.f2].map(fmt_num));
    }
    doc
}

/// Default tolerance on `|f1|` and `|f2|` for a joint root.
pub const JOINT_TOL: f64 = 1e-8;
