//! Small dense linear solves on row-major square matrices.

use crate::{Error, Result};

/// Solves `A x = b` for symmetric positive definite `A` (row-major, `n × n`)
/// by Cholesky factorisation.
pub fn cholesky_solve(a: &[f64], b: &[f64]) -> Result<Vec<f64>> {
    let n = b.len();
    check_shape(a, n)?;
    let mut l = vec![0.0; n * n];
    for j in 0..n {
        let mut d = a[j * n + j];
        for k in 0..j {
            d -= l[j * n + k] * l[j * n + k];
        }
        if d.is_nan() || d <= 0.0 {
            return Err(Error::Solver(format!(
                "matrix is not positive definite (pivot {j} = {d})"
            )));
        }
        let d = d.sqrt();
        l[j * n + j] = d;
        for i in (j + 1)..n {
            let mut s = a[i * n + j];
            for k in 0..j {
                s -= l[i * n + k] * l[j * n + k];
            }
            l[i * n + j] = s / d;
        }
    }
    let mut y = vec![0.0; n];
    for i in 0..n {
        let mut s = b[i];
        for k in 0..i {
            s -= l[i * n + k] * y[k];
        }
        y[i] = s / l[i * n + i];
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut s = y[i];
        for k in (i + 1)..n {
            s -= l[k * n + i] * x[k];
        }
        x[i] = s / l[i * n + i];
    }
    Ok(x)
}

/// LU factorisation with partial pivoting, stored compactly.
struct Lu {
    n: usize,
    lu: Vec<f64>,
    perm: Vec<usize>,
}

impl Lu {
    fn factor(a: &[f64], n: usize) -> Result<Self> {
        let mut lu = a.to_vec();
        let mut perm: Vec<usize> = (0..n).collect();
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&i, &j| lu[i * n + col].abs().total_cmp(&lu[j * n + col].abs()))
                .expect("non-empty pivot range");
            if lu[pivot * n + col] == 0.0 {
                return Err(Error::Solver(format!("singular matrix at column {col}")));
            }
            if pivot != col {
                for k in 0..n {
                    lu.swap(pivot * n + k, col * n + k);
                }
                perm.swap(pivot, col);
            }
            let p = lu[col * n + col];
            for i in (col + 1)..n {
                let factor = lu[i * n + col] / p;
                lu[i * n + col] = factor;
                for k in (col + 1)..n {
                    lu[i * n + k] -= factor * lu[col * n + k];
                }
            }
        }
        Ok(Self { n, lu, perm })
    }

    fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut x: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for k in 0..i {
                x[i] -= self.lu[i * n + k] * x[k];
            }
        }
        for i in (0..n).rev() {
            for k in (i + 1)..n {
                x[i] -= self.lu[i * n + k] * x[k];
            }
            x[i] /= self.lu[i * n + i];
        }
        x
    }
}

/// Error-free product: `a * b = p + e` exactly.
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// Error-free sum: `a + b = s + e` exactly.
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

/// `b - A x` evaluated in roughly twice the working precision.
fn residual_compensated(a: &[f64], x: &[f64], b: &[f64]) -> Vec<f64> {
    let n = b.len();
    (0..n)
        .map(|i| {
            let (mut s, mut c) = (b[i], 0.0);
            for k in 0..n {
                let (p, pe) = two_prod(-a[i * n + k], x[k]);
                let (t, te) = two_sum(s, p);
                s = t;
                c += te + pe;
            }
            s + c
        })
        .collect()
}

/// Solves a general square system by LU with partial pivoting followed by
/// iterative refinement against compensated residuals. Refinement recovers
/// close to full working accuracy for condition numbers well below `1/eps`.
pub fn lu_solve_refined(a: &[f64], b: &[f64]) -> Result<Vec<f64>> {
    let n = b.len();
    check_shape(a, n)?;
    let lu = Lu::factor(a, n)?;
    let mut x = lu.solve(b);
    for _ in 0..8 {
        let r = residual_compensated(a, &x, b);
        let dx = lu.solve(&r);
        let mut change = 0.0f64;
        let mut scale = 0.0f64;
        for (xi, di) in x.iter_mut().zip(&dx) {
            *xi += di;
            change = change.max(di.abs());
            scale = scale.max(xi.abs());
        }
        if change <= f64::EPSILON * scale {
            break;
        }
    }
    Ok(x)
}

/// Max-norm of `b - A x` (plain arithmetic).
pub fn residual_max(a: &[f64], x: &[f64], b: &[f64]) -> f64 {
    let n = b.len();
    (0..n)
        .map(|i| {
            let ax: f64 = (0..n).map(|k| a[i * n + k] * x[k]).sum();
            (b[i] - ax).abs()
        })
        .fold(0.0, f64::max)
}

fn check_shape(a: &[f64], n: usize) -> Result<()> {
    if n == 0 || a.len() != n * n {
        return Err(Error::Solver(format!(
            "matrix of {} entries does not match a system of size {n}",
            a.len()
        )));
    }
    Ok(())
}
