use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gal::exponent::GalExponent;
use crate::nt::IntegerSet;
use crate::sum::{self, CompensatedSum};

/// Dense symmetric matrix `((m_i, m_j)/[m_i, m_j])^alpha`, row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GalMatrix {
    order: usize,
    entries: Vec<f64>,
}

impl GalMatrix {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.order + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.order..(i + 1) * self.order]
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        dense_matvec(&self.entries, self.order, x)
    }

    /// `x^T A x`.
    pub fn quadratic_form(&self, x: &[f64]) -> f64 {
        let y = self.matvec(x);
        sum::sum(x.iter().zip(&y).map(|(a, b)| a * b))
    }
}

pub fn build_gal_matrix(set: &IntegerSet, alpha: GalExponent) -> Result<GalMatrix> {
    set.ensure_nonempty()?;
    let n = set.len();
    let a = alpha.as_f64();
    let elems = set.elements();
    let mut entries = vec![0.0; n * n];
    entries.par_chunks_mut(n).enumerate().for_each(|(i, row)| {
        for (j, slot) in row.iter_mut().enumerate() {
            *slot = if i == j {
                1.0
            } else {
                elems[i].gcd_ratio_pow(&elems[j], a)
            };
        }
    });
    Ok(GalMatrix { order: n, entries })
}

fn dense_matvec(entries: &[f64], n: usize, x: &[f64]) -> Vec<f64> {
    entries
        .par_chunks(n)
        .map(|row| sum::sum(row.iter().zip(x).map(|(a, b)| a * b)))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormMode {
    #[default]
    Full,
    Divisibility,
}

impl std::str::FromStr for NormMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "full" => Ok(Self::Full),
            "divisibility" | "div" => Ok(Self::Divisibility),
            _ => Err(format!("unknown norm mode `{s}`")),
        }
    }
}

/// Settings for the symmetric power iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerIteration {
    pub rel_residual: f64,
    pub max_iterations: usize,
    /// Solve densely when the cap is hit and the order is small.
    pub dense_fallback: bool,
}

impl Default for PowerIteration {
    fn default() -> Self {
        Self {
            rel_residual: 1e-12,
            max_iterations: 100_000,
            dense_fallback: true,
        }
    }
}

impl PowerIteration {
    /// Largest eigenvalue of a symmetric PSD operator, starting from the
    /// all-ones direction. Stops once `|Ax - lambda x| <= tol * lambda`.
    /// If the cap is reached with `n <= DENSE_FALLBACK_MAX` (clustered top
    /// eigenvalues) and `dense_fallback` is set, the operator is
    /// materialised and solved by Jacobi.
    pub fn run(&self, n: usize, apply: impl Fn(&[f64]) -> Vec<f64>) -> Result<f64> {
        let mut x = vec![1.0 / (n as f64).sqrt(); n];
        let mut lambda = 0.0;
        let mut residual = f64::INFINITY;
        for _ in 0..self.max_iterations {
            let y = apply(&x);
            lambda = sum::sum(x.iter().zip(&y).map(|(a, b)| a * b));
            if lambda <= 0.0 {
                return Ok(0.0);
            }
            let mut r2 = CompensatedSum::new();
            for (yi, xi) in y.iter().zip(&x) {
                let d = yi - lambda * xi;
                r2.add(d * d);
            }
            residual = r2.value().sqrt() / lambda;
            if residual <= self.rel_residual {
                return Ok(lambda);
            }
            let norm = sum::sum(y.iter().map(|v| v * v)).sqrt();
            x = y.into_iter().map(|v| v / norm).collect();
        }
        if self.dense_fallback && n <= DENSE_FALLBACK_MAX {
            return Ok(jacobi_max_eigenvalue(n, &apply));
        }
        Err(Error::Convergence {
            iterations: self.max_iterations,
            estimate: lambda,
            residual,
            last_iterate: x,
        })
    }
}

/// Largest order handled by the dense fallback.
pub const DENSE_FALLBACK_MAX: usize = 400;

/// Largest eigenvalue of a symmetric operator by cyclic Jacobi rotations.
fn jacobi_max_eigenvalue(n: usize, apply: &impl Fn(&[f64]) -> Vec<f64>) -> f64 {
    let mut a = vec![0.0; n * n];
    let mut e = vec![0.0; n];
    for j in 0..n {
        e[j] = 1.0;
        for (i, v) in apply(&e).into_iter().enumerate() {
            a[i * n + j] = v;
        }
        e[j] = 0.0;
    }
    // symmetrise against rounding in the products
    for i in 0..n {
        for j in 0..i {
            let m = 0.5 * (a[i * n + j] + a[j * n + i]);
            a[i * n + j] = m;
            a[j * n + i] = m;
        }
    }
    for _ in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * n + j].powi(2))
            .sum();
        let diag: f64 = (0..n).map(|i| a[i * n + i].powi(2)).sum();
        if off <= 1e-32 * diag {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i * n + i]).fold(f64::NEG_INFINITY, f64::max)
}

/// Operator norm of the Gál form (`full`) or of its divisibility-masked
/// restriction (`divisibility`).
pub fn quadratic_norm(set: &IntegerSet, alpha: GalExponent, mode: NormMode) -> Result<f64> {
    quadratic_norm_with(set, alpha, mode, PowerIteration::default())
}

pub fn quadratic_norm_with(
    set: &IntegerSet,
    alpha: GalExponent,
    mode: NormMode,
    iteration: PowerIteration,
) -> Result<f64> {
    let matrix = build_gal_matrix(set, alpha)?;
    let n = matrix.order();
    match mode {
        NormMode::Full => iteration.run(n, |x| matrix.matvec(x)),
        NormMode::Divisibility => {
            let elems = set.elements();
            // A[i][j] = (m_j/m_i)^alpha when m_j | m_i
            let mut masked = vec![0.0; n * n];
            masked.par_chunks_mut(n).enumerate().for_each(|(i, row)| {
                for (j, slot) in row.iter_mut().enumerate() {
                    if elems[j].divides(&elems[i]) {
                        *slot = matrix.get(i, j);
                    }
                }
            });
            let mut transposed = vec![0.0; n * n];
            for i in 0..n {
                for j in 0..n {
                    transposed[j * n + i] = masked[i * n + j];
                }
            }
            let gram = iteration.run(n, |x| {
                let ax = dense_matvec(&masked, n, x);
                dense_matvec(&transposed, n, &ax)
            })?;
            Ok(gram.sqrt())
        }
    }
}
