use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::{integrate, trapezoid};
use crate::sum::CompensatedSum;

pub const GAMMA_QUARTER: f64 = 3.625_609_908_221_908_3;
pub const GAMMA_THREE_QUARTERS: f64 = 1.225_416_702_465_177_6;

/// Relative accuracy of [`inner_integral`].
const INNER_REL: f64 = 1e-14;

/// `4 / Gamma(1/4 + nu/2)^2`.
pub fn kernel_constant(nu: u8) -> f64 {
    let g = if nu == 0 { GAMMA_QUARTER } else { GAMMA_THREE_QUARTERS };
    4.0 / (g * g)
}

/// `int_0^inf exp(-v^2 - (t/v)^2) dv/v` for `t > 0`, by the trapezoid rule in
/// `w = log v`. The integrand peaks at `w = log(t)/2` with value `e^{-2t}`.
pub fn inner_integral(t: f64) -> Result<f64> {
    let lt = t.ln();
    let peak = 0.5 * lt;
    let lo = (lt - 3.4).min(peak - 3.0);
    let hi = 3.4f64.max(peak + 3.0);
    let f = |w: f64| (-(2.0 * w).exp() - (2.0 * (lt - w)).exp()).exp();
    Ok(trapezoid(f, lo, hi, 0.25, 0.0, INNER_REL, 14)?.value)
}

/// `sqrt(pi/(4t)) e^{-2t}`, an upper bound for [`inner_integral`].
pub fn inner_bound(t: f64) -> f64 {
    (std::f64::consts::PI / (4.0 * t)).sqrt() * (-2.0 * t).exp()
}

/// Upper bound for `W_nu(x)`, `x >= 1`: `(C_nu sqrt(pi)/4) x^{nu-1} e^{-2x}`.
pub fn w_tail_bound(x: f64, nu: u8) -> f64 {
    let x = x.max(1.0);
    kernel_constant(nu) * std::f64::consts::PI.sqrt() / 4.0 * x.powi(nu as i32 - 1) * (-2.0 * x).exp()
}

fn check_args(x: f64, nu: u8, tol: f64) -> Result<()> {
    if !(x >= 0.0 && x.is_finite()) {
        return Err(Error::domain("x must be finite and nonnegative"));
    }
    if nu > 1 {
        return Err(Error::domain("nu must be 0 or 1"));
    }
    if !(tol >= 1e-12) {
        return Err(Error::domain("tol must be at least 1e-12"));
    }
    Ok(())
}

/// `W_nu(x) = C_nu int_x^inf t^{nu-1/2} int_0^inf e^{-v^2-(t/v)^2} dv/v dt`.
///
/// The outer integral uses `t = x + e^s`. Both ends are cut where the
/// discarded mass is below `tol/100`; the upper cut uses [`w_tail_bound`].
pub fn w_kernel(x: f64, nu: u8, tol: f64) -> Result<f64> {
    check_args(x, nu, tol)?;
    let c = kernel_constant(nu);
    let mut d = 1.0;
    while w_tail_bound(x + d, nu) > tol / 100.0 {
        d += 1.0;
    }
    // int_0^eps t^{nu-1/2} K_0(2t) dt <= 2 eps^{1/2} (|log eps| + 3)
    let s_lo = 2.0 * (tol / 43_200.0).ln();
    let expo = nu as f64 - 0.5;
    let f = |s: f64| {
        let e = s.exp();
        let t = x + e;
        c * e * t.powf(expo) * inner_integral(t).unwrap_or(f64::NAN)
    };
    let q = trapezoid(f, s_lo, d.ln(), 0.5, tol / 4.0, 0.0, 12)?;
    if !q.value.is_finite() {
        return Err(Error::Accuracy {
            estimate: q.value,
            bound: f64::INFINITY,
            tol,
        });
    }
    Ok(q.value.clamp(0.0, 1.0))
}

/// `W_nu(pi n / q)` for `n = 0..=top`, accumulated downward from `top` by
/// integrating over each step `[pi n/q, pi (n+1)/q]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WTable {
    pub q: u64,
    pub nu: u8,
    /// `values[n] = W_nu(pi n / q)`; `values[0] = 1`.
    pub values: Vec<f64>,
    /// `segment_errors[n]` bounds the error of the step starting at `n`;
    /// the last entry is the bound on `W_nu(pi top / q)` itself.
    pub segment_errors: Vec<f64>,
}

impl WTable {
    pub fn new(q: u64, nu: u8, top: u64) -> Result<Self> {
        if nu > 1 {
            return Err(Error::domain("nu must be 0 or 1"));
        }
        if top < 1 {
            return Err(Error::domain("table needs at least one step"));
        }
        let c = kernel_constant(nu);
        let step = std::f64::consts::PI / q as f64;
        let expo = nu as f64 - 0.5;
        let segs: Vec<(f64, f64)> = (1..top)
            .into_par_iter()
            .map(|n| {
                let f = |t: f64| c * t.powf(expo) * inner_integral(t).unwrap_or(f64::NAN);
                let (a, b) = (step * n as f64, step * (n + 1) as f64);
                let r = integrate(f, a, b, 1e-300, 1e-13, 64)?;
                Ok((r.value, r.error + INNER_REL * r.value.abs()))
            })
            .collect::<Result<_>>()?;
        let x_top = step * top as f64;
        let top_bound = if x_top >= 1.0 { w_tail_bound(x_top, nu) } else { 1.0 };
        let mut values = vec![0.0; top as usize + 1];
        let mut acc = CompensatedSum::new();
        for n in (1..top as usize).rev() {
            acc.add(segs[n - 1].0);
            values[n] = acc.value();
        }
        values[0] = 1.0;
        let mut segment_errors: Vec<f64> = std::iter::once(0.0).chain(segs.iter().map(|s| s.1)).collect();
        segment_errors.push(top_bound);
        Ok(Self {
            q,
            nu,
            values,
            segment_errors,
        })
    }

    /// Smallest table size whose truncation tail in the L-value series is
    /// below `tol`, and at least `64 q`.
    pub fn default_top(q: u64, nu: u8, tol: f64) -> u64 {
        let mut top = 64 * q;
        while series_tail_bound(q, nu, top) > tol {
            top += q;
        }
        top
    }

    pub fn top(&self) -> u64 {
        self.values.len() as u64 - 1
    }

    pub fn get(&self, n: u64) -> f64 {
        self.values.get(n as usize).copied().unwrap_or(0.0)
    }
}

/// Bound on `|2 sum_{n > X} a_n n^{-1/2} W_nu(pi n/q)|` using `|a_n| <= tau(n) <= 2 sqrt n`.
pub fn series_tail_bound(q: u64, nu: u8, x: u64) -> f64 {
    let r = 2.0 * std::f64::consts::PI / q as f64;
    let x0 = std::f64::consts::PI * x as f64 / q as f64;
    let a = kernel_constant(nu) * std::f64::consts::PI.sqrt() / 4.0;
    let poly = if nu == 0 { 1.0 / x0.max(1.0) } else { 1.0 };
    let mut bound = 4.0 * a * poly * (-r * (x + 1) as f64).exp() / (1.0 - (-r).exp());
    if x0 < 1.0 {
        bound = f64::INFINITY;
    }
    bound
}
