use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::eval::{zeta, ZetaLine};
use super::kernels::{k_complex, k_cos_tail, k_sin_tail, kernel, Kernel, KernelParams};
use crate::error::{Error, Result};
use crate::quad::{integrate, integrate_panels};
use crate::sum::CompensatedComplexSum;

/// Test functions for the convolution identity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum TestFunction {
    /// `e^{-u^2/2}`.
    Gaussian,
    /// The Fejer-type kernel `K` of the given parameters.
    K(KernelParams),
}

impl TestFunction {
    fn at(&self, u: f64) -> f64 {
        match self {
            TestFunction::Gaussian => (-0.5 * u * u).exp(),
            TestFunction::K(p) => kernel(p, u, Kernel::K),
        }
    }

    fn at_complex(&self, z: Complex64) -> Complex64 {
        match self {
            TestFunction::Gaussian => (-z * z * 0.5).exp(),
            TestFunction::K(p) => k_complex(p, z),
        }
    }

    fn hat(&self, xi: f64) -> f64 {
        match self {
            TestFunction::Gaussian => (2.0 * PI).sqrt() * (-0.5 * xi * xi).exp(),
            TestFunction::K(p) => kernel(p, xi, Kernel::KHat),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Lemma53 {
    pub lhs: f64,
    pub rhs_re: f64,
    pub rhs_im: f64,
    pub abs_diff: f64,
    /// Quadrature range `[-U, U]`.
    pub cutoff: f64,
    /// Series truncated at `kl <= terms`.
    pub terms: u64,
}

/// Default `U` for `F = K`; [`K_CUTOFF_FINE`] when `tol < 1e-6`.
pub const K_CUTOFF: f64 = 1000.0;
pub const K_CUTOFF_FINE: f64 = 4000.0;

/// Both sides of
/// `int zeta(s+iu) conj(zeta(s-iu)) F(u) du
///   = sum F^(log kl) k^{-s} l^{-conj s} - 2 pi zeta(1-2it) F(is-i) - 2 pi zeta(1+2it) F(i conj(s) - i)`.
///
/// The integrand at `-u` is the conjugate of the one at `u`, so the left side
/// is twice the real part over `[0, inf)`. For the Gaussian the range is cut
/// where the integrand is below `tol/100`. For `K` the range `[0, U]` is
/// integrated on fixed panels. Beyond `U` the zeta product is replaced by its
/// Dirichlet series `sum_n c_n n^{-iu}`, `c_n = sum_{kl=n} k^{-s} l^{-conj s}`,
/// over `n <= 2 T^{2 eps}`, each term integrated against `K` in closed form.
/// The terms with `log n` near `0` or `2 eps log T` do not oscillate against
/// `K` and carry the `1/U` part of the tail.
pub fn lemma53_check(s: Complex64, f: TestFunction, tol: f64) -> Result<Lemma53> {
    lemma53_check_with(s, f, tol, None)
}

pub fn lemma53_check_with(s: Complex64, f: TestFunction, tol: f64, cutoff: Option<f64>) -> Result<Lemma53> {
    let (sigma, t) = (s.re, s.im);
    if !(sigma > 0.0 && sigma < 1.0) {
        return Err(Error::domain("Re(s) must lie in (0, 1)"));
    }
    if t == 0.0 || !t.is_finite() {
        return Err(Error::domain("Im(s) must be nonzero"));
    }
    if !(tol > 0.0) {
        return Err(Error::domain("tol must be positive"));
    }
    if let TestFunction::K(p) = &f {
        p.validate()?;
    }
    let (lhs, u) = match f {
        TestFunction::Gaussian => {
            // |zeta(sigma + iv)| <= 4 (1 + |v|) for sigma in (0, 1)
            let mut u = 4.0;
            while 16.0 * (1.0 + t.abs() + u).powi(2) * (-0.5 * u * u).exp() > tol / 100.0 {
                u += 0.5;
            }
            let line = ZetaLine::new(sigma, t.abs() + u);
            let g = |x: f64| integrand(&line, t, x, tol * 1e-3) * f.at(x);
            (2.0 * integrate(g, 0.0, u, tol / 10.0, 0.0, 4000)?.value, u)
        }
        TestFunction::K(p) => {
            let u = cutoff.unwrap_or(if tol < 1e-6 { K_CUTOFF_FINE } else { K_CUTOFF });
            let line = ZetaLine::new(sigma, t.abs() + u);
            let g = |x: f64| integrand(&line, t, x, 1e-12) * f.at(x);
            let body = integrate_panels(g, 0.0, u, 0.5).value;
            let n_tail = (2.0 * p.support().exp()).ceil() as u64;
            let c = coefficients(s, n_tail);
            let mut tail = CompensatedComplexSum::new();
            for (n, cn) in c.iter().enumerate().skip(1) {
                let xi = (n as f64).ln();
                tail.add(cn * Complex64::new(k_cos_tail(&p, xi, u), -k_sin_tail(&p, xi, u)));
            }
            (2.0 * (body + tail.value().re), u)
        }
    };
    let (series, terms) = dirichlet_side(s, &f, tol)?;
    let mut rhs = series;
    let zt = 1e-13;
    let z1 = zeta(Complex64::new(1.0, -2.0 * t), zt)?;
    let z2 = zeta(Complex64::new(1.0, 2.0 * t), zt)?;
    let i = Complex64::i();
    rhs -= z1 * f.at_complex(i * s - i) * (2.0 * PI);
    rhs -= z2 * f.at_complex(i * s.conj() - i) * (2.0 * PI);
    Ok(Lemma53 {
        lhs,
        rhs_re: rhs.re,
        rhs_im: rhs.im,
        abs_diff: (rhs - lhs).norm(),
        cutoff: u,
        terms,
    })
}

/// `Re[zeta(s + iu) conj(zeta(s - iu))]`.
fn integrand(line: &ZetaLine, t: f64, u: f64, tol: f64) -> f64 {
    let a = line.eval(t + u, tol).unwrap_or(Complex64::new(f64::NAN, 0.0));
    let b = line.eval(t - u, tol).unwrap_or(Complex64::new(f64::NAN, 0.0));
    (a * b.conj()).re
}

/// `sum_{kl <= X} F^(log kl) k^{-s} l^{-conj s}`, with `X` the support edge
/// of `F^` or the point where the remaining mass is below `tol/100`.
fn dirichlet_side(s: Complex64, f: &TestFunction, tol: f64) -> Result<(Complex64, u64)> {
    let x = match f {
        TestFunction::K(p) => p.support().exp().floor() as u64,
        TestFunction::Gaussian => {
            // tail <= 2 sqrt(2 pi) int_L^inf e^{b v - v^2/2} dv, b = 3/2 - sigma
            let b = 1.5 - s.re;
            let mut l = b + 1.0;
            while 2.0 * (2.0 * PI).sqrt() * (b * l - 0.5 * l * l).exp() / (l - b) > tol / 100.0 {
                l += 0.25;
            }
            l.exp().ceil() as u64
        }
    };
    let x = x.max(1);
    let c = coefficients(s, x);
    let mut acc = CompensatedComplexSum::new();
    for (n, cn) in c.iter().enumerate().skip(1) {
        acc.add(cn * f.hat((n as f64).ln()));
    }
    Ok((acc.value(), x))
}

/// `c_n = sum_{kl = n} k^{-s} l^{-conj s}` for `n <= x`.
fn coefficients(s: Complex64, x: u64) -> Vec<Complex64> {
    let x = x as usize;
    let pows: Vec<(Complex64, Complex64)> = (0..=x)
        .map(|k| {
            let l = (k.max(1) as f64).ln();
            ((-s * l).exp(), (-s.conj() * l).exp())
        })
        .collect();
    let mut c = vec![Complex64::new(0.0, 0.0); x + 1];
    for k in 1..=x {
        for l in 1..=x / k {
            c[k * l] += pows[k].0 * pows[l].1;
        }
    }
    c
}
