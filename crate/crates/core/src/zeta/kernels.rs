use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::{integrate, integrate_panels};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelParams {
    /// `T > 1`.
    pub t: f64,
    /// `eps` in `(0, 1)`.
    pub eps: f64,
    /// `beta` in `[0, 1)`.
    pub beta: f64,
}

impl KernelParams {
    pub fn new(t: f64, eps: f64, beta: f64) -> Self {
        Self { t, eps, beta }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t > 1.0 && self.t.is_finite()) {
            return Err(Error::domain("T > 1"));
        }
        if !(self.eps > 0.0 && self.eps < 1.0) {
            return Err(Error::domain("eps in (0, 1)"));
        }
        if !(self.beta >= 0.0 && self.beta < 1.0) {
            return Err(Error::domain("beta in [0, 1)"));
        }
        Ok(())
    }

    /// `eps log T`.
    pub fn width(&self) -> f64 {
        self.eps * self.t.ln()
    }

    /// `K^` vanishes for `|xi| >= 2 eps log T`.
    pub fn support(&self) -> f64 {
        2.0 * self.width()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kernel {
    Phi,
    PhiHat,
    K,
    KHat,
}

impl std::str::FromStr for Kernel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "phi" => Ok(Kernel::Phi),
            "phi_hat" | "phi-hat" | "phihat" => Ok(Kernel::PhiHat),
            "k" => Ok(Kernel::K),
            "k_hat" | "k-hat" | "khat" => Ok(Kernel::KHat),
            _ => Err(Error::validation(format!("unknown kernel '{s}'"))),
        }
    }
}

/// `Phi(x) = e^{-x^2/2}`, `Phi^ = sqrt(2 pi) Phi`,
/// `K(u) = sin^2(a u)/(pi a u^2)` and `K^(xi) = (1 - |xi|/(2a))^+` with
/// `a = eps log T`.
pub fn kernel(params: &KernelParams, x: f64, which: Kernel) -> f64 {
    let a = params.width();
    match which {
        Kernel::Phi => (-0.5 * x * x).exp(),
        Kernel::PhiHat => (2.0 * PI).sqrt() * (-0.5 * x * x).exp(),
        Kernel::K => {
            if x == 0.0 {
                a / PI
            } else {
                let s = (a * x).sin();
                s * s / (PI * x * x * a)
            }
        }
        Kernel::KHat => (1.0 - x.abs() / (2.0 * a)).max(0.0),
    }
}

/// `K` continued to complex arguments.
pub fn k_complex(params: &KernelParams, z: Complex64) -> Complex64 {
    let a = params.width();
    if z.norm() < 1e-8 {
        // sin(az)^2/(az)^2 = 1 - (az)^2/3 + ...
        let w = z * a;
        return (Complex64::new(1.0, 0.0) - w * w / 3.0) * (a / PI);
    }
    let s = (z * a).sin();
    s * s / (z * z * (PI * a))
}

/// `int_0^x sin(v)/v dv`.
pub fn sine_integral(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    if x < 0.0 {
        return -sine_integral(-x);
    }
    if x >= 40.0 {
        let (f, g) = aux_fg(x);
        return PI / 2.0 - f * x.cos() - g * x.sin();
    }
    let sinc = |v: f64| if v == 0.0 { 1.0 } else { v.sin() / v };
    integrate(sinc, 0.0, x, 1e-16, 1e-13, 200)
        .map(|q| q.value)
        .expect("sinc integral converges")
}

/// Asymptotic auxiliary functions with `pi/2 - Si(x) = f cos x + g sin x`,
/// summed to the smallest term. Accurate to about `e^{-x}` for `x >= 40`.
fn aux_fg(x: f64) -> (f64, f64) {
    let inv = 1.0 / x;
    let (mut f, mut g) = (0.0, 0.0);
    let mut tf = inv;
    let mut tg = inv * inv;
    for k in 0..60 {
        if tf.abs() < 1e-18 && tg.abs() < 1e-18 {
            break;
        }
        f += tf;
        g += tg;
        let j = (2 * k + 1) as f64;
        let next_f = -tf * j * (j + 1.0) * inv * inv;
        let next_g = -tg * (j + 1.0) * (j + 2.0) * inv * inv;
        if next_f.abs() > tf.abs() {
            break;
        }
        tf = next_f;
        tg = next_g;
    }
    (f, g)
}

/// `gamma + log x + int_0^x (cos v - 1)/v dv` for `x > 0`.
pub fn cosine_integral(x: f64) -> f64 {
    assert!(x > 0.0, "Ci needs x > 0");
    if x >= 40.0 {
        let (f, g) = aux_fg(x);
        return f * x.sin() - g * x.cos();
    }
    let h = |v: f64| if v == 0.0 { 0.0 } else { (v.cos() - 1.0) / v };
    let q = integrate(h, 0.0, x, 1e-16, 1e-13, 200).expect("cosine integral converges");
    EULER_GAMMA + x.ln() + q.value
}

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `int_U^inf sin(c u)/u^2 du` for `U > 0`.
pub fn sin_over_sq_tail(c: f64, u: f64) -> f64 {
    if c == 0.0 {
        return 0.0;
    }
    let x = c.abs() * u;
    // int_x^inf sin v / v^2 dv = sin x / x - Ci x
    (c.abs() * (x.sin() / x - cosine_integral(x))).copysign(c)
}

/// `int_U^inf cos(c u)/u^2 du` for `U > 0`.
pub fn cos_over_sq_tail(c: f64, u: f64) -> f64 {
    let c = c.abs();
    if c == 0.0 {
        return 1.0 / u;
    }
    let x = c * u;
    // int_x^inf cos v / v^2 dv = cos x / x - (pi/2 - Si x)
    c * (x.cos() / x - (PI / 2.0 - sine_integral(x)))
}

/// `int_U^inf K(u) cos(xi u) du`, exactly.
pub fn k_cos_tail(params: &KernelParams, xi: f64, u: f64) -> f64 {
    let a = params.width();
    (0.5 * cos_over_sq_tail(xi, u)
        - 0.25 * cos_over_sq_tail(2.0 * a + xi, u)
        - 0.25 * cos_over_sq_tail(2.0 * a - xi, u))
        / (PI * a)
}

/// `int_U^inf K(u) sin(xi u) du`, exactly.
pub fn k_sin_tail(params: &KernelParams, xi: f64, u: f64) -> f64 {
    let a = params.width();
    (0.5 * sin_over_sq_tail(xi, u)
        - 0.25 * sin_over_sq_tail(xi + 2.0 * a, u)
        - 0.25 * sin_over_sq_tail(xi - 2.0 * a, u))
        / (PI * a)
}

/// Numeric `int F(u) e^{-i u xi} du` for `F` in `{Phi, K}`. For `K` the range
/// `[0, U]` is integrated on fixed panels and the rest in closed form.
pub fn fourier_numeric(params: &KernelParams, which: Kernel, xi: f64) -> Result<f64> {
    params.validate()?;
    match which {
        Kernel::Phi => {
            let q = integrate(
                |u: f64| (-0.5 * u * u).exp() * (u * xi).cos(),
                0.0,
                40.0,
                1e-14,
                1e-13,
                2000,
            )?;
            Ok(2.0 * q.value)
        }
        Kernel::K => {
            let u = 200.0;
            let q = integrate_panels(|x: f64| kernel(params, x, Kernel::K) * (x * xi).cos(), 0.0, u, 0.25);
            Ok(2.0 * (q.value + k_cos_tail(params, xi, u)))
        }
        _ => Err(Error::domain("numeric transform is defined for Phi and K")),
    }
}
