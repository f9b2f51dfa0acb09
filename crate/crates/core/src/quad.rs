//! Numerical integration: adaptive Gauss-Kronrod and trapezoid rules.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::sum::{CompensatedComplexSum, CompensatedSum};

/// Values that can be integrated: reals and complex numbers.
pub trait QuadValue: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn magnitude(self) -> f64;
    fn total<I: IntoIterator<Item = Self>>(items: I) -> Self;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
    fn total<I: IntoIterator<Item = Self>>(items: I) -> Self {
        let mut s = CompensatedSum::new();
        s.extend(items);
        s.value()
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
    fn total<I: IntoIterator<Item = Self>>(items: I) -> Self {
        let mut s = CompensatedComplexSum::new();
        for z in items {
            s.add(z);
        }
        s.value()
    }
}

/// An integral value with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quad<V> {
    pub value: V,
    pub error: f64,
    pub evaluations: usize,
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// One 15-point Kronrod panel with the QUADPACK error heuristic.
fn gk15<V: QuadValue, F: Fn(f64) -> V>(f: &F, a: f64, b: f64) -> (V, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut vals = [(V::zero(), V::zero()); 7];
    for (j, v) in vals.iter_mut().enumerate() {
        let dx = h * XGK[j];
        let (f1, f2) = (f(c - dx), f(c + dx));
        *v = (f1, f2);
        kron = kron + (f1 + f2) * WGK[j];
        if j % 2 == 1 {
            gauss = gauss + (f1 + f2) * WG[j / 2];
        }
    }
    let mean = kron * 0.5;
    let mut asc = (fc - mean).magnitude() * WGK[7];
    for (j, &(f1, f2)) in vals.iter().enumerate() {
        asc += WGK[j] * ((f1 - mean).magnitude() + (f2 - mean).magnitude());
    }
    let asc = asc * h.abs();
    let mut err = ((kron - gauss) * h).magnitude();
    if asc != 0.0 && err != 0.0 {
        err = asc * (200.0 * err / asc).powf(1.5).min(1.0);
    }
    (kron * h, err.max(50.0 * f64::EPSILON * (kron * h).magnitude()))
}

/// Adaptive Gauss-Kronrod on `[a, b]`, splitting the worst panel until the
/// summed error estimate is below `max(abs_tol, rel_tol |I|)`.
pub fn integrate<V: QuadValue, F: Fn(f64) -> V>(
    f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_panels: usize,
) -> Result<Quad<V>> {
    let (v, e) = gk15(&f, a, b);
    let mut panels = vec![(a, b, v, e)];
    loop {
        let value = V::total(panels.iter().map(|p| p.2));
        let error: f64 = panels.iter().map(|p| p.3).sum();
        let target = abs_tol.max(rel_tol * value.magnitude());
        if error <= target || panels.len() >= max_panels {
            panels.sort_by(|x, y| x.0.total_cmp(&y.0));
            let value = V::total(panels.iter().map(|p| p.2));
            let evaluations = 15 * (2 * panels.len() - 1);
            if error > target {
                return Err(Error::Accuracy {
                    estimate: value.magnitude(),
                    bound: error,
                    tol: target,
                });
            }
            return Ok(Quad {
                value,
                error,
                evaluations,
            });
        }
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .map(|(i, _)| i)
            .expect("nonempty");
        let (lo, hi, _, _) = panels.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        if !(mid > lo && mid < hi) {
            // Panel cannot be split further in floating point.
            let (v, _) = gk15(&f, lo, hi);
            panels.push((lo, hi, v, 0.0));
            continue;
        }
        let (v1, e1) = gk15(&f, lo, mid);
        let (v2, e2) = gk15(&f, mid, hi);
        panels.push((lo, mid, v1, e1));
        panels.push((mid, hi, v2, e2));
    }
}

/// Fixed Gauss-Kronrod panels of width at most `width`, summed in order.
/// Suited to long oscillatory ranges where adaptivity buys little.
pub fn integrate_panels<V: QuadValue + Send, F: Fn(f64) -> V + Sync>(f: F, a: f64, b: f64, width: f64) -> Quad<V> {
    use rayon::prelude::*;
    let n = ((b - a) / width).ceil().max(1.0) as usize;
    let h = (b - a) / n as f64;
    let parts: Vec<(V, f64)> = (0..n)
        .into_par_iter()
        .map(|i| {
            let lo = a + h * i as f64;
            let hi = if i + 1 == n { b } else { lo + h };
            gk15(&f, lo, hi)
        })
        .collect();
    Quad {
        value: V::total(parts.iter().map(|p| p.0)),
        error: parts.iter().map(|p| p.1).sum(),
        evaluations: 15 * n,
    }
}

/// Trapezoid rule on `[lo, hi]` with step halving until two successive
/// levels agree within `max(abs_tol, rel_tol |I|)`. Exponentially accurate
/// for integrands that are analytic in a strip and negligible at both ends.
pub fn trapezoid<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    h0: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_levels: u32,
) -> Result<Quad<f64>> {
    let mut n = ((hi - lo) / h0).ceil().max(2.0) as usize;
    let mut h = (hi - lo) / n as f64;
    let mut acc = CompensatedSum::new();
    acc.add(0.5 * (f(lo) + f(hi)));
    for i in 1..n {
        acc.add(f(lo + h * i as f64));
    }
    let mut evaluations = n + 1;
    let mut prev = acc.value() * h;
    for _ in 0..max_levels {
        for i in 0..n {
            acc.add(f(lo + h * (i as f64 + 0.5)));
        }
        evaluations += n;
        n *= 2;
        h *= 0.5;
        let cur = acc.value() * h;
        let diff = (cur - prev).abs();
        if diff <= abs_tol.max(rel_tol * cur.abs()) {
            return Ok(Quad {
                value: cur,
                error: diff,
                evaluations,
            });
        }
        prev = cur;
    }
    Err(Error::Accuracy {
        estimate: prev,
        bound: f64::INFINITY,
        tol: abs_tol.max(rel_tol * prev.abs()),
    })
}
