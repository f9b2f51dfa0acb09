use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::kernels::KernelParams;
use crate::error::{Error, Result};
use crate::sum::CompensatedComplexSum;

/// `B_2, B_4, ..., B_24`.
const BERNOULLI: [f64; 12] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
];

/// Bernoulli correction terms used by [`zeta`].
pub const DEFAULT_CORRECTIONS: usize = 6;
/// Largest partial-sum length before giving up.
pub const MAX_TERMS: u64 = 1 << 26;

/// One Euler-Maclaurin evaluation with `n` summed terms and `m` Bernoulli
/// corrections. Returns the value and the remainder bound
/// `|s + 2m + 1| / (sigma + 2m + 1)` times the first omitted term.
pub fn zeta_em(s: Complex64, n: u64, m: usize) -> (Complex64, f64) {
    let mut acc = CompensatedComplexSum::new();
    for k in 1..n {
        acc.add((-s * (k as f64).ln()).exp());
    }
    let (tail, bound) = em_tail(s, n, m);
    acc.add(tail);
    (acc.value(), bound)
}

fn zeta_adaptive(s: Complex64, tol: f64, n0: u64, m: usize) -> Result<Complex64> {
    if (s - 1.0).norm() == 0.0 {
        return Err(Error::domain("zeta has a pole at s = 1"));
    }
    if s.re <= -((2 * m + 1) as f64) {
        return Err(Error::domain("Re(s) too small for the Euler-Maclaurin remainder"));
    }
    let mut n = n0;
    loop {
        let (v, b) = zeta_em(s, n, m);
        if b <= tol {
            return Ok(v);
        }
        if n >= MAX_TERMS {
            return Err(Error::Accuracy {
                estimate: v.norm(),
                bound: b,
                tol,
            });
        }
        n *= 2;
    }
}

/// `zeta(s)` by Euler-Maclaurin with `max(50, 2|t|)` terms and six
/// corrections, doubling the term count until the remainder bound is below
/// `tol`.
pub fn zeta(s: Complex64, tol: f64) -> Result<Complex64> {
    let n0 = 50u64.max((2.0 * s.im.abs()).ceil() as u64);
    zeta_adaptive(s, tol, n0, DEFAULT_CORRECTIONS)
}

/// `zeta(1/2 + it)` for `|t| <= 10^6`, `tol >= 1e-10`.
pub fn zeta_critical(t: f64, tol: f64) -> Result<Complex64> {
    if !(t.abs() <= 1e6) {
        return Err(Error::domain("|t| must be at most 1e6"));
    }
    if !(tol >= 1e-10) {
        return Err(Error::domain("tol must be at least 1e-10"));
    }
    zeta(Complex64::new(0.5, t), tol)
}

/// Repeated evaluation on a vertical line `Re s = sigma`, with the logarithms
/// and moduli of the summands cached. Uses eleven corrections and
/// `max(50, |t|/2)` terms to start; the remainder bound is enforced as in
/// [`zeta`].
#[derive(Debug, Clone)]
pub struct ZetaLine {
    sigma: f64,
    logs: Vec<f64>,
    mods: Vec<f64>,
}

const LINE_CORRECTIONS: usize = 11;

impl ZetaLine {
    pub fn new(sigma: f64, max_height: f64) -> Self {
        let n = Self::terms_for(max_height) as usize * 2;
        let logs: Vec<f64> = (0..=n).map(|k| (k.max(1) as f64).ln()).collect();
        let mods = logs.iter().map(|l| (-sigma * l).exp()).collect();
        Self { sigma, logs, mods }
    }

    fn terms_for(t: f64) -> u64 {
        50u64.max((t.abs() / 2.0).ceil() as u64)
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// `zeta(sigma + it)` with remainder bound below `tol`.
    pub fn eval(&self, t: f64, tol: f64) -> Result<Complex64> {
        let s = Complex64::new(self.sigma, t);
        let mut n = Self::terms_for(t);
        loop {
            if n as usize >= self.logs.len() {
                return zeta_adaptive(s, tol, n, LINE_CORRECTIONS);
            }
            let (v, b) = self.eval_em(s, n);
            if b <= tol {
                return Ok(v);
            }
            n *= 2;
        }
    }

    fn eval_em(&self, s: Complex64, n: u64) -> (Complex64, f64) {
        let mut acc = CompensatedComplexSum::new();
        for k in 1..n as usize {
            let (sn, cs) = (s.im * self.logs[k]).sin_cos();
            acc.add(Complex64::new(cs, -sn) * self.mods[k]);
        }
        let (tail, b) = em_tail(s, n, LINE_CORRECTIONS);
        acc.add(tail);
        (acc.value(), b)
    }
}

/// The Euler-Maclaurin terms beyond the partial sum `sum_{k<N} k^{-s}`.
fn em_tail(s: Complex64, n: u64, m: usize) -> (Complex64, f64) {
    assert!((1..BERNOULLI.len()).contains(&m), "corrections out of range");
    let nf = n as f64;
    let n_s = (-s * nf.ln()).exp();
    let mut acc = CompensatedComplexSum::new();
    acc.add(n_s * nf / (s - 1.0));
    acc.add(n_s * 0.5);
    let mut rising = s;
    let mut fact = 2.0;
    let mut pow = n_s / nf;
    let mut next = Complex64::new(0.0, 0.0);
    for k in 1..=m + 1 {
        let term = rising * pow * (BERNOULLI[k - 1] / fact);
        if k <= m {
            acc.add(term);
        } else {
            next = term;
        }
        let j = (2 * k) as f64;
        rising *= (s + (j - 1.0)) * (s + j);
        fact *= (j + 1.0) * (j + 2.0);
        pow /= nf * nf;
    }
    let sig = s.re + (2 * m + 1) as f64;
    (acc.value(), (s + (2 * m + 1) as f64).norm() / sig * next.norm())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZetaPoint {
    pub t: f64,
    pub re: f64,
    pub im: f64,
    pub abs: f64,
}

/// `zeta(1/2 + it)` on `t = lo + k step` for `lo + k step < hi`, plus `hi`.
pub fn zeta_scan(lo: f64, hi: f64, step: f64, tol: f64) -> Result<Vec<ZetaPoint>> {
    if !(step > 0.0) || !(hi >= lo) {
        return Err(Error::domain("need step > 0 and hi >= lo"));
    }
    let ts = grid(lo, hi, step);
    ts.par_iter()
        .map(|&t| {
            let z = zeta_critical(t, tol)?;
            Ok(ZetaPoint {
                t,
                re: z.re,
                im: z.im,
                abs: z.norm(),
            })
        })
        .collect()
}

fn grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let mut ts: Vec<f64> = (0..).map(|k| lo + k as f64 * step).take_while(|&t| t < hi).collect();
    ts.push(hi);
    ts
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZBetaMax {
    pub value: f64,
    pub argmax: f64,
    pub grid_value: f64,
    pub grid_argmax: f64,
    pub points: usize,
}

/// `max |zeta(1/2 + i tau)|` over `T^beta <= tau <= T`: the grid
/// `T^beta + k step` with `T` appended, then a three-point parabolic
/// refinement at every discrete local maximum.
///
/// Halving the step keeps every old grid point, so `grid_value` never
/// decreases under refinement of the grid.
pub fn z_beta_max(params: &KernelParams, grid_step: f64) -> Result<ZBetaMax> {
    params.validate()?;
    if !(grid_step > 0.0 && grid_step <= 0.05) {
        return Err(Error::domain("grid_step must be in (0, 0.05]"));
    }
    let lo = params.t.powf(params.beta);
    let hi = params.t;
    if !(lo < hi) {
        return Err(Error::domain("need T^beta < T"));
    }
    let tol = 1e-10;
    let pts = zeta_scan(lo, hi, grid_step, tol)?;
    let (gi, gbest) = pts.iter().enumerate().fold(
        (0, f64::NEG_INFINITY),
        |acc, (i, p)| if p.abs > acc.1 { (i, p.abs) } else { acc },
    );
    let peaks: Vec<usize> = (1..pts.len().saturating_sub(1))
        .filter(|&i| pts[i].abs >= pts[i - 1].abs && pts[i].abs >= pts[i + 1].abs)
        .collect();
    let refined: Vec<(f64, f64)> = peaks
        .par_iter()
        .map(|&i| {
            let (a, b, c) = (&pts[i - 1], &pts[i], &pts[i + 1]);
            let (h1, h2) = (b.t - a.t, c.t - b.t);
            // vertex of the parabola through the three points
            let num = h1 * h1 * (b.abs - c.abs) + h2 * h2 * (b.abs - a.abs);
            let den = h1 * (b.abs - c.abs) + h2 * (b.abs - a.abs);
            let shift = if den != 0.0 { 0.5 * num / den } else { 0.0 };
            let shift = if shift.is_finite() { shift.clamp(-h1, h2) } else { 0.0 };
            let t = (b.t + shift).clamp(lo, hi);
            Ok((t, zeta_critical(t, tol)?.norm()))
        })
        .collect::<Result<_>>()?;
    let (mut argmax, mut value) = (pts[gi].t, gbest);
    for (t, v) in refined {
        if v > value {
            value = v;
            argmax = t;
        }
    }
    Ok(ZBetaMax {
        value,
        argmax,
        grid_value: gbest,
        grid_argmax: pts[gi].t,
        points: pts.len(),
    })
}
