use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::kernels::{kernel, Kernel, KernelParams};
use crate::error::{Error, Result};
use crate::nt::{FactoredInt, IntegerSet};
use crate::quad::integrate_panels;
use crate::sum::{CompensatedComplexSum, CompensatedSum};

/// Largest set accepted by [`resonance_moment`].
pub const MOMENT_SET_LIMIT: usize = 2000;

/// `M_j = M cap ](1+1/T)^j, (1+1/T)^{j+1}]` with representative `h_j = min M_j`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResonatorBlock {
    /// `-1` holds `m = 1`.
    pub j: i64,
    pub h: FactoredInt,
    pub ln_h: f64,
    /// `r(h_j)^2 = |M_j|`.
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealResonator {
    pub t: f64,
    pub set_size: u64,
    pub blocks: Vec<ResonatorBlock>,
}

impl RealResonator {
    /// `R(t) = sum_h r(h) h^{-it}`.
    pub fn value(&self, t: f64) -> Complex64 {
        let mut acc = CompensatedComplexSum::new();
        for b in &self.blocks {
            let (s, c) = (t * b.ln_h).sin_cos();
            acc.add(Complex64::new(c, -s) * (b.count as f64).sqrt());
        }
        acc.value()
    }

    /// `sum r(h)`.
    pub fn r_sum(&self) -> f64 {
        crate::sum::sum(self.blocks.iter().map(|b| (b.count as f64).sqrt()))
    }

    /// Blocks partition `M`, `R(0)` matches `sum r(h)`, and
    /// `R(0)^2 <= N |M| <= N^2` with `N = |M|`.
    pub fn verify(&self) -> bool {
        let n = self.set_size as f64;
        let r0 = self.value(0.0).re;
        self.blocks.iter().map(|b| b.count).sum::<u64>() == self.set_size
            && (r0 - self.r_sum()).abs() <= 1e-12 * r0.max(1.0)
            && r0 * r0 <= n * n * (1.0 + 1e-12)
    }

    fn ln_spread(&self) -> f64 {
        match (self.blocks.first(), self.blocks.last()) {
            (Some(a), Some(b)) => b.ln_h - a.ln_h,
            _ => 0.0,
        }
    }
}

/// Index `j` with `(1+1/T)^j < m <= (1+1/T)^{j+1}`.
pub fn block_index(ln_m: f64, t: f64) -> i64 {
    (ln_m / (1.0 / t).ln_1p()).ceil() as i64 - 1
}

pub fn build_real_resonator(set: &IntegerSet, t: f64) -> Result<RealResonator> {
    set.ensure_nonempty()?;
    if !(t > 1.0 && t.is_finite()) {
        return Err(Error::domain("T > 1"));
    }
    let mut blocks: BTreeMap<i64, ResonatorBlock> = BTreeMap::new();
    // elements are sorted, so the first one seen in each block is its minimum
    for m in set.iter() {
        let ln_m = m.ln();
        let j = block_index(ln_m, t);
        blocks
            .entry(j)
            .or_insert_with(|| ResonatorBlock {
                j,
                h: m.clone(),
                ln_h: ln_m,
                count: 0,
            })
            .count += 1;
    }
    Ok(RealResonator {
        t,
        set_size: set.len() as u64,
        blocks: blocks.into_values().collect(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResonanceMoment {
    /// `int |R(t)|^2 Phi(t log T / T) dt` by quadrature.
    pub m1: f64,
    /// The same integral from `sqrt(2 pi) (T/log T) sum r r Phi((T/log T) log(g/h))`.
    pub m1_closed_form: f64,
    /// `c T |M| / log T` with `c = sqrt(2 pi) (3 + sqrt(2 pi)/kappa)`,
    /// `kappa = T log(1 + 1/T) / log T`.
    pub m1_bound: f64,
    pub m1_bound_holds: bool,
    /// `int G(t) |R(t)|^2 Phi(t log T / T) dt` by quadrature.
    pub i1_estimate: f64,
    /// `(T/log T) sum_{[m,n]/(m,n) <= T^eps} sqrt((m,n)/[m,n])`.
    pub gal_direct: f64,
    pub set_size: u64,
    pub blocks: usize,
}

/// `G(t) = sum_{kl <= T^{2 eps}} K^(log kl) / sqrt(kl) cos(t log(k/l))`.
fn g_terms(params: &KernelParams) -> Vec<(f64, f64)> {
    let x = params.support().exp().floor() as u64;
    let mut out = Vec::new();
    for k in 1..=x {
        for l in 1..=x / k {
            let kl = (k * l) as f64;
            let w = kernel(params, kl.ln(), Kernel::KHat);
            if w > 0.0 {
                out.push((w / kl.sqrt(), (k as f64 / l as f64).ln()));
            }
        }
    }
    out
}

/// Moments of the real-line resonator over `|t| <= 10 T / log T`.
pub fn resonance_moment(set: &IntegerSet, params: &KernelParams) -> Result<ResonanceMoment> {
    params.validate()?;
    if set.len() > MOMENT_SET_LIMIT {
        return Err(Error::capacity(format!(
            "set has {} elements, limit {MOMENT_SET_LIMIT}",
            set.len()
        )));
    }
    let res = build_real_resonator(set, params.t)?;
    let t = params.t;
    let lt = t.ln();
    let scale = t / lt;
    let range = 10.0 * scale;
    let g = g_terms(params);
    let g_spread = g.iter().map(|x| x.1.abs()).fold(0.0, f64::max);
    // two Kronrod panels per shortest oscillation
    let width = (PI / (res.ln_spread() + g_spread + 1.0)).min(1.0);
    let phi = |x: f64| (-0.5 * (x / scale).powi(2)).exp();
    let m1 = 2.0 * integrate_panels(|x: f64| res.value(x).norm_sqr() * phi(x), 0.0, range, width).value;
    let gval = |x: f64| crate::sum::sum(g.iter().map(|&(w, l)| w * (x * l).cos()));
    let i1 = 2.0 * integrate_panels(|x: f64| gval(x) * res.value(x).norm_sqr() * phi(x), 0.0, range, width).value;

    let mut closed = CompensatedSum::new();
    for a in &res.blocks {
        for b in &res.blocks {
            let d = scale * (a.ln_h - b.ln_h);
            closed.add(((a.count * b.count) as f64).sqrt() * (-0.5 * d * d).exp());
        }
    }
    let m1_closed = (2.0 * PI).sqrt() * scale * closed.value();
    let kappa = t * (1.0 / t).ln_1p() / lt;
    let c = (2.0 * PI).sqrt() * (3.0 + (2.0 * PI).sqrt() / kappa);
    let n = set.len() as f64;
    let bound = c * scale * n;

    let cut = -params.eps * lt;
    let elems = set.elements();
    let mut gal = CompensatedSum::new();
    for m in elems {
        for k in elems {
            let l = m.ln_gcd_over_lcm(k);
            if l >= cut - 1e-12 {
                gal.add((0.5 * l).exp());
            }
        }
    }
    Ok(ResonanceMoment {
        m1,
        m1_closed_form: m1_closed,
        m1_bound: bound,
        m1_bound_holds: m1 <= bound,
        i1_estimate: i1,
        gal_direct: scale * gal.value(),
        set_size: set.len() as u64,
        blocks: res.blocks.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn documented_resonators() {
        let r = build_real_resonator(&IntegerSet::from_u64s(&[1, 2]).unwrap(), 10.0).unwrap();
        assert_eq!(r.blocks.len(), 2);
        assert!((r.value(0.0).re - 2.0).abs() < 1e-15);
        assert!(r.verify());
        let r = build_real_resonator(&IntegerSet::from_u64s(&[1000, 1001, 1002]).unwrap(), 10.0).unwrap();
        assert_eq!(r.blocks.len(), 1);
        assert!((r.value(0.0).re - 3f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn single_element_moment() {
        let p = KernelParams::new(200.0, 0.5, 0.0);
        let m = resonance_moment(&IntegerSet::from_u64s(&[1]).unwrap(), &p).unwrap();
        let want = (2.0 * PI).sqrt() * 200.0 / 200f64.ln();
        assert!((m.m1 - want).abs() < 1e-9 * want);
        assert!((m.m1_closed_form - want).abs() < 1e-12 * want);
        assert!(m.m1_bound_holds && m.i1_estimate >= 0.0);
    }
}
