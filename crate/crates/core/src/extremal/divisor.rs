use serde::{Deserialize, Serialize};

use crate::gal::GalExponent;
use crate::nt::FactoredInt;
use crate::sum;

/// Closed-form Gál sum of the full divisor set of `D`, with its bounds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DivisorSetSum {
    pub value: f64,
    pub tau: f64,
    /// `tau(D) exp(sum 2 mu_p / ((1 + mu_p)(sqrt p - 1)))`, valid for alpha = 1/2.
    pub upper_bound: Option<f64>,
    /// Two-sided bound on `S/tau` for squarefree `D` at alpha = 1/2.
    pub squarefree_bounds: Option<(f64, f64)>,
}

impl DivisorSetSum {
    pub fn bounds_hold(&self) -> bool {
        let upper_ok = self.upper_bound.map_or(true, |u| self.value <= u * (1.0 + 1e-12));
        let sf_ok = self.squarefree_bounds.map_or(true, |(lo, hi)| {
            let r = self.value / self.tau;
            lo <= r * (1.0 + 1e-12) && r <= hi * (1.0 + 1e-12)
        });
        upper_ok && sf_ok
    }
}

/// Local factor of the product formula at `p^mu`.
fn local_factor(p: u64, mu: u32, alpha: f64) -> f64 {
    let pa = (p as f64).powf(-alpha);
    let m = mu as f64;
    let inner = sum::sum((0..mu).map(|k| (1.0 - k as f64 / m) * pa.powi(k as i32)));
    1.0 + 2.0 * m / (1.0 + m) * pa * inner
}

/// `S_alpha(T_D)` by the product formula over `p^mu || D`.
pub fn divisor_set_sum(d: &FactoredInt, alpha: GalExponent) -> DivisorSetSum {
    let a = alpha.as_f64();
    let tau = d.tau_f64();
    let value = tau
        * d.factors()
            .iter()
            .map(|&(p, mu)| local_factor(p, mu, a))
            .product::<f64>();
    let half = alpha == GalExponent::HALF;
    let upper_bound = half.then(|| {
        tau * sum::sum(d.factors().iter().map(|&(p, mu)| {
            let m = mu as f64;
            2.0 * m / ((1.0 + m) * ((p as f64).sqrt() - 1.0))
        }))
        .exp()
    });
    let squarefree_bounds = (half && d.is_squarefree()).then(|| {
        let e = sum::sum(d.factors().iter().map(|&(p, _)| 1.0 / (p as f64).sqrt())).exp();
        let damp: f64 = d.factors().iter().map(|&(p, _)| 1.0 + 0.5 / p as f64).product();
        (e / damp, e)
    });
    DivisorSetSum {
        value,
        tau,
        upper_bound,
        squarefree_bounds,
    }
}

/// Product of the first `k` primes.
pub fn primorial(k: usize) -> FactoredInt {
    FactoredInt::squarefree_from_primes(&crate::nt::first_primes(k))
}

/// One row of the squarefree divisor-set trend: the primorial with the most
/// prime factors subject to `tau(D) <= N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrimorialRow {
    pub n: u64,
    pub omega: usize,
    pub log_ratio: f64,
    pub normalized: f64,
    pub bounds_hold: bool,
}

pub fn primorial_row(n: u64) -> PrimorialRow {
    let omega = (63 - n.leading_zeros()) as usize;
    let d = primorial(omega);
    let s = divisor_set_sum(&d, GalExponent::HALF);
    let ln_n = (n as f64).ln();
    let log_ratio = (s.value / s.tau).ln();
    PrimorialRow {
        n,
        omega,
        log_ratio,
        normalized: log_ratio / (ln_n / ln_n.ln()).sqrt(),
        bounds_hold: s.bounds_hold(),
    }
}
