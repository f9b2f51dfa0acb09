use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nt::{primes_up_to, FactoredInt};
use crate::sum::{self, CompensatedSum};

/// `4 sqrt(sum_{k<=terms} 1/(k^2 (1+k)^2 log(1+1/k)))` with an enclosure of the full series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConstantB {
    pub terms: u64,
    /// From the partial sum.
    pub value: f64,
    /// Enclosure of the full series.
    pub lower: f64,
    pub upper: f64,
}

fn b_term(k: f64) -> f64 {
    1.0 / (k * k * (1.0 + k) * (1.0 + k) * (1.0 / k).ln_1p())
}

/// Partial sums of the series defining B.
///
/// The tail beyond `n` lies in `[1/(2(n+2)^2), 1/n^2]`: each term is at least
/// `1/(k+1)^3` and at most `2/k^3`.
pub fn constant_b(terms: u64) -> Result<ConstantB> {
    if terms < 1 {
        return Err(Error::domain("terms must be at least 1"));
    }
    let mut acc = CompensatedSum::new();
    // Smallest terms first.
    for k in (1..=terms).rev() {
        acc.add(b_term(k as f64));
    }
    let s = acc.value();
    let n = terms as f64;
    Ok(ConstantB {
        terms,
        value: 4.0 * s.sqrt(),
        lower: 4.0 * (s + 0.5 / ((n + 2.0) * (n + 2.0))).sqrt(),
        upper: 4.0 * (s + 1.0 / (n * n)).sqrt(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SqrtPrimeSum {
    pub y: f64,
    pub value: f64,
    /// `value / (2 sqrt(y) / log y)`.
    pub ratio: f64,
}

pub fn sqrt_prime_sum(y: f64) -> Result<SqrtPrimeSum> {
    if !(y >= 2.0) || !y.is_finite() {
        return Err(Error::domain("y must be at least 2"));
    }
    let primes = primes_up_to(y.floor() as u64);
    let value = sum::sum(primes.iter().rev().map(|&p| 1.0 / (p as f64).sqrt()));
    Ok(SqrtPrimeSum {
        y,
        value,
        ratio: value / (2.0 * y.sqrt() / y.ln()),
    })
}

/// Exponent profile of a divisor set `T_D` with `tau(D) <= N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExponentProfile {
    pub n: u64,
    pub y: f64,
    /// `y` from the fixed point before the `tau(D) <= N` adjustment.
    pub y_fixed_point: f64,
    pub lambda: f64,
    /// `r_1, r_2, ...` up to the first index exceeding `y`.
    pub r_sequence: Vec<f64>,
    #[serde(rename = "K")]
    pub k_trunc: usize,
    pub mu_map: BTreeMap<u64, u32>,
    pub c1: f64,
    pub c2: f64,
    /// `4 C1 / sqrt(C2)`.
    pub b_from_series: f64,
    pub log_tau: f64,
    /// `(4 C1/sqrt C2) sqrt(log N / log log N)`.
    pub predicted_log_gamma: f64,
    /// `log(S(T_D)/tau(D))` for the emitted `D`.
    pub achieved_log_ratio: f64,
}

impl ExponentProfile {
    pub fn divisor(&self) -> FactoredInt {
        let f: Vec<(u64, u32)> = self.mu_map.iter().map(|(&p, &m)| (p, m)).collect();
        FactoredInt::from_factors_unchecked(f)
    }
}

pub const LAMBDA: f64 = 0.25 / std::f64::consts::LN_2;
const SERIES_TERMS: u64 = 1_000_000;

pub fn r_k(k: u64) -> f64 {
    // 2 lambda = 1/(2 log 2), written so that r_1 is exactly 1.
    let k = k as f64;
    let v = k * (k + 1.0) * (1.0 / k).ln_1p() / (2.0 * std::f64::consts::LN_2);
    v * v
}

/// `C1` and `C2` summed to `SERIES_TERMS`; both tails are `O(1/terms^2)`.
fn series_constants() -> (f64, f64) {
    let mut c1 = CompensatedSum::new();
    let mut c2 = CompensatedSum::new();
    for k in (1..=SERIES_TERMS).rev() {
        let r = r_k(k);
        let kf = k as f64;
        c1.add(1.0 / (kf * (1.0 + kf) * r.sqrt()));
        c2.add((1.0 / kf).ln_1p() / r);
    }
    (c1.value(), c2.value())
}

/// `mu = k` on `]y/r_{k+1}, y/r_k]`.
fn mu_assignment(y: f64) -> Result<BTreeMap<u64, u32>> {
    let mut out = BTreeMap::new();
    if y < 2.0 {
        return Ok(out);
    }
    for p in primes_up_to(y.floor() as u64) {
        let ratio = y / p as f64;
        let mut k = 1u64;
        while r_k(k + 1) <= ratio {
            k += 1;
        }
        out.insert(p, k as u32);
    }
    Ok(out)
}

fn log_tau(mu: &BTreeMap<u64, u32>) -> f64 {
    sum::sum(mu.values().map(|&m| (m as f64 + 1.0).ln()))
}

pub fn optimal_profile(n: u64) -> Result<ExponentProfile> {
    if n < 16 {
        return Err(Error::domain("N must be at least 16"));
    }
    let ln_n = (n as f64).ln();
    let lln = ln_n.ln();
    let (c1, c2) = series_constants();

    // Fixed point y = log N log y / C2.
    let mut y = ln_n * lln / c2;
    for _ in 0..64 {
        let next = ln_n * y.ln() / c2;
        let done = ((next - y) / y).abs() < 1e-12;
        y = next;
        if done {
            break;
        }
    }
    let y_fixed_point = y;

    // tau(D(y)) is nondecreasing in y; shrink to the largest admissible y.
    let limit = ln_n + 1e-12;
    if log_tau(&mu_assignment(y)?) > limit {
        let (mut lo, mut hi) = (2.0_f64, y);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if log_tau(&mu_assignment(mid)?) <= limit {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo < 1e-9 * hi {
                break;
            }
        }
        y = lo;
    }
    let mu_map = mu_assignment(y)?;
    let k_trunc = {
        let target = y.ln().powi(2);
        let mut k = 1u64;
        while r_k(k) <= target {
            k += 1;
        }
        k as usize
    };
    let mut r_sequence = Vec::new();
    let mut k = 1u64;
    loop {
        let r = r_k(k);
        r_sequence.push(r);
        if r > y {
            break;
        }
        k += 1;
    }
    let b = 4.0 * c1 / c2.sqrt();
    let profile = ExponentProfile {
        n,
        y,
        y_fixed_point,
        lambda: LAMBDA,
        r_sequence,
        k_trunc,
        log_tau: log_tau(&mu_map),
        c1,
        c2,
        b_from_series: b,
        predicted_log_gamma: b * (ln_n / lln).sqrt(),
        achieved_log_ratio: 0.0,
        mu_map,
    };
    let s = super::divisor_set_sum(&profile.divisor(), crate::gal::GalExponent::HALF);
    Ok(ExponentProfile {
        achieved_log_ratio: (s.value / s.tau).ln(),
        ..profile
    })
}
