//! Bounds on the p-part of the Gál sum when valuations at one prime vary.

use crate::error::{Error, Result};
use crate::nt::is_prime_u64;
use crate::sum;

fn check_prime(p: u64) -> Result<()> {
    if is_prime_u64(p) {
        Ok(())
    } else {
        Err(Error::domain(format!("{p} is not prime")))
    }
}

fn check_valuations(nu: &[u32]) -> Result<()> {
    if nu.is_empty() {
        return Err(Error::domain("valuation sequence must be nonempty"));
    }
    if nu.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::domain("valuation sequence must be strictly increasing"));
    }
    Ok(())
}

/// `sum_{a,b} p^{-|nu_m[a] - nu_n[b]|/2}`.
pub fn sigma_p(nu_m: &[u32], nu_n: &[u32], p: u64) -> Result<f64> {
    check_prime(p)?;
    check_valuations(nu_m)?;
    check_valuations(nu_n)?;
    let pf = p as f64;
    Ok(sum::sum(nu_m.iter().flat_map(|&a| {
        nu_n.iter().map(move |&b| pf.powf(-(a.abs_diff(b) as f64) / 2.0))
    })))
}

/// Closed-form majorant of `sigma_p` over sequences of lengths `r+1`, `s+1`.
pub fn sigma_p_star(r: u32, s: u32, p: u64) -> Result<f64> {
    check_prime(p)?;
    let (r, s) = (r.min(s), r.max(s));
    let d = (p as f64).sqrt() - 1.0;
    let off = if s == r {
        2 * r
    } else if s == r + 1 {
        2 * r + 1
    } else {
        2 * r + 2
    };
    Ok((r + 1) as f64 + off as f64 / d)
}

/// Value of the two-variable weight `h(p^a, p^b)`.
pub fn h_weight(a: u32, b: u32, p: u64) -> f64 {
    let g1 = 1.0 / ((p as f64).sqrt() - 1.0);
    match a.abs_diff(b) {
        0 => 1.0,
        1 => g1,
        2 if a.min(b) == 0 => g1,
        _ => 0.0,
    }
}

/// `sum_{0<=a<=r, 0<=b<=s} h(p^a, p^b)`.
pub fn sigma_p_plus(r: u32, s: u32, p: u64) -> Result<f64> {
    check_prime(p)?;
    Ok(sum::sum((0..=r).flat_map(|a| (0..=s).map(move |b| h_weight(a, b, p)))))
}
