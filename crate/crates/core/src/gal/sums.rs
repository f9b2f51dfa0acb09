use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gal::exponent::GalExponent;
use crate::gal::weight::WeightDescriptor;
use crate::nt::factored::for_each_exponent_pair;
use crate::nt::{FactoredInt, IntegerSet};
use crate::sum::{self, CompensatedSum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GalAlgorithm {
    #[default]
    Pairwise,
    PhiIdentity,
}

impl std::str::FromStr for GalAlgorithm {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "pairwise" => Ok(Self::Pairwise),
            "phi" | "phi_identity" | "phi-identity" => Ok(Self::PhiIdentity),
            _ => Err(format!("unknown algorithm `{s}`")),
        }
    }
}

/// `S_alpha(M) = sum_{m,n} ((m,n)/[m,n])^alpha`.
pub fn gal_sum(set: &IntegerSet, alpha: GalExponent, algorithm: GalAlgorithm) -> Result<f64> {
    set.ensure_nonempty()?;
    match algorithm {
        GalAlgorithm::Pairwise => Ok(pairwise(set.elements(), |a, b| a.gcd_ratio_pow(b, alpha.as_f64()))),
        GalAlgorithm::PhiIdentity => phi_identity(set, alpha),
    }
}

/// Symmetric double sum over the upper triangle, off-diagonal terms doubled.
/// Rows are evaluated in parallel and reduced in row order.
pub(crate) fn pairwise<F>(elems: &[FactoredInt], term: F) -> f64
where
    F: Fn(&FactoredInt, &FactoredInt) -> f64 + Sync,
{
    let rows: Vec<f64> = elems
        .par_iter()
        .enumerate()
        .map(|(i, a)| {
            let mut acc = CompensatedSum::new();
            acc.add(term(a, a));
            for b in &elems[i + 1..] {
                acc.add(2.0 * term(a, b));
            }
            acc.value()
        })
        .collect();
    sum::sum(rows)
}

/// `sum_d J(d) (sum_{m in M, d | m} m^{-alpha})^2` with `sum_{d|n} J(d) = n^{2 alpha}`.
fn phi_identity(set: &IntegerSet, alpha: GalExponent) -> Result<f64> {
    let Some(c) = alpha.doubled_integer() else {
        return Err(Error::UnsupportedAlgorithm(format!(
            "phi identity needs 2*alpha integral, got alpha = {alpha}"
        )));
    };
    let a = alpha.as_f64();
    // merged divisor lattice: every d dividing some element, keyed by value
    let mut lattice: BTreeMap<FactoredInt, CompensatedSum> = BTreeMap::new();
    for m in set.elements() {
        let w = m.pow_neg(a);
        for d in m.divisors() {
            lattice.entry(d).or_default().add(w);
        }
    }
    Ok(sum::sum(lattice.iter().map(|(d, inner)| {
        let v = inner.value();
        jordan_like(d, c) * v * v
    })))
}

/// Multiplicative `J(p^k) = p^{ck} - p^{c(k-1)}`; `c = 1` gives Euler's phi.
fn jordan_like(d: &FactoredInt, c: u32) -> f64 {
    d.factors()
        .iter()
        .map(|&(p, k)| {
            let pc = (p as f64).powi(c as i32);
            pc.powi(k as i32 - 1) * (pc - 1.0)
        })
        .product()
}

/// Factor list of `[m,n]/(m,n)`.
pub(crate) fn lcm_over_gcd_factors(a: &FactoredInt, b: &FactoredInt) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    for_each_exponent_pair(a.factors(), b.factors(), |p, x, y| {
        if x != y {
            out.push((p, x.abs_diff(y)));
        }
    });
    out
}

/// `S(M; g) = sum_{m,n} g([m,n]/(m,n))`.
pub fn gal_sum_weighted(set: &IntegerSet, weight: &WeightDescriptor) -> Result<f64> {
    set.ensure_nonempty()?;
    weight.validate()?;
    Ok(pairwise(set.elements(), |a, b| {
        weight.eval_factors(&lcm_over_gcd_factors(a, b))
    }))
}

/// `S+(M; g) = sum_{m,n} g(m/(m,n)) g(n/(m,n))`, an upper bound for
/// [`gal_sum_weighted`] when `g` is sub-multiplicative.
pub fn gal_sum_weighted_plus(set: &IntegerSet, weight: &WeightDescriptor) -> Result<f64> {
    set.ensure_nonempty()?;
    weight.validate()?;
    Ok(pairwise(set.elements(), |a, b| weighted_plus_term(a, b, weight)))
}

pub(crate) fn weighted_plus_term(a: &FactoredInt, b: &FactoredInt, weight: &WeightDescriptor) -> f64 {
    let (mut left, mut right) = (Vec::new(), Vec::new());
    for_each_exponent_pair(a.factors(), b.factors(), |p, x, y| {
        if x > y {
            left.push((p, x - y));
        } else if y > x {
            right.push((p, y - x));
        }
    });
    weight.eval_factors(&left) * weight.eval_factors(&right)
}

/// `sum_{m,n in M, n | m} (n/m)^alpha`, diagonal included.
pub fn gal_subsum(set: &IntegerSet, alpha: GalExponent) -> Result<f64> {
    set.ensure_nonempty()?;
    let a = alpha.as_f64();
    let elems = set.elements();
    let rows: Vec<f64> = elems
        .par_iter()
        .enumerate()
        .map(|(i, m)| {
            // divisors of m are no larger than m, so they sit at indices <= i
            let mut acc = CompensatedSum::new();
            for n in &elems[..=i] {
                if n.divides(m) {
                    acc.add(m.gcd_ratio_pow(n, a));
                }
            }
            acc.value()
        })
        .collect();
    Ok(sum::sum(rows))
}
