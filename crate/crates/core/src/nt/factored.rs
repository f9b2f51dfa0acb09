use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nt::sieve::is_prime_u64;

/// A positive integer together with its prime factorization.
///
/// Primes are strictly increasing and every exponent is at least one; the
/// value 1 has an empty factor list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FactoredInt {
    value: BigUint,
    factors: Vec<(u64, u32)>,
}

impl FactoredInt {
    pub fn one() -> Self {
        Self {
            value: BigUint::one(),
            factors: Vec::new(),
        }
    }

    /// `p^e` for a prime `p`. Panics in debug builds if `p` is not prime.
    pub fn prime_power(p: u64, e: u32) -> Self {
        debug_assert!(is_prime_u64(p));
        if e == 0 {
            return Self::one();
        }
        Self {
            value: BigUint::from(p).pow(e),
            factors: vec![(p, e)],
        }
    }

    /// Builds the integer from a factor list, checking the invariants.
    pub fn from_factors(mut factors: Vec<(u64, u32)>) -> Result<Self> {
        factors.retain(|&(_, e)| e > 0);
        for w in factors.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(Error::domain("primes must be strictly increasing"));
            }
        }
        if let Some(&(p, _)) = factors.iter().find(|&&(p, _)| !is_prime_u64(p)) {
            return Err(Error::domain(format!("{p} is not prime")));
        }
        Ok(Self::from_factors_unchecked(factors))
    }

    /// Same as [`from_factors`](Self::from_factors) for lists already known to be valid.
    pub(crate) fn from_factors_unchecked(factors: Vec<(u64, u32)>) -> Self {
        let mut value = BigUint::one();
        for &(p, e) in &factors {
            value *= BigUint::from(p).pow(e);
        }
        Self { value, factors }
    }

    /// Product of distinct primes (all exponents one).
    pub fn squarefree_from_primes(primes: &[u64]) -> Self {
        let mut ps = primes.to_vec();
        ps.sort_unstable();
        ps.dedup();
        Self::from_factors_unchecked(ps.into_iter().map(|p| (p, 1)).collect())
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.value.to_u64()
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// `v_p(self)`.
    pub fn valuation(&self, p: u64) -> u32 {
        self.factors
            .binary_search_by_key(&p, |&(q, _)| q)
            .map_or(0, |i| self.factors[i].1)
    }

    pub fn omega(&self) -> usize {
        self.factors.len()
    }

    pub fn big_omega(&self) -> u64 {
        self.factors.iter().map(|&(_, e)| e as u64).sum()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    pub fn largest_prime(&self) -> Option<u64> {
        self.factors.last().map(|&(p, _)| p)
    }

    pub fn smallest_prime(&self) -> Option<u64> {
        self.factors.first().map(|&(p, _)| p)
    }

    /// Natural logarithm of the value.
    pub fn ln(&self) -> f64 {
        crate::sum::sum(self.factors.iter().map(|&(p, e)| e as f64 * (p as f64).ln()))
    }

    /// Value as f64 (may overflow to infinity for huge values).
    pub fn to_f64(&self) -> f64 {
        self.value.to_f64().unwrap_or(f64::INFINITY)
    }

    /// `self^(-alpha)` evaluated prime by prime.
    pub fn pow_neg(&self, alpha: f64) -> f64 {
        self.factors
            .iter()
            .map(|&(p, e)| (p as f64).powf(-alpha * e as f64))
            .product()
    }

    pub fn divides(&self, other: &FactoredInt) -> bool {
        self.factors.iter().all(|&(p, e)| other.valuation(p) >= e)
    }

    pub fn is_coprime_to(&self, other: &FactoredInt) -> bool {
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.factors, &other.factors);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => return false,
            }
        }
        true
    }

    /// Product of two factored integers.
    pub fn mul(&self, other: &FactoredInt) -> FactoredInt {
        let merged = merge_with(&self.factors, &other.factors, |a, b| a + b);
        FactoredInt {
            value: &self.value * &other.value,
            factors: merged,
        }
    }

    /// `self / other`, or `None` if `other` does not divide `self`.
    pub fn div_exact(&self, other: &FactoredInt) -> Option<FactoredInt> {
        if !other.divides(self) {
            return None;
        }
        let merged = merge_with(&self.factors, &other.factors, |a, b| a - b);
        Some(FactoredInt {
            value: &self.value / &other.value,
            factors: merged,
        })
    }

    /// All divisors, in increasing order of value.
    pub fn divisors(&self) -> Vec<FactoredInt> {
        let mut out = vec![FactoredInt::one()];
        for &(p, e) in &self.factors {
            let base = out.clone();
            let mut pk = FactoredInt::one();
            for _ in 0..e {
                pk = pk.mul(&FactoredInt::prime_power(p, 1));
                out.extend(base.iter().map(|d| d.mul(&pk)));
            }
        }
        out.sort();
        out
    }

    /// Number of divisors as f64 (exact while below 2^53).
    pub fn tau_f64(&self) -> f64 {
        self.factors.iter().map(|&(_, e)| (e + 1) as f64).product()
    }

    /// `log((gcd/lcm))` between the two integers, i.e. `-sum |v_p(a) - v_p(b)| log p`.
    pub fn ln_gcd_over_lcm(&self, other: &FactoredInt) -> f64 {
        let mut acc = crate::sum::CompensatedSum::new();
        for_each_exponent_pair(&self.factors, &other.factors, |p, a, b| {
            if a != b {
                acc.add(-(a.abs_diff(b) as f64) * (p as f64).ln());
            }
        });
        acc.value()
    }

    /// `((a, b) / [a, b])^alpha`.
    pub fn gcd_ratio_pow(&self, other: &FactoredInt, alpha: f64) -> f64 {
        let mut r = 1.0;
        for_each_exponent_pair(&self.factors, &other.factors, |p, a, b| {
            if a != b {
                r *= (p as f64).powf(-alpha * a.abs_diff(b) as f64);
            }
        });
        r
    }
}

/// Walks the union of two factor lists, passing `(p, v_p(a), v_p(b))`.
pub(crate) fn for_each_exponent_pair(a: &[(u64, u32)], b: &[(u64, u32)], mut f: impl FnMut(u64, u32, u32)) {
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let pa = a.get(i).map_or(u64::MAX, |x| x.0);
        let pb = b.get(j).map_or(u64::MAX, |x| x.0);
        match pa.cmp(&pb) {
            Ordering::Less => {
                f(pa, a[i].1, 0);
                i += 1;
            }
            Ordering::Greater => {
                f(pb, 0, b[j].1);
                j += 1;
            }
            Ordering::Equal => {
                f(pa, a[i].1, b[j].1);
                i += 1;
                j += 1;
            }
        }
    }
}

fn merge_with(a: &[(u64, u32)], b: &[(u64, u32)], op: impl Fn(u32, u32) -> u32) -> Vec<(u64, u32)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    for_each_exponent_pair(a, b, |p, x, y| {
        let e = op(x, y);
        if e > 0 {
            out.push((p, e));
        }
    });
    out
}

impl Ord for FactoredInt {
    fn cmp(&self, other: &Self) -> Ordering {
        self.value.cmp(&other.value)
    }
}

impl PartialOrd for FactoredInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FactoredInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Exponentwise min and max of the two factorizations.
pub fn gcd_lcm(a: &FactoredInt, b: &FactoredInt) -> (FactoredInt, FactoredInt) {
    let g = merge_with(&a.factors, &b.factors, |x, y| x.min(y));
    let l = merge_with(&a.factors, &b.factors, |x, y| x.max(y));
    (
        FactoredInt::from_factors_unchecked(g),
        FactoredInt::from_factors_unchecked(l),
    )
}
