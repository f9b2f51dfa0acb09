use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gal::{gal_sum, GalAlgorithm, GalExponent};
use crate::nt::{factorize_u64, primes_iter, FactoredInt, IntegerSet};

/// Primes present in some element of `set`.
fn support(set: &IntegerSet) -> BTreeSet<u64> {
    set.iter().flat_map(|m| m.factors().iter().map(|&(p, _)| p)).collect()
}

/// The `count` smallest primes outside `avoid`.
fn fresh_primes(count: usize, avoid: &BTreeSet<u64>) -> Vec<u64> {
    primes_iter().filter(|p| !avoid.contains(p)).take(count).collect()
}

/// Completes `M` to exactly `N` elements while keeping at least half of the
/// normalized Gál sum.
///
/// With `2^k |M|` in `[N/2, N]`, each element is multiplied by every divisor
/// of a product `D` of `k` fresh primes; the remaining slots are filled with
/// the smallest unused positive integers (squarefree ones if `M` is).
pub fn complete_set(set: &IntegerSet, n: u64) -> Result<IntegerSet> {
    set.ensure_nonempty()?;
    let len = set.len() as u64;
    if len > n {
        return Err(Error::domain(format!("|M| = {len} exceeds N = {n}")));
    }
    if len == n {
        return Ok(set.clone());
    }
    let mut k = 0u32;
    while 2 * (len << k) <= n {
        k += 1;
    }
    let fresh = fresh_primes(k as usize, &support(set));
    let d = FactoredInt::squarefree_from_primes(&fresh);
    let mut elems: Vec<FactoredInt> = d
        .divisors()
        .iter()
        .flat_map(|div| set.iter().map(move |m| m.mul(div)))
        .collect();
    let squarefree = set.iter().all(FactoredInt::is_squarefree);
    let present: BTreeSet<BigUint> = elems.iter().map(|m| m.value().clone()).collect();
    let mut candidate = 0u64;
    while (elems.len() as u64) < n {
        candidate += 1;
        if present.contains(&BigUint::from(candidate)) {
            continue;
        }
        let f = factorize_u64(candidate)?;
        if squarefree && !f.is_squarefree() {
            continue;
        }
        elems.push(f);
    }
    Ok(IntegerSet::new(elems))
}

/// Replaces the primes of `q` occurring in `M` by the smallest primes dividing
/// neither `q` nor any element, preserving exponents.
///
/// Each replacement prime must be smaller than the prime it replaces, which
/// makes every ratio `(m,n)/[m,n]` weakly larger.
pub fn coprime_adjust(set: &IntegerSet, q: &FactoredInt) -> Result<IntegerSet> {
    let used = support(set);
    let swapped: Vec<u64> = q
        .factors()
        .iter()
        .map(|&(p, _)| p)
        .filter(|p| used.contains(p))
        .collect();
    if swapped.is_empty() {
        return Ok(set.clone());
    }
    let mut avoid = used;
    avoid.extend(q.factors().iter().map(|&(p, _)| p));
    let fresh = fresh_primes(swapped.len(), &avoid);
    if let Some((l, p)) = swapped.iter().zip(&fresh).find(|(l, p)| p >= l) {
        return Err(Error::capacity(format!(
            "no fresh prime below {l} (smallest available is {p})"
        )));
    }
    let map: BTreeMap<u64, u64> = swapped.into_iter().zip(fresh).collect();
    let elems = set
        .iter()
        .map(|m| {
            let mut f: Vec<(u64, u32)> = m
                .factors()
                .iter()
                .map(|&(p, e)| (*map.get(&p).unwrap_or(&p), e))
                .collect();
            f.sort_unstable();
            FactoredInt::from_factors_unchecked(f)
        })
        .collect();
    Ok(IntegerSet::new(elems))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DyadicSplit {
    /// `(j, block)` with block inside `]2^j, 2^{j+1}]`, increasing in `j`.
    pub blocks: Vec<(i64, IntegerSet)>,
    pub best_index: usize,
    pub best: IntegerSet,
    pub best_sum: f64,
}

/// Index `j` with `m` in `]2^j, 2^{j+1}]`.
fn dyadic_index(m: &BigUint) -> i64 {
    if m.is_one() {
        -1
    } else {
        (m - 1u32).bits() as i64 - 1
    }
}

pub fn dyadic_split(set: &IntegerSet) -> Result<DyadicSplit> {
    set.ensure_nonempty()?;
    let mut groups: BTreeMap<i64, Vec<FactoredInt>> = BTreeMap::new();
    for m in set.iter() {
        groups.entry(dyadic_index(m.value())).or_default().push(m.clone());
    }
    let blocks: Vec<(i64, IntegerSet)> = groups.into_iter().map(|(j, v)| (j, IntegerSet::new(v))).collect();
    let mut best_index = 0;
    let mut best_sum = f64::NEG_INFINITY;
    for (i, (_, b)) in blocks.iter().enumerate() {
        let s = gal_sum(b, GalExponent::HALF, GalAlgorithm::Pairwise)?;
        if s > best_sum {
            best_sum = s;
            best_index = i;
        }
    }
    Ok(DyadicSplit {
        best: blocks[best_index].1.clone(),
        best_index,
        best_sum,
        blocks,
    })
}
