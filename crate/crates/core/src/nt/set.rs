use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nt::factored::FactoredInt;
use crate::nt::factorize::factorize_u64;

/// Structural flags derived from the elements of an [`IntegerSet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SetFlags {
    pub squarefree_all: bool,
    pub divisor_closed: bool,
    pub complete: bool,
}

/// A duplicate-free, increasing collection of factored integers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegerSet {
    elements: Vec<FactoredInt>,
    #[serde(skip)]
    flags: Option<SetFlags>,
}

impl IntegerSet {
    /// Sorts and deduplicates.
    pub fn new(mut elements: Vec<FactoredInt>) -> Self {
        elements.sort();
        elements.dedup();
        Self { elements, flags: None }
    }

    pub fn from_u64s(values: &[u64]) -> Result<Self> {
        let elems = values.iter().map(|&v| factorize_u64(v)).collect::<Result<Vec<_>>>()?;
        Ok(Self::new(elems))
    }

    /// Rejects empty input with a domain error.
    pub fn nonempty(values: &[u64]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::domain("set must be nonempty"));
        }
        Self::from_u64s(values)
    }

    /// All divisors of `d`.
    pub fn divisors_of(d: &FactoredInt) -> Self {
        Self {
            elements: d.divisors(),
            flags: None,
        }
    }

    pub fn elements(&self) -> &[FactoredInt] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, FactoredInt> {
        self.elements.iter()
    }

    pub fn contains(&self, n: &FactoredInt) -> bool {
        self.elements.binary_search(n).is_ok()
    }

    pub fn min(&self) -> Option<&FactoredInt> {
        self.elements.first()
    }

    pub fn max(&self) -> Option<&FactoredInt> {
        self.elements.last()
    }

    pub fn to_u64s(&self) -> Option<Vec<u64>> {
        self.elements.iter().map(|e| e.to_u64()).collect()
    }

    pub(crate) fn ensure_nonempty(&self) -> Result<()> {
        if self.is_empty() {
            Err(Error::domain("set must be nonempty"))
        } else {
            Ok(())
        }
    }

    /// Cached flags, computed on first use.
    pub fn flags(&mut self) -> SetFlags {
        if let Some(f) = self.flags {
            return f;
        }
        let f = self.compute_flags();
        self.flags = Some(f);
        f
    }

    pub fn cached_flags(&self) -> Option<SetFlags> {
        self.flags
    }

    pub fn compute_flags(&self) -> SetFlags {
        SetFlags {
            squarefree_all: self.elements.iter().all(FactoredInt::is_squarefree),
            divisor_closed: self.is_divisor_closed(),
            complete: self.is_complete(),
        }
    }

    pub fn is_divisor_closed(&self) -> bool {
        // closure under dropping one prime factor at a time suffices
        self.elements.iter().all(|m| {
            m.factors().iter().all(|&(p, _)| {
                let d = m.div_exact(&FactoredInt::prime_power(p, 1)).expect("p divides m");
                self.contains(&d)
            })
        })
    }

    /// Completeness: for every element `prod p_j^{v_j}`, every integer
    /// `prod q_j^{v_j}` with distinct primes `q_j <= p_j` is in the set.
    pub fn is_complete(&self) -> bool {
        let Some(pmax) = self.elements.iter().filter_map(FactoredInt::largest_prime).max() else {
            return true;
        };
        let primes = crate::nt::sieve::primes_up_to(pmax);
        self.elements.iter().all(|m| {
            let mut ok = true;
            for_each_replacement(m.factors(), &primes, &mut |n| {
                if ok && !self.contains(&n) {
                    ok = false;
                }
                ok
            });
            ok
        })
    }

    pub fn to_btree(&self) -> BTreeSet<FactoredInt> {
        self.elements.iter().cloned().collect()
    }
}

/// Enumerates every `prod q_j^{v_j}` with distinct primes `q_j <= p_j`.
/// The callback returns `false` to stop early.
fn for_each_replacement(factors: &[(u64, u32)], primes: &[u64], f: &mut dyn FnMut(FactoredInt) -> bool) {
    fn rec(
        factors: &[(u64, u32)],
        primes: &[u64],
        chosen: &mut Vec<(u64, u32)>,
        f: &mut dyn FnMut(FactoredInt) -> bool,
    ) -> bool {
        let Some((&(p, e), rest)) = factors.split_first() else {
            let mut fs = chosen.clone();
            fs.sort_unstable();
            return f(FactoredInt::from_factors_unchecked(fs));
        };
        for &q in primes.iter().take_while(|&&q| q <= p) {
            if chosen.iter().any(|&(c, _)| c == q) {
                continue;
            }
            chosen.push((q, e));
            let go_on = rec(rest, primes, chosen, f);
            chosen.pop();
            if !go_on {
                return false;
            }
        }
        true
    }
    rec(factors, primes, &mut Vec::new(), f);
}

impl<'a> IntoIterator for &'a IntegerSet {
    type Item = &'a FactoredInt;
    type IntoIter = std::slice::Iter<'a, FactoredInt>;

    fn into_iter(self) -> Self::IntoIter {
        self.elements.iter()
    }
}

impl FromIterator<FactoredInt> for IntegerSet {
    fn from_iter<I: IntoIterator<Item = FactoredInt>>(iter: I) -> Self {
        Self::new(iter.into_iter().collect())
    }
}
