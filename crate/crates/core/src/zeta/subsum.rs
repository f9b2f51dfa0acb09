use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gal::{gal_sum, GalAlgorithm, GalExponent};
use crate::nt::IntegerSet;
use crate::sum::CompensatedSum;

/// Finite form of the divisor-closed sub-sum bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SubsumBound {
    /// `sum_{m in M} sum_{n in M, n | m} sqrt(n/m)`.
    pub lhs: f64,
    /// `sum_{m in M} prod_{p | m} (1 - p^{-1/2})^{-1}`.
    pub rhs: f64,
    /// Every `m` satisfies the per-element product bound and
    /// `omega(m) <= log |M| / log 2`.
    pub per_element_ok: bool,
    /// `S_{1/2}(M)`.
    pub gal_sum: f64,
}

impl SubsumBound {
    pub fn holds(&self) -> bool {
        self.per_element_ok && self.lhs <= self.rhs && self.lhs <= self.gal_sum * (1.0 + 1e-12)
    }
}

pub fn subsum_bound_check(set: &IntegerSet) -> Result<SubsumBound> {
    set.ensure_nonempty()?;
    if !set.is_divisor_closed() {
        return Err(Error::domain("set must be divisor-closed"));
    }
    let omega_max = (set.len() as f64).log2() + 1e-12;
    let elems = set.elements();
    let mut lhs = CompensatedSum::new();
    let mut rhs = CompensatedSum::new();
    let mut ok = true;
    for (i, m) in elems.iter().enumerate() {
        let mut row = CompensatedSum::new();
        for n in &elems[..=i] {
            if n.divides(m) {
                row.add(m.gcd_ratio_pow(n, 0.5));
            }
        }
        let bound: f64 = m
            .factors()
            .iter()
            .map(|&(p, _)| 1.0 / (1.0 - 1.0 / (p as f64).sqrt()))
            .product();
        let r = row.value();
        ok &= r <= bound * (1.0 + 1e-12) && m.omega() as f64 <= omega_max;
        lhs.add(r);
        rhs.add(bound);
    }
    Ok(SubsumBound {
        lhs: lhs.value(),
        rhs: rhs.value(),
        per_element_ok: ok,
        gal_sum: gal_sum(set, GalExponent::HALF, GalAlgorithm::Pairwise)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn documented_values() {
        let r = subsum_bound_check(&IntegerSet::from_u64s(&[1]).unwrap()).unwrap();
        assert_eq!((r.lhs, r.rhs), (1.0, 1.0));
        let r = subsum_bound_check(&IntegerSet::from_u64s(&[1, 2, 3, 4, 6, 12]).unwrap()).unwrap();
        assert!(r.holds());
        assert!(subsum_bound_check(&IntegerSet::from_u64s(&[1, 4]).unwrap()).is_err());
    }
}
