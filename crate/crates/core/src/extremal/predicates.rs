use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::nt::{first_primes, prime_count, IntegerSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetPredicates {
    pub squarefree_all: bool,
    pub divisor_closed: bool,
    pub complete: bool,
    pub strict: bool,
    /// Every element satisfies `sum_h log(j_h/(2h)) <= log N` and
    /// `nu <= log N / log 2`, where `p_{j_1} < ... < p_{j_nu}` are its prime
    /// factors above `y = p_{floor(log N / log 2)}`. Guaranteed for strict sets.
    pub gal_bound_holds: bool,
}

pub fn set_predicates(set: &IntegerSet) -> Result<SetPredicates> {
    set.ensure_nonempty()?;
    let flags = set.compute_flags();
    Ok(SetPredicates {
        squarefree_all: flags.squarefree_all,
        divisor_closed: flags.divisor_closed,
        complete: flags.complete,
        strict: flags.divisor_closed && flags.complete,
        gal_bound_holds: gal_bound_holds(set),
    })
}

fn gal_bound_holds(set: &IntegerSet) -> bool {
    let ln_n = (set.len() as f64).ln();
    let nu_max = ln_n / std::f64::consts::LN_2;
    let idx = (nu_max + 1e-12).floor() as usize;
    let y = if idx == 0 {
        1
    } else {
        *first_primes(idx).last().expect("idx >= 1")
    };
    set.iter().all(|m| {
        let large: Vec<u64> = m.factors().iter().map(|&(p, _)| p).filter(|&p| p > y).collect();
        if large.len() as f64 > nu_max + 1e-12 {
            return false;
        }
        let total: f64 = large
            .iter()
            .enumerate()
            .map(|(h, &p)| (prime_count(p) as f64 / (2.0 * (h + 1) as f64)).ln())
            .sum();
        total <= ln_n + 1e-12
    })
}
