use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Bound of the shared trial-division table.
pub const SMALL_PRIME_LIMIT: u64 = 1_000_000;

/// Primes in `[2, limit]`, ascending (sieve of Eratosthenes over odd numbers).
pub fn sieve_primes(limit: u64) -> Result<Vec<u64>> {
    if limit < 2 {
        return Err(Error::EmptyRange(format!("no primes below {limit}")));
    }
    let limit = usize::try_from(limit).map_err(|_| Error::capacity("sieve limit exceeds address space"))?;
    // index i represents 2i + 1
    let half = limit / 2 + 1;
    let mut composite = vec![false; half];
    composite[0] = true;
    let mut i = 1;
    while (2 * i + 1) * (2 * i + 1) <= limit {
        if !composite[i] {
            let p = 2 * i + 1;
            let mut j = p * p / 2;
            while j < half {
                composite[j] = true;
                j += p;
            }
        }
        i += 1;
    }
    let mut primes = Vec::with_capacity(estimate_pi(limit as f64) as usize);
    primes.push(2);
    primes.extend(
        composite
            .iter()
            .enumerate()
            .filter(|&(i, &c)| !c && 2 * i + 1 <= limit)
            .map(|(i, _)| (2 * i + 1) as u64),
    );
    Ok(primes)
}

fn estimate_pi(x: f64) -> f64 {
    if x < 10.0 {
        4.0
    } else {
        1.3 * x / x.ln()
    }
}

/// Shared read-only table of primes up to [`SMALL_PRIME_LIMIT`].
pub fn small_primes() -> &'static [u64] {
    static TABLE: OnceLock<Vec<u64>> = OnceLock::new();
    TABLE.get_or_init(|| sieve_primes(SMALL_PRIME_LIMIT).expect("limit >= 2"))
}

/// The primes needed so far, grown on demand beyond the shared table.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    if limit <= SMALL_PRIME_LIMIT {
        let table = small_primes();
        let end = table.partition_point(|&p| p <= limit);
        table[..end].to_vec()
    } else {
        sieve_primes(limit).expect("limit >= 2")
    }
}

/// All primes in increasing order.
pub fn primes_iter() -> impl Iterator<Item = u64> {
    small_primes()
        .iter()
        .copied()
        .chain((SMALL_PRIME_LIMIT + 1..).filter(|&n| is_prime_u64(n)))
}

/// The first `count` primes.
pub fn first_primes(count: usize) -> Vec<u64> {
    let table = small_primes();
    if count <= table.len() {
        return table[..count].to_vec();
    }
    let mut limit = SMALL_PRIME_LIMIT * 2;
    loop {
        let ps = sieve_primes(limit).expect("limit >= 2");
        if ps.len() >= count {
            return ps[..count].to_vec();
        }
        limit *= 2;
    }
}

/// pi(x) for x within the shared table, or by sieving.
pub fn prime_count(x: u64) -> usize {
    if x < 2 {
        return 0;
    }
    if x <= SMALL_PRIME_LIMIT {
        small_primes().partition_point(|&p| p <= x)
    } else {
        sieve_primes(x).expect("x >= 2").len()
    }
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}
