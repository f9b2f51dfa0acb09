use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::nt::factored::FactoredInt;
use crate::nt::sieve::{is_prime_u64, mul_mod, small_primes, SMALL_PRIME_LIMIT};

/// Factors `n` by trial division with the shared prime table, then
/// Miller-Rabin plus Brent's rho on whatever cofactor remains.
pub fn factorize(n: &BigUint) -> Result<FactoredInt> {
    if n.is_zero() {
        return Err(Error::domain("cannot factor 0"));
    }
    let mut rest = n.clone();
    let mut factors: Vec<(u64, u32)> = Vec::new();
    for &p in small_primes() {
        if let Some(r) = rest.to_u64() {
            if r < p.saturating_mul(p) {
                break;
            }
        }
        let pb = BigUint::from(p);
        let mut e = 0;
        loop {
            let (q, r) = rest.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    }
    if !rest.is_one() {
        let mut large = Vec::new();
        split_cofactor(rest, &mut large)?;
        large.sort_unstable();
        for p in large {
            match factors.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => factors.push((p, 1)),
            }
        }
    }
    factors.sort_unstable();
    Ok(FactoredInt::from_factors_unchecked(factors))
}

/// Convenience wrapper for machine-sized inputs.
pub fn factorize_u64(n: u64) -> Result<FactoredInt> {
    factorize(&BigUint::from(n))
}

fn split_cofactor(n: BigUint, out: &mut Vec<u64>) -> Result<()> {
    if n.is_one() {
        return Ok(());
    }
    if let Some(m) = n.to_u64() {
        // no prime factor below the table limit, so anything below its square is prime
        if m < SMALL_PRIME_LIMIT * SMALL_PRIME_LIMIT || is_prime_u64(m) {
            out.push(m);
            return Ok(());
        }
        let d = rho_u64(m);
        split_cofactor(BigUint::from(d), out)?;
        return split_cofactor(BigUint::from(m / d), out);
    }
    if probably_prime_big(&n) {
        return Err(Error::capacity(format!("prime factor {n} exceeds 64 bits")));
    }
    let d = rho_big(&n);
    split_cofactor(n.clone() / &d, out)?;
    split_cofactor(d, out)
}

fn rho_u64(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut g) = (2u64, 2u64, 1u64);
        let mut q = 1u64;
        let mut r = 1usize;
        let mut ys = 2u64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..(128.min(r - k)) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += 128;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!()
}

fn probably_prime_big(n: &BigUint) -> bool {
    let one = BigUint::one();
    let n1 = n - &one;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x.is_one() || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn rho_big(n: &BigUint) -> BigUint {
    for c in 1u64.. {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut x = BigUint::from(2u32);
        let mut y = x.clone();
        loop {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            let g = diff.gcd(n);
            if g.is_one() {
                continue;
            }
            if &g != n {
                return g;
            }
            break;
        }
    }
    unreachable!()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let one = factorize_u64(1).unwrap();
        assert!(one.factors().is_empty());
        assert_eq!(one.to_u64(), Some(1));
        assert_eq!(factorize_u64(12).unwrap().factors(), &[(2, 2), (3, 1)]);
        assert!(matches!(factorize_u64(0), Err(Error::Domain(_))));
    }

    #[test]
    fn power_of_two_times_three() {
        let n = (1u64 << 40) * 3;
        let f = factorize_u64(n).unwrap();
        assert_eq!(f.factors(), &[(2, 40), (3, 1)]);
        assert_eq!(f.to_u64(), Some(n));
    }

    #[test]
    fn semiprime_with_large_factors() {
        let (p, q) = (1_000_000_007u64, 998_244_353u64);
        let f = factorize_u64(p * q).unwrap();
        assert_eq!(f.factors(), &[(q, 1), (p, 1)]);
        let big = BigUint::from(p)
            * BigUint::from(q)
            * BigUint::from(4_294_967_311u64)
            * BigUint::from(18_446_744_073_709_551_557u64);
        let f = factorize(&big).unwrap();
        assert_eq!(f.value(), &big);
        assert_eq!(f.omega(), 4);
    }
}
