mod common;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use proptest::prelude::*;

use gcdsum_core::nt::{arith_fn, factorize, factorize_u64, gcd_lcm, sieve_primes, ArithFn, FactoredInt, IntegerSet};
use gcdsum_core::Error;

fn multiply_back(f: &FactoredInt) -> BigUint {
    f.factors()
        .iter()
        .fold(BigUint::from(1u32), |acc, &(p, e)| acc * BigUint::from(p).pow(e))
}

fn well_formed(f: &FactoredInt) -> bool {
    f.factors().windows(2).all(|w| w[0].0 < w[1].0)
        && f.factors().iter().all(|&(p, e)| e >= 1 && common::is_prime(p))
        && (f.is_one() == f.factors().is_empty())
}

#[test]
fn sieve_examples() {
    assert_eq!(sieve_primes(10).unwrap(), vec![2, 3, 5, 7]);
    assert_eq!(sieve_primes(2).unwrap(), vec![2]);
    assert!(matches!(sieve_primes(1), Err(Error::EmptyRange(_))));
}

#[test]
fn sieve_to_a_million_matches_trial_division() {
    let primes = sieve_primes(1_000_000).unwrap();
    assert_eq!(primes.len(), 78_498);
    // trial division by the primes below 1000
    let small: Vec<u64> = (2..1000).filter(|&n| common::is_prime(n)).collect();
    let count = (2..=1_000_000u64)
        .filter(|&n| small.iter().take_while(|&&p| p * p <= n).all(|&p| n % p != 0))
        .count();
    assert_eq!(count, primes.len());
}

#[test]
fn factorize_examples() {
    let one = factorize_u64(1).unwrap();
    assert!(one.is_one() && one.factors().is_empty());
    assert_eq!(factorize_u64(12).unwrap().factors(), &[(2, 2), (3, 1)]);
    let big = factorize_u64((1u64 << 40) * 3).unwrap();
    assert_eq!(big.factors(), &[(2, 40), (3, 1)]);
    assert!(factorize_u64(0).is_err());
}

#[test]
fn factorize_large_semiprime() {
    // two primes above the trial-division table
    let (p, q) = (1_000_000_007u64, 998_244_353u64);
    let n = BigUint::from(p) * BigUint::from(q);
    let f = factorize(&n).unwrap();
    assert_eq!(f.factors(), &[(q, 1), (p, 1)]);
    assert_eq!(multiply_back(&f), n);
}

#[test]
fn arith_examples() {
    let v = |n: u64, w: ArithFn| arith_fn(&factorize_u64(n).unwrap(), w);
    assert_eq!(v(12, ArithFn::Phi), BigInt::from(4));
    assert_eq!(v(30, ArithFn::Mu), BigInt::from(-1));
    assert_eq!(v(12, ArithFn::SquarefreeKernel), BigInt::from(6));
    assert_eq!(v(12, ArithFn::Tau), BigInt::from(6));
    assert_eq!(v(12, ArithFn::Omega), BigInt::from(2));
    assert_eq!(v(12, ArithFn::BigOmega), BigInt::from(3));
    assert_eq!(v(1, ArithFn::Mu), BigInt::from(1));
}

#[test]
fn gcd_lcm_examples() {
    let f = |n: u64| factorize_u64(n).unwrap();
    let (g, l) = gcd_lcm(&f(12), &f(18));
    assert_eq!((g.to_u64(), l.to_u64()), (Some(6), Some(36)));
    let (g, l) = gcd_lcm(&f(1), &f(97));
    assert_eq!((g.to_u64(), l.to_u64()), (Some(1), Some(97)));
    let (g, l) = gcd_lcm(&f(7u64.pow(3)), &f(7u64.pow(5)));
    assert_eq!((g.to_u64(), l.to_u64()), (Some(343), Some(16_807)));
}

#[test]
fn set_flags_agree_with_recomputation() {
    let mut s = IntegerSet::from_u64s(&[1, 2, 3, 6]).unwrap();
    let flags = s.flags();
    assert_eq!(s.cached_flags(), Some(flags));
    assert_eq!(flags, s.compute_flags());
    assert!(flags.squarefree_all && flags.divisor_closed);
    assert!(!IntegerSet::from_u64s(&[1, 4]).unwrap().is_divisor_closed());
    assert_eq!(IntegerSet::from_u64s(&[3, 1, 3]).unwrap().to_u64s(), Some(vec![1, 3]));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn factorization_multiplies_back(n in 1u64..=1_000_000_000_000) {
        let f = factorize_u64(n).unwrap();
        prop_assert_eq!(multiply_back(&f), BigUint::from(n));
        prop_assert!(well_formed(&f));
    }

    #[test]
    fn gcd_times_lcm(a in 1u64..=1_000_000, b in 1u64..=1_000_000) {
        let (g, l) = gcd_lcm(&factorize_u64(a).unwrap(), &factorize_u64(b).unwrap());
        prop_assert_eq!(g.value() * l.value(), BigUint::from(a) * BigUint::from(b));
        prop_assert_eq!(g.to_u64(), Some(a.gcd(&b)));
    }

    #[test]
    fn multiplicative_on_coprime_pairs(a in 1u64..=100_000, b in 1u64..=100_000) {
        prop_assume!(a.gcd(&b) == 1);
        let fa = factorize_u64(a).unwrap();
        let fb = factorize_u64(b).unwrap();
        let fab = factorize_u64(a * b).unwrap();
        for w in [ArithFn::Phi, ArithFn::Mu, ArithFn::Tau] {
            prop_assert_eq!(arith_fn(&fab, w), arith_fn(&fa, w) * arith_fn(&fb, w));
        }
    }

    #[test]
    fn phi_matches_counting(n in 1u64..=3000) {
        let f = factorize_u64(n).unwrap();
        prop_assert_eq!(arith_fn(&f, ArithFn::Phi), BigInt::from(common::phi(n)));
        let want = common::trial_factor(n);
        prop_assert_eq!(f.factors(), want.as_slice());
    }
}
