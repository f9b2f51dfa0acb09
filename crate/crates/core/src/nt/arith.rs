use num_bigint::{BigInt, BigUint};
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::nt::factored::FactoredInt;

/// The multiplicative functions exposed by [`arith_fn`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ArithFn {
    Phi,
    Mu,
    Tau,
    Omega,
    BigOmega,
    SquarefreeKernel,
}

impl std::str::FromStr for ArithFn {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "phi" => ArithFn::Phi,
            "mu" => ArithFn::Mu,
            "tau" => ArithFn::Tau,
            "omega" => ArithFn::Omega,
            "Omega" | "big_omega" => ArithFn::BigOmega,
            "kernel" | "squarefree_kernel" => ArithFn::SquarefreeKernel,
            other => return Err(format!("unknown arithmetic function `{other}`")),
        })
    }
}

pub fn arith_fn(n: &FactoredInt, which: ArithFn) -> BigInt {
    match which {
        ArithFn::Phi => BigInt::from(euler_phi(n)),
        ArithFn::Mu => BigInt::from(mobius(n)),
        ArithFn::Tau => BigInt::from(n.factors().iter().fold(BigUint::one(), |acc, &(_, e)| acc * (e + 1))),
        ArithFn::Omega => BigInt::from(n.omega()),
        ArithFn::BigOmega => BigInt::from(n.big_omega()),
        ArithFn::SquarefreeKernel => BigInt::from(squarefree_kernel(n).value().clone()),
    }
}

pub fn euler_phi(n: &FactoredInt) -> BigUint {
    n.factors().iter().fold(BigUint::one(), |acc, &(p, e)| {
        acc * BigUint::from(p).pow(e - 1) * (p - 1)
    })
}

pub fn mobius(n: &FactoredInt) -> i32 {
    if n.is_squarefree() {
        if n.omega() % 2 == 0 {
            1
        } else {
            -1
        }
    } else {
        0
    }
}

pub fn squarefree_kernel(n: &FactoredInt) -> FactoredInt {
    let ps: Vec<u64> = n.factors().iter().map(|&(p, _)| p).collect();
    FactoredInt::squarefree_from_primes(&ps)
}

/// Small-integer helpers used by the character code.
pub fn phi_u64(n: u64) -> u64 {
    let mut n0 = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n0 {
        if n0 % p == 0 {
            while n0 % p == 0 {
                n0 /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n0 > 1 {
        result -= result / n0;
    }
    result
}

pub fn mobius_u64(n: u64) -> i64 {
    let mut n0 = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n0 {
        if n0 % p == 0 {
            n0 /= p;
            if n0 % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n0 > 1 {
        sign = -sign;
    }
    sign
}

pub fn divisors_u64(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}
