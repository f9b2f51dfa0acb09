use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::characters::CharacterTable;
use crate::error::{Error, Result};
use crate::nt::{divisors_u64, is_prime_u64, mobius_u64, phi_u64};
use crate::sum::CompensatedComplexSum;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrthogonalityCheck {
    pub lhs: f64,
    pub lhs_imag: f64,
    pub rhs: f64,
}

impl OrthogonalityCheck {
    pub fn abs_diff(&self) -> f64 {
        (self.lhs - self.rhs).hypot(self.lhs_imag)
    }
}

/// `sum_{d | (q, g)} phi(d) mu(q/d)`, with `(q, 0) = q`.
pub fn ramanujan_divisor_sum(q: u64, g: u64) -> i64 {
    let d0 = gcd(q, g);
    divisors_u64(d0)
        .into_iter()
        .map(|d| phi_u64(d) as i64 * mobius_u64(q / d))
        .sum()
}

fn gcd(a: u64, b: u64) -> u64 {
    num_integer::Integer::gcd(&a, &b)
}

fn reduce(m: i64, q: u64) -> u64 {
    m.rem_euclid(q as i64) as u64
}

/// Divisor-formula side: `(A(|m-n|) + (-1)^nu A(m+n)) / 2` with
/// `A(g) = sum_{d | (q,g)} phi(d) mu(q/d)`.
pub fn orthogonality_rhs(q: u64, m: i64, n: i64, nu: u8) -> f64 {
    let a = ramanujan_divisor_sum(q, m.abs_diff(n));
    let b = ramanujan_divisor_sum(q, reduce(m + n, q));
    let sign = if nu == 0 { 1 } else { -1 };
    0.5 * (a + sign * b) as f64
}

/// Direct sum of `chi(m) conj(chi(n))` over primitive characters of parity `nu`.
pub fn orthogonality_lhs(table: &CharacterTable, m: i64, n: i64, nu: u8) -> Complex64 {
    let q = table.modulus();
    let (m, n) = (reduce(m, q), reduce(n, q));
    let mut s = CompensatedComplexSum::new();
    for c in table.characters().filter(|c| c.parity() == nu && c.is_primitive()) {
        s.add(c.value(m) * c.value(n).conj());
    }
    s.value()
}

/// Both sides of the parity-restricted orthogonality relation for prime `q`.
pub fn orthogonality_check(q: u64, m: i64, n: i64, nu: u8) -> Result<OrthogonalityCheck> {
    if q < 3 || !is_prime_u64(q) {
        return Err(Error::domain("q must be a prime >= 3"));
    }
    let table = CharacterTable::for_prime(q)?;
    orthogonality_check_with(&table, m, n, nu)
}

pub fn orthogonality_check_with(table: &CharacterTable, m: i64, n: i64, nu: u8) -> Result<OrthogonalityCheck> {
    let q = table.modulus();
    if nu > 1 {
        return Err(Error::domain("nu must be 0 or 1"));
    }
    if reduce(m, q) == 0 || reduce(n, q) == 0 || gcd(reduce(m, q), q) > 1 || gcd(reduce(n, q), q) > 1 {
        return Err(Error::domain("gcd(mn, q) must be 1"));
    }
    let l = orthogonality_lhs(table, m, n, nu);
    Ok(OrthogonalityCheck {
        lhs: l.re,
        lhs_imag: l.im,
        rhs: orthogonality_rhs(q, m, n, nu),
    })
}

/// `sigma_q(a, b) = 2 sum over even primitive chi of chi(a) conj(chi(b))` for
/// prime `q`, from the case table: `-2` if `q` divides neither `a-b` nor
/// `a+b`, `q-3` if it divides exactly one, `2q-4` if both (then `q | a`).
pub fn sigma_q_cases(q: u64, a: i64, b: i64) -> i64 {
    let d = reduce(a - b, q) == 0;
    let s = reduce(a + b, q) == 0;
    let q = q as i64;
    match (d, s) {
        (false, false) => -2,
        (true, true) => 2 * q - 4,
        _ => q - 3,
    }
}

/// `sigma_q` from the divisor formula: twice the even-parity right side.
pub fn sigma_q_formula(q: u64, a: i64, b: i64) -> i64 {
    ramanujan_divisor_sum(q, reduce(a - b, q)) + ramanujan_divisor_sum(q, reduce(a + b, q))
}

/// `sigma_q` by direct summation over the character table.
pub fn sigma_q_direct(table: &CharacterTable, a: i64, b: i64) -> f64 {
    2.0 * orthogonality_lhs(table, a, b, 0).re
}

/// Compare the case table, the divisor formula and direct summation for all
/// residue pairs coprime to `q`.
pub fn verify_sigma_q(table: &CharacterTable) -> bool {
    let q = table.modulus();
    (1..q as i64).all(|a| {
        (1..q as i64).all(|b| {
            let c = sigma_q_cases(q, a, b);
            c == sigma_q_formula(q, a, b) && (sigma_q_direct(table, a, b) - c as f64).abs() < 1e-9
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn documented_values() {
        let c = orthogonality_check(5, 1, 1, 0).unwrap();
        assert!((c.lhs - 1.0).abs() < 1e-12 && c.rhs == 1.0);
        let c = orthogonality_check(5, 1, 2, 0).unwrap();
        assert!((c.lhs + 1.0).abs() < 1e-12 && c.rhs == -1.0);
        assert_eq!(sigma_q_cases(7, 1, 1), 4);
        assert_eq!(sigma_q_formula(7, 1, 1), 4);
        assert!(orthogonality_check(5, 5, 1, 0).is_err());
    }

    #[test]
    fn both_divisible_case() {
        assert_eq!(sigma_q_formula(7, 7, 14), sigma_q_cases(7, 7, 14));
    }

    #[test]
    fn sigma_tables_agree() {
        for q in [3u64, 5, 7, 11, 13] {
            assert!(verify_sigma_q(&CharacterTable::for_prime(q).unwrap()), "q={q}");
        }
    }
}
