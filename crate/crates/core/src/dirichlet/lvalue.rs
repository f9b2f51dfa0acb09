use serde::{Deserialize, Serialize};

use super::characters::Character;
use super::kernel::{series_tail_bound, WTable};
use crate::error::{Error, Result};
use crate::sum::CompensatedSum;

/// `|L(1/2, chi)|^2` with its error budget.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LHalfSq {
    /// Clamped at zero.
    pub value: f64,
    pub raw: f64,
    /// Series truncated at `n <= terms`.
    pub terms: u64,
    pub tail_bound: f64,
    pub quadrature_bound: f64,
}

impl LHalfSq {
    pub fn error_bound(&self) -> f64 {
        self.tail_bound + self.quadrature_bound
    }
}

/// `a_n = sum_{kl = n} chi(k) conj(chi(l))` for `n <= x`; real by symmetry.
pub fn convolution_coefficients(chi: &Character<'_>, x: u64) -> Vec<f64> {
    let q = chi.modulus() as usize;
    let vals = chi.values();
    let x = x as usize;
    let mut a = vec![0.0; x + 1];
    for k in 1..=x {
        let ck = vals[k % q];
        if ck.norm_sqr() == 0.0 {
            continue;
        }
        for l in 1..=x / k {
            let cl = vals[l % q];
            a[k * l] += (ck * cl.conj()).re;
        }
    }
    a
}

/// `|L(1/2, chi)|^2 = 2 sum_n a_n n^{-1/2} W_nu(pi n / q)`, with a kernel table
/// built for the character's modulus and parity.
pub fn l_half_sq(chi: &Character<'_>, tol: f64) -> Result<LHalfSq> {
    let top = WTable::default_top(chi.modulus(), chi.parity(), tol / 4.0);
    let table = WTable::new(chi.modulus(), chi.parity(), top)?;
    l_half_sq_with(chi, &table, tol)
}

/// As [`l_half_sq`] with a prebuilt table, truncating at the table's top.
///
/// The table error enters through `sum_i e_i |C_i|`, where `e_i` bounds the
/// error of kernel step `i` and `C_i` is the partial sum of the series
/// coefficients up to `i`.
pub fn l_half_sq_with(chi: &Character<'_>, table: &WTable, tol: f64) -> Result<LHalfSq> {
    if chi.is_principal() {
        return Err(Error::domain("character must be non-principal"));
    }
    if !chi.is_primitive() {
        return Err(Error::domain("character must be primitive"));
    }
    if table.q != chi.modulus() || table.nu != chi.parity() {
        return Err(Error::domain(
            "kernel table does not match character modulus and parity",
        ));
    }
    if !(tol > 0.0) {
        return Err(Error::domain("tol must be positive"));
    }
    let x = table.top();
    let a = convolution_coefficients(chi, x);
    let mut total = CompensatedSum::new();
    let mut partial = CompensatedSum::new();
    let mut quad = 0.0;
    for n in 1..=x {
        let c = 2.0 * a[n as usize] / (n as f64).sqrt();
        total.add(c * table.get(n));
        partial.add(c);
        quad += table.segment_errors[n as usize] * partial.value().abs();
    }
    let tail = series_tail_bound(chi.modulus(), chi.parity(), x);
    let raw = total.value();
    let out = LHalfSq {
        value: raw.max(0.0),
        raw,
        terms: x,
        tail_bound: tail,
        quadrature_bound: quad,
    };
    if out.error_bound() > tol {
        return Err(Error::Accuracy {
            estimate: raw,
            bound: out.error_bound(),
            tol,
        });
    }
    Ok(out)
}
