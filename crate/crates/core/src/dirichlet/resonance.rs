use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::characters::{character_sum, Character, CharacterTable};
use super::kernel::WTable;
use super::lvalue::l_half_sq_with;
use super::orthogonality::{sigma_q_cases, verify_sigma_q};
use crate::error::{Error, Result};
use crate::extremal::{construct_extremal_set, coprime_adjust, dyadic_split, ConstructionParams};
use crate::nt::{is_prime_u64, phi_u64, FactoredInt, IntegerSet};
use crate::sum::{CompensatedComplexSum, CompensatedSum};

/// Largest `phi(q)` for the exhaustive character sweep.
pub const MAX_SWEEP_CHARACTERS: u64 = 10_000;

/// Residue-class weights `r(h)^2 = #{m in M : m = h mod q}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Resonator {
    pub q: u64,
    pub set_size: u64,
    /// Residues attained, increasing.
    pub representatives: Vec<u64>,
    /// `r(h)^2` for each representative.
    pub counts: Vec<u64>,
}

impl Resonator {
    pub fn new(q: u64, set: &IntegerSet) -> Result<Self> {
        if q < 2 {
            return Err(Error::domain("q must be at least 2"));
        }
        let qb = BigUint::from(q);
        let mut by_residue: BTreeMap<u64, u64> = BTreeMap::new();
        for m in set.iter() {
            let h = (m.value() % &qb).to_u64().expect("residue fits");
            if num_integer::Integer::gcd(&h, &q) != 1 {
                return Err(Error::domain(format!("element {} is not coprime to {q}", m.value())));
            }
            *by_residue.entry(h).or_default() += 1;
        }
        Ok(Self {
            q,
            set_size: set.len() as u64,
            representatives: by_residue.keys().copied().collect(),
            counts: by_residue.values().copied().collect(),
        })
    }

    pub fn weight(&self, i: usize) -> f64 {
        (self.counts[i] as f64).sqrt()
    }

    /// `R_chi = sum_h r(h) chi(h)`.
    pub fn value(&self, chi: &Character<'_>) -> Complex64 {
        let mut s = CompensatedComplexSum::new();
        for (i, &h) in self.representatives.iter().enumerate() {
            s.add(chi.value(h) * self.weight(i));
        }
        s.value()
    }

    /// `sum r(h)^2 = |M|` and `|R_chi|^2 <= |R_0|^2 <= min(q-1, N) N` for every
    /// character of `table`.
    pub fn verify(&self, table: &CharacterTable) -> bool {
        let n = self.set_size as f64;
        let slack = 1e-9 * n.max(1.0);
        let r0 = self.value(&table.character(0).expect("principal"));
        let r0sq = r0.norm_sqr();
        self.counts.iter().sum::<u64>() == self.set_size
            && r0sq <= ((self.q - 1) as f64).min(n) * n + slack
            && table.characters().all(|c| self.value(&c).norm_sqr() <= r0sq + slack)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ResonanceKind {
    LHalf,
    CharSum,
}

/// One character's contribution. `value` is `|L(1/2,chi)|^2` or `|S(x,chi)|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResonanceRow {
    pub char_index: usize,
    pub parity: u8,
    pub re_r: f64,
    pub im_r: f64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResonanceReport {
    pub kind: ResonanceKind,
    pub q: u64,
    pub x: Option<u64>,
    pub set_size: u64,
    pub numerator: f64,
    pub denominator: f64,
    pub implied_bound: f64,
    pub true_extremum: f64,
    pub witness_character_index: usize,
    /// Series length of the L-values.
    pub terms: Option<u64>,
    /// Largest per-character error bound on `|L|^2`.
    pub max_error_bound: f64,
    /// Case table vs divisor formula vs direct sums, for `q <= 50`.
    pub sigma_verified: Option<bool>,
    /// `W_1 <= phi(q) |M|`.
    pub denominator_bound_holds: Option<bool>,
    pub rows: Vec<ResonanceRow>,
}

impl ResonanceReport {
    /// `implied_bound <= true_extremum` up to `slack`.
    pub fn is_sound(&self, slack: f64) -> bool {
        self.implied_bound <= self.true_extremum + slack
    }
}

fn finish(
    kind: ResonanceKind,
    q: u64,
    set_size: u64,
    rows: Vec<ResonanceRow>,
    weight_of: impl Fn(&ResonanceRow) -> f64,
    extremum_of: impl Fn(f64) -> f64,
) -> ResonanceReport {
    let mut num = CompensatedSum::new();
    let mut den = CompensatedSum::new();
    let mut witness = 0;
    let mut best = f64::NEG_INFINITY;
    for r in &rows {
        let rr = r.re_r * r.re_r + r.im_r * r.im_r;
        num.add(rr * weight_of(r));
        den.add(rr);
        if r.value > best {
            best = r.value;
            witness = r.char_index;
        }
    }
    let (num, den) = (num.value(), den.value());
    let implied = if den > 0.0 { (num.max(0.0) / den).sqrt() } else { 0.0 };
    ResonanceReport {
        kind,
        q,
        x: None,
        set_size,
        numerator: num,
        denominator: den,
        implied_bound: implied,
        true_extremum: extremum_of(best),
        witness_character_index: witness,
        terms: None,
        max_error_bound: 0.0,
        sigma_verified: None,
        denominator_bound_holds: None,
        rows,
    }
}

/// `V_1 = sum |R_chi|^2`, `V_2 = sum |R_chi|^2 |L(1/2,chi)|^2` over even
/// non-principal characters mod prime `q`; `implied_bound = sqrt(V_2/V_1)`
/// never exceeds `max |L(1/2,chi)|`.
pub fn resonate_l(q: u64, set: &IntegerSet, tol: f64) -> Result<ResonanceReport> {
    if q < 5 || !is_prime_u64(q) {
        return Err(Error::domain("q must be a prime >= 5"));
    }
    let table = CharacterTable::for_prime(q)?;
    let res = Resonator::new(q, set)?;
    let kernel = WTable::new(q, 0, WTable::default_top(q, 0, tol / 4.0))?;
    let chars: Vec<Character<'_>> = table
        .characters()
        .filter(|c| c.parity() == 0 && !c.is_principal())
        .collect();
    let values: Vec<(ResonanceRow, f64)> = chars
        .par_iter()
        .map(|c| {
            let l = l_half_sq_with(c, &kernel, tol)?;
            let r = res.value(c);
            Ok((
                ResonanceRow {
                    char_index: c.index(),
                    parity: 0,
                    re_r: r.re,
                    im_r: r.im,
                    value: l.value,
                },
                l.error_bound(),
            ))
        })
        .collect::<Result<_>>()?;
    let max_err = values.iter().map(|v| v.1).fold(0.0, f64::max);
    let rows = values.into_iter().map(|v| v.0).collect();
    let mut rep = finish(ResonanceKind::LHalf, q, set.len() as u64, rows, |r| r.value, f64::sqrt);
    rep.terms = Some(kernel.top());
    rep.max_error_bound = max_err;
    if q <= 50 {
        rep.sigma_verified = Some(verify_sigma_q(&table));
    }
    Ok(rep)
}

/// `W_1 = sum |R_chi|^2`, `W_2 = sum |R_chi|^2 |S(x,chi)|^2` over all
/// non-principal characters mod `q`; `implied_bound` never exceeds
/// `max |S(x,chi)|`.
pub fn resonate_charsum(q: u64, x: u64, set: &IntegerSet) -> Result<ResonanceReport> {
    if q < 3 {
        return Err(Error::domain("q must be at least 3"));
    }
    if x < 1 {
        return Err(Error::domain("x must be positive"));
    }
    let phi = phi_u64(q);
    if phi > MAX_SWEEP_CHARACTERS {
        return Err(Error::capacity(format!(
            "phi(q) = {phi} exceeds {MAX_SWEEP_CHARACTERS}"
        )));
    }
    let table = CharacterTable::for_modulus(q)?;
    let res = Resonator::new(q, set)?;
    let chars: Vec<Character<'_>> = table.characters().filter(|c| !c.is_principal()).collect();
    let rows: Vec<ResonanceRow> = chars
        .par_iter()
        .map(|c| {
            let r = res.value(c);
            ResonanceRow {
                char_index: c.index(),
                parity: c.parity(),
                re_r: r.re,
                im_r: r.im,
                value: character_sum(x, c).norm(),
            }
        })
        .collect();
    let mut rep = finish(
        ResonanceKind::CharSum,
        q,
        set.len() as u64,
        rows,
        |r| r.value * r.value,
        |v| v,
    );
    rep.x = Some(x);
    rep.denominator_bound_holds = Some(rep.denominator <= phi as f64 * set.len() as f64 * (1.0 + 1e-12));
    Ok(rep)
}

/// `V_2` from the double-sum expansion
/// `sum_{h,h'} r(h) r(h') sum_{k,l} W(pi kl/q)/sqrt(kl) sigma_q(hk, h'l)`,
/// truncated at `kl <= top` of the kernel table.
pub fn v2_expansion(res: &Resonator, kernel: &WTable) -> f64 {
    let q = res.q as usize;
    let x = kernel.top() as usize;
    // b[a][c] = sum over k = a, l = c (mod q), kl <= x of W/sqrt(kl)
    let mut b = vec![vec![CompensatedSum::new(); q]; q];
    for k in 1..=x {
        if k % q == 0 {
            continue;
        }
        for l in 1..=x / k {
            if l % q == 0 {
                continue;
            }
            let n = k * l;
            b[k % q][l % q].add(kernel.get(n as u64) / (n as f64).sqrt());
        }
    }
    let mut total = CompensatedSum::new();
    for (i, &h) in res.representatives.iter().enumerate() {
        for (j, &g) in res.representatives.iter().enumerate() {
            let w = res.weight(i) * res.weight(j);
            for (a, row) in b.iter().enumerate().skip(1) {
                for (c, cell) in row.iter().enumerate().skip(1) {
                    let s = sigma_q_cases(res.q, (h as usize * a % q) as i64, (g as usize * c % q) as i64);
                    total.add(w * cell.value() * s as f64);
                }
            }
        }
    }
    total.value()
}

/// Best dyadic block of a small large-sum construction, made coprime to `q`.
pub fn auto_resonance_set(q: u64) -> Result<IntegerSet> {
    let report = construct_extremal_set(&ConstructionParams::new(2000, 1.5, 2.0, 0.5, 1.0))?;
    let set = match report.final_set {
        Some(s) => s,
        None => report.materialize(4096)?,
    };
    let adjusted = coprime_adjust(&set, &FactoredInt::prime_power(q, 1))?;
    Ok(dyadic_split(&adjusted)?.best)
}
