use num_bigint::BigUint;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::nt::sieve::pow_mod;
use crate::nt::{factorize_u64, is_prime_u64};
use crate::sum::CompensatedComplexSum;

/// Moduli up to this size have their table invariants checked when built.
pub const VERIFY_LIMIT: u64 = 100;

/// One cyclic factor of `(Z/qZ)^*`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicComponent {
    /// Generator as a residue mod `q`.
    pub generator: u64,
    pub order: u64,
}

/// All Dirichlet characters modulo `q`.
///
/// `(Z/qZ)^*` is written as a product of cyclic groups with generators
/// `g_i` of order `o_i`. Character `j`, with mixed-radix digits `j_i` (first
/// component least significant), sends `prod g_i^{e_i}` to
/// `e(sum j_i e_i / o_i)`. For prime `q` there is one component generated by
/// the smallest primitive root, and `chi_j(n) = e(j log n / (q-1))`.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    q: u64,
    phi: u64,
    components: Vec<CyclicComponent>,
    /// Discrete logs, `components.len()` entries per residue; `u32::MAX` for
    /// residues sharing a factor with `q`.
    logs: Vec<u32>,
    /// `lcm` of the component orders.
    period: u64,
    roots: Vec<Complex64>,
}

/// Smallest primitive root modulo an odd prime power.
fn primitive_root(pk: u64, phi: u64) -> u64 {
    let ps: Vec<u64> = factorize_u64(phi)
        .expect("phi >= 1")
        .factors()
        .iter()
        .map(|&(p, _)| p)
        .collect();
    (2..pk)
        .find(|&g| g.gcd(&pk) == 1 && ps.iter().all(|&p| pow_mod(g, phi / p, pk) != 1))
        .expect("odd prime powers are cyclic")
}

/// `x = a mod m`, `x = 1 mod q/m`.
fn crt_lift(a: u64, m: u64, q: u64) -> u64 {
    let rest = q / m;
    if rest == 1 {
        return a % q;
    }
    // x = a + m t with m t = 1 - a mod rest
    let inv = (0..rest).find(|&t| (m % rest) * t % rest == 1).expect("coprime moduli");
    let need = (1 + rest - a % rest) % rest;
    let t = need * inv % rest;
    (a + m * t) % q
}

/// Exact unit roots at multiples of a quarter turn.
fn unit_root(k: u64, period: u64) -> Complex64 {
    if (4 * k) % period == 0 {
        return match 4 * k / period {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    let (s, c) = (std::f64::consts::TAU * k as f64 / period as f64).sin_cos();
    Complex64::new(c, s)
}

impl CharacterTable {
    /// Characters modulo a prime `q >= 3`.
    pub fn for_prime(q: u64) -> Result<Self> {
        if q < 3 || !is_prime_u64(q) {
            return Err(Error::domain(format!("modulus {q} must be a prime >= 3")));
        }
        Self::for_modulus(q)
    }

    /// Characters modulo any `q >= 3`.
    pub fn for_modulus(q: u64) -> Result<Self> {
        if q < 3 {
            return Err(Error::domain("modulus must be at least 3"));
        }
        if q > 1 << 24 {
            return Err(Error::capacity("character tables are limited to q <= 2^24"));
        }
        let factors = factorize_u64(q)?.factors().to_vec();
        let mut components = Vec::new();
        // (p^k, logs of residues mod p^k) per prime power with a nontrivial group
        let mut local_logs: Vec<(u64, Vec<Vec<u32>>)> = Vec::new();
        for &(p, k) in &factors {
            let pk = p.pow(k);
            let mut table = vec![Vec::new(); pk as usize];
            if p == 2 {
                if k == 1 {
                    continue;
                }
                let big = if k >= 3 { 1u64 << (k - 2) } else { 1 };
                components.push(CyclicComponent {
                    generator: crt_lift(pk - 1, pk, q),
                    order: 2,
                });
                if k >= 3 {
                    components.push(CyclicComponent {
                        generator: crt_lift(5, pk, q),
                        order: big,
                    });
                }
                for a in 0..2u64 {
                    let sign = if a == 0 { 1 } else { pk - 1 };
                    let mut x = sign;
                    for b in 0..big {
                        let mut e = vec![a as u32];
                        if k >= 3 {
                            e.push(b as u32);
                        }
                        table[x as usize] = e;
                        x = x * 5 % pk;
                    }
                }
            } else {
                let phi = pk / p * (p - 1);
                let g = primitive_root(pk, phi);
                components.push(CyclicComponent {
                    generator: crt_lift(g, pk, q),
                    order: phi,
                });
                let mut x = 1u64;
                for e in 0..phi {
                    table[x as usize] = vec![e as u32];
                    x = x * g % pk;
                }
            }
            local_logs.push((pk, table));
        }
        let width = components.len();
        let mut logs = vec![u32::MAX; q as usize * width];
        let mut phi = 0u64;
        for n in 0..q {
            if n.gcd(&q) != 1 {
                continue;
            }
            phi += 1;
            let mut row = Vec::with_capacity(width);
            for (pk, table) in &local_logs {
                row.extend_from_slice(&table[(n % pk) as usize]);
            }
            logs[n as usize * width..][..width].copy_from_slice(&row);
        }
        let period = components.iter().fold(1u64, |l, c| l.lcm(&c.order));
        let roots = (0..period).map(|k| unit_root(k, period)).collect();
        let table = Self {
            q,
            phi,
            components,
            logs,
            period,
            roots,
        };
        if q <= VERIFY_LIMIT {
            table.verify()?;
        }
        Ok(table)
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    /// Number of characters, `phi(q)`.
    pub fn len(&self) -> usize {
        self.phi as usize
    }

    pub fn is_empty(&self) -> bool {
        self.phi == 0
    }

    pub fn components(&self) -> &[CyclicComponent] {
        &self.components
    }

    /// The primitive root used for prime moduli.
    pub fn generator(&self) -> Option<u64> {
        (self.components.len() == 1 && is_prime_u64(self.q)).then(|| self.components[0].generator)
    }

    /// Discrete log to the base [`generator`](Self::generator), prime moduli only.
    pub fn log(&self, n: u64) -> Option<u32> {
        self.generator()?;
        let e = self.logs[(n % self.q) as usize];
        (e != u32::MAX).then_some(e)
    }

    pub fn character(&self, index: usize) -> Result<Character<'_>> {
        if index >= self.len() {
            return Err(Error::domain(format!(
                "character index {index} out of range 0..{}",
                self.len()
            )));
        }
        Ok(Character { table: self, index })
    }

    pub fn characters(&self) -> impl Iterator<Item = Character<'_>> {
        (0..self.len()).map(move |index| Character { table: self, index })
    }

    fn digits(&self, mut index: usize) -> Vec<u64> {
        self.components
            .iter()
            .map(|c| {
                let d = index as u64 % c.order;
                index /= c.order as usize;
                d
            })
            .collect()
    }

    fn index_of(&self, digits: &[u64]) -> usize {
        let mut idx = 0usize;
        for (c, &d) in self.components.iter().zip(digits).rev() {
            idx = idx * c.order as usize + d as usize;
        }
        idx
    }

    /// Index of the product character.
    pub fn product_index(&self, j: usize, k: usize) -> usize {
        let (a, b) = (self.digits(j), self.digits(k));
        let sum: Vec<u64> = self
            .components
            .iter()
            .zip(a.iter().zip(&b))
            .map(|(c, (x, y))| (x + y) % c.order)
            .collect();
        self.index_of(&sum)
    }

    /// Index of the conjugate character.
    pub fn conj_index(&self, j: usize) -> usize {
        let neg: Vec<u64> = self
            .components
            .iter()
            .zip(self.digits(j))
            .map(|(c, d)| (c.order - d) % c.order)
            .collect();
        self.index_of(&neg)
    }

    fn value_at(&self, digits: &[u64], n: u64) -> Complex64 {
        let width = self.components.len();
        let r = (n % self.q) as usize;
        let row = &self.logs[r * width..][..width];
        if row[0] == u32::MAX {
            return Complex64::new(0.0, 0.0);
        }
        let mut e = 0u64;
        for ((c, &d), &l) in self.components.iter().zip(digits).zip(row) {
            e = (e + d * l as u64 % c.order * (self.period / c.order)) % self.period;
        }
        self.roots[e as usize]
    }

    /// Checks multiplicativity of the index map, orthogonality, and the
    /// parity count.
    pub fn verify(&self) -> Result<()> {
        let vals: Vec<Vec<Complex64>> = self.characters().map(|c| c.values()).collect();
        let tol = 1e-9 * self.phi as f64;
        for j in 0..self.len() {
            for k in 0..self.len() {
                let jk = self.product_index(j, k);
                let mut dot = CompensatedComplexSum::new();
                for n in 0..self.q as usize {
                    if (vals[j][n] * vals[k][n] - vals[jk][n]).norm() > 1e-12 {
                        return Err(Error::validation(format!("chi_{j} chi_{k} != chi_{jk} at {n}")));
                    }
                    dot.add(vals[j][n] * vals[k][n].conj());
                }
                let expect = if j == k { self.phi as f64 } else { 0.0 };
                if (dot.value() - Complex64::new(expect, 0.0)).norm() > tol {
                    return Err(Error::validation(format!("orthogonality fails for ({j}, {k})")));
                }
            }
        }
        let even = self.characters().filter(|c| c.parity() == 0).count();
        if 2 * even != self.len() {
            return Err(Error::validation("parities are not balanced"));
        }
        Ok(())
    }
}

/// A character borrowed from its table.
#[derive(Debug, Clone, Copy)]
pub struct Character<'a> {
    table: &'a CharacterTable,
    index: usize,
}

impl<'a> Character<'a> {
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn table(&self) -> &'a CharacterTable {
        self.table
    }

    pub fn modulus(&self) -> u64 {
        self.table.q
    }

    pub fn value(&self, n: u64) -> Complex64 {
        self.table.value_at(&self.table.digits(self.index), n)
    }

    pub fn value_big(&self, n: &BigUint) -> Complex64 {
        let r = (n % self.table.q).to_u64().expect("residue fits");
        self.value(r)
    }

    /// `chi(0), ..., chi(q-1)`.
    pub fn values(&self) -> Vec<Complex64> {
        let d = self.table.digits(self.index);
        (0..self.table.q).map(|n| self.table.value_at(&d, n)).collect()
    }

    pub fn is_principal(&self) -> bool {
        self.index == 0
    }

    /// 0 for even characters, 1 for odd ones.
    pub fn parity(&self) -> u8 {
        u8::from(self.value(self.table.q - 1).re < 0.0)
    }

    pub fn conj(&self) -> Character<'a> {
        Character {
            table: self.table,
            index: self.table.conj_index(self.index),
        }
    }

    /// Not induced from any proper divisor of the modulus.
    pub fn is_primitive(&self) -> bool {
        let q = self.table.q;
        let vals = self.values();
        factorize_u64(q).expect("q >= 3").factors().iter().all(|&(p, _)| {
            let d = q / p;
            (1..q)
                .step_by(d as usize)
                .any(|n| n.gcd(&q) == 1 && (vals[n as usize] - Complex64::new(1.0, 0.0)).norm() > 1e-9)
        })
    }
}

/// Characters modulo a prime, as required by the L-value experiments.
pub fn build_character_table(q: u64) -> Result<CharacterTable> {
    CharacterTable::for_prime(q)
}

/// `sum_{n <= x} chi(n)`: whole periods contribute `phi(q)` for the principal
/// character and 0 otherwise; the remainder is summed directly.
pub fn character_sum(x: u64, chi: &Character<'_>) -> Complex64 {
    let q = chi.modulus();
    let vals = chi.values();
    let mut s = CompensatedComplexSum::new();
    if chi.is_principal() {
        s.add(Complex64::new((x / q) as f64 * chi.table().len() as f64, 0.0));
    }
    for n in 1..=(x % q) {
        s.add(vals[n as usize]);
    }
    s.value()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_prime_tables() {
        let t3 = build_character_table(3).unwrap();
        assert_eq!(t3.len(), 2);
        assert_eq!(t3.generator(), Some(2));
        assert_eq!(t3.character(0).unwrap().parity(), 0);
        assert_eq!(t3.character(1).unwrap().parity(), 1);

        let t5 = build_character_table(5).unwrap();
        let even_primitive: Vec<usize> = t5
            .characters()
            .filter(|c| !c.is_principal() && c.parity() == 0)
            .map(|c| c.index())
            .collect();
        assert_eq!(even_primitive, vec![2]);
        let quad = t5.character(2).unwrap();
        assert!((character_sum(3, &quad) - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
        assert!(character_sum(4, &t5.character(1).unwrap()).norm() < 1e-15);
        assert!(build_character_table(9).is_err());
    }

    #[test]
    fn orthogonality_mod_seven() {
        let t = build_character_table(7).unwrap();
        let (a, b) = (t.character(1).unwrap().values(), t.character(2).unwrap().values());
        let dot: Complex64 = a.iter().zip(&b).map(|(x, y)| x * y.conj()).sum();
        assert!(dot.norm() < 1e-12);
        assert_eq!(t.log(3), Some(1));
        assert_eq!(t.generator(), Some(3));
    }

    #[test]
    fn composite_moduli() {
        for q in [4u64, 8, 9, 12, 15, 16, 20, 24, 45, 63, 64, 100] {
            let t = CharacterTable::for_modulus(q).unwrap();
            assert_eq!(t.len() as u64, crate::nt::phi_u64(q), "q={q}");
        }
        let t = CharacterTable::for_modulus(6).unwrap();
        assert!(t.characters().all(|c| !c.is_primitive()));
        let t = CharacterTable::for_modulus(12).unwrap();
        assert_eq!(t.characters().filter(|c| c.is_primitive()).count(), 1);
        let t = CharacterTable::for_modulus(5).unwrap();
        assert_eq!(t.characters().filter(|c| c.is_primitive()).count(), 3);
    }
}
