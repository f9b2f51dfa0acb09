//! Independent reference implementations shared by the integration tests.
//! Nothing here calls into the library's numerical code.
#![allow(dead_code)]

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Distinct sorted integers in `[1, max]`, `1 <= len <= max_len`.
pub fn random_set(rng: &mut ChaCha8Rng, max_len: usize, max: u64) -> Vec<u64> {
    let len = rng.gen_range(1..=max_len.min(max as usize));
    let mut out = std::collections::BTreeSet::new();
    while out.len() < len {
        out.insert(rng.gen_range(1..=max));
    }
    out.into_iter().collect()
}

/// Random squarefree set in `[1, max]`.
pub fn random_squarefree_set(rng: &mut ChaCha8Rng, max_len: usize, max: u64) -> Vec<u64> {
    let pool: Vec<u64> = (1..=max).filter(|&n| is_squarefree(n)).collect();
    let len = rng.gen_range(1..=max_len.min(pool.len()));
    let mut v: Vec<u64> = pool.choose_multiple(rng, len).copied().collect();
    v.sort_unstable();
    v
}

/// Divisor closure of a few random integers up to `max`.
pub fn random_divisor_closed(rng: &mut ChaCha8Rng, seeds: usize, max: u64) -> Vec<u64> {
    let mut out = std::collections::BTreeSet::new();
    for _ in 0..rng.gen_range(1..=seeds) {
        out.extend(divisors(rng.gen_range(1..=max)));
    }
    out.into_iter().collect()
}

pub fn divisors(n: u64) -> Vec<u64> {
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

pub fn is_squarefree(n: u64) -> bool {
    let mut d = 2;
    while d * d <= n {
        if n % (d * d) == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

pub fn trial_factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut e = 0;
        while n % d == 0 {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn phi(n: u64) -> u64 {
    (1..=n).filter(|&k| k.gcd(&n) == 1).count() as u64
}

/// `sum_{m,n} ((m,n)/[m,n])^alpha` straight from gcd and lcm.
pub fn gal_brute(set: &[u64], alpha: f64) -> f64 {
    let mut s = 0.0;
    for &m in set {
        for &n in set {
            let g = m.gcd(&n) as f64;
            let l = (m / m.gcd(&n)) as f64 * n as f64;
            s += (g / l).powf(alpha);
        }
    }
    s
}

/// `sum_{n | m} (n/m)^alpha` over ordered pairs of the set.
pub fn subsum_brute(set: &[u64], alpha: f64) -> f64 {
    let mut s = 0.0;
    for &m in set {
        for &n in set {
            if m % n == 0 {
                s += (n as f64 / m as f64).powf(alpha);
            }
        }
    }
    s
}

pub fn gal_matrix(set: &[u64], alpha: f64) -> DMatrix<f64> {
    DMatrix::from_fn(set.len(), set.len(), |i, j| {
        let (m, n) = (set[i], set[j]);
        let g = m.gcd(&n) as f64;
        (g * g / (m as f64 * n as f64)).powf(alpha)
    })
}

/// Extreme eigenvalues by a dense symmetric eigensolve.
pub fn eig_range(a: DMatrix<f64>) -> (f64, f64) {
    let e = a.symmetric_eigen().eigenvalues;
    (e.min(), e.max())
}

/// Lanczos approximation (g = 7, n = 9) of `log Gamma(z)`.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    const G: f64 = 7.0;
    const C: [f64; 9] = [
        0.999_999_999_999_809_9,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_1,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if z.re < 0.5 {
        let pi = Complex64::new(PI, 0.0);
        return pi.ln() - (pi * z).sin().ln() - ln_gamma(Complex64::new(1.0, 0.0) - z);
    }
    let z = z - 1.0;
    let mut x = Complex64::new(C[0], 0.0);
    for (i, c) in C.iter().enumerate().skip(1) {
        x += *c / (z + i as f64);
    }
    let t = z + G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
}

/// `W_nu(x)` from its Mellin-Barnes form on `Re s = c`, trapezoid in `y`.
pub fn w_mellin(x: f64, nu: u8) -> f64 {
    let c = 1.0;
    let a = 0.25 + 0.5 * nu as f64;
    let norm = 2.0 * ln_gamma(Complex64::new(a, 0.0)).re;
    let h = 0.05;
    let f = |y: f64| {
        let s = Complex64::new(c, y);
        let g = 2.0 * ln_gamma(s * 0.5 + a) - norm - s * x.ln();
        (g.exp() / s).re
    };
    let mut acc = 0.5 * f(0.0);
    let mut k = 1;
    loop {
        let v = f(k as f64 * h);
        acc += v;
        if k as f64 * h > 40.0 && v.abs() < 1e-20 {
            break;
        }
        k += 1;
    }
    acc * h / PI
}

/// Hurwitz `zeta(1/2, a)` for `a` in `(0, 1]` by Euler-Maclaurin.
pub fn hurwitz_half(a: f64) -> f64 {
    const B: [f64; 8] = [
        1.0 / 6.0,
        -1.0 / 30.0,
        1.0 / 42.0,
        -1.0 / 30.0,
        5.0 / 66.0,
        -691.0 / 2730.0,
        7.0 / 6.0,
        -3617.0 / 510.0,
    ];
    let s = 0.5;
    let n = 40;
    let mut acc = 0.0;
    for k in 0..n {
        acc += (k as f64 + a).powf(-s);
    }
    let x = n as f64 + a;
    acc += x.powf(1.0 - s) / (s - 1.0) + 0.5 * x.powf(-s);
    // B_{2j}/(2j)! * s(s+1)...(s+2j-2) * x^{-s-2j+1}
    let mut rising = s;
    let mut fact = 2.0;
    for (j, b) in B.iter().enumerate() {
        let j = j + 1;
        acc += b / fact * rising * x.powf(-s - 2.0 * j as f64 + 1.0);
        let k = 2.0 * j as f64;
        rising *= (s + k - 1.0) * (s + k);
        fact *= (k + 1.0) * (k + 2.0);
    }
    acc
}

/// `|L(1/2, chi)|^2` from `L = q^{-1/2} sum_a chi(a) zeta(1/2, a/q)`.
pub fn l_half_sq_hurwitz(q: u64, chi: impl Fn(u64) -> Complex64) -> f64 {
    let mut l = Complex64::new(0.0, 0.0);
    for a in 1..q {
        l += chi(a) * hurwitz_half(a as f64 / q as f64);
    }
    (l / (q as f64).sqrt()).norm_sqr()
}

/// `zeta(s)` through the Borwein acceleration of the alternating series.
pub fn zeta_borwein(s: Complex64) -> Complex64 {
    let n = 90usize;
    let mut d = vec![0.0; n + 1];
    let mut term = 1.0;
    let mut acc = 1.0;
    d[0] = 1.0;
    for i in 0..n {
        let fi = i as f64;
        let fnn = n as f64;
        term *= 4.0 * (fnn + fi) * (fnn - fi) / ((2.0 * fi + 1.0) * (2.0 * fi + 2.0));
        acc += term;
        d[i + 1] = acc;
    }
    let dn = d[n];
    let mut eta = Complex64::new(0.0, 0.0);
    for k in 0..n {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        eta += sign * (dn - d[k]) / dn * (-s * ((k + 1) as f64).ln()).exp();
    }
    let two = Complex64::new(2.0, 0.0);
    eta / (Complex64::new(1.0, 0.0) - two.powc(Complex64::new(1.0, 0.0) - s))
}

/// Hardy's `Z(t) = e^{i theta(t)} zeta(1/2 + it)`.
pub fn hardy_z(t: f64) -> f64 {
    let theta = ln_gamma(Complex64::new(0.25, 0.5 * t)).im - 0.5 * t * PI.ln();
    (Complex64::from_polar(1.0, theta) * zeta_borwein(Complex64::new(0.5, t))).re
}

/// A root of `Z` in `[lo, hi]` by bisection, assuming a sign change.
pub fn hardy_root(mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = hardy_z(lo);
    assert!(flo * hardy_z(hi) < 0.0, "no sign change");
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        let fm = hardy_z(mid);
        if fm * flo <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    0.5 * (lo + hi)
}

/// Character table mod prime `q` from an exhaustively found primitive root.
pub fn characters_mod_prime(q: u64) -> Vec<Vec<Complex64>> {
    let g = (2..q)
        .find(|&g| {
            let mut x = 1;
            (1..q - 1).all(|_| {
                x = x * g % q;
                x != 1
            })
        })
        .expect("primitive root");
    let mut log = vec![0u64; q as usize];
    let mut x = 1;
    for k in 0..q - 1 {
        log[x as usize] = k;
        x = x * g % q;
    }
    (0..q - 1)
        .map(|j| {
            (0..q)
                .map(|n| {
                    if n == 0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        Complex64::from_polar(1.0, 2.0 * PI * (j * log[n as usize]) as f64 / (q - 1) as f64)
                    }
                })
                .collect()
        })
        .collect()
}
