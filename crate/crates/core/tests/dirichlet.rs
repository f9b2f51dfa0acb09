mod common;

use num_complex::Complex64;
use num_integer::Integer;
use proptest::prelude::*;

use gcdsum_core::dirichlet::{
    build_character_table, character_sum, l_half_sq, l_half_sq_with, orthogonality_check, resonate_charsum, resonate_l,
    v2_expansion, w_kernel, CharacterTable, Resonator, WTable,
};
use gcdsum_core::nt::IntegerSet;

fn set(v: &[u64]) -> IntegerSet {
    IntegerSet::from_u64s(v).unwrap()
}

fn same_values(a: &[Complex64], b: &[Complex64]) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).norm() < 1e-12)
}

#[test]
fn prime_tables_match_discrete_log_oracle() {
    for q in [3u64, 5, 7, 11, 13, 31] {
        let t = build_character_table(q).unwrap();
        let oracle = common::characters_mod_prime(q);
        assert_eq!(t.len(), oracle.len());
        for c in t.characters() {
            let v = c.values();
            let j = oracle
                .iter()
                .position(|o| same_values(o, &v))
                .expect("character in oracle");
            assert_eq!(c.parity() as usize, j % 2, "q={q}");
            assert_eq!(c.is_principal(), j == 0);
            assert!(same_values(
                &c.conj().values(),
                &v.iter().map(|z| z.conj()).collect::<Vec<_>>()
            ));
        }
    }
    let t3 = build_character_table(3).unwrap();
    let odd = t3.characters().find(|c| !c.is_principal()).unwrap();
    assert!(same_values(
        &odd.values(),
        &[0.0, 1.0, -1.0].map(|x| Complex64::new(x, 0.0))
    ));
    assert_eq!(odd.parity(), 1);
    assert!(build_character_table(9).is_err());
    assert!(build_character_table(2).is_err());
}

#[test]
fn composite_tables_are_orthogonal() {
    for q in [8u64, 12, 15, 16, 20, 24, 36, 45, 60] {
        let t = CharacterTable::for_modulus(q).unwrap();
        let phi = common::phi(q);
        assert_eq!(t.len() as u64, phi);
        let rows: Vec<Vec<Complex64>> = t.characters().map(|c| c.values()).collect();
        for (i, a) in rows.iter().enumerate() {
            for (j, b) in rows.iter().enumerate() {
                let s: Complex64 = a.iter().zip(b).map(|(x, y)| x * y.conj()).sum();
                let want = if i == j { phi as f64 } else { 0.0 };
                assert!((s - want).norm() < 1e-9, "q={q} {i} {j}");
            }
            for m in 1..q {
                for n in 1..q {
                    let lhs = a[(m * n % q) as usize];
                    assert!((lhs - a[m as usize] * a[n as usize]).norm() < 1e-12);
                }
            }
        }
    }
}

#[test]
fn character_sum_examples() {
    let t = build_character_table(5).unwrap();
    for c in t.characters() {
        let v = c.values();
        for x in [1u64, 4, 5, 9, 23, 1000] {
            let want: Complex64 = (1..=x).map(|n| v[(n % 5) as usize]).sum();
            assert!((character_sum(x, &c) - want).norm() < 1e-9);
        }
        if !c.is_principal() {
            assert!(character_sum(5, &c).norm() < 1e-12);
        }
    }
    let principal = t.character(0).unwrap();
    assert!((character_sum(12, &principal) - Complex64::new(10.0, 0.0)).norm() < 1e-12);
}

#[test]
fn central_values_match_hurwitz() {
    for q in [5u64, 7, 11, 13, 17] {
        let t = build_character_table(q).unwrap();
        for c in t.characters().filter(|c| !c.is_principal()) {
            let got = l_half_sq(&c, 1e-10).unwrap();
            let v = c.values();
            let want = common::l_half_sq_hurwitz(q, |n| v[n as usize]);
            assert!(
                (got.value - want).abs() < 1e-8,
                "q={q} chi={}: {} vs {want}",
                c.index(),
                got.value
            );
            assert!(got.error_bound() <= 1e-10);
        }
    }
}

#[test]
fn quadratic_character_mod_five() {
    let t = build_character_table(5).unwrap();
    let chi = t
        .characters()
        .find(|c| !c.is_principal() && c.values().iter().all(|z| z.im.abs() < 1e-12))
        .unwrap();
    let legendre = [0.0, 1.0, -1.0, -1.0, 1.0];
    assert!(chi.values().iter().zip(legendre).all(|(z, l)| (z.re - l).abs() < 1e-12));
    let want = common::l_half_sq_hurwitz(5, |n| Complex64::new(legendre[n as usize], 0.0));
    let got = l_half_sq(&chi, 1e-10).unwrap();
    assert!((got.value - want).abs() < 1e-8);
}

#[test]
fn longer_series_agrees_within_bounds() {
    let q = 11;
    let t = build_character_table(q).unwrap();
    for c in t.characters().filter(|c| !c.is_principal()) {
        let base = l_half_sq(&c, 1e-10).unwrap();
        let table = WTable::new(q, c.parity(), 2 * base.terms).unwrap();
        let long = l_half_sq_with(&c, &table, 1e-10).unwrap();
        assert!((long.value - base.value).abs() <= base.error_bound() + long.error_bound() + 1e-13);
    }
}

#[test]
fn conjugate_characters_share_central_value() {
    let t = build_character_table(19).unwrap();
    for c in t.characters().filter(|c| !c.is_principal()) {
        let a = l_half_sq(&c, 1e-10).unwrap().value;
        let b = l_half_sq(&c.conj(), 1e-10).unwrap().value;
        assert!((a - b).abs() < 1e-10);
    }
}

#[test]
fn central_value_rejects_principal() {
    let t = build_character_table(7).unwrap();
    assert!(l_half_sq(&t.character(0).unwrap(), 1e-10).is_err());
    let c = t.character(1).unwrap();
    let wrong = WTable::new(7, 1 - c.parity(), 500).unwrap();
    assert!(l_half_sq_with(&c, &wrong, 1e-10).is_err());
}

#[test]
fn kernel_decay_and_oracle() {
    assert!((w_kernel(0.0, 0, 1e-10).unwrap() - 1.0).abs() < 1e-10);
    let mut prev = f64::INFINITY;
    for k in 0..=100 {
        let x = 0.5 * k as f64;
        let w = w_kernel(x, 0, 1e-10).unwrap();
        assert!(w * (1.0 + x).powi(2) <= 2.0, "x={x}");
        assert!(w <= prev + 2e-10);
        prev = w;
    }
    for (x, nu) in [(0.3, 0u8), (1.5, 0), (0.7, 1), (3.0, 1)] {
        let w = w_kernel(x, nu, 1e-10).unwrap();
        assert!((w - common::w_mellin(x, nu)).abs() < 1e-9, "x={x} nu={nu}");
    }
    assert!(w_kernel(-1.0, 0, 1e-10).is_err());
    assert!(w_kernel(1.0, 2, 1e-10).is_err());
}

#[test]
fn expansion_matches_character_sum() {
    let v = [1u64, 2, 3, 4, 6, 8, 9, 12, 14, 27];
    let res = Resonator::new(13, &set(&v)).unwrap();
    let rep = resonate_l(13, &set(&v), 1e-10).unwrap();
    let kernel = WTable::new(13, 0, rep.terms.unwrap()).unwrap();
    let v2 = v2_expansion(&res, &kernel);
    assert!(
        (v2 - rep.numerator).abs() <= 1e-8 * rep.numerator.abs().max(1.0),
        "{v2} vs {}",
        rep.numerator
    );
    assert!(rep.is_sound(1e-9));
    assert_eq!(rep.sigma_verified, Some(true));
}

#[test]
fn charsum_examples() {
    let rep = resonate_charsum(11, 10, &set(&[1])).unwrap();
    assert!(rep.implied_bound < 1e-10);
    let rep = resonate_charsum(12, 5, &set(&[1, 5, 7])).unwrap();
    assert_eq!(rep.rows.len(), 3);
    assert!(rep.is_sound(1e-9));
    assert!(resonate_charsum(12, 5, &set(&[2])).is_err());
    assert!(resonate_charsum(2, 5, &set(&[1])).is_err());
    assert!(resonate_l(4, &set(&[1]), 1e-10).is_err());
}

fn coprime_set(q: u64) -> impl Strategy<Value = Vec<u64>> {
    proptest::collection::btree_set(1u64..2000, 1..30)
        .prop_map(move |s| s.into_iter().filter(|m| m.gcd(&q) == 1).collect::<Vec<_>>())
        .prop_filter("nonempty", |v| !v.is_empty())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn orthogonality_matches_oracle(qi in 0usize..8, m in 1i64..500, n in 1i64..500, nu in 0u8..2) {
        let q = [5u64, 7, 11, 13, 17, 19, 23, 29][qi];
        prop_assume!(m % q as i64 != 0 && n % q as i64 != 0);
        let chk = orthogonality_check(q, m, n, nu).unwrap();
        prop_assert!(chk.abs_diff() < 1e-9);
        let oracle: Complex64 = common::characters_mod_prime(q)
            .iter()
            .enumerate()
            .skip(1)
            .filter(|(j, _)| (j % 2) as u8 == nu)
            .map(|(_, c)| c[(m as u64 % q) as usize] * c[(n as u64 % q) as usize].conj())
            .sum();
        prop_assert!((oracle.re - chk.lhs).abs() < 1e-9 && oracle.im.abs() < 1e-9);
    }

    #[test]
    fn resonator_weights(v in coprime_set(17)) {
        let q = 17u64;
        let r = Resonator::new(q, &set(&v)).unwrap();
        let t = build_character_table(q).unwrap();
        prop_assert!(r.verify(&t));
        prop_assert_eq!(r.counts.iter().sum::<u64>(), v.len() as u64);
        for c in common::characters_mod_prime(q) {
            let mut counts = vec![0u64; q as usize];
            for m in &v {
                counts[(m % q) as usize] += 1;
            }
            let want: Complex64 = counts.iter().enumerate().map(|(h, &k)| c[h] * (k as f64).sqrt()).sum();
            let table_char = t.characters().find(|x| same_values(&x.values(), &c)).unwrap();
            prop_assert!((r.value(&table_char) - want).norm() < 1e-10);
        }
    }

    #[test]
    fn charsum_resonance_is_sound(q in 3u64..60, x in 1u64..200, v in coprime_set(59 * 53)) {
        let v: Vec<u64> = v.into_iter().filter(|m| m.gcd(&q) == 1).collect();
        prop_assume!(!v.is_empty());
        let rep = resonate_charsum(q, x, &set(&v)).unwrap();
        prop_assert!(rep.is_sound(1e-9));
        prop_assert_eq!(rep.denominator_bound_holds, Some(true));
        let direct_max = rep.rows.iter().map(|r| r.value).fold(0.0, f64::max);
        prop_assert!((rep.true_extremum - direct_max).abs() < 1e-12);
    }
}
