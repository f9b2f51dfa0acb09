mod common;

use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;

use gcdsum_core::nt::IntegerSet;
use gcdsum_core::zeta::{
    block_index, build_real_resonator, cosine_integral, fourier_numeric, kernel, lemma53_check, resonance_moment,
    sine_integral, subsum_bound_check, z_beta_max, zeta, zeta_critical, zeta_em, Kernel, KernelParams, TestFunction,
    ZetaLine,
};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn set(v: &[u64]) -> IntegerSet {
    IntegerSet::from_u64s(v).unwrap()
}

/// Composite Simpson rule with `n` (even) panels.
fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        s += f(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

#[test]
fn central_point() {
    let z = zeta(c(0.5, 0.0), 1e-12).unwrap();
    assert!((z.re + 1.4603545).abs() < 1e-7 && z.im.abs() < 1e-15);
    assert!((z - common::zeta_borwein(c(0.5, 0.0))).norm() < 1e-11);
    let two = zeta(c(2.0, 0.0), 1e-14).unwrap();
    assert!((two.re - PI * PI / 6.0).abs() < 1e-13);
}

#[test]
fn first_zero() {
    let t0 = common::hardy_root(14.0, 14.3);
    assert!((t0 - 14.134_725_141_734_693).abs() < 1e-8);
    assert!(zeta_critical(t0, 1e-10).unwrap().norm() < 1e-5);
    assert!(zeta_critical(t0 + 0.1, 1e-10).unwrap().norm() > 1e-3);
}

#[test]
fn matches_borwein_oracle() {
    for s in [
        c(0.5, 10.0),
        c(0.3, 25.0),
        c(0.8, 3.0),
        c(3.0, 1.0),
        c(0.5, -17.5),
        c(0.1, 6.0),
    ] {
        let got = zeta(s, 1e-12).unwrap();
        let want = common::zeta_borwein(s);
        assert!(
            (got - want).norm() < 1e-10 * want.norm().max(1.0),
            "{s}: {got} vs {want}"
        );
    }
}

#[test]
fn conjugation_symmetry() {
    for t in [0.7, 5.0, 33.3, 101.0] {
        let a = zeta_critical(t, 1e-10).unwrap();
        let b = zeta_critical(-t, 1e-10).unwrap();
        assert!((a - b.conj()).norm() < 1e-12);
    }
}

#[test]
fn euler_maclaurin_doubling_is_consistent() {
    for k in 0..15 {
        let s = c(0.5, 7.3 * k as f64);
        let n = 50u64.max(2 * s.im as u64);
        let (a, ea) = zeta_em(s, n, 6);
        let (b, eb) = zeta_em(s, 2 * n, 6);
        assert!((a - b).norm() <= ea + eb + 1e-12, "t={}", s.im);
    }
}

#[test]
fn line_agrees_with_pointwise() {
    let line = ZetaLine::new(0.5, 200.0);
    for t in [-150.0, -3.0, 0.0, 12.5, 77.7, 199.0] {
        let a = line.eval(t, 1e-11).unwrap();
        let b = zeta(c(0.5, t), 1e-11).unwrap();
        assert!((a - b).norm() < 1e-10);
    }
}

#[test]
fn invalid_inputs() {
    assert!(zeta(c(1.0, 0.0), 1e-10).is_err());
    assert!(zeta_critical(2e6, 1e-10).is_err());
    assert!(zeta_critical(1.0, 1e-11).is_err());
    assert!(KernelParams::new(1.0, 0.5, 0.0).validate().is_err());
    assert!(KernelParams::new(10.0, 1.0, 0.0).validate().is_err());
    assert!(KernelParams::new(10.0, 0.5, 1.0).validate().is_err());
}

#[test]
fn z_beta_max_refines() {
    let p = KernelParams::new(30.0, 0.5, 0.5);
    let coarse = z_beta_max(&p, 0.05).unwrap();
    let fine = z_beta_max(&p, 0.025).unwrap();
    assert!(fine.grid_value >= coarse.grid_value);
    assert!(coarse.value >= coarse.grid_value && fine.value >= fine.grid_value);
    // dense scan with the independent evaluator
    let lo = 30f64.sqrt();
    let best = (0..=4900)
        .map(|k| lo + (30.0 - lo) * k as f64 / 4900.0)
        .map(|t| common::zeta_borwein(c(0.5, t)).norm())
        .fold(0.0, f64::max);
    assert!((fine.value - best).abs() < 1e-3 * best, "{} vs {best}", fine.value);
    assert!(z_beta_max(&p, 0.1).is_err());
}

#[test]
fn kernel_closed_forms() {
    let p = KernelParams::new(20.0, 0.5, 0.0);
    let a = p.width();
    assert_eq!(kernel(&p, 0.0, Kernel::KHat), 1.0);
    assert_eq!(kernel(&p, 2.0 * a, Kernel::KHat), 0.0);
    assert!((kernel(&p, a, Kernel::KHat) - 0.5).abs() < 1e-15);
    assert!((kernel(&p, 0.0, Kernel::K) - a / PI).abs() < 1e-15);
    assert!((kernel(&p, 1.0, Kernel::PhiHat) - (2.0 * PI).sqrt() * (-0.5f64).exp()).abs() < 1e-15);
    // K integrates to its transform at zero
    let total =
        2.0 * simpson(|u| kernel(&p, u, Kernel::K), 0.0, 2000.0, 400_000) + 2.0 * (1.0 / (2.0 * PI * a * 2000.0));
    assert!((total - 1.0).abs() < 1e-4, "{total}");
}

#[test]
fn fourier_pairs() {
    let p = KernelParams::new(50.0, 0.3, 0.0);
    for xi in [0.0, 0.4, 1.1, 2.5] {
        let v = fourier_numeric(&p, Kernel::Phi, xi).unwrap();
        assert!((v - kernel(&p, xi, Kernel::PhiHat)).abs() < 1e-12);
    }
    for k in 0..10 {
        let xi = p.support() * (k as f64 + 0.5) / 10.0;
        let v = fourier_numeric(&p, Kernel::K, xi).unwrap();
        assert!((v - kernel(&p, xi, Kernel::KHat)).abs() < 1e-4, "xi={xi}");
    }
    assert!(fourier_numeric(&p, Kernel::KHat, 0.0).is_err());
}

#[test]
fn sine_and_cosine_integrals() {
    for x in [0.1, 1.0, 3.7, 12.0, 39.0, 41.0, 80.0] {
        let si = simpson(|v: f64| if v == 0.0 { 1.0 } else { v.sin() / v }, 0.0, x, 20_000);
        assert!((sine_integral(x) - si).abs() < 1e-10, "Si({x})");
        assert!((sine_integral(-x) + si).abs() < 1e-10);
        let h = simpson(
            |v: f64| if v == 0.0 { 0.0 } else { (v.cos() - 1.0) / v },
            0.0,
            x,
            20_000,
        );
        let ci = 0.577_215_664_901_532_9 + x.ln() + h;
        assert!((cosine_integral(x) - ci).abs() < 1e-10, "Ci({x})");
    }
}

#[test]
fn convolution_identity_gaussian() {
    for s in [c(0.5, 3.0), c(0.3, 7.0)] {
        let r = lemma53_check(s, TestFunction::Gaussian, 1e-8).unwrap();
        assert!(r.abs_diff < 1e-6, "{s}: {r:?}");
        let rc = lemma53_check(s.conj(), TestFunction::Gaussian, 1e-8).unwrap();
        assert!((rc.lhs - r.lhs).abs() < 1e-7);
        assert!(rc.abs_diff < 1e-6);
    }
    assert!(lemma53_check(c(0.5, 0.0), TestFunction::Gaussian, 1e-8).is_err());
    assert!(lemma53_check(c(1.0, 2.0), TestFunction::Gaussian, 1e-8).is_err());
}

#[test]
fn convolution_identity_k() {
    let p = KernelParams::new(12.0, 0.4, 0.0);
    let r = lemma53_check(c(0.6, 4.0), TestFunction::K(p), 1e-5).unwrap();
    assert!(r.abs_diff < 1e-4, "{r:?}");
}

#[test]
fn resonator_examples() {
    let r = build_real_resonator(&set(&[1, 2]), 10.0).unwrap();
    assert_eq!(r.blocks.len(), 2);
    assert!((r.value(0.0).re - 2.0).abs() < 1e-15);
    let r = build_real_resonator(&set(&[1000, 1001, 1002]), 10.0).unwrap();
    assert_eq!(r.blocks.len(), 1);
    assert_eq!(r.blocks[0].count, 3);
    assert!((r.value(0.0).re - 3f64.sqrt()).abs() < 1e-14);
    assert!(build_real_resonator(&set(&[1]), 1.0).is_err());
}

#[test]
fn moment_of_single_element() {
    let p = KernelParams::new(50.0, 0.5, 0.0);
    let m = resonance_moment(&set(&[1]), &p).unwrap();
    let scale = 50.0 / 50f64.ln();
    // int_{|t| <= 10 scale} e^{-(t/scale)^2/2} dt
    let want = 2.0 * simpson(|t| (-0.5 * (t / scale).powi(2)).exp(), 0.0, 10.0 * scale, 20_000);
    assert!((m.m1 - want).abs() < 1e-8 * want);
    assert!((m.m1_closed_form - (2.0 * PI).sqrt() * scale).abs() < 1e-12 * want);
    assert!(m.m1_bound_holds);
    assert!((m.gal_direct - scale).abs() < 1e-12);
}

#[test]
fn subsum_examples() {
    let r = subsum_bound_check(&set(&[1])).unwrap();
    assert_eq!((r.lhs, r.rhs), (1.0, 1.0));
    let r = subsum_bound_check(&set(&[1, 2, 3, 4, 6, 12])).unwrap();
    assert!(r.holds());
    assert!(subsum_bound_check(&set(&[1, 4])).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn resonator_partitions(v in proptest::collection::btree_set(1u64..100_000, 1..60), t in 2.0f64..500.0) {
        let v: Vec<u64> = v.into_iter().collect();
        let r = build_real_resonator(&set(&v), t).unwrap();
        prop_assert!(r.verify());
        let n = v.len() as f64;
        let r0 = r.value(0.0).re;
        prop_assert!(r0 * r0 <= n * n * (1.0 + 1e-12));
        let q = (1.0 + 1.0 / t).ln();
        for b in &r.blocks {
            let members: Vec<u64> = v.iter().copied().filter(|&m| block_index((m as f64).ln(), t) == b.j).collect();
            prop_assert_eq!(members.len() as u64, b.count);
            prop_assert_eq!(Some(members[0]), b.h.to_u64());
            for m in members {
                let x = (m as f64).ln() / q;
                prop_assert!(x > b.j as f64 - 1e-9 && x <= (b.j + 1) as f64 + 1e-9);
            }
        }
    }

    #[test]
    fn moments_agree(v in proptest::collection::btree_set(1u64..200, 1..12)) {
        let v: Vec<u64> = v.into_iter().collect();
        let p = KernelParams::new(40.0, 0.5, 0.0);
        let m = resonance_moment(&set(&v), &p).unwrap();
        prop_assert!((m.m1 - m.m1_closed_form).abs() <= 1e-6 * m.m1_closed_form);
        prop_assert!(m.m1_bound_holds);
        prop_assert!(m.i1_estimate >= -1e-9 * m.m1);
        // pairs with [m,n]/(m,n) <= T^eps, from gcd and lcm
        let scale = 40.0 / 40f64.ln();
        let cut = 40f64.powf(0.5);
        let mut direct = 0.0;
        for &a in &v {
            for &b in &v {
                let g = num_integer::Integer::gcd(&a, &b) as f64;
                let ratio = (a as f64 / g) * (b as f64 / g);
                if ratio <= cut * (1.0 + 1e-12) {
                    direct += ratio.powf(-0.5);
                }
            }
        }
        prop_assert!((m.gal_direct - scale * direct).abs() <= 1e-10 * m.gal_direct);
    }

    #[test]
    fn subsum_bound_on_divisor_closed(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let v = common::random_divisor_closed(&mut rng, 4, 5000);
        let r = subsum_bound_check(&set(&v)).unwrap();
        prop_assert!(r.holds());
        prop_assert!((r.lhs - common::subsum_brute(&v, 0.5)).abs() <= 1e-12 * r.lhs);
        prop_assert!((r.gal_sum - common::gal_brute(&v, 0.5)).abs() <= 1e-12 * r.gal_sum);
        let omega_max = (v.len() as f64).log2();
        prop_assert!(v.iter().all(|&m| common::trial_factor(m).len() as f64 <= omega_max + 1e-12));
    }
}
