mod common;

use nalgebra::DMatrix;
use proptest::prelude::*;

use gcdsum_core::gal::{
    build_gal_matrix, gal_subsum, gal_sum, gal_sum_weighted, gal_sum_weighted_plus, quadratic_norm, sigma_p,
    sigma_p_star, GalAlgorithm, GalExponent, NormMode, WeightDescriptor,
};
use gcdsum_core::nt::IntegerSet;
use gcdsum_core::Error;

const R2: f64 = std::f64::consts::SQRT_2;

fn set(v: &[u64]) -> IntegerSet {
    IntegerSet::from_u64s(v).unwrap()
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * b.abs().max(1.0)
}

fn alpha_strategy() -> impl Strategy<Value = GalExponent> {
    prop_oneof![
        Just(GalExponent::THIRD),
        Just(GalExponent::HALF),
        Just(GalExponent::ONE)
    ]
}

fn set_strategy(max_len: usize, max: u64) -> impl Strategy<Value = Vec<u64>> {
    proptest::collection::btree_set(1..=max, 1..=max_len).prop_map(|s| s.into_iter().collect())
}

#[test]
fn gal_sum_examples() {
    let h = GalExponent::HALF;
    assert_eq!(gal_sum(&set(&[1]), h, GalAlgorithm::Pairwise).unwrap(), 1.0);
    let v = gal_sum(&set(&[1, 2]), h, GalAlgorithm::Pairwise).unwrap();
    assert!(close(v, 2.0 + R2, 1e-15));
    let want = 3.0 + R2 + 2.0 / 3f64.sqrt() + 2.0 / 6f64.sqrt();
    for alg in [GalAlgorithm::Pairwise, GalAlgorithm::PhiIdentity] {
        assert!(close(gal_sum(&set(&[1, 2, 3]), h, alg).unwrap(), want, 1e-14));
    }
    assert!(matches!(
        gal_sum(&set(&[]), h, GalAlgorithm::Pairwise),
        Err(Error::Domain(_))
    ));
    assert!(matches!(
        gal_sum(&set(&[1, 2]), GalExponent::THIRD, GalAlgorithm::PhiIdentity),
        Err(Error::UnsupportedAlgorithm(_))
    ));
    // 2 alpha = 2 is integral, so the identity applies at alpha = 1
    let a = gal_sum(&set(&[4, 6, 9, 10]), GalExponent::ONE, GalAlgorithm::PhiIdentity).unwrap();
    assert!(close(a, common::gal_brute(&[4, 6, 9, 10], 1.0), 1e-13));
}

#[test]
fn weighted_examples() {
    let m = set(&[1, 2]);
    let g0 = gal_sum_weighted(&m, &WeightDescriptor::g0()).unwrap();
    assert!(close(
        g0,
        gal_sum(&m, GalExponent::HALF, GalAlgorithm::Pairwise).unwrap(),
        1e-15
    ));
    let g1 = gal_sum_weighted(&m, &WeightDescriptor::g1()).unwrap();
    assert!(close(g1, 2.0 + 2.0 / (R2 - 1.0), 1e-14));
    let g1c = gal_sum_weighted(&m, &WeightDescriptor::g1().with_scale(R2)).unwrap();
    assert!(close(g1c, 2.0 + 2.0 * R2 / (R2 - 1.0), 1e-14));
    let ga = WeightDescriptor::g_alpha(GalExponent::HALF);
    assert_eq!(ga.eval(&gcdsum_core::nt::factorize_u64(4).unwrap()), 0.0);
    assert_eq!(ga.eval(&gcdsum_core::nt::FactoredInt::one()), 1.0);
}

#[test]
fn subsum_examples() {
    let h = GalExponent::HALF;
    assert!(close(gal_subsum(&set(&[1, 2, 4]), h).unwrap(), 3.5 + R2, 1e-15));
    assert_eq!(gal_subsum(&set(&[2, 3, 5]), h).unwrap(), 3.0);
    assert_eq!(gal_subsum(&set(&[1]), GalExponent::THIRD).unwrap(), 1.0);
    assert!(gal_subsum(&set(&[]), h).is_err());
}

#[test]
fn matrix_examples() {
    let g = build_gal_matrix(&set(&[1, 2]), GalExponent::HALF).unwrap();
    assert_eq!(g.order(), 2);
    assert_eq!((g.get(0, 0), g.get(1, 1)), (1.0, 1.0));
    assert!((g.get(0, 1) - 1.0 / R2).abs() < 1e-15 && g.get(0, 1) == g.get(1, 0));
    let g = build_gal_matrix(&set(&[2, 3]), GalExponent::HALF).unwrap();
    assert!((g.get(0, 1) - 1.0 / 6f64.sqrt()).abs() < 1e-15);

    let mut rng = common::rng(20);
    let v = common::random_set(&mut rng, 20, 500);
    let (lo, _) = common::eig_range(common::gal_matrix(&v, 0.5));
    assert!(lo >= -1e-9);
}

#[test]
fn norm_examples() {
    for a in [GalExponent::THIRD, GalExponent::HALF, GalExponent::ONE] {
        assert!((quadratic_norm(&set(&[7]), a, NormMode::Full).unwrap() - 1.0).abs() < 1e-15);
    }
    let q = quadratic_norm(&set(&[1, 2]), GalExponent::HALF, NormMode::Full).unwrap();
    assert!((q - (1.0 + 1.0 / R2)).abs() < 1e-10);
    let q = quadratic_norm(&set(&[2, 3]), GalExponent::HALF, NormMode::Full).unwrap();
    assert!((q - (1.0 + 1.0 / 6f64.sqrt())).abs() < 1e-10);
}

#[test]
fn divisibility_norm_matches_singular_value() {
    let v = [1u64, 2, 3, 4, 6, 8, 12, 24, 5, 10];
    let a = DMatrix::from_fn(v.len(), v.len(), |i, j| {
        if v[i] % v[j] == 0 {
            (v[j] as f64 / v[i] as f64).sqrt()
        } else {
            0.0
        }
    });
    let top = a.singular_values().max();
    let q = quadratic_norm(&set(&v), GalExponent::HALF, NormMode::Divisibility).unwrap();
    assert!((q - top).abs() < 1e-9 * top, "{q} vs {top}");
}

#[test]
fn valuation_examples() {
    assert_eq!(sigma_p(&[0], &[0], 3).unwrap(), 1.0);
    assert!((sigma_p(&[0, 1], &[0, 1], 2).unwrap() - (2.0 + R2)).abs() < 1e-15);
    assert!((sigma_p(&[0], &[5], 2).unwrap() - 2f64.powf(-2.5)).abs() < 1e-16);
    assert!(sigma_p(&[0], &[5], 4).is_err());
}

#[test]
fn valuation_max_attained_at_initial_segments() {
    for p in [2u64, 3, 5] {
        for r in 0..=5u32 {
            for s in [r, r + 1] {
                let a: Vec<u32> = (0..=r).collect();
                let b: Vec<u32> = (0..=s).collect();
                let at_segments = sigma_p(&a, &b, p).unwrap();
                assert!(at_segments <= sigma_p_star(r, s, p).unwrap() * (1.0 + 1e-12));
                // any shifted pair of sequences does no better
                for shift in 1..3u32 {
                    let b2: Vec<u32> = b.iter().map(|x| x + shift).collect();
                    assert!(sigma_p(&a, &b2, p).unwrap() <= at_segments + 1e-12);
                }
            }
        }
    }
}

#[test]
fn results_do_not_depend_on_thread_count() {
    let mut rng = common::rng(99);
    let v = common::random_set(&mut rng, 150, 5000);
    let m = set(&v);
    let run = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| {
                (
                    gal_sum(&m, GalExponent::HALF, GalAlgorithm::Pairwise)
                        .unwrap()
                        .to_bits(),
                    quadratic_norm(&m, GalExponent::HALF, NormMode::Full).unwrap().to_bits(),
                )
            })
    };
    assert_eq!(run(1), run(4));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn algorithms_agree(v in set_strategy(120, 5000)) {
        let m = set(&v);
        let a = gal_sum(&m, GalExponent::HALF, GalAlgorithm::Pairwise).unwrap();
        let b = gal_sum(&m, GalExponent::HALF, GalAlgorithm::PhiIdentity).unwrap();
        prop_assert!(close(a, b, 1e-10));
        prop_assert!(close(a, common::gal_brute(&v, 0.5), 1e-12));
        prop_assert!(a >= v.len() as f64 * (1.0 - 1e-15));
    }

    #[test]
    fn subsum_dominated(v in set_strategy(60, 2000), a in alpha_strategy()) {
        let m = set(&v);
        let sub = gal_subsum(&m, a).unwrap();
        let full = gal_sum(&m, a, GalAlgorithm::Pairwise).unwrap();
        prop_assert!(close(sub, common::subsum_brute(&v, a.as_f64()), 1e-12));
        prop_assert!(sub >= v.len() as f64 * (1.0 - 1e-15));
        prop_assert!(sub <= full * (1.0 + 1e-12));
    }

    #[test]
    fn norm_sandwich(v in set_strategy(50, 3000), a in alpha_strategy()) {
        let m = set(&v);
        let n = v.len() as f64;
        let q = quadratic_norm(&m, a, NormMode::Full).unwrap();
        let s = gal_sum(&m, a, GalAlgorithm::Pairwise).unwrap();
        prop_assert!(s / n <= q * (1.0 + 1e-12));
        prop_assert!(q <= n * (1.0 + 1e-12));
        let (lo, hi) = common::eig_range(common::gal_matrix(&v, a.as_f64()));
        prop_assert!(lo >= -1e-9);
        prop_assert!(close(q, hi, 1e-9));
    }

    #[test]
    fn matrix_all_ones_form(v in set_strategy(40, 3000)) {
        let m = set(&v);
        let g = build_gal_matrix(&m, GalExponent::HALF).unwrap();
        let ones = vec![1.0; v.len()];
        let s = gal_sum(&m, GalExponent::HALF, GalAlgorithm::Pairwise).unwrap();
        prop_assert!(close(g.quadratic_form(&ones), s, 1e-12));
        for i in 0..v.len() {
            prop_assert_eq!(g.get(i, i), 1.0);
            for j in 0..v.len() {
                prop_assert_eq!(g.get(i, j), g.get(j, i));
            }
        }
    }

    #[test]
    fn weighted_below_plus(seed in any::<u64>(), c in 1.0f64..3.0) {
        let mut rng = common::rng(seed);
        let v = common::random_squarefree_set(&mut rng, 40, 3000);
        let m = set(&v);
        for w in [WeightDescriptor::g0(), WeightDescriptor::g1().with_scale(c), WeightDescriptor::g_alpha(GalExponent::THIRD)] {
            let s = gal_sum_weighted(&m, &w).unwrap();
            let plus = gal_sum_weighted_plus(&m, &w).unwrap();
            prop_assert!(s >= v.len() as f64 * (1.0 - 1e-15));
            prop_assert!(s <= plus * (1.0 + 1e-12));
        }
    }
}
